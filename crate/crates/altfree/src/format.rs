//! Text formats: `.hg` hypergraphs, `.3hg` triple lists, JSON instances.
//!
//! `.hg`: a header line `N M`, then `M` lines of strictly increasing vertex
//! identifiers, one edge per line. A line holding only `-` is the empty edge.
//! Blank lines and lines starting with `#` are skipped.
//!
//! `.3hg`: a header line `n m`, then `m` lines `i k l` with `i < k < l`.

use std::fmt::Write as _;

use altfree_core::{
    Block, BlockRole, Family, FamilySet, Hypergraph, Instance, ModelError, PatternSpec,
    SourceHypergraph3, Vertex,
};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("missing header line")]
    MissingHeader,
    #[error("expected {expected} {what}, found {found}")]
    Count {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("invalid instance: {0}")]
    Schema(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
}

fn line_err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Line {
        line,
        message: message.into(),
    }
}

/// Non-empty, non-comment lines with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn numbers(line: usize, text: &str) -> Result<Vec<u64>, FormatError> {
    text.split_whitespace()
        .map(|tok| {
            tok.parse::<u64>().map_err(|_| {
                line_err(
                    line,
                    format!("expected a non-negative integer, found {tok:?}"),
                )
            })
        })
        .collect()
}

fn header(line: usize, text: &str) -> Result<(u32, usize), FormatError> {
    match numbers(line, text)?.as_slice() {
        &[a, b] => {
            let a = u32::try_from(a).map_err(|_| line_err(line, "vertex count too large"))?;
            Ok((a, b as usize))
        }
        _ => Err(line_err(line, "header must be two integers")),
    }
}

fn vertex(line: usize, value: u64, n: u32) -> Result<Vertex, FormatError> {
    if value == 0 {
        return Err(line_err(line, ModelError::ZeroVertex.to_string()));
    }
    match u32::try_from(value) {
        Ok(v) if v <= n => Ok(v),
        _ => Err(line_err(line, format!("identifier {value} exceeds N={n}"))),
    }
}

pub fn parse_hypergraph(text: &str) -> Result<Hypergraph, FormatError> {
    let mut lines = content_lines(text);
    let (hline, htext) = lines.next().ok_or(FormatError::MissingHeader)?;
    let (n, m) = header(hline, htext)?;
    if n == 0 {
        return Err(line_err(hline, ModelError::NoVertices.to_string()));
    }
    let mut edges: Vec<Vec<Vertex>> = Vec::with_capacity(m);
    let mut seen = std::collections::HashMap::new();
    for (line, body) in lines {
        let edge = if body == "-" {
            Vec::new()
        } else {
            let mut edge = Vec::new();
            for value in numbers(line, body)? {
                let v = vertex(line, value, n)?;
                if edge.last().is_some_and(|&prev| prev >= v) {
                    return Err(line_err(line, "identifiers must be strictly increasing"));
                }
                edge.push(v);
            }
            edge
        };
        if let Some(first) = seen.insert(edge.clone(), line) {
            return Err(line_err(
                line,
                format!("duplicate edge, first seen on line {first}"),
            ));
        }
        edges.push(edge);
    }
    if edges.len() != m {
        return Err(FormatError::Count {
            what: "edges",
            expected: m,
            found: edges.len(),
        });
    }
    Ok(Hypergraph::new(n, edges)?)
}

pub fn serialize_hypergraph(h: &Hypergraph) -> String {
    let mut out = format!("{} {}\n", h.n_vertices(), h.num_edges());
    for e in h.edges() {
        if e.is_empty() {
            out.push('-');
        }
        for (i, v) in e.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            write!(out, "{v}").unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn parse_triples(text: &str) -> Result<SourceHypergraph3, FormatError> {
    let mut lines = content_lines(text);
    let (hline, htext) = lines.next().ok_or(FormatError::MissingHeader)?;
    let (n, m) = header(hline, htext)?;
    let mut triples = Vec::with_capacity(m);
    let mut seen = std::collections::HashMap::new();
    for (line, body) in lines {
        let t: [Vertex; 3] = match numbers(line, body)?.as_slice() {
            &[a, b, c] => [
                vertex(line, a, n)?,
                vertex(line, b, n)?,
                vertex(line, c, n)?,
            ],
            _ => return Err(line_err(line, "a triple needs exactly three identifiers")),
        };
        if !(t[0] < t[1] && t[1] < t[2]) {
            return Err(line_err(line, "triple must be strictly increasing"));
        }
        if let Some(first) = seen.insert(t, line) {
            return Err(line_err(
                line,
                format!("duplicate triple, first seen on line {first}"),
            ));
        }
        triples.push(t);
    }
    if triples.len() != m {
        return Err(FormatError::Count {
            what: "triples",
            expected: m,
            found: triples.len(),
        });
    }
    Ok(SourceHypergraph3::new(n, triples)?)
}

pub fn serialize_triples(g: &SourceHypergraph3) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for [a, b, c] in g.triples() {
        writeln!(out, "{a} {b} {c}").unwrap();
    }
    out
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceDoc {
    n_vertices: u32,
    edges: Vec<Vec<Vertex>>,
    blocks: Vec<BlockDoc>,
    source: Option<SourceDoc>,
    spec: SpecDoc,
    lineage: Vec<String>,
    #[serde(default)]
    families: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BlockDoc {
    role: String,
    members: Vec<Vertex>,
    source_index: Option<u32>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SourceDoc {
    n: u32,
    triples: Vec<[Vertex; 3]>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecDoc {
    k: u32,
    trailing_a: bool,
}

fn block_role(doc: &BlockDoc, index: usize) -> Result<BlockRole, FormatError> {
    let need = |i: Option<u32>| {
        i.ok_or_else(|| {
            FormatError::Schema(format!("block {index}: {} needs source_index", doc.role))
        })
    };
    match doc.role.as_str() {
        "R" => Ok(BlockRole::R(need(doc.source_index)?)),
        "S" => Ok(BlockRole::S(need(doc.source_index)?)),
        "apex" => Ok(BlockRole::Apex),
        "lift" => Ok(BlockRole::Lift),
        other => Err(FormatError::Schema(format!(
            "block {index}: unknown role {other:?}"
        ))),
    }
}

pub fn parse_instance(text: &str) -> Result<Instance, FormatError> {
    let doc: InstanceDoc = serde_json::from_str(text)?;
    let hypergraph = Hypergraph::new(doc.n_vertices, doc.edges)?;
    let blocks = doc
        .blocks
        .iter()
        .enumerate()
        .map(|(i, b)| {
            Ok(Block {
                role: block_role(b, i)?,
                members: b.members.clone(),
            })
        })
        .collect::<Result<Vec<_>, FormatError>>()?;
    let source = doc
        .source
        .map(|s| SourceHypergraph3::new(s.n, s.triples))
        .transpose()?;
    let families = doc
        .families
        .iter()
        .map(|tags| {
            tags.iter().try_fold(FamilySet::default(), |mut set, t| {
                set.insert(Family::from_tag(t)?);
                Ok::<_, ModelError>(set)
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let inst = Instance {
        hypergraph,
        blocks,
        source,
        spec: PatternSpec::new(doc.spec.k, doc.spec.trailing_a)?,
        lineage: doc.lineage,
        families,
    };
    inst.validate()?;
    Ok(inst)
}

/// JSON with one edge or block per line; byte-identical for equal instances.
pub fn serialize_instance(inst: &Instance) -> String {
    let list = |items: Vec<String>| -> String {
        if items.is_empty() {
            return "[]".to_string();
        }
        format!("[\n    {}\n  ]", items.join(",\n    "))
    };
    let edges = list(inst.hypergraph.edges().iter().map(compact).collect());
    let blocks = list(
        inst.blocks
            .iter()
            .map(|b| {
                compact(&BlockDoc {
                    role: b.role.name().to_string(),
                    members: b.members.clone(),
                    source_index: b.role.source_index(),
                })
            })
            .collect(),
    );
    let source = match &inst.source {
        Some(s) => compact(&SourceDoc {
            n: s.n(),
            triples: s.triples().to_vec(),
        }),
        None => "null".to_string(),
    };
    let spec = compact(&SpecDoc {
        k: inst.spec.k(),
        trailing_a: inst.spec.trailing_a(),
    });
    let mut fields = vec![
        ("n_vertices", inst.hypergraph.n_vertices().to_string()),
        ("edges", edges),
        ("blocks", blocks),
        ("source", source),
        ("spec", spec),
        ("lineage", compact(&inst.lineage)),
    ];
    if !inst.families.is_empty() {
        let tags = inst
            .families
            .iter()
            .map(|f| compact(&f.iter().map(Family::tag).collect::<Vec<_>>()))
            .collect();
        fields.push(("families", list(tags)));
    }
    let body: Vec<String> = fields
        .into_iter()
        .map(|(k, v)| format!("  \"{k}\": {v}"))
        .collect();
    format!("{{\n{}\n}}\n", body.join(",\n"))
}

fn compact<T: Serialize + ?Sized>(value: &T) -> String {
    serde_json::to_string(value).expect("plain data serializes")
}

/// Reads a hypergraph from `.hg` text or from a JSON instance.
pub fn parse_any_hypergraph(text: &str) -> Result<Hypergraph, FormatError> {
    if text.trim_start().starts_with('{') {
        Ok(parse_instance(text)?.hypergraph)
    } else {
        parse_hypergraph(text)
    }
}
