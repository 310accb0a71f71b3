//! Named regression instances.

use std::path::Path;

use altfree_core::gadgets::{circular_intervals, two_intervals};
use altfree_core::{Hypergraph, SourceHypergraph3};

use crate::format::{serialize_hypergraph, serialize_triples};

pub enum CorpusItem {
    Hypergraph(Hypergraph),
    Source(SourceHypergraph3),
}

impl CorpusItem {
    pub fn extension(&self) -> &'static str {
        match self {
            CorpusItem::Hypergraph(_) => "hg",
            CorpusItem::Source(_) => "3hg",
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            CorpusItem::Hypergraph(h) => serialize_hypergraph(h),
            CorpusItem::Source(g) => serialize_triples(g),
        }
    }
}

pub fn cycle(n: u32) -> Hypergraph {
    let edges = (1..=n)
        .map(|i| {
            let j = i % n + 1;
            vec![i.min(j), i.max(j)]
        })
        .collect();
    Hypergraph::new(n, edges).expect("cycle edges are distinct for n >= 3")
}

pub fn complete_graph(n: u32) -> Hypergraph {
    let edges = (1..=n)
        .flat_map(|a| (a + 1..=n).map(move |b| vec![a, b]))
        .collect();
    Hypergraph::new(n, edges).expect("complete graph edges are distinct")
}

/// Every corpus entry as `(name, item)`, in a fixed order.
pub fn entries() -> Vec<(String, CorpusItem)> {
    let mut out = vec![
        (
            "fano".to_string(),
            CorpusItem::Source(SourceHypergraph3::fano()),
        ),
        (
            "one-triple".to_string(),
            CorpusItem::Source(SourceHypergraph3::new(3, vec![[1, 2, 3]]).unwrap()),
        ),
        ("k4".to_string(), CorpusItem::Hypergraph(complete_graph(4))),
    ];
    for n in 3..=8 {
        out.push((format!("c{n}"), CorpusItem::Hypergraph(cycle(n))));
    }
    for n in 4..=7 {
        out.push((
            format!("circular-{n}"),
            CorpusItem::Hypergraph(circular_intervals(n)),
        ));
    }
    for n in 4..=7 {
        out.push((
            format!("two-interval-{n}"),
            CorpusItem::Hypergraph(two_intervals(n)),
        ));
    }
    out
}

pub fn lookup(name: &str) -> Option<CorpusItem> {
    entries()
        .into_iter()
        .find(|(n, _)| n == name)
        .map(|(_, item)| item)
}

/// Writes every entry as `<name>.<ext>` into `dir`; returns the file names.
pub fn write_all(dir: &Path) -> std::io::Result<Vec<String>> {
    std::fs::create_dir_all(dir)?;
    let mut names = Vec::new();
    for (name, item) in entries() {
        let file = format!("{name}.{}", item.extension());
        std::fs::write(dir.join(&file), item.to_text())?;
        names.push(file);
    }
    Ok(names)
}

/// Hypergraph entries with at most `max_n` vertices.
pub fn small_hypergraphs(max_n: u32) -> Vec<(String, Hypergraph)> {
    entries()
        .into_iter()
        .filter_map(|(name, item)| match item {
            CorpusItem::Hypergraph(h) if h.n_vertices() <= max_n => Some((name, h)),
            _ => None,
        })
        .collect()
}
