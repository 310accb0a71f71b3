//! Command-line interface. Exit codes: 0 free/sat/success, 1 a definite
//! negative answer, 2 usage or input error, 3 budget exhausted.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Duration;

use altfree_core::pattern::is_free_ordering;
use altfree_core::reduction::{
    self, coloring_from_ordering, ordering_from_coloring, pseudodisk_instance, ReductionError,
};
use altfree_core::solver::{count_free_orderings, SolverError};
use altfree_core::{
    Budget, Color, Coloring, Hypergraph, Instance, PatternSpec, SolveStatus, Verdict, Vertex,
    VertexOrder,
};
use anyhow::{bail, Context};
use clap::{Parser, Subcommand};

use crate::clock::solve_timed;
use crate::{corpus, format};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Success = 0,
    Negative = 1,
    Usage = 2,
    Timeout = 3,
}

#[derive(Debug, Parser)]
#[command(
    name = "altfree",
    version,
    about = "Alternation-pattern-free orderings of hypergraphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Pattern(PatternSpec),
    Pseudodisk,
}

impl FromStr for Target {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "pseudodisk" {
            return Ok(Target::Pseudodisk);
        }
        s.parse().map(Target::Pattern).map_err(|e| format!("{e}"))
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check one ordering for an (AB)^k or (AB)^k A pattern.
    Check {
        /// `.hg` file or JSON instance.
        file: PathBuf,
        /// Comma-separated permutation of 1..N.
        #[arg(long)]
        order: String,
        /// `ab^K` or `ab^Ka`, e.g. `ab^2` for ABAB.
        #[arg(long, default_value = "ab^2")]
        pattern: PatternSpec,
    },
    /// Search for a pattern-free ordering, or count them.
    Solve {
        file: PathBuf,
        #[arg(long, default_value = "ab^2")]
        pattern: PatternSpec,
        /// Time budget such as `90`, `30s`, `10m` or `500ms`.
        #[arg(long, env = "ALTFREE_BUDGET", value_parser = parse_duration)]
        budget: Option<Duration>,
        /// Node budget.
        #[arg(long)]
        max_nodes: Option<u64>,
        /// Print the exact number of free orderings (small N only).
        #[arg(long)]
        count: bool,
    },
    /// Build a reduction instance from a `.3hg` source (or a `.hg` file for
    /// `pseudodisk`).
    Reduce {
        source: PathBuf,
        /// `ab^K`, `ab^Ka` or `pseudodisk`.
        #[arg(long)]
        target: Target,
        /// Instance file to write; standard output if absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Translate a certificate of an instance into the other kind.
    Certify {
        instance: PathBuf,
        /// Comma-separated colors (`red`/`blue`) of the source vertices.
        #[arg(
            long,
            conflicts_with = "from_ordering",
            required_unless_present = "from_ordering"
        )]
        from_coloring: Option<String>,
        /// Comma-separated free ordering of the instance.
        #[arg(long)]
        from_ordering: Option<String>,
    },
    /// Write the named regression corpus into a directory.
    Corpus { dir: PathBuf },
}

pub fn parse_duration(s: &str) -> Result<Duration, String> {
    let s = s.trim();
    let split = s
        .find(|c: char| !(c.is_ascii_digit() || c == '.'))
        .unwrap_or(s.len());
    let (num, unit) = s.split_at(split);
    let value: f64 = num.parse().map_err(|_| format!("invalid duration {s:?}"))?;
    let secs = match unit {
        "" | "s" => value,
        "ms" => value / 1000.0,
        "m" => value * 60.0,
        "h" => value * 3600.0,
        _ => return Err(format!("unknown duration unit {unit:?} in {s:?}")),
    };
    if !secs.is_finite() || secs <= 0.0 {
        return Err(format!("duration must be positive, got {s:?}"));
    }
    Ok(Duration::from_secs_f64(secs))
}

fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_hypergraph(path: &Path) -> anyhow::Result<Hypergraph> {
    format::parse_any_hypergraph(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn load_instance(path: &Path) -> anyhow::Result<Instance> {
    format::parse_instance(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn parse_list(text: &str) -> anyhow::Result<Vec<Vertex>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<Vertex>()
                .with_context(|| format!("invalid vertex {t:?}"))
        })
        .collect()
}

fn parse_order(text: &str, h: &Hypergraph) -> anyhow::Result<VertexOrder> {
    Ok(VertexOrder::for_hypergraph(parse_list(text)?, h)?)
}

fn parse_coloring(text: &str) -> anyhow::Result<Coloring> {
    let colors = text
        .split(',')
        .map(|t| {
            t.trim()
                .to_ascii_lowercase()
                .parse::<Color>()
                .map_err(anyhow::Error::msg)
        })
        .collect::<anyhow::Result<Vec<_>>>()?;
    Ok(Coloring::new(colors))
}

fn set(e: &[Vertex]) -> String {
    let items: Vec<String> = e.iter().map(Vertex::to_string).collect();
    format!("{{{}}}", items.join(","))
}

fn describe(h: &Hypergraph, verdict: &Verdict, spec: PatternSpec) -> String {
    match verdict.witness() {
        None => "FREE".to_string(),
        Some(w) => {
            let vs: Vec<String> = w.vertices.iter().map(Vertex::to_string).collect();
            format!(
                "PATTERN {spec}: edge {} {} and edge {} {} alternate at {}",
                w.edge_a + 1,
                set(h.edge(w.edge_a)),
                w.edge_b + 1,
                set(h.edge(w.edge_b)),
                vs.join(",")
            )
        }
    }
}

/// Runs one command, writing its report to `out`. Errors are input errors.
pub fn run(cli: Cli, out: &mut String, log: &mut String) -> anyhow::Result<Exit> {
    match cli.command {
        Command::Check {
            file,
            order,
            pattern,
        } => {
            let h = load_hypergraph(&file)?;
            let order = parse_order(&order, &h)?;
            let verdict = is_free_ordering(&h, &order, pattern);
            writeln!(out, "{}", describe(&h, &verdict, pattern))?;
            Ok(if verdict.is_free() {
                Exit::Success
            } else {
                Exit::Negative
            })
        }
        Command::Solve {
            file,
            pattern,
            budget,
            max_nodes,
            count,
        } => {
            let h = load_hypergraph(&file)?;
            if count {
                match count_free_orderings(&h, pattern) {
                    Ok(c) => writeln!(out, "{c}")?,
                    Err(e @ SolverError::TooLarge { .. }) => bail!(e),
                }
                return Ok(Exit::Success);
            }
            let outcome = solve_timed(
                &h,
                pattern,
                Budget {
                    max_nodes,
                    time_limit: budget,
                },
            );
            writeln!(
                log,
                "nodes {} elapsed {:.3}s",
                outcome.nodes_explored,
                outcome.elapsed.as_secs_f64()
            )?;
            writeln!(out, "{}", outcome.status.name())?;
            Ok(match (outcome.status, outcome.ordering) {
                (SolveStatus::Sat, Some(o)) => {
                    writeln!(out, "{o}")?;
                    Exit::Success
                }
                (SolveStatus::Unsat, _) => Exit::Negative,
                _ => Exit::Timeout,
            })
        }
        Command::Reduce {
            source,
            target,
            out: path,
        } => {
            let inst = match target {
                Target::Pseudodisk => pseudodisk_instance(&load_hypergraph(&source)?),
                Target::Pattern(spec) => {
                    let g = format::parse_triples(&read(&source)?)
                        .with_context(|| format!("in {}", source.display()))?;
                    reduction::compile(&g, spec)?
                }
            };
            let text = format::serialize_instance(&inst);
            let summary = format!(
                "instance N={}, {} edges, lineage {}",
                inst.hypergraph.n_vertices(),
                inst.hypergraph.num_edges(),
                inst.lineage.join(" / ")
            );
            match path {
                Some(p) => {
                    std::fs::write(&p, text)
                        .with_context(|| format!("cannot write {}", p.display()))?;
                    writeln!(out, "{summary}")?;
                    writeln!(out, "wrote {}", p.display())?;
                }
                None => {
                    out.push_str(&text);
                    writeln!(log, "{summary}")?;
                }
            }
            Ok(Exit::Success)
        }
        Command::Certify {
            instance,
            from_coloring,
            from_ordering,
        } => {
            let inst = load_instance(&instance)?;
            if let Some(text) = from_coloring {
                let c = parse_coloring(&text)?;
                let order = match ordering_from_coloring(&inst, &c) {
                    Ok(o) => o,
                    Err(e @ ReductionError::MonochromaticTriple(_)) => {
                        writeln!(out, "REJECTED: {e}")?;
                        return Ok(Exit::Negative);
                    }
                    Err(e) => bail!(e),
                };
                writeln!(out, "ordering {order}")?;
                let verdict = is_free_ordering(&inst.hypergraph, &order, inst.spec);
                writeln!(out, "{}", describe(&inst.hypergraph, &verdict, inst.spec))?;
                return Ok(if verdict.is_free() {
                    Exit::Success
                } else {
                    Exit::Negative
                });
            }
            let text = from_ordering.expect("clap requires one certificate");
            let order = parse_order(&text, &inst.hypergraph)?;
            let verdict = is_free_ordering(&inst.hypergraph, &order, inst.spec);
            if !verdict.is_free() {
                writeln!(
                    out,
                    "REJECTED: {}",
                    describe(&inst.hypergraph, &verdict, inst.spec)
                )?;
                return Ok(Exit::Negative);
            }
            match coloring_from_ordering(&inst, &order) {
                Ok(c) => {
                    writeln!(out, "coloring {c}")?;
                    let proper = inst.source.as_ref().is_some_and(|g| c.is_proper(g));
                    writeln!(out, "{}", if proper { "PROPER" } else { "NOT PROPER" })?;
                    Ok(if proper {
                        Exit::Success
                    } else {
                        Exit::Negative
                    })
                }
                Err(e @ (ReductionError::MissingProvenance | ReductionError::UnknownStep(_))) => {
                    bail!(e)
                }
                Err(e) => {
                    writeln!(out, "REJECTED: {e}")?;
                    Ok(Exit::Negative)
                }
            }
        }
        Command::Corpus { dir } => {
            for name in corpus::write_all(&dir)
                .with_context(|| format!("cannot write corpus to {}", dir.display()))?
            {
                writeln!(out, "{name}")?;
            }
            Ok(Exit::Success)
        }
    }
}
