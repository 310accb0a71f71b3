//! Brute-force oracles and seeded generators for validating the checker,
//! the solver and the reductions at small sizes.
//!
//! The ordering oracles do not use block counts: the pair check here is a
//! literal tuple search, and the enumeration keeps, for every pair, the
//! longest alternating subsequence ending in each symbol (a small dynamic
//! program over the prefix).

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::{
    Color, Coloring, Edge, Hypergraph, PatternSpec, SourceHypergraph3, Vertex, VertexOrder,
};
use crate::pattern::{Lead, PairWitness};

pub const TWO_COLORING_CAP: u32 = 24;
pub const FREE_ORDERING_CAP: u32 = 10;
pub const PATTERN_SEARCH_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("n={n} exceeds the oracle cap of {cap}")]
    TooLarge { n: u32, cap: u32 },
    #[error("requested {requested} distinct edges, only {available} exist")]
    TooManyEdges { requested: usize, available: u64 },
    #[error("edge size bounds {min}..={max} are empty for N={n}")]
    EmptySizeRange { min: usize, max: usize, n: u32 },
}

/// Generator parameters. `identical seed + parameters => identical output`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomSpec {
    pub seed: u64,
    pub vertices: u32,
    pub edges: usize,
    pub min_edge: usize,
    pub max_edge: usize,
}

impl RandomSpec {
    pub fn triples(seed: u64, n: u32, m: usize) -> Self {
        RandomSpec {
            seed,
            vertices: n,
            edges: m,
            min_edge: 3,
            max_edge: 3,
        }
    }

    pub fn hypergraph(seed: u64, n: u32, m: usize, min_edge: usize, max_edge: usize) -> Self {
        RandomSpec {
            seed,
            vertices: n,
            edges: m,
            min_edge,
            max_edge,
        }
    }
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// First proper 2-coloring in lexicographic order (red before blue, vertex 1
/// most significant), or `None`.
pub fn brute_two_colorable(g: &SourceHypergraph3) -> Result<Option<Coloring>, OracleError> {
    let n = g.n();
    if n > TWO_COLORING_CAP {
        return Err(OracleError::TooLarge {
            n,
            cap: TWO_COLORING_CAP,
        });
    }
    // bit (n - v) set means vertex v is blue
    let bit = |v: Vertex| 1u32 << (n - v);
    let masks: Vec<u32> = g
        .triples()
        .iter()
        .map(|t| bit(t[0]) | bit(t[1]) | bit(t[2]))
        .collect();
    for assignment in 0u32..(1u32 << n) {
        let proper = masks.iter().all(|&tm| {
            let blue = assignment & tm;
            blue != 0 && blue != tm
        });
        if proper {
            let colors = (1..=n)
                .map(|v| {
                    if assignment & bit(v) == 0 {
                        Color::Red
                    } else {
                        Color::Blue
                    }
                })
                .collect();
            return Ok(Some(Coloring::new(colors)));
        }
    }
    Ok(None)
}

/// Literal search for `L` positions alternating between `e1 \ e2` and
/// `e2 \ e1`, trying `e1` as the leading edge first.
pub fn naive_pattern_search(
    order: &VertexOrder,
    e1: &[Vertex],
    e2: &[Vertex],
    spec: PatternSpec,
) -> Option<PairWitness> {
    let seq = order.as_slice();
    let only = |a: &[Vertex], b: &[Vertex], v: Vertex| a.contains(&v) && !b.contains(&v);
    let roles: Vec<(bool, bool)> = seq
        .iter()
        .map(|&v| (only(e1, e2, v), only(e2, e1, v)))
        .collect();

    fn extend(
        roles: &[(bool, bool)],
        from: usize,
        want_first: bool,
        need: usize,
        picked: &mut Vec<usize>,
    ) -> bool {
        if need == 0 {
            return true;
        }
        for p in from..roles.len() {
            let ok = if want_first { roles[p].0 } else { roles[p].1 };
            if ok {
                picked.push(p);
                if extend(roles, p + 1, !want_first, need - 1, picked) {
                    return true;
                }
                picked.pop();
            }
        }
        false
    }

    for lead in [Lead::First, Lead::Second] {
        let mut picked = Vec::with_capacity(spec.len());
        if extend(&roles, 0, lead == Lead::First, spec.len(), &mut picked) {
            return Some(PairWitness {
                lead,
                vertices: picked.into_iter().map(|p| seq[p]).collect(),
            });
        }
    }
    None
}

/// Prefix enumeration with per-pair longest-alternation tracking.
struct Enumerator {
    n: usize,
    limit: u8,
    /// For each vertex: (pair, symbol) for pairs where it lies in exactly one edge.
    touches: Vec<Vec<(u32, u8)>>,
    best: Vec<[u8; 2]>,
    undo: Vec<(u32, [u8; 2])>,
    placed: Vec<bool>,
    prefix: Vec<Vertex>,
}

impl Enumerator {
    fn new(h: &Hypergraph, spec: PatternSpec) -> Self {
        let n = h.n_vertices() as usize;
        let edges = h.edges();
        let mut touches = vec![Vec::new(); n + 1];
        let mut pairs = 0u32;
        for i in 0..edges.len() {
            for j in i + 1..edges.len() {
                let only_i: Vec<Vertex> = edges[i]
                    .iter()
                    .copied()
                    .filter(|v| edges[j].binary_search(v).is_err())
                    .collect();
                let only_j: Vec<Vertex> = edges[j]
                    .iter()
                    .copied()
                    .filter(|v| edges[i].binary_search(v).is_err())
                    .collect();
                if only_i.is_empty() || only_j.is_empty() {
                    continue;
                }
                for v in only_i {
                    touches[v as usize].push((pairs, 0));
                }
                for v in only_j {
                    touches[v as usize].push((pairs, 1));
                }
                pairs += 1;
            }
        }
        Enumerator {
            n,
            limit: spec.len().min(u8::MAX as usize) as u8,
            touches,
            best: vec![[0, 0]; pairs as usize],
            undo: Vec::new(),
            placed: vec![false; n + 1],
            prefix: Vec::with_capacity(n),
        }
    }

    fn place(&mut self, v: Vertex) -> bool {
        self.placed[v as usize] = true;
        self.prefix.push(v);
        let mut ok = true;
        for &(p, s) in &self.touches[v as usize] {
            let b = &mut self.best[p as usize];
            self.undo.push((p, *b));
            let s = s as usize;
            b[s] = b[s].max(b[1 - s] + 1);
            if b[s] >= self.limit {
                ok = false;
                break;
            }
        }
        ok
    }

    fn unplace(&mut self, mark: usize) {
        while self.undo.len() > mark {
            let (p, b) = self.undo.pop().unwrap();
            self.best[p as usize] = b;
        }
        let v = self.prefix.pop().unwrap();
        self.placed[v as usize] = false;
    }

    /// Visits free orderings in lexicographic order until `visit` returns false.
    fn run(&mut self, visit: &mut dyn FnMut(&[Vertex]) -> bool) -> bool {
        if self.prefix.len() == self.n {
            return visit(&self.prefix);
        }
        for v in 1..=self.n as Vertex {
            if self.placed[v as usize] {
                continue;
            }
            let mark = self.undo.len();
            let keep_going = if self.place(v) { self.run(visit) } else { true };
            self.unplace(mark);
            if !keep_going {
                return false;
            }
        }
        true
    }
}

fn check_cap(h: &Hypergraph, cap: u32) -> Result<(), OracleError> {
    if h.n_vertices() > cap {
        return Err(OracleError::TooLarge {
            n: h.n_vertices(),
            cap,
        });
    }
    Ok(())
}

/// Calls `visit` on every `spec`-free ordering in lexicographic order until it
/// returns false.
pub fn for_each_free_ordering(
    h: &Hypergraph,
    spec: PatternSpec,
    cap: u32,
    mut visit: impl FnMut(&[Vertex]) -> bool,
) -> Result<(), OracleError> {
    check_cap(h, cap)?;
    Enumerator::new(h, spec).run(&mut visit);
    Ok(())
}

/// Lexicographically first `spec`-free ordering, or `None`.
pub fn brute_free_ordering(
    h: &Hypergraph,
    spec: PatternSpec,
) -> Result<Option<VertexOrder>, OracleError> {
    brute_free_ordering_capped(h, spec, FREE_ORDERING_CAP)
}

pub fn brute_free_ordering_capped(
    h: &Hypergraph,
    spec: PatternSpec,
    cap: u32,
) -> Result<Option<VertexOrder>, OracleError> {
    let mut first = None;
    for_each_free_ordering(h, spec, cap, |seq| {
        first = Some(VertexOrder::from_vec_unchecked(seq.to_vec()));
        false
    })?;
    Ok(first)
}

pub fn brute_count_free(h: &Hypergraph, spec: PatternSpec) -> Result<u64, OracleError> {
    let mut count = 0u64;
    for_each_free_ordering(h, spec, FREE_ORDERING_CAP, |_| {
        count += 1;
        true
    })?;
    Ok(count)
}

/// `m` distinct triples over `1..=n`, drawn without replacement and sorted.
pub fn random_3uniform(spec: RandomSpec) -> Result<SourceHypergraph3, OracleError> {
    let n = spec.vertices;
    let all: Vec<[Vertex; 3]> = (1..=n)
        .flat_map(|a| (a + 1..=n).flat_map(move |b| (b + 1..=n).map(move |c| [a, b, c])))
        .collect();
    if spec.edges > all.len() {
        return Err(OracleError::TooManyEdges {
            requested: spec.edges,
            available: all.len() as u64,
        });
    }
    let mut rng = seeded_rng(spec.seed);
    let mut picked: Vec<[Vertex; 3]> = index::sample(&mut rng, all.len(), spec.edges)
        .into_iter()
        .map(|i| all[i])
        .collect();
    picked.sort_unstable();
    Ok(SourceHypergraph3::new(n, picked).expect("sampled triples are valid"))
}

/// Uniformly sized random edge over `1..=n`.
pub fn random_edge<R: Rng>(rng: &mut R, n: u32, min: usize, max: usize) -> Edge {
    let size = rng.gen_range(min..=max);
    let mut e: Edge = index::sample(rng, n as usize, size)
        .into_iter()
        .map(|i| i as Vertex + 1)
        .collect();
    e.sort_unstable();
    e
}

pub fn random_order<R: Rng>(rng: &mut R, n: u32) -> VertexOrder {
    let seq = index::sample(rng, n as usize, n as usize)
        .into_iter()
        .map(|i| i as Vertex + 1)
        .collect();
    VertexOrder::from_vec_unchecked(seq)
}

/// `m` distinct edges with sizes in `min_edge..=max_edge` (clamped to `N`).
pub fn random_hypergraph(spec: RandomSpec) -> Result<Hypergraph, OracleError> {
    let n = spec.vertices;
    let max = spec.max_edge.min(n as usize);
    let min = spec.min_edge;
    if n == 0 || min > max {
        return Err(OracleError::EmptySizeRange {
            min: spec.min_edge,
            max: spec.max_edge,
            n,
        });
    }
    let available = (min..=max).fold(0u64, |acc, k| {
        acc.saturating_add(binomial(n as u64, k as u64))
    });
    if (spec.edges as u64) > available {
        return Err(OracleError::TooManyEdges {
            requested: spec.edges,
            available,
        });
    }
    let mut rng = seeded_rng(spec.seed);
    let mut seen = BTreeSet::new();
    let mut edges = Vec::with_capacity(spec.edges);
    while edges.len() < spec.edges {
        let e = random_edge(&mut rng, n, min, max);
        if seen.insert(e.clone()) {
            edges.push(e);
        }
    }
    Ok(Hypergraph::new(n, edges).expect("generated edges are distinct and in range"))
}
