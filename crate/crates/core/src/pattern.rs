//! Pattern detection for a fixed ordering.
//!
//! For two edges, scan the ordering and emit `a` for every vertex only in the
//! first edge and `b` for every vertex only in the second. The number of
//! maximal runs in that word is the pair's block count `m`; an alternating
//! subsequence of length `L` (starting with either symbol) exists iff `m >= L`.

use alloc::vec;
use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::model::{Hypergraph, PatternSpec, PatternWitness, Vertex, VertexOrder};

/// Which of the two edges supplies the first (and, for odd patterns, last)
/// vertex of a pair witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lead {
    First,
    Second,
}

/// Alternating vertices for a pair of edges given as vertex sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairWitness {
    pub lead: Lead,
    pub vertices: Vec<Vertex>,
}

impl PairWitness {
    /// Attaches edge indices: `first` and `second` correspond to the two
    /// edges passed to [`find_pattern_witness`].
    pub fn into_witness(self, first: usize, second: usize) -> PatternWitness {
        let (edge_a, edge_b) = match self.lead {
            Lead::First => (first, second),
            Lead::Second => (second, first),
        };
        PatternWitness {
            edge_a,
            edge_b,
            vertices: self.vertices,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Free,
    Pattern(PatternWitness),
}

impl Verdict {
    pub fn is_free(&self) -> bool {
        matches!(self, Verdict::Free)
    }

    pub fn witness(&self) -> Option<&PatternWitness> {
        match self {
            Verdict::Free => None,
            Verdict::Pattern(w) => Some(w),
        }
    }
}

/// Block count of one edge pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AlternationProfile {
    pub pair: (usize, usize),
    pub block_count: usize,
}

const IN_FIRST: u8 = 1;
const IN_SECOND: u8 = 2;

fn membership(order: &VertexOrder, e1: &[Vertex], e2: &[Vertex]) -> Vec<u8> {
    let mut marks = vec![0u8; order.len() + 1];
    for &v in e1 {
        if let Some(m) = marks.get_mut(v as usize) {
            *m |= IN_FIRST;
        }
    }
    for &v in e2 {
        if let Some(m) = marks.get_mut(v as usize) {
            *m |= IN_SECOND;
        }
    }
    marks
}

/// Number of maximal runs in the two-symbol word of the pair.
pub fn alternation_count(order: &VertexOrder, e1: &[Vertex], e2: &[Vertex]) -> usize {
    let marks = membership(order, e1, e2);
    let mut last = 0u8;
    let mut runs = 0;
    for &v in order.as_slice() {
        let s = marks[v as usize];
        if (s == IN_FIRST || s == IN_SECOND) && s != last {
            runs += 1;
            last = s;
        }
    }
    runs
}

/// Lexicographically earliest (by position) alternating subsequence of
/// length `spec.len()`, or `None` when the block count is below it.
pub fn find_pattern_witness(
    order: &VertexOrder,
    e1: &[Vertex],
    e2: &[Vertex],
    spec: PatternSpec,
) -> Option<PairWitness> {
    let marks = membership(order, e1, e2);
    let want = spec.len();
    let mut vertices = Vec::with_capacity(want);
    let mut lead = None;
    let mut last = 0u8;
    for &v in order.as_slice() {
        let s = marks[v as usize];
        if (s == IN_FIRST || s == IN_SECOND) && s != last {
            if lead.is_none() {
                lead = Some(if s == IN_FIRST {
                    Lead::First
                } else {
                    Lead::Second
                });
            }
            vertices.push(v);
            last = s;
            if vertices.len() == want {
                return Some(PairWitness {
                    lead: lead.unwrap(),
                    vertices,
                });
            }
        }
    }
    None
}

/// Edge membership as position bitsets under a fixed ordering.
struct PositionSets {
    sets: Vec<BitSet>,
}

impl PositionSets {
    fn new(h: &Hypergraph, order: &VertexOrder) -> Self {
        let pos = order.positions();
        let n = order.len();
        let sets = h
            .edges()
            .iter()
            .map(|e| {
                let mut s = BitSet::new(n);
                for &v in e {
                    s.insert(pos[v as usize]);
                }
                s
            })
            .collect();
        PositionSets { sets }
    }

    /// Run count of pair `(i, j)`, stopping early once `limit` is reached.
    fn runs(&self, i: usize, j: usize, limit: usize) -> usize {
        let a = self.sets[i].words();
        let b = self.sets[j].words();
        let mut runs = 0;
        let mut last = 2u64;
        for (&wa, &wb) in a.iter().zip(b) {
            let mut diff = wa ^ wb;
            while diff != 0 {
                let bit = diff.trailing_zeros();
                diff &= diff - 1;
                let sym = (wa >> bit) & 1;
                if sym != last {
                    runs += 1;
                    last = sym;
                    if runs >= limit {
                        return runs;
                    }
                }
            }
        }
        runs
    }
}

/// Checks every unordered pair of distinct edges. The reported witness comes
/// from the first offending pair in `(i, j)` lexicographic order.
pub fn is_free_ordering(h: &Hypergraph, order: &VertexOrder, spec: PatternSpec) -> Verdict {
    debug_assert_eq!(order.len(), h.n_vertices() as usize);
    let sets = PositionSets::new(h, order);
    let want = spec.len();
    let m = h.num_edges();
    for i in 0..m {
        for j in i + 1..m {
            if sets.runs(i, j, want) >= want {
                let w = find_pattern_witness(order, h.edge(i), h.edge(j), spec)
                    .expect("block count and witness search disagree");
                return Verdict::Pattern(w.into_witness(i, j));
            }
        }
    }
    Verdict::Free
}

/// Largest block count over distinct edge pairs and the first pair attaining
/// it; `(0, None)` with fewer than two edges.
pub fn max_pair_alternation(
    h: &Hypergraph,
    order: &VertexOrder,
) -> (usize, Option<(usize, usize)>) {
    pair_profiles(h, order).fold((0, None), |(best, pair), p| {
        if pair.is_none() || p.block_count > best {
            (p.block_count, Some(p.pair))
        } else {
            (best, pair)
        }
    })
}

/// Block counts of all pairs `i < j`, in lexicographic pair order.
pub fn pair_profiles<'a>(
    h: &'a Hypergraph,
    order: &VertexOrder,
) -> impl Iterator<Item = AlternationProfile> + 'a {
    let sets = PositionSets::new(h, order);
    let m = h.num_edges();
    (0..m)
        .flat_map(move |i| (i + 1..m).map(move |j| (i, j)))
        .map(move |(i, j)| AlternationProfile {
            pair: (i, j),
            block_count: sets.runs(i, j, usize::MAX),
        })
}
