//! Interval edge families that force block structure, and utilities for
//! ordering equivalence (cyclic shifts and reversal).

use alloc::vec;
use alloc::vec::Vec;

use crate::model::{Edge, Hypergraph, ModelError, Vertex, VertexOrder};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GadgetError {
    #[error(
        "no structured equivalent: no cyclic shift or reversal has the requested block structure"
    )]
    NoStructuredEquivalent,
    #[error("block {0} is empty")]
    EmptyBlock(usize),
    #[error("blocks not disjoint: vertex {0} appears twice")]
    Overlap(Vertex),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Ordered, disjoint, non-empty vertex blocks `A_1, ..., A_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockList(Vec<Vec<Vertex>>);

impl BlockList {
    pub fn new(blocks: Vec<Vec<Vertex>>) -> Result<Self, GadgetError> {
        let mut seen: Vec<bool> = Vec::new();
        for (i, b) in blocks.iter().enumerate() {
            if b.is_empty() {
                return Err(GadgetError::EmptyBlock(i));
            }
            for &v in b {
                let v = v as usize;
                if v >= seen.len() {
                    seen.resize(v + 1, false);
                }
                if core::mem::replace(&mut seen[v], true) {
                    return Err(GadgetError::Overlap(v as Vertex));
                }
            }
        }
        Ok(BlockList(blocks))
    }

    /// `k` singleton blocks `{1}, ..., {k}`.
    pub fn singletons(k: u32) -> Self {
        BlockList((1..=k).map(|v| vec![v]).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn blocks(&self) -> &[Vec<Vertex>] {
        &self.0
    }

    fn union<I: IntoIterator<Item = usize>>(&self, indices: I) -> Edge {
        let mut e: Edge = indices
            .into_iter()
            .flat_map(|i| self.0[i].iter().copied())
            .collect();
        e.sort_unstable();
        e
    }
}

/// Unions over every non-empty proper circular interval of block indices,
/// by start block then length: `k(k-1)` edges.
pub fn circular_block_intervals(blocks: &BlockList) -> Vec<Edge> {
    let k = blocks.len();
    let mut out = Vec::with_capacity(k * k.saturating_sub(1));
    for start in 0..k {
        for len in 1..k {
            out.push(blocks.union((start..start + len).map(|i| i % k)));
        }
    }
    out
}

/// Unions over every block-index set made of one or two linear runs: all
/// intervals first, then all pairs of non-adjacent intervals.
pub fn two_interval_blocks(blocks: &BlockList) -> Vec<Edge> {
    let k = blocks.len();
    let mut out = Vec::new();
    for a in 0..k {
        for b in a..k {
            out.push(blocks.union(a..=b));
        }
    }
    for a in 0..k {
        for b in a..k {
            for c in b + 2..k {
                for d in c..k {
                    out.push(blocks.union((a..=b).chain(c..=d)));
                }
            }
        }
    }
    out
}

/// All proper non-empty circular intervals of `1..=n`.
pub fn circular_intervals(n: u32) -> Hypergraph {
    Hypergraph::merged(n, circular_block_intervals(&BlockList::singletons(n)))
        .expect("circular intervals are in range")
}

/// All non-empty unions of at most two intervals of `1..=n`. Orderings free
/// of ABABA are forced to be monotone only from `n = 7` on.
pub fn two_intervals(n: u32) -> Hypergraph {
    Hypergraph::merged(n, two_interval_blocks(&BlockList::singletons(n)))
        .expect("two-intervals are in range")
}

/// The `2N` orderings equivalent to `order`: all cyclic shifts, then all
/// cyclic shifts of the reverse.
pub fn equivalent_orders(order: &VertexOrder) -> impl Iterator<Item = VertexOrder> + '_ {
    let n = order.len().max(1);
    let rev = order.reversed();
    (0..n)
        .map(move |s| order.rotated(s))
        .chain((0..n).map(move |s| rev.rotated(s)))
}

/// Lexicographically least equivalent ordering.
pub fn canonical_form(order: &VertexOrder) -> VertexOrder {
    let seq = order.as_slice();
    let n = seq.len();
    if n == 0 {
        return order.clone();
    }
    // The minimum starts at the smallest vertex, read in one of two directions.
    let start = seq.iter().position(|&v| v == 1).unwrap_or(0);
    let forward: Vec<Vertex> = (0..n).map(|i| seq[(start + i) % n]).collect();
    let backward: Vec<Vertex> = (0..n).map(|i| seq[(start + n - i) % n]).collect();
    VertexOrder::from_vec_unchecked(forward.min(backward))
}

pub fn is_equivalent(a: &VertexOrder, b: &VertexOrder) -> bool {
    a.len() == b.len() && canonical_form(a) == canonical_form(b)
}

/// True iff blocks appear in the given order with no interleaving. Vertices
/// outside every block must come after all block vertices.
pub fn has_structure(order: &VertexOrder, blocks: &BlockList) -> bool {
    let k = blocks.len();
    let mut block_of = vec![k; order.len() + 1];
    for (i, b) in blocks.blocks().iter().enumerate() {
        for &v in b {
            if let Some(slot) = block_of.get_mut(v as usize) {
                *slot = i;
            }
        }
    }
    order
        .as_slice()
        .windows(2)
        .all(|w| block_of[w[0] as usize] <= block_of[w[1] as usize])
}

/// First equivalent ordering, in [`equivalent_orders`] scan order, that has
/// the block structure.
pub fn normalize_to_structure(
    order: &VertexOrder,
    blocks: &BlockList,
) -> Result<VertexOrder, GadgetError> {
    equivalent_orders(order)
        .find(|o| has_structure(o, blocks))
        .ok_or(GadgetError::NoStructuredEquivalent)
}

/// True iff `set` occupies consecutive positions of `order` read cyclically.
pub fn is_circular_run(order: &VertexOrder, set: &[Vertex]) -> bool {
    let n = order.len();
    if set.is_empty() || set.len() >= n {
        return true;
    }
    let mut member = vec![false; n + 1];
    for &v in set {
        member[v as usize] = true;
    }
    let seq = order.as_slice();
    // A circular run has exactly one entry point.
    let entries = (0..n)
        .filter(|&i| member[seq[i] as usize] && !member[seq[(i + n - 1) % n] as usize])
        .count();
    entries == 1
}
