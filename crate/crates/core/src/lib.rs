//! Alternation-pattern-free vertex orderings of hypergraphs.
//!
//! Two edges `A` and `B` form an `(AB)^k` pattern under a vertex ordering if
//! there are vertices `a1 < b1 < a2 < b2 < ... < ak < bk` (in ordering
//! position) with every `ai` in `A \ B` and every `bi` in `B \ A`; the
//! `(AB)^k A` pattern carries one extra trailing `a`. This crate provides:
//!
//! - [`model`]: hypergraphs, orderings, pattern specs and reduction instances;
//! - [`pattern`]: linear-time pair checks based on alternation block counts;
//! - [`gadgets`]: interval edge families and ordering-equivalence utilities;
//! - [`reduction`]: the chain of reductions from 2-coloring 3-uniform
//!   hypergraphs to `(AB)^k` / `(AB)^k A` freeness and pseudodisk recognition,
//!   with certificate translation in both directions;
//! - [`solver`]: an exact branch-and-bound decision procedure;
//! - [`oracle`]: brute-force oracles and seeded random generators.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]

extern crate alloc;

pub mod bitset;
pub mod gadgets;
pub mod model;
pub mod oracle;
pub mod pattern;
pub mod reduction;
pub mod solver;

pub use model::{
    Block, BlockRole, Color, Coloring, Family, FamilySet, Hypergraph, Instance, ModelError,
    PatternSpec, PatternWitness, SourceHypergraph3, Vertex, VertexOrder,
};
pub use pattern::{PairWitness, Verdict};
pub use solver::{Budget, SolveOutcome, SolveStatus};
