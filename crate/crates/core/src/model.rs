//! Core data types: hypergraphs, orderings, pattern specs, instances.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

/// 1-based vertex identifier.
pub type Vertex = u32;

/// An edge: strictly increasing vertex identifiers.
pub type Edge = Vec<Vertex>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("a hypergraph needs at least one vertex")]
    NoVertices,
    #[error("identifier {vertex} exceeds N={n}")]
    VertexOutOfRange { vertex: Vertex, n: u32 },
    #[error("identifier 0 is not allowed, vertices are numbered from 1")]
    ZeroVertex,
    #[error("edge {index} duplicates edge {first}")]
    DuplicateEdge { index: usize, first: usize },
    #[error("ordering has length {got}, expected {expected}")]
    OrderLength { got: usize, expected: usize },
    #[error("ordering is not a permutation: vertex {0} missing or repeated")]
    NotAPermutation(Vertex),
    #[error("blocks not disjoint: vertex {0} appears twice")]
    BlocksOverlap(Vertex),
    #[error("blocks do not cover vertex {0}")]
    BlocksIncomplete(Vertex),
    #[error("R-block size must be 2, block {index} has {size}")]
    RBlockSize { index: usize, size: usize },
    #[error("S-block size must be 4, block {index} has {size}")]
    SBlockSize { index: usize, size: usize },
    #[error("block order violated at block {0}: expected R-blocks, then S-blocks, then apex/lift")]
    BlockOrder(usize),
    #[error("empty block at position {0}")]
    EmptyBlock(usize),
    #[error("pattern count k must be at least 1")]
    PatternCount,
    #[error("cannot parse pattern {0:?}: expected ab^K or ab^Ka")]
    PatternSyntax(String),
    #[error("triple {index} is not strictly increasing within 1..={n}")]
    BadTriple { index: usize, n: u32 },
    #[error("triple {index} duplicates triple {first}")]
    DuplicateTriple { index: usize, first: usize },
    #[error("edge family tags: got {got}, expected one per edge ({expected})")]
    FamilyCount { got: usize, expected: usize },
    #[error("unknown edge family tag {0:?}")]
    FamilyTag(String),
    #[error("coloring covers {got} vertices, expected {expected}")]
    ColoringLength { got: usize, expected: usize },
}

/// A hypergraph on vertices `1..=N` with an ordered, duplicate-free edge list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    n: u32,
    edges: Vec<Edge>,
}

fn normalize_edge(n: u32, mut edge: Edge) -> Result<Edge, ModelError> {
    edge.sort_unstable();
    edge.dedup();
    if let Some(&first) = edge.first() {
        if first == 0 {
            return Err(ModelError::ZeroVertex);
        }
    }
    if let Some(&last) = edge.last() {
        if last > n {
            return Err(ModelError::VertexOutOfRange { vertex: last, n });
        }
    }
    Ok(edge)
}

impl Hypergraph {
    /// Builds a hypergraph, rejecting duplicate edges. Vertex lists are
    /// normalized to sorted sets.
    pub fn new(n: u32, edges: Vec<Edge>) -> Result<Self, ModelError> {
        if n == 0 {
            return Err(ModelError::NoVertices);
        }
        let mut seen: BTreeMap<Edge, usize> = BTreeMap::new();
        let mut out = Vec::with_capacity(edges.len());
        for (index, edge) in edges.into_iter().enumerate() {
            let edge = normalize_edge(n, edge)?;
            if let Some(&first) = seen.get(&edge) {
                return Err(ModelError::DuplicateEdge { index, first });
            }
            seen.insert(edge.clone(), index);
            out.push(edge);
        }
        Ok(Hypergraph { n, edges: out })
    }

    /// Builds a hypergraph keeping only the first copy of repeated edges.
    pub fn merged(n: u32, edges: Vec<Edge>) -> Result<Self, ModelError> {
        if n == 0 {
            return Err(ModelError::NoVertices);
        }
        let mut seen: BTreeMap<Edge, ()> = BTreeMap::new();
        let mut out = Vec::with_capacity(edges.len());
        for edge in edges {
            let edge = normalize_edge(n, edge)?;
            if seen.insert(edge.clone(), ()).is_none() {
                out.push(edge);
            }
        }
        Ok(Hypergraph { n, edges: out })
    }

    pub fn n_vertices(&self) -> u32 {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> &[Vertex] {
        &self.edges[index]
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        1..=self.n
    }

    /// Position of `edge` in the edge list, if present.
    pub fn find_edge(&self, edge: &[Vertex]) -> Option<usize> {
        self.edges.iter().position(|e| e.as_slice() == edge)
    }
}

/// A linear order of `1..=N`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexOrder(Vec<Vertex>);

impl VertexOrder {
    /// Validates that `seq` is a permutation of `1..=seq.len()`.
    pub fn new(seq: Vec<Vertex>) -> Result<Self, ModelError> {
        let n = seq.len();
        let mut seen = vec![false; n + 1];
        for &v in &seq {
            if v == 0 {
                return Err(ModelError::ZeroVertex);
            }
            if v as usize > n {
                return Err(ModelError::VertexOutOfRange {
                    vertex: v,
                    n: n as u32,
                });
            }
            if core::mem::replace(&mut seen[v as usize], true) {
                return Err(ModelError::NotAPermutation(v));
            }
        }
        Ok(VertexOrder(seq))
    }

    /// Like [`VertexOrder::new`] but also checks the length against `h`.
    pub fn for_hypergraph(seq: Vec<Vertex>, h: &Hypergraph) -> Result<Self, ModelError> {
        if seq.len() != h.n_vertices() as usize {
            return Err(ModelError::OrderLength {
                got: seq.len(),
                expected: h.n_vertices() as usize,
            });
        }
        Self::new(seq)
    }

    pub fn identity(n: u32) -> Self {
        VertexOrder((1..=n).collect())
    }

    pub(crate) fn from_vec_unchecked(seq: Vec<Vertex>) -> Self {
        debug_assert!(VertexOrder::new(seq.clone()).is_ok());
        VertexOrder(seq)
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Vertex> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `positions()[v]` is the 0-based position of vertex `v`; index 0 unused.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![usize::MAX; self.0.len() + 1];
        for (i, &v) in self.0.iter().enumerate() {
            pos[v as usize] = i;
        }
        pos
    }

    pub fn reversed(&self) -> Self {
        let mut seq = self.0.clone();
        seq.reverse();
        VertexOrder(seq)
    }

    /// Applies `s` cyclic shifts, each moving the last entry to the front.
    pub fn rotated(&self, s: usize) -> Self {
        let mut seq = self.0.clone();
        if !seq.is_empty() {
            let s = s % seq.len();
            seq.rotate_right(s);
        }
        VertexOrder(seq)
    }
}

impl fmt::Display for VertexOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// The forbidden alternation: `(AB)^k`, or `(AB)^k A` when `trailing_a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PatternSpec {
    k: u32,
    trailing_a: bool,
}

impl PatternSpec {
    pub const ABAB: PatternSpec = PatternSpec {
        k: 2,
        trailing_a: false,
    };
    pub const ABABA: PatternSpec = PatternSpec {
        k: 2,
        trailing_a: true,
    };
    pub const ABA: PatternSpec = PatternSpec {
        k: 1,
        trailing_a: true,
    };

    pub fn new(k: u32, trailing_a: bool) -> Result<Self, ModelError> {
        if k == 0 {
            return Err(ModelError::PatternCount);
        }
        Ok(PatternSpec { k, trailing_a })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn trailing_a(&self) -> bool {
        self.trailing_a
    }

    /// Pattern length `2k`, plus one with a trailing `A`.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        2 * self.k as usize + usize::from(self.trailing_a)
    }

    /// Freeness is invariant under cyclic shifts only for even patterns.
    pub fn is_cyclic_invariant(&self) -> bool {
        !self.trailing_a
    }
}

impl fmt::Display for PatternSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ab^{}{}", self.k, if self.trailing_a { "a" } else { "" })
    }
}

impl FromStr for PatternSpec {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ModelError::PatternSyntax(String::from(s));
        let t = s.trim().to_ascii_lowercase();
        let rest = t.strip_prefix("ab^").ok_or_else(bad)?;
        let (digits, trailing) = match rest.strip_suffix('a') {
            Some(d) => (d, true),
            None => (rest, false),
        };
        let k: u32 = digits.parse().map_err(|_| bad())?;
        PatternSpec::new(k, trailing)
    }
}

/// Two edges and the alternating vertices proving they form a pattern.
///
/// `vertices[0], vertices[2], ...` lie in `edge_a \ edge_b`, the others in
/// `edge_b \ edge_a`, listed in ordering order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternWitness {
    pub edge_a: usize,
    pub edge_b: usize,
    pub vertices: Vec<Vertex>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Red,
    Blue,
}

impl Color {
    pub fn name(self) -> &'static str {
        match self {
            Color::Red => "red",
            Color::Blue => "blue",
        }
    }
}

impl FromStr for Color {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "red" | "r" => Ok(Color::Red),
            "blue" | "b" => Ok(Color::Blue),
            other => Err(alloc::format!("unknown color {other:?}")),
        }
    }
}

/// A red/blue assignment to source vertices `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring(Vec<Color>);

impl Coloring {
    pub fn new(colors: Vec<Color>) -> Self {
        Coloring(colors)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Color of source vertex `v` (1-based).
    pub fn get(&self, v: Vertex) -> Color {
        self.0[v as usize - 1]
    }

    pub fn colors(&self) -> &[Color] {
        &self.0
    }

    /// First triple (0-based index) whose three members share a color.
    pub fn monochromatic_triple(&self, g: &SourceHypergraph3) -> Option<usize> {
        g.triples().iter().position(|t| {
            let c = self.get(t[0]);
            self.get(t[1]) == c && self.get(t[2]) == c
        })
    }

    pub fn is_proper(&self, g: &SourceHypergraph3) -> bool {
        self.0.len() == g.n() as usize && self.monochromatic_triple(g).is_none()
    }
}

impl fmt::Display for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(c.name())?;
        }
        Ok(())
    }
}

/// A 3-uniform hypergraph given as strictly increasing triples over `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SourceHypergraph3 {
    n: u32,
    triples: Vec<[Vertex; 3]>,
}

impl SourceHypergraph3 {
    pub fn new(n: u32, triples: Vec<[Vertex; 3]>) -> Result<Self, ModelError> {
        let mut seen: BTreeMap<[Vertex; 3], usize> = BTreeMap::new();
        for (index, t) in triples.iter().enumerate() {
            if !(1 <= t[0] && t[0] < t[1] && t[1] < t[2] && t[2] <= n) {
                return Err(ModelError::BadTriple { index, n });
            }
            if let Some(&first) = seen.get(t) {
                return Err(ModelError::DuplicateTriple { index, first });
            }
            seen.insert(*t, index);
        }
        Ok(SourceHypergraph3 { n, triples })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> usize {
        self.triples.len()
    }

    pub fn triples(&self) -> &[[Vertex; 3]] {
        &self.triples
    }

    /// The Fano plane: the standard non-2-colorable 3-uniform hypergraph.
    pub fn fano() -> Self {
        SourceHypergraph3 {
            n: 7,
            triples: vec![
                [1, 2, 4],
                [2, 3, 5],
                [3, 4, 6],
                [4, 5, 7],
                [1, 5, 6],
                [2, 6, 7],
                [1, 3, 7],
            ],
        }
    }
}

/// Role of a vertex block in a reduction instance. Indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BlockRole {
    /// Pair encoding the color of a source vertex.
    R(u32),
    /// Quadruple attached to a source triple.
    S(u32),
    Apex,
    Lift,
}

impl BlockRole {
    pub fn name(&self) -> &'static str {
        match self {
            BlockRole::R(_) => "R",
            BlockRole::S(_) => "S",
            BlockRole::Apex => "apex",
            BlockRole::Lift => "lift",
        }
    }

    pub fn source_index(&self) -> Option<u32> {
        match *self {
            BlockRole::R(i) | BlockRole::S(i) => Some(i),
            BlockRole::Apex | BlockRole::Lift => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Block {
    pub role: BlockRole,
    pub members: Vec<Vertex>,
}

/// Edge family produced by a construction step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// Circular intervals of blocks.
    CircularBlocks,
    /// The `I` / `I'` pairs tying R-blocks to S-blocks.
    Coupling,
    /// `{t, t+3}` and its complement.
    Separator,
    /// Unions of at most two block intervals.
    TwoInterval,
    /// Base edges extended by the appended vertex.
    Plus,
    /// Edges created by a lift.
    Lift,
    /// Edges extended by an apex vertex.
    Apex,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::CircularBlocks,
        Family::Coupling,
        Family::Separator,
        Family::TwoInterval,
        Family::Plus,
        Family::Lift,
        Family::Apex,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Family::CircularBlocks => "E1",
            Family::Coupling => "E2",
            Family::Separator => "E3",
            Family::TwoInterval => "E0",
            Family::Plus => "E+",
            Family::Lift => "lift",
            Family::Apex => "apex",
        }
    }

    pub fn from_tag(tag: &str) -> Result<Self, ModelError> {
        Family::ALL
            .into_iter()
            .find(|f| f.tag() == tag)
            .ok_or_else(|| ModelError::FamilyTag(String::from(tag)))
    }

    fn bit(self) -> u16 {
        1 << (self as u16)
    }
}

/// Set of families that produced one (deduplicated) edge.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct FamilySet(u16);

impl FamilySet {
    pub fn single(f: Family) -> Self {
        FamilySet(f.bit())
    }

    pub fn insert(&mut self, f: Family) {
        self.0 |= f.bit();
    }

    pub fn contains(&self, f: Family) -> bool {
        self.0 & f.bit() != 0
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = Family> + '_ {
        Family::ALL.into_iter().filter(|f| self.contains(*f))
    }
}

/// A hypergraph with the provenance of the reduction that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub hypergraph: Hypergraph,
    /// Empty when the hypergraph carries no block structure.
    pub blocks: Vec<Block>,
    pub source: Option<SourceHypergraph3>,
    pub spec: PatternSpec,
    pub lineage: Vec<String>,
    /// One entry per edge, or empty when provenance is unknown.
    pub families: Vec<FamilySet>,
}

impl Instance {
    /// Checks the block partition and the family table.
    pub fn validate(&self) -> Result<(), ModelError> {
        let n = self.hypergraph.n_vertices();
        if !self.families.is_empty() && self.families.len() != self.hypergraph.num_edges() {
            return Err(ModelError::FamilyCount {
                got: self.families.len(),
                expected: self.hypergraph.num_edges(),
            });
        }
        if self.blocks.is_empty() {
            return Ok(());
        }
        let mut seen = vec![false; n as usize + 1];
        // 0 = R phase, 1 = S phase, 2 = trailing apex/lift
        let mut phase = 0u8;
        let mut next_r = 1u32;
        let mut next_s = 1u32;
        for (index, block) in self.blocks.iter().enumerate() {
            if block.members.is_empty() {
                return Err(ModelError::EmptyBlock(index));
            }
            for &v in &block.members {
                if v == 0 {
                    return Err(ModelError::ZeroVertex);
                }
                if v > n {
                    return Err(ModelError::VertexOutOfRange { vertex: v, n });
                }
                if core::mem::replace(&mut seen[v as usize], true) {
                    return Err(ModelError::BlocksOverlap(v));
                }
            }
            match block.role {
                BlockRole::R(i) => {
                    if block.members.len() != 2 {
                        return Err(ModelError::RBlockSize {
                            index,
                            size: block.members.len(),
                        });
                    }
                    if phase != 0 || i != next_r {
                        return Err(ModelError::BlockOrder(index));
                    }
                    next_r += 1;
                }
                BlockRole::S(j) => {
                    if block.members.len() != 4 {
                        return Err(ModelError::SBlockSize {
                            index,
                            size: block.members.len(),
                        });
                    }
                    if phase > 1 || j != next_s {
                        return Err(ModelError::BlockOrder(index));
                    }
                    phase = 1;
                    next_s += 1;
                }
                BlockRole::Apex | BlockRole::Lift => phase = 2,
            }
        }
        if let Some(v) = (1..=n).find(|&v| !seen[v as usize]) {
            return Err(ModelError::BlocksIncomplete(v));
        }
        if let Some(src) = &self.source {
            if next_r - 1 != src.n() || (next_s - 1) as usize != src.m() {
                return Err(ModelError::BlockOrder(self.blocks.len()));
            }
        }
        Ok(())
    }

    /// Families of edge `index`, empty if unknown.
    pub fn families_of(&self, index: usize) -> FamilySet {
        self.families.get(index).copied().unwrap_or_default()
    }

    /// Member lists of all blocks, in block order.
    pub fn block_members(&self) -> Vec<Vec<Vertex>> {
        self.blocks.iter().map(|b| b.members.clone()).collect()
    }
}
