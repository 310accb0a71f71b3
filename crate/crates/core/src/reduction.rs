//! Reductions from proper 2-coloring of 3-uniform hypergraphs to
//! alternation-freeness, and certificate translation in both directions.
//!
//! Vertex layout of the base construction for a source with `n` vertices and
//! `m` triples: `R_i = {2i-1, 2i}` encodes the color of source vertex `i`
//! (red iff `2i-1` comes first), `S_j = {t_j, ..., t_j+3}` with
//! `t_j = 2n + 4j - 3` is attached to triple `j`. Within `S_j` the pairs
//! `(t_j+2, t_j+3)`, `(t_j+1, t_j+2)` and `(t_j, t_j+1)` repeat the colors of
//! the smallest, middle and largest member of the triple.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::gadgets::{self, BlockList, GadgetError};
use crate::model::{
    Block, BlockRole, Color, Coloring, Edge, Family, FamilySet, Hypergraph, Instance, ModelError,
    PatternSpec, SourceHypergraph3, Vertex, VertexOrder,
};

pub const STEP_BASE: &str = "2col→abab";
pub const STEP_ODD: &str = "abab→ababa";
pub const STEP_APEX: &str = "apex";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReductionError {
    #[error("source needs n >= 3 vertices and m >= 1 triples (got n={n}, m={m})")]
    SourceTooSmall { n: u32, m: usize },
    #[error("monochromatic triple {0}: the coloring is not proper")]
    MonochromaticTriple(usize),
    #[error("coloring has {got} colors, source has {expected} vertices")]
    ColoringLength { got: usize, expected: usize },
    #[error("inconsistent certificate: {0}")]
    InconsistentCertificate(String),
    #[error("instance lacks block metadata or source hypergraph")]
    MissingProvenance,
    #[error("instance was not produced by the 2-coloring reduction")]
    NotBaseInstance,
    #[error("{0} blocks after padding, the odd construction needs at least 7")]
    TooFewBlocks(usize),
    #[error("unsupported: ABA and AB targets ({0}); deciding ABA-freeness has no known hardness reduction")]
    Unsupported(PatternSpec),
    #[error("unrecognized lineage step {0:?}")]
    UnknownStep(String),
    #[error(transparent)]
    Gadget(#[from] GadgetError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// S-block orders for the six proper colorings of a triple, as offsets from
/// `t_j`. Keyed by the colors of the triple's members in increasing order.
const S_BLOCK_ORDERS: [([Color; 3], [u32; 4]); 6] = {
    use Color::{Blue as B, Red as R};
    [
        ([R, R, B], [1, 2, 3, 0]),
        ([R, B, R], [2, 3, 0, 1]),
        ([R, B, B], [2, 1, 0, 3]),
        ([B, R, R], [3, 0, 1, 2]),
        ([B, R, B], [1, 0, 3, 2]),
        ([B, B, R], [0, 3, 2, 1]),
    ]
};

/// Offset within `S_j` of the pair encoding the member of rank `r` (1-based,
/// smallest member first).
fn pair_offset(rank: u32) -> u32 {
    3 - rank
}

/// Deduplicating edge accumulator that records which families produced
/// each edge.
#[derive(Default)]
struct EdgeTable {
    index: BTreeMap<Edge, usize>,
    edges: Vec<Edge>,
    families: Vec<FamilySet>,
}

impl EdgeTable {
    fn push(&mut self, mut edge: Edge, family: FamilySet) {
        edge.sort_unstable();
        match self.index.get(&edge) {
            Some(&i) => {
                for f in family.iter() {
                    self.families[i].insert(f);
                }
            }
            None => {
                self.index.insert(edge.clone(), self.edges.len());
                self.edges.push(edge);
                self.families.push(family);
            }
        }
    }

    fn finish(self, n: u32) -> Result<(Hypergraph, Vec<FamilySet>), ModelError> {
        Ok((Hypergraph::new(n, self.edges)?, self.families))
    }
}

/// First vertex of `S_j` (1-based `j`).
pub fn s_block_start(n: u32, j: u32) -> Vertex {
    2 * n + 4 * j - 3
}

/// The `I` / `I'` edge pair for a member `v` of rank `rank` in triple `j`.
pub fn coupling_edges(n: u32, j: u32, v: Vertex, rank: u32) -> (Edge, Edge) {
    let p = s_block_start(n, j) + pair_offset(rank);
    let i_edge: Edge = (2 * v..=p).collect();
    let mut i_prime: Edge = vec![2 * v - 1];
    i_prime.extend(2 * v + 1..p);
    i_prime.push(p + 1);
    (i_edge, i_prime)
}

/// Builds the ABAB instance whose freeness is equivalent to proper
/// 2-colorability of `g`.
pub fn reduce_2col_to_abab(g: &SourceHypergraph3) -> Result<Instance, ReductionError> {
    let (n, m) = (g.n(), g.m());
    if n < 3 || m == 0 {
        return Err(ReductionError::SourceTooSmall { n, m });
    }
    let m32 = m as u32;
    let big_n = 2 * n + 4 * m32;

    let mut blocks = Vec::with_capacity(n as usize + m);
    for i in 1..=n {
        blocks.push(Block {
            role: BlockRole::R(i),
            members: vec![2 * i - 1, 2 * i],
        });
    }
    for j in 1..=m32 {
        let t = s_block_start(n, j);
        blocks.push(Block {
            role: BlockRole::S(j),
            members: (t..t + 4).collect(),
        });
    }

    let mut table = EdgeTable::default();
    let list = BlockList::new(blocks.iter().map(|b| b.members.clone()).collect())?;
    for e in gadgets::circular_block_intervals(&list) {
        table.push(e, FamilySet::single(Family::CircularBlocks));
    }
    for (j, triple) in (1..=m32).zip(g.triples()) {
        for (rank, &v) in (1..=3).zip(triple) {
            let (a, b) = coupling_edges(n, j, v, rank);
            table.push(a, FamilySet::single(Family::Coupling));
            table.push(b, FamilySet::single(Family::Coupling));
        }
    }
    for j in 1..=m32 {
        let t = s_block_start(n, j);
        let pair = vec![t, t + 3];
        let complement: Edge = (1..=big_n).filter(|&v| v != t && v != t + 3).collect();
        table.push(pair, FamilySet::single(Family::Separator));
        table.push(complement, FamilySet::single(Family::Separator));
    }

    let (hypergraph, families) = table.finish(big_n)?;
    let inst = Instance {
        hypergraph,
        blocks,
        source: Some(g.clone()),
        spec: PatternSpec::ABAB,
        lineage: vec![STEP_BASE.to_string()],
        families,
    };
    debug_assert_eq!(inst.validate(), Ok(()));
    Ok(inst)
}

/// Appends isolated source vertices until `n + m >= min_blocks`.
pub fn pad_source(g: &SourceHypergraph3, min_blocks: usize) -> SourceHypergraph3 {
    let need = min_blocks.saturating_sub(g.m()) as u32;
    if g.n() >= need {
        return g.clone();
    }
    SourceHypergraph3::new(need, g.triples().to_vec()).expect("padding keeps triples valid")
}

fn is_base_instance(inst: &Instance) -> bool {
    inst.source.is_some()
        && !inst.blocks.is_empty()
        && inst.spec == PatternSpec::ABAB
        && inst.lineage.last().map(String::as_str) == Some(STEP_BASE)
}

/// Extends a base ABAB instance by a vertex `N+1` so that ABABA-freeness of
/// the result is equivalent to ABAB-freeness of the input.
pub fn reduce_abab_to_ababa(inst: &Instance) -> Result<Instance, ReductionError> {
    if inst.blocks.is_empty() || inst.source.is_none() {
        return Err(ReductionError::MissingProvenance);
    }
    if !is_base_instance(inst) {
        return Err(ReductionError::NotBaseInstance);
    }
    let block_count = inst.blocks.len() + 1;
    if block_count < 7 {
        return Err(ReductionError::TooFewBlocks(block_count));
    }
    let n = inst.hypergraph.n_vertices();
    let apex = n + 1;

    let mut table = EdgeTable::default();
    for (i, e) in inst.hypergraph.edges().iter().enumerate() {
        table.push(e.clone(), inst.families_of(i));
    }
    for e in inst.hypergraph.edges() {
        let mut plus = e.clone();
        plus.push(apex);
        table.push(plus, FamilySet::single(Family::Plus));
    }
    let mut members = inst.block_members();
    members.push(vec![apex]);
    for e in gadgets::two_interval_blocks(&BlockList::new(members)?) {
        table.push(e, FamilySet::single(Family::TwoInterval));
    }

    let (hypergraph, families) = table.finish(apex)?;
    let mut blocks = inst.blocks.clone();
    blocks.push(Block {
        role: BlockRole::Apex,
        members: vec![apex],
    });
    let mut lineage = inst.lineage.clone();
    lineage.push(STEP_ODD.to_string());
    Ok(Instance {
        hypergraph,
        blocks,
        source: inst.source.clone(),
        spec: PatternSpec::ABABA,
        lineage,
        families,
    })
}

/// Adds `t` fresh vertices and, for every edge `E` and fresh `x`, the edge
/// `E ∪ {x}`.
pub fn lift_ht(h: &Hypergraph, t: u32) -> Hypergraph {
    let n = h.n_vertices();
    let mut edges = h.edges().to_vec();
    for e in h.edges() {
        for x in n + 1..=n + t {
            let mut lifted = e.clone();
            lifted.push(x);
            edges.push(lifted);
        }
    }
    Hypergraph::merged(n + t, edges).expect("lifted edges are in range")
}

fn lift_step(t: u32) -> String {
    format!("lift(t={t})")
}

/// [`lift_ht`] on an instance, targeting `spec`; fresh vertices become
/// singleton lift blocks.
pub fn lift_instance(inst: &Instance, t: u32, spec: PatternSpec) -> Instance {
    let h = &inst.hypergraph;
    let n = h.n_vertices();
    let hypergraph = lift_ht(h, t);
    let mut families = inst.families.clone();
    if !families.is_empty() {
        families.resize(hypergraph.num_edges(), FamilySet::single(Family::Lift));
    }
    let mut blocks = inst.blocks.clone();
    if !blocks.is_empty() {
        blocks.extend((n + 1..=n + t).map(|x| Block {
            role: BlockRole::Lift,
            members: vec![x],
        }));
    }
    let mut lineage = inst.lineage.clone();
    lineage.push(lift_step(t));
    Instance {
        hypergraph,
        blocks,
        source: inst.source.clone(),
        spec,
        lineage,
        families,
    }
}

/// Adds one vertex contained in every edge.
pub fn apex_augment(h: &Hypergraph) -> Hypergraph {
    let x = h.n_vertices() + 1;
    let edges = h
        .edges()
        .iter()
        .map(|e| {
            let mut e = e.clone();
            e.push(x);
            e
        })
        .collect();
    Hypergraph::new(x, edges).expect("apex keeps edges distinct")
}

/// [`apex_augment`] on an instance. The target stays ABAB.
pub fn apex_instance(inst: &Instance) -> Instance {
    let hypergraph = apex_augment(&inst.hypergraph);
    let x = hypergraph.n_vertices();
    let families = inst
        .families
        .iter()
        .map(|f| {
            let mut f = *f;
            f.insert(Family::Apex);
            f
        })
        .collect();
    let mut blocks = inst.blocks.clone();
    if !blocks.is_empty() {
        blocks.push(Block {
            role: BlockRole::Apex,
            members: vec![x],
        });
    }
    let mut lineage = inst.lineage.clone();
    lineage.push(STEP_APEX.to_string());
    Instance {
        hypergraph,
        blocks,
        source: inst.source.clone(),
        spec: PatternSpec::ABAB,
        lineage,
        families,
    }
}

/// Instance for an arbitrary hypergraph, augmented by an apex vertex.
pub fn pseudodisk_instance(h: &Hypergraph) -> Instance {
    apex_instance(&Instance {
        hypergraph: h.clone(),
        blocks: Vec::new(),
        source: None,
        spec: PatternSpec::ABAB,
        lineage: Vec::new(),
        families: Vec::new(),
    })
}

/// Full reduction chain: `g` is properly 2-colorable iff the result admits a
/// `spec`-free ordering.
pub fn compile(g: &SourceHypergraph3, spec: PatternSpec) -> Result<Instance, ReductionError> {
    if spec.k() < 2 {
        return Err(ReductionError::Unsupported(spec));
    }
    if !spec.trailing_a() {
        let mut inst = reduce_2col_to_abab(g)?;
        for j in 2..spec.k() {
            inst = lift_instance(&inst, 2 * j + 2, PatternSpec::new(j + 1, false)?);
        }
        return Ok(inst);
    }
    let padded = pad_source(g, 6);
    let mut base = reduce_2col_to_abab(&padded)?;
    if padded.n() != g.n() {
        base.lineage
            .insert(0, format!("pad(n={}→{})", g.n(), padded.n()));
    }
    let mut inst = reduce_abab_to_ababa(&base)?;
    for j in 3..=spec.k() {
        inst = lift_instance(&inst, 2 * j + 1, PatternSpec::new(j, true)?);
    }
    Ok(inst)
}

fn require_source(inst: &Instance) -> Result<&SourceHypergraph3, ReductionError> {
    match &inst.source {
        Some(s) if !inst.blocks.is_empty() => Ok(s),
        _ => Err(ReductionError::MissingProvenance),
    }
}

/// Extends a coloring of the unpadded source with red for padding vertices.
fn complete_coloring(g: &SourceHypergraph3, c: &Coloring) -> Result<Coloring, ReductionError> {
    let n = g.n() as usize;
    let short = || ReductionError::ColoringLength {
        got: c.len(),
        expected: n,
    };
    if c.len() > n {
        return Err(short());
    }
    if c.len() < n {
        let covered = g
            .triples()
            .iter()
            .flatten()
            .all(|&v| (v as usize) <= c.len());
        if !covered {
            return Err(short());
        }
    }
    let mut colors = c.colors().to_vec();
    colors.resize(n, Color::Red);
    Ok(Coloring::new(colors))
}

/// Builds the free ordering certified by a proper coloring: blocks in
/// construction order, R-blocks oriented by color, S-blocks by the lookup
/// table, apex and lift vertices appended.
pub fn ordering_from_coloring(
    inst: &Instance,
    c: &Coloring,
) -> Result<VertexOrder, ReductionError> {
    let g = require_source(inst)?;
    let c = complete_coloring(g, c)?;
    if let Some(j) = c.monochromatic_triple(g) {
        return Err(ReductionError::MonochromaticTriple(j + 1));
    }
    let mut seq = Vec::with_capacity(inst.hypergraph.n_vertices() as usize);
    for block in &inst.blocks {
        match block.role {
            BlockRole::R(i) => {
                let (a, b) = (block.members[0], block.members[1]);
                match c.get(i) {
                    Color::Red => seq.extend([a, b]),
                    Color::Blue => seq.extend([b, a]),
                }
            }
            BlockRole::S(j) => {
                let triple = g.triples()[j as usize - 1];
                let key = triple.map(|v| c.get(v));
                let (_, offsets) = S_BLOCK_ORDERS
                    .iter()
                    .find(|(colors, _)| *colors == key)
                    .expect("proper colorings have a table row");
                let t = block.members[0];
                seq.extend(offsets.iter().map(|o| t + o));
            }
            BlockRole::Apex | BlockRole::Lift => seq.extend(block.members.iter().copied()),
        }
    }
    Ok(VertexOrder::for_hypergraph(seq, &inst.hypergraph)?)
}

/// Reads the coloring certified by a free ordering. Lineage steps are undone
/// in reverse (lift and apex vertices dropped, the odd construction's extra
/// vertex moved to the end first), then the base ordering is normalized to
/// block structure and each R-block read off.
pub fn coloring_from_ordering(
    inst: &Instance,
    order: &VertexOrder,
) -> Result<Coloring, ReductionError> {
    let g = require_source(inst)?;
    VertexOrder::for_hypergraph(order.as_slice().to_vec(), &inst.hypergraph)?;
    let mut seq = order.as_slice().to_vec();
    let mut n = inst.hypergraph.n_vertices();
    for step in inst.lineage.iter().rev() {
        if step == STEP_BASE {
            break;
        } else if let Some(t) = step
            .strip_prefix("lift(t=")
            .and_then(|s| s.strip_suffix(')'))
        {
            let t: u32 = t
                .parse()
                .map_err(|_| ReductionError::UnknownStep(step.clone()))?;
            n -= t;
            seq.retain(|&v| v <= n);
        } else if step == STEP_ODD {
            if seq.first() == Some(&n) {
                seq.reverse();
            }
            if seq.last() != Some(&n) {
                return Err(ReductionError::InconsistentCertificate(format!(
                    "vertex {n} is not at either end of the ordering"
                )));
            }
            seq.pop();
            n -= 1;
        } else if step == STEP_APEX {
            seq.retain(|&v| v != n);
            n -= 1;
        } else {
            return Err(ReductionError::UnknownStep(step.clone()));
        }
    }

    let base_blocks: Vec<Vec<Vertex>> = inst
        .blocks
        .iter()
        .filter(|b| matches!(b.role, BlockRole::R(_) | BlockRole::S(_)))
        .map(|b| b.members.clone())
        .collect();
    let base = VertexOrder::new(seq)?;
    let normalized = gadgets::normalize_to_structure(&base, &BlockList::new(base_blocks)?)?;
    let pos = normalized.positions();
    let before = |a: Vertex, b: Vertex| pos[a as usize] < pos[b as usize];

    let colors: Vec<Color> = (1..=g.n())
        .map(|i| {
            if before(2 * i - 1, 2 * i) {
                Color::Red
            } else {
                Color::Blue
            }
        })
        .collect();
    let coloring = Coloring::new(colors);

    for (j, triple) in (1..).zip(g.triples()) {
        let t = s_block_start(g.n(), j);
        for (rank, &v) in (1..=3).zip(triple) {
            let p = t + pair_offset(rank);
            let encoded = if before(p, p + 1) {
                Color::Red
            } else {
                Color::Blue
            };
            if encoded != coloring.get(v) {
                return Err(ReductionError::InconsistentCertificate(format!(
                    "S-block {j} encodes vertex {v} as {}, R-block {v} as {}",
                    encoded.name(),
                    coloring.get(v).name()
                )));
            }
        }
    }
    if let Some(j) = coloring.monochromatic_triple(g) {
        return Err(ReductionError::InconsistentCertificate(format!(
            "triple {} is monochromatic",
            j + 1
        )));
    }
    Ok(coloring)
}

/// True iff every block strictly between the first and last block meeting
/// `edge` is contained in it.
pub fn fills_between_blocks(edge: &[Vertex], blocks: &[Vec<Vertex>]) -> bool {
    let meets = |b: &Vec<Vertex>| b.iter().any(|v| edge.binary_search(v).is_ok());
    let first = blocks.iter().position(meets);
    let last = blocks.iter().rposition(meets);
    match (first, last) {
        (Some(a), Some(z)) if z > a => blocks[a + 1..z]
            .iter()
            .all(|b| b.iter().all(|v| edge.binary_search(v).is_ok())),
        _ => true,
    }
}
