//! Exact search for a pattern-free ordering.
//!
//! Vertices are placed position by position. For every edge pair with a
//! non-empty symmetric difference the search keeps the block count of the
//! placed prefix, the symbol of the last block, and how many vertices of
//! each side are still unplaced. Block counts never decrease as the prefix
//! grows, and a pair whose last block is `a` gains at least one more block if
//! some `b` vertex is unplaced, so a prefix is abandoned once
//! `count + [opposite side unplaced] >= L`.
//!
//! Once a pair reaches `L - 2` blocks ending in `a` while both sides still
//! have unplaced vertices, every unplaced `a` vertex must precede every
//! unplaced `b` vertex. These precedences are kept per vertex; a candidate
//! with an unplaced required predecessor is skipped, and two vertices
//! required before each other end the prefix.
//!
//! Symmetry: for even patterns vertex 1 is placed first and orderings whose
//! last vertex is smaller than the second are skipped (cyclic shifts and
//! reversal); for odd patterns the first vertex must be smaller than the last
//! (reversal only).

use alloc::vec;
use alloc::vec::Vec;
use core::time::Duration;

use crate::bitset::BitSet;
use crate::model::{Hypergraph, PatternSpec, Vertex, VertexOrder};
use crate::pattern;

/// Default cap on `N` for exhaustive counting.
pub const DEFAULT_ENUMERATION_CAP: u32 = 10;

const CLOCK_POLL_INTERVAL: u64 = 16;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolverError {
    #[error("N={n} exceeds the enumeration cap of {cap} ({n}! orderings)")]
    TooLarge { n: u32, cap: u32 },
}

/// Search limits; `None` means unlimited.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub time_limit: Option<Duration>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }

    pub fn nodes(max_nodes: u64) -> Self {
        Budget {
            max_nodes: Some(max_nodes),
            time_limit: None,
        }
    }
}

/// Elapsed-time source for time budgets.
pub trait Clock {
    fn elapsed(&self) -> Duration;
}

/// Clock that never advances; time limits are ignored.
pub struct NoClock;

impl Clock for NoClock {
    fn elapsed(&self) -> Duration {
        Duration::ZERO
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    Sat,
    Unsat,
    Timeout,
}

impl SolveStatus {
    pub fn name(self) -> &'static str {
        match self {
            SolveStatus::Sat => "SAT",
            SolveStatus::Unsat => "UNSAT",
            SolveStatus::Timeout => "TIMEOUT",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOutcome {
    pub status: SolveStatus,
    /// Present iff `status` is `Sat`.
    pub ordering: Option<VertexOrder>,
    pub nodes_explored: u64,
    pub elapsed: Duration,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    /// Stop at the first free ordering, with symmetry breaking.
    Find { cyclic: bool },
    /// Visit every free ordering.
    Count,
}

enum Flow {
    Continue,
    Found,
    Stop,
}

struct Undo {
    pair: u32,
    side: u8,
    count: u16,
    last: u8,
}

struct Search<'a, C: ?Sized> {
    n: usize,
    m: usize,
    limit: u16,
    mode: Mode,
    /// Edges containing each vertex, and edges avoiding it.
    incident: Vec<Vec<u32>>,
    avoiding: Vec<Vec<u32>>,
    relevant: BitSet,
    count: Vec<u16>,
    /// 0 = no block yet, 1 = lower-indexed edge, 2 = higher-indexed edge
    last: Vec<u8>,
    remaining: Vec<[u32; 2]>,
    undo: Vec<Undo>,
    /// Words per vertex set.
    words: usize,
    edge_bits: Vec<u64>,
    unplaced: Vec<u64>,
    /// Vertices required to come before each vertex.
    pred: Vec<u64>,
    pred_undo: Vec<(u32, u64)>,
    activated: Vec<(u32, u32)>,
    placed: Vec<bool>,
    prefix: Vec<Vertex>,
    nodes: u64,
    found: u64,
    budget: Budget,
    clock: &'a C,
}

impl<'a, C: Clock + ?Sized> Search<'a, C> {
    fn new(h: &Hypergraph, spec: PatternSpec, mode: Mode, budget: Budget, clock: &'a C) -> Self {
        let n = h.n_vertices() as usize;
        let m = h.num_edges();
        let mut member = vec![BitSet::new(m); n + 1];
        let mut incident = vec![Vec::new(); n + 1];
        for (i, e) in h.edges().iter().enumerate() {
            for &v in e {
                member[v as usize].insert(i);
                incident[v as usize].push(i as u32);
            }
        }
        let avoiding = (0..=n)
            .map(|v| {
                (0..m as u32)
                    .filter(|&f| !member[v].contains(f as usize))
                    .collect()
            })
            .collect();

        let words = (n + 1).div_ceil(64);
        let mut edge_bits = vec![0u64; m * words];
        for (i, e) in h.edges().iter().enumerate() {
            for &v in e {
                edge_bits[i * words + v as usize / 64] |= 1 << (v % 64);
            }
        }
        let mut unplaced = vec![0u64; words];
        for v in 1..=n {
            unplaced[v / 64] |= 1 << (v % 64);
        }
        let sizes: Vec<usize> = h.edges().iter().map(Vec::len).collect();
        let mut remaining = vec![[0u32; 2]; m * m];
        let mut relevant = BitSet::new(m * m);
        for i in 0..m {
            for j in i + 1..m {
                let common = count_common(h.edge(i), h.edge(j));
                let only_i = (sizes[i] - common) as u32;
                let only_j = (sizes[j] - common) as u32;
                if only_i > 0 && only_j > 0 {
                    remaining[i * m + j] = [only_i, only_j];
                    relevant.insert(i * m + j);
                }
            }
        }
        Search {
            n,
            m,
            limit: spec.len().min(u16::MAX as usize) as u16,
            mode,
            incident,
            avoiding,
            relevant,
            count: vec![0; m * m],
            last: vec![0; m * m],
            remaining,
            undo: Vec::new(),
            words,
            edge_bits,
            unplaced,
            pred: vec![0; (n + 1) * words],
            pred_undo: Vec::new(),
            activated: Vec::new(),
            placed: vec![false; n + 1],
            prefix: Vec::with_capacity(n),
            nodes: 0,
            found: 0,
            budget,
            clock,
        }
    }

    /// Pairs that already force a pattern before any vertex is placed.
    fn root_infeasible(&self) -> bool {
        self.relevant.iter().any(|idx| {
            let [a, b] = self.remaining[idx];
            u16::from(a > 0) + u16::from(b > 0) >= self.limit
        })
    }

    /// Places `v`, returning false (state still recorded in the undo log)
    /// when some pair is certain to reach the pattern length.
    fn place(&mut self, v: Vertex) -> bool {
        let vi = v as usize;
        self.placed[vi] = true;
        self.prefix.push(v);
        self.unplaced[vi / 64] &= !(1 << (vi % 64));
        self.activated.clear();
        let m = self.m;
        let limit = self.limit;
        for &e in &self.incident[vi] {
            for &f in &self.avoiding[vi] {
                let (lo, hi, side) = if e < f { (e, f, 0u8) } else { (f, e, 1u8) };
                let idx = lo as usize * m + hi as usize;
                if !self.relevant.contains(idx) {
                    continue;
                }
                let sym = side + 1;
                self.undo.push(Undo {
                    pair: idx as u32,
                    side,
                    count: self.count[idx],
                    last: self.last[idx],
                });
                self.remaining[idx][side as usize] -= 1;
                if self.last[idx] != sym {
                    self.last[idx] = sym;
                    self.count[idx] += 1;
                }
                let other = self.remaining[idx][1 - side as usize];
                if self.count[idx] + u16::from(other > 0) >= limit {
                    return false;
                }
                if self.count[idx] + 2 == limit
                    && self.count[idx] > 0
                    && other > 0
                    && self.remaining[idx][side as usize] > 0
                {
                    let (s, t) = if side == 0 { (lo, hi) } else { (hi, lo) };
                    self.activated.push((s, t));
                }
            }
        }
        for k in 0..self.activated.len() {
            let (s, t) = self.activated[k];
            if !self.add_precedence(s as usize, t as usize) {
                return false;
            }
        }
        true
    }

    /// Unplaced vertices of `e - f`.
    fn side_set(&self, e: usize, f: usize, out: &mut Vec<u64>) {
        let w = self.words;
        out.clear();
        out.extend(
            (0..w)
                .map(|i| self.edge_bits[e * w + i] & !self.edge_bits[f * w + i] & self.unplaced[i]),
        );
    }

    /// Requires unplaced `s - t` before unplaced `t - s`; false on a cycle.
    fn add_precedence(&mut self, s: usize, t: usize) -> bool {
        let w = self.words;
        let mut before = Vec::with_capacity(w);
        let mut after = Vec::with_capacity(w);
        self.side_set(s, t, &mut before);
        self.side_set(t, s, &mut after);
        for u in bits(&before) {
            let p = &self.pred[u * w..(u + 1) * w];
            if p.iter().zip(&after).any(|(a, b)| a & b != 0) {
                return false;
            }
        }
        for x in bits(&after) {
            for (i, &b) in before.iter().enumerate() {
                let slot = x * w + i;
                let old = self.pred[slot];
                let new = old | b;
                if new != old {
                    self.pred_undo.push((slot as u32, old));
                    self.pred[slot] = new;
                }
            }
        }
        true
    }

    fn has_unplaced_pred(&self, v: usize) -> bool {
        let w = self.words;
        self.pred[v * w..(v + 1) * w]
            .iter()
            .zip(&self.unplaced)
            .any(|(a, b)| a & b != 0)
    }

    fn unplace(&mut self, (mark, pred_mark): (usize, usize)) {
        while self.pred_undo.len() > pred_mark {
            let (slot, old) = self.pred_undo.pop().unwrap();
            self.pred[slot as usize] = old;
        }
        while self.undo.len() > mark {
            let u = self.undo.pop().unwrap();
            let idx = u.pair as usize;
            self.remaining[idx][u.side as usize] += 1;
            self.count[idx] = u.count;
            self.last[idx] = u.last;
        }
        let v = self.prefix.pop().unwrap();
        self.placed[v as usize] = false;
        self.unplaced[v as usize / 64] |= 1 << (v % 64);
    }

    fn out_of_budget(&self) -> bool {
        if let Some(max) = self.budget.max_nodes {
            if self.nodes >= max {
                return true;
            }
        }
        if let Some(limit) = self.budget.time_limit {
            if self.nodes.is_multiple_of(CLOCK_POLL_INTERVAL) && self.clock.elapsed() >= limit {
                return true;
            }
        }
        false
    }

    fn max_unplaced(&self) -> Vertex {
        (1..=self.n as Vertex)
            .rev()
            .find(|&v| !self.placed[v as usize])
            .unwrap_or(0)
    }

    /// Symmetry cut: the eventual last vertex must exceed a fixed anchor.
    fn symmetry_blocks(&self) -> bool {
        let anchor = match self.mode {
            Mode::Count => return false,
            Mode::Find { cyclic: true } if self.prefix.len() >= 2 && self.n >= 3 => self.prefix[1],
            Mode::Find { cyclic: false } if !self.prefix.is_empty() && self.n >= 2 => {
                self.prefix[0]
            }
            Mode::Find { .. } => return false,
        };
        self.prefix.len() < self.n && self.max_unplaced() < anchor
    }

    fn dfs(&mut self) -> Flow {
        if self.prefix.len() == self.n {
            self.found += 1;
            return match self.mode {
                Mode::Count => Flow::Continue,
                Mode::Find { .. } => Flow::Found,
            };
        }
        if self.symmetry_blocks() {
            return Flow::Continue;
        }
        let first_fixed =
            matches!(self.mode, Mode::Find { cyclic: true }) && self.prefix.is_empty();
        for v in 1..=self.n as Vertex {
            if self.placed[v as usize] {
                continue;
            }
            if first_fixed && v != 1 {
                break;
            }
            if self.has_unplaced_pred(v as usize) {
                continue;
            }
            if self.out_of_budget() {
                return Flow::Stop;
            }
            self.nodes += 1;
            let mark = (self.undo.len(), self.pred_undo.len());
            let flow = if self.place(v) {
                self.dfs()
            } else {
                Flow::Continue
            };
            match flow {
                Flow::Found => return Flow::Found,
                Flow::Stop => {
                    self.unplace(mark);
                    return Flow::Stop;
                }
                Flow::Continue => self.unplace(mark),
            }
        }
        Flow::Continue
    }
}

fn bits(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(wi, &w)| {
        let mut w = w;
        core::iter::from_fn(move || {
            (w != 0).then(|| {
                let tz = w.trailing_zeros() as usize;
                w &= w - 1;
                wi * 64 + tz
            })
        })
    })
}

fn count_common(a: &[Vertex], b: &[Vertex]) -> usize {
    let (mut i, mut j, mut c) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => i += 1,
            core::cmp::Ordering::Greater => j += 1,
            core::cmp::Ordering::Equal => {
                c += 1;
                i += 1;
                j += 1;
            }
        }
    }
    c
}

/// Decides whether `h` admits a `spec`-free ordering. Time limits need a
/// real clock; see [`solve_with_clock`].
pub fn solve(h: &Hypergraph, spec: PatternSpec, budget: Budget) -> SolveOutcome {
    solve_with_clock(h, spec, budget, &NoClock)
}

pub fn solve_with_clock<C: Clock + ?Sized>(
    h: &Hypergraph,
    spec: PatternSpec,
    budget: Budget,
    clock: &C,
) -> SolveOutcome {
    let mode = Mode::Find {
        cyclic: spec.is_cyclic_invariant(),
    };
    let mut search = Search::new(h, spec, mode, budget, clock);
    let status = if search.root_infeasible() {
        SolveStatus::Unsat
    } else {
        match search.dfs() {
            Flow::Found => SolveStatus::Sat,
            Flow::Continue => SolveStatus::Unsat,
            Flow::Stop => SolveStatus::Timeout,
        }
    };
    let ordering = (status == SolveStatus::Sat).then(|| {
        let o = VertexOrder::from_vec_unchecked(search.prefix.clone());
        assert!(
            pattern::is_free_ordering(h, &o, spec).is_free(),
            "solver produced an ordering that fails re-verification"
        );
        o
    });
    SolveOutcome {
        status,
        ordering,
        nodes_explored: search.nodes,
        elapsed: clock.elapsed(),
    }
}

/// Stabbed pseudodisk realizability is equivalent to ABAB-freeness.
pub fn decide_stabbed_pseudodisk(h: &Hypergraph, budget: Budget) -> SolveOutcome {
    solve(h, PatternSpec::ABAB, budget)
}

/// Exact number of `spec`-free orderings among all `N!`, for
/// `N <= DEFAULT_ENUMERATION_CAP`.
pub fn count_free_orderings(h: &Hypergraph, spec: PatternSpec) -> Result<u64, SolverError> {
    count_free_orderings_capped(h, spec, DEFAULT_ENUMERATION_CAP)
}

pub fn count_free_orderings_capped(
    h: &Hypergraph,
    spec: PatternSpec,
    cap: u32,
) -> Result<u64, SolverError> {
    let n = h.n_vertices();
    if n > cap {
        return Err(SolverError::TooLarge { n, cap });
    }
    let mut search = Search::new(h, spec, Mode::Count, Budget::unlimited(), &NoClock);
    if search.root_infeasible() {
        return Ok(0);
    }
    search.dfs();
    Ok(search.found)
}
