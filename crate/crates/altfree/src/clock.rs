use std::time::{Duration, Instant};

use altfree_core::solver::{solve_with_clock, Clock};
use altfree_core::{Budget, Hypergraph, PatternSpec, SolveOutcome};

/// Wall clock started at construction.
pub struct StdClock(Instant);

impl StdClock {
    pub fn start() -> Self {
        StdClock(Instant::now())
    }
}

impl Clock for StdClock {
    fn elapsed(&self) -> Duration {
        self.0.elapsed()
    }
}

/// [`altfree_core::solver::solve`] with time limits honoured.
pub fn solve_timed(h: &Hypergraph, spec: PatternSpec, budget: Budget) -> SolveOutcome {
    solve_with_clock(h, spec, budget, &StdClock::start())
}
