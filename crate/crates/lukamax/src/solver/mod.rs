//! Exact and heuristic MaxSAT over finite d-valued domains.
//!
//! Four routes to the cost of a form: full enumeration ([`brute_force`], the
//! reference oracle), depth-first branch and bound ([`branch_and_bound`], the
//! workhorse), stochastic local search ([`local_search`], upper bounds only),
//! and minimization of blocking variables over the augmented form
//! ([`min_blocking_sum`]).

mod bb;
mod blocking;
mod brute;
mod local;
mod scaled;

use std::time::Duration;

use thiserror::Error;

use crate::formula::Assignment;

pub use bb::{branch_and_bound, BnbOptions};
pub use blocking::{blocking_transform, min_blocking_sum, min_blocking_sum_with_budget, BlockingForm};
pub use brute::{brute_force, brute_force_with_budget};
pub use local::local_search;

pub(crate) use scaled::ScaledFormula;

/// Default cap on enumerated assignments for the exhaustive methods.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("enumeration needs {required} assignments, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u64 },
}

/// Outcome of a solve: the cost, a witness achieving it, and search effort.
///
/// `nodes_expanded` counts assignments enumerated (brute force), assignments
/// made (branch and bound), or flips performed (local search).
#[derive(Debug, Clone)]
pub struct SolveResult {
    pub cost: usize,
    pub witness: Assignment,
    pub nodes_expanded: u64,
    pub time: Duration,
}
