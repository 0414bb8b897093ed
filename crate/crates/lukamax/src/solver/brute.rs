//! Exhaustive enumeration oracle.
//!
//! Walks every d-valued assignment in lexicographic order (variable n varies
//! fastest) and counts falsified clauses through the exact rational
//! evaluation path, independent of the scaled integer machinery the other
//! methods use.

use std::time::Instant;

use crate::formula::{Assignment, LClausalForm};
use crate::truth::FiniteDomain;

use super::{SolveError, SolveResult, DEFAULT_ENUMERATION_BUDGET};

pub(crate) fn check_budget(d: u32, n: u32, budget: u64) -> Result<(), SolveError> {
    let mut required: u128 = 1;
    for _ in 0..n {
        required = required.saturating_mul(d as u128);
        if required > budget as u128 {
            return Err(SolveError::BudgetExceeded { required, budget });
        }
    }
    Ok(())
}

/// Advances `levels` to the next assignment in lexicographic order.
/// Returns false once the space is exhausted.
pub(crate) fn next_assignment(levels: &mut [u32], d: u32) -> bool {
    for slot in levels.iter_mut().rev() {
        if *slot + 1 < d {
            *slot += 1;
            return true;
        }
        *slot = 0;
    }
    false
}

pub(crate) fn levels_to_assignment(levels: &[u32], dom: FiniteDomain) -> Assignment {
    Assignment::new(
        levels
            .iter()
            .map(|&l| dom.value(l).expect("enumerated levels lie in the domain"))
            .collect(),
    )
}

/// Exact minimum cost by full enumeration, with the default budget.
pub fn brute_force(form: &LClausalForm, dom: FiniteDomain) -> Result<SolveResult, SolveError> {
    brute_force_with_budget(form, dom, DEFAULT_ENUMERATION_BUDGET)
}

/// Exact minimum cost by full enumeration of up to `budget` assignments.
///
/// The witness is the first optimum in lexicographic assignment order.
pub fn brute_force_with_budget(
    form: &LClausalForm,
    dom: FiniteDomain,
    budget: u64,
) -> Result<SolveResult, SolveError> {
    let n = form.num_vars();
    check_budget(dom.size(), n, budget)?;
    let start = Instant::now();

    let mut levels = vec![0u32; n as usize];
    let mut best_cost = usize::MAX;
    let mut best: Option<Assignment> = None;
    let mut visited: u64 = 0;
    loop {
        visited += 1;
        let assignment = levels_to_assignment(&levels, dom);
        let cost = form
            .cost(&assignment)
            .expect("enumerated assignments are total");
        if cost < best_cost {
            best_cost = cost;
            best = Some(assignment);
            if cost == 0 {
                break;
            }
        }
        if !next_assignment(&mut levels, dom.size()) {
            break;
        }
    }

    Ok(SolveResult {
        cost: best_cost,
        witness: best.expect("at least one assignment is enumerated"),
        nodes_expanded: visited,
        time: start.elapsed(),
    })
}
