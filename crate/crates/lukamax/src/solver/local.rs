//! WalkSAT-style local search; yields an upper bound on the cost.
//!
//! RNG consumption is pinned: n initial `uniform(d)` level draws (variable 1
//! first), then per flip one draw to pick a falsified clause and one to pick
//! a variable inside it. The repair value is chosen deterministically as the
//! level minimizing total cost, lowest level on ties.

use std::time::Instant;

use crate::formula::LClausalForm;
use crate::rng::SplitMix64;
use crate::truth::FiniteDomain;

use super::{ScaledFormula, SolveResult};

/// Core loop over integer levels; returns (best cost, best levels, flips).
pub(crate) fn search_levels(
    scaled: &ScaledFormula,
    d: u64,
    seed: u64,
    max_flips: u64,
) -> (usize, Vec<i64>, u64) {
    let mut rng = SplitMix64::new(seed);
    let mut levels: Vec<i64> = (0..scaled.n).map(|_| rng.uniform(d) as i64).collect();
    let mut cost = scaled.cost(&levels);
    let mut best_cost = cost;
    let mut best_levels = levels.clone();

    let mut falsified: Vec<usize> = Vec::with_capacity(scaled.clauses.len());
    let mut flips = 0u64;
    while flips < max_flips && cost > 0 {
        falsified.clear();
        falsified.extend(
            scaled
                .clauses
                .iter()
                .enumerate()
                .filter(|(_, c)| !scaled.is_clause_satisfied(c, &levels))
                .map(|(i, _)| i),
        );
        let clause = &scaled.clauses[falsified[rng.uniform(falsified.len() as u64) as usize]];
        let var = clause.vars[rng.uniform(clause.vars.len() as u64) as usize];

        let mut chosen = 0i64;
        let mut chosen_cost = usize::MAX;
        for level in 0..d as i64 {
            levels[var] = level;
            let candidate = scaled.cost(&levels);
            if candidate < chosen_cost {
                chosen_cost = candidate;
                chosen = level;
            }
        }
        levels[var] = chosen;
        cost = chosen_cost;
        flips += 1;

        if cost < best_cost {
            best_cost = cost;
            best_levels.copy_from_slice(&levels);
        }
    }

    (best_cost, best_levels, flips)
}

pub fn local_search(
    form: &LClausalForm,
    dom: FiniteDomain,
    seed: u64,
    max_flips: u64,
) -> SolveResult {
    let start = Instant::now();
    let scaled = ScaledFormula::new(form, dom);
    let (cost, levels, flips) = search_levels(&scaled, dom.size() as u64, seed, max_flips);
    SolveResult {
        cost,
        witness: scaled.to_assignment(&levels, dom),
        nodes_expanded: flips,
        time: start.elapsed(),
    }
}
