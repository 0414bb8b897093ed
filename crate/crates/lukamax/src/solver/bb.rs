//! Depth-first branch and bound, the exact workhorse solver.
//!
//! The search order is pinned so node counts are reproducible: variables in
//! descending occurrence count (lower index first on ties); values 0, then 1,
//! then the interior levels in ascending order. At every node each clause is
//! bounded by its optimistic completion (unassigned plain literals count as
//! 1, unassigned literals inside a negated sum count as 0 toward the inner
//! sum); a clause whose bound falls below 1 is falsified in the whole
//! subtree, and the subtree is pruned as soon as the number of such clauses
//! reaches the incumbent. The incumbent starts from a local-search run.

use std::time::Instant;

use crate::formula::LClausalForm;
use crate::truth::FiniteDomain;

use super::local::search_levels;
use super::scaled::{ScaledFormula, ScaledTerm};
use super::SolveResult;

/// Tuning knobs for [`branch_and_bound`]; the defaults are pinned so that
/// runs are reproducible.
#[derive(Debug, Clone)]
pub struct BnbOptions {
    /// Seed of the incumbent local-search run.
    pub incumbent_seed: u64,
    /// Flip budget of the incumbent run; `None` means `1000 + 50·(n + m)`.
    pub incumbent_flips: Option<u64>,
}

impl Default for BnbOptions {
    fn default() -> BnbOptions {
        BnbOptions { incumbent_seed: 0, incumbent_flips: None }
    }
}

#[derive(Clone, Copy)]
enum Occurrence {
    /// A plain-literal term of clause `clause`.
    Plain { clause: u32, negated: bool },
    /// One literal inside negated-sum term `sum` (flat index) of `clause`.
    Sum { clause: u32, sum: u32, negated: bool },
}

struct Searcher {
    scale: i64,
    order: Vec<usize>,
    value_order: Vec<i64>,
    occurrences: Vec<Vec<Occurrence>>,
    levels: Vec<i64>,
    /// Per negated-sum term: sum of the assigned inner literal values.
    sum_assigned: Vec<i64>,
    /// Per clause: sum of optimistic term values (unclamped).
    totals: Vec<i64>,
    /// Clauses whose optimistic value is below 1.
    dead: usize,
    incumbent: usize,
    best_levels: Vec<i64>,
    nodes: u64,
}

impl Searcher {
    fn new(scaled: &ScaledFormula) -> Searcher {
        let mut occurrences: Vec<Vec<Occurrence>> = vec![Vec::new(); scaled.n];
        let mut totals = Vec::with_capacity(scaled.clauses.len());
        let mut sum_count = 0u32;
        for (ci, clause) in scaled.clauses.iter().enumerate() {
            for term in &clause.terms {
                match term {
                    ScaledTerm::Plain(l) => occurrences[l.var].push(Occurrence::Plain {
                        clause: ci as u32,
                        negated: l.negated,
                    }),
                    ScaledTerm::NegatedSum(lits) => {
                        for l in lits {
                            occurrences[l.var].push(Occurrence::Sum {
                                clause: ci as u32,
                                sum: sum_count,
                                negated: l.negated,
                            });
                        }
                        sum_count += 1;
                    }
                }
            }
            totals.push(clause.terms.len() as i64 * scaled.scale);
        }

        let counts = scaled.occurrence_counts();
        let mut order: Vec<usize> = (0..scaled.n).collect();
        order.sort_by(|&a, &b| counts[b].cmp(&counts[a]).then(a.cmp(&b)));

        let mut value_order = vec![0, scaled.scale];
        value_order.extend(1..scaled.scale);

        Searcher {
            scale: scaled.scale,
            order,
            value_order,
            occurrences,
            levels: vec![-1; scaled.n],
            sum_assigned: vec![0; sum_count as usize],
            totals,
            dead: 0,
            incumbent: usize::MAX,
            best_levels: Vec::new(),
            nodes: 0,
        }
    }

    #[inline]
    fn apply_delta(&mut self, clause: u32, delta: i64) {
        if delta == 0 {
            return;
        }
        let total = &mut self.totals[clause as usize];
        let was_dead = *total < self.scale;
        *total += delta;
        let is_dead = *total < self.scale;
        match (was_dead, is_dead) {
            (false, true) => self.dead += 1,
            (true, false) => self.dead -= 1,
            _ => {}
        }
    }

    fn assign(&mut self, var: usize, level: i64) {
        self.levels[var] = level;
        let scale = self.scale;
        for i in 0..self.occurrences[var].len() {
            match self.occurrences[var][i] {
                Occurrence::Plain { clause, negated } => {
                    let value = if negated { scale - level } else { level };
                    self.apply_delta(clause, value - scale);
                }
                Occurrence::Sum { clause, sum, negated } => {
                    let value = if negated { scale - level } else { level };
                    let old = (scale - self.sum_assigned[sum as usize]).max(0);
                    self.sum_assigned[sum as usize] += value;
                    let new = (scale - self.sum_assigned[sum as usize]).max(0);
                    self.apply_delta(clause, new - old);
                }
            }
        }
    }

    fn unassign(&mut self, var: usize, level: i64) {
        let scale = self.scale;
        for i in 0..self.occurrences[var].len() {
            match self.occurrences[var][i] {
                Occurrence::Plain { clause, negated } => {
                    let value = if negated { scale - level } else { level };
                    self.apply_delta(clause, scale - value);
                }
                Occurrence::Sum { clause, sum, negated } => {
                    let value = if negated { scale - level } else { level };
                    let old = (scale - self.sum_assigned[sum as usize]).max(0);
                    self.sum_assigned[sum as usize] -= value;
                    let new = (scale - self.sum_assigned[sum as usize]).max(0);
                    self.apply_delta(clause, new - old);
                }
            }
        }
        self.levels[var] = -1;
    }

    fn dfs(&mut self, depth: usize) {
        if self.dead >= self.incumbent {
            return;
        }
        if depth == self.order.len() {
            // Fully assigned: the optimistic values are exact, so `dead` is
            // the true cost of this leaf and it beats the incumbent.
            self.incumbent = self.dead;
            self.best_levels.clear();
            self.best_levels.extend_from_slice(&self.levels);
            return;
        }
        let var = self.order[depth];
        for i in 0..self.value_order.len() {
            let level = self.value_order[i];
            self.nodes += 1;
            self.assign(var, level);
            self.dfs(depth + 1);
            self.unassign(var, level);
        }
    }
}

/// Exact minimum cost by branch and bound.
pub fn branch_and_bound(
    form: &LClausalForm,
    dom: FiniteDomain,
    opts: &BnbOptions,
) -> SolveResult {
    let start = Instant::now();
    let scaled = ScaledFormula::new(form, dom);
    let flips = opts
        .incumbent_flips
        .unwrap_or(1000 + 50 * (scaled.n as u64 + scaled.clauses.len() as u64));
    let (ls_cost, ls_levels, _) =
        search_levels(&scaled, dom.size() as u64, opts.incumbent_seed, flips);

    let mut searcher = Searcher::new(&scaled);
    searcher.incumbent = ls_cost;
    searcher.best_levels = ls_levels;
    searcher.dfs(0);

    SolveResult {
        cost: searcher.incumbent,
        witness: scaled.to_assignment(&searcher.best_levels, dom),
        nodes_expanded: searcher.nodes,
        time: start.elapsed(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{LClause, Literal, Term};
    use crate::generator::{generate, GeneratorParams};
    use crate::solver::brute_force;

    fn dom3() -> FiniteDomain {
        FiniteDomain::new(3).unwrap()
    }

    #[test]
    fn agrees_with_brute_force_on_small_instances() {
        for seed in 0..60 {
            let params = GeneratorParams {
                n: 2 + (seed % 6) as u32,
                m: 4 + (seed % 13) as u32,
                k: 1 + (seed % 2) as u32 + 1,
                p: [1, 2, 5][(seed % 3) as usize],
                d: 3,
                seed,
            };
            let params = GeneratorParams { k: params.k.min(params.n), ..params };
            let form = generate(&params).unwrap();
            let oracle = brute_force(&form, dom3()).unwrap();
            let bb = branch_and_bound(&form, dom3(), &BnbOptions::default());
            assert_eq!(bb.cost, oracle.cost, "seed {seed}");
            assert_eq!(form.cost(&bb.witness).unwrap(), bb.cost, "seed {seed}");
        }
    }

    #[test]
    fn satisfiable_witness_satisfies_every_clause() {
        let clause = LClause::new(vec![
            Term::Literal(Literal::positive(1).unwrap()),
            Term::Literal(Literal::negative(2).unwrap()),
        ])
        .unwrap();
        let form = LClausalForm::new(2, vec![clause]).unwrap();
        let result = branch_and_bound(&form, dom3(), &BnbOptions::default());
        assert_eq!(result.cost, 0);
        assert!(form.is_satisfied(&result.witness).unwrap());
    }

    #[test]
    fn node_count_is_reproducible() {
        let params = GeneratorParams { n: 7, m: 18, k: 3, p: 2, d: 3, seed: 99 };
        let form = generate(&params).unwrap();
        let a = branch_and_bound(&form, dom3(), &BnbOptions::default());
        let b = branch_and_bound(&form, dom3(), &BnbOptions::default());
        assert_eq!(a.cost, b.cost);
        assert_eq!(a.nodes_expanded, b.nodes_expanded);
        assert_eq!(a.witness, b.witness);
    }

    #[test]
    fn handles_boolean_and_wider_domains() {
        let params = GeneratorParams { n: 5, m: 12, k: 3, p: 1, d: 3, seed: 11 };
        let form = generate(&params).unwrap();
        for d in [2u32, 3, 5] {
            let dom = FiniteDomain::new(d).unwrap();
            let oracle = brute_force(&form, dom).unwrap();
            let bb = branch_and_bound(&form, dom, &BnbOptions::default());
            assert_eq!(bb.cost, oracle.cost, "d={d}");
        }
    }

    #[test]
    fn empty_form_solves_trivially() {
        let form = LClausalForm::empty(0);
        let result = branch_and_bound(&form, dom3(), &BnbOptions::default());
        assert_eq!(result.cost, 0);
        assert!(result.witness.is_empty());
    }
}
