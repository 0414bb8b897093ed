//! Blocking-variable formulation of the MaxSAT problem.
//!
//! Clause i of the original form becomes `C_i ∨ b_i` with a fresh variable
//! b_i; minimizing Σ b_i subject to every augmented clause being satisfied
//! yields the cost. The join is the weak disjunction: with the strong one a
//! fractional b_i could lift a fractional clause to 1 and corrupt the count.
//! Blocking variables range over {0, 1} only; under the weak disjunction an
//! interior value can never satisfy a falsified clause, so nothing is lost.

use std::time::Instant;

use crate::formula::{Assignment, EvalError, LClausalForm};
use crate::truth::{FiniteDomain, TruthValue};

use super::brute::{check_budget, levels_to_assignment, next_assignment};
use super::{SolveError, SolveResult, DEFAULT_ENUMERATION_BUDGET};

/// The original form plus one blocking variable per clause.
///
/// Augmented variables are numbered 1..=n for the originals and n+1..=n+m
/// for the blocking variables, in clause order. Augmented clause i evaluates
/// to `max(value(C_i), b_i)`.
#[derive(Debug, Clone)]
pub struct BlockingForm {
    base: LClausalForm,
    blocking_vars: Vec<u32>,
}

impl BlockingForm {
    pub fn base(&self) -> &LClausalForm {
        &self.base
    }

    /// The fresh variable indices, one per clause, in clause order.
    pub fn blocking_vars(&self) -> &[u32] {
        &self.blocking_vars
    }

    pub fn num_total_vars(&self) -> u32 {
        self.base.num_vars() + self.blocking_vars.len() as u32
    }

    /// Value of augmented clause `index` under an assignment covering all
    /// n+m variables.
    pub fn augmented_clause_value(
        &self,
        index: usize,
        assignment: &Assignment,
    ) -> Result<TruthValue, EvalError> {
        let clause_value = self.base.clauses()[index].eval(assignment)?;
        let b = self.blocking_vars[index];
        let b_value = assignment.get(b).ok_or(EvalError::Unassigned(b))?;
        Ok(clause_value.weak_disj(b_value))
    }

    /// Whether every augmented clause is satisfied.
    pub fn is_augmented_satisfied(&self, assignment: &Assignment) -> Result<bool, EvalError> {
        for index in 0..self.base.num_clauses() {
            if !self.augmented_clause_value(index, assignment)?.is_one() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Extends an assignment of the original variables with the forced
    /// blocking values: b_i = 1 exactly when C_i is falsified.
    pub fn force_blocking(&self, original: &Assignment) -> Result<Assignment, EvalError> {
        let mut values: Vec<TruthValue> = original.values().to_vec();
        for clause in self.base.clauses() {
            let satisfied = clause.eval(original)?.is_one();
            values.push(if satisfied { TruthValue::ZERO } else { TruthValue::ONE });
        }
        Ok(Assignment::new(values))
    }

    /// Sum of the blocking values, as a count of ones.
    pub fn blocking_sum(&self, assignment: &Assignment) -> Result<usize, EvalError> {
        let mut sum = 0;
        for &b in &self.blocking_vars {
            let v = assignment.get(b).ok_or(EvalError::Unassigned(b))?;
            if v.is_one() {
                sum += 1;
            }
        }
        Ok(sum)
    }
}

/// Augments every clause with a fresh blocking variable.
pub fn blocking_transform(form: &LClausalForm) -> BlockingForm {
    let n = form.num_vars();
    let m = form.num_clauses() as u32;
    BlockingForm {
        base: form.clone(),
        blocking_vars: (n + 1..=n + m).collect(),
    }
}

/// Minimizes Σ b_i over all d-valued assignments of the original variables
/// with the default enumeration budget.
pub fn min_blocking_sum(bf: &BlockingForm, dom: FiniteDomain) -> Result<SolveResult, SolveError> {
    min_blocking_sum_with_budget(bf, dom, DEFAULT_ENUMERATION_BUDGET)
}

/// Minimizes Σ b_i subject to every augmented clause being satisfied.
///
/// Enumerates the original variables in lexicographic order; for each
/// assignment the blocking values are forced (b_i = 1 iff C_i is falsified,
/// which is the unique cheapest way to satisfy clause i), so the minimum over
/// the enumeration is the minimum over the full augmented space.
pub fn min_blocking_sum_with_budget(
    bf: &BlockingForm,
    dom: FiniteDomain,
    budget: u64,
) -> Result<SolveResult, SolveError> {
    let n = bf.base.num_vars();
    check_budget(dom.size(), n, budget)?;
    let start = Instant::now();

    let mut levels = vec![0u32; n as usize];
    let mut best_sum = usize::MAX;
    let mut best: Option<Assignment> = None;
    let mut visited = 0u64;
    loop {
        visited += 1;
        let original = levels_to_assignment(&levels, dom);
        let extended = bf
            .force_blocking(&original)
            .expect("enumerated assignments are total");
        debug_assert!(bf.is_augmented_satisfied(&extended).unwrap());
        let sum = bf
            .blocking_sum(&extended)
            .expect("forced blocking values are present");
        if sum < best_sum {
            best_sum = sum;
            best = Some(extended);
            if sum == 0 {
                break;
            }
        }
        if !next_assignment(&mut levels, dom.size()) {
            break;
        }
    }

    Ok(SolveResult {
        cost: best_sum,
        witness: best.expect("at least one assignment is enumerated"),
        nodes_expanded: visited,
        time: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{LClause, Literal, Term};
    use crate::generator::{generate, GeneratorParams};
    use crate::solver::{branch_and_bound, BnbOptions};
    use crate::truth::TruthValue;

    fn dom3() -> FiniteDomain {
        FiniteDomain::new(3).unwrap()
    }

    fn contradiction() -> LClausalForm {
        LClausalForm::new(
            1,
            vec![
                LClause::new(vec![Term::Literal(Literal::positive(1).unwrap())]).unwrap(),
                LClause::new(vec![Term::Literal(Literal::negative(1).unwrap())]).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn blocking_vars_are_fresh_and_ordered() {
        let params = GeneratorParams { n: 3, m: 2, k: 2, p: 2, d: 3, seed: 0 };
        let form = generate(&params).unwrap();
        let bf = blocking_transform(&form);
        assert_eq!(bf.blocking_vars(), &[4, 5]);
        assert_eq!(bf.num_total_vars(), 5);
    }

    #[test]
    fn forced_blocking_satisfies_and_sums_to_cost() {
        let form = contradiction();
        let bf = blocking_transform(&form);
        for v in [TruthValue::ZERO, TruthValue::new(1, 2).unwrap(), TruthValue::ONE] {
            let original = Assignment::new(vec![v]);
            let extended = bf.force_blocking(&original).unwrap();
            assert!(bf.is_augmented_satisfied(&extended).unwrap());
            assert_eq!(
                bf.blocking_sum(&extended).unwrap(),
                form.cost(&original).unwrap()
            );
        }
    }

    #[test]
    fn contradiction_needs_one_blocking_variable() {
        let form = contradiction();
        let bf = blocking_transform(&form);
        let result = min_blocking_sum(&bf, dom3()).unwrap();
        assert_eq!(result.cost, 1);
        assert!(bf.is_augmented_satisfied(&result.witness).unwrap());
    }

    #[test]
    fn matches_branch_and_bound_on_random_instances() {
        for seed in 0..40 {
            let params = GeneratorParams { n: 5, m: 10, k: 3, p: 2, d: 3, seed };
            let form = generate(&params).unwrap();
            let bf = blocking_transform(&form);
            let blocking = min_blocking_sum(&bf, dom3()).unwrap();
            let bb = branch_and_bound(&form, dom3(), &BnbOptions::default());
            assert_eq!(blocking.cost, bb.cost, "seed {seed}");
        }
    }
}
