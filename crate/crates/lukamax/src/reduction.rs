//! Reduction from Boolean Max-2-SAT to Ł-clausal MaxSAT.
//!
//! For an input CNF with n variables and m clauses, the output contains, for
//! every variable x, m+1 copies of the endpoint gadget `¬(x ⊕ x) ⊕ x` (a
//! clause satisfied exactly at x ∈ {0, 1}), followed by one Ł-clause
//! `l_i ⊕ l_j` per input clause. The gadget copies outweigh the soft
//! clauses, so any optimum assigns every variable 0 or 1, where ⊕ and the
//! Boolean "or" coincide: the input has an assignment satisfying k clauses
//! iff the output has one satisfying k + n(m+1).

use thiserror::Error;

use crate::formats::BooleanCnf;
use crate::formula::{Assignment, LClausalForm, LClause, Literal, Term};
use crate::solver::{branch_and_bound, BnbOptions};
use crate::truth::FiniteDomain;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("clause {index} has {width} literals; the reduction takes 1 or 2")]
    ClauseTooWide { index: usize, width: usize },
    #[error("threshold {k} out of range 0..={m}")]
    ThresholdOutOfRange { k: usize, m: usize },
}

/// Result of [`reduce_max2sat`]: the Ł-clausal form and the bookkeeping
/// needed to map optima back.
///
/// The first `gadget_count = n(m+1)` clauses are the gadget copies, grouped
/// by variable index ascending; the remaining `soft_count = m` clauses map
/// 1:1 to the input clauses in input order. `offset` is the count an input
/// optimum gains: `max satisfied(output) = max satisfied(input) + offset`.
#[derive(Debug, Clone)]
pub struct ReductionOutput {
    pub phi_prime: LClausalForm,
    pub gadget_count: usize,
    pub soft_count: usize,
    pub offset: usize,
}

/// The endpoint gadget `¬(x ⊕ x) ⊕ x`: value 1 at x ∈ {0, 1}, below 1 at
/// every interior point.
pub fn endpoint_gadget(var: u32) -> LClause {
    let x = Literal::positive(var).expect("gadget variables are 1-based");
    LClause::new(vec![
        Term::negated_sum(vec![x, x]).expect("two literals"),
        Term::Literal(x),
    ])
    .expect("two terms")
}

fn soft_clause(lits: &[i32]) -> LClause {
    let lit = |l: i32| Literal::new(l.unsigned_abs(), l < 0).expect("nonzero literal");
    let (a, b) = match *lits {
        [l] => (lit(l), lit(l)), // unit clause widened as (l ⊕ l)
        [l, r] => (lit(l), lit(r)),
        _ => unreachable!("width checked by the caller"),
    };
    LClause::new(vec![Term::Literal(a), Term::Literal(b)]).expect("two terms")
}

/// Builds the Ł-clausal MaxSAT instance corresponding to a Max-2-SAT input.
pub fn reduce_max2sat(phi: &BooleanCnf) -> Result<ReductionOutput, ReductionError> {
    for (index, clause) in phi.clauses().iter().enumerate() {
        if clause.is_empty() || clause.len() > 2 {
            return Err(ReductionError::ClauseTooWide { index, width: clause.len() });
        }
    }

    let n = phi.num_vars() as usize;
    let m = phi.num_clauses();
    let copies = m + 1;
    let mut clauses = Vec::with_capacity(n * copies + m);
    for var in 1..=phi.num_vars() {
        for _ in 0..copies {
            clauses.push(endpoint_gadget(var));
        }
    }
    for clause in phi.clauses() {
        clauses.push(soft_clause(clause));
    }

    let phi_prime =
        LClausalForm::new(phi.num_vars(), clauses).expect("literals bounded by the input header");
    Ok(ReductionOutput {
        phi_prime,
        gadget_count: n * copies,
        soft_count: m,
        offset: n * copies,
    })
}

/// Decides whether some d-valued assignment satisfies at least `k` clauses;
/// returns a witness when one exists.
pub fn decide_at_least_k(
    form: &LClausalForm,
    k: usize,
    dom: FiniteDomain,
) -> Result<(bool, Option<Assignment>), ReductionError> {
    let m = form.num_clauses();
    if k > m {
        return Err(ReductionError::ThresholdOutOfRange { k, m });
    }
    let result = branch_and_bound(form, dom, &BnbOptions::default());
    if m - result.cost >= k {
        Ok((true, Some(result.witness)))
    } else {
        Ok((false, None))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::brute_force;
    use crate::truth::TruthValue;

    fn dom3() -> FiniteDomain {
        FiniteDomain::new(3).unwrap()
    }

    fn cnf(n: u32, clauses: Vec<Vec<i32>>) -> BooleanCnf {
        BooleanCnf::new(n, clauses).unwrap()
    }

    /// Maximum satisfied clauses over all Boolean assignments, by direct
    /// enumeration of the CNF. Independent of the Ł-clausal machinery.
    fn boolean_sol(phi: &BooleanCnf) -> usize {
        let n = phi.num_vars();
        let mut best = 0;
        for bits in 0..(1u64 << n) {
            let satisfied = phi
                .clauses()
                .iter()
                .filter(|clause| {
                    clause.iter().any(|&l| {
                        let value = bits >> (l.unsigned_abs() - 1) & 1 == 1;
                        if l < 0 {
                            !value
                        } else {
                            value
                        }
                    })
                })
                .count();
            best = best.max(satisfied);
        }
        best
    }

    fn max_satisfied_3valued(form: &LClausalForm) -> usize {
        let result = brute_force(form, dom3()).unwrap();
        form.num_clauses() - result.cost
    }

    #[test]
    fn shape_of_the_output() {
        let phi = cnf(2, vec![vec![1, 2]]);
        let out = reduce_max2sat(&phi).unwrap();
        assert_eq!(out.gadget_count, 4);
        assert_eq!(out.soft_count, 1);
        assert_eq!(out.offset, 4);
        assert_eq!(out.phi_prime.num_clauses(), 5);
        assert_eq!(out.phi_prime.num_vars(), 2);
        // Gadgets first (grouped by variable), then the soft clause.
        assert_eq!(out.phi_prime.clauses()[0], endpoint_gadget(1));
        assert_eq!(out.phi_prime.clauses()[2], endpoint_gadget(2));
        assert_eq!(out.phi_prime.clauses()[4].width(), 2);
    }

    #[test]
    fn satisfiable_pair_gains_the_offset() {
        let phi = cnf(2, vec![vec![1, 2]]);
        let out = reduce_max2sat(&phi).unwrap();
        assert_eq!(boolean_sol(&phi), 1);
        assert_eq!(max_satisfied_3valued(&out.phi_prime), 1 + out.offset);
    }

    #[test]
    fn contradictory_units_lose_exactly_one() {
        let phi = cnf(1, vec![vec![1], vec![-1]]);
        let out = reduce_max2sat(&phi).unwrap();
        assert_eq!(out.offset, 3);
        assert_eq!(boolean_sol(&phi), 1);
        assert_eq!(max_satisfied_3valued(&out.phi_prime), 1 + 3);
    }

    #[test]
    fn empty_input_keeps_gadgets_satisfiable() {
        let phi = cnf(1, vec![]);
        let out = reduce_max2sat(&phi).unwrap();
        assert_eq!(out.phi_prime.num_clauses(), 1);
        assert_eq!(max_satisfied_3valued(&out.phi_prime), 1);
    }

    #[test]
    fn wide_clauses_are_rejected() {
        let phi = cnf(3, vec![vec![1], vec![1, 2, 3]]);
        assert_eq!(
            reduce_max2sat(&phi).unwrap_err(),
            ReductionError::ClauseTooWide { index: 1, width: 3 }
        );
    }

    #[test]
    fn gadget_is_satisfied_exactly_at_the_endpoints() {
        let clause = endpoint_gadget(1);
        for (value, satisfied) in [
            (TruthValue::ZERO, true),
            (TruthValue::new(1, 2).unwrap(), false),
            (TruthValue::ONE, true),
        ] {
            let a = Assignment::new(vec![value]);
            assert_eq!(clause.eval(&a).unwrap().is_one(), satisfied, "at {value}");
        }
    }

    #[test]
    fn identity_on_random_instances() {
        use crate::rng::SplitMix64;
        let mut rng = SplitMix64::new(0xFEED);
        for _ in 0..30 {
            let n = 1 + rng.uniform(4) as u32; // 1..=4 variables
            let m = rng.uniform(6) as usize; // 0..=5 clauses
            let clauses: Vec<Vec<i32>> = (0..m)
                .map(|_| {
                    let width = 1 + rng.uniform(2) as usize;
                    (0..width)
                        .map(|_| {
                            let var = 1 + rng.uniform(n as u64) as i32;
                            if rng.uniform(2) == 1 {
                                -var
                            } else {
                                var
                            }
                        })
                        .collect()
                })
                .collect();
            let phi = cnf(n, clauses);
            let out = reduce_max2sat(&phi).unwrap();
            assert_eq!(
                max_satisfied_3valued(&out.phi_prime),
                boolean_sol(&phi) + out.offset
            );
        }
    }

    #[test]
    fn decide_thresholds() {
        let form = LClausalForm::new(
            1,
            vec![
                LClause::new(vec![Term::Literal(Literal::positive(1).unwrap())]).unwrap(),
                LClause::new(vec![Term::Literal(Literal::negative(1).unwrap())]).unwrap(),
            ],
        )
        .unwrap();
        let (sat0, w0) = decide_at_least_k(&form, 0, dom3()).unwrap();
        assert!(sat0 && w0.is_some());
        let (sat1, w1) = decide_at_least_k(&form, 1, dom3()).unwrap();
        assert!(sat1);
        let witness = w1.unwrap();
        assert!(form.clauses().iter().any(|c| c.eval(&witness).unwrap().is_one()));
        let (sat2, w2) = decide_at_least_k(&form, 2, dom3()).unwrap();
        assert!(!sat2 && w2.is_none());
        assert!(decide_at_least_k(&form, 3, dom3()).is_err());
    }
}
