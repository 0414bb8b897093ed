//! Integer-scaled formula representation used by the search methods.
//!
//! Over a d-valued domain every truth value is a multiple of 1/(d-1), so a
//! value is stored as its integer numerator at scale d-1. A clause is
//! satisfied iff the (unclamped) sum of its term values reaches the scale.
//! The brute-force oracle deliberately does not use this representation; it
//! evaluates through the exact rational path so the two routes stay
//! independent.

use crate::formula::{Assignment, LClausalForm, Term};
use crate::truth::FiniteDomain;

#[derive(Debug, Clone, Copy)]
pub(crate) struct ScaledLit {
    pub var: usize, // 0-based
    pub negated: bool,
}

impl ScaledLit {
    #[inline]
    pub fn value(self, level: i64, scale: i64) -> i64 {
        if self.negated {
            scale - level
        } else {
            level
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) enum ScaledTerm {
    Plain(ScaledLit),
    NegatedSum(Vec<ScaledLit>),
}

#[derive(Debug, Clone)]
pub(crate) struct ScaledClause {
    pub terms: Vec<ScaledTerm>,
    /// Distinct variables in first-occurrence order (local-search move pool).
    pub vars: Vec<usize>,
}

#[derive(Debug, Clone)]
pub(crate) struct ScaledFormula {
    pub n: usize,
    pub scale: i64,
    pub clauses: Vec<ScaledClause>,
}

impl ScaledFormula {
    pub fn new(form: &LClausalForm, dom: FiniteDomain) -> ScaledFormula {
        let scale = dom.scale() as i64;
        let clauses = form
            .clauses()
            .iter()
            .map(|clause| {
                let terms = clause
                    .terms()
                    .iter()
                    .map(|term| match term {
                        Term::Literal(l) => ScaledTerm::Plain(ScaledLit {
                            var: l.var() as usize - 1,
                            negated: l.is_negated(),
                        }),
                        Term::NegatedSum(lits) => ScaledTerm::NegatedSum(
                            lits.iter()
                                .map(|l| ScaledLit {
                                    var: l.var() as usize - 1,
                                    negated: l.is_negated(),
                                })
                                .collect(),
                        ),
                    })
                    .collect::<Vec<_>>();
                let mut vars = Vec::new();
                for term in &terms {
                    for lit in term_lits(term) {
                        if !vars.contains(&lit.var) {
                            vars.push(lit.var);
                        }
                    }
                }
                ScaledClause { terms, vars }
            })
            .collect();
        ScaledFormula { n: form.num_vars() as usize, scale, clauses }
    }

    /// Clause value numerator, clamped at the scale.
    pub fn clause_value(&self, clause: &ScaledClause, levels: &[i64]) -> i64 {
        let mut sum = 0i64;
        for term in &clause.terms {
            sum += self.term_value(term, levels);
            if sum >= self.scale {
                return self.scale;
            }
        }
        sum
    }

    pub fn term_value(&self, term: &ScaledTerm, levels: &[i64]) -> i64 {
        match term {
            ScaledTerm::Plain(l) => l.value(levels[l.var], self.scale),
            ScaledTerm::NegatedSum(lits) => {
                let mut inner = 0i64;
                for l in lits {
                    inner += l.value(levels[l.var], self.scale);
                }
                (self.scale - inner).max(0)
            }
        }
    }

    pub fn is_clause_satisfied(&self, clause: &ScaledClause, levels: &[i64]) -> bool {
        self.clause_value(clause, levels) >= self.scale
    }

    /// Number of falsified clauses under a total level assignment.
    pub fn cost(&self, levels: &[i64]) -> usize {
        self.clauses
            .iter()
            .filter(|c| !self.is_clause_satisfied(c, levels))
            .count()
    }

    /// Per-variable occurrence counts (literal occurrences, duplicates count).
    pub fn occurrence_counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.n];
        for clause in &self.clauses {
            for term in &clause.terms {
                for lit in term_lits(term) {
                    counts[lit.var] += 1;
                }
            }
        }
        counts
    }

    pub fn to_assignment(&self, levels: &[i64], dom: FiniteDomain) -> Assignment {
        let values = levels
            .iter()
            .map(|&l| dom.value(l as u32).expect("levels lie in the domain"))
            .collect();
        Assignment::new(values)
    }
}

pub(crate) fn term_lits(term: &ScaledTerm) -> &[ScaledLit] {
    match term {
        ScaledTerm::Plain(l) => std::slice::from_ref(l),
        ScaledTerm::NegatedSum(lits) => lits,
    }
}
