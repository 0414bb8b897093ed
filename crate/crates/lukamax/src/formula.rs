//! Ł-clausal form representation and evaluation.
//!
//! A formula is a weak conjunction of Ł-clauses; an Ł-clause is a strong
//! disjunction of terms; a term is a literal or a negated strong sum of
//! literals. A clause is satisfied iff its value is exactly 1.

use std::fmt;

use thiserror::Error;

use crate::truth::TruthValue;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("variable index 0 is reserved; variables are 1-based")]
    ZeroVariable,
    #[error("variable {var} exceeds the declared variable count {n}")]
    VariableOutOfRange { var: u32, n: u32 },
    #[error("a negated sum needs at least one literal")]
    EmptyNegatedSum,
    #[error("a clause needs at least one term")]
    EmptyClause,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("variable {0} has no assigned value")]
    Unassigned(u32),
}

/// A variable (1-based index) or its negation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Literal {
    var: u32,
    negated: bool,
}

impl Literal {
    pub fn new(var: u32, negated: bool) -> Result<Literal, FormulaError> {
        if var == 0 {
            return Err(FormulaError::ZeroVariable);
        }
        Ok(Literal { var, negated })
    }

    pub fn positive(var: u32) -> Result<Literal, FormulaError> {
        Literal::new(var, false)
    }

    pub fn negative(var: u32) -> Result<Literal, FormulaError> {
        Literal::new(var, true)
    }

    pub fn var(self) -> u32 {
        self.var
    }

    pub fn is_negated(self) -> bool {
        self.negated
    }

    pub fn eval(self, assignment: &Assignment) -> Result<TruthValue, EvalError> {
        let v = assignment.get(self.var).ok_or(EvalError::Unassigned(self.var))?;
        Ok(if self.negated { v.neg() } else { v })
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            write!(f, "-{}", self.var)
        } else {
            write!(f, "{}", self.var)
        }
    }
}

/// One disjunct of an Ł-clause.
///
/// `NegatedSum(l1..lt)` denotes `¬(l1 ⊕ … ⊕ lt)`. A negated sum of a single
/// literal is legal and kept syntactically distinct from the plain negated
/// literal, even though the two evaluate identically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    Literal(Literal),
    NegatedSum(Vec<Literal>),
}

impl Term {
    pub fn negated_sum(lits: Vec<Literal>) -> Result<Term, FormulaError> {
        if lits.is_empty() {
            return Err(FormulaError::EmptyNegatedSum);
        }
        Ok(Term::NegatedSum(lits))
    }

    /// Number of literal occurrences in this term.
    pub fn width(&self) -> usize {
        match self {
            Term::Literal(_) => 1,
            Term::NegatedSum(lits) => lits.len(),
        }
    }

    pub fn literals(&self) -> &[Literal] {
        match self {
            Term::Literal(lit) => std::slice::from_ref(lit),
            Term::NegatedSum(lits) => lits,
        }
    }

    pub fn eval(&self, assignment: &Assignment) -> Result<TruthValue, EvalError> {
        match self {
            Term::Literal(lit) => lit.eval(assignment),
            Term::NegatedSum(lits) => {
                // ¬(l1 ⊕ … ⊕ lt); ⊕ is associative so a left fold is exact.
                let mut sum = TruthValue::ZERO;
                for lit in lits {
                    sum = sum.strong_disj(lit.eval(assignment)?);
                }
                Ok(sum.neg())
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Literal(lit) => write!(f, "{lit}"),
            Term::NegatedSum(lits) => {
                write!(f, "-(")?;
                for lit in lits {
                    write!(f, " {lit}")?;
                }
                write!(f, " )")
            }
        }
    }
}

/// A strong disjunction of terms; satisfied iff it evaluates to exactly 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LClause {
    terms: Vec<Term>,
}

impl LClause {
    pub fn new(terms: Vec<Term>) -> Result<LClause, FormulaError> {
        if terms.is_empty() {
            return Err(FormulaError::EmptyClause);
        }
        Ok(LClause { terms })
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Total literal count across all terms.
    pub fn width(&self) -> usize {
        self.terms.iter().map(Term::width).sum()
    }

    pub fn eval(&self, assignment: &Assignment) -> Result<TruthValue, EvalError> {
        let mut value = TruthValue::ZERO;
        for term in &self.terms {
            value = value.strong_disj(term.eval(assignment)?);
        }
        Ok(value)
    }

    pub fn is_satisfied(&self, assignment: &Assignment) -> Result<bool, EvalError> {
        Ok(self.eval(assignment)?.is_one())
    }
}

/// A weak conjunction of Ł-clauses over variables `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LClausalForm {
    n: u32,
    clauses: Vec<LClause>,
}

impl LClausalForm {
    /// Builds a form, checking every literal against the variable bound.
    pub fn new(n: u32, clauses: Vec<LClause>) -> Result<LClausalForm, FormulaError> {
        for clause in &clauses {
            for term in clause.terms() {
                for lit in term.literals() {
                    if lit.var() > n {
                        return Err(FormulaError::VariableOutOfRange { var: lit.var(), n });
                    }
                }
            }
        }
        Ok(LClausalForm { n, clauses })
    }

    pub fn empty(n: u32) -> LClausalForm {
        LClausalForm { n, clauses: Vec::new() }
    }

    pub fn num_vars(&self) -> u32 {
        self.n
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[LClause] {
        &self.clauses
    }

    /// Weak conjunction over clause values; 1 for the empty form.
    pub fn eval(&self, assignment: &Assignment) -> Result<TruthValue, EvalError> {
        let mut value = TruthValue::ONE;
        for clause in &self.clauses {
            value = value.weak_conj(clause.eval(assignment)?);
        }
        Ok(value)
    }

    /// Number of falsified clauses (value < 1) under `assignment`.
    pub fn cost(&self, assignment: &Assignment) -> Result<usize, EvalError> {
        let mut falsified = 0;
        for clause in &self.clauses {
            if !clause.eval(assignment)?.is_one() {
                falsified += 1;
            }
        }
        Ok(falsified)
    }

    pub fn is_satisfied(&self, assignment: &Assignment) -> Result<bool, EvalError> {
        Ok(self.eval(assignment)?.is_one())
    }
}

/// A total map from variables `1..=n` to truth values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    values: Vec<TruthValue>,
}

impl Assignment {
    /// `values[i]` is the value of variable `i + 1`.
    pub fn new(values: Vec<TruthValue>) -> Assignment {
        Assignment { values }
    }

    pub fn constant(n: u32, value: TruthValue) -> Assignment {
        Assignment { values: vec![value; n as usize] }
    }

    pub fn get(&self, var: u32) -> Option<TruthValue> {
        if var == 0 {
            return None;
        }
        self.values.get(var as usize - 1).copied()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[TruthValue] {
        &self.values
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::truth::TruthValue;

    fn tv(num: u64, den: u64) -> TruthValue {
        TruthValue::new(num, den).unwrap()
    }

    fn pos(var: u32) -> Literal {
        Literal::positive(var).unwrap()
    }

    fn neg(var: u32) -> Literal {
        Literal::negative(var).unwrap()
    }

    /// ¬(x1 ⊕ x1) ⊕ x1, the clause satisfied only at the endpoints.
    fn endpoint_clause() -> LClause {
        LClause::new(vec![
            Term::negated_sum(vec![pos(1), pos(1)]).unwrap(),
            Term::Literal(pos(1)),
        ])
        .unwrap()
    }

    fn single(v: TruthValue) -> Assignment {
        Assignment::new(vec![v])
    }

    #[test]
    fn literal_and_term_eval() {
        let a = single(tv(1, 3));
        assert_eq!(pos(1).eval(&a).unwrap(), tv(1, 3));
        assert_eq!(neg(1).eval(&a).unwrap(), tv(2, 3));

        let sum = Term::negated_sum(vec![pos(1), pos(1)]).unwrap();
        assert_eq!(sum.eval(&single(tv(1, 2))).unwrap(), TruthValue::ZERO);
        assert_eq!(sum.eval(&single(TruthValue::ZERO)).unwrap(), TruthValue::ONE);
    }

    #[test]
    fn endpoint_clause_values() {
        let clause = endpoint_clause();
        assert_eq!(clause.eval(&single(TruthValue::ZERO)).unwrap(), TruthValue::ONE);
        assert_eq!(clause.eval(&single(tv(1, 2))).unwrap(), tv(1, 2));
        assert_eq!(clause.eval(&single(TruthValue::ONE)).unwrap(), TruthValue::ONE);
        assert_eq!(clause.width(), 3);
    }

    #[test]
    fn formula_eval_and_cost() {
        let f = LClausalForm::new(
            1,
            vec![
                LClause::new(vec![Term::Literal(pos(1))]).unwrap(),
                LClause::new(vec![Term::Literal(neg(1))]).unwrap(),
            ],
        )
        .unwrap();

        assert_eq!(f.eval(&single(TruthValue::ONE)).unwrap(), TruthValue::ZERO);
        assert_eq!(f.cost(&single(TruthValue::ONE)).unwrap(), 1);
        assert_eq!(f.eval(&single(tv(1, 2))).unwrap(), tv(1, 2));
        assert_eq!(f.cost(&single(tv(1, 2))).unwrap(), 2);

        let empty = LClausalForm::empty(2);
        let a = Assignment::constant(2, TruthValue::ZERO);
        assert_eq!(empty.eval(&a).unwrap(), TruthValue::ONE);
        assert_eq!(empty.cost(&a).unwrap(), 0);
    }

    #[test]
    fn satisfaction_iff_zero_cost() {
        let f = LClausalForm::new(
            2,
            vec![LClause::new(vec![Term::Literal(pos(1)), Term::Literal(pos(2))]).unwrap()],
        )
        .unwrap();
        let sat = Assignment::new(vec![tv(1, 2), tv(1, 2)]);
        assert!(f.is_satisfied(&sat).unwrap());
        assert_eq!(f.cost(&sat).unwrap(), 0);
        let unsat = Assignment::new(vec![tv(1, 2), TruthValue::ZERO]);
        assert!(!f.is_satisfied(&unsat).unwrap());
        assert_eq!(f.cost(&unsat).unwrap(), 1);
    }

    #[test]
    fn unassigned_variable_is_reported() {
        let clause = LClause::new(vec![Term::Literal(pos(2))]).unwrap();
        let err = clause.eval(&single(TruthValue::ONE)).unwrap_err();
        assert_eq!(err, EvalError::Unassigned(2));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Literal::positive(0).unwrap_err(), FormulaError::ZeroVariable);
        assert_eq!(Term::negated_sum(vec![]).unwrap_err(), FormulaError::EmptyNegatedSum);
        assert_eq!(LClause::new(vec![]).unwrap_err(), FormulaError::EmptyClause);
        let clause = LClause::new(vec![Term::Literal(pos(3))]).unwrap();
        assert_eq!(
            LClausalForm::new(2, vec![clause]).unwrap_err(),
            FormulaError::VariableOutOfRange { var: 3, n: 2 }
        );
    }

    #[test]
    fn removing_a_clause_never_increases_cost() {
        let f = LClausalForm::new(
            1,
            vec![
                LClause::new(vec![Term::Literal(pos(1))]).unwrap(),
                LClause::new(vec![Term::Literal(neg(1))]).unwrap(),
                endpoint_clause(),
            ],
        )
        .unwrap();
        for v in [TruthValue::ZERO, tv(1, 2), TruthValue::ONE] {
            let a = single(v);
            let full = f.cost(&a).unwrap();
            for drop in 0..f.num_clauses() {
                let mut clauses = f.clauses().to_vec();
                clauses.remove(drop);
                let reduced = LClausalForm::new(1, clauses).unwrap();
                assert!(reduced.cost(&a).unwrap() <= full);
            }
        }
    }
}
