//! Seeded random generation of Ł-clausal forms.
//!
//! Two models are provided: the general `(m, n, k, p)` model, where `p` is the
//! degree of absence of negated terms, and a 3-valued model that draws each
//! clause from a fixed list of eleven width-3 templates.
//!
//! The RNG (SplitMix64) and its consumption order are pinned so a published
//! `(params, seed)` pair names one exact instance. Per clause the draws are:
//! for each of the `k` literal slots, one index draw (partial Fisher–Yates
//! over a fresh pool) followed by one polarity draw (`uniform(2)`, 1 means
//! negated); then the segmentation draws, left to right: `r = uniform(p)`,
//! and on a hit (`r = ⌊p/2⌋`) one length draw `1 + uniform(remaining)`.
//! The template model replaces the polarity and segmentation draws with a
//! single `uniform(11)` template draw after the three index draws.

use thiserror::Error;

use crate::formula::{LClausalForm, LClause, Literal, Term};
use crate::rng::SplitMix64;
use crate::truth::FiniteDomain;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneratorError {
    #[error("clause width k={k} exceeds variable count n={n}")]
    WidthExceedsVars { k: u32, n: u32 },
    #[error("clause width k must be at least 1")]
    ZeroWidth,
    #[error("degree of absence p must be at least 1")]
    ZeroDegree,
    #[error("the template model needs n >= 3 variables, got {0}")]
    TooFewVarsForTemplates(u32),
}

/// Parameters of the `(m, n, k, p)` model.
///
/// Every clause has exactly `k` distinct variables; each left-to-right
/// segmentation decision starts a negated term with probability `1/p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeneratorParams {
    pub n: u32,
    pub m: u32,
    pub k: u32,
    pub p: u32,
    pub d: u32,
    pub seed: u64,
}

impl GeneratorParams {
    fn validate(&self) -> Result<(), GeneratorError> {
        if self.k == 0 {
            return Err(GeneratorError::ZeroWidth);
        }
        if self.k > self.n {
            return Err(GeneratorError::WidthExceedsVars { k: self.k, n: self.n });
        }
        if self.p == 0 {
            return Err(GeneratorError::ZeroDegree);
        }
        Ok(())
    }

    pub fn domain(&self) -> FiniteDomain {
        FiniteDomain::new(self.d).expect("generator params carry a valid domain")
    }
}

/// Draws `count` distinct variables from `1..=n` by partial Fisher–Yates.
///
/// `pool` is reset to the identity permutation on entry; one `uniform` draw
/// per slot.
fn draw_distinct_vars(pool: &mut Vec<u32>, n: u32, count: u32, rng: &mut SplitMix64) -> Vec<u32> {
    pool.clear();
    pool.extend(1..=n);
    let mut vars = Vec::with_capacity(count as usize);
    for i in 0..count as usize {
        let j = i + rng.uniform((n as usize - i) as u64) as usize;
        pool.swap(i, j);
        vars.push(pool[i]);
    }
    vars
}

fn lit(var: u32, negated: bool) -> Literal {
    Literal::new(var, negated).expect("generated variables are 1-based")
}

/// Generates an instance of the `(m, n, k, p)` model.
pub fn generate(params: &GeneratorParams) -> Result<LClausalForm, GeneratorError> {
    params.validate()?;
    let mut rng = SplitMix64::new(params.seed);
    let mut pool = Vec::with_capacity(params.n as usize);
    let hit = (params.p / 2) as u64;

    let mut clauses = Vec::with_capacity(params.m as usize);
    for _ in 0..params.m {
        pool.clear();
        pool.extend(1..=params.n);
        let mut lits = Vec::with_capacity(params.k as usize);
        for i in 0..params.k as usize {
            let j = i + rng.uniform((params.n as usize - i) as u64) as usize;
            pool.swap(i, j);
            let negated = rng.uniform(2) == 1;
            lits.push(lit(pool[i], negated));
        }

        let k = params.k as usize;
        let mut terms = Vec::new();
        let mut consumed = 0usize;
        while consumed < k {
            let r = rng.uniform(params.p as u64);
            if r == hit {
                let remaining = (k - consumed) as u64;
                let len = 1 + rng.uniform(remaining) as usize;
                let sum = lits[consumed..consumed + len].to_vec();
                terms.push(Term::negated_sum(sum).expect("segment length is at least 1"));
                consumed += len;
            } else {
                terms.push(Term::Literal(lits[consumed]));
                consumed += 1;
            }
        }
        clauses.push(LClause::new(terms).expect("k >= 1 yields at least one term"));
    }

    Ok(LClausalForm::new(params.n, clauses).expect("generated literals respect the bound"))
}

/// Sign patterns of the eight all-plain templates, in the pinned order.
const TEMPLATE_SIGNS: [[bool; 3]; 8] = [
    [false, false, false],
    [true, false, false],
    [false, true, false],
    [false, false, true],
    [true, true, false],
    [true, false, true],
    [false, true, true],
    [true, true, true],
];

fn template_clause(index: u64, v: &[u32]) -> LClause {
    let terms = match index {
        0..=7 => {
            let signs = TEMPLATE_SIGNS[index as usize];
            (0..3).map(|i| Term::Literal(lit(v[i], signs[i]))).collect()
        }
        // ¬(v1 ⊕ v2) ⊕ v3
        8 => vec![
            Term::negated_sum(vec![lit(v[0], false), lit(v[1], false)]).unwrap(),
            Term::Literal(lit(v[2], false)),
        ],
        // ¬(v1 ⊕ v3) ⊕ v2
        9 => vec![
            Term::negated_sum(vec![lit(v[0], false), lit(v[2], false)]).unwrap(),
            Term::Literal(lit(v[1], false)),
        ],
        // v1 ⊕ ¬(v2 ⊕ v3)
        10 => vec![
            Term::Literal(lit(v[0], false)),
            Term::negated_sum(vec![lit(v[1], false), lit(v[2], false)]).unwrap(),
        ],
        _ => unreachable!("template index is uniform(11)"),
    };
    LClause::new(terms).expect("templates are nonempty")
}

/// Generates a 3-valued instance of the eleven-template model.
pub fn generate_templates3(n: u32, m: u32, seed: u64) -> Result<LClausalForm, GeneratorError> {
    if n < 3 {
        return Err(GeneratorError::TooFewVarsForTemplates(n));
    }
    let mut rng = SplitMix64::new(seed);
    let mut pool = Vec::with_capacity(n as usize);

    let mut clauses = Vec::with_capacity(m as usize);
    for _ in 0..m {
        let vars = draw_distinct_vars(&mut pool, n, 3, &mut rng);
        let template = rng.uniform(11);
        clauses.push(template_clause(template, &vars));
    }

    Ok(LClausalForm::new(n, clauses).expect("generated literals respect the bound"))
}
