//! Exact truth values in `[0, 1]` and the Łukasiewicz connectives.
//!
//! All arithmetic is exact rational arithmetic; clause satisfaction is an
//! equality test against 1, which floating point would corrupt.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Error building a [`TruthValue`] or [`FiniteDomain`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TruthError {
    #[error("denominator must be positive")]
    ZeroDenominator,
    #[error("{num}/{den} lies outside [0, 1]")]
    OutOfRange { num: u64, den: u64 },
    #[error("domain needs at least 2 truth levels, got {0}")]
    DomainTooSmall(u32),
    #[error("truth level {level} out of range for a {d}-valued domain")]
    LevelOutOfRange { level: u32, d: u32 },
    #[error("cannot parse {0:?} as a truth value (expected `num/den` in [0,1])")]
    Unparseable(String),
}

/// An exact rational truth value in `[0, 1]`, stored as a reduced fraction.
///
/// 0 is `0/1` and 1 is `1/1`; `num <= den` and `gcd(num, den) = 1` always hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TruthValue {
    num: u64,
    den: u64,
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Builds a reduced value from an unreduced non-negative fraction, clamping at 1.
///
/// Denominators that exceed `u64` after reduction do not occur for values built
/// from finite domains (every intermediate denominator divides the domain's),
/// and are astronomically unlikely otherwise; they are a hard error.
fn reduce_clamped(num: u128, den: u128) -> TruthValue {
    debug_assert!(den > 0);
    if num >= den {
        return TruthValue::ONE;
    }
    let g = gcd(num, den);
    let (num, den) = (num / g, den / g);
    TruthValue {
        num: u64::try_from(num).expect("truth value numerator overflow"),
        den: u64::try_from(den).expect("truth value denominator overflow"),
    }
}

impl TruthValue {
    pub const ZERO: TruthValue = TruthValue { num: 0, den: 1 };
    pub const ONE: TruthValue = TruthValue { num: 1, den: 1 };

    /// Exact `num/den`; rejects values outside `[0, 1]` and zero denominators.
    pub fn new(num: u64, den: u64) -> Result<TruthValue, TruthError> {
        if den == 0 {
            return Err(TruthError::ZeroDenominator);
        }
        if num > den {
            return Err(TruthError::OutOfRange { num, den });
        }
        Ok(reduce_clamped(num as u128, den as u128))
    }

    pub fn numerator(self) -> u64 {
        self.num
    }

    pub fn denominator(self) -> u64 {
        self.den
    }

    pub fn is_one(self) -> bool {
        self.num == self.den
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    /// Negation: `1 - x`.
    pub fn neg(self) -> TruthValue {
        TruthValue {
            num: self.den - self.num,
            den: self.den,
        }
    }

    /// Strong disjunction: `min(1, x + y)`.
    pub fn strong_disj(self, other: TruthValue) -> TruthValue {
        let num = self.num as u128 * other.den as u128 + other.num as u128 * self.den as u128;
        reduce_clamped(num, self.den as u128 * other.den as u128)
    }

    /// Strong conjunction: `max(x + y - 1, 0)`.
    pub fn strong_conj(self, other: TruthValue) -> TruthValue {
        // x + y - 1 = -((1 - x) + (1 - y) - ... ); easier: dual of strong_disj.
        self.neg().strong_disj(other.neg()).neg()
    }

    /// Weak disjunction: `max(x, y)`.
    pub fn weak_disj(self, other: TruthValue) -> TruthValue {
        self.max(other)
    }

    /// Weak conjunction: `min(x, y)`.
    pub fn weak_conj(self, other: TruthValue) -> TruthValue {
        self.min(other)
    }

    /// Implication: `min(1, 1 - x + y)`.
    pub fn implies(self, other: TruthValue) -> TruthValue {
        self.neg().strong_disj(other)
    }
}

impl PartialOrd for TruthValue {
    fn partial_cmp(&self, other: &TruthValue) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TruthValue {
    fn cmp(&self, other: &TruthValue) -> Ordering {
        let lhs = self.num as u128 * other.den as u128;
        let rhs = other.num as u128 * self.den as u128;
        lhs.cmp(&rhs)
    }
}

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for TruthValue {
    type Err = TruthError;

    /// Accepts `num/den` or a bare integer (`0` / `1`).
    fn from_str(s: &str) -> Result<TruthValue, TruthError> {
        let bad = || TruthError::Unparseable(s.to_string());
        match s.split_once('/') {
            Some((n, d)) => {
                let num: u64 = n.trim().parse().map_err(|_| bad())?;
                let den: u64 = d.trim().parse().map_err(|_| bad())?;
                TruthValue::new(num, den)
            }
            None => {
                let v: u64 = s.trim().parse().map_err(|_| bad())?;
                TruthValue::new(v, 1)
            }
        }
    }
}

/// The binary connectives of the logic; negation is [`TruthValue::neg`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinaryConnective {
    StrongDisj,
    StrongConj,
    WeakDisj,
    WeakConj,
    Implies,
}

impl BinaryConnective {
    pub const ALL: [BinaryConnective; 5] = [
        BinaryConnective::StrongDisj,
        BinaryConnective::StrongConj,
        BinaryConnective::WeakDisj,
        BinaryConnective::WeakConj,
        BinaryConnective::Implies,
    ];

    pub fn apply(self, a: TruthValue, b: TruthValue) -> TruthValue {
        match self {
            BinaryConnective::StrongDisj => a.strong_disj(b),
            BinaryConnective::StrongConj => a.strong_conj(b),
            BinaryConnective::WeakDisj => a.weak_disj(b),
            BinaryConnective::WeakConj => a.weak_conj(b),
            BinaryConnective::Implies => a.implies(b),
        }
    }
}

/// A finite truth-value domain `{ i/(d-1) : 0 <= i <= d-1 }`.
///
/// `d = 2` is Boolean; `d = 3` adds the midpoint `1/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FiniteDomain {
    d: u32,
}

impl FiniteDomain {
    pub fn new(d: u32) -> Result<FiniteDomain, TruthError> {
        if d < 2 {
            return Err(TruthError::DomainTooSmall(d));
        }
        Ok(FiniteDomain { d })
    }

    /// Number of truth levels `d`.
    pub fn size(self) -> u32 {
        self.d
    }

    /// The common denominator `d - 1`.
    pub fn scale(self) -> u32 {
        self.d - 1
    }

    /// The `level`-th value, `level/(d-1)`.
    pub fn value(self, level: u32) -> Result<TruthValue, TruthError> {
        if level >= self.d {
            return Err(TruthError::LevelOutOfRange { level, d: self.d });
        }
        Ok(reduce_clamped(level as u128, (self.d - 1) as u128))
    }

    /// All values in ascending order.
    pub fn values(self) -> impl Iterator<Item = TruthValue> {
        let scale = (self.d - 1) as u128;
        (0..self.d).map(move |i| reduce_clamped(i as u128, scale))
    }

    /// Whether `v` is one of the domain's levels.
    pub fn contains(self, v: TruthValue) -> bool {
        (self.d - 1) as u64 % v.den == 0
    }
}

impl fmt::Display for FiniteDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-valued", self.d)
    }
}
