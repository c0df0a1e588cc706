//! Degree data defining a family of determinantal schemes, with validation
//! and the numeric non-emptiness criterion.
//!
//! Indexing convention, fixed once for the whole crate: the column degrees
//! `a` are 0-based (`a_0 <= ... <= a_{t+c-2}`), the row degrees `b` are
//! 1-based (`b_1 <= ... <= b_t`) in documentation and stored 0-based
//! internally.  Every operation states which side of the convention an index
//! lives on.

use crate::arith::is_prime;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DegreesError {
    #[error("`{which}` must be weakly increasing")]
    UnsortedInput { which: &'static str },
    #[error("`{which}` must have {expected} entries, got {got}")]
    BadLength {
        which: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("t >= 2 and c >= 2 required; t = 1 is the complete-intersection case")]
    TrivialCase,
    #[error("ambient projective dimension n must be at least 1")]
    BadAmbient,
    #[error("characteristic {0} is not prime")]
    NotPrime(u64),
}

/// Returned by [`DegreeSpec::sing_codim_bound`] when the degree hypothesis
/// of the bound fails.
#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("hypothesis a_(i-min(alpha,t)) - b_i >= 0 fails for some i")]
pub struct NotApplicable;

/// The tuple `(n, t, c, b, a)` defining a family `W(b;a)` of codimension-`c`
/// determinantal subschemes of `P^n` cut out by the maximal minors of a
/// `t x (t+c-1)` matrix with entry degrees `a_j - b_i`.
///
/// Invariants enforced on construction: `len(b) = t`, `len(a) = t+c-1`, both
/// vectors weakly increasing, `t >= 2`, `c >= 2`, `n >= 1`.  Vectors are
/// never silently re-sorted; unsorted input is an error.  Negative degrees
/// and equalities `a_j = b_i` are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawDegreeSpec")]
pub struct DegreeSpec {
    n: u32,
    t: usize,
    c: usize,
    b: Vec<i64>,
    a: Vec<i64>,
}

#[derive(Deserialize)]
struct RawDegreeSpec {
    n: u32,
    t: usize,
    c: usize,
    b: Vec<i64>,
    a: Vec<i64>,
}

impl TryFrom<RawDegreeSpec> for DegreeSpec {
    type Error = DegreesError;

    fn try_from(raw: RawDegreeSpec) -> Result<Self, DegreesError> {
        DegreeSpec::new(raw.n, raw.t, raw.c, raw.b, raw.a)
    }
}

impl DegreeSpec {
    /// Validates raw degree data.  This is the only way to obtain a
    /// `DegreeSpec`, so every instance satisfies the type invariants.
    pub fn new(n: u32, t: usize, c: usize, b: Vec<i64>, a: Vec<i64>) -> Result<Self, DegreesError> {
        if n < 1 {
            return Err(DegreesError::BadAmbient);
        }
        if t < 2 || c < 2 {
            return Err(DegreesError::TrivialCase);
        }
        if b.len() != t {
            return Err(DegreesError::BadLength {
                which: "b",
                expected: t,
                got: b.len(),
            });
        }
        if a.len() != t + c - 1 {
            return Err(DegreesError::BadLength {
                which: "a",
                expected: t + c - 1,
                got: a.len(),
            });
        }
        if b.windows(2).any(|w| w[0] > w[1]) {
            return Err(DegreesError::UnsortedInput { which: "b" });
        }
        if a.windows(2).any(|w| w[0] > w[1]) {
            return Err(DegreesError::UnsortedInput { which: "a" });
        }
        Ok(DegreeSpec { n, t, c, b, a })
    }

    /// Ambient projective dimension `n`.
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Row count `t` of the defining matrix.
    pub fn t(&self) -> usize {
        self.t
    }

    /// Codimension `c`; the matrix has `t + c - 1` columns.
    pub fn c(&self) -> usize {
        self.c
    }

    pub fn b(&self) -> &[i64] {
        &self.b
    }

    pub fn a(&self) -> &[i64] {
        &self.a
    }

    /// Number of columns, `t + c - 1`.
    pub fn cols(&self) -> usize {
        self.t + self.c - 1
    }

    /// Column degree `a_j`, 0-based as in the stored convention.
    pub fn a_deg(&self, j: usize) -> i64 {
        self.a[j]
    }

    /// Row degree `b_i`, 1-based: valid for `1 <= i <= t`.
    pub fn b_deg(&self, i: usize) -> i64 {
        self.b[i - 1]
    }

    /// Degree of the matrix entry in (1-based) row `i`, (0-based) column
    /// `j`: `a_j - b_i`.
    pub fn entry_degree(&self, i: usize, j: usize) -> i64 {
        self.a[j] - self.b[i - 1]
    }

    /// Sum of the row degrees `b_1 + ... + b_t`.
    pub fn b_sum(&self) -> i64 {
        self.b.iter().sum()
    }

    /// True when some `a_j = b_i`, i.e. the defining matrix may carry unit
    /// entries and the Eagon-Northcott table need not be minimal.
    pub fn has_degree_zero_entry(&self) -> bool {
        self.b
            .iter()
            .any(|bi| self.a.binary_search(bi).is_ok())
    }

    /// Non-emptiness of `W(b;a)` (equivalently of the standard-determinantal
    /// locus `W_s(b;a)`; the two are simultaneously non-empty): true iff
    /// `a_{i-1} >= b_i` for all `1 <= i <= t` and `a_{i-1} > b_i` for at
    /// least one such `i`.
    ///
    /// Only `a_0..a_{t-1}` and `b` enter the criterion; the remaining
    /// columns are irrelevant.
    pub fn is_nonempty(&self) -> bool {
        let weak = (1..=self.t).all(|i| self.a[i - 1] >= self.b[i - 1]);
        let strict = (1..=self.t).any(|i| self.a[i - 1] > self.b[i - 1]);
        weak && strict
    }

    /// Guaranteed lower bound `min(2*alpha - 1, j + 2)` on the codimension
    /// of the singular locus inside the j-th scheme of the column-deletion
    /// flag, for a general member.  Valid under the hypothesis
    /// `a_{i - min(alpha,t)} - b_i >= 0` for `min(alpha,t) <= i <= t`
    /// (1-based `i`); returns [`NotApplicable`] otherwise.
    ///
    /// Panics if `alpha < 1` or `j` is outside `2..=c`.
    pub fn sing_codim_bound(&self, alpha: u32, j: usize) -> Result<i64, NotApplicable> {
        assert!(alpha >= 1, "alpha must be at least 1");
        assert!((2..=self.c).contains(&j), "j must lie in 2..=c");
        let q = (alpha as usize).min(self.t);
        for i in q..=self.t {
            if self.a[i - q] - self.b[i - 1] < 0 {
                return Err(NotApplicable);
            }
        }
        Ok((2 * alpha as i64 - 1).min(j as i64 + 2))
    }
}

/// Field characteristic used by the checker rules (char-0 branches) and by
/// the algebra oracle (which always works over a prime field).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CharFlag {
    Zero,
    Prime(u64),
}

impl CharFlag {
    pub fn prime(p: u64) -> Result<Self, DegreesError> {
        if is_prime(p) {
            Ok(CharFlag::Prime(p))
        } else {
            Err(DegreesError::NotPrime(p))
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, CharFlag::Zero)
    }
}
