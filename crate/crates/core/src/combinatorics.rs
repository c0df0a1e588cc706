//! Exact evaluation of the closed-form invariants attached to a degree
//! sequence: the vanishing-convention binomials, the partial degree sums
//! `ell_i`, the parameter count `lambda_c`, the shifted degrees `h_k`, the
//! correction terms `K_m` and the conjectured dimension
//! `lambda_c + K_3 + ... + K_c` of `W(b;a)`.
//!
//! All results are arbitrary-precision; the binomial sums grow past 64 bits
//! already for modest `n`.

use crate::degrees::DegreeSpec;
use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error("binomial lower index must be non-negative, got {0}")]
    NegativeBottom(i64),
    #[error("index {index} out of range {min}..={max} for {what}")]
    IndexOutOfRange {
        what: &'static str,
        index: i64,
        min: i64,
        max: i64,
    },
    #[error("the family W(b;a) is empty")]
    EmptyFamily,
}

/// Binomial coefficient with the vanishing convention: `binom(top, bottom)`
/// is the usual value when `top >= bottom` and 0 whenever `top < bottom`
/// (including negative `top`).  `bottom` must be non-negative.
pub fn binom0(top: i64, bottom: i64) -> Result<BigInt, InvariantError> {
    if bottom < 0 {
        return Err(InvariantError::NegativeBottom(bottom));
    }
    Ok(binom0_u(top, bottom as u32))
}

/// Infallible form of [`binom0`] for a non-negative lower index.
pub(crate) fn binom0_u(top: i64, bottom: u32) -> BigInt {
    if top < bottom as i64 {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 1..=bottom as i64 {
        acc *= top - bottom as i64 + i;
        acc /= i; // exact at every step
    }
    acc
}

/// Partial degree sum `ell_i = a_0 + ... + a_{t+i-2} - (b_1 + ... + b_t)`
/// for `1 <= i <= c`.  `ell_1` (the degree of the first flag hypersurface)
/// is defined by the same formula.
pub fn ell(s: &DegreeSpec, i: usize) -> Result<i64, InvariantError> {
    if i < 1 || i > s.c() {
        return Err(InvariantError::IndexOutOfRange {
            what: "ell",
            index: i as i64,
            min: 1,
            max: s.c() as i64,
        });
    }
    let a_part: i64 = s.a()[..=s.t() + i - 2].iter().sum();
    Ok(a_part - s.b_sum())
}

/// The binomial-sum invariant counting matrix parameters modulo
/// automorphisms:
///
/// `sum binom(a_i - b_j + n, n) + sum binom(b_j - a_i + n, n)
///  - sum binom(a_i - a_j + n, n) - sum binom(b_i - b_j + n, n) + 1`,
///
/// with `a`-indices over `0..=t+c-2`, `b`-indices over `1..=t`, and the
/// vanishing binomial convention.  For `c = 2` this is the dimension of a
/// non-empty `W(b;a)`.
pub fn lambda_c(s: &DegreeSpec) -> BigInt {
    let n = s.n() as u32;
    let mut acc = BigInt::one();
    for &ai in s.a() {
        for &bj in s.b() {
            acc += binom0_u(ai - bj + n as i64, n);
            acc += binom0_u(bj - ai + n as i64, n);
        }
    }
    for &ai in s.a() {
        for &aj in s.a() {
            acc -= binom0_u(ai - aj + n as i64, n);
        }
    }
    for &bi in s.b() {
        for &bj in s.b() {
            acc -= binom0_u(bi - bj + n as i64, n);
        }
    }
    acc
}

/// The shifted degree `h_k = 2*a_{t+k+1} - ell_{k+3} + n` entering the
/// correction term `K_{k+3}`.  Defined for `c >= 3` and `0 <= k <= c-3`.
pub fn h_index(s: &DegreeSpec, k: usize) -> Result<i64, InvariantError> {
    if s.c() < 3 || k > s.c() - 3 {
        return Err(InvariantError::IndexOutOfRange {
            what: "h",
            index: k as i64,
            min: 0,
            max: s.c() as i64 - 3,
        });
    }
    let l = ell(s, k + 3)?;
    Ok(2 * s.a_deg(s.t() + k + 1) - l + s.n() as i64)
}

/// Correction term `K_m` for `3 <= m <= c`, by direct enumeration of the
/// index tuples.  With `i = m - 3`:
///
/// `K_m = sum over r+s = i of sum over strictly increasing a-index tuples
/// 0 <= i_1 < ... < i_r <= t+i and weakly increasing b-index tuples
/// 1 <= j_1 <= ... <= j_s <= t of (-1)^(i-r) *
/// binom(h_i + a_{i_1} + ... + a_{i_r} + b_{j_1} + ... + b_{j_s}, n)`.
///
/// Specializes to `K_3 = binom(h_0, n)`.
pub fn k_term(s: &DegreeSpec, m: usize) -> Result<BigInt, InvariantError> {
    let i = k_term_index(s, m)?;
    let h = h_index(s, i)?;
    let n = s.n() as u32;
    let t = s.t();
    let mut total = BigInt::zero();
    for r in 0..=i {
        let s_cnt = i - r;
        let negative = s_cnt % 2 == 1; // (-1)^(i-r) = (-1)^s
        for a_idx in (0..=t + i).combinations(r) {
            let a_sum: i64 = a_idx.iter().map(|&j| s.a_deg(j)).sum();
            for b_idx in (1..=t).combinations_with_replacement(s_cnt) {
                let b_sum: i64 = b_idx.iter().map(|&j| s.b_deg(j)).sum();
                let term = binom0_u(h + a_sum + b_sum, n);
                if negative {
                    total -= term;
                } else {
                    total += term;
                }
            }
        }
    }
    Ok(total)
}

/// Independent second route for `K_m`, used to cross-check [`k_term`].
///
/// Expands the elementary-symmetric generating product
/// `prod_{j=0}^{t+i} (1 + y z^{a_j})` and the complete-homogeneous product
/// `prod_{k=1}^{t} (1 - y z^{b_k})^{-1}` truncated at `y`-degree `i`, pairs
/// coefficients of `y^r` and `y^s` with `r + s = i` and sign `(-1)^s`, and
/// maps each resulting monomial `z^e` to `binom(h_i + e, n)`.
pub fn k_term_oracle(s: &DegreeSpec, m: usize) -> Result<BigInt, InvariantError> {
    let i = k_term_index(s, m)?;
    let h = h_index(s, i)?;
    let n = s.n() as u32;
    let t = s.t();

    // elem[r]: z-exponent -> coefficient, from prod (1 + y z^{a_j})
    let mut elem: Vec<BTreeMap<i64, BigInt>> = vec![BTreeMap::new(); i + 1];
    elem[0].insert(0, BigInt::one());
    for j in 0..=t + i {
        let aj = s.a_deg(j);
        for r in (1..=i).rev() {
            let lower = elem[r - 1].clone();
            for (e, coeff) in lower {
                *elem[r].entry(e + aj).or_insert_with(BigInt::zero) += coeff;
            }
        }
    }

    // complete[s]: z-exponent -> coefficient, from prod (1 - y z^{b_k})^{-1}
    let mut complete: Vec<BTreeMap<i64, BigInt>> = vec![BTreeMap::new(); i + 1];
    complete[0].insert(0, BigInt::one());
    for k in 1..=t {
        let bk = s.b_deg(k);
        let prev = complete.clone();
        for s_deg in 1..=i {
            let mut acc = prev[s_deg].clone();
            // u extra copies of row k on top of what earlier rows built
            for u in 1..=s_deg {
                for (e, coeff) in prev[s_deg - u].iter() {
                    *acc.entry(e + u as i64 * bk).or_insert_with(BigInt::zero) +=
                        coeff.clone();
                }
            }
            complete[s_deg] = acc;
        }
    }

    let mut total = BigInt::zero();
    for r in 0..=i {
        let s_deg = i - r;
        let negative = s_deg % 2 == 1;
        for (e1, c1) in &elem[r] {
            for (e2, c2) in &complete[s_deg] {
                let term = c1 * c2 * binom0_u(h + e1 + e2, n);
                if negative {
                    total -= term;
                } else {
                    total += term;
                }
            }
        }
    }
    Ok(total)
}

fn k_term_index(s: &DegreeSpec, m: usize) -> Result<usize, InvariantError> {
    if s.c() < 3 || m < 3 || m > s.c() {
        return Err(InvariantError::IndexOutOfRange {
            what: "K",
            index: m as i64,
            min: 3,
            max: s.c() as i64,
        });
    }
    Ok(m - 3)
}

/// Conjectured dimension `lambda_c + K_3 + ... + K_c` of a non-empty
/// `W(b;a)` (empty correction sum when `c = 2`).
pub fn conjectured_dim(s: &DegreeSpec) -> Result<BigInt, InvariantError> {
    if !s.is_nonempty() {
        return Err(InvariantError::EmptyFamily);
    }
    let mut total = lambda_c(s);
    for m in 3..=s.c() {
        total += k_term(s, m)?;
    }
    Ok(total)
}

/// The conjectured dimension together with its unconditional status: the
/// value is always an upper bound for `dim W(b;a)`, independently of any
/// hypothesis on the degree data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UpperBound {
    #[serde(with = "crate::bigint_serde")]
    pub value: BigInt,
    pub is_upper_bound: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

pub fn upper_bound_status(s: &DegreeSpec) -> Result<UpperBound, InvariantError> {
    let value = conjectured_dim(s)?;
    let note = counterexample_note(s, &value);
    Ok(UpperBound {
        value,
        is_upper_bound: true,
        note,
    })
}

/// True for the one known family where the conjectured value overshoots:
/// `n = c`, `t = 2`, `b = (0,0)`, `a = (1,...,1)` of length `c+1`
/// (a general reduced set of `c+1` points in `P^c`).
pub fn is_counterexample_family(s: &DegreeSpec) -> bool {
    s.n() as usize == s.c()
        && s.t() == 2
        && s.b().iter().all(|&x| x == 0)
        && s.a().iter().all(|&x| x == 1)
}

fn counterexample_note(s: &DegreeSpec, value: &BigInt) -> Option<String> {
    if is_counterexample_family(s) {
        let c = s.c();
        Some(format!(
            "counterexample family: actual dimension is at most {} < {}",
            c * (c + 1),
            value
        ))
    } else {
        None
    }
}

/// All invariants of one degree sequence in a single serializable bundle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantBundle {
    /// `ell_i` for `1 <= i <= c`.
    pub ell: BTreeMap<usize, i64>,
    #[serde(with = "crate::bigint_serde")]
    pub lambda: BigInt,
    /// `h_k` for `0 <= k <= c-3` (empty for `c = 2`).
    pub h: BTreeMap<usize, i64>,
    /// `K_m` for `3 <= m <= c` (empty for `c = 2`).
    #[serde(rename = "K", with = "crate::bigint_serde::map")]
    pub k_terms: BTreeMap<usize, BigInt>,
    #[serde(with = "crate::bigint_serde")]
    pub conjectured_dim: BigInt,
}

pub fn invariant_bundle(s: &DegreeSpec) -> Result<InvariantBundle, InvariantError> {
    if !s.is_nonempty() {
        return Err(InvariantError::EmptyFamily);
    }
    let mut ell_map = BTreeMap::new();
    for i in 1..=s.c() {
        ell_map.insert(i, ell(s, i)?);
    }
    let mut h_map = BTreeMap::new();
    let mut k_map = BTreeMap::new();
    for m in 3..=s.c() {
        h_map.insert(m - 3, h_index(s, m - 3)?);
        k_map.insert(m, k_term(s, m)?);
    }
    let lambda = lambda_c(s);
    let conjectured = &lambda + k_map.values().sum::<BigInt>();
    Ok(InvariantBundle {
        ell: ell_map,
        lambda,
        h: h_map,
        k_terms: k_map,
        conjectured_dim: conjectured,
    })
}

/// The invariant-bundle identity `conjectured_dim = lambda + sum K_m`.
pub fn bundle_is_consistent(b: &InvariantBundle) -> bool {
    let sum: BigInt = b.k_terms.values().sum();
    b.conjectured_dim == &b.lambda + sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn spec(n: u32, t: usize, c: usize, b: &[i64], a: &[i64]) -> DegreeSpec {
        DegreeSpec::new(n, t, c, b.to_vec(), a.to_vec()).unwrap()
    }

    fn twisted_cubic() -> DegreeSpec {
        spec(3, 2, 2, &[0, 0], &[1, 1, 1])
    }

    /// c+1 general points in P^c as a 2 x (c+1) linear family.
    fn points_family(c: usize) -> DegreeSpec {
        spec(c as u32, 2, c, &[0, 0], &vec![1; c + 1])
    }

    #[test]
    fn binom_convention() {
        assert_eq!(binom0(4, 3).unwrap(), BigInt::from(4));
        assert_eq!(binom0(2, 3).unwrap(), BigInt::from(0));
        assert_eq!(binom0(0, 0).unwrap(), BigInt::from(1));
        // The convention zeroes every top < bottom, including binom(-2, 0).
        assert_eq!(binom0(-2, 0).unwrap(), BigInt::from(0));
        assert_eq!(binom0(-2, 2).unwrap(), BigInt::from(0));
        assert!(matches!(
            binom0(4, -1),
            Err(InvariantError::NegativeBottom(-1))
        ));
    }

    #[test]
    fn binom_against_factorials() {
        // Independent oracle: factorial quotient for small inputs.
        let fact = |k: i64| -> BigInt { (1..=k).product::<i64>().max(1).into() };
        for top in 0..=12i64 {
            for bottom in 0..=top {
                let expect = fact(top) / (fact(bottom) * fact(top - bottom));
                assert_eq!(binom0(top, bottom).unwrap(), expect, "C({top},{bottom})");
            }
        }
    }

    #[test]
    fn ell_direct_summation() {
        // Oracle: direct summation of the defining formula.
        let s = spec(3, 2, 3, &[0, 0], &[1, 1, 1, 1]);
        assert_eq!(ell(&s, 3).unwrap(), 4); // a0+a1+a2+a3
        assert_eq!(ell(&s, 2).unwrap(), 3); // a0+a1+a2
        let s = spec(3, 2, 2, &[1, 1], &[1, 1, 1]);
        assert_eq!(ell(&s, 1).unwrap(), 0); // a0+a1 - (b1+b2)
        assert!(ell(&s, 3).is_err());
        assert!(ell(&s, 0).is_err());
    }

    #[test]
    fn lambda_hand_evaluations() {
        // 24 + 0 - 9 - 4 + 1
        assert_eq!(lambda_c(&twisted_cubic()), BigInt::from(12));
        // 32 + 0 - 16 - 4 + 1
        assert_eq!(lambda_c(&points_family(3)), BigInt::from(13));
        // degenerate empty family: 6 + 6 - 9 - 4 + 1 = 0
        let empty = spec(3, 2, 2, &[0, 0], &[0, 0, 0]);
        assert_eq!(lambda_c(&empty), BigInt::from(0));
    }

    #[test]
    fn h_direct_evaluations() {
        let s = spec(3, 2, 3, &[0, 0], &[1, 1, 1, 1]);
        assert_eq!(h_index(&s, 0).unwrap(), 1); // 2 - 4 + 3
        let s = spec(4, 2, 4, &[0, 0], &[1, 1, 1, 1, 1]);
        assert_eq!(h_index(&s, 1).unwrap(), 1); // 2 - 5 + 4
        assert!(h_index(&s, 2).is_err()); // k = c-2 out of range
        assert!(h_index(&twisted_cubic(), 0).is_err()); // c = 2
    }

    #[test]
    fn k_term_direct_evaluations() {
        let s = spec(3, 2, 3, &[0, 0], &[1, 1, 1, 1]);
        assert_eq!(k_term(&s, 3).unwrap(), BigInt::from(0)); // binom(1, 3)

        // K_4 = 4*binom(2,4) - 2*binom(1,4) = 0
        let s = spec(4, 2, 4, &[0, 0], &[1, 1, 1, 1, 1]);
        assert_eq!(k_term(&s, 4).unwrap(), BigInt::from(0));

        // All binomials vanish when h_i plus the largest index sum stays below n.
        let s = spec(9, 2, 3, &[0, 0], &[1, 1, 1, 1]);
        let h = h_index(&s, 0).unwrap();
        assert!(h < 9);
        assert_eq!(k_term(&s, 3).unwrap(), BigInt::from(0));
    }

    #[test]
    fn k_term_nonzero_case_agrees_with_oracle() {
        // A family where the K-terms actually contribute.
        let s = spec(3, 2, 4, &[0, 0], &[1, 1, 2, 2, 3]);
        for m in 3..=4 {
            let direct = k_term(&s, m).unwrap();
            let oracle = k_term_oracle(&s, m).unwrap();
            assert_eq!(direct, oracle, "K_{m}");
        }
    }

    #[test]
    fn k3_oracle_is_plain_binomial() {
        let s = spec(3, 2, 3, &[0, 0], &[1, 1, 2, 2]);
        let h = h_index(&s, 0).unwrap();
        assert_eq!(
            k_term_oracle(&s, 3).unwrap(),
            binom0(h, s.n() as i64).unwrap()
        );
    }

    #[test]
    fn conjectured_dim_examples() {
        assert_eq!(conjectured_dim(&twisted_cubic()).unwrap(), BigInt::from(12));
        assert_eq!(conjectured_dim(&points_family(3)).unwrap(), BigInt::from(13));
        let empty = spec(3, 2, 2, &[0, 0], &[0, 0, 0]);
        assert_eq!(conjectured_dim(&empty), Err(InvariantError::EmptyFamily));
    }

    #[test]
    fn points_family_closed_form() {
        // c(c+1) + c - 2 for the c+1 points family, c = 3..8.
        for c in 3..=8usize {
            let expect = BigInt::from(c * (c + 1) + c - 2);
            assert_eq!(conjectured_dim(&points_family(c)).unwrap(), expect, "c={c}");
        }
    }

    #[test]
    fn upper_bound_examples() {
        let ub = upper_bound_status(&points_family(3)).unwrap();
        assert_eq!(ub.value, BigInt::from(13));
        assert!(ub.is_upper_bound);
        assert!(ub.note.unwrap().contains("12"));

        let ub = upper_bound_status(&twisted_cubic()).unwrap();
        assert_eq!(ub.value, BigInt::from(12));
        assert!(ub.note.is_none());

        let empty = spec(3, 2, 2, &[0, 0], &[0, 0, 0]);
        assert_eq!(
            upper_bound_status(&empty),
            Err(InvariantError::EmptyFamily)
        );
    }

    #[test]
    fn bundle_identity_and_json_keys() {
        let b = invariant_bundle(&points_family(3)).unwrap();
        assert!(bundle_is_consistent(&b));
        let json = serde_json::to_value(&b).unwrap();
        for key in ["ell", "lambda", "h", "K", "conjectured_dim"] {
            assert!(json.get(key).is_some(), "missing key {key}");
        }
        assert_eq!(json["conjectured_dim"], serde_json::json!("13"));
        let back: InvariantBundle = serde_json::from_value(json).unwrap();
        assert_eq!(back, b);
    }

    fn rand_spec(state: &mut u64, t_max: usize, c_max: usize) -> DegreeSpec {
        let mut next = move |m: u64| {
            *state ^= *state << 13;
            *state ^= *state >> 7;
            *state ^= *state << 17;
            *state % m
        };
        let t = 2 + next(t_max as u64 - 1) as usize;
        let c = 2 + next(c_max as u64 - 1) as usize;
        let n = 1 + next(8) as u32;
        let mut b: Vec<i64> = (0..t).map(|_| next(7) as i64 - 3).collect();
        let mut a: Vec<i64> = (0..t + c - 1).map(|_| next(7) as i64 - 3).collect();
        b.sort();
        a.sort();
        DegreeSpec::new(n, t, c, b, a).unwrap()
    }

    #[test]
    fn k_term_oracle_equivalence_random() {
        // 1000 random specs with entries in [-3,3], t <= 4, c <= 6.
        let mut state = 0x9e3779b97f4a7c15u64;
        for trial in 0..1000 {
            let s = rand_spec(&mut state, 4, 6);
            for m in 3..=s.c() {
                assert_eq!(
                    k_term(&s, m).unwrap(),
                    k_term_oracle(&s, m).unwrap(),
                    "trial {trial}, K_{m}, spec {s:?}"
                );
            }
        }
    }

    proptest! {
        #[test]
        fn lambda_shift_invariance(shift in -5i64..=5, seed in any::<u64>()) {
            let mut state = seed | 1;
            let s = rand_spec(&mut state, 4, 5);
            let b: Vec<i64> = s.b().iter().map(|x| x + shift).collect();
            let a: Vec<i64> = s.a().iter().map(|x| x + shift).collect();
            let shifted = DegreeSpec::new(s.n(), s.t(), s.c(), b, a).unwrap();
            prop_assert_eq!(lambda_c(&s), lambda_c(&shifted));
        }

        #[test]
        fn binom_symmetry(x in 0i64..40, n in 0i64..40) {
            if x >= n {
                prop_assert_eq!(binom0(x, n).unwrap(), binom0(x, x - n).unwrap());
            }
        }

        #[test]
        fn c2_dimension_is_lambda(seed in any::<u64>()) {
            let mut state = seed | 1;
            let s = rand_spec(&mut state, 4, 2);
            if s.is_nonempty() {
                prop_assert_eq!(conjectured_dim(&s).unwrap(), lambda_c(&s));
            }
        }
    }
}
