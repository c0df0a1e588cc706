//! Dimension identity for sums of submaximal and maximal minor ideals
//! along the column-deletion flag.

use super::dimension::dimension_of_ideal;
use super::groebner::{Budget, Ideal};
use super::matrix::{maximal_minors, DegMatrix};
use super::AlgebraError;

/// Both sides of the identity
/// `dim R/(I_{t-1}(phi_i) + I_t(phi_{c-1})) = dim D_{c-1} - i - 1`
/// (Krull dimensions of the affine cones).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MixedSumDims {
    /// `dim R/(I_{t-1}(phi_i) + I_t(phi_{c-1}))`, computed by Groebner.
    pub lhs_dim: usize,
    /// `dim D_{c-1} = dim R/I_t(phi_{c-1})`.
    pub dim_d: usize,
    /// `dim D_{c-1} - i - 1`, the value the identity predicts.
    pub rhs_dim: i64,
}

impl MixedSumDims {
    pub fn matches(&self) -> bool {
        self.lhs_dim as i64 == self.rhs_dim
    }
}

/// Computes both sides of the identity for `i = 1` or `i = 2`.
///
/// Hypotheses: `a_0 > b_t`; `c >= 3` for `i = 1`, and `c >= 4` with
/// `dim D_{c-1} >= 3` for `i = 2`.  Equality is expected for general
/// matrices and for the staggered monomial construction.
pub fn mixed_sum_dimension_check(
    m: &DegMatrix,
    i: usize,
    budget: &Budget,
) -> Result<MixedSumDims, AlgebraError> {
    if !(1..=2).contains(&i) {
        return Err(AlgebraError::Shape(format!("i must be 1 or 2, got {i}")));
    }
    let s = m.spec();
    let (t, c) = (s.t(), s.c());
    if i == 1 && c < 3 {
        return Err(AlgebraError::HypothesisViolated(
            "the i = 1 identity needs c >= 3".into(),
        ));
    }
    if i == 2 && c < 4 {
        return Err(AlgebraError::HypothesisViolated(
            "the i = 2 identity needs c >= 4".into(),
        ));
    }
    if s.a_deg(0) <= s.b_deg(t) {
        return Err(AlgebraError::HypothesisViolated(format!(
            "needs a_0 > b_t, got a_0 = {} and b_t = {}",
            s.a_deg(0),
            s.b_deg(t)
        )));
    }

    let ring = m.ring();
    let phi_i = m.flag_matrix(i);
    let sub = maximal_minors(ring, &phi_i, t - 1, None)?;
    let phi_last = m.flag_matrix(c - 1);
    let max = maximal_minors(ring, &phi_last, t, None)?;

    let mut d_ideal = Ideal::new(max.gens().to_vec());
    let dim_d = dimension_of_ideal(ring, &mut d_ideal, budget)?.krull_dim;
    if i == 2 && dim_d < 3 {
        return Err(AlgebraError::HypothesisViolated(format!(
            "the i = 2 identity needs dim D_(c-1) >= 3, got {dim_d}"
        )));
    }

    let mut sum_gens = sub.gens().to_vec();
    sum_gens.extend(max.gens().iter().cloned());
    let mut sum_ideal = Ideal::new(sum_gens);
    let lhs_dim = dimension_of_ideal(ring, &mut sum_ideal, budget)?.krull_dim;

    Ok(MixedSumDims {
        lhs_dim,
        dim_d,
        rhs_dim: dim_d as i64 - i as i64 - 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::PrimeField;
    use crate::algebra::matrix::{build_generic_matrix, build_staggered_monomial_matrix};
    use crate::algebra::DEFAULT_PRIME;
    use crate::degrees::DegreeSpec;

    fn field() -> PrimeField {
        PrimeField::new(DEFAULT_PRIME).unwrap()
    }

    #[test]
    fn identity_holds_for_staggered_c3() {
        let s = DegreeSpec::new(4, 2, 3, vec![0, 0], vec![1, 1, 1, 1]).unwrap();
        let m = build_staggered_monomial_matrix(&s, field()).unwrap();
        let dims = mixed_sum_dimension_check(&m, 1, &Budget::default()).unwrap();
        assert!(dims.matches(), "{dims:?}");
    }

    #[test]
    fn identity_holds_for_generic_c3() {
        let s = DegreeSpec::new(4, 2, 3, vec![0, 0], vec![1, 1, 1, 1]).unwrap();
        let m = build_generic_matrix(&s, field(), 17).unwrap();
        let dims = mixed_sum_dimension_check(&m, 1, &Budget::default()).unwrap();
        assert!(dims.matches(), "{dims:?}");
    }

    #[test]
    fn hypothesis_gate() {
        // a_0 = b_t: rejected.
        let s = DegreeSpec::new(4, 2, 3, vec![0, 0], vec![0, 1, 1, 1]).unwrap();
        let m = build_generic_matrix(&s, field(), 1).unwrap();
        assert!(matches!(
            mixed_sum_dimension_check(&m, 1, &Budget::default()),
            Err(AlgebraError::HypothesisViolated(_))
        ));
        // c = 2 has no flag identity.
        let s = DegreeSpec::new(3, 2, 2, vec![0, 0], vec![1, 1, 1]).unwrap();
        let m = build_generic_matrix(&s, field(), 1).unwrap();
        assert!(matches!(
            mixed_sum_dimension_check(&m, 1, &Budget::default()),
            Err(AlgebraError::HypothesisViolated(_))
        ));
    }
}
