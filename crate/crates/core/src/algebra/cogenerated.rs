//! Cogenerated (mixed determinantal) ideals and the height formula check.
//!
//! For a `p x q` grid and index data `(alpha; beta)` the cogenerated ideal
//! is generated by all `(m+1)`-minors of the full grid, all `i`-minors of
//! the rows before row `alpha_i`, and all `i`-minors of the columns before
//! column `beta_i`, for `i = 1..m`.  For a matrix of indeterminates (and,
//! for positive entry degrees and enough variables, for a general
//! homogeneous matrix) its height is
//! `p*q - (p+q+1)*m + sum(alpha_i + beta_i)`.

use super::dimension::dimension_of_ideal;
use super::field::PrimeField;
use super::groebner::{Budget, Ideal};
use super::matrix::{MinorCache, PolyMatrix};
use super::poly::{PolyRing, SparsePoly};
use super::rng::DetRng;
use super::AlgebraError;
use itertools::Itertools;

/// Row/column index data `(alpha; beta)` cogenerating a mixed determinantal
/// ideal on a `p x q` grid: `1 <= alpha_1 < ... < alpha_m <= p` and
/// `1 <= beta_1 < ... < beta_m <= q` with `m <= min(p, q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CogeneratedSpec {
    p: usize,
    q: usize,
    m: usize,
    alpha: Vec<usize>,
    beta: Vec<usize>,
}

impl CogeneratedSpec {
    pub fn new(
        p: usize,
        q: usize,
        alpha: Vec<usize>,
        beta: Vec<usize>,
    ) -> Result<Self, AlgebraError> {
        let m = alpha.len();
        if beta.len() != m {
            return Err(AlgebraError::Shape(
                "alpha and beta must have the same length".into(),
            ));
        }
        if m == 0 || m > p.min(q) {
            return Err(AlgebraError::Shape(format!(
                "need 1 <= m <= min(p, q), got m = {m} on a {p} x {q} grid"
            )));
        }
        let strictly_increasing_in =
            |v: &[usize], hi: usize| v.windows(2).all(|w| w[0] < w[1]) && v[0] >= 1 && v[m - 1] <= hi;
        if !strictly_increasing_in(&alpha, p) {
            return Err(AlgebraError::Shape(
                "alpha must be strictly increasing in 1..=p".into(),
            ));
        }
        if !strictly_increasing_in(&beta, q) {
            return Err(AlgebraError::Shape(
                "beta must be strictly increasing in 1..=q".into(),
            ));
        }
        Ok(CogeneratedSpec { p, q, m, alpha, beta })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn alpha(&self) -> &[usize] {
        &self.alpha
    }

    pub fn beta(&self) -> &[usize] {
        &self.beta
    }
}

/// Generators of the cogenerated ideal, exactly as defined: `(m+1)`-minors
/// of the whole grid plus the leading-row and leading-column minors.
pub fn cogenerated_ideal(
    ring: &PolyRing,
    grid: &PolyMatrix,
    cs: &CogeneratedSpec,
) -> Result<Ideal, AlgebraError> {
    if grid.nrows() != cs.p || grid.ncols() != cs.q {
        return Err(AlgebraError::Shape(format!(
            "grid is {} x {}, spec wants {} x {}",
            grid.nrows(),
            grid.ncols(),
            cs.p,
            cs.q
        )));
    }
    let mut cache = MinorCache::new(ring, grid);
    let mut gens: Vec<SparsePoly> = Vec::new();
    let mut push_minors = |cache: &mut MinorCache, size: usize, rows: &[usize], cols: &[usize]| {
        if size == 0 || rows.len() < size || cols.len() < size {
            return;
        }
        for rs in rows.iter().combinations(size) {
            let row_mask = rs.iter().fold(0u32, |m, &&i| m | 1 << i);
            for csel in cols.iter().combinations(size) {
                let col_mask = csel.iter().fold(0u32, |m, &&j| m | 1 << j);
                let minor = cache.minor(row_mask, col_mask);
                if !minor.is_zero() {
                    gens.push(minor);
                }
            }
        }
    };

    let all_rows: Vec<usize> = (0..cs.p).collect();
    let all_cols: Vec<usize> = (0..cs.q).collect();
    push_minors(&mut cache, cs.m + 1, &all_rows, &all_cols);
    for i in 1..=cs.m {
        let leading_rows: Vec<usize> = (0..cs.alpha[i - 1] - 1).collect();
        push_minors(&mut cache, i, &leading_rows, &all_cols);
        let leading_cols: Vec<usize> = (0..cs.beta[i - 1] - 1).collect();
        push_minors(&mut cache, i, &all_rows, &leading_cols);
    }

    // Drop duplicate generators up to sign.
    let mut seen: Vec<SparsePoly> = Vec::new();
    for g in gens {
        let neg = ring.neg(&g);
        if !seen.iter().any(|h| *h == g || *h == neg) {
            seen.push(g);
        }
    }
    Ok(Ideal::new(seen))
}

/// Entry degrees for a `p x q` grid: entry `(i, j)` has degree
/// `row[i] - col[j]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridDegrees {
    pub row: Vec<i64>,
    pub col: Vec<i64>,
}

impl GridDegrees {
    /// Constant entry degree `d` everywhere.
    pub fn constant(p: usize, q: usize, d: i64) -> Self {
        GridDegrees {
            row: vec![d; p],
            col: vec![0; q],
        }
    }
}

/// Generic dense grid with the prescribed entry degrees (all must be
/// positive for the height theorem; zero or negative degrees are rejected
/// here since the check has no meaning for them).
pub fn build_generic_grid(
    ring: &PolyRing,
    degrees: &GridDegrees,
    rng: &mut DetRng,
) -> Result<PolyMatrix, AlgebraError> {
    let mut rows = Vec::with_capacity(degrees.row.len());
    for &rd in &degrees.row {
        let mut row = Vec::with_capacity(degrees.col.len());
        for &cd in &degrees.col {
            let d = rd - cd;
            if d <= 0 {
                return Err(AlgebraError::HypothesisViolated(format!(
                    "entry degree {d} is not positive"
                )));
            }
            row.push(ring.random_homogeneous(d as u32, rng));
        }
        rows.push(row);
    }
    Ok(PolyMatrix::new(rows))
}

/// Height predicted by the cogenerated-ideal formula:
/// `p*q - (p+q+1)*m + sum(alpha_i + beta_i)`.
pub fn predicted_height(cs: &CogeneratedSpec) -> i64 {
    let sum: usize = cs.alpha.iter().sum::<usize>() + cs.beta.iter().sum::<usize>();
    (cs.p * cs.q) as i64 - ((cs.p + cs.q + 1) * cs.m) as i64 + sum as i64
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeightCheck {
    pub predicted: i64,
    pub observed: usize,
    pub matches: bool,
    /// The theorem also asserts Cohen-Macaulayness; only the height is
    /// verified here.
    pub cm_note: &'static str,
}

/// Builds a generic grid over `F_p` in `n+1` variables, forms the
/// cogenerated ideal and compares its Groebner codimension with the
/// predicted height.  Hypotheses: positive entry degrees and
/// `n + 1 >= predicted`.
pub fn height_check(
    cs: &CogeneratedSpec,
    degrees: &GridDegrees,
    n: u32,
    field: PrimeField,
    seed: u64,
    budget: &Budget,
) -> Result<HeightCheck, AlgebraError> {
    if degrees.row.len() != cs.p || degrees.col.len() != cs.q {
        return Err(AlgebraError::Shape("degree data does not fit the grid".into()));
    }
    let predicted = predicted_height(cs);
    if (n as i64 + 1) < predicted {
        return Err(AlgebraError::HypothesisViolated(format!(
            "need n + 1 >= predicted height {predicted}, have n = {n}"
        )));
    }
    let ring = PolyRing::new(n as usize + 1, field);
    let mut rng = DetRng::new(seed);
    let grid = build_generic_grid(&ring, degrees, &mut rng)?;
    let mut ideal = cogenerated_ideal(&ring, &grid, cs)?;
    let report = dimension_of_ideal(&ring, &mut ideal, budget)?;
    Ok(HeightCheck {
        predicted,
        observed: report.codim,
        matches: predicted == report.codim as i64,
        cm_note: "Cohen-Macaulayness not verified (height only)",
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::matrix::{build_generic_matrix, maximal_minors};
    use crate::algebra::DEFAULT_PRIME;
    use crate::degrees::DegreeSpec;

    fn field() -> PrimeField {
        PrimeField::new(DEFAULT_PRIME).unwrap()
    }

    #[test]
    fn full_row_prefix_recovers_maximal_minors() {
        // (alpha; beta) = (1..t-1; 1..t-1) on the t x (t+c-1) grid is the
        // ideal of maximal minors.
        let s = DegreeSpec::new(4, 3, 2, vec![0, 0, 0], vec![1, 1, 1, 1]).unwrap();
        let m = build_generic_matrix(&s, field(), 3).unwrap();
        let cs = CogeneratedSpec::new(3, 4, vec![1, 2], vec![1, 2]).unwrap();
        let cog = cogenerated_ideal(m.ring(), m.grid(), &cs).unwrap();
        let max = m.minors_ideal();
        // Same generators up to sign and order.
        assert_eq!(cog.gens().len(), max.gens().len());
        for g in max.gens() {
            let neg = m.ring().neg(g);
            assert!(cog.gens().iter().any(|h| *h == *g || *h == neg));
        }
    }

    #[test]
    fn beta_shift_adds_leading_column_entries() {
        // (1; 2) on a 2 x 4 grid: 2-minors of everything plus the first
        // column entries.
        let s = DegreeSpec::new(5, 2, 3, vec![0, 0], vec![1, 1, 1, 1]).unwrap();
        let m = build_generic_matrix(&s, field(), 9).unwrap();
        let cs = CogeneratedSpec::new(2, 4, vec![1], vec![2]).unwrap();
        let cog = cogenerated_ideal(m.ring(), m.grid(), &cs).unwrap();
        // 6 two-minors + 2 column entries
        assert_eq!(cog.gens().len(), 8);
        let linear = cog
            .gens()
            .iter()
            .filter(|g| g.homogeneous_degree() == Some(1))
            .count();
        assert_eq!(linear, 2);
    }

    #[test]
    fn full_tuple_is_degenerate() {
        // m = min(p, q) leaves no minors at all: the zero ideal.
        let s = DegreeSpec::new(5, 2, 3, vec![0, 0], vec![1, 1, 1, 1]).unwrap();
        let m = build_generic_matrix(&s, field(), 1).unwrap();
        let cs = CogeneratedSpec::new(2, 4, vec![1, 2], vec![1, 2]).unwrap();
        let cog = cogenerated_ideal(m.ring(), m.grid(), &cs).unwrap();
        assert!(cog.gens().is_empty());
    }

    #[test]
    fn mixed_determinantal_identification() {
        // For alpha = (1..m) the definition collapses onto column-deletion
        // ideals: I_{m+1}(full) + sum_i I_i(first beta_i - 1 columns).
        let s = DegreeSpec::new(5, 3, 3, vec![0, 0, 0], vec![1, 1, 1, 1, 1]).unwrap();
        let m = build_generic_matrix(&s, field(), 13).unwrap();
        let cs = CogeneratedSpec::new(3, 5, vec![1, 2], vec![1, 3]).unwrap();
        let cog = cogenerated_ideal(m.ring(), m.grid(), &cs).unwrap();

        let ring = m.ring();
        let mut expect: Vec<SparsePoly> = Vec::new();
        let three = maximal_minors(ring, m.grid(), 3, None).unwrap();
        expect.extend(three.gens().iter().cloned());
        // i = 2, beta_2 = 3: 2-minors of the first two columns.
        let two = maximal_minors(ring, m.grid(), 2, Some(&[0, 1])).unwrap();
        expect.extend(two.gens().iter().cloned());
        assert_eq!(cog.gens().len(), expect.len());
        for g in &expect {
            let neg = ring.neg(g);
            assert!(cog.gens().iter().any(|h| *h == *g || *h == neg));
        }
    }

    #[test]
    fn predicted_height_examples() {
        let cs = CogeneratedSpec::new(2, 4, vec![1], vec![1]).unwrap();
        assert_eq!(predicted_height(&cs), 3); // 8 - 7 + 2
        let cs = CogeneratedSpec::new(2, 4, vec![1], vec![2]).unwrap();
        assert_eq!(predicted_height(&cs), 4); // 8 - 7 + 3
    }

    #[test]
    fn maximal_minor_case_reduces_to_c() {
        // (1..t-1; 1..t-1) on t x (t+c-1): the formula collapses to c.
        for t in 2..=5usize {
            for c in 2..=6usize {
                let idx: Vec<usize> = (1..t).collect();
                let cs = CogeneratedSpec::new(t, t + c - 1, idx.clone(), idx).unwrap();
                assert_eq!(predicted_height(&cs), c as i64, "t={t} c={c}");
            }
        }
    }

    #[test]
    fn height_check_small_linear() {
        let cs = CogeneratedSpec::new(2, 4, vec![1], vec![1]).unwrap();
        let degrees = GridDegrees::constant(2, 4, 1);
        let hc = height_check(&cs, &degrees, 5, field(), 1, &Budget::default()).unwrap();
        assert_eq!(hc.predicted, 3);
        assert_eq!(hc.observed, 3);
        assert!(hc.matches);
    }

    #[test]
    fn height_check_beta_two() {
        let cs = CogeneratedSpec::new(2, 4, vec![1], vec![2]).unwrap();
        let degrees = GridDegrees::constant(2, 4, 1);
        let hc = height_check(&cs, &degrees, 5, field(), 2, &Budget::default()).unwrap();
        assert_eq!(hc.predicted, 4);
        assert_eq!(hc.observed, 4);
        assert!(hc.matches);
    }

    #[test]
    fn height_check_rejects_small_ambient() {
        let cs = CogeneratedSpec::new(2, 4, vec![1], vec![1]).unwrap();
        let degrees = GridDegrees::constant(2, 4, 1);
        assert!(matches!(
            height_check(&cs, &degrees, 1, field(), 1, &Budget::default()),
            Err(AlgebraError::HypothesisViolated(_))
        ));
    }

    #[test]
    fn spec_validation() {
        assert!(CogeneratedSpec::new(2, 4, vec![1, 1], vec![1, 2]).is_err());
        assert!(CogeneratedSpec::new(2, 4, vec![1, 2, 3], vec![1, 2, 3]).is_err());
        assert!(CogeneratedSpec::new(2, 4, vec![], vec![]).is_err());
        assert!(CogeneratedSpec::new(2, 4, vec![3], vec![1]).is_err());
    }
}
