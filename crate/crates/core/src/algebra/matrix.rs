//! Homogeneous matrices, their minors, and the explicit matrix
//! constructions used as witnesses: generic dense matrices, the
//! identity-plus-banded-monomial non-emptiness witness, and the two-row
//! staggered monomial matrix.

use super::field::PrimeField;
use super::groebner::Ideal;
use super::monomial::Monomial;
use super::poly::{PolyRing, SparsePoly};
use super::rng::DetRng;
use super::AlgebraError;
use crate::degrees::DegreeSpec;
use itertools::Itertools;
use std::collections::HashMap;
use std::fmt;

/// Plain grid of polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    entries: Vec<Vec<SparsePoly>>,
}

impl PolyMatrix {
    pub fn new(entries: Vec<Vec<SparsePoly>>) -> Self {
        if let Some(first) = entries.first() {
            let w = first.len();
            assert!(entries.iter().all(|row| row.len() == w));
        }
        PolyMatrix { entries }
    }

    pub fn nrows(&self) -> usize {
        self.entries.len()
    }

    pub fn ncols(&self) -> usize {
        self.entries.first().map_or(0, |r| r.len())
    }

    pub fn entry(&self, i: usize, j: usize) -> &SparsePoly {
        &self.entries[i][j]
    }

    /// The submatrix of the first `count` columns.
    pub fn leading_columns(&self, count: usize) -> PolyMatrix {
        assert!(count <= self.ncols());
        PolyMatrix {
            entries: self
                .entries
                .iter()
                .map(|row| row[..count].to_vec())
                .collect(),
        }
    }
}

/// Laplace expansion with memoization on (row set, column set); the key
/// space is tiny because minors are taken from matrices with at most a few
/// dozen rows and columns.
pub struct MinorCache<'a> {
    ring: &'a PolyRing,
    matrix: &'a PolyMatrix,
    memo: HashMap<(u32, u32), SparsePoly>,
}

impl<'a> MinorCache<'a> {
    pub fn new(ring: &'a PolyRing, matrix: &'a PolyMatrix) -> Self {
        assert!(matrix.nrows() <= 32 && matrix.ncols() <= 32);
        MinorCache {
            ring,
            matrix,
            memo: HashMap::new(),
        }
    }

    /// Determinant of the square submatrix on the given row/column bitmasks.
    pub fn minor(&mut self, rows: u32, cols: u32) -> SparsePoly {
        debug_assert_eq!(rows.count_ones(), cols.count_ones());
        if rows == 0 {
            return self.ring.constant(1);
        }
        if let Some(hit) = self.memo.get(&(rows, cols)) {
            return hit.clone();
        }
        let r0 = rows.trailing_zeros() as usize;
        let rest_rows = rows & (rows - 1);
        let mut acc = SparsePoly::zero();
        let col_list: Vec<usize> = (0..32).filter(|j| cols & (1 << j) != 0).collect();
        for (k, &j) in col_list.iter().enumerate() {
            let e = self.matrix.entry(r0, j);
            if e.is_zero() {
                continue;
            }
            let sub = self.minor(rest_rows, cols & !(1 << j));
            let term = self.ring.mul(e, &sub);
            acc = if k % 2 == 0 {
                self.ring.add(&acc, &term)
            } else {
                self.ring.sub(&acc, &term)
            };
        }
        self.memo.insert((rows, cols), acc.clone());
        acc
    }
}

/// All `size x size` minors of the selected columns (all columns when
/// `cols` is `None`), over all row subsets of that size.  Identically zero
/// minors are dropped from the generator list.
pub fn maximal_minors(
    ring: &PolyRing,
    matrix: &PolyMatrix,
    size: usize,
    cols: Option<&[usize]>,
) -> Result<Ideal, AlgebraError> {
    let all_cols: Vec<usize>;
    let col_pool: &[usize] = match cols {
        Some(c) => c,
        None => {
            all_cols = (0..matrix.ncols()).collect();
            &all_cols
        }
    };
    if size == 0 || size > matrix.nrows() || size > col_pool.len() {
        return Err(AlgebraError::Shape(format!(
            "cannot take {size} x {size} minors of a {} x {} selection",
            matrix.nrows(),
            col_pool.len()
        )));
    }
    if col_pool.iter().any(|&j| j >= matrix.ncols()) {
        return Err(AlgebraError::Shape("column index out of range".into()));
    }
    let mut cache = MinorCache::new(ring, matrix);
    let mut gens = Vec::new();
    for rows in (0..matrix.nrows()).combinations(size) {
        let row_mask = rows.iter().fold(0u32, |m, &i| m | 1 << i);
        for cs in col_pool.iter().combinations(size) {
            let col_mask = cs.iter().fold(0u32, |m, &&j| m | 1 << j);
            let minor = cache.minor(row_mask, col_mask);
            if !minor.is_zero() {
                gens.push(minor);
            }
        }
    }
    Ok(Ideal::new(gens))
}

/// A `t x (t+c-1)` homogeneous matrix realizing a degree sequence: entry
/// `(i, j)` is zero or homogeneous of degree `a_j - b_i` (1-based row `i`,
/// 0-based column `j`); entries of negative prescribed degree are zero.
#[derive(Debug, Clone)]
pub struct DegMatrix {
    spec: DegreeSpec,
    ring: PolyRing,
    grid: PolyMatrix,
}

impl DegMatrix {
    pub fn new(spec: DegreeSpec, ring: PolyRing, grid: PolyMatrix) -> Result<Self, AlgebraError> {
        if grid.nrows() != spec.t() || grid.ncols() != spec.cols() {
            return Err(AlgebraError::Shape(format!(
                "grid is {} x {}, expected {} x {}",
                grid.nrows(),
                grid.ncols(),
                spec.t(),
                spec.cols()
            )));
        }
        for i in 1..=spec.t() {
            for j in 0..spec.cols() {
                let want = spec.entry_degree(i, j);
                let e = grid.entry(i - 1, j);
                if e.is_zero() {
                    continue;
                }
                match e.homogeneous_degree() {
                    Some(d) if want >= 0 && d as i64 == want => {}
                    _ => {
                        return Err(AlgebraError::Shape(format!(
                            "entry ({i},{j}) must be zero or homogeneous of degree {want}"
                        )))
                    }
                }
            }
        }
        Ok(DegMatrix { spec, ring, grid })
    }

    pub fn spec(&self) -> &DegreeSpec {
        &self.spec
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn grid(&self) -> &PolyMatrix {
        &self.grid
    }

    /// The matrix of the k-th flag scheme: the first `t + k - 1` columns
    /// (`1 <= k <= c`); `k = c` is the full matrix.
    pub fn flag_matrix(&self, k: usize) -> PolyMatrix {
        assert!((1..=self.spec.c()).contains(&k));
        self.grid.leading_columns(self.spec.t() + k - 1)
    }

    /// Ideal of maximal minors of the full matrix.
    pub fn minors_ideal(&self) -> Ideal {
        maximal_minors(&self.ring, &self.grid, self.spec.t(), None)
            .expect("t x t minors of a t x (t+c-1) matrix always exist")
    }

    /// Plain-text export: header `t q p`, then one comma-separated row of
    /// polynomial strings per matrix row.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{} {} {}\n",
            self.spec.t(),
            self.spec.cols(),
            self.ring.field.characteristic()
        );
        for i in 0..self.grid.nrows() {
            let row: Vec<String> = (0..self.grid.ncols())
                .map(|j| self.grid.entry(i, j).to_string())
                .collect();
            out.push_str(&row.join(", "));
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for DegMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Generic dense matrix for the degree sequence: every entry of
/// non-negative prescribed degree is a random dense homogeneous polynomial,
/// negative-degree entries are zero.  Deterministic in `(field, seed)`.
pub fn build_generic_matrix(
    spec: &DegreeSpec,
    field: PrimeField,
    seed: u64,
) -> Result<DegMatrix, AlgebraError> {
    let ring = PolyRing::new(spec.n() as usize + 1, field);
    let mut rng = DetRng::new(seed);
    let mut rows = Vec::with_capacity(spec.t());
    for i in 1..=spec.t() {
        let mut row = Vec::with_capacity(spec.cols());
        for j in 0..spec.cols() {
            let d = spec.entry_degree(i, j);
            if d < 0 {
                row.push(SparsePoly::zero());
            } else {
                row.push(ring.random_homogeneous(d as u32, &mut rng));
            }
        }
        rows.push(row);
    }
    DegMatrix::new(spec.clone(), ring, PolyMatrix::new(rows))
}

/// Non-emptiness witness.  Rows with `a_{i-1} = b_i` receive a unit in
/// column `i-1`; the remaining rows and columns carry a banded monomial
/// matrix in `x_0..x_{c-1}` whose maximal minors cut out exactly
/// `{x_0 = ... = x_{c-1} = 0}`, so the full ideal of maximal minors has
/// codimension `c`.  A single strict row degenerates to a regular-sequence
/// row.  Requires a non-empty family and `c <= n + 1` variables.
pub fn build_block_matrix(spec: &DegreeSpec, field: PrimeField) -> Result<DegMatrix, AlgebraError> {
    if !spec.is_nonempty() {
        return Err(AlgebraError::EmptyFamily);
    }
    let nvars = spec.n() as usize + 1;
    if spec.c() > nvars {
        return Err(AlgebraError::Shape(format!(
            "banded witness needs at least c = {} variables, have {}",
            spec.c(),
            nvars
        )));
    }
    let ring = PolyRing::new(nvars, field);
    let t = spec.t();
    let unit_rows: Vec<usize> = (1..=t)
        .filter(|&i| spec.a_deg(i - 1) == spec.b_deg(i))
        .collect();
    let unit_cols: Vec<usize> = unit_rows.iter().map(|&i| i - 1).collect();
    let strict_rows: Vec<usize> = (1..=t).filter(|i| !unit_rows.contains(i)).collect();
    let kept_cols: Vec<usize> = (0..spec.cols())
        .filter(|j| !unit_cols.contains(j))
        .collect();

    let mut rows = vec![vec![SparsePoly::zero(); spec.cols()]; t];
    for &i in &unit_rows {
        rows[i - 1][i - 1] = ring.constant(1);
    }
    // Banded block: sub-row k (1-based) places x_{j-k+1} in kept column
    // position j whenever 0 <= j-k+1 <= c-1.
    let c = spec.c();
    for (k_off, &i) in strict_rows.iter().enumerate() {
        let k = k_off + 1;
        for (j_off, &j) in kept_cols.iter().enumerate() {
            let var = j_off as i64 - (k as i64 - 1);
            if (0..c as i64).contains(&var) {
                let d = spec.entry_degree(i, j);
                debug_assert!(d > 0, "strict block degrees are positive");
                rows[i - 1][j] =
                    ring.monomial(Monomial::var_power(nvars, var as usize, d as u16), 1);
            }
        }
    }
    DegMatrix::new(spec.clone(), ring, PolyMatrix::new(rows))
}

/// Two-row staggered monomial matrix `[C | D]`: `C` has rows
/// `(x0^(a0-b1), x1^(a1-b1))`, `(x2^(a0-b2), x3^(a1-b2))` and `D` staggers
/// `x4..x_{c+1}` powers so that deleting the last column leaves a matrix
/// whose maximal minors together with the entries of `C` cut out a linear
/// subspace.  Requires `t = 2`, `c >= 3`, `n >= c + 1` and `a_0 > b_t`.
pub fn build_staggered_monomial_matrix(
    spec: &DegreeSpec,
    field: PrimeField,
) -> Result<DegMatrix, AlgebraError> {
    if spec.t() != 2 {
        return Err(AlgebraError::Shape(format!(
            "staggered matrix needs t = 2, got t = {}",
            spec.t()
        )));
    }
    let c = spec.c();
    if c < 3 {
        return Err(AlgebraError::Shape(format!(
            "staggered matrix needs c >= 3, got c = {c}"
        )));
    }
    if (spec.n() as usize) < c + 1 {
        return Err(AlgebraError::Shape(format!(
            "staggered matrix uses x0..x{}, needs n >= {}",
            c + 1,
            c + 1
        )));
    }
    if spec.a_deg(0) <= spec.b_deg(2) {
        return Err(AlgebraError::Shape(
            "staggered matrix needs positive entry degrees (a_0 > b_t)".into(),
        ));
    }
    let nvars = spec.n() as usize + 1;
    let ring = PolyRing::new(nvars, field);
    let pow = |var: usize, d: i64| {
        debug_assert!(d > 0);
        ring.monomial(Monomial::var_power(nvars, var, d as u16), 1)
    };
    let mut row0 = vec![
        pow(0, spec.entry_degree(1, 0)),
        pow(1, spec.entry_degree(1, 1)),
    ];
    let mut row1 = vec![
        pow(2, spec.entry_degree(2, 0)),
        pow(3, spec.entry_degree(2, 1)),
    ];
    for k in 0..=c - 2 {
        if k <= c - 3 {
            row0.push(pow(4 + k, spec.entry_degree(1, 2 + k)));
        } else {
            row0.push(SparsePoly::zero());
        }
        if k == 0 {
            row1.push(SparsePoly::zero());
        } else {
            row1.push(pow(3 + k, spec.entry_degree(2, 2 + k)));
        }
    }
    DegMatrix::new(spec.clone(), ring, PolyMatrix::new(vec![row0, row1]))
}

/// Flag of ideals from successive column deletion: `I_1, ..., I_c` where
/// `I_k` is generated by the maximal minors of the first `t+k-1` columns
/// (`I_1` is the single minor of the leading `t x t` block).
pub fn column_deletion_flag(m: &DegMatrix) -> Vec<Ideal> {
    (1..=m.spec().c())
        .map(|k| {
            maximal_minors(m.ring(), &m.flag_matrix(k), m.spec().t(), None)
                .expect("flag matrices always admit t x t minors")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::dimension::dimension_of_ideal;
    use crate::algebra::groebner::Budget;
    use crate::algebra::DEFAULT_PRIME;

    fn spec(n: u32, t: usize, c: usize, b: &[i64], a: &[i64]) -> DegreeSpec {
        DegreeSpec::new(n, t, c, b.to_vec(), a.to_vec()).unwrap()
    }

    fn field() -> PrimeField {
        PrimeField::new(DEFAULT_PRIME).unwrap()
    }

    #[test]
    fn generic_matrix_shape_and_determinism() {
        let s = spec(3, 2, 2, &[0, 0], &[1, 1, 1]);
        let m1 = build_generic_matrix(&s, field(), 1).unwrap();
        let m2 = build_generic_matrix(&s, field(), 1).unwrap();
        let m3 = build_generic_matrix(&s, field(), 2).unwrap();
        assert_eq!(m1.grid(), m2.grid());
        assert_ne!(m1.grid(), m3.grid());
        for i in 0..2 {
            for j in 0..3 {
                assert_eq!(m1.grid().entry(i, j).homogeneous_degree(), Some(1));
            }
        }
    }

    #[test]
    fn generic_matrix_constant_entries_are_nonzero() {
        let s = spec(3, 2, 2, &[0, 0], &[0, 1, 1]);
        let m = build_generic_matrix(&s, field(), 5).unwrap();
        // a_0 = b_1 = b_2 = 0: first column entries are units.
        for i in 0..2 {
            let e = m.grid().entry(i, 0);
            assert_eq!(e.homogeneous_degree(), Some(0));
            assert!(!e.is_zero());
        }
    }

    #[test]
    fn minors_of_linear_2x3() {
        let s = spec(3, 2, 2, &[0, 0], &[1, 1, 1]);
        let m = build_generic_matrix(&s, field(), 7).unwrap();
        let ideal = m.minors_ideal();
        assert_eq!(ideal.gens().len(), 3);
        for g in ideal.gens() {
            assert_eq!(g.homogeneous_degree(), Some(2));
        }
    }

    #[test]
    fn block_matrix_identity_example() {
        // a_0 = b_1 forces a 1x1 unit block; the strict remainder is a
        // regular-sequence row.
        let s = spec(3, 2, 2, &[0, 0], &[0, 1, 1]);
        let m = build_block_matrix(&s, field()).unwrap();
        assert_eq!(m.grid().entry(0, 0), &m.ring().constant(1));
        assert!(m.grid().entry(0, 1).is_zero());
        assert!(m.grid().entry(1, 0).is_zero());
        let mut ideal = m.minors_ideal();
        let report = dimension_of_ideal(m.ring(), &mut ideal, &Budget::default()).unwrap();
        assert_eq!(report.codim, 2);
    }

    #[test]
    fn block_matrix_codim_is_c() {
        for (n, t, c, b, a) in [
            (3u32, 2usize, 2usize, vec![0i64, 0], vec![1i64, 1, 1]),
            (4, 2, 3, vec![0, 0], vec![1, 2, 2, 3]),
            (4, 3, 2, vec![0, 0, 1], vec![1, 1, 2, 3]),
            (5, 2, 4, vec![0, 1], vec![1, 2, 2, 2, 3]),
            (4, 3, 2, vec![0, 0, 0], vec![0, 1, 1, 2]),
        ] {
            let s = spec(n, t, c, &b, &a);
            assert!(s.is_nonempty());
            let m = build_block_matrix(&s, field()).unwrap();
            let mut ideal = m.minors_ideal();
            let report = dimension_of_ideal(m.ring(), &mut ideal, &Budget::default()).unwrap();
            assert_eq!(report.codim, c, "spec {s:?}");
        }
    }

    #[test]
    fn block_matrix_rejects_empty() {
        let s = spec(3, 2, 2, &[0, 0], &[0, 0, 0]);
        assert!(matches!(
            build_block_matrix(&s, field()),
            Err(AlgebraError::EmptyFamily)
        ));
    }

    #[test]
    fn staggered_matrix_c4_pattern() {
        let s = spec(5, 2, 4, &[0, 0], &[1, 1, 1, 1, 1]);
        let m = build_staggered_monomial_matrix(&s, field()).unwrap();
        let r = m.ring();
        let x = |i: usize| r.variable(i);
        // [x0 x1 | x4 x5 0 / x2 x3 | 0 x4 x5]
        let expect_r0 = [x(0), x(1), x(4), x(5), SparsePoly::zero()];
        let expect_r1 = [x(2), x(3), SparsePoly::zero(), x(4), x(5)];
        for (j, e) in expect_r0.iter().enumerate() {
            assert_eq!(m.grid().entry(0, j), e, "row 0 col {j}");
        }
        for (j, e) in expect_r1.iter().enumerate() {
            assert_eq!(m.grid().entry(1, j), e, "row 1 col {j}");
        }
    }

    #[test]
    fn staggered_matrix_rejects_wrong_shape() {
        let s = spec(6, 3, 3, &[0, 0, 0], &[1, 1, 1, 1, 1]);
        assert!(matches!(
            build_staggered_monomial_matrix(&s, field()),
            Err(AlgebraError::Shape(_))
        ));
        let s = spec(3, 2, 3, &[0, 0], &[1, 1, 1, 1]);
        assert!(matches!(
            build_staggered_monomial_matrix(&s, field()),
            Err(AlgebraError::Shape(_)) // n too small
        ));
    }

    #[test]
    fn staggered_matrix_submaximal_corner_has_codim_4() {
        // The entries of the leading 2x2 block cut out x0..x3.
        let s = spec(4, 2, 3, &[0, 0], &[1, 1, 1, 1]);
        let m = build_staggered_monomial_matrix(&s, field()).unwrap();
        let phi1 = m.flag_matrix(1);
        let mut sub = maximal_minors(m.ring(), &phi1, 1, None).unwrap();
        let report = dimension_of_ideal(m.ring(), &mut sub, &Budget::default()).unwrap();
        assert_eq!(report.codim, 4);
    }

    #[test]
    fn flag_ideals_have_increasing_codim() {
        let s = spec(4, 2, 3, &[0, 0], &[1, 1, 1, 1]);
        let m = build_generic_matrix(&s, field(), 11).unwrap();
        let flags = column_deletion_flag(&m);
        assert_eq!(flags.len(), 3);
        let mut codims = Vec::new();
        for mut ideal in flags {
            let report = dimension_of_ideal(m.ring(), &mut ideal, &Budget::default()).unwrap();
            codims.push(report.codim);
        }
        assert_eq!(codims, vec![1, 2, 3]);
    }

    #[test]
    fn flag_first_ideal_degree_is_ell1() {
        let s = spec(4, 2, 3, &[0, 1], &[1, 2, 2, 3]);
        let m = build_generic_matrix(&s, field(), 3).unwrap();
        let flags = column_deletion_flag(&m);
        let first = &flags[0];
        assert_eq!(first.gens().len(), 1);
        let ell1 = crate::combinatorics::ell(&s, 1).unwrap();
        assert_eq!(
            first.gens()[0].homogeneous_degree(),
            Some(ell1 as u32)
        );
    }

    #[test]
    fn minors_with_unit_pivots_reduce() {
        let s = spec(3, 2, 2, &[0, 0], &[0, 1, 1]);
        let m = build_block_matrix(&s, field()).unwrap();
        let ideal = m.minors_ideal();
        // [1 0 0 / 0 x0 x1]: minors x0, x1 and one zero minor dropped.
        assert_eq!(ideal.gens().len(), 2);
        for g in ideal.gens() {
            assert_eq!(g.homogeneous_degree(), Some(1));
        }
    }

    #[test]
    fn text_export_shape() {
        let s = spec(3, 2, 2, &[0, 0], &[1, 1, 1]);
        let m = build_generic_matrix(&s, field(), 1).unwrap();
        let text = m.to_text();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "2 3 32003");
        assert_eq!(lines.count(), 2);
    }
}
