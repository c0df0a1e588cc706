//! Krull dimension and Hilbert functions from lead-term data.
//!
//! Both computations only see the monomial ideal of lead terms: the
//! dimension is the size of a maximal independent variable subset, and the
//! Hilbert function counts standard monomials degree by degree.

use super::groebner::{Budget, Ideal};
use super::monomial::Monomial;
use super::poly::PolyRing;
use super::AlgebraError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DimensionReport {
    /// Krull dimension of the quotient ring (the affine cone).
    pub krull_dim: usize,
    /// `nvars - krull_dim`; for an ideal of homogeneous polynomials in
    /// `n+1` variables this is the (projective) codimension.
    pub codim: usize,
    /// The unit ideal is reported with `krull_dim = 0`, `codim = nvars`.
    pub is_unit: bool,
}

/// Dimension of `R/I` via a maximal subset of variables meeting no lead
/// monomial support.  Exhaustive over variable subsets; fine for the
/// desk-scale variable counts this crate targets.
pub fn krull_dim_from_lead_terms(leads: &[Monomial], nvars: usize) -> DimensionReport {
    assert!(nvars <= 24, "independent-set search is exponential in nvars");
    if leads.iter().any(|m| m.is_one()) {
        return DimensionReport {
            krull_dim: 0,
            codim: nvars,
            is_unit: true,
        };
    }
    let supports: Vec<u64> = leads.iter().map(|m| m.support_mask()).collect();
    let mut best = 0usize;
    for mask in 0u64..(1 << nvars) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        if supports.iter().all(|s| s & !mask != 0) {
            best = size;
        }
    }
    DimensionReport {
        krull_dim: best,
        codim: nvars - best,
        is_unit: false,
    }
}

/// Groebner-backed dimension of an ideal, filling the basis cache if
/// needed.
pub fn dimension_of_ideal(
    ring: &PolyRing,
    ideal: &mut Ideal,
    budget: &Budget,
) -> Result<DimensionReport, AlgebraError> {
    ideal.groebner(ring, budget)?;
    let leads = ideal.lead_terms().expect("cache just filled");
    Ok(krull_dim_from_lead_terms(&leads, ring.nvars))
}

/// Standard monomials (those outside the lead-term ideal) of each degree
/// `0..=v_max`.  A divisor of a standard monomial is standard, so the
/// frontier of degree `v` generates the frontier of degree `v+1`; each
/// monomial is produced once by appending variables of non-decreasing
/// index.
pub fn standard_monomial_basis(
    leads: &[Monomial],
    nvars: usize,
    v_max: u32,
) -> Vec<Vec<Monomial>> {
    let minimal = minimalize(leads);
    let one = Monomial::one(nvars);
    let mut out: Vec<Vec<Monomial>> = Vec::with_capacity(v_max as usize + 1);
    let mut frontier: Vec<(Monomial, usize)> = if minimal.iter().any(|g| g.divides(&one)) {
        Vec::new()
    } else {
        vec![(one, 0)]
    };
    out.push(frontier.iter().map(|(m, _)| m.clone()).collect());
    for _ in 1..=v_max {
        let mut next = Vec::new();
        for (m, start) in &frontier {
            for j in *start..nvars {
                let cand = m.mul(&Monomial::variable(nvars, j));
                if !minimal.iter().any(|g| g.divides(&cand)) {
                    next.push((cand, j));
                }
            }
        }
        out.push(next.iter().map(|(m, _)| m.clone()).collect());
        frontier = next;
    }
    out
}

/// Hilbert function `H_{R/I}(v)` for `0 <= v <= v_max` by exact counting of
/// standard monomials under the cached lead-term ideal.
pub fn hilbert_fn_oracle(
    ring: &PolyRing,
    ideal: &mut Ideal,
    v_max: u32,
    budget: &Budget,
) -> Result<Vec<u64>, AlgebraError> {
    ideal.groebner(ring, budget)?;
    let leads = ideal.lead_terms().expect("cache just filled");
    Ok(standard_monomial_basis(&leads, ring.nvars, v_max)
        .into_iter()
        .map(|basis| basis.len() as u64)
        .collect())
}

fn minimalize(leads: &[Monomial]) -> Vec<Monomial> {
    let mut minimal: Vec<Monomial> = Vec::new();
    let mut sorted: Vec<&Monomial> = leads.iter().collect();
    sorted.sort_by_key(|m| m.degree());
    for m in sorted {
        if !minimal.iter().any(|g| g.divides(m)) {
            minimal.push(m.clone());
        }
    }
    minimal
}
