//! Buchberger's algorithm with the Gebauer-Moeller pair criteria, full
//! normal-form reduction, and reduced-basis post-processing.
//!
//! Everything here is deterministic: pairs are selected by
//! `(lcm degree, lcm, i, j)` and the final basis is inter-reduced, monic
//! and sorted, so a given generator list always yields the same basis.

use super::monomial::Monomial;
use super::poly::{PolyRing, SparsePoly};
use super::AlgebraError;
use std::collections::BTreeSet;

/// Work cap for a single Groebner run, counted in S-pair reductions.
#[derive(Debug, Clone, Copy)]
pub struct Budget {
    pub max_pairs: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_pairs: 1_000_000,
        }
    }
}

/// A homogeneous ideal: generator list plus a cached reduced Groebner
/// basis.  The cache is only ever filled by [`Ideal::groebner`], so when
/// present it satisfies Buchberger's criterion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ideal {
    gens: Vec<SparsePoly>,
    gb: Option<Vec<SparsePoly>>,
}

impl Ideal {
    pub fn new(gens: Vec<SparsePoly>) -> Self {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal { gens, gb: None }
    }

    pub fn gens(&self) -> &[SparsePoly] {
        &self.gens
    }

    /// Reduced Groebner basis, computing and caching it on first use.
    pub fn groebner(&mut self, ring: &PolyRing, budget: &Budget) -> Result<&[SparsePoly], AlgebraError> {
        if self.gb.is_none() {
            self.gb = Some(groebner(ring, &self.gens, budget)?);
        }
        Ok(self.gb.as_ref().unwrap())
    }

    pub fn groebner_cached(&self) -> Option<&[SparsePoly]> {
        self.gb.as_deref()
    }

    /// Lead monomials of the cached basis.
    pub fn lead_terms(&self) -> Option<Vec<Monomial>> {
        self.gb.as_ref().map(|gb| {
            gb.iter()
                .map(|g| g.lead_monomial().expect("basis has no zero elements").clone())
                .collect()
        })
    }
}

/// Full normal form of `f` against `basis`: no term of the result is
/// divisible by any basis lead monomial.
pub fn normal_form(ring: &PolyRing, f: &SparsePoly, basis: &[SparsePoly]) -> SparsePoly {
    let mut work = f.clone();
    let mut remainder: Vec<(Monomial, u64)> = Vec::new();
    'outer: while let Some((lm, lc)) = work.lt().cloned() {
        for g in basis {
            let (gm, gc) = g.lt().expect("basis has no zero elements");
            if gm.divides(&lm) {
                let q = gm.divide_into(&lm).unwrap();
                let factor = ring.field.mul(lc, ring.field.inv(*gc));
                work = ring.sub(&work, &ring.mul_term(g, &q, factor));
                continue 'outer;
            }
        }
        // lead term irreducible: it moves to the remainder, which stays
        // sorted because successive lead terms strictly decrease
        remainder.push((lm, lc));
        work = SparsePoly::from_sorted_terms_unchecked(work.terms()[1..].to_vec());
    }
    SparsePoly::from_sorted_terms_unchecked(remainder)
}

fn s_poly(ring: &PolyRing, f: &SparsePoly, g: &SparsePoly) -> SparsePoly {
    let (fm, fc) = f.lt().expect("s_poly of zero");
    let (gm, gc) = g.lt().expect("s_poly of zero");
    let lcm = fm.lcm(gm);
    let uf = fm.divide_into(&lcm).unwrap();
    let ug = gm.divide_into(&lcm).unwrap();
    let left = ring.mul_term(f, &uf, ring.field.inv(*fc));
    let right = ring.mul_term(g, &ug, ring.field.inv(*gc));
    ring.sub(&left, &right)
}

/// True when the S-polynomial of `f` and `g` reduces to zero against
/// `basis`; the direct statement of Buchberger's criterion, used by the
/// property tests.
pub fn s_poly_reduces_to_zero(
    ring: &PolyRing,
    f: &SparsePoly,
    g: &SparsePoly,
    basis: &[SparsePoly],
) -> bool {
    normal_form(ring, &s_poly(ring, f, g), basis).is_zero()
}

type PairKey = (u32, Monomial, usize, usize);

/// Reduced Groebner basis of the given generators, degrevlex order.
pub fn groebner(
    ring: &PolyRing,
    gens: &[SparsePoly],
    budget: &Budget,
) -> Result<Vec<SparsePoly>, AlgebraError> {
    let mut basis: Vec<SparsePoly> = Vec::new();
    let mut pairs: BTreeSet<PairKey> = BTreeSet::new();
    for g in gens {
        if !g.is_zero() {
            add_element(&mut basis, &mut pairs, ring.monic(g));
        }
    }

    let mut reduced_pairs = 0u64;
    while let Some(key) = pairs.iter().next().cloned() {
        pairs.remove(&key);
        let (_, _, i, j) = key;
        reduced_pairs += 1;
        if reduced_pairs > budget.max_pairs {
            return Err(AlgebraError::BudgetExceeded {
                pairs: reduced_pairs,
            });
        }
        let s = s_poly(ring, &basis[i], &basis[j]);
        let r = normal_form(ring, &s, &basis);
        if !r.is_zero() {
            add_element(&mut basis, &mut pairs, ring.monic(&r));
        }
    }

    Ok(reduce_basis(ring, basis))
}

/// Installs a new basis element and updates the pair set with the
/// Gebauer-Moeller criteria.
fn add_element(basis: &mut Vec<SparsePoly>, pairs: &mut BTreeSet<PairKey>, h: SparsePoly) {
    let new_idx = basis.len();
    let th = h.lead_monomial().unwrap().clone();

    // Candidate pairs (i, new) with their lcm's.
    let cand: Vec<(usize, Monomial)> = basis
        .iter()
        .enumerate()
        .map(|(i, g)| (i, g.lead_monomial().unwrap().lcm(&th)))
        .collect();

    // Criterion M: drop (i, new) when another candidate lcm properly
    // divides its lcm.  Criterion F: among equal lcm's keep the first.
    let mut keep = vec![true; cand.len()];
    for x in 0..cand.len() {
        if !keep[x] {
            continue;
        }
        for y in 0..cand.len() {
            if x == y {
                continue;
            }
            let divides = cand[y].1.divides(&cand[x].1);
            if divides && cand[y].1 != cand[x].1 {
                keep[x] = false;
                break;
            }
            if divides && cand[y].1 == cand[x].1 && y < x && keep[y] {
                keep[x] = false;
                break;
            }
        }
    }
    // Criterion B (Buchberger 1): coprime lead monomials reduce to zero.
    for (x, (i, _)) in cand.iter().enumerate() {
        if keep[x] && basis[*i].lead_monomial().unwrap().coprime(&th) {
            keep[x] = false;
        }
    }

    // Prune old pairs strictly superseded by the new element.
    let old: Vec<PairKey> = pairs.iter().cloned().collect();
    for key in old {
        let (_, ref lcm_ij, i, j) = key;
        if th.divides(lcm_ij) {
            let lcm_ih = basis[i].lead_monomial().unwrap().lcm(&th);
            let lcm_jh = basis[j].lead_monomial().unwrap().lcm(&th);
            if lcm_ih != *lcm_ij && lcm_jh != *lcm_ij {
                pairs.remove(&key);
            }
        }
    }

    basis.push(h);
    for (x, (i, lcm)) in cand.into_iter().enumerate() {
        if keep[x] {
            pairs.insert((lcm.degree(), lcm, i, new_idx));
        }
    }
}

/// Minimalizes (no lead monomial divides another) and tail-reduces the
/// basis, normalizing and sorting for a canonical result.
fn reduce_basis(ring: &PolyRing, basis: Vec<SparsePoly>) -> Vec<SparsePoly> {
    let mut order: Vec<usize> = (0..basis.len()).collect();
    order.sort_by(|&x, &y| {
        basis[x]
            .lead_monomial()
            .unwrap()
            .cmp(basis[y].lead_monomial().unwrap())
    });
    let mut kept: Vec<usize> = Vec::new();
    for idx in order {
        let lm = basis[idx].lead_monomial().unwrap();
        if !kept
            .iter()
            .any(|&k| basis[k].lead_monomial().unwrap().divides(lm))
        {
            kept.push(idx);
        }
    }
    let minimal: Vec<SparsePoly> = kept.iter().map(|&k| basis[k].clone()).collect();
    let mut reduced: Vec<SparsePoly> = Vec::with_capacity(minimal.len());
    for (k, g) in minimal.iter().enumerate() {
        let others: Vec<SparsePoly> = minimal
            .iter()
            .enumerate()
            .filter(|(x, _)| *x != k)
            .map(|(_, p)| p.clone())
            .collect();
        let r = normal_form(ring, g, &others);
        debug_assert_eq!(r.lead_monomial(), g.lead_monomial());
        reduced.push(ring.monic(&r));
    }
    reduced.sort_by(|f, g| f.lead_monomial().unwrap().cmp(g.lead_monomial().unwrap()));
    reduced
}
