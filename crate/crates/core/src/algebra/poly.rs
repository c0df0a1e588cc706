//! Sparse multivariate polynomials over a prime field.
//!
//! A polynomial is a list of `(monomial, coefficient)` terms kept strictly
//! decreasing in the degrevlex order with no zero coefficients.  All
//! arithmetic goes through a [`PolyRing`] context carrying the variable
//! count and the field.

use super::field::PrimeField;
use super::monomial::Monomial;
use super::rng::DetRng;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SparsePoly {
    terms: Vec<(Monomial, u64)>,
}

impl SparsePoly {
    pub fn zero() -> Self {
        SparsePoly { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, u64)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Leading term in the degrevlex order.
    pub fn lt(&self) -> Option<&(Monomial, u64)> {
        self.terms.first()
    }

    pub fn lead_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    /// Builds a polynomial from terms already strictly decreasing in the
    /// term order with no zero coefficients.
    pub(crate) fn from_sorted_terms_unchecked(terms: Vec<(Monomial, u64)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| *c != 0));
        SparsePoly { terms }
    }

    /// Degree of the polynomial if homogeneous, `None` otherwise (the zero
    /// polynomial counts as homogeneous of every degree and reports 0).
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let first = match self.terms.first() {
            None => return Some(0),
            Some((m, _)) => m.degree(),
        };
        if self.terms.iter().all(|(m, _)| m.degree() == first) {
            Some(first)
        } else {
            None
        }
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{c}")?;
            } else if *c == 1 {
                write!(f, "{m}")?;
            } else {
                write!(f, "{c}*{m}")?;
            }
        }
        Ok(())
    }
}

/// Polynomial ring `F_p[x0..x_{nvars-1}]` with the degrevlex order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PolyRing {
    pub nvars: usize,
    pub field: PrimeField,
}

impl PolyRing {
    pub fn new(nvars: usize, field: PrimeField) -> Self {
        PolyRing { nvars, field }
    }

    pub fn constant(&self, c: u64) -> SparsePoly {
        let c = c % self.field.characteristic();
        if c == 0 {
            SparsePoly::zero()
        } else {
            SparsePoly {
                terms: vec![(Monomial::one(self.nvars), c)],
            }
        }
    }

    pub fn monomial(&self, m: Monomial, c: u64) -> SparsePoly {
        debug_assert_eq!(m.nvars(), self.nvars);
        let c = c % self.field.characteristic();
        if c == 0 {
            SparsePoly::zero()
        } else {
            SparsePoly { terms: vec![(m, c)] }
        }
    }

    pub fn variable(&self, i: usize) -> SparsePoly {
        self.monomial(Monomial::variable(self.nvars, i), 1)
    }

    /// Builds a polynomial from arbitrary (monomial, coefficient) pairs,
    /// merging duplicates and dropping zeros.
    pub fn from_terms(&self, mut terms: Vec<(Monomial, u64)>) -> SparsePoly {
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Monomial, u64)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            let c = c % self.field.characteristic();
            match out.last_mut() {
                Some((last, acc)) if *last == m => {
                    *acc = self.field.add(*acc, c);
                }
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| *c != 0);
        SparsePoly { terms: out }
    }

    pub fn add(&self, f: &SparsePoly, g: &SparsePoly) -> SparsePoly {
        self.merge(f, g, false)
    }

    pub fn sub(&self, f: &SparsePoly, g: &SparsePoly) -> SparsePoly {
        self.merge(f, g, true)
    }

    fn merge(&self, f: &SparsePoly, g: &SparsePoly, negate_g: bool) -> SparsePoly {
        let mut out = Vec::with_capacity(f.terms.len() + g.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < f.terms.len() && j < g.terms.len() {
            let (fm, fc) = &f.terms[i];
            let (gm, gc) = &g.terms[j];
            let gc = if negate_g { self.field.neg(*gc) } else { *gc };
            match fm.cmp(gm) {
                std::cmp::Ordering::Greater => {
                    out.push((fm.clone(), *fc));
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((gm.clone(), gc));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = self.field.add(*fc, gc);
                    if c != 0 {
                        out.push((fm.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(f.terms[i..].iter().cloned());
        for (gm, gc) in &g.terms[j..] {
            let gc = if negate_g { self.field.neg(*gc) } else { *gc };
            out.push((gm.clone(), gc));
        }
        SparsePoly { terms: out }
    }

    pub fn neg(&self, f: &SparsePoly) -> SparsePoly {
        SparsePoly {
            terms: f
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), self.field.neg(*c)))
                .collect(),
        }
    }

    /// `f * c * m`: multiplying by a single term preserves the term order.
    pub fn mul_term(&self, f: &SparsePoly, m: &Monomial, c: u64) -> SparsePoly {
        let c = c % self.field.characteristic();
        if c == 0 {
            return SparsePoly::zero();
        }
        SparsePoly {
            terms: f
                .terms
                .iter()
                .map(|(fm, fc)| (fm.mul(m), self.field.mul(*fc, c)))
                .collect(),
        }
    }

    pub fn mul(&self, f: &SparsePoly, g: &SparsePoly) -> SparsePoly {
        if f.is_zero() || g.is_zero() {
            return SparsePoly::zero();
        }
        // accumulate the smaller factor against the larger
        let (small, large) = if f.terms.len() <= g.terms.len() {
            (f, g)
        } else {
            (g, f)
        };
        let mut acc = SparsePoly::zero();
        for (m, c) in &small.terms {
            acc = self.add(&acc, &self.mul_term(large, m, *c));
        }
        acc
    }

    pub fn scale(&self, f: &SparsePoly, c: u64) -> SparsePoly {
        self.mul_term(f, &Monomial::one(self.nvars), c)
    }

    /// Normalizes the leading coefficient to 1.
    pub fn monic(&self, f: &SparsePoly) -> SparsePoly {
        match f.lt() {
            None => SparsePoly::zero(),
            Some((_, c)) if *c == 1 => f.clone(),
            Some((_, c)) => self.scale(f, self.field.inv(*c)),
        }
    }

    /// All monomials of total degree `d`, in no particular order.
    pub fn monomials_of_degree(&self, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut exps = vec![0u16; self.nvars];
        fn rec(exps: &mut Vec<u16>, var: usize, left: u32, out: &mut Vec<Monomial>) {
            if var + 1 == exps.len() {
                exps[var] = left as u16;
                out.push(Monomial::from_exps(exps.clone()));
                return;
            }
            for e in 0..=left {
                exps[var] = e as u16;
                rec(exps, var + 1, left - e, out);
            }
            exps[var] = 0;
        }
        rec(&mut exps, 0, d, &mut out);
        out
    }

    /// Dense random homogeneous polynomial of degree `d` with coefficients
    /// uniform in F_p, resampled until non-zero.
    pub fn random_homogeneous(&self, d: u32, rng: &mut DetRng) -> SparsePoly {
        let monomials = self.monomials_of_degree(d);
        let p = self.field.characteristic();
        loop {
            let terms: Vec<(Monomial, u64)> = monomials
                .iter()
                .filter_map(|m| {
                    let c = rng.below(p);
                    if c == 0 {
                        None
                    } else {
                        Some((m.clone(), c))
                    }
                })
                .collect();
            if !terms.is_empty() {
                return self.from_terms(terms);
            }
        }
    }
}
