//! Monomials in `x0..x_{nvars-1}` ordered by degree-reverse-lexicographic
//! comparison.  Degrevlex is the only order the crate uses, so it is wired
//! straight into `Ord`.

use std::cmp::Ordering;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    deg: u32,
    exps: Vec<u16>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            deg: 0,
            exps: vec![0; nvars],
        }
    }

    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Monomial { deg: 1, exps }
    }

    pub fn var_power(nvars: usize, i: usize, e: u16) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = e;
        Monomial {
            deg: e as u32,
            exps,
        }
    }

    pub fn from_exps(exps: Vec<u16>) -> Self {
        let deg = exps.iter().map(|&e| e as u32).sum();
        Monomial { deg, exps }
    }

    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a + b)
            .collect();
        Monomial {
            deg: self.deg + other.deg,
            exps,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg
            && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn divide_into(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let exps = other
            .exps
            .iter()
            .zip(&self.exps)
            .map(|(a, b)| a - b)
            .collect();
        Some(Monomial {
            deg: other.deg - self.deg,
            exps,
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: Vec<u16> = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| *a.max(b))
            .collect();
        Monomial::from_exps(exps)
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Bitmask of the variables occurring in the monomial (nvars <= 64).
    pub fn support_mask(&self) -> u64 {
        let mut mask = 0u64;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                mask |= 1 << i;
            }
        }
        mask
    }
}

impl Ord for Monomial {
    /// Degrevlex: compare total degree first; on ties the monomial with the
    /// smaller exponent in the last position where they differ is larger.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.deg.cmp(&other.deg) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for (a, b) in self.exps.iter().zip(&other.exps).rev() {
            match a.cmp(b) {
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
                Ordering::Equal => {}
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrevlex_classics() {
        // x1^2 > x0*x2 in degrevlex (same degree, smaller last exponent wins).
        let x1sq = Monomial::from_exps(vec![0, 2, 0]);
        let x0x2 = Monomial::from_exps(vec![1, 0, 1]);
        assert!(x1sq > x0x2);

        // Degree dominates.
        let x0cube = Monomial::from_exps(vec![3, 0, 0]);
        assert!(x0cube > x1sq);

        // x0 > x1 > x2.
        let vars: Vec<Monomial> = (0..3).map(|i| Monomial::variable(3, i)).collect();
        assert!(vars[0] > vars[1]);
        assert!(vars[1] > vars[2]);
    }

    #[test]
    fn division_and_lcm() {
        let a = Monomial::from_exps(vec![2, 1, 0]);
        let b = Monomial::from_exps(vec![1, 0, 0]);
        assert!(b.divides(&a));
        assert_eq!(b.divide_into(&a).unwrap(), Monomial::from_exps(vec![1, 1, 0]));
        assert!(!a.divides(&b));
        assert_eq!(
            a.lcm(&Monomial::from_exps(vec![0, 2, 1])),
            Monomial::from_exps(vec![2, 2, 1])
        );
        assert!(Monomial::from_exps(vec![1, 0, 0])
            .coprime(&Monomial::from_exps(vec![0, 2, 1])));
    }
}
