use smallvec::SmallVec;

use crate::error::{AlgebraError, Result};

/// Exponent vector of a power product; one entry per ring variable.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial {
    pub(crate) e: SmallVec<[u16; 12]>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial {
            e: SmallVec::from_elem(0, nvars),
        }
    }

    pub fn from_exponents(e: &[u32]) -> Result<Monomial> {
        let mut v = SmallVec::with_capacity(e.len());
        for &x in e {
            if x > u16::MAX as u32 {
                return Err(AlgebraError::DegreeOverflow);
            }
            v.push(x as u16);
        }
        Ok(Monomial { e: v })
    }

    pub fn var(nvars: usize, i: usize, pow: u16) -> Monomial {
        let mut m = Monomial::one(nvars);
        m.e[i] = pow;
        m
    }

    pub fn nvars(&self) -> usize {
        self.e.len()
    }

    pub fn exponent(&self, i: usize) -> u16 {
        self.e[i]
    }

    pub fn exponents(&self) -> &[u16] {
        &self.e
    }

    pub fn total_degree(&self) -> u64 {
        self.e.iter().map(|&x| x as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.e.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        debug_assert_eq!(self.e.len(), other.e.len());
        let mut out = SmallVec::with_capacity(self.e.len());
        for (&a, &b) in self.e.iter().zip(other.e.iter()) {
            out.push(a.checked_add(b).ok_or(AlgebraError::DegreeOverflow)?);
        }
        Ok(Monomial { e: out })
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.e.iter().zip(other.e.iter()).all(|(&a, &b)| a <= b)
    }

    /// other / self, assuming divisibility.
    pub fn quotient_into(&self, other: &Monomial) -> Monomial {
        Monomial {
            e: other
                .e
                .iter()
                .zip(self.e.iter())
                .map(|(&b, &a)| b - a)
                .collect(),
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            e: self
                .e
                .iter()
                .zip(other.e.iter())
                .map(|(&a, &b)| a.max(b))
                .collect(),
        }
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.e.iter().zip(other.e.iter()).all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Variables with nonzero exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.e
            .iter()
            .enumerate()
            .filter(|(_, &x)| x > 0)
            .map(|(i, _)| i)
    }

    /// Degree of the q-adic split: sum of floor(e_i / q).
    pub fn h_degree(&self, q: u64) -> u64 {
        self.e.iter().map(|&x| x as u64 / q).sum()
    }
}
