//! Ghost variables: fresh indeterminates x_i^(j) standing for x_i^(p^j),
//! with the projection that substitutes them back and the p-adic lift.
//!
//! Variables are laid out level-major: the base variables first (level 0),
//! then one full block per ghost level. Level-0 variables keep their base
//! names; level j >= 1 appends a `_j` suffix.

use crate::error::{AlgebraError, Result};
use crate::poly::{Monomial, Polynomial, Ring};

/// A polynomial ring extended by ghost levels 1..=levels.
#[derive(Clone, Debug)]
pub struct GhostRing {
    base: Ring,
    ring: Ring,
    levels: usize,
}

impl GhostRing {
    pub fn new(base: &Ring, levels: usize) -> GhostRing {
        let mut vars = base.vars().to_vec();
        for j in 1..=levels {
            for name in base.vars() {
                vars.push(format!("{name}_{j}"));
            }
        }
        GhostRing {
            base: base.clone(),
            ring: Ring::new(base.field().clone(), vars),
            levels,
        }
    }

    pub fn base(&self) -> &Ring {
        &self.base
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    /// Index of x_i^(j) in the extended ring.
    pub fn var_index(&self, i: usize, level: usize) -> usize {
        debug_assert!(i < self.base.nvars() && level <= self.levels);
        level * self.base.nvars() + i
    }

    /// Lift f to the ghost ring: each exponent is expanded p-adically and the
    /// digit at level j becomes the exponent of x_i^(j), so every ghost
    /// exponent is < p and projecting back recovers f.
    pub fn lift(&self, f: &Polynomial) -> Result<Polynomial> {
        if f.ring() != &self.base {
            return Err(AlgebraError::RingMismatch(
                "polynomial does not live in the base ring".into(),
            ));
        }
        let p = self.base.field().p();
        let n = self.base.nvars();
        let mut terms = Vec::with_capacity(f.num_terms());
        for (m, c) in f.terms() {
            let mut e = vec![0u32; self.ring.nvars()];
            for (i, &x) in m.exponents().iter().enumerate() {
                let mut rest = x as u64;
                let mut level = 0usize;
                while rest > 0 {
                    if level > self.levels {
                        return Err(AlgebraError::LevelOverflow {
                            n: self.levels,
                            exp: x as u64,
                        });
                    }
                    e[level * n + i] = (rest % p) as u32;
                    rest /= p;
                    level += 1;
                }
            }
            terms.push((Monomial::from_exponents(&e)?, c.clone()));
        }
        Ok(Polynomial::from_terms_unsorted(self.ring.clone(), terms))
    }

    /// Substitute x_i^(j) -> x_i^(p^j), landing back in the base ring.
    pub fn project(&self, f: &Polynomial) -> Result<Polynomial> {
        if f.ring() != &self.ring {
            return Err(AlgebraError::RingMismatch(
                "polynomial does not live in the ghost ring".into(),
            ));
        }
        let p = self.base.field().p();
        let n = self.base.nvars();
        let mut terms = Vec::with_capacity(f.num_terms());
        for (m, c) in f.terms() {
            let mut e = vec![0u64; n];
            for (idx, &x) in m.exponents().iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let (level, i) = (idx / n, idx % n);
                let weight = p
                    .checked_pow(level as u32)
                    .ok_or(AlgebraError::DegreeOverflow)?;
                e[i] = e[i]
                    .checked_add(x as u64 * weight)
                    .ok_or(AlgebraError::DegreeOverflow)?;
            }
            let e32: Vec<u32> = e
                .iter()
                .map(|&x| u32::try_from(x).map_err(|_| AlgebraError::DegreeOverflow))
                .collect::<Result<_>>()?;
            terms.push((Monomial::from_exponents(&e32)?, c.clone()));
        }
        // distinct ghost monomials can project to the same base monomial only
        // when some ghost exponent is >= p; merge just in case
        let mut map = std::collections::HashMap::new();
        let field = self.base.field().clone();
        for (m, c) in terms {
            match map.entry(m) {
                std::collections::hash_map::Entry::Occupied(mut o) => {
                    let s = field.add(o.get(), &c);
                    *o.get_mut() = s;
                }
                std::collections::hash_map::Entry::Vacant(v) => {
                    v.insert(c);
                }
            }
        }
        Ok(Polynomial::from_term_map(self.base.clone(), map))
    }
}
