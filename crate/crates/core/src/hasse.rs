//! Hasse–Schmidt derivatives D_i^n on the polynomial ring, the level-h
//! operators D^(h) = D^(p^h), and the h-gradient.

use crate::error::{AlgebraError, Result};
use crate::poly::{Monomial, Polynomial};

/// Binomial coefficient C(m, n) mod p via Lucas' theorem: the product of the
/// digit-wise binomials in base p.
pub fn binomial_mod_p(m: u64, n: u64, p: u64) -> u64 {
    if n > m {
        return 0;
    }
    let mut m = m;
    let mut n = n;
    let mut acc = 1u64;
    while n > 0 || m > 0 {
        let (md, nd) = (m % p, n % p);
        if nd > md {
            return 0;
        }
        // digits are < p < 2^31, so the small binomial fits in u64
        let mut digit = 1u64;
        for i in 0..nd {
            digit = digit * (md - i) % p * mod_inverse(i + 1, p) % p;
        }
        acc = acc * digit % p;
        m /= p;
        n /= p;
    }
    acc
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Fermat; p prime and a not divisible by p
    let mut acc = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// D_i^n f = sum over terms of C(m_i, n) * c * x^(m - n e_i).
pub fn hasse_derive(f: &Polynomial, i: usize, n: u64) -> Result<Polynomial> {
    let ring = f.ring().clone();
    if i >= ring.nvars() {
        return Err(AlgebraError::Invalid(format!(
            "variable index {i} out of range for {} variables",
            ring.nvars()
        )));
    }
    if n == 0 {
        return Ok(f.clone());
    }
    let field = ring.field().clone();
    let p = field.p();
    let mut terms = Vec::new();
    for (m, c) in f.terms() {
        let mi = m.exponent(i) as u64;
        if mi < n {
            continue;
        }
        let b = binomial_mod_p(mi, n, p);
        if b == 0 {
            continue;
        }
        let mut e: Vec<u32> = m.exponents().iter().map(|&x| x as u32).collect();
        e[i] -= n as u32;
        terms.push((
            Monomial::from_exponents(&e)?,
            field.mul(c, &field.from_int(b as i64)),
        ));
    }
    Ok(Polynomial::from_terms_unsorted(ring, terms))
}

/// D^(h)_{x_i} = D_i^(p^h).
pub fn hasse_h(f: &Polynomial, i: usize, h: u32) -> Result<Polynomial> {
    let p = f.ring().field().p();
    let n = p
        .checked_pow(h)
        .ok_or(AlgebraError::DegreeOverflow)?;
    hasse_derive(f, i, n)
}

/// The h-gradient (D^(h)_{x_0} f, ..., D^(h)_{x_n} f).
pub fn nabla_h(f: &Polynomial, h: u32) -> Result<Vec<Polynomial>> {
    (0..f.ring().nvars()).map(|i| hasse_h(f, i, h)).collect()
}

/// Check the Frobenius representation lemma for a univariate f: D_x^n(f(x^q))
/// equals (D_t^(n/q) f)(x^q) when q | n, and vanishes otherwise.
pub fn frob_rep_check(f: &Polynomial, q: u64, n: u64) -> Result<bool> {
    if f.ring().nvars() != 1 {
        return Err(AlgebraError::Invalid(
            "frob_rep_check expects a univariate polynomial".into(),
        ));
    }
    let composed = scale_exponents(f, q)?;
    let lhs = hasse_derive(&composed, 0, n)?;
    let rhs = if n % q == 0 {
        scale_exponents(&hasse_derive(f, 0, n / q)?, q)?
    } else {
        f.ring().zero()
    };
    Ok(lhs == rhs)
}

/// f(x^q): multiply every exponent by q.
fn scale_exponents(f: &Polynomial, q: u64) -> Result<Polynomial> {
    let mut terms = Vec::with_capacity(f.num_terms());
    for (m, c) in f.terms() {
        let e: Vec<u32> = m
            .exponents()
            .iter()
            .map(|&x| {
                let v = x as u64 * q;
                u32::try_from(v).map_err(|_| AlgebraError::DegreeOverflow)
            })
            .collect::<Result<_>>()?;
        terms.push((Monomial::from_exponents(&e)?, c.clone()));
    }
    Ok(Polynomial::from_terms_unsorted(f.ring().clone(), terms))
}
