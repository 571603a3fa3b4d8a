//! Exact arithmetic in GF(p) and GF(p^k).
//!
//! Extension fields use a polynomial basis over a monic irreducible modulus.
//! When no modulus is supplied the lowest one in the deterministic enumeration
//! order (coefficient vectors read constant-term first, odometer style) is
//! chosen, so the representation is reproducible across runs.

use std::fmt;
use std::sync::Arc;

use smallvec::{smallvec, SmallVec};

use crate::error::{AlgebraError, Result};

/// Parameters of a finite field GF(p^k).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    pub p: u64,
    pub k: usize,
    /// Monic modulus of degree k, constant term first, length k+1.
    pub modulus: Vec<u64>,
}

/// Handle to a finite field; cheap to clone and share.
#[derive(Clone)]
pub struct Field(Arc<FieldSpec>);

type Coeffs = SmallVec<[u64; 2]>;

/// An element of GF(p^k) in the polynomial basis of its field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: Field,
    c: Coeffs,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}
impl Eq for Field {}

impl std::hash::Hash for Field {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.hash(state);
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.k == 1 {
            write!(f, "GF({})", self.0.p)
        } else {
            write!(f, "GF({}^{})", self.0.p, self.0.k)
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// Fermat inverse in GF(p).
fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    acc
}

/// Dense univariate polynomial arithmetic over GF(p), used for modulus
/// handling and irreducibility testing. Coefficients constant-term first.
mod densepoly {
    use super::{invmod, mulmod};

    pub fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + mulmod(x, y, p)) % p;
            }
        }
        trim(&mut out);
        out
    }

    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        let lead_inv = invmod(m[dm], p);
        while r.len() > dm {
            let dr = r.len() - 1;
            let f = mulmod(r[dr], lead_inv, p);
            for i in 0..=dm {
                let idx = dr - dm + i;
                let sub = mulmod(f, m[i], p);
                r[idx] = (r[idx] + p - sub) % p;
            }
            trim(&mut r);
            if r.is_empty() {
                break;
            }
        }
        r
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        if let Some(&lead) = a.last() {
            let inv = invmod(lead, p);
            for c in a.iter_mut() {
                *c = mulmod(*c, inv, p);
            }
        }
        a
    }

    /// x^(p^e) mod m via e successive p-th powers.
    pub fn frob_x(e: usize, m: &[u64], p: u64) -> Vec<u64> {
        let mut cur = vec![0u64, 1]; // x
        cur = rem(&cur, m, p);
        for _ in 0..e {
            cur = powmod_poly(&cur, p, m, p);
        }
        cur
    }

    pub fn powmod_poly(b: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1u64];
        let mut b = b.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = rem(&mul(&acc, &b, p), m, p);
            }
            b = rem(&mul(&b, &b, p), m, p);
            e >>= 1;
        }
        acc
    }

    /// Deterministic irreducibility test over GF(p).
    pub fn is_irreducible(m: &[u64], p: u64) -> bool {
        let k = m.len() - 1;
        if k == 0 {
            return false;
        }
        if k == 1 {
            return true;
        }
        // x^(p^k) == x mod m
        let xk = frob_x(k, m, p);
        let mut x = vec![0u64, 1];
        x = rem(&x, m, p);
        if xk != x {
            return false;
        }
        // gcd(x^(p^(k/d)) - x, m) must be constant for each prime d | k
        let mut d = 2;
        let mut kk = k;
        let mut primes = Vec::new();
        while d * d <= kk {
            if kk % d == 0 {
                primes.push(d);
                while kk % d == 0 {
                    kk /= d;
                }
            }
            d += 1;
        }
        if kk > 1 {
            primes.push(kk);
        }
        for d in primes {
            let mut diff = frob_x(k / d, m, p);
            // diff -= x
            if diff.len() < 2 {
                diff.resize(2, 0);
            }
            diff[1] = (diff[1] + p - 1) % p;
            trim(&mut diff);
            let g = gcd(&diff, m, p);
            if g.len() > 1 {
                return false;
            }
        }
        true
    }
}

impl Field {
    /// Prime field GF(p).
    pub fn prime(p: u64) -> Result<Field> {
        Field::extension(p, 1, None)
    }

    /// GF(p^k) with an optional user modulus (constant term first, length k+1,
    /// monic after normalization).
    pub fn extension(p: u64, k: usize, modulus: Option<Vec<u64>>) -> Result<Field> {
        if p >= 1u64 << 31 {
            return Err(AlgebraError::CharacteristicTooLarge(p));
        }
        if !is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        if k == 0 {
            return Err(AlgebraError::Invalid("extension degree must be >= 1".into()));
        }
        let modulus = match modulus {
            Some(mut m) => {
                for c in m.iter_mut() {
                    *c %= p;
                }
                densepoly::trim(&mut m);
                if m.len() != k + 1 {
                    return Err(AlgebraError::ModulusDegree {
                        got: m.len().saturating_sub(1),
                        want: k,
                    });
                }
                // make monic
                let inv = invmod(m[k], p);
                for c in m.iter_mut() {
                    *c = mulmod(*c, inv, p);
                }
                if k > 1 && !densepoly::is_irreducible(&m, p) {
                    return Err(AlgebraError::ReducibleModulus { p });
                }
                m
            }
            None => Self::default_modulus(p, k),
        };
        Ok(Field(Arc::new(FieldSpec { p, k, modulus })))
    }

    /// Lowest irreducible monic polynomial of degree k in odometer order on
    /// the constant-first coefficient vector.
    fn default_modulus(p: u64, k: usize) -> Vec<u64> {
        if k == 1 {
            return vec![0, 1]; // x: GF(p) itself, reduction is mod p
        }
        let mut lower = vec![0u64; k];
        loop {
            let mut m: Vec<u64> = lower.clone();
            m.push(1);
            if densepoly::is_irreducible(&m, p) {
                return m;
            }
            // odometer increment, c_0 fastest
            let mut i = 0;
            loop {
                lower[i] += 1;
                if lower[i] < p {
                    break;
                }
                lower[i] = 0;
                i += 1;
                assert!(i < k, "no irreducible polynomial found (impossible)");
            }
        }
    }

    /// Parse "p" or "p^k" field spec strings.
    pub fn parse_spec(s: &str, modulus: Option<Vec<u64>>) -> Result<Field> {
        let s = s.trim();
        let (p, k) = match s.split_once('^') {
            Some((p, k)) => (
                p.trim().parse::<u64>().map_err(|_| AlgebraError::Parse {
                    pos: 0,
                    msg: format!("bad field spec `{s}`"),
                })?,
                k.trim().parse::<usize>().map_err(|_| AlgebraError::Parse {
                    pos: 0,
                    msg: format!("bad field spec `{s}`"),
                })?,
            ),
            None => (
                s.parse::<u64>().map_err(|_| AlgebraError::Parse {
                    pos: 0,
                    msg: format!("bad field spec `{s}`"),
                })?,
                1,
            ),
        };
        Field::extension(p, k, modulus)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn k(&self) -> usize {
        self.0.k
    }

    /// Number of elements p^k, if it fits a u64.
    pub fn order(&self) -> Option<u64> {
        let mut acc: u64 = 1;
        for _ in 0..self.0.k {
            acc = acc.checked_mul(self.0.p)?;
        }
        Some(acc)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            field: self.clone(),
            c: smallvec![0; self.0.k],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        let p = self.0.p as i64;
        let r = n.rem_euclid(p) as u64;
        let mut c: Coeffs = smallvec![0; self.0.k];
        c[0] = r;
        FieldElement {
            field: self.clone(),
            c,
        }
    }

    /// Element from an explicit coefficient vector (short vectors are padded).
    pub fn from_coeffs(&self, coeffs: &[i64]) -> Result<FieldElement> {
        if coeffs.len() > self.0.k {
            return Err(AlgebraError::LengthMismatch {
                got: coeffs.len(),
                want: self.0.k,
            });
        }
        let p = self.0.p as i64;
        let mut c: Coeffs = smallvec![0; self.0.k];
        for (i, &x) in coeffs.iter().enumerate() {
            c[i] = x.rem_euclid(p) as u64;
        }
        Ok(FieldElement {
            field: self.clone(),
            c,
        })
    }

    /// The generator t of the polynomial basis (zero when k = 1 is meaningless,
    /// so k >= 2 is required).
    pub fn gen(&self) -> Result<FieldElement> {
        if self.0.k < 2 {
            return Err(AlgebraError::Invalid("prime field has no basis generator".into()));
        }
        self.from_coeffs(&[0, 1])
    }

    /// All field elements in odometer order; only for small fields.
    pub fn elements(&self) -> Vec<FieldElement> {
        let q = self.order().expect("field too large to enumerate");
        let mut out = Vec::with_capacity(q as usize);
        let mut c: Coeffs = smallvec![0; self.0.k];
        loop {
            out.push(FieldElement {
                field: self.clone(),
                c: c.clone(),
            });
            let mut i = 0;
            loop {
                if i == self.0.k {
                    return out;
                }
                c[i] += 1;
                if c[i] < self.0.p {
                    break;
                }
                c[i] = 0;
                i += 1;
            }
        }
    }

    fn add_raw(&self, a: &Coeffs, b: &Coeffs) -> Coeffs {
        let p = self.0.p;
        a.iter().zip(b.iter()).map(|(&x, &y)| (x + y) % p).collect()
    }

    fn sub_raw(&self, a: &Coeffs, b: &Coeffs) -> Coeffs {
        let p = self.0.p;
        a.iter()
            .zip(b.iter())
            .map(|(&x, &y)| (x + p - y) % p)
            .collect()
    }

    fn mul_raw(&self, a: &Coeffs, b: &Coeffs) -> Coeffs {
        let p = self.0.p;
        if self.0.k == 1 {
            return smallvec![mulmod(a[0], b[0], p)];
        }
        let prod = densepoly::mul(a, b, p);
        let mut red = densepoly::rem(&prod, &self.0.modulus, p);
        red.resize(self.0.k, 0);
        red.into_iter().collect()
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement {
            field: self.clone(),
            c: self.add_raw(&a.c, &b.c),
        }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement {
            field: self.clone(),
            c: self.sub_raw(&a.c, &b.c),
        }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        let p = self.0.p;
        FieldElement {
            field: self.clone(),
            c: a.c.iter().map(|&x| (p - x) % p).collect(),
        }
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement {
            field: self.clone(),
            c: self.mul_raw(&a.c, &b.c),
        }
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let p = self.0.p;
        if self.0.k == 1 {
            return Ok(FieldElement {
                field: self.clone(),
                c: smallvec![invmod(a.c[0], p)],
            });
        }
        // extended Euclid on the representative polynomial
        let mut r0: Vec<u64> = self.0.modulus.clone();
        let mut r1: Vec<u64> = a.c.iter().copied().collect();
        densepoly::trim(&mut r1);
        let mut s0: Vec<u64> = vec![];
        let mut s1: Vec<u64> = vec![1];
        while !r1.is_empty() {
            // r0 = q*r1 + r2; track s2 = s0 - q*s1
            let (q, r2) = poly_divmod(&r0, &r1, p);
            let qs1 = densepoly::mul(&q, &s1, p);
            let mut s2 = poly_sub(&s0, &qs1, p);
            densepoly::trim(&mut s2);
            r0 = r1;
            r1 = r2;
            s0 = s1;
            s1 = s2;
        }
        // r0 = gcd (a nonzero constant since the modulus is irreducible)
        debug_assert_eq!(r0.len(), 1);
        let scale = invmod(r0[0], p);
        let mut out: Vec<u64> = s0.iter().map(|&x| mulmod(x, scale, p)).collect();
        out.resize(self.0.k, 0);
        Ok(FieldElement {
            field: self.clone(),
            c: out.into_iter().collect(),
        })
    }

    pub fn pow(&self, a: &FieldElement, mut e: u64) -> FieldElement {
        let mut acc = self.one();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        acc
    }

    /// a^(p^e) for any integer e; negative e gives p-th roots.
    pub fn frobenius(&self, a: &FieldElement, e: i64) -> FieldElement {
        let k = self.0.k as i64;
        let e = e.rem_euclid(k) as usize;
        let mut out = a.clone();
        for _ in 0..e {
            out = self.pow(&out, self.0.p);
        }
        out
    }
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect()
}

fn poly_divmod(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut r = a.to_vec();
    densepoly::trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = invmod(b[db], p);
    let mut q = vec![0u64; r.len().saturating_sub(db).max(1)];
    while r.len() >= db + 1 {
        let dr = r.len() - 1;
        let f = mulmod(r[dr], lead_inv, p);
        q[dr - db] = f;
        for i in 0..=db {
            let idx = dr - db + i;
            let sub = mulmod(f, b[i], p);
            r[idx] = (r[idx] + p - sub) % p;
        }
        densepoly::trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    densepoly::trim(&mut q);
    (q, r)
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }

    pub fn is_one(&self) -> bool {
        self.c[0] == 1 && self.c[1..].iter().all(|&x| x == 0)
    }

    fn check(&self, other: &FieldElement) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(AlgebraError::SpecMismatch(format!(
                "{:?} vs {:?}",
                self.field, other.field
            )))
        }
    }

    pub fn checked_add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.field.add(self, other))
    }

    pub fn checked_sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.field.sub(self, other))
    }

    pub fn checked_mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.field.mul(self, other))
    }

    pub fn inverse(&self) -> Result<FieldElement> {
        self.field.inv(self)
    }

    pub fn frobenius(&self, e: i64) -> FieldElement {
        self.field.frobenius(self, e)
    }

    /// Integer representative for prime-field elements.
    pub fn as_int(&self) -> Option<u64> {
        if self.c[1..].iter().all(|&x| x == 0) {
            Some(self.c[0])
        } else {
            None
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.k() == 1 {
            write!(f, "{}", self.c[0])
        } else {
            write!(f, "[")?;
            for (i, c) in self.c.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{c}")?;
            }
            write!(f, "]")
        }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
