//! Sparse multivariate polynomials over a finite field.

pub mod ghost;
pub mod monomial;
pub mod order;
pub mod parse;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

pub use ghost::GhostRing;
pub use monomial::Monomial;
pub use order::MonomialOrder;

use crate::error::{AlgebraError, Result};
use crate::field::{Field, FieldElement};

#[derive(Debug)]
struct RingData {
    field: Field,
    vars: Vec<String>,
}

/// A polynomial ring k[vars]; cheap to clone and share.
#[derive(Clone, Debug)]
pub struct Ring(Arc<RingData>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.field == other.0.field && self.0.vars == other.0.vars)
    }
}
impl Eq for Ring {}

impl Ring {
    pub fn new(field: Field, vars: Vec<String>) -> Ring {
        Ring(Arc::new(RingData { field, vars }))
    }

    /// Ring with variables x0..x{n-1}.
    pub fn standard(field: Field, n: usize) -> Ring {
        Ring::new(field, (0..n).map(|i| format!("x{i}")).collect())
    }

    pub fn field(&self) -> &Field {
        &self.0.field
    }

    pub fn nvars(&self) -> usize {
        self.0.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.0.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.vars.iter().position(|v| v == name)
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial {
            ring: self.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(&self) -> Polynomial {
        self.constant(self.field().one())
    }

    pub fn constant(&self, c: FieldElement) -> Polynomial {
        if c.is_zero() {
            return self.zero();
        }
        Polynomial {
            ring: self.clone(),
            terms: vec![(Monomial::one(self.nvars()), c)],
        }
    }

    pub fn constant_int(&self, n: i64) -> Polynomial {
        self.constant(self.field().from_int(n))
    }

    pub fn var(&self, i: usize) -> Polynomial {
        self.monomial(Monomial::var(self.nvars(), i, 1), self.field().one())
    }

    pub fn monomial(&self, m: Monomial, c: FieldElement) -> Polynomial {
        assert_eq!(m.nvars(), self.nvars());
        if c.is_zero() {
            return self.zero();
        }
        Polynomial {
            ring: self.clone(),
            terms: vec![(m, c)],
        }
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        parse::parse_polynomial(self, text)
    }
}

/// Sparse polynomial; terms sorted ascending by the structural (lex) order on
/// exponent vectors, no zero coefficients stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<(Monomial, FieldElement)>,
}

impl Polynomial {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, FieldElement)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub(crate) fn from_terms_unsorted(
        ring: Ring,
        mut terms: Vec<(Monomial, FieldElement)>,
    ) -> Polynomial {
        terms.retain(|(_, c)| !c.is_zero());
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        Polynomial { ring, terms }
    }

    pub(crate) fn from_term_map(
        ring: Ring,
        map: HashMap<Monomial, FieldElement>,
    ) -> Polynomial {
        let terms: Vec<_> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Polynomial::from_terms_unsorted(ring, terms)
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(AlgebraError::RingMismatch(
                "operands live in different rings".into(),
            ))
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let field = self.ring.field().clone();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut i = 0;
        let mut j = 0;
        while i < self.terms.len() && j < other.terms.len() {
            match self.terms[i].0.cmp(&other.terms[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = field.add(&self.terms[i].1, &other.terms[j].1);
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms: out,
        })
    }

    pub fn neg(&self) -> Polynomial {
        let field = self.ring.field().clone();
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), field.neg(c)))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.add(&other.neg())
    }

    pub fn scalar_mul(&self, c: &FieldElement) -> Polynomial {
        if c.is_zero() {
            return self.ring.zero();
        }
        let field = self.ring.field().clone();
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (m.clone(), field.mul(x, c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let field = self.ring.field().clone();
        let mut map: HashMap<Monomial, FieldElement> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb)?;
                let c = field.mul(ca, cb);
                match map.entry(m) {
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        let s = field.add(e.get(), &c);
                        *e.get_mut() = s;
                    }
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                }
            }
        }
        Ok(Polynomial::from_term_map(self.ring.clone(), map))
    }

    pub fn mul_term(&self, m: &Monomial, c: &FieldElement) -> Result<Polynomial> {
        if c.is_zero() {
            return Ok(self.ring.zero());
        }
        let field = self.ring.field().clone();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (mm, cc) in &self.terms {
            terms.push((mm.mul(m)?, field.mul(cc, c)));
        }
        // multiplying by a fixed monomial preserves the structural sort
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn pow(&self, e: u64) -> Result<Polynomial> {
        let mut acc = self.ring.one();
        let mut b = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b)?;
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b)?;
            }
        }
        Ok(acc)
    }

    pub fn evaluate(&self, point: &[FieldElement]) -> Result<FieldElement> {
        if point.len() != self.ring.nvars() {
            return Err(AlgebraError::LengthMismatch {
                got: point.len(),
                want: self.ring.nvars(),
            });
        }
        let field = self.ring.field().clone();
        let mut acc = field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = field.mul(&t, &field.pow(&point[i], e as u64));
                }
            }
            acc = field.add(&acc, &t);
        }
        Ok(acc)
    }

    /// Substitute polynomials for the variables.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.ring.nvars() {
            return Err(AlgebraError::LengthMismatch {
                got: images.len(),
                want: self.ring.nvars(),
            });
        }
        let target = images
            .first()
            .map(|p| p.ring.clone())
            .unwrap_or_else(|| self.ring.clone());
        let mut acc = target.zero();
        for (m, c) in &self.terms {
            let mut t = target.constant(c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = t.mul(&images[i].pow(e as u64)?)?;
                }
            }
            acc = acc.add(&t)?;
        }
        Ok(acc)
    }

    /// Re-express in `target`, sending variable i to variable var_map[i].
    pub fn map_variables(&self, target: &Ring, var_map: &[usize]) -> Result<Polynomial> {
        if var_map.len() != self.ring.nvars() {
            return Err(AlgebraError::LengthMismatch {
                got: var_map.len(),
                want: self.ring.nvars(),
            });
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut e = vec![0u32; target.nvars()];
            for (i, &x) in m.exponents().iter().enumerate() {
                if x > 0 {
                    e[var_map[i]] += x as u32;
                }
            }
            terms.push((Monomial::from_exponents(&e)?, c.clone()));
        }
        Ok(Polynomial::from_terms_unsorted(target.clone(), terms))
    }

    /// Term-wise Frobenius: f^(p^h) using the freshman's dream.
    pub fn frobenius_pow(&self, h: u32) -> Result<Polynomial> {
        let field = self.ring.field().clone();
        let q = (field.p() as u128).pow(h);
        if q > u16::MAX as u128 {
            return Err(AlgebraError::DegreeOverflow);
        }
        let q = q as u32;
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let e: Vec<u32> = m
                .exponents()
                .iter()
                .map(|&x| x as u32 * q)
                .collect();
            terms.push((
                Monomial::from_exponents(&e)?,
                field.pow(c, q as u64),
            ));
        }
        Ok(Polynomial::from_terms_unsorted(self.ring.clone(), terms))
    }

    /// Total degree; None for the zero polynomial.
    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.total_degree()).max()
    }

    /// Degree if homogeneous in the ordinary grading.
    pub fn homogeneous_degree(&self) -> Result<Option<u64>> {
        if self.is_zero() {
            return Err(AlgebraError::ZeroPolynomial);
        }
        let d = self.terms[0].0.total_degree();
        Ok(self
            .terms
            .iter()
            .all(|(m, _)| m.total_degree() == d)
            .then_some(d))
    }

    /// deg_h if every monomial has the same h-degree w.r.t. q = p^h.
    pub fn h_homogeneous_degree(&self, h: u32) -> Result<Option<u64>> {
        if self.is_zero() {
            return Err(AlgebraError::ZeroPolynomial);
        }
        let q = (self.ring.field().p() as u128).pow(h);
        let q = u64::try_from(q).map_err(|_| AlgebraError::DegreeOverflow)?;
        let d = self.terms[0].0.h_degree(q);
        Ok(self
            .terms
            .iter()
            .all(|(m, _)| m.h_degree(q) == d)
            .then_some(d))
    }

    /// Homogeneous and h-homogeneous at once.
    pub fn is_bihomogeneous(&self, h: u32) -> Result<bool> {
        Ok(self.homogeneous_degree()?.is_some() && self.h_homogeneous_degree(h)?.is_some())
    }

    /// Leading term under an order.
    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Monomial, &FieldElement)> {
        self.terms
            .iter()
            .max_by(|a, b| order.cmp(&a.0, &b.0))
            .map(|(m, c)| (m, c))
    }

    /// Terms sorted descending under an order.
    pub fn sorted_terms(&self, order: &MonomialOrder) -> Vec<(&Monomial, &FieldElement)> {
        let mut v: Vec<_> = self.terms.iter().map(|(m, c)| (m, c)).collect();
        v.sort_by(|a, b| order.cmp(b.0, a.0));
        v
    }

    /// Render with terms sorted descending under `order`.
    pub fn to_string_ordered(&self, order: &MonomialOrder) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.sorted_terms(order).into_iter().enumerate() {
            if idx > 0 {
                out.push_str(" + ");
            }
            out.push_str(&format_term(&self.ring, m, c));
        }
        out
    }

    /// The coefficient of a monomial (zero if absent).
    pub fn coefficient(&self, m: &Monomial) -> FieldElement {
        match self.terms.binary_search_by(|(mm, _)| mm.cmp(m)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => self.ring.field().zero(),
        }
    }

    /// Variables that actually occur.
    pub fn support(&self) -> Vec<usize> {
        let mut seen = vec![false; self.ring.nvars()];
        for (m, _) in &self.terms {
            for i in m.support() {
                seen[i] = true;
            }
        }
        seen.iter()
            .enumerate()
            .filter(|(_, &s)| s)
            .map(|(i, _)| i)
            .collect()
    }
}

fn format_term(ring: &Ring, m: &Monomial, c: &FieldElement) -> String {
    let mut parts: Vec<String> = Vec::new();
    let coeff = format!("{c}");
    if m.is_one() {
        return coeff;
    }
    if !(c.is_one()) {
        parts.push(coeff);
    }
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if e == 1 {
            parts.push(ring.vars()[i].clone());
        } else {
            parts.push(format!("{}^{}", ring.vars()[i], e));
        }
    }
    parts.join("*")
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_ordered(&MonomialOrder::Lex))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
