//! The semilinear and symplectic layer: p^h-semilinear functionals and the
//! double-dual map, the q-symplectic pairing, a free alternating algebra of
//! level-tagged differentials with exterior derivative and contraction, and
//! symbolic Lagrangian/cone certificates for conormal ideals.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use crate::duality::ConormalIdeal;
use crate::error::{AlgebraError, Result};
use crate::field::{Field, FieldElement};
use crate::hasse::hasse_h;
use crate::poly::{Polynomial, Ring};

/// An additive, p^h-semilinear functional v |-> sum a_i v_i^{p^h}.
///
/// Scaling the argument scales the value through Frobenius:
/// phi(c v) = c^{p^h} phi(v).
#[derive(Clone, Debug)]
pub struct PhLinearForm {
    field: Field,
    coeffs: Vec<FieldElement>,
    level: u32,
}

impl PhLinearForm {
    pub fn new(field: Field, coeffs: Vec<FieldElement>, level: u32) -> PhLinearForm {
        PhLinearForm {
            field,
            coeffs,
            level,
        }
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// Scale every coefficient; phi and c*phi differ by a plain (not twisted)
    /// factor of c.
    pub fn scaled(&self, c: &FieldElement) -> PhLinearForm {
        PhLinearForm {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|a| self.field.mul(a, c)).collect(),
            level: self.level,
        }
    }

    pub fn ph_eval(&self, v: &[FieldElement]) -> Result<FieldElement> {
        if v.len() != self.coeffs.len() {
            return Err(AlgebraError::LengthMismatch {
                got: v.len(),
                want: self.coeffs.len(),
            });
        }
        let mut acc = self.field.zero();
        for (a, x) in self.coeffs.iter().zip(v) {
            let twisted = x.frobenius(self.level as i64);
            acc = self.field.add(&acc, &self.field.mul(a, &twisted));
        }
        Ok(acc)
    }
}

/// The canonical map F(v)(phi) = phi(v^{1/p^{2h}})^{p^h} identifying V with
/// its double p^h-semilinear dual. Linear in v, p^h-semilinear in phi.
pub fn double_dual(v: &[FieldElement], phi: &PhLinearForm) -> Result<FieldElement> {
    let h = phi.level as i64;
    let pulled: Vec<FieldElement> = v.iter().map(|x| x.frobenius(-2 * h)).collect();
    Ok(phi.ph_eval(&pulled)?.frobenius(h))
}

/// The q-symplectic pairing on vectors split as (lambda | mu) against the
/// symplectic basis: Omega(v, w) = sum lambda_i^{p^h} mu'_i - mu_i lambda'^{p^h}_i.
pub fn omega(field: &Field, v: &[FieldElement], w: &[FieldElement], h: u32) -> Result<FieldElement> {
    if v.len() != w.len() {
        return Err(AlgebraError::LengthMismatch {
            got: w.len(),
            want: v.len(),
        });
    }
    if v.len() % 2 != 0 {
        return Err(AlgebraError::Invalid(
            "symplectic vectors must have even length".into(),
        ));
    }
    let n = v.len() / 2;
    let mut acc = field.zero();
    for i in 0..n {
        let pos = field.mul(&v[i].frobenius(h as i64), &w[n + i]);
        let neg = field.mul(&v[n + i], &w[i].frobenius(h as i64));
        acc = field.add(&acc, &field.sub(&pos, &neg));
    }
    Ok(acc)
}

/// The standard q-symplectic form on a 2(n+1)-dimensional space at level h:
/// Omega(e_i, f_j) = delta_ij, Omega(f_i, e_j) = -delta_ij, and the basis
/// vectors of each half are mutually isotropic.
#[derive(Clone, Copy, Debug)]
pub struct QSymplecticForm {
    pub dim: usize,
    pub level: u32,
}

impl QSymplecticForm {
    pub fn new(dim: usize, level: u32) -> QSymplecticForm {
        QSymplecticForm { dim, level }
    }

    pub fn eval(
        &self,
        field: &Field,
        v: &[FieldElement],
        w: &[FieldElement],
    ) -> Result<FieldElement> {
        if v.len() != 2 * self.dim {
            return Err(AlgebraError::LengthMismatch {
                got: v.len(),
                want: 2 * self.dim,
            });
        }
        omega(field, v, w, self.level)
    }
}

/// Which coordinate family a differential symbol belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SymbolKind {
    X,
    Xi,
}

/// A generator d^{(level)}x_index or d^{(level)}xi_index of the free
/// alternating algebra. Symbols at distinct levels are independent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol {
    pub kind: SymbolKind,
    pub index: usize,
    pub level: u32,
}

impl Symbol {
    pub fn x(index: usize, level: u32) -> Symbol {
        Symbol {
            kind: SymbolKind::X,
            index,
            level,
        }
    }

    pub fn xi(index: usize, level: u32) -> Symbol {
        Symbol {
            kind: SymbolKind::Xi,
            index,
            level,
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            SymbolKind::X => "x",
            SymbolKind::Xi => "xi",
        };
        if self.level == 0 {
            write!(f, "d{}{}", name, self.index)
        } else {
            write!(f, "d{}{}{}", self.level, name, self.index)
        }
    }
}

/// Sort a symbol tuple, tracking the permutation sign. Returns `None` when a
/// symbol repeats (the wedge vanishes by alternation).
fn sort_symbols(mut syms: Vec<Symbol>) -> Option<(Vec<Symbol>, bool)> {
    let mut negate = false;
    // insertion sort; swap count parity is the permutation sign
    for i in 1..syms.len() {
        let mut j = i;
        while j > 0 && syms[j - 1] > syms[j] {
            syms.swap(j - 1, j);
            negate = !negate;
            j -= 1;
        }
    }
    if syms.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((syms, negate))
}

/// An element of the free graded alternating algebra over the polynomial
/// ring: a sum of polynomial coefficients times strictly sorted wedges of
/// [`Symbol`]s. Mixed degrees are allowed.
#[derive(Clone, Debug, PartialEq)]
pub struct DifferentialForm {
    ring: Ring,
    terms: BTreeMap<Vec<Symbol>, Polynomial>,
}

fn accumulate(
    map: &mut BTreeMap<Vec<Symbol>, Polynomial>,
    key: Vec<Symbol>,
    val: Polynomial,
) -> Result<()> {
    if val.is_zero() {
        return Ok(());
    }
    match map.entry(key) {
        Entry::Occupied(mut e) => {
            let sum = e.get().add(&val)?;
            if sum.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = sum;
            }
        }
        Entry::Vacant(e) => {
            e.insert(val);
        }
    }
    Ok(())
}

impl DifferentialForm {
    pub fn zero(ring: &Ring) -> DifferentialForm {
        DifferentialForm {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// A degree-0 form (a plain polynomial coefficient).
    pub fn scalar(f: &Polynomial) -> DifferentialForm {
        let mut terms = BTreeMap::new();
        if !f.is_zero() {
            terms.insert(Vec::new(), f.clone());
        }
        DifferentialForm {
            ring: f.ring().clone(),
            terms,
        }
    }

    /// The 1-form f * symbol.
    pub fn one_form(f: &Polynomial, symbol: Symbol) -> DifferentialForm {
        let mut terms = BTreeMap::new();
        if !f.is_zero() {
            terms.insert(vec![symbol], f.clone());
        }
        DifferentialForm {
            ring: f.ring().clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &BTreeMap<Vec<Symbol>, Polynomial> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_ring(&self, other: &DifferentialForm) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(AlgebraError::RingMismatch(
                "differential forms over different rings".into(),
            ))
        }
    }

    pub fn add(&self, other: &DifferentialForm) -> Result<DifferentialForm> {
        self.check_ring(other)?;
        let mut terms = self.terms.clone();
        for (key, val) in &other.terms {
            accumulate(&mut terms, key.clone(), val.clone())?;
        }
        Ok(DifferentialForm {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn neg(&self) -> DifferentialForm {
        DifferentialForm {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.clone(), v.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &DifferentialForm) -> Result<DifferentialForm> {
        self.add(&other.neg())
    }

    /// Graded anticommutative product: omega ^ tau = (-1)^{kl} tau ^ omega.
    pub fn wedge(&self, other: &DifferentialForm) -> Result<DifferentialForm> {
        self.check_ring(other)?;
        let mut terms = BTreeMap::new();
        for (s, f) in &self.terms {
            for (t, g) in &other.terms {
                let mut joined = s.clone();
                joined.extend_from_slice(t);
                let Some((key, negate)) = sort_symbols(joined) else {
                    continue;
                };
                let mut coeff = f.mul(g)?;
                if negate {
                    coeff = coeff.neg();
                }
                accumulate(&mut terms, key, coeff)?;
            }
        }
        Ok(DifferentialForm {
            ring: self.ring.clone(),
            terms,
        })
    }

    /// The level-h exterior derivative, applied coefficient-wise:
    /// d^{(h)}f = sum_i D_i^{(h)}(f) d^{(h)}x_i, prepended to each wedge.
    pub fn d_h(&self, h: u32) -> Result<DifferentialForm> {
        let mut terms = BTreeMap::new();
        for (key, f) in &self.terms {
            for i in 0..self.ring.nvars() {
                let df = hasse_h(f, i, h)?;
                if df.is_zero() {
                    continue;
                }
                let mut joined = vec![Symbol::x(i, h)];
                joined.extend_from_slice(key);
                let Some((sorted, negate)) = sort_symbols(joined) else {
                    continue;
                };
                accumulate(&mut terms, sorted, if negate { df.neg() } else { df })?;
            }
        }
        Ok(DifferentialForm {
            ring: self.ring.clone(),
            terms,
        })
    }
}

impl fmt::Display for DifferentialForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (key, coeff) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let symbols: Vec<String> = key.iter().map(|s| s.to_string()).collect();
            let wedge = symbols.join("^");
            if key.is_empty() {
                write!(f, "{coeff}")?;
            } else if coeff == &self.ring.one() {
                write!(f, "{wedge}")?;
            } else if coeff.num_terms() == 1 {
                write!(f, "{coeff}*{wedge}")?;
            } else {
                write!(f, "({coeff})*{wedge}")?;
            }
        }
        Ok(())
    }
}

/// A derivation X = sum a_{h,i} D_{x_i}^{(h)} with finitely many nonzero
/// polynomial coefficients.
#[derive(Clone, Debug)]
pub struct VectorField {
    ring: Ring,
    coeffs: BTreeMap<(u32, usize), Polynomial>,
}

impl VectorField {
    pub fn new(ring: &Ring) -> VectorField {
        VectorField {
            ring: ring.clone(),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn with_component(mut self, level: u32, index: usize, a: Polynomial) -> VectorField {
        if a.is_zero() {
            self.coeffs.remove(&(level, index));
        } else {
            self.coeffs.insert((level, index), a);
        }
        self
    }

    pub fn component(&self, level: u32, index: usize) -> Option<&Polynomial> {
        self.coeffs.get(&(level, index))
    }
}

/// Interior product i_X. On 1-forms it is the twisted pairing
/// sum a_{h,i}(X)^{p^h} b_{h,i}(omega); on higher degree it extends as a
/// degree -1 signed derivation (an implementation convention: the source
/// construction only defines the pairing on 1-forms). Degree-0 terms are
/// annihilated.
pub fn contract(x: &VectorField, form: &DifferentialForm) -> Result<DifferentialForm> {
    if &x.ring != form.ring() {
        return Err(AlgebraError::RingMismatch(
            "vector field and form over different rings".into(),
        ));
    }
    let mut terms = BTreeMap::new();
    for (key, f) in form.terms() {
        for (slot, sym) in key.iter().enumerate() {
            if sym.kind != SymbolKind::X {
                continue;
            }
            let Some(a) = x.coeffs.get(&(sym.level, sym.index)) else {
                continue;
            };
            let mut coeff = a.frobenius_pow(sym.level)?.mul(f)?;
            if slot % 2 == 1 {
                coeff = coeff.neg();
            }
            let mut rest = key.clone();
            rest.remove(slot);
            accumulate(&mut terms, rest, coeff)?;
        }
    }
    Ok(DifferentialForm {
        ring: form.ring().clone(),
        terms,
    })
}

/// One entry of the mixed-Hessian cancellation table behind the Lagrangian
/// check: whether D^{(level)}_{x_nu}(s_j) equals
/// D^{(h)}_{x_j}(D^{(level)}_{x_nu} F).
#[derive(Clone, Debug)]
pub struct HessianPair {
    pub xi_index: usize,
    pub x_index: usize,
    pub level: u32,
    pub cancels: bool,
}

/// Outcome of the symbolic Lagrangian check, with the full cancellation
/// table. The dimension condition of a Lagrangian subvariety is never
/// examined (`dimension_checked` stays false); only the cone and
/// 2-form-vanishing conditions are.
#[derive(Clone, Debug)]
pub struct LagrangianCertificate {
    pub holds: bool,
    pub level: u32,
    pub pairs: Vec<HessianPair>,
    /// The first non-cancelling difference, when the check fails.
    pub counterexample: Option<Polynomial>,
    pub dimension_checked: bool,
}

/// Core of the Lagrangian check on explicit data: `potential` is
/// F = sum lambda_i f_i (lambdas as free constants), `substitutions[j]` the
/// polynomial s_j substituted for xi_j, and `x_vars` the derivative
/// directions. The 2-form
/// sum_j d^{(h)}x_j ^ d xi_j + dx_j ^ d^{(h)} xi_j vanishes after the
/// substitution exactly when every mixed Hessian commutes:
/// D^{(l)}_{nu}(s_j) = D^{(h)}_{j}(D^{(l)}_{nu} F) for l in {0, h}. A
/// substitution that deviates from grad^{(h)} F (a flipped sign, a wrong
/// level) breaks some pair and is reported with the residual.
pub fn lagrangian_check_raw(
    potential: &Polynomial,
    substitutions: &[Polynomial],
    x_vars: &[usize],
    h: u32,
) -> Result<LagrangianCertificate> {
    if substitutions.len() != x_vars.len() {
        return Err(AlgebraError::LengthMismatch {
            got: substitutions.len(),
            want: x_vars.len(),
        });
    }
    let mut levels = vec![0, h];
    levels.dedup();
    let mut pairs = Vec::new();
    let mut counterexample = None;
    for &level in &levels {
        for (j, s) in substitutions.iter().enumerate() {
            for &nu in x_vars {
                let lhs = hasse_h(s, nu, level)?;
                let rhs = hasse_h(&hasse_h(potential, nu, level)?, x_vars[j], h)?;
                let cancels = lhs == rhs;
                if !cancels && counterexample.is_none() {
                    counterexample = Some(lhs.sub(&rhs)?);
                }
                pairs.push(HessianPair {
                    xi_index: j,
                    x_index: nu,
                    level,
                    cancels,
                });
            }
        }
    }
    Ok(LagrangianCertificate {
        holds: counterexample.is_none(),
        level: h,
        pairs,
        counterexample,
        dimension_checked: false,
    })
}

/// Symbolically verify that the level-h conormal ideal is Lagrangian for the
/// q-symplectic structure: reads the substitutions xi_j = s_j off the
/// conormal generators and delegates to [`lagrangian_check_raw`].
pub fn lagrangian_check(c: &ConormalIdeal, h: u32) -> Result<LagrangianCertificate> {
    let block = c.xi_block(h)?;
    let ambient = c.ambient_ring();
    let n = block.len();
    let r = c.base().generators().len();
    let b = c
        .levels()
        .iter()
        .position(|&l| l == h)
        .expect("xi_block already validated the level");
    let gens = c.ideal().generators();
    // the first r ambient generators are the base generators, re-expressed
    let mut potential = ambient.zero();
    for (i, g) in gens.iter().take(r).enumerate() {
        let term = if c.use_lambda() {
            ambient.var(n + i).mul(g)?
        } else {
            g.clone()
        };
        potential = potential.add(&term)?;
    }
    let mut substitutions = Vec::with_capacity(n);
    for j in 0..n {
        let g = &gens[r + b * n + j];
        substitutions.push(ambient.var(block[j]).sub(g)?);
    }
    let x_vars: Vec<usize> = (0..n).collect();
    lagrangian_check_raw(&potential, &substitutions, &x_vars, h)
}

/// Shape check behind [`cone_check`]: every generator must be jointly
/// homogeneous of degree 0 or 1 in the variables from `aux_start` on (the
/// lambda and xi blocks). Without lambda multipliers the hypersurface
/// generators xi_j - s_j(x) carry an implicit lambda = 1 on the tail, so
/// degree-0 terms are admitted alongside the degree-1 ones.
pub fn cone_generators_check(gens: &[Polynomial], aux_start: usize, use_lambda: bool) -> bool {
    gens.iter().all(|g| {
        let degs: Vec<u64> = g
            .terms()
            .iter()
            .map(|(m, _)| {
                m.exponents()[aux_start..]
                    .iter()
                    .map(|&e| e as u64)
                    .sum()
            })
            .collect();
        if degs.iter().all(|&d| d == 0) {
            return true;
        }
        if use_lambda {
            degs.iter().all(|&d| d == 1)
        } else {
            degs.iter().all(|&d| d <= 1) && degs.iter().any(|&d| d == 1)
        }
    })
}

/// Verify the conical condition: simultaneously scaling the lambda and xi
/// variables preserves the zero set of every conormal generator.
pub fn cone_check(c: &ConormalIdeal) -> bool {
    cone_generators_check(
        c.ideal().generators(),
        c.base().ring().nvars(),
        c.use_lambda(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::Ideal;
    use crate::hasse::nabla_h;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rand_elt(rng: &mut ChaCha8Rng, field: &Field) -> FieldElement {
        let coeffs: Vec<i64> = (0..field.k())
            .map(|_| rng.gen_range(0..field.p() as i64))
            .collect();
        field.from_coeffs(&coeffs).unwrap()
    }

    fn rand_vec(rng: &mut ChaCha8Rng, field: &Field, n: usize) -> Vec<FieldElement> {
        (0..n).map(|_| rand_elt(rng, field)).collect()
    }

    fn rand_poly(rng: &mut ChaCha8Rng, ring: &Ring, max_exp: u16, terms: usize) -> Polynomial {
        let mut acc = ring.zero();
        for _ in 0..terms {
            let exps: Vec<u32> = (0..ring.nvars())
                .map(|_| rng.gen_range(0..=max_exp) as u32)
                .collect();
            let m = crate::poly::Monomial::from_exponents(&exps).unwrap();
            let c = rand_elt(rng, ring.field());
            acc = acc.add(&ring.monomial(m, c)).unwrap();
        }
        acc
    }

    fn unit(field: &Field, n: usize, i: usize) -> Vec<FieldElement> {
        (0..n)
            .map(|j| if j == i { field.one() } else { field.zero() })
            .collect()
    }

    #[test]
    fn prime_field_cubes_fix_the_evaluation() {
        let f = Field::prime(3).unwrap();
        let phi = PhLinearForm::new(f.clone(), vec![f.from_int(1), f.from_int(2)], 1);
        let v = vec![f.from_int(1), f.from_int(1)];
        assert_eq!(phi.ph_eval(&v).unwrap(), f.zero());
    }

    #[test]
    fn evaluation_is_semilinear_in_the_argument() {
        let f = Field::extension(3, 2, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let phi = PhLinearForm::new(f.clone(), rand_vec(&mut rng, &f, 3), 1);
            let v = rand_vec(&mut rng, &f, 3);
            let lam = rand_elt(&mut rng, &f);
            let scaled: Vec<FieldElement> = v.iter().map(|x| f.mul(&lam, x)).collect();
            let lhs = phi.ph_eval(&scaled).unwrap();
            let rhs = f.mul(&lam.frobenius(1), &phi.ph_eval(&v).unwrap());
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn coordinate_forms_are_dual_to_the_basis() {
        let f = Field::prime(5).unwrap();
        let phi = PhLinearForm::new(f.clone(), unit(&f, 2, 0), 1);
        assert_eq!(phi.ph_eval(&unit(&f, 2, 1)).unwrap(), f.zero());
        assert_eq!(phi.ph_eval(&unit(&f, 2, 0)).unwrap(), f.one());
    }

    #[test]
    fn double_dual_is_plain_evaluation_over_prime_fields() {
        let f = Field::prime(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..30 {
            let phi = PhLinearForm::new(f.clone(), rand_vec(&mut rng, &f, 4), 1);
            let v = rand_vec(&mut rng, &f, 4);
            assert_eq!(
                double_dual(&v, &phi).unwrap(),
                phi.ph_eval(&v).unwrap()
            );
        }
    }

    #[test]
    fn double_dual_is_linear_in_v_and_semilinear_in_phi() {
        let f = Field::extension(3, 2, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let phi = PhLinearForm::new(f.clone(), rand_vec(&mut rng, &f, 3), 1);
            let v1 = rand_vec(&mut rng, &f, 3);
            let v2 = rand_vec(&mut rng, &f, 3);
            let (l1, l2) = (rand_elt(&mut rng, &f), rand_elt(&mut rng, &f));
            let combo: Vec<FieldElement> = (0..3)
                .map(|i| f.add(&f.mul(&l1, &v1[i]), &f.mul(&l2, &v2[i])))
                .collect();
            let lhs = double_dual(&combo, &phi).unwrap();
            let rhs = f.add(
                &f.mul(&l1, &double_dual(&v1, &phi).unwrap()),
                &f.mul(&l2, &double_dual(&v2, &phi).unwrap()),
            );
            assert_eq!(lhs, rhs, "linearity in v");

            let lam = rand_elt(&mut rng, &f);
            let lhs = double_dual(&v1, &phi.scaled(&lam)).unwrap();
            let rhs = f.mul(&lam.frobenius(1), &double_dual(&v1, &phi).unwrap());
            assert_eq!(lhs, rhs, "semilinearity in phi");
        }
    }

    #[test]
    fn double_dual_separates_basis_vectors() {
        for field in [
            Field::extension(3, 2, None).unwrap(),
            Field::extension(2, 2, None).unwrap(),
        ] {
            let n = 3;
            for i in 0..n {
                for j in 0..n {
                    let phi = PhLinearForm::new(field.clone(), unit(&field, n, j), 1);
                    let got = double_dual(&unit(&field, n, i), &phi).unwrap();
                    let want = if i == j { field.one() } else { field.zero() };
                    assert_eq!(got, want);
                }
            }
        }
    }

    #[test]
    fn symplectic_basis_values() {
        let f = Field::prime(3).unwrap();
        for dim in 1..=5 {
            let form = QSymplecticForm::new(dim, 1);
            let e = |i: usize| unit(&f, 2 * dim, i);
            let fv = |i: usize| unit(&f, 2 * dim, dim + i);
            for i in 0..dim {
                for j in 0..dim {
                    let delta = if i == j { f.one() } else { f.zero() };
                    assert_eq!(form.eval(&f, &e(i), &fv(j)).unwrap(), delta);
                    assert_eq!(
                        form.eval(&f, &fv(i), &e(j)).unwrap(),
                        f.sub(&f.zero(), &delta)
                    );
                    assert_eq!(form.eval(&f, &e(i), &e(j)).unwrap(), f.zero());
                    assert_eq!(form.eval(&f, &fv(i), &fv(j)).unwrap(), f.zero());
                }
            }
        }
    }

    #[test]
    fn symplectic_pairing_is_additive_in_both_slots() {
        let f = Field::extension(3, 2, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..50 {
            let (v1, v2, w) = (
                rand_vec(&mut rng, &f, 6),
                rand_vec(&mut rng, &f, 6),
                rand_vec(&mut rng, &f, 6),
            );
            let sum: Vec<FieldElement> = (0..6).map(|i| f.add(&v1[i], &v2[i])).collect();
            let lhs = omega(&f, &sum, &w, 1).unwrap();
            let rhs = f.add(
                &omega(&f, &v1, &w, 1).unwrap(),
                &omega(&f, &v2, &w, 1).unwrap(),
            );
            assert_eq!(lhs, rhs, "first slot");
            let lhs = omega(&f, &w, &sum, 1).unwrap();
            let rhs = f.add(
                &omega(&f, &w, &v1, 1).unwrap(),
                &omega(&f, &w, &v2, 1).unwrap(),
            );
            assert_eq!(lhs, rhs, "second slot");
        }
    }

    #[test]
    fn mixed_basis_vector_is_isotropic() {
        // v = e_1 + f_1: Omega(v, v) = 1 - 1 = 0
        let f = Field::prime(3).unwrap();
        let dim = 2;
        let mut v = vec![f.zero(); 2 * dim];
        v[1] = f.one();
        v[dim + 1] = f.one();
        assert_eq!(omega(&f, &v, &v, 1).unwrap(), f.zero());
    }

    #[test]
    fn classical_leibniz_differential() {
        let r = Ring::standard(Field::prime(5).unwrap(), 2);
        let fx = r.parse("x0*x1").unwrap();
        let got = DifferentialForm::scalar(&fx).d_h(0).unwrap();
        let want = DifferentialForm::one_form(&r.var(1), Symbol::x(0, 0))
            .add(&DifferentialForm::one_form(&r.var(0), Symbol::x(1, 0)))
            .unwrap();
        assert_eq!(got, want);
    }

    #[test]
    fn frobenius_power_has_a_pure_level_h_differential() {
        let r = Ring::standard(Field::prime(3).unwrap(), 2);
        let f = r.parse("x0^3").unwrap();
        let got = DifferentialForm::scalar(&f).d_h(1).unwrap();
        assert_eq!(got, DifferentialForm::one_form(&r.one(), Symbol::x(0, 1)));
        // its level-0 differential vanishes: 3 x0^2 = 0 in characteristic 3
        assert!(DifferentialForm::scalar(&f).d_h(0).unwrap().is_zero());
        assert_eq!(got.to_string(), "d1x0");
    }

    #[test]
    fn wedge_alternates() {
        let r = Ring::standard(Field::prime(3).unwrap(), 2);
        let dx0 = DifferentialForm::one_form(&r.one(), Symbol::x(0, 0));
        let dx1 = DifferentialForm::one_form(&r.one(), Symbol::x(1, 0));
        let a = dx0.wedge(&dx1).unwrap();
        let b = dx1.wedge(&dx0).unwrap();
        assert!(a.add(&b).unwrap().is_zero());
        assert!(dx0.wedge(&dx0).unwrap().is_zero());
        assert_eq!(a.to_string(), "dx0^dx1");
    }

    #[test]
    fn odd_forms_square_to_zero() {
        let r = Ring::standard(Field::prime(3).unwrap(), 3);
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..20 {
            let mut one_form = DifferentialForm::zero(&r);
            for i in 0..3 {
                for level in 0..2 {
                    let c = rand_poly(&mut rng, &r, 2, 2);
                    one_form = one_form
                        .add(&DifferentialForm::one_form(&c, Symbol::x(i, level)))
                        .unwrap();
                }
            }
            assert!(one_form.wedge(&one_form).unwrap().is_zero());
            // a random 3-form is also odd
            let three = one_form
                .wedge(&one_form.d_h(1).unwrap())
                .unwrap();
            assert!(three.wedge(&three).unwrap().is_zero());
        }
    }

    #[test]
    fn repeated_exterior_derivative_vanishes() {
        let r = Ring::standard(Field::prime(3).unwrap(), 3);
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for _ in 0..20 {
            let f = DifferentialForm::scalar(&rand_poly(&mut rng, &r, 8, 4));
            for h in 0..3u32 {
                assert!(f.d_h(h).unwrap().d_h(h).unwrap().is_zero());
            }
            // at mixed levels the two derivatives anticommute instead
            for (h1, h2) in [(0u32, 1u32), (0, 2), (1, 2)] {
                let a = f.d_h(h1).unwrap().d_h(h2).unwrap();
                let b = f.d_h(h2).unwrap().d_h(h1).unwrap();
                assert!(a.add(&b).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn contraction_pairs_with_the_dual_basis() {
        let f9 = Field::extension(3, 2, None).unwrap();
        let r = Ring::standard(f9.clone(), 2);
        let d1x0 = DifferentialForm::one_form(&r.one(), Symbol::x(0, 1));
        let x = VectorField::new(&r).with_component(1, 0, r.one());
        assert_eq!(
            contract(&x, &d1x0).unwrap(),
            DifferentialForm::scalar(&r.one())
        );
        // a constant coefficient comes out twisted: a^{p^h}
        let a = f9.gen().unwrap();
        let xa = VectorField::new(&r).with_component(1, 0, r.constant(a.clone()));
        assert_eq!(
            contract(&xa, &d1x0).unwrap(),
            DifferentialForm::scalar(&r.constant(a.frobenius(1)))
        );
        // level mismatch annihilates
        let dx0 = DifferentialForm::one_form(&r.one(), Symbol::x(0, 0));
        assert!(contract(&x, &dx0).unwrap().is_zero());
        // degree-0 forms are annihilated
        let scalar = DifferentialForm::scalar(&r.var(0));
        assert!(contract(&x, &scalar).unwrap().is_zero());
    }

    #[test]
    fn contraction_is_a_signed_derivation() {
        let r = Ring::standard(Field::prime(3).unwrap(), 3);
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        for _ in 0..20 {
            let mut x = VectorField::new(&r);
            for i in 0..3 {
                for level in 0..2 {
                    x = x.with_component(level, i, rand_poly(&mut rng, &r, 2, 1));
                }
            }
            let mut omega1 = DifferentialForm::zero(&r);
            let mut tau1 = DifferentialForm::zero(&r);
            for i in 0..3 {
                for level in 0..2 {
                    omega1 = omega1
                        .add(&DifferentialForm::one_form(
                            &rand_poly(&mut rng, &r, 2, 2),
                            Symbol::x(i, level),
                        ))
                        .unwrap();
                    tau1 = tau1
                        .add(&DifferentialForm::one_form(
                            &rand_poly(&mut rng, &r, 2, 2),
                            Symbol::x(i, level),
                        ))
                        .unwrap();
                }
            }
            let tau = tau1.wedge(&omega1.d_h(0).unwrap()).unwrap();
            // deg omega1 = 1, so the sign on the second summand is -1
            let lhs = contract(&x, &omega1.wedge(&tau).unwrap()).unwrap();
            let rhs = contract(&x, &omega1)
                .unwrap()
                .wedge(&tau)
                .unwrap()
                .sub(&omega1.wedge(&contract(&x, &tau).unwrap()).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn hermitian_conormal_is_lagrangian() {
        let r = Ring::standard(Field::prime(3).unwrap(), 3);
        let f = r.parse("x0^4 + x1^4 + x2^4").unwrap();
        let c = ConormalIdeal::new(&Ideal::new(r, vec![f]), &[1], false).unwrap();
        let cert = lagrangian_check(&c, 1).unwrap();
        assert!(cert.holds);
        assert!(cert.pairs.iter().all(|p| p.cancels));
        assert!(!cert.dimension_checked);
    }

    #[test]
    fn fermat7_conormal_is_lagrangian_with_multipliers() {
        let r = Ring::standard(Field::prime(3).unwrap(), 3);
        let f = r.parse("x0^7 + x1^7 + x2^7").unwrap();
        let c = ConormalIdeal::new(&Ideal::new(r, vec![f]), &[0, 1], true).unwrap();
        for h in [0, 1] {
            let cert = lagrangian_check(&c, h).unwrap();
            assert!(cert.holds, "level {h}");
            assert!(cert.counterexample.is_none());
        }
    }

    #[test]
    fn corrupted_substitution_sign_is_detected() {
        let r = Ring::standard(Field::prime(3).unwrap(), 3);
        let f = r.parse("x0^7 + x1^7 + x2^7").unwrap();
        let mut subs = nabla_h(&f, 1).unwrap();
        subs[1] = subs[1].neg();
        let cert = lagrangian_check_raw(&f, &subs, &[0, 1, 2], 1).unwrap();
        assert!(!cert.holds);
        assert!(cert.counterexample.is_some());
        assert!(cert.pairs.iter().any(|p| !p.cancels));
    }

    #[test]
    fn conormal_generators_pass_the_cone_check() {
        let r = Ring::standard(Field::prime(3).unwrap(), 3);
        // two generators force lambda multipliers
        let gens = vec![
            r.parse("x0^2 + 2*x1*x2").unwrap(),
            r.parse("x1^2 + 2*x0*x2").unwrap(),
        ];
        let c = ConormalIdeal::new(&Ideal::new(r.clone(), gens), &[0, 1], true).unwrap();
        assert!(cone_check(&c));

        // hypersurface case without multipliers
        let f = r.parse("x0^4 + x1^4 + x2^4").unwrap();
        let c = ConormalIdeal::new(&Ideal::new(r, vec![f]), &[1], false).unwrap();
        assert!(cone_check(&c));
    }

    #[test]
    fn quadratic_xi_term_fails_the_cone_check() {
        let r = Ring::standard(Field::prime(3).unwrap(), 3);
        let f = r.parse("x0^4 + x1^4 + x2^4").unwrap();
        let c = ConormalIdeal::new(&Ideal::new(r, vec![f]), &[1], false).unwrap();
        let mut gens = c.ideal().generators().to_vec();
        gens.push(c.ambient_ring().parse("y0^2 + x0").unwrap());
        assert!(!cone_generators_check(&gens, 3, c.use_lambda()));
    }
}
