//! h-conormal ideals and dual varieties: conormal construction, elimination
//! duals, h-nonsingularity, the level heuristic, closed-form duals of
//! generalized quadratic forms, and the reflexivity verdict.

use std::time::Instant;

use crate::error::{AlgebraError, Result};
use crate::field::{Field, FieldElement};
use crate::groebner::Ideal;
use crate::hasse::{hasse_h, nabla_h};
use crate::poly::{MonomialOrder, Polynomial, Ring};

/// Default cap for the level heuristic.
pub const DEFAULT_H_MAX: u32 = 6;

/// The conormal ideal of V(I) at the chosen derivative levels.
///
/// Ambient variables are laid out as the x-block, then the lambda multipliers
/// (when enabled), then one xi-block per level in ascending level order. The
/// xi-variables are numbered flat across blocks: y0..yn for the first level,
/// y{n+1}.. for the next, and so on.
#[derive(Clone, Debug)]
pub struct ConormalIdeal {
    base: Ideal,
    levels: Vec<u32>,
    use_lambda: bool,
    ambient: Ring,
    ideal: Ideal,
    n_x: usize,
    n_gen: usize,
}

impl ConormalIdeal {
    pub fn new(base: &Ideal, levels: &[u32], use_lambda: bool) -> Result<ConormalIdeal> {
        if base.generators().is_empty() {
            return Err(AlgebraError::Invalid("base ideal is zero".into()));
        }
        if levels.is_empty() {
            return Err(AlgebraError::Invalid("empty level set".into()));
        }
        let r = base.generators().len();
        if !use_lambda && r > 1 {
            return Err(AlgebraError::LambdaRequired);
        }
        let mut levels: Vec<u32> = levels.to_vec();
        levels.sort_unstable();
        levels.dedup();

        let x_ring = base.ring().clone();
        let n_x = x_ring.nvars();
        let n_lambda = if use_lambda { r } else { 0 };
        let mut vars = x_ring.vars().to_vec();
        for i in 1..=n_lambda {
            vars.push(format!("lam{i}"));
        }
        for b in 0..levels.len() {
            for i in 0..n_x {
                vars.push(format!("y{}", b * n_x + i));
            }
        }
        let ambient = Ring::new(x_ring.field().clone(), vars);
        let x_map: Vec<usize> = (0..n_x).collect();

        let mut gens: Vec<Polynomial> = Vec::new();
        for f in base.generators() {
            gens.push(f.map_variables(&ambient, &x_map)?);
        }
        for (b, &h) in levels.iter().enumerate() {
            for j in 0..n_x {
                let xi = ambient.var(n_x + n_lambda + b * n_x + j);
                let mut rhs = ambient.zero();
                for (i, f) in base.generators().iter().enumerate() {
                    let d = hasse_h(f, j, h)?.map_variables(&ambient, &x_map)?;
                    let term = if use_lambda {
                        ambient.var(n_x + i).mul(&d)?
                    } else {
                        d
                    };
                    rhs = rhs.add(&term)?;
                }
                gens.push(xi.sub(&rhs)?);
            }
        }
        Ok(ConormalIdeal {
            base: base.clone(),
            levels,
            use_lambda,
            ideal: Ideal::new(ambient.clone(), gens),
            ambient,
            n_x,
            n_gen: r,
        })
    }

    pub fn base(&self) -> &Ideal {
        &self.base
    }

    pub fn levels(&self) -> &[u32] {
        &self.levels
    }

    pub fn use_lambda(&self) -> bool {
        self.use_lambda
    }

    pub fn ambient_ring(&self) -> &Ring {
        &self.ambient
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn set_budget(&mut self, budget: u64) {
        self.ideal = Ideal::new(
            self.ambient.clone(),
            self.ideal.generators().to_vec(),
        )
        .with_budget(budget);
    }

    /// Ambient indices of the xi-block for level `h`.
    pub fn xi_block(&self, h: u32) -> Result<Vec<usize>> {
        let b = self
            .levels
            .iter()
            .position(|&x| x == h)
            .ok_or(AlgebraError::LevelNotPresent(h as usize))?;
        let n_lambda = if self.use_lambda { self.n_gen } else { 0 };
        let start = self.n_x + n_lambda + b * self.n_x;
        Ok((start..start + self.n_x).collect())
    }

    /// Eliminate everything except the level-h xi-block.
    pub fn dual_ideal(&self, h: u32) -> Result<DualVariety> {
        let block = self.xi_block(h)?;
        let ideal = self.ideal.elimination_ideal(&block)?;
        Ok(DualVariety {
            ideal,
            level: h,
            block,
        })
    }
}

/// The (Zariski closure of the) image of the second conormal projection.
#[derive(Clone, Debug)]
pub struct DualVariety {
    /// Ideal over the conormal ambient ring; generators lie in the xi-block.
    pub ideal: Ideal,
    pub level: u32,
    /// Ambient indices of the xi-block the generators live in.
    pub block: Vec<usize>,
}

impl DualVariety {
    /// The same ideal re-expressed over a ring containing only the xi-block
    /// variables (names preserved).
    pub fn restricted(&self) -> Result<Ideal> {
        let ambient = self.ideal.ring();
        let names: Vec<String> = self
            .block
            .iter()
            .map(|&i| ambient.vars()[i].clone())
            .collect();
        let small = Ring::new(ambient.field().clone(), names);
        let mut var_map = vec![0usize; ambient.nvars()];
        for (pos, &i) in self.block.iter().enumerate() {
            var_map[i] = pos;
        }
        let gens = self
            .ideal
            .generators()
            .iter()
            .map(|g| g.map_variables(&small, &var_map))
            .collect::<Result<Vec<_>>>()?;
        Ok(Ideal::new(small, gens))
    }

    /// Relabel the xi-block variables as the variables of `target` (e.g. the
    /// original x-ring), in block order.
    pub fn relabeled(&self, target: &Ring) -> Result<Ideal> {
        if target.nvars() != self.block.len() {
            return Err(AlgebraError::LengthMismatch {
                got: target.nvars(),
                want: self.block.len(),
            });
        }
        let ambient = self.ideal.ring();
        let mut var_map = vec![0usize; ambient.nvars()];
        for (pos, &i) in self.block.iter().enumerate() {
            var_map[i] = pos;
        }
        let gens = self
            .ideal
            .generators()
            .iter()
            .map(|g| g.map_variables(target, &var_map))
            .collect::<Result<Vec<_>>>()?;
        Ok(Ideal::new(target.clone(), gens))
    }
}

/// Rank of a matrix over the field, by Gaussian elimination.
pub fn matrix_rank(field: &Field, mat: &[Vec<FieldElement>]) -> usize {
    let mut m: Vec<Vec<FieldElement>> = mat.to_vec();
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    let mut row = 0;
    for col in 0..cols {
        let pivot = (row..rows).find(|&i| !m[i][col].is_zero());
        let Some(pivot) = pivot else { continue };
        m.swap(row, pivot);
        let inv = m[row][col].inverse().expect("nonzero pivot");
        for c in col..cols {
            m[row][c] = field.mul(&m[row][c], &inv);
        }
        for i in 0..rows {
            if i != row && !m[i][col].is_zero() {
                let factor = m[i][col].clone();
                for c in col..cols {
                    let t = field.mul(&m[row][c], &factor);
                    m[i][c] = field.sub(&m[i][c], &t);
                }
            }
        }
        row += 1;
        rank += 1;
        if row == rows {
            break;
        }
    }
    rank
}

/// Inverse of a square matrix over the field (Gauss-Jordan).
pub fn matrix_inverse(
    field: &Field,
    mat: &[Vec<FieldElement>],
) -> Result<Vec<Vec<FieldElement>>> {
    let n = mat.len();
    let mut a: Vec<Vec<FieldElement>> = mat.to_vec();
    let mut inv: Vec<Vec<FieldElement>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { field.one() } else { field.zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&i| !a[i][col].is_zero())
            .ok_or(AlgebraError::SingularMatrix)?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let pinv = a[col][col].inverse()?;
        for c in 0..n {
            a[col][c] = field.mul(&a[col][c], &pinv);
            inv[col][c] = field.mul(&inv[col][c], &pinv);
        }
        for i in 0..n {
            if i != col && !a[i][col].is_zero() {
                let factor = a[i][col].clone();
                for c in 0..n {
                    let t = field.mul(&a[col][c], &factor);
                    a[i][c] = field.sub(&a[i][c], &t);
                    let t = field.mul(&inv[col][c], &factor);
                    inv[i][c] = field.sub(&inv[i][c], &t);
                }
            }
        }
    }
    Ok(inv)
}

/// True when the h-tangent space at P has the expected dimension: the rank of
/// the matrix of level-h derivatives of the generators at P equals the number
/// of generators (for a hypersurface, a nonzero h-gradient).
pub fn is_h_nonsingular(ideal: &Ideal, point: &[FieldElement], h: u32) -> Result<bool> {
    let field = ideal.ring().field().clone();
    for f in ideal.generators() {
        if !f.evaluate(point)?.is_zero() {
            return Err(AlgebraError::NotOnVariety);
        }
    }
    let r = ideal.generators().len();
    let mut mat: Vec<Vec<FieldElement>> = Vec::with_capacity(r);
    for f in ideal.generators() {
        let grad = nabla_h(f, h)?;
        mat.push(
            grad.iter()
                .map(|g| g.evaluate(point))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    Ok(matrix_rank(&field, &mat) == r)
}

/// Heuristic level suggestion: the smallest h such that the level-h gradients
/// are not all zero and some exponent of some nonzero entry is not divisible
/// by p. Not the exact inseparable degree.
pub fn suggest_h(ideal: &Ideal, h_max: u32) -> Result<u32> {
    if ideal.generators().is_empty() {
        return Err(AlgebraError::Invalid("base ideal is zero".into()));
    }
    let p = ideal.ring().field().p();
    for h in 0..=h_max {
        let mut any_nonzero = false;
        let mut any_unseparated = false;
        for f in ideal.generators() {
            for g in nabla_h(f, h)? {
                if g.is_zero() {
                    continue;
                }
                any_nonzero = true;
                let separated = g.terms().iter().any(|(m, _)| {
                    m.exponents().iter().any(|&e| e as u64 % p != 0)
                });
                if separated {
                    any_unseparated = true;
                }
            }
        }
        if any_nonzero && any_unseparated {
            return Ok(h);
        }
    }
    Err(AlgebraError::NoSuggestion(h_max as usize))
}

/// Closed-form dual of the generalized quadratic form f_A = x^t A x^q.
#[derive(Clone, Debug)]
pub struct QuadraticDual {
    /// Ring in the dual variables y0..yn.
    pub ring: Ring,
    /// The dual relation y^t A^{-tq} y^q, where A^{-tq} is the entrywise
    /// q-th power of the inverse transpose.
    pub relation: Polynomial,
}

/// Dual of V(x^t A x^q) in closed form, without elimination.
pub fn quadratic_form_dual(field: &Field, a: &[Vec<FieldElement>], h: u32) -> Result<QuadraticDual> {
    let n = a.len();
    let q = field
        .p()
        .checked_pow(h)
        .ok_or(AlgebraError::DegreeOverflow)?;
    let inv = matrix_inverse(field, a)?;
    // inverse transpose, then entrywise q-th power
    let mut m: Vec<Vec<FieldElement>> = vec![vec![field.zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            m[i][j] = field.pow(&inv[j][i], q);
        }
    }
    let ring = Ring::new(
        field.clone(),
        (0..n).map(|i| format!("y{i}")).collect(),
    );
    let mut rel = ring.zero();
    for i in 0..n {
        for j in 0..n {
            if m[i][j].is_zero() {
                continue;
            }
            let term = ring
                .var(i)
                .mul(&ring.var(j).pow(q)?)?
                .scalar_mul(&m[i][j]);
            rel = rel.add(&term)?;
        }
    }
    Ok(QuadraticDual { ring, relation: rel })
}

/// Check the substitution identity A * A^{-tq} * (A^t x)^q = A x^q as an
/// identity of polynomial vectors.
pub fn quadratic_substitution_check(
    field: &Field,
    a: &[Vec<FieldElement>],
    h: u32,
) -> Result<bool> {
    let n = a.len();
    let q = field
        .p()
        .checked_pow(h)
        .ok_or(AlgebraError::DegreeOverflow)?;
    let inv = matrix_inverse(field, a)?;
    let ring = Ring::standard(field.clone(), n);
    // xi1 = A^t x
    let xi1: Vec<Polynomial> = (0..n)
        .map(|j| {
            let mut s = ring.zero();
            for i in 0..n {
                s = s.add(&ring.var(i).scalar_mul(&a[i][j]))?;
            }
            Ok(s)
        })
        .collect::<Result<_>>()?;
    // xi = A x^q
    let xi: Vec<Polynomial> = (0..n)
        .map(|i| {
            let mut s = ring.zero();
            for j in 0..n {
                s = s.add(&ring.var(j).pow(q)?.scalar_mul(&a[i][j]))?;
            }
            Ok(s)
        })
        .collect::<Result<_>>()?;
    // A * A^{-tq} has (i,j) entry sum_k a[i][k] * inv[j][k]^q
    for i in 0..n {
        let mut s = ring.zero();
        for j in 0..n {
            let mut c = field.zero();
            for k in 0..n {
                c = field.add(&c, &field.mul(&a[i][k], &field.pow(&inv[j][k], q)));
            }
            s = s.add(&xi1[j].pow(q)?.scalar_mul(&c))?;
        }
        if s != xi[i] {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Equal,
    NotEqual,
}

/// Outcome of the dual-of-the-dual computation.
#[derive(Clone, Debug)]
pub struct ReflexivityReport {
    pub h: u32,
    pub h2: u32,
    /// Hypothesis check: generators homogeneous and h-homogeneous. A failed
    /// hypothesis is a warning, not an error.
    pub bihomogeneous: bool,
    /// First dual, relabeled into the original x-variables.
    pub dual: Ideal,
    /// Second dual, relabeled into the original x-variables.
    pub second_dual: Ideal,
    pub verdict: Verdict,
    pub dual_ms: u128,
    pub second_dual_ms: u128,
}

/// Compute the dual at level `h`, dualize again at level `h2`, and compare
/// with the original ideal (literal reduced-basis equality under grevlex).
pub fn check_reflexive(
    ideal: &Ideal,
    h: u32,
    h2: u32,
    use_lambda: bool,
    budget: u64,
) -> Result<ReflexivityReport> {
    let x_ring = ideal.ring().clone();
    let bihomogeneous = ideal
        .generators()
        .iter()
        .map(|f| f.is_bihomogeneous(h))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .all(|b| b);

    let t0 = Instant::now();
    let mut con = ConormalIdeal::new(ideal, &[h], use_lambda)?;
    con.set_budget(budget);
    let dual = con.dual_ideal(h)?.relabeled(&x_ring)?;
    let dual_ms = t0.elapsed().as_millis();

    let t1 = Instant::now();
    let (second_dual, verdict) = if dual.generators().is_empty() {
        (Ideal::new(x_ring.clone(), Vec::new()), Verdict::NotEqual)
    } else {
        let mut con2 = ConormalIdeal::new(&dual, &[h2], use_lambda)?;
        con2.set_budget(budget);
        let second = con2.dual_ideal(h2)?.relabeled(&x_ring)?;
        let verdict = if second.equal(ideal, &MonomialOrder::GrevLex)? {
            Verdict::Equal
        } else {
            Verdict::NotEqual
        };
        (second, verdict)
    };
    let second_dual_ms = t1.elapsed().as_millis();

    Ok(ReflexivityReport {
        h,
        h2,
        bihomogeneous,
        dual,
        second_dual,
        verdict,
        dual_ms,
        second_dual_ms,
    })
}
