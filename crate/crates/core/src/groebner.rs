//! Buchberger's algorithm over finite fields with block elimination orders:
//! reduced Groebner bases, multivariate division, ideal membership and
//! equality, and elimination ideals.

use std::sync::Mutex;

use crate::error::{AlgebraError, Result};
use crate::field::{Field, FieldElement};
use crate::poly::{Monomial, MonomialOrder, Polynomial, Ring};

/// Default cap on the number of S-pairs processed in one basis computation.
pub const DEFAULT_PAIR_BUDGET: u64 = 2_000_000;

type Term = (Monomial, FieldElement);

/// An ideal with a cached reduced Groebner basis.
#[derive(Debug)]
pub struct Ideal {
    ring: Ring,
    generators: Vec<Polynomial>,
    budget: u64,
    cache: Mutex<Option<(MonomialOrder, Vec<Polynomial>)>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        Ideal {
            ring: self.ring.clone(),
            generators: self.generators.clone(),
            budget: self.budget,
            cache: Mutex::new(self.cache.lock().unwrap().clone()),
        }
    }
}

impl Ideal {
    pub fn new(ring: Ring, generators: Vec<Polynomial>) -> Ideal {
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal {
            ring,
            generators,
            budget: DEFAULT_PAIR_BUDGET,
            cache: Mutex::new(None),
        }
    }

    pub fn with_budget(mut self, budget: u64) -> Ideal {
        self.budget = budget;
        self
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// The reduced Groebner basis under `order` (cached per order).
    pub fn groebner_basis(&self, order: &MonomialOrder) -> Result<Vec<Polynomial>> {
        {
            let cache = self.cache.lock().unwrap();
            if let Some((o, gb)) = cache.as_ref() {
                if o == order {
                    return Ok(gb.clone());
                }
            }
        }
        let gb = buchberger(&self.generators, &self.ring, order, self.budget)?;
        *self.cache.lock().unwrap() = Some((order.clone(), gb.clone()));
        Ok(gb)
    }

    /// Membership via zero remainder against the Groebner basis.
    pub fn member(&self, f: &Polynomial, order: &MonomialOrder) -> Result<bool> {
        let gb = self.groebner_basis(order)?;
        if gb.is_empty() {
            return Ok(f.is_zero());
        }
        let (r, _) = reduce(f, &gb, order)?;
        Ok(r.is_zero())
    }

    /// Ideal equality: identical reduced bases under a common order.
    pub fn equal(&self, other: &Ideal, order: &MonomialOrder) -> Result<bool> {
        if self.ring != other.ring {
            return Err(AlgebraError::RingMismatch(
                "ideals live in different rings".into(),
            ));
        }
        Ok(self.groebner_basis(order)? == other.groebner_basis(order)?)
    }

    /// I ∩ k[keep], via a block order eliminating the other variables.
    pub fn elimination_ideal(&self, keep: &[usize]) -> Result<Ideal> {
        let mut keep_flag = vec![false; self.ring.nvars()];
        for &i in keep {
            if i >= self.ring.nvars() {
                return Err(AlgebraError::Invalid(format!(
                    "variable index {i} out of range"
                )));
            }
            keep_flag[i] = true;
        }
        let elim: Vec<usize> = (0..self.ring.nvars()).filter(|&i| !keep_flag[i]).collect();
        if elim.is_empty() {
            return Ok(self.clone());
        }
        let order = MonomialOrder::elimination(elim);
        let gb = self.groebner_basis(&order)?;
        let kept = gb
            .into_iter()
            .filter(|g| g.support().iter().all(|&i| keep_flag[i]))
            .collect();
        Ok(Ideal::new(self.ring.clone(), kept).with_budget(self.budget))
    }
}

fn to_sorted(f: &Polynomial, order: &MonomialOrder) -> Vec<Term> {
    let mut v: Vec<Term> = f.terms().to_vec();
    v.sort_by(|a, b| order.cmp(&b.0, &a.0));
    v
}

fn from_sorted(ring: &Ring, terms: Vec<Term>) -> Polynomial {
    Polynomial::from_terms_unsorted(ring.clone(), terms)
}

/// Geobucket accumulator for polynomial reduction: terms are spread over
/// buckets of geometrically growing capacity (ascending order inside each
/// bucket) so that subtracting a multiple of a reducer costs the size of the
/// reducer, not the size of the whole intermediate polynomial.
struct Geobucket<'a> {
    field: &'a Field,
    order: &'a MonomialOrder,
    buckets: Vec<Vec<Term>>,
}

impl<'a> Geobucket<'a> {
    fn new(field: &'a Field, order: &'a MonomialOrder) -> Geobucket<'a> {
        Geobucket {
            field,
            order,
            buckets: Vec::new(),
        }
    }

    fn capacity(i: usize) -> usize {
        4usize.saturating_pow(i as u32 + 1)
    }

    /// Merge two ascending term lists, cancelling equal monomials.
    fn merge_lists(field: &Field, order: &MonomialOrder, a: Vec<Term>, b: Vec<Term>) -> Vec<Term> {
        if a.is_empty() {
            return b;
        }
        if b.is_empty() {
            return a;
        }
        let mut out = Vec::with_capacity(a.len() + b.len());
        let mut ai = a.into_iter().peekable();
        let mut bi = b.into_iter().peekable();
        loop {
            match (ai.peek(), bi.peek()) {
                (Some(x), Some(y)) => match order.cmp(&x.0, &y.0) {
                    std::cmp::Ordering::Less => out.push(ai.next().unwrap()),
                    std::cmp::Ordering::Greater => out.push(bi.next().unwrap()),
                    std::cmp::Ordering::Equal => {
                        let x = ai.next().unwrap();
                        let y = bi.next().unwrap();
                        let c = field.add(&x.1, &y.1);
                        if !c.is_zero() {
                            out.push((x.0, c));
                        }
                    }
                },
                (Some(_), None) => {
                    out.extend(ai);
                    break;
                }
                (None, Some(_)) => {
                    out.extend(bi);
                    break;
                }
                (None, None) => break,
            }
        }
        out
    }

    /// Add an ascending term list.
    fn add(&mut self, g: Vec<Term>) {
        if g.is_empty() {
            return;
        }
        let mut i = 0;
        while Self::capacity(i) < g.len() {
            i += 1;
        }
        while self.buckets.len() <= i {
            self.buckets.push(Vec::new());
        }
        let merged =
            Self::merge_lists(self.field, self.order, std::mem::take(&mut self.buckets[i]), g);
        self.buckets[i] = merged;
        while self.buckets[i].len() > Self::capacity(i) {
            if self.buckets.len() <= i + 1 {
                self.buckets.push(Vec::new());
            }
            let lower = std::mem::take(&mut self.buckets[i]);
            let upper = std::mem::take(&mut self.buckets[i + 1]);
            self.buckets[i + 1] = Self::merge_lists(self.field, self.order, lower, upper);
            i += 1;
        }
    }

    /// Remove and return the maximal term (coefficients of equal leading
    /// monomials across buckets are combined; zero sums are skipped).
    fn pop_max(&mut self) -> Option<Term> {
        loop {
            let mut best: Option<usize> = None;
            for (i, b) in self.buckets.iter().enumerate() {
                let Some(t) = b.last() else { continue };
                match best {
                    None => best = Some(i),
                    Some(bi) => {
                        if self.order.cmp(&t.0, &self.buckets[bi].last().unwrap().0)
                            == std::cmp::Ordering::Greater
                        {
                            best = Some(i);
                        }
                    }
                }
            }
            let bi = best?;
            let (m, mut c) = self.buckets[bi].pop().unwrap();
            for (i, b) in self.buckets.iter_mut().enumerate() {
                if i == bi {
                    continue;
                }
                if let Some(t) = b.last() {
                    if t.0 == m {
                        c = self.field.add(&c, &t.1);
                        b.pop();
                    }
                }
            }
            if !c.is_zero() {
                return Some((m, c));
            }
        }
    }
}

/// out = p - c * x^m * g, both inputs sorted descending; merge in one pass.
fn sub_mul(
    p: &[Term],
    g: &[Term],
    m: &Monomial,
    c: &FieldElement,
    field: &Field,
    order: &MonomialOrder,
) -> Result<Vec<Term>> {
    let mut out = Vec::with_capacity(p.len() + g.len());
    let mut i = 0;
    let mut j = 0;
    while i < p.len() && j < g.len() {
        let gm = g[j].0.mul(m)?;
        match order.cmp(&p[i].0, &gm) {
            std::cmp::Ordering::Greater => {
                out.push(p[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Less => {
                out.push((gm, field.neg(&field.mul(&g[j].1, c))));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let v = field.sub(&p[i].1, &field.mul(&g[j].1, c));
                if !v.is_zero() {
                    out.push((gm, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&p[i..]);
    while j < g.len() {
        out.push((g[j].0.mul(m)?, field.neg(&field.mul(&g[j].1, c))));
        j += 1;
    }
    Ok(out)
}

/// Full normal form of `f` against monic `basis` (sorted descending terms).
fn normal_form(
    mut f: Vec<Term>,
    basis: &[Vec<Term>],
    field: &Field,
    order: &MonomialOrder,
) -> Result<Vec<Term>> {
    let mut bucket = Geobucket::new(field, order);
    f.reverse();
    bucket.add(f);
    let mut rem: Vec<Term> = Vec::new();
    'outer: while let Some((lm, lc)) = bucket.pop_max() {
        for g in basis {
            if g[0].0.divides(&lm) {
                // the divisor is monic: subtract lc * x^(lm / lt g) * g; the
                // leading term cancels the popped term, so push the negated
                // scaled tail
                let m = g[0].0.quotient_into(&lm);
                let mut tail = Vec::with_capacity(g.len() - 1);
                for (mm, cc) in g[1..].iter().rev() {
                    tail.push((mm.mul(&m)?, field.neg(&field.mul(cc, &lc))));
                }
                bucket.add(tail);
                continue 'outer;
            }
        }
        rem.push((lm, lc));
    }
    Ok(rem)
}

/// Multivariate division: f = Σ q_i g_i + r, with no monomial of r divisible
/// by any leading term of G. Deterministic: the first divisor in G wins.
pub fn reduce(
    f: &Polynomial,
    basis: &[Polynomial],
    order: &MonomialOrder,
) -> Result<(Polynomial, Vec<Polynomial>)> {
    if basis.is_empty() {
        return Err(AlgebraError::Invalid("empty divisor list".into()));
    }
    let ring = f.ring().clone();
    let field = ring.field().clone();
    let gs: Vec<Vec<Term>> = basis.iter().map(|g| to_sorted(g, order)).collect();
    for (g, b) in gs.iter().zip(basis) {
        if g.is_empty() {
            return Err(AlgebraError::ZeroPolynomial);
        }
        if b.ring() != &ring {
            return Err(AlgebraError::RingMismatch(
                "divisor in a different ring".into(),
            ));
        }
    }
    let mut quot: Vec<Vec<Term>> = vec![Vec::new(); basis.len()];
    let mut rem: Vec<Term> = Vec::new();
    let mut p = to_sorted(f, order);
    p.reverse();
    let mut bucket = Geobucket::new(&field, order);
    bucket.add(p);
    'outer: while let Some((lm, lc)) = bucket.pop_max() {
        for (k, g) in gs.iter().enumerate() {
            let (gm, gc) = &g[0];
            if gm.divides(&lm) {
                let m = gm.quotient_into(&lm);
                let c = field.mul(&lc, &gc.inverse()?);
                let mut tail = Vec::with_capacity(g.len() - 1);
                for (mm, cc) in g[1..].iter().rev() {
                    tail.push((mm.mul(&m)?, field.neg(&field.mul(cc, &c))));
                }
                bucket.add(tail);
                quot[k].push((m, c));
                continue 'outer;
            }
        }
        rem.push((lm, lc));
    }
    let quotients = quot
        .into_iter()
        .map(|q| from_sorted(&ring, q))
        .collect();
    Ok((from_sorted(&ring, rem), quotients))
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    /// Sugar degree: upper bound on the total degree the S-polynomial would
    /// have if the computation had been homogenized.
    sugar: u64,
}

/// Reduced Groebner basis of the span of `generators` under `order`.
///
/// Pair management follows Gebauer–Möller: the chain criterion prunes new and
/// old pairs, the product criterion drops coprime leading terms. Selection is
/// by the sugar strategy (minimal homogenized degree, ties broken by minimal
/// lcm in the order), which keeps intermediate bases small on the strongly
/// inhomogeneous elimination ideals this library produces. Processing more
/// than `budget` S-pairs aborts with `BudgetExceeded`.
pub fn buchberger(
    generators: &[Polynomial],
    ring: &Ring,
    order: &MonomialOrder,
    budget: u64,
) -> Result<Vec<Polynomial>> {
    let field = ring.field().clone();
    let mut basis: Vec<Vec<Term>> = Vec::new();
    let mut sugars: Vec<u64> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let mut pending: Vec<Vec<Term>> = generators
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| to_sorted(g, order))
        .collect();
    pending.sort_by_key(|g| g.len());

    let mut processed: u64 = 0;
    let mut queue: std::collections::VecDeque<Vec<Term>> = pending.into();
    loop {
        // absorb any pending polynomial, then the best S-pair
        let (candidate, sugar) = if let Some(g) = queue.pop_front() {
            let sugar = g.iter().map(|(m, _)| m.total_degree()).max().unwrap_or(0);
            (g, sugar)
        } else if let Some(pos) = select_pair(&pairs, order) {
            let pair = pairs.swap_remove(pos);
            processed += 1;
            if processed > budget {
                return Err(AlgebraError::BudgetExceeded(budget));
            }
            if std::env::var("HDUAL_TRACE").is_ok() && processed % 500 == 0 {
                eprintln!(
                    "pairs processed {processed}, queue {}, basis {}",
                    pairs.len(),
                    basis.len()
                );
            }
            (
                s_polynomial(&basis[pair.i], &basis[pair.j], &pair.lcm, &field, order)?,
                pair.sugar,
            )
        } else {
            break;
        };
        let reduced = normal_form(candidate, &basis, &field, order)?;
        if reduced.is_empty() {
            continue;
        }
        let monic = make_monic(reduced, &field)?;
        update_pairs(&mut pairs, &basis, &sugars, &monic, sugar);
        basis.push(monic);
        sugars.push(sugar);
    }

    // minimize: drop elements whose leading term another leading term divides
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        for j in 0..basis.len() {
            if i != j && keep[j] && basis[j][0].0.divides(&basis[i][0].0) {
                // prefer the later (smaller) element on exact ties
                if basis[i][0].0 == basis[j][0].0 && j < i {
                    continue;
                }
                keep[i] = false;
                break;
            }
        }
    }
    let minimal: Vec<Vec<Term>> = basis
        .into_iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(g, _)| g)
        .collect();

    // tail-reduce each element against the others
    let mut reduced_basis: Vec<Vec<Term>> = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Vec<Term>> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let r = normal_form(minimal[i].clone(), &others, &field, order)?;
        if !r.is_empty() {
            reduced_basis.push(make_monic(r, &field)?);
        }
    }
    reduced_basis.sort_by(|a, b| order.cmp(&b[0].0, &a[0].0));
    Ok(reduced_basis
        .into_iter()
        .map(|g| from_sorted(ring, g))
        .collect())
}

fn make_monic(mut g: Vec<Term>, field: &Field) -> Result<Vec<Term>> {
    let inv = g[0].1.inverse()?;
    if !inv.is_one() {
        for t in g.iter_mut() {
            t.1 = field.mul(&t.1, &inv);
        }
    }
    Ok(g)
}

fn s_polynomial(
    f: &[Term],
    g: &[Term],
    lcm: &Monomial,
    field: &Field,
    order: &MonomialOrder,
) -> Result<Vec<Term>> {
    // both monic: S = x^(lcm/lt f) f - x^(lcm/lt g) g
    let mf = f[0].0.quotient_into(lcm);
    let mg = g[0].0.quotient_into(lcm);
    let mut lhs = Vec::with_capacity(f.len());
    for (m, c) in f {
        lhs.push((m.mul(&mf)?, c.clone()));
    }
    sub_mul(&lhs, g, &mg, &field.one(), field, order)
}

fn select_pair(pairs: &[Pair], order: &MonomialOrder) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (i, p) in pairs.iter().enumerate() {
        match best {
            None => best = Some(i),
            Some(b) => {
                let better = match p.sugar.cmp(&pairs[b].sugar) {
                    std::cmp::Ordering::Less => true,
                    std::cmp::Ordering::Greater => false,
                    std::cmp::Ordering::Equal => {
                        order.cmp(&p.lcm, &pairs[b].lcm) == std::cmp::Ordering::Less
                    }
                };
                if better {
                    best = Some(i);
                }
            }
        }
    }
    best
}

/// Gebauer–Möller UPDATE: prune the new pairs against each other (chain
/// criterion), apply the product criterion, and prune old pairs made
/// redundant by the new leading term.
fn update_pairs(
    pairs: &mut Vec<Pair>,
    basis: &[Vec<Term>],
    sugars: &[u64],
    new: &[Term],
    new_sugar: u64,
) {
    let h = basis.len();
    let lt_h = &new[0].0;

    let mut candidates: Vec<(usize, Monomial, bool)> = basis
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let lcm = g[0].0.lcm(lt_h);
            let coprime = g[0].0.coprime(lt_h);
            (i, lcm, coprime)
        })
        .collect();

    // chain criterion among the new pairs: drop (i,h) when another candidate's
    // lcm properly divides its lcm, or equals it (keep the first such)
    let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
    'cand: for (i, lcm, coprime) in candidates.drain(..) {
        if coprime {
            kept.push((i, lcm, true));
            continue;
        }
        for (_, klcm, _) in &kept {
            if klcm.divides(&lcm) {
                continue 'cand;
            }
        }
        // also check unprocessed candidates for proper divisors
        kept.push((i, lcm, false));
    }
    // second pass: remove kept pairs whose lcm is properly divided by another
    let mut final_keep = vec![true; kept.len()];
    for a in 0..kept.len() {
        for b in 0..kept.len() {
            if a != b
                && final_keep[b]
                && kept[b].1.divides(&kept[a].1)
                && kept[b].1 != kept[a].1
            {
                final_keep[a] = false;
                break;
            }
        }
    }

    // prune old pairs by the chain criterion with lt_h
    pairs.retain(|p| {
        !(lt_h.divides(&p.lcm)
            && basis[p.i][0].0.lcm(lt_h) != p.lcm
            && basis[p.j][0].0.lcm(lt_h) != p.lcm)
    });

    for ((i, lcm, coprime), keep) in kept.into_iter().zip(final_keep) {
        // product criterion: coprime leading terms reduce to zero
        if keep && !coprime {
            let d = lcm.total_degree();
            let sugar = std::cmp::max(
                sugars[i] + d - basis[i][0].0.total_degree(),
                new_sugar + d - lt_h.total_degree(),
            );
            pairs.push(Pair { i, j: h, lcm, sugar });
        }
    }
}
