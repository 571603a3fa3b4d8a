use std::cmp::Ordering;

use super::monomial::Monomial;

/// A total, multiplicative monomial order with 1 as its minimum.
///
/// The block variant is an elimination order: any monomial touching an
/// eliminated variable ranks above every monomial supported on the retained
/// block alone.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum MonomialOrder {
    Lex,
    GrevLex,
    Block {
        /// Eliminated variable indices, sorted ascending.
        elim: Vec<usize>,
        inner_elim: Box<MonomialOrder>,
        inner_keep: Box<MonomialOrder>,
    },
}

impl MonomialOrder {
    /// Standard elimination order: grevlex on the eliminated block, then
    /// grevlex on the rest.
    pub fn elimination(mut elim: Vec<usize>) -> MonomialOrder {
        elim.sort_unstable();
        elim.dedup();
        MonomialOrder::Block {
            elim,
            inner_elim: Box::new(MonomialOrder::GrevLex),
            inner_keep: Box::new(MonomialOrder::GrevLex),
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => cmp_lex(a.exponents(), b.exponents()),
            MonomialOrder::GrevLex => cmp_grevlex(a.exponents(), b.exponents()),
            MonomialOrder::Block {
                elim,
                inner_elim,
                inner_keep,
            } => {
                if **inner_elim == MonomialOrder::GrevLex && **inner_keep == MonomialOrder::GrevLex
                {
                    // allocation-free path for the standard elimination order
                    let first = cmp_grevlex_masked(a.exponents(), b.exponents(), elim, true);
                    if first != Ordering::Equal {
                        return first;
                    }
                    return cmp_grevlex_masked(a.exponents(), b.exponents(), elim, false);
                }
                let (ae, ak) = split(a, elim);
                let (be, bk) = split(b, elim);
                let first = inner_elim.cmp_exps(&ae, &be);
                if first != Ordering::Equal {
                    return first;
                }
                inner_keep.cmp_exps(&ak, &bk)
            }
        }
    }

    fn cmp_exps(&self, a: &[u16], b: &[u16]) -> Ordering {
        match self {
            MonomialOrder::Lex => cmp_lex(a, b),
            MonomialOrder::GrevLex => cmp_grevlex(a, b),
            MonomialOrder::Block { .. } => {
                unreachable!("nested block orders are not supported")
            }
        }
    }
}

fn split(m: &Monomial, elim: &[usize]) -> (Vec<u16>, Vec<u16>) {
    let mut e = Vec::with_capacity(elim.len());
    let mut k = Vec::with_capacity(m.nvars() - elim.len());
    let mut it = elim.iter().peekable();
    for (i, &x) in m.exponents().iter().enumerate() {
        if it.peek() == Some(&&i) {
            e.push(x);
            it.next();
        } else {
            k.push(x);
        }
    }
    (e, k)
}

/// Grevlex on the sub-vector selected by `elim` (when `in_block`) or its
/// complement. `elim` is sorted ascending.
fn cmp_grevlex_masked(a: &[u16], b: &[u16], elim: &[usize], in_block: bool) -> Ordering {
    let selected = |i: usize| elim.binary_search(&i).is_ok() == in_block;
    let mut da = 0u64;
    let mut db = 0u64;
    for i in 0..a.len() {
        if selected(i) {
            da += a[i] as u64;
            db += b[i] as u64;
        }
    }
    match da.cmp(&db) {
        Ordering::Equal => {}
        ord => return ord,
    }
    for i in (0..a.len()).rev() {
        if !selected(i) {
            continue;
        }
        match a[i].cmp(&b[i]) {
            Ordering::Equal => continue,
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
        }
    }
    Ordering::Equal
}

fn cmp_lex(a: &[u16], b: &[u16]) -> Ordering {
    for (&x, &y) in a.iter().zip(b.iter()) {
        match x.cmp(&y) {
            Ordering::Equal => continue,
            ord => return ord,
        }
    }
    Ordering::Equal
}

fn cmp_grevlex(a: &[u16], b: &[u16]) -> Ordering {
    let da: u64 = a.iter().map(|&x| x as u64).sum();
    let db: u64 = b.iter().map(|&x| x as u64).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        ord => return ord,
    }
    // reverse-lex tiebreak: scan from the last variable; smaller exponent wins
    for (&x, &y) in a.iter().rev().zip(b.iter().rev()) {
        match x.cmp(&y) {
            Ordering::Equal => continue,
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e).unwrap()
    }

    #[test]
    fn lex_basics() {
        let o = MonomialOrder::Lex;
        assert_eq!(o.cmp(&m(&[1, 0]), &m(&[0, 5])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 1]), &m(&[1, 0])), Ordering::Greater);
    }

    #[test]
    fn grevlex_basics() {
        let o = MonomialOrder::GrevLex;
        // degree first
        assert_eq!(o.cmp(&m(&[0, 3]), &m(&[2, 0])), Ordering::Greater);
        // tie: x0^2 x2 < x0 x1^2 (last variable has larger exponent)
        assert_eq!(
            o.cmp(&m(&[2, 0, 1]), &m(&[1, 2, 0])),
            Ordering::Less
        );
    }

    #[test]
    fn block_ranks_eliminated_first() {
        // eliminate variable 0 out of 3
        let o = MonomialOrder::elimination(vec![0]);
        // any power of x0 beats pure monomials in x1, x2
        assert_eq!(
            o.cmp(&m(&[1, 0, 0]), &m(&[0, 9, 9])),
            Ordering::Greater
        );
        assert_eq!(o.cmp(&m(&[0, 2, 0]), &m(&[0, 0, 1])), Ordering::Greater);
    }
}
