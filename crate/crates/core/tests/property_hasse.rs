//! Randomized axiom checks for the Hasse–Schmidt derivative layer: the
//! Leibniz rule, composition with Lucas binomials, commutation across
//! levels, the vanishing ladder, and the Frobenius representation lemma.

use hdual_core::field::Field;
use hdual_core::hasse::{binomial_mod_p, frob_rep_check, hasse_derive, hasse_h};
use hdual_core::poly::{Monomial, Polynomial, Ring};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rand_poly(rng: &mut ChaCha8Rng, ring: &Ring, max_exp: u32, terms: usize) -> Polynomial {
    let field = ring.field().clone();
    let mut acc = ring.zero();
    for _ in 0..terms {
        let exps: Vec<u32> = (0..ring.nvars())
            .map(|_| rng.gen_range(0..=max_exp))
            .collect();
        let m = Monomial::from_exponents(&exps).unwrap();
        let coeffs: Vec<i64> = (0..field.k())
            .map(|_| rng.gen_range(0..field.p() as i64))
            .collect();
        acc = acc
            .add(&ring.monomial(m, field.from_coeffs(&coeffs).unwrap()))
            .unwrap();
    }
    acc
}

fn fields() -> Vec<Field> {
    vec![
        Field::prime(3).unwrap(),
        Field::prime(5).unwrap(),
        Field::extension(3, 2, None).unwrap(),
    ]
}

const ITERATIONS: usize = 100;

#[test]
fn leibniz_rule() {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for field in fields() {
        let ring = Ring::standard(field, 3);
        for _ in 0..ITERATIONS {
            let f = rand_poly(&mut rng, &ring, 6, 3);
            let g = rand_poly(&mut rng, &ring, 6, 3);
            let i = rng.gen_range(0..3);
            let n = rng.gen_range(1..=4u64);
            let lhs = hasse_derive(&f.mul(&g).unwrap(), i, n).unwrap();
            let mut rhs = ring.zero();
            for a in 0..=n {
                let part = hasse_derive(&f, i, a)
                    .unwrap()
                    .mul(&hasse_derive(&g, i, n - a).unwrap())
                    .unwrap();
                rhs = rhs.add(&part).unwrap();
            }
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn composition_with_lucas_binomials() {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    for field in fields() {
        let p = field.p();
        let ring = Ring::standard(field.clone(), 3);
        for _ in 0..ITERATIONS {
            let f = rand_poly(&mut rng, &ring, 8, 4);
            let i = rng.gen_range(0..3);
            let n = rng.gen_range(0..=4u64);
            let m = rng.gen_range(0..=4u64);
            let lhs = hasse_derive(&hasse_derive(&f, i, m).unwrap(), i, n).unwrap();
            let c = field.from_int(binomial_mod_p(n + m, n, p) as i64);
            let rhs = hasse_derive(&f, i, n + m).unwrap().scalar_mul(&c);
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn level_operators_commute() {
    let mut rng = ChaCha8Rng::seed_from_u64(107);
    for field in fields() {
        let ring = Ring::standard(field, 3);
        for _ in 0..ITERATIONS {
            let f = rand_poly(&mut rng, &ring, 12, 4);
            let i = rng.gen_range(0..3);
            let j = rng.gen_range(0..3);
            let h = rng.gen_range(1..=2u32);
            let lhs = hasse_h(&hasse_h(&f, j, 0).unwrap(), i, h).unwrap();
            let rhs = hasse_h(&hasse_h(&f, i, h).unwrap(), j, 0).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn vanishing_ladder() {
    let mut rng = ChaCha8Rng::seed_from_u64(109);
    for field in fields() {
        let ring = Ring::standard(field, 3);
        for _ in 0..ITERATIONS {
            let f = rand_poly(&mut rng, &ring, 6, 4);
            let i = rng.gen_range(0..3);
            let top = f
                .terms()
                .iter()
                .map(|(m, _)| m.exponent(i) as u64)
                .max()
                .unwrap_or(0);
            for n in top + 1..top + 4 {
                assert!(hasse_derive(&f, i, n).unwrap().is_zero());
            }
        }
    }
}

#[test]
fn frobenius_representation() {
    let mut rng = ChaCha8Rng::seed_from_u64(113);
    for field in fields() {
        let p = field.p();
        let ring = Ring::standard(field, 1);
        for _ in 0..ITERATIONS {
            let f = rand_poly(&mut rng, &ring, 9, 4);
            let q = p.pow(rng.gen_range(1..=2));
            let n = rng.gen_range(0..=3 * q);
            assert!(frob_rep_check(&f, q, n).unwrap());
        }
    }
}
