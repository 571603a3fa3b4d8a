//! The h-Euler identity: for an h-homogeneous polynomial of h-degree n,
//! sum_i x_i^q D_i^{(h)} f = (n mod p) * f with q = p^h.

use hdual_core::field::Field;
use hdual_core::hasse::hasse_h;
use hdual_core::poly::{Monomial, Polynomial, Ring};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A random polynomial all of whose monomials have h-degree exactly `n`:
/// exponents e_i = q*a_i + b_i with sum a_i = n and digits b_i < q.
fn rand_h_homogeneous(
    rng: &mut ChaCha8Rng,
    ring: &Ring,
    q: u64,
    n: u64,
    terms: usize,
) -> Polynomial {
    let field = ring.field().clone();
    let nvars = ring.nvars();
    let mut acc = ring.zero();
    for _ in 0..terms {
        // split n into nvars nonnegative parts
        let mut parts = vec![0u64; nvars];
        for _ in 0..n {
            parts[rng.gen_range(0..nvars)] += 1;
        }
        let exps: Vec<u32> = parts
            .iter()
            .map(|&a| (a * q + rng.gen_range(0..q)) as u32)
            .collect();
        let m = Monomial::from_exponents(&exps).unwrap();
        let c = field.from_int(rng.gen_range(1..field.p() as i64));
        acc = acc.add(&ring.monomial(m, c)).unwrap();
    }
    acc
}

#[test]
fn h_euler_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(307);
    for (p, h) in [(3u64, 1u32), (5, 1), (3, 2)] {
        let q = p.pow(h);
        let ring = Ring::standard(Field::prime(p).unwrap(), 3);
        for _ in 0..200 {
            let n = rng.gen_range(1..=4u64);
            let f = rand_h_homogeneous(&mut rng, &ring, q, n, 3);
            if f.is_zero() {
                continue;
            }
            assert_eq!(f.h_homogeneous_degree(h).unwrap(), Some(n));
            let mut lhs = ring.zero();
            for i in 0..3 {
                let xq = ring.var(i).pow(q).unwrap();
                lhs = lhs
                    .add(&xq.mul(&hasse_h(&f, i, h).unwrap()).unwrap())
                    .unwrap();
            }
            let rhs = f.scalar_mul(&ring.field().from_int((n % p) as i64));
            assert_eq!(lhs, rhs, "p={p} h={h} n={n}");
        }
    }
}
