//! Exhaustive and randomized checks for the semilinear layer: the double
//! dual map on bases, its (semi)linearity, and the q-symplectic basis table.

use hdual_core::field::{Field, FieldElement};
use hdual_core::forms::{double_dual, omega, PhLinearForm, QSymplecticForm};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn unit(field: &Field, n: usize, i: usize) -> Vec<FieldElement> {
    (0..n)
        .map(|j| if j == i { field.one() } else { field.zero() })
        .collect()
}

fn rand_elt(rng: &mut ChaCha8Rng, field: &Field) -> FieldElement {
    let coeffs: Vec<i64> = (0..field.k())
        .map(|_| rng.gen_range(0..field.p() as i64))
        .collect();
    field.from_coeffs(&coeffs).unwrap()
}

#[test]
fn double_dual_basis_table_is_exhaustive() {
    let f9 = Field::extension(3, 2, None).unwrap();
    for n in 0..=4usize {
        let dim = n + 1;
        for i in 0..dim {
            for j in 0..dim {
                let phi = PhLinearForm::new(f9.clone(), unit(&f9, dim, j), 1);
                let got = double_dual(&unit(&f9, dim, i), &phi).unwrap();
                let want = if i == j { f9.one() } else { f9.zero() };
                assert_eq!(got, want, "n={n} i={i} j={j}");
            }
        }
    }
}

#[test]
fn double_dual_scaling_is_exhaustive_on_basis_vectors() {
    // check linearity in v and p-semilinearity in phi over every scalar
    let f9 = Field::extension(3, 2, None).unwrap();
    for n in 0..=4usize {
        let dim = n + 1;
        for lam in f9.elements() {
            for i in 0..dim {
                let phi = PhLinearForm::new(f9.clone(), unit(&f9, dim, i), 1);
                let v = unit(&f9, dim, i);
                let scaled: Vec<FieldElement> = v.iter().map(|x| f9.mul(&lam, x)).collect();
                assert_eq!(
                    double_dual(&scaled, &phi).unwrap(),
                    f9.mul(&lam, &double_dual(&v, &phi).unwrap()),
                    "linearity in v"
                );
                assert_eq!(
                    double_dual(&v, &phi.scaled(&lam)).unwrap(),
                    f9.mul(&lam.frobenius(1), &double_dual(&v, &phi).unwrap()),
                    "semilinearity in phi"
                );
            }
        }
    }
}

#[test]
fn symplectic_basis_table_is_exhaustive() {
    let f9 = Field::extension(3, 2, None).unwrap();
    for n in 0..=4usize {
        let dim = n + 1;
        let form = QSymplecticForm::new(dim, 1);
        let e = |i: usize| unit(&f9, 2 * dim, i);
        let f = |i: usize| unit(&f9, 2 * dim, dim + i);
        for i in 0..dim {
            for j in 0..dim {
                let delta = if i == j { f9.one() } else { f9.zero() };
                assert_eq!(form.eval(&f9, &e(i), &f(j)).unwrap(), delta);
                assert_eq!(
                    form.eval(&f9, &f(i), &e(j)).unwrap(),
                    f9.sub(&f9.zero(), &delta)
                );
                assert_eq!(form.eval(&f9, &e(i), &e(j)).unwrap(), f9.zero());
                assert_eq!(form.eval(&f9, &f(i), &f(j)).unwrap(), f9.zero());
            }
        }
    }
}

#[test]
fn double_dual_is_additive_on_random_vectors() {
    let f9 = Field::extension(3, 2, None).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(401);
    for _ in 0..100 {
        let dim = rng.gen_range(1..=5);
        let coeffs = (0..dim).map(|_| rand_elt(&mut rng, &f9)).collect();
        let phi = PhLinearForm::new(f9.clone(), coeffs, 1);
        let v: Vec<FieldElement> = (0..dim).map(|_| rand_elt(&mut rng, &f9)).collect();
        let w: Vec<FieldElement> = (0..dim).map(|_| rand_elt(&mut rng, &f9)).collect();
        let sum: Vec<FieldElement> = (0..dim).map(|i| f9.add(&v[i], &w[i])).collect();
        assert_eq!(
            double_dual(&sum, &phi).unwrap(),
            f9.add(
                &double_dual(&v, &phi).unwrap(),
                &double_dual(&w, &phi).unwrap()
            )
        );
    }
}

#[test]
fn omega_additivity_on_random_vectors() {
    let f9 = Field::extension(3, 2, None).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(409);
    for _ in 0..100 {
        let dim = rng.gen_range(1..=5);
        let len = 2 * dim;
        let v1: Vec<FieldElement> = (0..len).map(|_| rand_elt(&mut rng, &f9)).collect();
        let v2: Vec<FieldElement> = (0..len).map(|_| rand_elt(&mut rng, &f9)).collect();
        let w: Vec<FieldElement> = (0..len).map(|_| rand_elt(&mut rng, &f9)).collect();
        let sum: Vec<FieldElement> = (0..len).map(|i| f9.add(&v1[i], &v2[i])).collect();
        assert_eq!(
            omega(&f9, &sum, &w, 1).unwrap(),
            f9.add(
                &omega(&f9, &v1, &w, 1).unwrap(),
                &omega(&f9, &v2, &w, 1).unwrap()
            )
        );
        assert_eq!(
            omega(&f9, &w, &sum, 1).unwrap(),
            f9.add(
                &omega(&f9, &w, &v1, 1).unwrap(),
                &omega(&f9, &w, &v2, 1).unwrap()
            )
        );
    }
}
