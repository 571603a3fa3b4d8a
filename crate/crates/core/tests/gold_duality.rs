//! End-to-end dual-variety computations checked against known results.

use hdual_core::duality::{check_reflexive, quadratic_form_dual, ConormalIdeal, Verdict};
use hdual_core::field::Field;
use hdual_core::groebner::{buchberger, Ideal, DEFAULT_PAIR_BUDGET};
use hdual_core::poly::{MonomialOrder, Polynomial, Ring};

fn fermat7_gf3() -> Ideal {
    let r = Ring::standard(Field::prime(3).unwrap(), 3);
    let f = r.parse("x0^7 + x1^7 + x2^7").unwrap();
    Ideal::new(r, vec![f])
}

/// Pure-lex reduced basis of an ideal, for golden comparisons.
fn lex_basis(ideal: &Ideal) -> Vec<Polynomial> {
    buchberger(
        ideal.generators(),
        ideal.ring(),
        &MonomialOrder::Lex,
        DEFAULT_PAIR_BUDGET,
    )
    .unwrap()
}

/// The nine generators of the first elimination ideal as printed in the
/// worked Fermat-7 session. They are a minimal generating set of the
/// (homogeneous) ideal, not a reduced Groebner basis.
const FERMAT7_FIRST_ELIMINATION: [&str; 9] = [
    "y2^2 + y5^3",
    "y1^2 + y4^3",
    "y0^2 + y3^3",
    "y0*y1*y3^2*y4^2 + y0*y2*y3^2*y5^2 + y1*y2*y4^2*y5^2 + 2*y3^7 + 2*y4^7 + 2*y5^7",
    "y1*y3^14*y4^2 + y1*y3^7*y4^9 + y1*y3^7*y4^2*y5^7 + y1*y4^16 + 2*y1*y4^9*y5^7 \
     + y2*y3^14*y5^2 + y2*y3^7*y4^7*y5^2 + y2*y3^7*y5^9 + 2*y2*y4^7*y5^9 + y2*y5^16",
    "y1*y3*y4^10*y5^7 + y1*y3*y4^3*y5^14 + 2*y2*y3^15*y4*y5^2 + 2*y2*y3^8*y4^8*y5^2 \
     + 2*y2*y3^8*y4*y5^9 + 2*y2*y3*y4^15*y5^2 + 2*y2*y3*y4*y5^16",
    "y1*y2*y4^9*y5^2 + y1*y2*y4^2*y5^9 + y3^14 + y3^7*y4^7 + y3^7*y5^7 + y4^14 + y5^14",
    "y0*y3^2*y4^7 + 2*y0*y3^2*y5^7 + y1*y3^7*y4^2 + y1*y4^9 + 2*y2*y3^7*y5^2 + 2*y2*y5^9",
    "y0*y3^9 + y0*y3^2*y5^7 + 2*y1*y4^9 + 2*y1*y4^2*y5^7 + y2*y3^7*y5^2 + 2*y2*y4^7*y5^2",
];

#[test]
fn fermat7_first_elimination_matches_the_published_generators() {
    let i = fermat7_gf3();
    let con = ConormalIdeal::new(&i, &[0, 1], false).unwrap();
    let a = con.ambient_ring().clone();
    // eliminate the x-block, keep all six xi-variables
    let keep: Vec<usize> = (3..9).collect();
    let j = con.ideal().elimination_ideal(&keep).unwrap();
    let published = Ideal::new(
        a.clone(),
        FERMAT7_FIRST_ELIMINATION
            .iter()
            .map(|t| a.parse(t).unwrap())
            .collect(),
    );
    assert!(j.equal(&published, &MonomialOrder::Lex).unwrap());
    // the three binomial-shaped generators appear verbatim in the reduced
    // lex basis
    let basis = lex_basis(&j);
    for text in ["y2^2 + y5^3", "y1^2 + y4^3", "y0^2 + y3^3"] {
        let want = a.parse(text).unwrap();
        assert!(basis.contains(&want), "missing {text}");
    }
}

#[test]
fn fermat7_level1_dual_is_the_degree28_hypersurface() {
    let i = fermat7_gf3();
    let con = ConormalIdeal::new(&i, &[0, 1], false).unwrap();
    let dual = con.dual_ideal(1).unwrap();
    let basis = lex_basis(&dual.ideal);
    assert_eq!(basis.len(), 1);
    let a = con.ambient_ring().clone();
    let want = a
        .parse(
            "y3^28 + 2*y3^21*y4^7 + 2*y3^21*y5^7 + 2*y3^14*y4^7*y5^7 + 2*y3^7*y4^21 \
             + 2*y3^7*y4^14*y5^7 + 2*y3^7*y4^7*y5^14 + 2*y3^7*y5^21 + y4^28 \
             + 2*y4^21*y5^7 + 2*y4^7*y5^21 + y5^28",
        )
        .unwrap();
    assert_eq!(basis[0], want);
}

#[test]
fn fermat7_bidual_recovers_the_curve() {
    let i = fermat7_gf3();
    let report = check_reflexive(&i, 1, 0, false, DEFAULT_PAIR_BUDGET).unwrap();
    assert!(report.bihomogeneous);
    assert_eq!(report.verdict, Verdict::Equal);
    let x_ring = i.ring().clone();
    let want = x_ring.parse("x0^7 + x1^7 + x2^7").unwrap();
    let second = lex_basis(&report.second_dual);
    assert_eq!(second, vec![want]);
}

#[test]
fn fermat7_classical_reflexivity_fails() {
    // level-0 conormal: the dual is the inseparable image, and the bidual
    // does not return the original curve
    let i = fermat7_gf3();
    let report = check_reflexive(&i, 0, 0, false, DEFAULT_PAIR_BUDGET).unwrap();
    assert_eq!(report.verdict, Verdict::NotEqual);
}

#[test]
fn fermat_quintic_gf101_classical_dual() {
    // characteristic-zero stand-in: coefficients of the degree-20 dual reduce
    // from (1, -4, 6, -124, ...) to (1, 97, 6, 78, ...) mod 101
    let r = Ring::standard(Field::prime(101).unwrap(), 3);
    let f = r.parse("x0^5 + x1^5 + x2^5").unwrap();
    let i = Ideal::new(r.clone(), vec![f.clone()]);
    let con = ConormalIdeal::new(&i, &[0], false).unwrap();
    let dual = con.dual_ideal(0).unwrap();
    let basis = lex_basis(&dual.ideal);
    assert_eq!(basis.len(), 1);
    let g = &basis[0];
    assert_eq!(g.total_degree(), Some(20));
    let a = con.ambient_ring().clone();
    let coeff_of = |text: &str| {
        let m = a.parse(text).unwrap();
        g.coefficient(&m.terms()[0].0).as_int().unwrap()
    };
    assert_eq!(coeff_of("y0^20"), 1);
    assert_eq!(coeff_of("y0^15*y1^5"), 97);
    assert_eq!(coeff_of("y0^10*y1^10"), 6);
    assert_eq!(coeff_of("y0^10*y1^5*y2^5"), 78);

    // and the bidual returns the original quintic
    let report = check_reflexive(&i, 0, 0, false, DEFAULT_PAIR_BUDGET).unwrap();
    assert_eq!(report.verdict, Verdict::Equal);
}

#[test]
fn hermitian_dual_is_hermitian() {
    // V(sum x_i^{q+1}) is self-dual at level h (A = identity)
    let r = Ring::standard(Field::prime(3).unwrap(), 3);
    let f = r.parse("x0^4 + x1^4 + x2^4").unwrap();
    let i = Ideal::new(r.clone(), vec![f]);
    let con = ConormalIdeal::new(&i, &[1], false).unwrap();
    let dual = con.dual_ideal(1).unwrap();
    let basis = lex_basis(&dual.ideal);
    let a = con.ambient_ring().clone();
    assert_eq!(basis, vec![a.parse("y0^4 + y1^4 + y2^4").unwrap()]);
}

#[test]
fn quadratic_closed_form_agrees_with_elimination() {
    // x^t A x^q for a non-identity A: the closed-form dual relation must
    // match the eliminated dual ideal
    let field = Field::prime(3).unwrap();
    let a = vec![
        vec![field.from_int(1), field.from_int(1)],
        vec![field.from_int(0), field.from_int(1)],
    ];
    let r = Ring::standard(field.clone(), 2);
    // f = sum a_ij x_i x_j^3
    let f = r.parse("x0^4 + x0*x1^3 + x1^4").unwrap();
    let i = Ideal::new(r, vec![f]);
    let con = ConormalIdeal::new(&i, &[1], false).unwrap();
    let dual = con.dual_ideal(1).unwrap().restricted().unwrap();
    let basis = dual.groebner_basis(&MonomialOrder::Lex).unwrap();
    assert_eq!(basis.len(), 1);

    let closed = quadratic_form_dual(&field, &a, 1).unwrap();
    assert_eq!(basis[0], closed.relation);
}
