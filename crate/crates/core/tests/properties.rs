use std::sync::Arc;

use kahler_core::algebra::{make_quotient, BuildOptions, Mode, Presentation};
use kahler_core::field::{FpPoly, RationalFunction};
use kahler_core::groebner::{GroebnerBasis, DEFAULT_BUDGET};
use kahler_core::kaehler::{Base, KaehlerModule};
use kahler_core::parse::parse_polynomial;
use kahler_core::{Field, Monomial, PolyRing, Polynomial, RingRef, Scalar};
use num_bigint::BigInt;
use proptest::prelude::*;

const P: u64 = 5;

fn rat(n: i64, d: i64) -> Scalar {
    Field::Rationals.from_fraction(&BigInt::from(n), &BigInt::from(d)).unwrap()
}

fn rational() -> impl Strategy<Value = Scalar> {
    (-20i64..20, 1i64..8).prop_map(|(n, d)| rat(n, d))
}

fn fp_poly() -> impl Strategy<Value = FpPoly> {
    prop::collection::vec(0..P, 0..4).prop_map(|c| FpPoly::new(P, c))
}

fn function() -> impl Strategy<Value = Scalar> {
    (fp_poly(), fp_poly()).prop_map(|(n, d)| {
        let d = if d.is_zero() { FpPoly::constant(P, 1) } else { d };
        Scalar::Function(RationalFunction::new(n, d))
    })
}

fn prime() -> impl Strategy<Value = Scalar> {
    (0..7i64).prop_map(|v| Field::Prime(7).from_i64(v))
}

fn field_axioms(a: &Scalar, b: &Scalar, c: &Scalar) {
    assert_eq!(&(a + b) + c, a + &(b + c));
    assert_eq!(&(a * b) * c, a * &(b * c));
    assert_eq!(a * &(b + c), &(a * b) + &(a * c));
    assert_eq!(a + b, b + a);
    assert_eq!(a * b, b * a);
    assert_eq!(&(a + b) - b, a.clone());
    if !a.is_zero() {
        assert!((a * &a.inverse().unwrap()).is_one());
    }
}

proptest! {
    #[test]
    fn rationals_form_a_field(a in rational(), b in rational(), c in rational()) {
        field_axioms(&a, &b, &c);
    }

    #[test]
    fn prime_field_is_a_field(a in prime(), b in prime(), c in prime()) {
        field_axioms(&a, &b, &c);
    }

    #[test]
    fn rational_functions_form_a_field(a in function(), b in function(), c in function()) {
        field_axioms(&a, &b, &c);
    }

    #[test]
    fn formal_derivative_is_a_derivation(a in function(), b in function()) {
        let d = |s: &Scalar| s.formal_derivative().unwrap();
        prop_assert_eq!(d(&(&a * &b)), &(&d(&a) * &b) + &(&a * &d(&b)));
        prop_assert_eq!(d(&(&a + &b)), &d(&a) + &d(&b));
    }
}

fn ring3() -> RingRef {
    PolyRing::standard(Field::Rationals, &["X", "Y", "Z"]).unwrap()
}

fn poly_in(ring: RingRef, max_deg: u32) -> impl Strategy<Value = Polynomial> {
    let n = ring.nvars();
    prop::collection::vec((prop::collection::vec(0..=max_deg, n), -5i64..6), 0..5).prop_map(move |terms| {
        let terms = terms
            .into_iter()
            .map(|(e, c)| (Monomial::from_exponents(e), ring.field().from_i64(c)))
            .collect();
        Polynomial::from_terms(&ring, terms)
    })
}

/// Homogeneous polynomials for weights (1, 2, 3) of the given degree.
fn weighted_homogeneous(degree: u64) -> impl Strategy<Value = Polynomial> {
    let ring = PolyRing::weighted(Field::Rationals, &[("X", 1), ("Y", 2), ("Z", 3)]).unwrap();
    let pool = ring.monomials_of_degree(degree);
    prop::collection::vec((0..pool.len().max(1), -5i64..6), 0..5).prop_map(move |picks| {
        let terms = picks
            .into_iter()
            .filter(|_| !pool.is_empty())
            .map(|(i, c)| (pool[i].clone(), ring.field().from_i64(c)))
            .collect();
        Polynomial::from_terms(&ring, terms)
    })
}

proptest! {
    #[test]
    fn partial_derivative_leibniz(f in poly_in(ring3(), 3), g in poly_in(ring3(), 3), i in 0usize..3) {
        let lhs = (&f * &g).partial_derivative(i);
        let rhs = &(&f.partial_derivative(i) * &g) + &(&f * &g.partial_derivative(i));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn euler_identity((d, f) in (0u64..8).prop_flat_map(|d| (Just(d), weighted_homogeneous(d)))) {
        let expected = f.scale(&f.field().from_i64(d as i64));
        prop_assert_eq!(f.euler_apply(), expected);
    }

    #[test]
    fn display_round_trips(f in poly_in(ring3(), 4)) {
        let back = parse_polynomial(f.ring(), &f.to_string()).unwrap();
        prop_assert_eq!(back, f);
    }
}

fn fixed_ideal() -> (RingRef, Vec<Polynomial>, GroebnerBasis) {
    let ring = ring3();
    let gens: Vec<Polynomial> = ["X^2*Y - Z", "X*Z^2 - Y^2 + 1", "Y*Z - X"]
        .iter()
        .map(|s| parse_polynomial(&ring, s).unwrap())
        .collect();
    let gb = GroebnerBasis::ideal(&ring, &gens, DEFAULT_BUDGET).unwrap();
    (ring, gens, gb)
}

proptest! {
    #[test]
    fn normal_form_properties(f in poly_in(ring3(), 4), g in poly_in(ring3(), 4)) {
        let (_, _, gb) = fixed_ideal();
        let nf = gb.normal_form_poly(&f);
        prop_assert_eq!(gb.normal_form_poly(&nf), nf.clone());
        prop_assert!(gb.contains_poly(&(&f - &nf)));
        // No term of a normal form is divisible by a leading monomial.
        for (m, _) in nf.terms() {
            for lead in gb.leading_monomials() {
                prop_assert!(!lead.monomial.divides(m));
            }
        }
        prop_assert_eq!(gb.normal_form_poly(&(&f + &g)), &nf + &gb.normal_form_poly(&g));
    }

    #[test]
    fn multiples_of_generators_reduce_to_zero(h in poly_in(ring3(), 2), i in 0usize..3) {
        let (_, gens, gb) = fixed_ideal();
        prop_assert!(gb.normal_form_poly(&(&h * &gens[i])).is_zero());
    }
}

fn omega_b5() -> KaehlerModule {
    let b = kahler_core::constructions::gabber_b(5, &Field::Rationals, false, &BuildOptions::default()).unwrap();
    KaehlerModule::new(&b.algebra, Base::Field, &BuildOptions::default()).unwrap()
}

fn xy_poly() -> impl Strategy<Value = Polynomial> {
    let ring = PolyRing::standard(Field::Rationals, &["X", "Y"]).unwrap();
    poly_in(ring, 4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn d_satisfies_leibniz(f in xy_poly(), g in xy_poly()) {
        let omega = omega_b5();
        let ring = omega.ring().clone();
        let (f, g) = (f.embed(&ring, &[0, 1]).unwrap(), g.embed(&ring, &[0, 1]).unwrap());
        let lhs = omega.d_image(&(&f * &g)).unwrap();
        let rhs = omega.d_image(&g).unwrap().mul_poly(&f).unwrap()
            .try_add(&omega.d_image(&f).unwrap().mul_poly(&g).unwrap()).unwrap();
        prop_assert!(omega.is_zero(&lhs.try_sub(&rhs).unwrap()));
    }

    #[test]
    fn d_ignores_the_representative(f in xy_poly(), h in xy_poly(), which in 0usize..2) {
        let omega = omega_b5();
        let ring = omega.ring().clone();
        let f = f.embed(&ring, &[0, 1]).unwrap();
        let h = h.embed(&ring, &[0, 1]).unwrap();
        let rel = &omega.algebra().ideal_generators()[which % omega.algebra().ideal_generators().len()];
        let other = &f + &(&h * rel);
        let diff = omega.d_image(&f).unwrap().try_sub(&omega.d_image(&other).unwrap()).unwrap();
        prop_assert!(omega.is_zero(&diff));
    }
}

#[test]
fn kernel_elements_are_killed_by_their_degree() {
    let opts = BuildOptions::default();
    for p in [2u64, 3] {
        let field = Field::prime(p).unwrap();
        for (vars, rels) in kahler_core::constructions::GRADED_CORPUS {
            let a = kahler_core::constructions::graded_algebra(&field, vars, rels, &opts).unwrap();
            let omega = KaehlerModule::new(&a, Base::DegreeZero, &opts).unwrap();
            for d in 1..=6u64 {
                for f in omega.derivation_kernel_in_degree(d).unwrap() {
                    let scaled = f.scale(&field.from_i64(d as i64));
                    assert!(a.is_zero(&scaled), "{vars:?}/{rels:?}: degree {d} element {f} in the kernel");
                }
            }
        }
    }
}

#[test]
fn tensor_dimension_is_multiplicative() {
    let opts = BuildOptions::default();
    let ring = PolyRing::standard(Field::Rationals, &["X", "Y"]).unwrap();
    let algebras: Vec<_> = [vec!["X^2", "Y^3"], vec!["X^2 - Y^2", "X*Y"], vec!["X^3", "X*Y", "Y^2"]]
        .iter()
        .map(|rels| {
            let rels = rels.iter().map(|s| parse_polynomial(&ring, s).unwrap()).collect();
            Arc::new(make_quotient(&Presentation::new(&ring, rels, Mode::Plain).unwrap(), &opts).unwrap())
        })
        .collect();
    for a in &algebras {
        for b in &algebras {
            let t = a.tensor(b, &opts).unwrap();
            assert_eq!(t.finite_dimension().unwrap(), a.finite_dimension().unwrap() * b.finite_dimension().unwrap());
        }
    }
}
