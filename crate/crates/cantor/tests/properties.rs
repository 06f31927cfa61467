//! Property tests: field axioms of the exact coefficient domains,
//! generating-function extraction as a genuine inverse, the value-map
//! identities, membership predicates, and enclosure guarantees.

use num_traits::Signed;
use proptest::prelude::*;

use cantor::ensembles::{f_value, BitString, DistributionParams, EnsembleKind};
use cantor::exact::{
    approximate, rat, ExactField, ExactValue, Rational,
};
use cantor::genfunc::{Poly, RationalGF, Series};
use cantor::{CubicElement, QuadElement};

fn arb_rational() -> impl Strategy<Value = Rational> {
    (-1_000_000i64..=1_000_000, 1i64..=1_000_000).prop_map(|(n, d)| rat(n, d))
}

fn arb_quad() -> impl Strategy<Value = QuadElement> {
    (arb_rational(), arb_rational()).prop_map(|(a, b)| QuadElement::new(a, b))
}

fn arb_cubic() -> impl Strategy<Value = CubicElement> {
    (arb_rational(), arb_rational(), arb_rational())
        .prop_map(|(a, b, c)| CubicElement::new(a, b, c))
}

fn arb_poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    proptest::collection::vec(-20i64..=20, 1..=max_deg + 1).prop_map(|v| Poly::from_ints(&v))
}

fn arb_bits() -> impl Strategy<Value = Vec<bool>> {
    proptest::collection::vec(any::<bool>(), 0..=40)
}

proptest! {
    #[test]
    fn quad_field_axioms(x in arb_quad(), y in arb_quad(), z in arb_quad()) {
        prop_assert_eq!(x.plus(&y), y.plus(&x));
        prop_assert_eq!(x.times(&y), y.times(&x));
        prop_assert_eq!(x.plus(&y).plus(&z), x.plus(&y.plus(&z)));
        prop_assert_eq!(x.times(&y).times(&z), x.times(&y.times(&z)));
        prop_assert_eq!(x.times(&y.plus(&z)), x.times(&y).plus(&x.times(&z)));
        if !QuadElement::is_zero(&x) {
            prop_assert_eq!(x.times(&x.inverse().unwrap()), QuadElement::field_one());
        }
    }

    #[test]
    fn cubic_field_axioms(x in arb_cubic(), y in arb_cubic(), z in arb_cubic()) {
        prop_assert_eq!(x.plus(&y), y.plus(&x));
        prop_assert_eq!(x.times(&y), y.times(&x));
        prop_assert_eq!(x.times(&y).times(&z), x.times(&y.times(&z)));
        prop_assert_eq!(x.times(&y.plus(&z)), x.times(&y).plus(&x.times(&z)));
        if !CubicElement::is_zero(&x) {
            prop_assert_eq!(x.times(&x.inverse().unwrap()), CubicElement::field_one());
        }
    }

    #[test]
    fn exact_value_string_roundtrip(x in arb_quad(), y in arb_cubic()) {
        let qs = x.to_string();
        let parsed: QuadElement = qs.parse().unwrap();
        prop_assert_eq!(parsed, x);
        let cs = y.to_string();
        let parsed: CubicElement = cs.parse().unwrap();
        prop_assert_eq!(parsed, y);
    }

    #[test]
    fn approximate_is_a_true_enclosure(x in arb_quad(), digits in 1u32..=14) {
        let d = approximate(&ExactValue::Quad(x.clone()), digits);
        // error bound within the promised budget
        let budget = rat(1, 10).pow(digits as i32);
        prop_assert!(d.error_bound <= budget);
        // a much finer enclosure witnesses the true value
        let (lo, hi) = x.enclosure(&rat(1, 10).pow(25));
        let mid = (lo + hi) / rat(2, 1);
        let err = (mid - d.rendered_rational()).abs();
        prop_assert!(err <= d.error_bound.clone() + rat(1, 10).pow(24));
    }

    #[test]
    fn cubic_sign_matches_interval(x in arb_cubic()) {
        let (lo, hi) = x.enclosure(&rat(1, 10).pow(20));
        let s = x.signum();
        use num_traits::Signed;
        if lo.is_positive() {
            prop_assert_eq!(s, 1);
        } else if hi.is_negative() {
            prop_assert_eq!(s, -1);
        }
    }

    #[test]
    fn gf_extraction_inverts(num in arb_poly(5), den in arb_poly(5), order in 4usize..=20) {
        prop_assume!(!num.is_zero());
        let den = {
            // force a nonzero constant term
            let mut c: Vec<i64> = den
                .coeffs()
                .iter()
                .map(|r| i64::try_from(r.to_integer()).unwrap())
                .collect();
            if c.is_empty() { c.push(1); }
            if c[0] == 0 { c[0] = 1; }
            Poly::from_ints(&c)
        };
        let gf = RationalGF::new(num.clone(), den.clone()).unwrap();
        let series = gf.coefficients(order);
        let back = &series * &Series::from_poly(&den, order);
        prop_assert_eq!(back, Series::from_poly(&num, order));
    }

    #[test]
    fn gf_extraction_linear(p1 in arb_poly(4), p2 in arb_poly(4), den in arb_poly(4)) {
        let den = {
            let mut c: Vec<i64> = den
                .coeffs()
                .iter()
                .map(|r| i64::try_from(r.to_integer()).unwrap())
                .collect();
            if c.is_empty() { c.push(1); }
            if c[0] == 0 { c[0] = 1; }
            Poly::from_ints(&c)
        };
        let sum = RationalGF::new(&p1 + &p2, den.clone()).unwrap().coefficients(16);
        let c1 = RationalGF::new(p1, den.clone()).unwrap().coefficients(16);
        let c2 = RationalGF::new(p2, den).unwrap().coefficients(16);
        prop_assert_eq!(sum, &c1 + &c2);
    }

    #[test]
    fn series_ops_consistent(a in arb_poly(6), b in arb_poly(6)) {
        let order = 10;
        let sa = Series::from_poly(&a, order);
        let sb = Series::from_poly(&b, order);
        prop_assert_eq!(&(&sa + &sb) - &sb, sa.clone());
        prop_assert_eq!(&sa * &sb, &sb * &sa);
        prop_assert_eq!(&sa * &Series::from_poly(&Poly::one(), order), sa);
    }

    #[test]
    fn f_map_identities(bits in arb_bits(), num in 1i64..=10) {
        let theta = rat(num, 21); // spread over (0, 1/2]
        let params = DistributionParams::new(theta.clone()).unwrap();
        let omega = BitString::from_bools(&bits);
        let f = f_value(&params, &omega);
        prop_assert!(f >= rat(0, 1) && f <= rat(1, 1));
        let mut with_zero = BitString::from_bools(&[false]);
        let mut with_one = BitString::from_bools(&[true]);
        for b in omega.iter() {
            with_zero.push(b);
            with_one.push(b);
        }
        prop_assert_eq!(f_value(&params, &with_zero), &theta * &f);
        let tb = rat(1, 1) - &theta;
        prop_assert_eq!(f_value(&params, &with_one), tb + &theta * &f);
    }

    #[test]
    fn membership_predicates_match_naive(bits in arb_bits()) {
        let s = BitString::from_bools(&bits);
        let text = s.to_string();
        prop_assert_eq!(s.is_solus(), !text.contains("11"));
        // naive multus: every maximal 1-run has length >= 2
        let naive_multus = text
            .split('0')
            .all(|run| run.is_empty() || run.len() >= 2);
        prop_assert_eq!(s.is_multus(), naive_multus);
        prop_assert!(s.is_member(EnsembleKind::Unconstrained));
    }

    #[test]
    fn bitstring_roundtrip(bits in arb_bits()) {
        let s = BitString::from_bools(&bits);
        let parsed: BitString = s.to_string().parse().unwrap();
        prop_assert_eq!(parsed, s);
    }
}
