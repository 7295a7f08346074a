//! Randomized checks of every closed form and identity against the
//! recurrence, over nonzero integer parameters of either sign and rational
//! seeds.

use horadam_core::fast::StepMatrix;
use horadam_core::identity::{thm2_exponent, Thm4Variant, Thm5Form};
use horadam_core::sequence::{gf_coeffs, BinetConstants};
use horadam_core::{
    check_remark2_exponent, lemma1_combine, term_binet, term_fast, term_naive, Params, QuadElem,
    Rational, Root, SeqSpec, Verifier,
};
use proptest::prelude::*;

fn nonzero(lo: i64, hi: i64) -> impl Strategy<Value = i64> {
    prop_oneof![lo..=-1, 1..=hi]
}

fn params() -> impl Strategy<Value = Params> {
    (nonzero(-6, 6), nonzero(-6, 6), nonzero(-5, 5))
        .prop_filter_map("nonzero discriminant", |(a, b, c)| {
            Params::new(a, b, c).ok()
        })
}

fn rational() -> impl Strategy<Value = Rational> {
    (-30i64..30, 1i64..12).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn spec() -> impl Strategy<Value = SeqSpec> {
    (params(), rational(), rational(), 0u8..3).prop_map(|(p, w0, w1, kind)| match kind {
        0 => SeqSpec::u(p),
        1 => SeqSpec::v(p),
        _ => SeqSpec::general(p, w0, w1),
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn binet_matches_recurrence(s in spec(), n in 1u64..120) {
        let closed = BinetConstants::new(&s).unwrap().evaluate(n);
        prop_assert!(closed.is_rational());
        prop_assert_eq!(closed.x(), &term_naive(&s, n));
        prop_assert_eq!(term_binet(&s, n).unwrap(), term_naive(&s, n));
    }

    #[test]
    fn fast_matches_recurrence(s in spec(), n in 0u64..600) {
        prop_assert_eq!(term_fast(&s, n), term_naive(&s, n));
    }

    #[test]
    fn lemma1_matches_recurrence(s in spec(), n in 1u64..80) {
        prop_assert_eq!(lemma1_combine(&s, n).unwrap(), term_naive(&s, n));
    }

    #[test]
    fn gf_matches_recurrence(s in spec(), count in 1usize..48) {
        let coeffs = gf_coeffs(&s, count).unwrap();
        for (k, c) in coeffs.iter().enumerate() {
            prop_assert_eq!(c, &term_naive(&s, k as u64));
        }
    }

    #[test]
    fn two_step_recurrence(s in spec(), n in 4u64..100) {
        let p = s.params();
        let c = Rational::from(p.c());
        let lhs = term_naive(&s, n);
        let rhs = (Rational::from(p.ab()) + &c + &c) * term_naive(&s, n - 2)
            - &c * &c * term_naive(&s, n - 4);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn step_matrix_determinant(p in params(), e in 0u64..=20) {
        let c2 = Rational::from(p.c()).pow(2);
        prop_assert_eq!(StepMatrix::for_params(p).pow(e).determinant(), c2.pow(e as i64));
    }

    #[test]
    fn root_relations(p in params()) {
        let (alpha, beta) = p.roots();
        let d = p.delta();
        prop_assert_eq!(&alpha + &beta, QuadElem::from_rational(p.ab().into(), &d));
        prop_assert_eq!(&alpha * &beta, QuadElem::from_rational((-p.abc()).into(), &d));
        prop_assert_eq!(&alpha - &beta, QuadElem::sqrt_delta(&d));
    }

    #[test]
    fn binomial_identities(s in spec(), m in 2u64..7, n in 0u64..6, r in 0u64..6) {
        let mut v = Verifier::new(s);
        prop_assert!(v.thm2(m, n, r).unwrap().equal());
        prop_assert!(v.thm3(m, n, r).unwrap().equal());
        prop_assert!(v.eq7(m, n, r).unwrap().equal());
    }

    #[test]
    fn shift_identities(s in spec(), n in 1u64..8, m in 1u64..6, r in 1u64..6, k in 1u64..10) {
        let mut v = Verifier::new(s);
        prop_assert!(v.lemma2(n, k).unwrap().equal());
        prop_assert!(v.thm4(n, m, r).unwrap().equal());
        for root in [Root::Alpha, Root::Beta] {
            prop_assert!(v.lemma3(m, r, root).unwrap().equal());
        }
    }

    #[test]
    fn multinomial_identities(s in spec(), n in 1u64..5, m in 1u64..5, r in 1u64..5, d in 0u64..5) {
        let mut v = Verifier::new(s);
        prop_assert!(v.thm5(n, m, r, d, Thm5Form::S3).unwrap().equal());
        match v.thm5(n, m, r, d, Thm5Form::S2) {
            Ok(rep) => prop_assert!(rep.equal()),
            Err(e) => prop_assert_eq!(e, horadam_core::Error::DegenerateModulus),
        }
    }

    #[test]
    fn c_equal_one_forms(a in nonzero(-6, 6), b in nonzero(-6, 6), w0 in rational(), w1 in rational(), n in 0u64..20, m in 2u64..5, r in 0u64..4) {
        prop_assume!(Params::new(a, b, 1).is_ok());
        let mut v = Verifier::new(SeqSpec::general(Params::new(a, b, 1).unwrap(), w0, w1));
        prop_assert!(v.thm4_special(n, Thm4Variant::Direct).unwrap().equal());
        prop_assert!(v.thm4_special(n, Thm4Variant::ZhangForm).unwrap().equal());
        prop_assert!(v.zhang47(m, n % 5, r, true).unwrap().equal());
    }

    #[test]
    fn exponents_are_integral(m in 0u64..200, n in 0u64..200, r in 0u64..200, i in 0u64..200) {
        prop_assert_eq!(thm2_exponent(m, n, r, i.min(n)) % 2, 0);
        prop_assert!(check_remark2_exponent(m, i, r));
    }
}

#[test]
fn fast_handles_large_indices() {
    let fib = SeqSpec::u(Params::new(1, 1, 1).unwrap());
    let f1000 = term_fast(&fib, 1000);
    assert_eq!(f1000, term_naive(&fib, 1000));
    assert_eq!(f1000.numer().to_string().len(), 209);
}

#[test]
fn uncorrected_form_is_wrong_whenever_a_ne_b() {
    for (a, b) in [(2, 1), (1, 2), (3, 2), (4, 1)] {
        let u = SeqSpec::u(Params::new(a, b, 1).unwrap());
        let rep = Verifier::new(u).zhang47(2, 2, 1, false).unwrap();
        assert!(!rep.equal(), "a={a} b={b}");
    }
}
