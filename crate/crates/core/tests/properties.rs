use hpm_core::algebra::{ExpRational, LaurentPoly};
use hpm_core::scalar::{ExtendedFloat, QuadraticNumber};
use num_rational::BigRational;
use proptest::prelude::*;

const RADICAND: u64 = 3;

fn rate() -> QuadraticNumber {
    QuadraticNumber::new(BigRational::new((-3).into(), 4.into()), BigRational::new(3.into(), 4.into()), RADICAND)
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-20i64..=20, 1i64..=7).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

fn scalar() -> impl Strategy<Value = QuadraticNumber> {
    (rational(), rational()).prop_map(|(a, b)| QuadraticNumber::new(a, b, RADICAND))
}

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-3i64..=3, scalar()), 0..4).prop_map(|terms| LaurentPoly::from_terms(terms).unwrap())
}

/// Products of `c₁E^j + c₀` with positive rational coefficients, times a power of E.
fn denominator() -> impl Strategy<Value = LaurentPoly> {
    let factor = (1i64..=2, 1i64..=9, 1i64..=9).prop_map(|(j, a, b)| {
        LaurentPoly::from_terms([(j, QuadraticNumber::from_integer(a)), (0, QuadraticNumber::from_integer(b))]).unwrap()
    });
    (-2i64..=2, prop::collection::vec(factor, 0..3)).prop_map(|(shift, fs)| {
        fs.iter().fold(LaurentPoly::monomial(QuadraticNumber::one(), shift), |acc, f| &acc * f)
    })
}

fn function() -> impl Strategy<Value = ExpRational> {
    (laurent(), denominator()).prop_map(|(n, d)| ExpRational::new(n, d, rate()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        if !b.is_zero() {
            prop_assert_eq!(&(&a / &b) * &b, a.clone());
        }
    }

    #[test]
    fn scalar_display_parses_back(a in scalar()) {
        prop_assert_eq!(a.to_string().parse::<QuadraticNumber>().unwrap(), a);
    }

    #[test]
    fn ring_axioms(a in function(), b in function(), c in function()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!(a.try_sub(&a).unwrap().is_zero());
    }

    #[test]
    fn reduction_is_idempotent_and_cancels_common_factors(n in laurent(), d in denominator(), g in denominator()) {
        let f = ExpRational::new(n.clone(), d.clone(), rate()).unwrap();
        prop_assert_eq!(f.gcd_reduce(), f.clone());
        prop_assert_eq!(ExpRational::new(&n * &g, &d * &g, rate()).unwrap(), f);
    }

    #[test]
    fn division_undoes_multiplication(p in function(), q in function()) {
        prop_assume!(!q.is_zero());
        prop_assert_eq!((&p * &q).try_div(&q).unwrap(), p);
    }

    #[test]
    fn product_rule(a in function(), b in function()) {
        prop_assert_eq!((&a * &b).diff_x(), &(&a.diff_x() * &b) + &(&a * &b.diff_x()));
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in function(), b in function(), x in -30i64..=30) {
        let digits = 40;
        let x = ExtendedFloat::from_rational(&BigRational::new(x.into(), 10.into()), digits);
        let (va, vb) = (a.eval(&x, digits).unwrap(), b.eval(&x, digits).unwrap());
        let vab = (&a * &b).eval(&x, digits).unwrap();
        let direct = &va * &vb;
        let scale = direct.abs().to_f64().max(1e-300);
        prop_assert!((&vab - &direct).abs().to_f64() <= 1e-30 * scale.max(1.0));
    }
}
