use proptest::prelude::*;

use qtangent::closedform::{tan_from_vector, ExponentVector};
use qtangent::oracle::{enumerate_chain, TruncationBound};
use qtangent::qalg::{poly_gcd, q_binomial, Parity, QPoly, QRat, ZSeries};
use qtangent::updown::Comparator;

fn poly() -> impl Strategy<Value = QPoly> {
    prop::collection::vec(-6i64..=6, 0..6).prop_map(|c| QPoly::from_i64s(&c))
}

fn nonzero_poly() -> impl Strategy<Value = QPoly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn qrat() -> impl Strategy<Value = QRat> {
    (poly(), nonzero_poly(), -3i64..=3).prop_map(|(n, d, e)| QRat::from_parts(n, d).mul_q_pow(e))
}

fn nonzero_qrat() -> impl Strategy<Value = QRat> {
    qrat().prop_filter("nonzero", |x| !x.is_zero())
}

fn series(parity: Parity, order: usize) -> impl Strategy<Value = ZSeries> {
    prop::collection::vec(qrat(), order + 1).prop_map(move |mut c| {
        for (i, x) in c.iter_mut().enumerate() {
            if !parity.admits(i) {
                *x = QRat::zero();
            }
        }
        ZSeries::new(c, parity).unwrap()
    })
}

fn comparator() -> impl Strategy<Value = Comparator> {
    prop_oneof![
        Just(Comparator::Le),
        Just(Comparator::Lt),
        Just(Comparator::Ge),
        Just(Comparator::Gt)
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gaussian_binomials_are_palindromic_and_nonnegative(n in 0i64..=12, k in 0i64..=12) {
        prop_assume!(k <= n);
        let g = q_binomial(n, k);
        prop_assert!(g.is_palindromic());
        prop_assert!(g.has_nonnegative_coeffs());
        prop_assert_eq!(g.degree(), Some((k * (n - k)) as usize));
    }

    #[test]
    fn gaussian_binomials_obey_both_pascal_rules(n in 1i64..=12, k in 0i64..=12) {
        let lhs = q_binomial(n, k);
        let a = &q_binomial(n - 1, k - 1) + &q_binomial(n - 1, k).shift_up(k.max(0) as usize);
        let b = &q_binomial(n - 1, k - 1).shift_up((n - k).max(0) as usize) + &q_binomial(n - 1, k);
        prop_assert_eq!(&lhs, &a);
        prop_assert_eq!(&lhs, &b);
    }

    #[test]
    fn inversion_is_an_involution(x in qrat()) {
        prop_assert_eq!(x.subst_q_inverse().subst_q_inverse(), x);
    }

    #[test]
    fn inversion_is_a_field_map(x in qrat(), y in qrat()) {
        prop_assert_eq!((&x * &y).subst_q_inverse(), &x.subst_q_inverse() * &y.subst_q_inverse());
        prop_assert_eq!((&x + &y).subst_q_inverse(), &x.subst_q_inverse() + &y.subst_q_inverse());
    }

    #[test]
    fn field_axioms(x in qrat(), y in qrat(), z in nonzero_qrat()) {
        prop_assert_eq!(&(&x + &y) - &y, x.clone());
        prop_assert_eq!(&(&x * &z) / &z, x.clone());
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert!((&z * &z.inv().unwrap()).is_one());
    }

    #[test]
    fn canonical_form_is_reduced(x in qrat()) {
        let g = poly_gcd(x.num(), x.den());
        prop_assert!(g.is_constant());
        prop_assert!(x.den().low_coeff().is_some_and(|c| c > &0.into()));
    }

    #[test]
    fn gcd_divides_both(a in nonzero_poly(), b in nonzero_poly(), c in nonzero_poly()) {
        let ac = &a * &c;
        let bc = &b * &c;
        let g = poly_gcd(&ac, &bc);
        prop_assert!(ac.div_exact(&g).is_some());
        prop_assert!(bc.div_exact(&g).is_some());
        prop_assert!(g.div_exact(&c.primitive_part()).is_some());
    }

    #[test]
    fn quotient_times_divisor(a in series(Parity::Odd, 5), b in series(Parity::Even, 5), c0 in nonzero_qrat()) {
        let mut coeffs = b.coeffs().to_vec();
        coeffs[0] = c0;
        let b = ZSeries::new(coeffs, Parity::Even).unwrap();
        let q = a.quotient(&b).unwrap();
        prop_assert_eq!(&q * &b, a);
    }

    #[test]
    fn half_power_scaling_round_trip(s in series(Parity::Odd, 7), d in prop_oneof![Just(1i64), Just(-1i64)]) {
        let there = s.scale_arg_half_power(d).unwrap();
        prop_assert_eq!(there.scale_arg_half_power(-d).unwrap(), s);
    }

    #[test]
    fn half_power_scaling_shifts_tangent_vectors(a in -1i64..=2, b in -2i64..=2, c in -1i64..=2, d in -2i64..=2) {
        let base = tan_from_vector(ExponentVector::new(a, b, c, d), 7).unwrap();
        let moved = tan_from_vector(ExponentVector::new(a, b + 1, c, d + 1), 7).unwrap();
        prop_assert_eq!(base.scale_arg_half_power(1).unwrap(), moved);
    }

    #[test]
    fn text_round_trip(p in poly(), x in qrat()) {
        prop_assert_eq!(p.to_string().parse::<QPoly>().unwrap(), p);
        prop_assert_eq!(x.to_string().parse::<QRat>().unwrap(), x);
    }

    #[test]
    fn truncation_never_changes_low_coefficients(chain in prop::collection::vec(comparator(), 0..4), m in 1usize..6) {
        let small = enumerate_chain(&chain, TruncationBound::new(m));
        let big = enumerate_chain(&chain, TruncationBound::new(2 * m));
        prop_assert_eq!(big.truncate(m), small);
    }
}
