use klein168::cyclotomic::{epsilon, field, imag_unit, sqrt_minus_seven};
use klein168::{CycNum, Rational};
use proptest::prelude::*;

fn cyc(n: u32, coeffs: &[(i64, i64)]) -> CycNum {
    let c: Vec<Rational> = coeffs.iter().map(|&(a, b)| Rational::new(a.into(), b.into())).collect();
    CycNum::from_coeffs(n, &c)
}

fn arb_cyc(n: u32) -> impl Strategy<Value = CycNum> {
    prop::collection::vec((-9i64..=9, 1i64..=4), 0..=(n as usize)).prop_map(move |c| cyc(n, &c))
}

fn arb_conductor() -> impl Strategy<Value = u32> {
    prop_oneof![Just(7u32), Just(28u32)]
}

fn arb_triple() -> impl Strategy<Value = (CycNum, CycNum, CycNum)> {
    arb_conductor().prop_flat_map(|n| (arb_cyc(n), arb_cyc(n), arb_cyc(n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn ring_axioms((a, b, c) in arb_triple()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &CycNum::one(a.conductor()), a.clone());
    }

    #[test]
    fn nonzero_elements_are_invertible(a in arb_conductor().prop_flat_map(arb_cyc)) {
        prop_assume!(!a.is_zero());
        let inv = a.inverse().unwrap();
        prop_assert!((&a * &inv).is_one());
        prop_assert_eq!(a.checked_div(&a).unwrap(), CycNum::one(a.conductor()));
    }

    #[test]
    fn text_round_trip(a in arb_conductor().prop_flat_map(arb_cyc)) {
        let s = a.to_string();
        let back: CycNum = s.parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn embedding_is_a_ring_map((a, b) in (arb_cyc(7), arb_cyc(7))) {
        let ea = a.embed(28).unwrap();
        let eb = b.embed(28).unwrap();
        prop_assert_eq!((&a * &b).embed(28).unwrap(), &ea * &eb);
        prop_assert_eq!((&a + &b).embed(28).unwrap(), &ea + &eb);
        let (x, y) = CycNum::to_common(&a, &eb);
        prop_assert_eq!(x.conductor(), 28);
        prop_assert_eq!(y, eb);
    }

    #[test]
    fn complex_approximation_is_multiplicative((a, b) in (arb_cyc(28), arb_cyc(28))) {
        let lhs = (&a * &b).approx_complex(12);
        let rhs = a.approx_complex(12) * b.approx_complex(12);
        prop_assert!((lhs - rhs).norm() <= 1e-8 * (1.0 + rhs.norm()));
    }
}

#[test]
fn cyclotomic_polynomial_vanishes_at_zeta() {
    for n in [4u32, 7, 14, 28] {
        assert!(CycNum::zeta(n).eval_int_poly(field(n).cyclotomic_polynomial()).is_zero());
        assert!(CycNum::zeta(n).pow(n as u64).is_one());
    }
}

#[test]
fn distinguished_constants() {
    let e = epsilon();
    assert!((&(&e * &e) + &e + CycNum::from_int(7, 2)).is_zero());
    let s = sqrt_minus_seven();
    assert_eq!(&s * &s, CycNum::from_int(7, -7));
    let i = imag_unit();
    assert_eq!(&i * &i, CycNum::from_int(4, -1));
    assert_eq!(e.conj(), e.galois_conjugate(6).unwrap());
}

#[test]
fn rational_detection() {
    let z = CycNum::zeta(7);
    let sum = (1..7).fold(CycNum::zero(7), |acc, k| &acc + &CycNum::zeta_pow(7, k));
    assert_eq!(sum.to_integer().map(|v| v.to_string()), Some("-1".into()));
    assert!(!z.is_rational());
    assert!(CycNum::zero(7).inverse().is_err());
}
