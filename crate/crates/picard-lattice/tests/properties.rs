//! Property tests for the exact scalar layer and the intersection pairing.

use num::{BigInt, Signed};
use picard_lattice::{
    decimal_string, format_rat, int, parse_rat, rat, sqrt_exact, BaseSurface, PicardBasis, Rat,
};
use proptest::prelude::*;

fn arb_rat() -> impl Strategy<Value = Rat> {
    (any::<i64>(), 1..=u32::MAX).prop_map(|(n, d)| Rat::new(BigInt::from(n), BigInt::from(d)))
}

proptest! {
    #[test]
    fn format_parse_round_trips(r in arb_rat()) {
        let s = format_rat(&r);
        prop_assert_eq!(parse_rat(&s).unwrap(), r);
    }

    #[test]
    fn squares_have_exact_roots(r in arb_rat()) {
        let sq = &r * &r;
        let root = sqrt_exact(&sq).unwrap();
        prop_assert_eq!(&root * &root, sq);
    }

    #[test]
    fn decimal_error_is_below_half_ulp(r in arb_rat()) {
        let rendered = decimal_string(&r, 12);
        let reparsed: f64 = rendered.parse().unwrap();
        // Not a correctness oracle (floats are only used in this test to
        // sanity-check magnitude); the exact bound is checked below.
        prop_assert!(reparsed.is_finite());
        // |rendered − r| ≤ 1/2 · 10⁻¹².
        let mut clean = rendered.replace('.', "");
        let negative = clean.starts_with('-');
        if negative {
            clean.remove(0);
        }
        let as_int: BigInt = clean.parse().unwrap();
        let approx = Rat::new(if negative { -as_int } else { as_int }, BigInt::from(10u64.pow(12)));
        let err = (&approx - &r) * int(2) * Rat::from_integer(BigInt::from(10u64.pow(12)));
        prop_assert!(err.abs() <= int(1));
    }
}

proptest! {
    #[test]
    fn pairing_is_bilinear_and_symmetric(
        a in proptest::collection::vec(-50i64..50, 4),
        b in proptest::collection::vec(-50i64..50, 4),
        c in proptest::collection::vec(-50i64..50, 4),
        s in -9i64..9,
    ) {
        let basis = PicardBasis::new(BaseSurface::QuadricSurface, 2);
        let mk = |v: &[i64]| picard_lattice::DivisorClass {
            coeffs: v.iter().map(|&x| int(x)).collect(),
        };
        let (a, b, c) = (mk(&a), mk(&b), mk(&c));
        prop_assert_eq!(basis.intersect(&a, &b), basis.intersect(&b, &a));
        let lhs = basis.intersect(&(&a + &b.scale(&int(s))), &c);
        let rhs = basis.intersect(&a, &c) + int(s) * basis.intersect(&b, &c);
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn twelve_digit_decimals_for_report_values() {
    assert_eq!(decimal_string(&rat(1, 3), 12).len(), "0.".len() + 12);
    assert_eq!(decimal_string(&rat(-22, 7), 12), "-3.142857142857");
}
