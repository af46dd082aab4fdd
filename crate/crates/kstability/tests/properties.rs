//! Property-based cross-checks between the sweep engine and the closed
//! forms over randomly sampled weights, contact positions, boundary
//! coefficients, and evaluation points.

use kstability::beta::{beta_report, tau_bound_check};
use kstability::divisors::{line_free_tail_case, plane_monomial_case, quadric_monomial_case};
use kstability::formulas::{
    line_free_tail, line_free_tail_thresholds, plane_monomial, plane_monomial_thresholds,
    plane_threshold_identity, quadric_monomial, quadric_monomial_thresholds, ConicContact,
};
use picard_lattice::{int, rat, Rat};
use proptest::prelude::*;
use toric_engine::{moment_square, moment_triangle, monomial_volume_oracle};
use volume_zariski::volume_sweep;

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn coprime_pairs(max: u64) -> Vec<(u64, u64)> {
    let mut pairs = Vec::new();
    for a in 1..=max {
        for b in 1..=a {
            if gcd(a, b) == 1 {
                pairs.push((a, b));
            }
        }
    }
    pairs
}

/// Picks a weight pair, a contact position legal for it, and a grid index.
fn plane_inputs() -> impl Strategy<Value = ((u64, u64), ConicContact, Rat)> {
    let pairs = coprime_pairs(8);
    (0..pairs.len(), 0..3usize, 0..7i64).prop_map(move |(p, c, k)| {
        let (a, b) = pairs[p];
        let contact = match c {
            0 => ConicContact::Disjoint,
            1 => ConicContact::Transversal,
            // Second-order contact needs a > b; fall back otherwise.
            _ if a > b => ConicContact::Tangent,
            _ => ConicContact::Transversal,
        };
        ((a, b), contact, rat(k, 8))
    })
}

fn quadric_inputs() -> impl Strategy<Value = ((u64, u64), ConicContact, Rat)> {
    let pairs = coprime_pairs(8);
    (0..pairs.len(), 0..2usize, 0..5i64).prop_map(move |(p, c, k)| {
        let (a, b) = pairs[p];
        let contact = if c == 0 {
            ConicContact::Disjoint
        } else {
            ConicContact::Transversal
        };
        ((a, b), contact, rat(k, 8))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn plane_engine_matches_closed_form(((a, b), contact, delta) in plane_inputs()) {
        let case = plane_monomial_case(a, b, contact, &delta).unwrap();
        // `beta_report` already enforces the vanishing-threshold bound
        // (tau within the log discrepancy forces beta at least 1/3).
        let report = beta_report(&case).unwrap();
        prop_assert_eq!(&report.beta, &plane_monomial(a, b, contact, &delta).unwrap());
        prop_assert!(report.consistent);
        prop_assert!(report.certified);
        prop_assert!(report.concave_on_grid);
        prop_assert!(tau_bound_check(&report));

        let (eps, tau) = plane_monomial_thresholds(a, b, &delta).unwrap();
        prop_assert_eq!(&report.nef_threshold, &eps);
        prop_assert_eq!(&report.vanishing_threshold, &tau);

        // Plane-specific identities on the engine's own numbers.
        let f = int((a * b) as i64);
        prop_assert_eq!(
            &report.nef_threshold * &report.vanishing_threshold,
            f * &report.polarisation_square
        );
        prop_assert_eq!(
            &report.beta,
            &plane_threshold_identity(
                &report.log_discrepancy,
                &report.nef_threshold,
                &report.vanishing_threshold,
            )
        );
    }

    #[test]
    fn quadric_engine_matches_closed_form(((a, b), contact, delta) in quadric_inputs()) {
        let case = quadric_monomial_case(a, b, contact, &delta).unwrap();
        let report = beta_report(&case).unwrap();
        prop_assert_eq!(&report.beta, &quadric_monomial(a, b, contact, &delta).unwrap());
        prop_assert!(report.consistent);
        prop_assert!(report.certified);
        prop_assert!(report.concave_on_grid);
        prop_assert!(tau_bound_check(&report));

        let (eps, tau) = quadric_monomial_thresholds(a, b, &delta).unwrap();
        prop_assert_eq!(&report.nef_threshold, &eps);
        prop_assert_eq!(&report.vanishing_threshold, &tau);
    }

    #[test]
    fn plane_volume_matches_lattice_oracle(
        pair_index in 0..coprime_pairs(6).len(),
        half in proptest::bool::ANY,
        k in 0..=32i64,
    ) {
        let (a, b) = coprime_pairs(6)[pair_index];
        let delta = if half { rat(1, 2) } else { int(0) };
        let case = plane_monomial_case(a, b, ConicContact::Disjoint, &delta).unwrap();
        let vf = volume_sweep(&case.input).unwrap();
        let x = vf.vanishing_threshold() * rat(k, 32);
        let s = int(3) - int(2) * &delta;
        let oracle = monomial_volume_oracle(&moment_triangle(&s), a as i64, b as i64, &x).unwrap();
        prop_assert_eq!(vf.eval(&x), oracle);
    }

    #[test]
    fn quadric_volume_matches_lattice_oracle(
        pair_index in 0..coprime_pairs(6).len(),
        k in 0..=32i64,
    ) {
        let (a, b) = coprime_pairs(6)[pair_index];
        let case = quadric_monomial_case(a, b, ConicContact::Disjoint, &int(0)).unwrap();
        let vf = volume_sweep(&case.input).unwrap();
        let x = vf.vanishing_threshold() * rat(k, 32);
        let oracle =
            monomial_volume_oracle(&moment_square(&int(2)), a as i64, b as i64, &x).unwrap();
        prop_assert_eq!(vf.eval(&x), oracle);
    }

    #[test]
    fn free_tail_engine_matches_closed_form(m in 3..=8usize) {
        let report = beta_report(&line_free_tail_case(m).unwrap()).unwrap();
        prop_assert_eq!(&report.beta, &line_free_tail(m as u32).unwrap());
        let (eps, tau) = line_free_tail_thresholds(m as u32).unwrap();
        prop_assert_eq!(&report.nef_threshold, &eps);
        prop_assert_eq!(&report.vanishing_threshold, &tau);
        prop_assert!(report.certified);
        prop_assert!(report.concave_on_grid);
    }
}
