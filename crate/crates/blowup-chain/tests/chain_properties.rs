//! Randomised structural checks: any legally-hosted chain must build, and
//! its dual classes, log discrepancies and vanishing orders must satisfy the
//! defining identities however the chain branches.

use blowup_chain::{
    BlowupChain, BoundaryEntry, ChainDescription, CurveSpec, PointSpec, SurfaceId,
};
use picard_lattice::{int, rat, Rat};
use proptest::prelude::*;

/// Builds the host sequence of a legal chain from raw random choices: each
/// point is free, at the corner with the previous-but-one curve, or at the
/// corner continuing the previous host.
fn hosts_from_choices(choices: &[u8]) -> Vec<usize> {
    let mut hosts = vec![0usize];
    for (idx, &c) in choices.iter().enumerate() {
        let step = idx + 2;
        let mut options = vec![0usize];
        if step >= 3 {
            options.push(step - 2);
            // The previous exceptional curve also meets the host of the
            // previous point, so that corner stays legal too.
            let prev = hosts[idx];
            if prev >= 1 && prev != step - 2 {
                options.push(prev);
            }
        }
        hosts.push(options[usize::from(c) % options.len()]);
    }
    hosts
}

fn description(hosts: &[usize], delta: Rat) -> ChainDescription {
    ChainDescription {
        surface: SurfaceId::Plane,
        curves: vec![CurveSpec {
            id: "l".into(),
            base_class: vec![1],
        }],
        boundary: if delta == int(0) {
            vec![]
        } else {
            vec![BoundaryEntry {
                curve: "l".into(),
                coefficient: delta,
            }]
        },
        points: hosts
            .iter()
            .enumerate()
            .map(|(i, &q)| PointSpec {
                on_exceptional: (q != 0).then_some(q),
                multiplicities: if i == 0 {
                    [("l".to_string(), 1)].into()
                } else {
                    Default::default()
                },
            })
            .collect(),
    }
}

proptest! {
    #[test]
    fn legal_chains_build_and_satisfy_the_dual_identities(
        choices in proptest::collection::vec(any::<u8>(), 0..7),
        dnum in 0i64..4,
    ) {
        let hosts = hosts_from_choices(&choices);
        let delta = rat(dnum, 4);
        let chain = BlowupChain::build(&description(&hosts, delta.clone())).unwrap();
        let m = chain.step_count();
        let b = chain.basis();

        // Dual bases: (dual_i · strict_j) = −δ_ij.
        for i in 1..=m {
            for j in 1..=m {
                let want = if i == j { int(-1) } else { int(0) };
                prop_assert_eq!(
                    b.intersect(chain.dual_class(i), chain.exceptional_strict(j)),
                    want, "pairing ({}, {})", i, j
                );
            }
        }

        // The drop −(dual)² is a positive integer, and the dual expands over
        // the exceptional generators with positive integer coefficients.
        let f = chain.dual_norm();
        prop_assert!(f >= int(1));
        prop_assert!(f.is_integer());
        for k in 0..m {
            let c = &chain.final_dual().coeffs[b.surface.base_rank() + k];
            prop_assert!(c >= &int(1));
            prop_assert!(c.is_integer());
        }

        // Log discrepancy: dual pairing against the declared boundary agrees
        // with the step-by-step blowup recursion, and the pure value counts
        // at least one per blowup on top of 1.
        prop_assert_eq!(chain.log_discrepancy(), chain.log_discrepancy_by_recursion());
        prop_assert!(chain.pure_log_discrepancy() >= int(m as i64 + 1));
        let ord = chain.order_along("l").unwrap();
        prop_assert_eq!(
            chain.log_discrepancy(),
            chain.pure_log_discrepancy() - delta * ord
        );

        // Exceptional strict transforms form a negative definite lattice.
        let stricts: Vec<_> = (1..=m).map(|i| chain.exceptional_strict(i).clone()).collect();
        prop_assert!(b.is_negative_definite(&stricts));
    }

    #[test]
    fn purely_free_chains_are_paths_with_unit_drop_growth(m in 1usize..7) {
        let hosts = vec![0usize; m];
        let chain = BlowupChain::build(&description(&hosts, int(0))).unwrap();
        prop_assert!(chain.is_path_configuration());
        // The dual accumulates one new generator per step, so −(dual)² = m.
        prop_assert_eq!(chain.dual_norm(), int(m as i64));
        prop_assert_eq!(chain.pure_log_discrepancy(), int(m as i64 + 1));
    }
}

#[test]
fn json_fixture_builds_to_known_invariants() {
    let json = r#"{
        "surface": "quadric",
        "curves": [
            { "id": "f1", "base_class": [1, 0] },
            { "id": "f2", "base_class": [0, 1] },
            { "id": "diag", "base_class": [1, 1] }
        ],
        "boundary": [ { "curve": "diag", "coefficient": "1/2" } ],
        "points": [
            { "multiplicities": { "f1": 1, "f2": 1, "diag": 1 } }
        ]
    }"#;
    let desc: ChainDescription = serde_json::from_str(json).unwrap();
    let chain = BlowupChain::build(&desc).unwrap();
    assert_eq!(chain.dual_norm(), int(1));
    assert_eq!(chain.pure_log_discrepancy(), int(2));
    // A = 2 − (1/2)·1 = 3/2 for the point blowup on the boundary curve.
    assert_eq!(chain.log_discrepancy(), rat(3, 2));
    // L = −K − (1/2)·diag has bidegree (3/2, 3/2).
    let l = chain.log_anticanonical();
    assert_eq!(l.coeffs[0], rat(3, 2));
    assert_eq!(l.coeffs[1], rat(3, 2));
}
