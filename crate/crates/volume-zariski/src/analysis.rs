//! Consistency checks on computed volume functions: concavity of the
//! square-root of the volume, and certification of the vanishing
//! threshold against a cone-generating curve catalog.

use crate::input::SweepInput;
use crate::simplex::nonnegative_combination;
use crate::sweep::VolumeFunction;
use num::{Signed, Zero};
use picard_lattice::{int, rat, Rat};

/// Exact slack values for the concavity of `√vol`.
///
/// For a sample pair `x < y` the tangent line of `√vol` at `x`, evaluated
/// at `y`, is `√vol(x) · factor` with
/// `factor = 1 + (y − x)·vol′(x)/(2·vol(x))`. Concavity demands
/// `√vol(y)` stay below the tangent, which after squaring becomes
/// `vol(x)·factor² − vol(y) ≥ 0` whenever `factor ≥ 0`; a negative
/// `factor` is itself a violation, encoded as the (negative) slack
/// `−(vol(x)·factor² + vol(y))`.
#[derive(Debug, Clone)]
pub struct ConcavityReport {
    /// `(x, y, slack)` for every ordered sample pair.
    pub pair_slacks: Vec<(Rat, Rat, Rat)>,
    /// `(x, slack)` of the tangent-root bound: where `vol` is strictly
    /// decreasing, the tangent line of `√vol` at `x` must not cross zero
    /// before the vanishing threshold, i.e.
    /// `x + 2·vol(x)/(−vol′(x)) ≥ τ`.
    pub tangent_slacks: Vec<(Rat, Rat)>,
    pub all_nonnegative: bool,
}

/// Default sample grid: interior fractions of the vanishing threshold.
pub fn default_grid(vf: &VolumeFunction) -> Vec<Rat> {
    let tau = vf.vanishing_threshold();
    [(1, 6), (1, 3), (1, 2), (2, 3), (5, 6)]
        .iter()
        .map(|&(n, d)| tau * rat(n, d))
        .collect()
}

/// Evaluates the concavity slacks of `√vol` on the given sample points.
///
/// Points where the volume vanishes are skipped as left endpoints (the
/// tangent is undefined there). All arithmetic is exact; the report is a
/// hard witness, not an approximation.
pub fn concavity_slacks(vf: &VolumeFunction, xs: &[Rat]) -> ConcavityReport {
    let mut sorted: Vec<Rat> = xs.to_vec();
    sorted.sort();
    sorted.dedup();
    let tau = vf.vanishing_threshold().clone();
    let mut pair_slacks = Vec::new();
    let mut tangent_slacks = Vec::new();
    for (i, x) in sorted.iter().enumerate() {
        let fx = vf.eval(x);
        if !fx.is_positive() {
            continue;
        }
        let dfx = if x.is_zero() {
            // Right-sided derivative at the origin.
            vf.pieces()[0].derivative(x)
        } else {
            vf.left_derivative(x)
        };
        for y in &sorted[i + 1..] {
            let fy = vf.eval(y);
            let factor = int(1) + (y - x) * &dfx / (int(2) * &fx);
            let slack = if factor.is_negative() {
                -(&fx * &factor * &factor + &fy)
            } else {
                &fx * &factor * &factor - &fy
            };
            pair_slacks.push((x.clone(), y.clone(), slack));
        }
        if dfx.is_negative() {
            let slack = x + int(2) * &fx / -&dfx - &tau;
            tangent_slacks.push((x.clone(), slack));
        }
    }
    let all_nonnegative = pair_slacks
        .iter()
        .all(|(_, _, s)| !s.is_negative())
        && tangent_slacks.iter().all(|(_, s)| !s.is_negative());
    ConcavityReport {
        pair_slacks,
        tangent_slacks,
        all_nonnegative,
    }
}

/// Outcome of certifying the vanishing threshold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certification {
    /// The catalog generates the effective cone and `L − τ·w` decomposes
    /// as a nonnegative combination of catalog curves: τ is exact.
    Certified { decomposition: Vec<(String, Rat)> },
    /// The catalog claims to generate the cone, yet no nonnegative
    /// decomposition of `L − τ·w` exists — the input is inconsistent.
    DecompositionFailed,
    /// The catalog makes no generation claim; the threshold is only as
    /// good as the catalog.
    Heuristic,
}

/// Certifies the vanishing threshold by decomposing `L − τ·w` over the
/// catalog. Conclusive only when the catalog is marked cone-generating.
pub fn certify(input: &SweepInput, vf: &VolumeFunction) -> Certification {
    if !input.catalog.cone_generating {
        return Certification::Heuristic;
    }
    let tau = vf.vanishing_threshold();
    let boundary = &input.polarisation - &input.direction.scale(tau);
    let columns: Vec<Vec<Rat>> = input
        .catalog
        .entries
        .iter()
        .map(|e| e.class.coeffs.clone())
        .collect();
    match nonnegative_combination(&columns, &boundary.coeffs) {
        Some(lambda) => Certification::Certified {
            decomposition: input
                .catalog
                .entries
                .iter()
                .zip(lambda)
                .filter(|(_, l)| !l.is_zero())
                .map(|(e, l)| (e.label.clone(), l))
                .collect(),
        },
        None => Certification::DecompositionFailed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::input::{CurveCatalog, CurveEntry};
    use crate::sweep::volume_sweep;
    use picard_lattice::{BaseSurface, PicardBasis};

    fn blowup_sweep() -> (SweepInput, VolumeFunction) {
        let basis = PicardBasis::new(BaseSurface::ProjectivePlane, 1);
        let e = basis.exceptional(1);
        let h = basis.class_from_base(&[1]);
        let input = SweepInput {
            catalog: CurveCatalog {
                entries: vec![
                    CurveEntry {
                        label: "E1".into(),
                        class: e.clone(),
                    },
                    CurveEntry {
                        label: "line-p1".into(),
                        class: &h - &e,
                    },
                    CurveEntry {
                        label: "far-line".into(),
                        class: h.clone(),
                    },
                ],
                cone_generating: true,
            },
            polarisation: &basis.class_from_base(&[3]) - &e,
            direction: &h - &e,
            basis,
        };
        let vf = volume_sweep(&input).unwrap();
        (input, vf)
    }

    #[test]
    fn concave_volume_has_nonnegative_slacks() {
        let (_, vf) = blowup_sweep();
        let grid = default_grid(&vf);
        assert_eq!(grid.len(), 5);
        let report = concavity_slacks(&vf, &grid);
        assert_eq!(report.pair_slacks.len(), 10);
        assert!(report.all_nonnegative, "slacks: {:?}", report.pair_slacks);
        for (_, slack) in &report.tangent_slacks {
            assert!(!slack.is_negative());
        }
    }

    #[test]
    fn threshold_certificate_decomposes_the_boundary_class() {
        let (input, vf) = blowup_sweep();
        // τ = 3 with D(3) = (3−3)H − (1−3)e = 2e: the boundary class is
        // twice the exceptional curve.
        match certify(&input, &vf) {
            Certification::Certified { decomposition } => {
                assert_eq!(decomposition, vec![("E1".to_string(), int(2))]);
            }
            other => panic!("expected certification, got {other:?}"),
        }
    }

    #[test]
    fn nonzero_boundary_certificates_carry_the_decomposition() {
        // Sweep toward H: τ = 2 with D(2) = H − e, decomposing as the
        // line through the point with coefficient 1.
        let (mut input, _) = blowup_sweep();
        input.direction = input.basis.class_from_base(&[1]);
        let vf = volume_sweep(&input).unwrap();
        assert_eq!(vf.vanishing_threshold(), &int(2));
        match certify(&input, &vf) {
            Certification::Certified { decomposition } => {
                assert_eq!(decomposition, vec![("line-p1".to_string(), int(1))]);
            }
            other => panic!("expected certification, got {other:?}"),
        }
    }

    #[test]
    fn heuristic_catalogs_are_never_certified() {
        let (mut input, vf) = blowup_sweep();
        input.catalog.cone_generating = false;
        assert_eq!(certify(&input, &vf), Certification::Heuristic);
    }
}
