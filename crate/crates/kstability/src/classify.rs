//! Verdicts for whole pairs: run the destabilising test suite of a family
//! and interpret the resulting slopes.

use num::Zero;
use picard_lattice::Rat;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::beta::{beta_report_strict, BetaError, BetaReport, ProductTypeVerdict};
use crate::divisors::{self, BuildError, DivisorCase};
use crate::families::{FamilyError, Pair};
use crate::formulas::ConicContact;
use crate::report::exact;

/// What the suite establishes about a pair. Positivity of every slope in a
/// finite suite is evidence, not proof, so the affirmative verdicts are
/// phrased as consistency.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// Some divisor in the suite has negative slope.
    NotKSemistable,
    /// Every slope is nonnegative but some vanishing slope sits on a
    /// divisor that no one-parameter subgroup realises.
    NotKPolystable,
    /// Every slope is positive, or vanishes only on product-type divisors.
    ConsistentWithKPolystable,
    /// Every slope is nonnegative and some vanishing slope sits on a
    /// divisor whose product-type status is unknown.
    ConsistentWithKSemistableOnly,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::NotKSemistable => "not-k-semistable",
            Verdict::NotKPolystable => "not-k-polystable",
            Verdict::ConsistentWithKPolystable => "consistent-with-k-polystable",
            Verdict::ConsistentWithKSemistableOnly => "consistent-with-k-semistable-only",
        }
    }
}

/// The pair verdict with the witnesses and full reports behind it.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairVerdict {
    pub family: String,
    pub boundary: String,
    pub pair: String,
    pub verdict: Verdict,
    /// Divisors that decide the verdict: negative-slope divisors for
    /// instability, zero-slope non-product divisors for non-polystability.
    pub witnesses: Vec<String>,
    #[serde(with = "exact")]
    pub suite_min_beta: Rat,
    pub reports: Vec<BetaReport>,
}

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Beta(#[from] BetaError),
    #[error(
        "engine and closed form disagree on {divisor}: swept {engine}, closed form {closed_form}"
    )]
    Inconsistent {
        divisor: String,
        engine: String,
        closed_form: String,
    },
}

/// The destabilising test suite of a family: the divisors whose slopes
/// decide the walls of that family.
pub fn test_suite(pair: &Pair) -> Result<Vec<DivisorCase>, BuildError> {
    pair.validate()?;
    match pair {
        Pair::PlaneConic { delta } => Ok(vec![
            divisors::boundary_conic(delta)?,
            divisors::point_on_conic(delta)?,
            divisors::generic_point(delta)?,
            divisors::plane_monomial_case(2, 1, ConicContact::Tangent, delta)?,
        ]),
        Pair::QuadricDiagonal { delta } => Ok(vec![
            divisors::boundary_diagonal(delta)?,
            divisors::point_on_diagonal(delta)?,
            divisors::quadric_generic_point(delta)?,
            divisors::diagonal_contact_case(delta)?,
        ]),
        Pair::Hirzebruch { m, section, fibre } => Ok(vec![
            divisors::negative_section_case(*m, section, fibre)?,
            divisors::boundary_fibre_case(*m, section, fibre)?,
        ]),
        Pair::HirzebruchPositiveSection { delta } => Ok(vec![
            divisors::f1_negative_section_case(delta)?,
            divisors::f1_positive_section_case(delta)?,
        ]),
        Pair::TwoLines { first, second } => Ok(vec![
            divisors::first_line_case(first, second)?,
            divisors::second_line_case(first, second)?,
        ]),
    }
}

/// Runs the suite, cross-checks every slope against its closed form, and
/// interprets the signs.
pub fn classify_pair(pair: &Pair) -> Result<PairVerdict, ClassifyError> {
    let suite = test_suite(pair)?;
    let mut reports = Vec::with_capacity(suite.len());
    for case in &suite {
        let report = beta_report_strict(case)?;
        if !report.consistent {
            return Err(ClassifyError::Inconsistent {
                divisor: report.divisor.clone(),
                engine: report.beta.to_string(),
                closed_form: report
                    .closed_form_beta
                    .as_ref()
                    .map(|v| v.to_string())
                    .unwrap_or_default(),
            });
        }
        reports.push(report);
    }
    let zero = Rat::zero();
    let suite_min_beta = reports
        .iter()
        .map(|r| r.beta.clone())
        .min()
        .expect("every suite has at least one divisor");
    let negative: Vec<String> = reports
        .iter()
        .filter(|r| r.beta < zero)
        .map(|r| r.divisor.clone())
        .collect();
    let zero_not_product: Vec<String> = reports
        .iter()
        .filter(|r| r.beta == zero && r.product_type == ProductTypeVerdict::NotProductType)
        .map(|r| r.divisor.clone())
        .collect();
    let zero_unknown: Vec<String> = reports
        .iter()
        .filter(|r| r.beta == zero && r.product_type == ProductTypeVerdict::Unknown)
        .map(|r| r.divisor.clone())
        .collect();
    let (verdict, witnesses) = if !negative.is_empty() {
        (Verdict::NotKSemistable, negative)
    } else if !zero_not_product.is_empty() {
        (Verdict::NotKPolystable, zero_not_product)
    } else if !zero_unknown.is_empty() {
        (Verdict::ConsistentWithKSemistableOnly, zero_unknown)
    } else {
        (Verdict::ConsistentWithKPolystable, Vec::new())
    };
    Ok(PairVerdict {
        family: pair.family_key(),
        boundary: pair.boundary_label(),
        pair: pair.describe(),
        verdict,
        witnesses,
        suite_min_beta,
        reports,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use picard_lattice::{int, rat};

    #[test]
    fn the_plane_family_crosses_its_wall_at_three_quarters() {
        let below = classify_pair(&Pair::PlaneConic { delta: rat(5, 8) }).unwrap();
        assert_eq!(below.verdict, Verdict::ConsistentWithKPolystable);
        assert!(below.witnesses.is_empty());
        // The tangent (2,1) slope vanishes identically, but on a
        // product-type divisor, so the minimum is zero below the wall.
        assert_eq!(below.suite_min_beta, int(0));

        let wall = classify_pair(&Pair::PlaneConic { delta: rat(3, 4) }).unwrap();
        assert_eq!(wall.verdict, Verdict::NotKPolystable);
        assert_eq!(wall.witnesses, vec!["boundary-conic".to_string()]);
        assert_eq!(wall.suite_min_beta, int(0));

        let beyond = classify_pair(&Pair::PlaneConic { delta: rat(7, 8) }).unwrap();
        assert_eq!(beyond.verdict, Verdict::NotKSemistable);
        assert_eq!(beyond.witnesses, vec!["boundary-conic".to_string()]);
    }

    #[test]
    fn the_quadric_family_crosses_its_wall_at_one_half() {
        let below = classify_pair(&Pair::QuadricDiagonal { delta: rat(3, 8) }).unwrap();
        assert_eq!(below.verdict, Verdict::ConsistentWithKPolystable);

        let wall = classify_pair(&Pair::QuadricDiagonal { delta: rat(1, 2) }).unwrap();
        assert_eq!(wall.verdict, Verdict::NotKPolystable);
        assert!(wall
            .witnesses
            .contains(&"boundary-diagonal".to_string()));
        assert!(wall.witnesses.contains(&"diagonal-contact".to_string()));

        let beyond = classify_pair(&Pair::QuadricDiagonal { delta: rat(5, 8) }).unwrap();
        assert_eq!(beyond.verdict, Verdict::NotKSemistable);
    }

    #[test]
    fn bare_surfaces_report_zero_slopes_on_product_divisors_only() {
        let plane = classify_pair(&Pair::PlaneConic { delta: int(0) }).unwrap();
        assert_eq!(plane.verdict, Verdict::ConsistentWithKPolystable);
        assert_eq!(plane.suite_min_beta, int(0));

        let quadric = classify_pair(&Pair::QuadricDiagonal { delta: int(0) }).unwrap();
        assert_eq!(quadric.verdict, Verdict::ConsistentWithKPolystable);
        assert_eq!(quadric.suite_min_beta, int(0));
    }

    #[test]
    fn ruled_families_are_never_semistable_on_the_sample_grid() {
        let bare = classify_pair(&Pair::Hirzebruch {
            m: 1,
            section: int(0),
            fibre: int(0),
        })
        .unwrap();
        assert_eq!(bare.verdict, Verdict::NotKSemistable);
        // Both slopes are negative on the bare first Hirzebruch surface:
        // −1/6 on the negative section and −1/12 on a fibre.
        assert_eq!(
            bare.witnesses,
            vec!["negative-section".to_string(), "boundary-fibre".to_string()]
        );
        assert_eq!(bare.suite_min_beta, rat(-1, 6));

        let positive = classify_pair(&Pair::HirzebruchPositiveSection { delta: rat(1, 8) }).unwrap();
        assert_eq!(positive.verdict, Verdict::NotKSemistable);

        let lines = classify_pair(&Pair::TwoLines {
            first: rat(1, 2),
            second: rat(1, 2),
        })
        .unwrap();
        assert_eq!(lines.verdict, Verdict::NotKSemistable);
        assert_eq!(lines.witnesses.len(), 2);
    }
}
