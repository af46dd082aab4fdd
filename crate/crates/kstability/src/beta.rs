//! The stability slope of a divisor case: run the sweep, integrate the
//! volume, certify the vanishing threshold, and assemble everything into a
//! serialisable report.

use num::One;
use picard_lattice::{rat, Rat};
use serde::{Deserialize, Serialize};
use thiserror::Error;
use volume_zariski::{certify, concavity_slacks, default_grid, volume_sweep, Certification};

use crate::divisors::DivisorCase;
use crate::report::{exact, exact_opt};

/// Whether the divisor is the weight divisor of a one-parameter subgroup of
/// automorphisms of the pair. A vanishing slope on such a divisor is
/// harmless; on any other divisor it rules out polystability.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProductTypeVerdict {
    ProductType,
    NotProductType,
    Unknown,
}

impl ProductTypeVerdict {
    pub fn label(self) -> &'static str {
        match self {
            ProductTypeVerdict::ProductType => "product-type",
            ProductTypeVerdict::NotProductType => "not-product-type",
            ProductTypeVerdict::Unknown => "unknown",
        }
    }
}

/// One curve of the effectivity certificate for the boundary class at the
/// vanishing threshold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateEntry {
    pub curve: String,
    #[serde(with = "exact")]
    pub coefficient: Rat,
}

/// Everything the sweep establishes about one divisor over one pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BetaReport {
    pub divisor: String,
    pub family: String,
    pub boundary: String,
    pub pair: String,
    #[serde(with = "exact")]
    pub log_discrepancy: Rat,
    #[serde(with = "exact")]
    pub nef_threshold: Rat,
    #[serde(with = "exact")]
    pub vanishing_threshold: Rat,
    #[serde(with = "exact")]
    pub polarisation_square: Rat,
    #[serde(with = "exact")]
    pub volume_integral: Rat,
    #[serde(with = "exact")]
    pub beta: Rat,
    #[serde(with = "exact_opt", default, skip_serializing_if = "Option::is_none")]
    pub closed_form_beta: Option<Rat>,
    /// Whether the swept slope agrees with the closed form (vacuously true
    /// when no closed form is attached).
    pub consistent: bool,
    /// Whether the vanishing threshold is certified exact by an effectivity
    /// decomposition over a cone-generating catalog.
    pub certified: bool,
    pub certificate: Vec<CertificateEntry>,
    pub product_type: ProductTypeVerdict,
    pub piece_count: usize,
    /// Square-root concavity of the volume checked on the default grid.
    pub concave_on_grid: bool,
    /// Whether the vanishing threshold is at most the log discrepancy, in
    /// which case the slope is at least one third.
    pub tau_within_log_discrepancy: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path_configuration: Option<bool>,
}

#[derive(Debug, Error)]
pub enum BetaError {
    #[error(transparent)]
    Sweep(#[from] volume_zariski::SweepError),
    #[error(
        "threshold bound violated for {divisor}: vanishing threshold {tau} is at most the log \
         discrepancy {log_discrepancy}, which forces a slope of at least 1/3, but the sweep \
         produced {beta}"
    )]
    ThresholdBoundViolated {
        divisor: String,
        tau: String,
        log_discrepancy: String,
        beta: String,
    },
    #[error(
        "the vanishing threshold of {divisor} is not certified; rerun allowing uncertified \
         catalogs to accept the heuristic value"
    )]
    Uncertified { divisor: String },
    #[error(
        "catalog inconsistency for {divisor}: the catalog claims to generate the effective cone \
         but the boundary class at the vanishing threshold does not decompose over it"
    )]
    Decomposition { divisor: String },
}

/// Runs the sweep for the case and assembles the full report. Heuristic
/// (uncertified) thresholds are reported as such; use [`beta_report_strict`]
/// to reject them.
pub fn beta_report(case: &DivisorCase) -> Result<BetaReport, BetaError> {
    let vf = volume_sweep(&case.input)?;
    let log_discrepancy = case.log_discrepancy.clone();
    let volume_integral = vf.integral();
    let polarisation_square = vf.polarisation_square().clone();
    let expected_mean = &volume_integral / &polarisation_square;
    let beta = Rat::one() - &expected_mean / &log_discrepancy;
    let vanishing_threshold = vf.vanishing_threshold().clone();
    let tau_within_log_discrepancy = vanishing_threshold <= log_discrepancy;
    if tau_within_log_discrepancy && beta < rat(1, 3) {
        return Err(BetaError::ThresholdBoundViolated {
            divisor: case.id.clone(),
            tau: vanishing_threshold.to_string(),
            log_discrepancy: log_discrepancy.to_string(),
            beta: beta.to_string(),
        });
    }
    let consistent = case
        .closed_form_beta
        .as_ref()
        .is_none_or(|cf| cf == &beta);
    let (certified, certificate) = match certify(&case.input, &vf) {
        Certification::Certified { decomposition } => (
            true,
            decomposition
                .into_iter()
                .map(|(curve, coefficient)| CertificateEntry { curve, coefficient })
                .collect(),
        ),
        Certification::Heuristic => (false, Vec::new()),
        Certification::DecompositionFailed => {
            return Err(BetaError::Decomposition {
                divisor: case.id.clone(),
            })
        }
    };
    let grid = default_grid(&vf);
    let concave_on_grid = concavity_slacks(&vf, &grid).all_nonnegative;
    Ok(BetaReport {
        divisor: case.id.clone(),
        family: case.pair.family_key(),
        boundary: case.pair.boundary_label(),
        pair: case.pair.describe(),
        log_discrepancy,
        nef_threshold: vf.nef_threshold().clone(),
        vanishing_threshold,
        polarisation_square,
        volume_integral,
        beta,
        closed_form_beta: case.closed_form_beta.clone(),
        consistent,
        certified,
        certificate,
        product_type: case.product_type,
        piece_count: vf.pieces().len(),
        concave_on_grid,
        tau_within_log_discrepancy,
        path_configuration: case.path_configuration,
    })
}

/// Like [`beta_report`] but refuses heuristic thresholds.
pub fn beta_report_strict(case: &DivisorCase) -> Result<BetaReport, BetaError> {
    let report = beta_report(case)?;
    if !report.certified {
        return Err(BetaError::Uncertified {
            divisor: case.id.clone(),
        });
    }
    Ok(report)
}

/// Whether the report witnesses the threshold-versus-discrepancy bound: a
/// vanishing threshold at most the log discrepancy forces a slope ≥ 1/3.
pub fn tau_bound_check(report: &BetaReport) -> bool {
    !report.tau_within_log_discrepancy || report.beta >= rat(1, 3)
}
