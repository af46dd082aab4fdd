//! Replays the catalogued classification: every closed-form slope,
//! threshold and verdict the library records, recomputed from scratch by
//! the sweep and compared value by value.

use num::Zero;
use picard_lattice::{format_rat, int, rat, Rat};
use serde::{Deserialize, Serialize};
use thiserror::Error;
use volume_zariski::volume_sweep;

use crate::beta::{beta_report, BetaError, BetaReport};
use crate::classify::{classify_pair, ClassifyError, Verdict};
use crate::divisors::{self, BuildError, DivisorCase};
use crate::families::{
    hirzebruch_pairs, plane_default_grid, quadric_default_grid, two_line_pairs,
    unit_default_grid, FamilyError, Pair,
};
use crate::formulas::{self, ConicContact, FormulaError};
use crate::report::exact;

/// One reproduced quantity: the recorded value next to the recomputed one.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReproRow {
    pub section: String,
    pub case_label: String,
    pub quantity: String,
    #[serde(with = "exact")]
    pub expected: Rat,
    #[serde(with = "exact")]
    pub computed: Rat,
    pub matched: bool,
}

/// One reproduced yes/no property (certificates, verdicts, orderings).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReproCheck {
    pub section: String,
    pub case_label: String,
    pub property: String,
    pub holds: bool,
}

/// The full comparison table of a reproduction run.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct Reproduction {
    pub rows: Vec<ReproRow>,
    pub checks: Vec<ReproCheck>,
}

impl Reproduction {
    pub fn all_match(&self) -> bool {
        self.rows.iter().all(|r| r.matched) && self.checks.iter().all(|c| c.holds)
    }

    /// Human-readable description of the first failing row or check.
    pub fn first_failure(&self) -> Option<String> {
        if let Some(row) = self.rows.iter().find(|r| !r.matched) {
            return Some(format!(
                "{}/{}: {} expected {}, computed {}",
                row.section,
                row.case_label,
                row.quantity,
                format_rat(&row.expected),
                format_rat(&row.computed)
            ));
        }
        self.checks
            .iter()
            .find(|c| !c.holds)
            .map(|c| format!("{}/{}: property {} failed", c.section, c.case_label, c.property))
    }

    fn merge(&mut self, other: Reproduction) {
        self.rows.extend(other.rows);
        self.checks.extend(other.checks);
    }
}

#[derive(Debug, Error)]
pub enum ReproduceError {
    #[error("unknown reproduction target {0:?}: use plane, quadric, ruled, examples or all")]
    UnknownTarget(String),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Beta(#[from] BetaError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Sweep(#[from] volume_zariski::SweepError),
}

struct Recorder {
    section: &'static str,
    out: Reproduction,
}

impl Recorder {
    fn new(section: &'static str) -> Self {
        Recorder {
            section,
            out: Reproduction::default(),
        }
    }

    fn row(&mut self, label: &str, quantity: &str, expected: Rat, computed: Rat) {
        self.out.rows.push(ReproRow {
            section: self.section.to_string(),
            case_label: label.to_string(),
            quantity: quantity.to_string(),
            matched: expected == computed,
            expected,
            computed,
        });
    }

    fn check(&mut self, label: &str, property: &str, holds: bool) {
        self.out.checks.push(ReproCheck {
            section: self.section.to_string(),
            case_label: label.to_string(),
            property: property.to_string(),
            holds,
        });
    }

    /// Runs the sweep for a case and records its slope against the
    /// expectation; returns the report for further rows.
    fn beta_row(
        &mut self,
        label: &str,
        case: &DivisorCase,
        expected: Rat,
    ) -> Result<BetaReport, BetaError> {
        let report = beta_report(case)?;
        self.row(label, "beta", expected, report.beta.clone());
        Ok(report)
    }
}

fn delta_label(id: &str, delta: &Rat) -> String {
    format!("{id}@delta={}", format_rat(delta))
}

fn plane_section() -> Result<Reproduction, ReproduceError> {
    let mut rec = Recorder::new("plane");
    for delta in plane_default_grid() {
        let d = &delta;
        rec.beta_row(
            &delta_label("boundary-conic", d),
            &divisors::boundary_conic(d)?,
            formulas::plane_boundary_conic(d)?,
        )?;
        rec.beta_row(
            &delta_label("point-on-conic", d),
            &divisors::point_on_conic(d)?,
            formulas::plane_monomial(1, 1, ConicContact::Transversal, d)?,
        )?;
        rec.beta_row(
            &delta_label("generic-point", d),
            &divisors::generic_point(d)?,
            formulas::plane_monomial(1, 1, ConicContact::Disjoint, d)?,
        )?;

        // The tangent (2,1) valuation: slope pinned at zero with both
        // thresholds, the product-type flag and an exact certificate.
        let tangent_label = delta_label("monomial-2-1-tangent", d);
        let tangent = divisors::plane_monomial_case(2, 1, ConicContact::Tangent, d)?;
        let report = rec.beta_row(&tangent_label, &tangent, Rat::zero())?;
        let (eps, tau) = formulas::plane_monomial_thresholds(2, 1, d)?;
        rec.row(
            &tangent_label,
            "nef_threshold",
            eps,
            report.nef_threshold.clone(),
        );
        rec.row(
            &tangent_label,
            "vanishing_threshold",
            tau,
            report.vanishing_threshold.clone(),
        );
        rec.check(
            &tangent_label,
            "product-type",
            report.product_type == crate::beta::ProductTypeVerdict::ProductType,
        );
        rec.check(&tangent_label, "certified", report.certified);

        for (a, b, contact) in [
            (3u64, 1u64, ConicContact::Tangent),
            (3, 2, ConicContact::Tangent),
            (2, 1, ConicContact::Transversal),
            (3, 2, ConicContact::Transversal),
            (2, 1, ConicContact::Disjoint),
        ] {
            let label = delta_label(&format!("monomial-{a}-{b}-{}", contact.label()), d);
            rec.beta_row(
                &label,
                &divisors::plane_monomial_case(a, b, contact, d)?,
                formulas::plane_monomial(a, b, contact, d)?,
            )?;
        }

        for degree in 1..=3u32 {
            rec.beta_row(
                &delta_label(&format!("plane-curve-{degree}"), d),
                &divisors::plane_curve_case(degree, d)?,
                formulas::plane_curve(degree, d)?,
            )?;
        }

        if !d.is_zero() {
            // Deeper contact destabilises no later than shallower contact.
            let tangent = formulas::plane_monomial(3, 2, ConicContact::Tangent, d)?;
            let transversal = formulas::plane_monomial(3, 2, ConicContact::Transversal, d)?;
            let disjoint = formulas::plane_monomial(3, 2, ConicContact::Disjoint, d)?;
            rec.check(
                &delta_label("monomial-3-2", d),
                "contact-ordering",
                tangent < transversal && transversal < disjoint,
            );
        }
    }

    // Bare plane: every monomial valuation has slope exactly zero and is
    // realised by the torus.
    let zero = int(0);
    for (a, b) in [(1u64, 1u64), (2, 1), (3, 1), (3, 2), (4, 1), (4, 3)] {
        let label = format!("monomial-{a}-{b}@delta=0");
        let case = divisors::plane_monomial_case(a, b, ConicContact::Disjoint, &zero)?;
        let report = rec.beta_row(&label, &case, Rat::zero())?;
        rec.check(
            &label,
            "product-type",
            report.product_type == crate::beta::ProductTypeVerdict::ProductType,
        );
    }
    Ok(rec.out)
}

fn quadric_section() -> Result<Reproduction, ReproduceError> {
    let mut rec = Recorder::new("quadric");
    for delta in quadric_default_grid() {
        let d = &delta;
        rec.beta_row(
            &delta_label("boundary-diagonal", d),
            &divisors::boundary_diagonal(d)?,
            formulas::quadric_boundary_diagonal(d)?,
        )?;

        let on_label = delta_label("point-on-diagonal", d);
        let on_case = divisors::point_on_diagonal(d)?;
        let report = rec.beta_row(&on_label, &on_case, Rat::zero())?;
        rec.check(
            &on_label,
            "product-type",
            report.product_type == crate::beta::ProductTypeVerdict::ProductType,
        );

        rec.beta_row(
            &delta_label("generic-point", d),
            &divisors::quadric_generic_point(d)?,
            formulas::quadric_monomial(1, 1, ConicContact::Disjoint, d)?,
        )?;

        let contact_label = delta_label("diagonal-contact", d);
        let contact_case = divisors::diagonal_contact_case(d)?;
        let report = rec.beta_row(
            &contact_label,
            &contact_case,
            formulas::quadric_diagonal_contact(d)?,
        )?;
        let (eps, tau) = formulas::quadric_diagonal_contact_thresholds(d)?;
        rec.row(
            &contact_label,
            "nef_threshold",
            eps,
            report.nef_threshold.clone(),
        );
        rec.row(
            &contact_label,
            "vanishing_threshold",
            tau,
            report.vanishing_threshold.clone(),
        );
        rec.check(&contact_label, "certified", report.certified);

        for (a, b, contact) in [
            (2u64, 1u64, ConicContact::Transversal),
            (3, 2, ConicContact::Transversal),
            (2, 1, ConicContact::Disjoint),
        ] {
            let label = delta_label(&format!("monomial-{a}-{b}-{}", contact.label()), d);
            rec.beta_row(
                &label,
                &divisors::quadric_monomial_case(a, b, contact, d)?,
                formulas::quadric_monomial(a, b, contact, d)?,
            )?;
        }

        rec.beta_row(
            &delta_label("quadric-curve-1-0", d),
            &divisors::quadric_curve_case(1, 0, d)?,
            formulas::quadric_curve(1, 0, d)?,
        )?;
        rec.beta_row(
            &delta_label("quadric-curve-1-1", d),
            &divisors::quadric_curve_case(1, 1, d)?,
            formulas::quadric_curve(1, 1, d)?,
        )?;
    }

    let zero = int(0);
    for (a, b) in [(2u64, 1u64), (3, 1), (3, 2)] {
        let label = format!("monomial-{a}-{b}@delta=0");
        let case = divisors::quadric_monomial_case(a, b, ConicContact::Disjoint, &zero)?;
        let report = rec.beta_row(&label, &case, Rat::zero())?;
        rec.check(
            &label,
            "product-type",
            report.product_type == crate::beta::ProductTypeVerdict::ProductType,
        );
    }
    Ok(rec.out)
}

fn report_of<'a>(verdict: &'a crate::classify::PairVerdict, divisor: &str) -> &'a BetaReport {
    verdict
        .reports
        .iter()
        .find(|r| r.divisor == divisor)
        .expect("suite contains the divisor")
}

fn ruled_section() -> Result<Reproduction, ReproduceError> {
    let mut rec = Recorder::new("ruled");
    let grid = unit_default_grid();

    for m in 0..=4u32 {
        for pair in hirzebruch_pairs(m, &grid) {
            let Pair::Hirzebruch {
                m,
                ref section,
                ref fibre,
            } = pair
            else {
                unreachable!("hirzebruch_pairs yields Hirzebruch pairs");
            };
            let label = format!("{}:{}", pair.family_key(), pair.boundary_label());
            let verdict = classify_pair(&pair)?;
            rec.row(
                &label,
                "beta:negative-section",
                formulas::hirzebruch_negative_section(m, section, fibre)?,
                report_of(&verdict, "negative-section").beta.clone(),
            );
            rec.row(
                &label,
                "beta:boundary-fibre",
                formulas::hirzebruch_fibre(m, section, fibre)?,
                report_of(&verdict, "boundary-fibre").beta.clone(),
            );
            rec.check(
                &label,
                "not-k-semistable",
                verdict.verdict == Verdict::NotKSemistable,
            );
        }
    }

    for delta in unit_default_grid() {
        let pair = Pair::HirzebruchPositiveSection {
            delta: delta.clone(),
        };
        let label = format!("{}:{}", pair.family_key(), pair.boundary_label());
        let verdict = classify_pair(&pair)?;
        let (on_negative, on_positive) = formulas::positive_section_pair(&delta)?;
        rec.row(
            &label,
            "beta:negative-section",
            on_negative.clone(),
            report_of(&verdict, "negative-section").beta.clone(),
        );
        rec.row(
            &label,
            "beta:positive-section",
            on_positive.clone(),
            report_of(&verdict, "positive-section").beta.clone(),
        );
        // The two slopes always disagree in sign: the pair is unstable at
        // every boundary coefficient, from one side or the other.
        rec.check(
            &label,
            "opposite-signs",
            (on_negative < Rat::zero()) != (on_positive < Rat::zero()),
        );
        rec.check(
            &label,
            "not-k-semistable",
            verdict.verdict == Verdict::NotKSemistable,
        );
    }

    for pair in two_line_pairs(&unit_default_grid()) {
        let Pair::TwoLines {
            ref first,
            ref second,
        } = pair
        else {
            unreachable!("two_line_pairs yields TwoLines pairs");
        };
        let label = format!("{}:{}", pair.family_key(), pair.boundary_label());
        let verdict = classify_pair(&pair)?;
        let (on_first, on_second) = formulas::two_lines(first, second)?;
        rec.row(
            &label,
            "beta:line-1",
            on_first,
            report_of(&verdict, "line-1").beta.clone(),
        );
        rec.row(
            &label,
            "beta:line-2",
            on_second,
            report_of(&verdict, "line-2").beta.clone(),
        );
        rec.check(
            &label,
            "not-k-semistable",
            verdict.verdict == Verdict::NotKSemistable,
        );
    }
    Ok(rec.out)
}

fn examples_section() -> Result<Reproduction, ReproduceError> {
    let mut rec = Recorder::new("examples");

    let mut tail_betas = Vec::new();
    for m in 4..=8usize {
        let label = format!("line-free-tail-{m}");
        let case = divisors::line_free_tail_case(m)?;
        let report = rec.beta_row(&label, &case, formulas::line_free_tail(m as u32)?)?;
        let (eps, tau) = formulas::line_free_tail_thresholds(m as u32)?;
        rec.row(&label, "nef_threshold", eps, report.nef_threshold.clone());
        rec.row(
            &label,
            "vanishing_threshold",
            tau,
            report.vanishing_threshold.clone(),
        );
        rec.check(&label, "certified", report.certified);
        tail_betas.push(report.beta.clone());
    }
    rec.check(
        "line-free-tail-4..8",
        "beta-strictly-decreasing-in-m",
        tail_betas.windows(2).all(|w| w[0] > w[1]),
    );

    let label = "cubic-nine";
    let case = divisors::cubic_nine_case()?;
    let vf = volume_sweep(&case.input)?;
    let report = beta_report(&case)?;
    rec.row(
        label,
        "nef_threshold",
        int(9),
        report.nef_threshold.clone(),
    );
    rec.row(
        label,
        "vanishing_threshold",
        int(9),
        report.vanishing_threshold.clone(),
    );
    rec.row(label, "volume-at-vanishing", int(0), vf.eval(&int(9)));
    // No closed form is recorded for this slope; the plane threshold
    // identity evaluates it from the thresholds alone.
    rec.row(
        label,
        "beta",
        formulas::plane_threshold_identity(&int(10), &int(9), &int(9)),
        report.beta.clone(),
    );
    rec.row(label, "beta-pinned", rat(2, 5), report.beta.clone());
    rec.check(label, "single-piece", vf.is_single_piece());
    rec.check(label, "threshold-heuristic-only", !report.certified);

    Ok(rec.out)
}

/// Reproduces one catalogued section (`plane`, `quadric`, `ruled`,
/// `examples`) or everything (`all`).
pub fn reproduce(target: &str) -> Result<Reproduction, ReproduceError> {
    match target {
        "plane" => plane_section(),
        "quadric" => quadric_section(),
        "ruled" => ruled_section(),
        "examples" => examples_section(),
        "all" => {
            let mut out = plane_section()?;
            out.merge(quadric_section()?);
            out.merge(ruled_section()?);
            out.merge(examples_section()?);
            Ok(out)
        }
        other => Err(ReproduceError::UnknownTarget(other.to_string())),
    }
}
