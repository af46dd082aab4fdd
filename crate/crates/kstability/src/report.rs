//! Output shaping: exact rationals rendered as fraction plus decimal,
//! serde adapters for reports, and flat CSV records.

use picard_lattice::{decimal_string, format_rat, parse_rat, ParseRatError, Rat};
use serde::{Deserialize, Serialize};

use crate::beta::BetaReport;
use crate::classify::PairVerdict;
use crate::reproduce::{ReproCheck, ReproRow};

/// Decimal digits rendered next to every exact fraction.
pub const DECIMAL_DIGITS: u32 = 12;

/// An exact rational in transport form: the fraction is authoritative, the
/// decimal is a rounded convenience rendering.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactValue {
    pub fraction: String,
    pub decimal: String,
}

impl ExactValue {
    pub fn of(value: &Rat) -> Self {
        ExactValue {
            fraction: format_rat(value),
            decimal: decimal_string(value, DECIMAL_DIGITS),
        }
    }

    pub fn to_rat(&self) -> Result<Rat, ParseRatError> {
        parse_rat(&self.fraction)
    }
}

/// Serde adapter serialising a [`Rat`] as an [`ExactValue`].
pub mod exact {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Rat, serializer: S) -> Result<S::Ok, S::Error> {
        ExactValue::of(value).serialize(serializer)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Rat, D::Error> {
        let value = ExactValue::deserialize(deserializer)?;
        value.to_rat().map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for optional exact rationals.
pub mod exact_opt {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        value: &Option<Rat>,
        serializer: S,
    ) -> Result<S::Ok, S::Error> {
        value.as_ref().map(ExactValue::of).serialize(serializer)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        deserializer: D,
    ) -> Result<Option<Rat>, D::Error> {
        let value = Option::<ExactValue>::deserialize(deserializer)?;
        value
            .map(|v| v.to_rat().map_err(serde::de::Error::custom))
            .transpose()
    }
}

/// Column names of the per-divisor CSV table.
pub fn beta_csv_header() -> Vec<&'static str> {
    vec![
        "family",
        "boundary",
        "divisor",
        "log_discrepancy",
        "nef_threshold",
        "vanishing_threshold",
        "polarisation_square",
        "volume_integral",
        "beta",
        "beta_decimal",
        "certified",
        "consistent",
        "product_type",
        "piece_count",
        "verdict",
    ]
}

/// One CSV record for a divisor report; `verdict` is the pair verdict the
/// report contributed to (empty when reported standalone).
pub fn beta_csv_record(report: &BetaReport, verdict: &str) -> Vec<String> {
    vec![
        report.family.clone(),
        report.boundary.clone(),
        report.divisor.clone(),
        format_rat(&report.log_discrepancy),
        format_rat(&report.nef_threshold),
        format_rat(&report.vanishing_threshold),
        format_rat(&report.polarisation_square),
        format_rat(&report.volume_integral),
        format_rat(&report.beta),
        decimal_string(&report.beta, DECIMAL_DIGITS),
        report.certified.to_string(),
        report.consistent.to_string(),
        report.product_type.label().to_string(),
        report.piece_count.to_string(),
        verdict.to_string(),
    ]
}

/// CSV records for every report behind a pair verdict.
pub fn verdict_csv_records(verdict: &PairVerdict) -> Vec<Vec<String>> {
    verdict
        .reports
        .iter()
        .map(|report| beta_csv_record(report, verdict.verdict.label()))
        .collect()
}

/// Column names of the reproduction CSV table.
pub fn repro_csv_header() -> Vec<&'static str> {
    vec!["section", "case", "quantity", "expected", "computed", "matched"]
}

pub fn repro_row_record(row: &ReproRow) -> Vec<String> {
    vec![
        row.section.clone(),
        row.case_label.clone(),
        row.quantity.clone(),
        format_rat(&row.expected),
        format_rat(&row.computed),
        row.matched.to_string(),
    ]
}

pub fn repro_check_record(check: &ReproCheck) -> Vec<String> {
    vec![
        check.section.clone(),
        check.case_label.clone(),
        format!("check:{}", check.property),
        "true".to_string(),
        check.holds.to_string(),
        check.holds.to_string(),
    ]
}

/// Pretty JSON for any serialisable report.
pub fn to_json_pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialise to JSON")
}

#[cfg(test)]
mod tests {
    use super::*;
    use picard_lattice::rat;

    #[test]
    fn exact_values_round_trip() {
        let v = rat(-7, 12);
        let exact = ExactValue::of(&v);
        assert_eq!(exact.fraction, "-7/12");
        assert_eq!(exact.decimal, "-0.583333333333");
        assert_eq!(exact.to_rat().unwrap(), v);
    }

    #[test]
    fn reports_serialise_with_fraction_and_decimal() {
        let case = crate::divisors::generic_point(&rat(1, 2)).unwrap();
        let report = crate::beta::beta_report(&case).unwrap();
        let json = to_json_pretty(&report);
        assert!(json.contains("\"fraction\": \"1/3\""));
        let back: BetaReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
    }

    #[test]
    fn csv_records_align_with_the_header() {
        let case = crate::divisors::generic_point(&rat(1, 2)).unwrap();
        let report = crate::beta::beta_report(&case).unwrap();
        let record = beta_csv_record(&report, "consistent-with-k-polystable");
        assert_eq!(record.len(), beta_csv_header().len());
        assert_eq!(record[8], "1/3");
    }
}
