//! Serialisable description of a chain of infinitely-near point blowups
//! together with the curves and boundary data it interacts with.

use picard_lattice::Rat;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Base surface of a chain description.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SurfaceId {
    /// The projective plane; base classes are `[d]` (degree).
    Plane,
    /// The smooth quadric; base classes are `[d1, d2]` (bidegree).
    Quadric,
    /// A Hirzebruch surface (accepted by the parser, rejected when building
    /// a chain: chains are only supported over the plane and the quadric).
    Hirzebruch { m: u32 },
}

/// A curve on the base surface, identified by a free-form id.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSpec {
    pub id: String,
    /// Class in the base surface's Picard basis (see [`SurfaceId`]).
    pub base_class: Vec<i64>,
}

/// One boundary summand `coefficient · curve`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundaryEntry {
    pub curve: String,
    /// Rational coefficient in `[0, 1)`, written as `"p/q"` or an integer.
    #[serde(with = "rat_string")]
    pub coefficient: Rat,
}

/// One blown-up point. The `i`-th entry (1-based) describes a point of the
/// exceptional curve of step `i−1`; the first entry describes a point of the
/// base surface.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct PointSpec {
    /// For `i ≥ 3`: an earlier step `q ∈ [1, i−2]` whose exceptional curve
    /// also passes through this point (a satellite point). `None` means the
    /// point is free on the previous exceptional curve.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub on_exceptional: Option<usize>,
    /// Multiplicity of the strict transform of each listed curve at this
    /// point. Curves not listed have multiplicity `0`; listing `0` is an
    /// error.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub multiplicities: BTreeMap<String, u32>,
}

/// Complete input for [`crate::BlowupChain::build`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainDescription {
    pub surface: SurfaceId,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub curves: Vec<CurveSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub boundary: Vec<BoundaryEntry>,
    pub points: Vec<PointSpec>,
}

/// Serde adapter storing exact rationals as `"p/q"` strings.
pub mod rat_string {
    use picard_lattice::{format_rat, parse_rat, Rat};
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Rat, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&format_rat(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Rat, D::Error> {
        let raw = String::deserialize(de)?;
        parse_rat(&raw).map_err(D::Error::custom)
    }
}
