//! Exact stability invariants for divisors over log del Pezzo surface
//! pairs.
//!
//! For a polarised pair — the plane with a conic, the quadric with its
//! diagonal, a Hirzebruch surface with sections and fibres, or the plane
//! with two lines — and a divisorial valuation given either by a curve on
//! the surface or by a chain of point blowups, this crate computes, in
//! arbitrary-precision rational arithmetic throughout:
//!
//! * the log discrepancy of the valuation with respect to the pair,
//! * the volume of `L − x·F` as an exact piecewise-quadratic function,
//!   with its nef and vanishing thresholds,
//! * the stability slope `beta = 1 − S/A` where `S` is the normalised
//!   volume integral, cross-checked against closed forms where recorded,
//! * an effectivity certificate making the vanishing threshold exact
//!   whenever the curve catalog generates the effective cone, and
//! * pair-level verdicts obtained by interpreting the signs of the slopes
//!   of a destabilising test suite.
//!
//! The [`reproduce`] module replays the full catalogue of recorded values —
//! slopes, thresholds and verdicts across entire coefficient grids — and
//! reports every comparison.

pub mod beta;
pub mod classify;
pub mod divisors;
pub mod families;
pub mod formulas;
pub mod report;
pub mod reproduce;

pub use beta::{
    beta_report, beta_report_strict, tau_bound_check, BetaError, BetaReport, CertificateEntry,
    ProductTypeVerdict,
};
pub use classify::{classify_pair, test_suite, ClassifyError, PairVerdict, Verdict};
pub use divisors::{monomial_plan, BuildError, DivisorCase, MonomialPlan, MonomialStep};
pub use families::{FamilyError, Pair};
pub use formulas::{ConicContact, FormulaError};
pub use reproduce::{reproduce, ReproCheck, ReproRow, Reproduction, ReproduceError};
