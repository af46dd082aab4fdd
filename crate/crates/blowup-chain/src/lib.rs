//! Chains of infinitely-near point blowups over the plane or the quadric,
//! with exact intersection-theoretic validation.
//!
//! A [`ChainDescription`] lists the blown-up points (each one free on the
//! previous exceptional curve or sitting on one earlier exceptional curve),
//! the curves whose strict transforms are tracked, and an optional boundary
//! divisor. [`BlowupChain::build`] checks the data against multiplicity
//! budgets — any two objects through a point must still intersect enough to
//! meet there — and then exposes the strict and dual classes of the
//! exceptional curves, vanishing orders and log discrepancies of the final
//! (distinguished) exceptional divisor, all in exact rational arithmetic.

mod chain;
mod description;

pub use chain::{BlowupChain, ChainError};
pub use description::{rat_string, BoundaryEntry, ChainDescription, CurveSpec, PointSpec, SurfaceId};
