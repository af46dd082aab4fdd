//! Exact intersection theory on rational surfaces and their iterated point
//! blowups.
//!
//! Everything here is arbitrary-precision rational arithmetic: divisor classes
//! are vectors of [`Rat`] coefficients over a fixed basis (the base surface's
//! Picard generators followed by the total transforms of the exceptional
//! curves of a chain of point blowups), and the intersection form is the
//! corresponding diagonal-block pairing. No floating point is used anywhere.

mod class;
mod rational;
mod surface;

pub use class::{DivisorClass, PicardBasis};
pub use rational::{
    decimal_string, format_rat, int, parse_rat, rat, sqrt_exact, ParseRatError, Rat,
};
pub use surface::BaseSurface;
