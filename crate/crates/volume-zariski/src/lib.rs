//! Exact Zariski decompositions and piecewise-quadratic volume functions.
//!
//! Given a polarised blown-up surface, a sweep direction `w`, and a
//! catalog of candidate negative curves, this crate walks
//! `D(x) = L − x·w` from `x = 0` upward, maintaining the exact
//! positive/negative decomposition on each maximal interval of constant
//! support. The output is the volume of `D(x)` as a piecewise-quadratic
//! function with rational breakpoints, the nef threshold (end of the
//! empty-support piece), and the vanishing threshold.
//!
//! Everything is computed in arbitrary-precision rational arithmetic; no
//! floating point is used anywhere. Concavity of `√vol` can be checked
//! via exact slack certificates, and the vanishing threshold can be
//! certified by decomposing the boundary class over a cone-generating
//! catalog with an exact feasibility solver.

pub mod analysis;
pub mod input;
pub mod simplex;
pub mod sweep;

pub use analysis::{certify, concavity_slacks, default_grid, Certification, ConcavityReport};
pub use input::{
    riemann_roch_sections, sweep_input_from_chain, CatalogError, CurveCatalog, CurveEntry,
    SweepInput,
};
pub use simplex::nonnegative_combination;
pub use sweep::{volume_sweep, SweepError, VolumeFunction, VolumePiece};
