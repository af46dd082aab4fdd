//! Exact two-dimensional toric geometry used as an independent oracle.
//!
//! Three ingredients live here:
//!
//! * iterated star subdivisions of a smooth fan corner toward a primitive
//!   lattice direction, traced step by step ([`star_subdivision_trace`]);
//! * intersection numbers on the subdivided surface read off from lattice
//!   determinants ([`Fan2d`]);
//! * exact moment-polygon computations ([`LatticePolygon`]): half-plane
//!   clipping, areas, lattice-point counts, and the induced volume oracle
//!   for monomial valuations ([`monomial_volume_oracle`]).
//!
//! All arithmetic is exact (integers and arbitrary-precision rationals).

mod fan;
mod polygon;

pub use fan::{star_subdivision_trace, Fan2d, StarSubdivisionTrace, SubdivisionError, ToricBase};
pub use polygon::{
    lattice_point_count, moment_square, moment_triangle, monomial_volume_oracle, LatticePolygon,
    OracleError,
};
