//! The rational surfaces whose blowups carry all computations here.

use std::fmt;

/// A minimal rational surface serving as the base of a blowup chain (or as
/// the ambient surface itself when nothing is blown up).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BaseSurface {
    /// The projective plane; Picard group generated by the line class `H`.
    ProjectivePlane,
    /// The smooth quadric (product of two lines); Picard group generated by
    /// the two ruling classes `f1`, `f2` with `f1² = f2² = 0`, `f1·f2 = 1`.
    QuadricSurface,
    /// The Hirzebruch surface of degree `m`; Picard group generated by the
    /// negative section `e` (`e² = −m`) and a fiber `l` (`l² = 0`, `e·l = 1`).
    Hirzebruch(u32),
}

impl BaseSurface {
    /// Rank of the Picard group of the base surface.
    pub fn base_rank(&self) -> usize {
        match self {
            BaseSurface::ProjectivePlane => 1,
            BaseSurface::QuadricSurface | BaseSurface::Hirzebruch(_) => 2,
        }
    }

    /// Intersection matrix of the base Picard generators.
    pub fn base_gram(&self) -> Vec<Vec<i64>> {
        match self {
            BaseSurface::ProjectivePlane => vec![vec![1]],
            BaseSurface::QuadricSurface => vec![vec![0, 1], vec![1, 0]],
            BaseSurface::Hirzebruch(m) => vec![vec![-(*m as i64), 1], vec![1, 0]],
        }
    }

    /// Coefficients of the canonical class over the base generators.
    pub fn canonical_base_coeffs(&self) -> Vec<i64> {
        match self {
            BaseSurface::ProjectivePlane => vec![-3],
            BaseSurface::QuadricSurface => vec![-2, -2],
            BaseSurface::Hirzebruch(m) => vec![-2, -((*m as i64) + 2)],
        }
    }

    /// Human-readable labels of the base generators, in basis order.
    pub fn base_labels(&self) -> Vec<&'static str> {
        match self {
            BaseSurface::ProjectivePlane => vec!["H"],
            BaseSurface::QuadricSurface => vec!["f1", "f2"],
            BaseSurface::Hirzebruch(_) => vec!["e", "l"],
        }
    }
}

impl fmt::Display for BaseSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseSurface::ProjectivePlane => write!(f, "projective plane"),
            BaseSurface::QuadricSurface => write!(f, "quadric surface"),
            BaseSurface::Hirzebruch(m) => write!(f, "Hirzebruch surface F{m}"),
        }
    }
}
