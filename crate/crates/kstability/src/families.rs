//! The surface pairs under study: a smooth rational surface together with a
//! fractional boundary divisor.  Each family records the legal coefficient
//! range (klt boundary, ample adjusted anticanonical class) and the default
//! sampling grids used by the reproduction and sweep drivers.

use picard_lattice::{format_rat, int, rat, Rat};
use num::{One, Zero};
use thiserror::Error;

/// A surface with a rational boundary divisor.  All boundary coefficients
/// must lie in `[0, 1)` and the adjusted anticanonical class
/// `−(K + boundary)` must be ample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Pair {
    /// Projective plane with boundary `delta · C` for a smooth conic `C`.
    PlaneConic { delta: Rat },
    /// Smooth quadric surface with boundary `delta · C` for the diagonal
    /// `C`, a smooth curve of bidegree `(1, 1)`.
    QuadricDiagonal { delta: Rat },
    /// Hirzebruch surface `F_m` with boundary
    /// `section · e + fibre · f`, where `e` is the section of
    /// self-intersection `−m` and `f` a fibre of the ruling.
    Hirzebruch { m: u32, section: Rat, fibre: Rat },
    /// `F_1` with boundary `delta · e∞` on the section of
    /// self-intersection `+1` (disjoint from the negative section).
    HirzebruchPositiveSection { delta: Rat },
    /// Projective plane with boundary `first · l1 + second · l2` for two
    /// distinct lines.
    TwoLines { first: Rat, second: Rat },
}

/// Rejection reasons for a pair.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum FamilyError {
    #[error("boundary coefficient of {which} is {value}; it must lie in [0, 1)")]
    CoefficientOutOfRange { which: String, value: String },
    #[error("the adjusted anticanonical class is not ample: {detail}")]
    NotAmple { detail: String },
}

fn check_coefficient(which: &str, value: &Rat) -> Result<(), FamilyError> {
    if value < &Rat::zero() || value >= &Rat::one() {
        return Err(FamilyError::CoefficientOutOfRange {
            which: which.to_string(),
            value: format_rat(value),
        });
    }
    Ok(())
}

impl Pair {
    /// Checks coefficient ranges and ampleness of `−(K + boundary)`.
    pub fn validate(&self) -> Result<(), FamilyError> {
        match self {
            Pair::PlaneConic { delta } => check_coefficient("the conic", delta),
            Pair::QuadricDiagonal { delta } => check_coefficient("the diagonal", delta),
            Pair::Hirzebruch { m, section, fibre } => {
                check_coefficient("the negative section", section)?;
                check_coefficient("the fibre", fibre)?;
                // −(K + boundary) = (2 − section)·e + (m + 2 − fibre)·f is
                // ample iff its fibre coefficient exceeds m times its
                // section coefficient.
                let t = int(2) - section;
                let c = int(i64::from(*m) + 2) - fibre;
                if c <= int(i64::from(*m)) * &t {
                    return Err(FamilyError::NotAmple {
                        detail: format!(
                            "on F{m} the class {}·e + {}·f is not ample",
                            format_rat(&t),
                            format_rat(&c)
                        ),
                    });
                }
                Ok(())
            }
            Pair::HirzebruchPositiveSection { delta } => {
                check_coefficient("the positive section", delta)
            }
            Pair::TwoLines { first, second } => {
                check_coefficient("the first line", first)?;
                check_coefficient("the second line", second)
            }
        }
    }

    /// Stable machine-friendly family key.
    pub fn family_key(&self) -> String {
        match self {
            Pair::PlaneConic { .. } => "plane-conic".to_string(),
            Pair::QuadricDiagonal { .. } => "quadric-diagonal".to_string(),
            Pair::Hirzebruch { m, .. } => format!("hirzebruch-{m}"),
            Pair::HirzebruchPositiveSection { .. } => "f1-positive-section".to_string(),
            Pair::TwoLines { .. } => "two-lines".to_string(),
        }
    }

    /// Compact boundary-coefficient label, e.g. `delta=1/2` or
    /// `d1=1/2,d2=1/4`.
    pub fn boundary_label(&self) -> String {
        match self {
            Pair::PlaneConic { delta }
            | Pair::QuadricDiagonal { delta }
            | Pair::HirzebruchPositiveSection { delta } => {
                format!("delta={}", format_rat(delta))
            }
            Pair::Hirzebruch { section, fibre, .. } => {
                format!("d1={},d2={}", format_rat(section), format_rat(fibre))
            }
            Pair::TwoLines { first, second } => {
                format!("d1={},d2={}", format_rat(first), format_rat(second))
            }
        }
    }

    /// Human-readable description.
    pub fn describe(&self) -> String {
        match self {
            Pair::PlaneConic { delta } => {
                format!("plane with boundary ({})·conic", format_rat(delta))
            }
            Pair::QuadricDiagonal { delta } => {
                format!("quadric with boundary ({})·diagonal", format_rat(delta))
            }
            Pair::Hirzebruch { m, section, fibre } => format!(
                "F{m} with boundary ({})·negative-section + ({})·fibre",
                format_rat(section),
                format_rat(fibre)
            ),
            Pair::HirzebruchPositiveSection { delta } => {
                format!("F1 with boundary ({})·positive-section", format_rat(delta))
            }
            Pair::TwoLines { first, second } => format!(
                "plane with boundary ({})·line1 + ({})·line2",
                format_rat(first),
                format_rat(second)
            ),
        }
    }
}

/// `{from/den, …, to/den}` as exact rationals.
pub fn coefficient_grid(from: i64, to: i64, den: i64) -> Vec<Rat> {
    (from..=to).map(|k| rat(k, den)).collect()
}

/// Default conic coefficients for the plane family: `0, 1/8, …, 3/4`.
/// The upper end is the largest coefficient with `beta ≥ 0` for every
/// tested divisor.
pub fn plane_default_grid() -> Vec<Rat> {
    coefficient_grid(0, 6, 8)
}

/// Default diagonal coefficients for the quadric family: `0, 1/8, …, 1/2`.
pub fn quadric_default_grid() -> Vec<Rat> {
    coefficient_grid(0, 4, 8)
}

/// Default coefficients for families that stay well defined on all of
/// `[0, 1)`: `0, 1/8, …, 7/8`.
pub fn unit_default_grid() -> Vec<Rat> {
    coefficient_grid(0, 7, 8)
}

/// All valid Hirzebruch pairs on `F_m` with both coefficients in the given
/// grid.  For `m = 0` the pair with empty boundary is skipped: it has extra
/// symmetry exchanging the rulings and no destabilising divisor.
pub fn hirzebruch_pairs(m: u32, grid: &[Rat]) -> Vec<Pair> {
    let mut out = Vec::new();
    for d1 in grid {
        for d2 in grid {
            if m == 0 && d1.is_zero() && d2.is_zero() {
                continue;
            }
            let pair = Pair::Hirzebruch {
                m,
                section: d1.clone(),
                fibre: d2.clone(),
            };
            if pair.validate().is_ok() {
                out.push(pair);
            }
        }
    }
    out
}

/// All two-line pairs with coefficients in the grid, skipping the empty
/// boundary (the bare plane has no destabilising line).
pub fn two_line_pairs(grid: &[Rat]) -> Vec<Pair> {
    let mut out = Vec::new();
    for d1 in grid {
        for d2 in grid {
            if d1.is_zero() && d2.is_zero() {
                continue;
            }
            let pair = Pair::TwoLines {
                first: d1.clone(),
                second: d2.clone(),
            };
            if pair.validate().is_ok() {
                out.push(pair);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_valid_coefficients() {
        assert!(Pair::PlaneConic { delta: rat(3, 4) }.validate().is_ok());
        assert!(Pair::QuadricDiagonal { delta: rat(1, 2) }.validate().is_ok());
        assert!(Pair::TwoLines {
            first: rat(1, 8),
            second: rat(7, 8)
        }
        .validate()
        .is_ok());
    }

    #[test]
    fn rejects_coefficient_one() {
        let err = Pair::PlaneConic { delta: int(1) }.validate().unwrap_err();
        assert!(matches!(err, FamilyError::CoefficientOutOfRange { .. }));
    }

    #[test]
    fn rejects_negative_coefficient() {
        assert!(Pair::QuadricDiagonal { delta: rat(-1, 8) }.validate().is_err());
    }

    #[test]
    fn hirzebruch_ampleness_boundary() {
        // On F3 with section coefficient 1/2 the fibre bound is
        // 2 − d2 > 3·(3/2), i.e. never; with section coefficient 2/3 it is
        // 3·(4/3) = 4 > 2 − d2, also never; large m needs section ≈ 1.
        let bad = Pair::Hirzebruch {
            m: 3,
            section: rat(1, 2),
            fibre: rat(1, 2),
        };
        assert!(matches!(bad.validate(), Err(FamilyError::NotAmple { .. })));
        let good = Pair::Hirzebruch {
            m: 1,
            section: Rat::zero(),
            fibre: Rat::zero(),
        };
        assert!(good.validate().is_ok());
    }

    #[test]
    fn hirzebruch_grid_respects_ampleness() {
        let grid = unit_default_grid();
        for pair in hirzebruch_pairs(4, &grid) {
            pair.validate().unwrap();
            if let Pair::Hirzebruch { section, fibre, .. } = &pair {
                // ampleness on F4: d2 < 4·d1 − 2.
                assert!(fibre < &(int(4) * section - int(2)));
            }
        }
        assert!(!hirzebruch_pairs(4, &grid).is_empty());
        // Very twisted surfaces admit no klt pair with ample adjusted class
        // on the eighth grid.
        assert!(hirzebruch_pairs(16, &grid).is_empty());
    }

    #[test]
    fn two_line_grid_skips_empty_boundary() {
        let grid = coefficient_grid(0, 1, 8);
        let pairs = two_line_pairs(&grid);
        assert_eq!(pairs.len(), 3);
    }

    #[test]
    fn labels_are_stable() {
        let p = Pair::Hirzebruch {
            m: 2,
            section: rat(1, 2),
            fibre: rat(1, 4),
        };
        assert_eq!(p.family_key(), "hirzebruch-2");
        assert_eq!(p.boundary_label(), "d1=1/2,d2=1/4");
        assert!(p.describe().contains("negative-section"));
    }
}
