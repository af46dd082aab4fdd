//! The exact Zariski-decomposition sweep: walks `D(x) = L − x·w` from
//! `x = 0` to the vanishing threshold, maintaining the positive/negative
//! decomposition piecewise-affinely and producing the piecewise-quadratic
//! volume function on the way.

use crate::input::SweepInput;
use num::{Signed, Zero};
use picard_lattice::{format_rat, int, sqrt_exact, DivisorClass, PicardBasis, Rat};
use thiserror::Error;

/// Errors of the sweep.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum SweepError {
    #[error("polarisation has non-positive self-intersection {0}")]
    PolarisationNotPositive(String),
    #[error("polarisation meets `{label}` negatively ({value}); it must be nef")]
    PolarisationNotNef { label: String, value: String },
    #[error(
        "the volume vanishes at an irrational point of ({lower}, {upper}]; \
         the curve catalog cannot express this threshold in exact arithmetic"
    )]
    IrrationalThreshold { lower: String, upper: String },
    #[error("negative-part support {labels:?} is not negative definite; the catalog is inconsistent")]
    SupportNotNegativeDefinite { labels: Vec<String> },
    #[error("sweep stalled before reaching the vanishing threshold")]
    NoProgress,
}

/// One maximal interval on which the decomposition has constant support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VolumePiece {
    pub start: Rat,
    pub end: Rat,
    /// Catalog indices of the negative-part support, ascending.
    pub support: Vec<usize>,
    /// Volume on the piece: `coeffs[0] + coeffs[1]·x + coeffs[2]·x²`.
    pub coeffs: [Rat; 3],
    /// Positive part `P(x) = positive_const + x·positive_slope`.
    pub positive_const: DivisorClass,
    pub positive_slope: DivisorClass,
    /// Negative-part coefficients aligned with `support`:
    /// `c_i(x) = negative_const[i] + x·negative_slope[i]`.
    pub negative_const: Vec<Rat>,
    pub negative_slope: Vec<Rat>,
}

impl VolumePiece {
    pub fn value(&self, x: &Rat) -> Rat {
        &self.coeffs[0] + &self.coeffs[1] * x + &self.coeffs[2] * x * x
    }

    pub fn derivative(&self, x: &Rat) -> Rat {
        &self.coeffs[1] + &self.coeffs[2] * x * int(2)
    }

    fn integral(&self) -> Rat {
        let [q0, q1, q2] = &self.coeffs;
        let (s, e) = (&self.start, &self.end);
        q0 * (e - s)
            + q1 * (e * e - s * s) / int(2)
            + q2 * (e * e * e - s * s * s) / int(3)
    }
}

/// The volume of `L − x·w` as an exact piecewise-quadratic function on
/// `[0, τ]`, together with the thresholds found by the sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VolumeFunction {
    pieces: Vec<VolumePiece>,
    labels: Vec<String>,
    eps: Rat,
    tau: Rat,
    l_squared: Rat,
}

impl VolumeFunction {
    pub fn pieces(&self) -> &[VolumePiece] {
        &self.pieces
    }

    /// Catalog labels the piece supports refer to.
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Largest `x` with `L − x·w` nef: the end of the empty-support piece.
    pub fn nef_threshold(&self) -> &Rat {
        &self.eps
    }

    /// Smallest `x` with zero volume.
    pub fn vanishing_threshold(&self) -> &Rat {
        &self.tau
    }

    /// `L²`, the volume at `x = 0`.
    pub fn polarisation_square(&self) -> &Rat {
        &self.l_squared
    }

    pub fn is_single_piece(&self) -> bool {
        self.pieces.len() == 1
    }

    /// Index of the piece containing `x` (the earlier piece at breakpoints).
    /// `None` beyond the vanishing threshold.
    pub fn piece_index(&self, x: &Rat) -> Option<usize> {
        assert!(!x.is_negative(), "volume is defined for x ≥ 0");
        self.pieces.iter().position(|p| x <= &p.end)
    }

    /// Exact volume at `x ≥ 0` (zero beyond the vanishing threshold).
    pub fn eval(&self, x: &Rat) -> Rat {
        match self.piece_index(x) {
            Some(i) => self.pieces[i].value(x),
            None => Rat::zero(),
        }
    }

    /// One-sided derivative from the left at `x ∈ (0, τ]`.
    pub fn left_derivative(&self, x: &Rat) -> Rat {
        assert!(x.is_positive(), "left derivative needs x > 0");
        match self.pieces.iter().position(|p| x <= &p.end) {
            Some(i) => self.pieces[i].derivative(x),
            None => Rat::zero(),
        }
    }

    /// `∫₀^τ vol dx`, exactly.
    pub fn integral(&self) -> Rat {
        self.pieces.iter().map(VolumePiece::integral).sum()
    }

    /// Quadratic coefficient of the final piece (the shape of the volume
    /// just before it vanishes).
    pub fn tail_coefficient(&self) -> &Rat {
        &self.pieces.last().expect("at least one piece").coeffs[2]
    }

    /// Labels of the negative-part support on one piece.
    pub fn support_labels(&self, piece: usize) -> Vec<&str> {
        self.pieces[piece]
            .support
            .iter()
            .map(|&i| self.labels[i].as_str())
            .collect()
    }

    /// Negative part at `x` as `(label, coefficient)` pairs with nonzero
    /// coefficients.
    pub fn negative_part_at(&self, x: &Rat) -> Vec<(String, Rat)> {
        let Some(i) = self.piece_index(x) else {
            return Vec::new();
        };
        let piece = &self.pieces[i];
        piece
            .support
            .iter()
            .enumerate()
            .filter_map(|(k, &ci)| {
                let value = &piece.negative_const[k] + &piece.negative_slope[k] * x;
                (!value.is_zero()).then(|| (self.labels[ci].clone(), value))
            })
            .collect()
    }
}

/// Affine data of a fixed-support piece.
struct PieceData {
    neg_const: Vec<Rat>,
    neg_slope: Vec<Rat>,
    pos_const: DivisorClass,
    pos_slope: DivisorClass,
    coeffs: [Rat; 3],
}

/// Solves the orthogonality system for the given support and returns the
/// affine decomposition data.
fn solve_support(input: &SweepInput, support: &[usize]) -> Result<PieceData, SweepError> {
    let basis = &input.basis;
    let classes: Vec<&DivisorClass> = support
        .iter()
        .map(|&i| &input.catalog.entries[i].class)
        .collect();
    let owned: Vec<DivisorClass> = classes.iter().map(|&c| c.clone()).collect();
    if !owned.is_empty() && !basis.is_negative_definite(&owned) {
        return Err(SweepError::SupportNotNegativeDefinite {
            labels: support
                .iter()
                .map(|&i| input.catalog.entries[i].label.clone())
                .collect(),
        });
    }
    let k = support.len();
    let gram: Vec<Vec<Rat>> = (0..k)
        .map(|i| (0..k).map(|j| basis.intersect(classes[i], classes[j])).collect())
        .collect();
    let rhs0: Vec<Rat> = (0..k)
        .map(|i| basis.intersect(&input.polarisation, classes[i]))
        .collect();
    let rhs1: Vec<Rat> = (0..k)
        .map(|i| -basis.intersect(&input.direction, classes[i]))
        .collect();
    let neg_const = solve_linear(&gram, &rhs0);
    let neg_slope = solve_linear(&gram, &rhs1);
    let mut pos_const = input.polarisation.clone();
    let mut pos_slope = -&input.direction;
    for i in 0..k {
        pos_const = &pos_const - &classes[i].scale(&neg_const[i]);
        pos_slope = &pos_slope - &classes[i].scale(&neg_slope[i]);
    }
    let q0 = basis.self_intersect(&pos_const);
    let q1 = basis.intersect(&pos_const, &pos_slope) * int(2);
    let q2 = basis.self_intersect(&pos_slope);
    Ok(PieceData {
        neg_const,
        neg_slope,
        pos_const,
        pos_slope,
        coeffs: [q0, q1, q2],
    })
}

/// Gaussian elimination for a small nonsingular exact system.
// Row `col` is read while row `r` is mutated, so elimination indexes rows.
#[allow(clippy::needless_range_loop)]
fn solve_linear(matrix: &[Vec<Rat>], rhs: &[Rat]) -> Vec<Rat> {
    let n = rhs.len();
    let mut a: Vec<Vec<Rat>> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, r)| {
            let mut row = row.clone();
            row.push(r.clone());
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .expect("negative definite Gram matrices are nonsingular");
        a.swap(col, pivot);
        let p = a[col][col].clone();
        for v in a[col].iter_mut() {
            *v /= &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for c in col..=n {
                    let delta = &a[col][c] * &factor;
                    a[r][c] -= delta;
                }
            }
        }
    }
    a.into_iter().map(|row| row[n].clone()).collect()
}

/// Smallest root of the affine function `v0 + v1·x` strictly beyond `x0`,
/// provided the function is decreasing.
fn decreasing_zero_after(v0: &Rat, v1: &Rat, x0: &Rat) -> Option<Rat> {
    if v1.is_negative() {
        let root = -v0 / v1;
        (root > *x0).then_some(root)
    } else {
        None
    }
}

/// Finds the smallest zero of the quadratic `q` in `(x0, limit]` (or in
/// `(x0, ∞)` when `limit` is `None`), knowing `q(x0) > 0`. Errors when the
/// zero exists but is irrational.
fn quadratic_zero_within(
    q: &[Rat; 3],
    x0: &Rat,
    limit: Option<&Rat>,
) -> Result<Option<Rat>, SweepError> {
    let [q0, q1, q2] = q;
    let eval = |x: &Rat| q0 + q1 * x + q2 * x * x;
    let irrational = |hint: &Rat| SweepError::IrrationalThreshold {
        lower: format_rat(x0),
        upper: format_rat(hint),
    };

    if q2.is_zero() {
        if let Some(root) = decreasing_zero_after(q0, q1, x0) {
            if limit.is_none_or(|l| &root <= l) {
                return Ok(Some(root));
            }
        }
        return Ok(None);
    }
    let disc = q1 * q1 - int(4) * q0 * q2;
    if disc.is_negative() {
        return Ok(None);
    }
    // Decide root existence in the window without taking square roots.
    let vertex = -q1 / (int(2) * q2);
    let exists = match limit {
        Some(l) => {
            let ql = eval(l);
            !ql.is_positive()
                || (q2.is_positive()
                    && vertex > *x0
                    && vertex < *l
                    && !eval(&vertex).is_positive())
        }
        None => q2.is_negative() || (vertex > *x0 && !eval(&vertex).is_positive()),
    };
    if !exists {
        return Ok(None);
    }
    let hint = limit.cloned().unwrap_or_else(|| vertex.clone());
    let s = sqrt_exact(&disc).ok_or_else(|| irrational(&hint))?;
    let two_q2 = int(2) * q2;
    let mut roots = [(-q1 + &s) / &two_q2, (-q1 - &s) / &two_q2];
    roots.sort();
    for r in roots {
        if r > *x0 && limit.is_none_or(|l| &r <= l) {
            return Ok(Some(r));
        }
    }
    // A root was detected in the window, so one of the two must qualify.
    unreachable!("window analysis and explicit roots disagree")
}

/// Stabilises the support at event point `xe`: removes members whose
/// coefficient turns negative and adds catalog curves the positive part
/// starts to meet negatively, until the configuration is consistent.
fn update_support(
    input: &SweepInput,
    mut support: Vec<usize>,
    xe: &Rat,
    guard: usize,
) -> Result<Vec<usize>, SweepError> {
    for _ in 0..guard {
        let data = solve_support(input, &support)?;
        let keep: Vec<bool> = support
            .iter()
            .enumerate()
            .map(|(k, _)| {
                let value = &data.neg_const[k] + &data.neg_slope[k] * xe;
                !(value.is_negative() || (value.is_zero() && data.neg_slope[k].is_negative()))
            })
            .collect();
        if keep.contains(&false) {
            let mut it = keep.iter();
            support.retain(|_| *it.next().expect("aligned"));
            continue;
        }
        let basis = &input.basis;
        let mut added = false;
        for (j, entry) in input.catalog.entries.iter().enumerate() {
            if support.contains(&j) {
                continue;
            }
            let v0 = basis.intersect(&data.pos_const, &entry.class);
            let v1 = basis.intersect(&data.pos_slope, &entry.class);
            let value = &v0 + &v1 * xe;
            if value.is_negative() || (value.is_zero() && v1.is_negative()) {
                support.push(j);
                added = true;
            }
        }
        if !added {
            support.sort_unstable();
            return Ok(support);
        }
        support.sort_unstable();
    }
    Err(SweepError::NoProgress)
}

/// Runs the sweep and returns the exact volume function of `L − x·w`.
pub fn volume_sweep(input: &SweepInput) -> Result<VolumeFunction, SweepError> {
    let basis: &PicardBasis = &input.basis;
    let l_squared = basis.self_intersect(&input.polarisation);
    if !l_squared.is_positive() {
        return Err(SweepError::PolarisationNotPositive(format_rat(&l_squared)));
    }
    for entry in &input.catalog.entries {
        let v = basis.intersect(&input.polarisation, &entry.class);
        if v.is_negative() {
            return Err(SweepError::PolarisationNotNef {
                label: entry.label.clone(),
                value: format_rat(&v),
            });
        }
    }
    let guard = 4 * input.catalog.entries.len() + 16;
    let mut pieces: Vec<VolumePiece> = Vec::new();
    let mut x0 = Rat::zero();
    // The support can be nonempty straight away if L is nef but touches a
    // catalog curve that the direction pushes negative.
    let mut support = update_support(input, Vec::new(), &x0, guard)?;
    for _ in 0..guard {
        let data = solve_support(input, &support)?;
        // Next support event: a curve value or a support coefficient
        // decreasing through zero.
        let mut next: Option<Rat> = None;
        let mut consider = |candidate: Option<Rat>| {
            if let Some(c) = candidate {
                if next.as_ref().is_none_or(|n| c < *n) {
                    next = Some(c);
                }
            }
        };
        for (j, entry) in input.catalog.entries.iter().enumerate() {
            if support.contains(&j) {
                continue;
            }
            let v0 = basis.intersect(&data.pos_const, &entry.class);
            let v1 = basis.intersect(&data.pos_slope, &entry.class);
            consider(decreasing_zero_after(&v0, &v1, &x0));
        }
        for k in 0..support.len() {
            consider(decreasing_zero_after(
                &data.neg_const[k],
                &data.neg_slope[k],
                &x0,
            ));
        }
        // The vanishing threshold takes precedence over any support event
        // at the same point: the sweep ends where the volume does.
        if let Some(tau) = quadratic_zero_within(&data.coeffs, &x0, next.as_ref())? {
            pieces.push(VolumePiece {
                start: x0,
                end: tau.clone(),
                support: support.clone(),
                coeffs: data.coeffs,
                positive_const: data.pos_const,
                positive_slope: data.pos_slope,
                negative_const: data.neg_const,
                negative_slope: data.neg_slope,
            });
            let eps = pieces
                .iter()
                .find(|p| !p.support.is_empty())
                .map(|p| p.start.clone())
                .unwrap_or_else(|| tau.clone());
            return Ok(VolumeFunction {
                labels: input.catalog.labels(),
                pieces,
                eps,
                tau,
                l_squared,
            });
        }
        let Some(xe) = next else {
            return Err(SweepError::NoProgress);
        };
        pieces.push(VolumePiece {
            start: x0.clone(),
            end: xe.clone(),
            support: support.clone(),
            coeffs: data.coeffs,
            positive_const: data.pos_const,
            positive_slope: data.pos_slope,
            negative_const: data.neg_const,
            negative_slope: data.neg_slope,
        });
        support = update_support(input, support, &xe, guard)?;
        x0 = xe;
    }
    Err(SweepError::NoProgress)
}
