//! Divisor classes and the exact intersection pairing.

use crate::rational::{int, Rat};
use crate::surface::BaseSurface;
use num::{Signed, Zero};
use std::ops::{Add, Mul, Neg, Sub};

/// Basis of the Picard group of a base surface blown up in `blowups` points:
/// the base generators followed by the total transforms `e_1, …, e_m` of the
/// exceptional curves (`e_i² = −1`, mutually orthogonal, orthogonal to the
/// base part).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PicardBasis {
    pub surface: BaseSurface,
    pub blowups: usize,
}

/// A divisor class with exact rational coefficients over a [`PicardBasis`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorClass {
    pub coeffs: Vec<Rat>,
}

impl PicardBasis {
    pub fn new(surface: BaseSurface, blowups: usize) -> Self {
        PicardBasis { surface, blowups }
    }

    /// Total rank: base rank plus one per blowup.
    pub fn rank(&self) -> usize {
        self.surface.base_rank() + self.blowups
    }

    /// The zero class.
    pub fn zero(&self) -> DivisorClass {
        DivisorClass {
            coeffs: vec![int(0); self.rank()],
        }
    }

    /// Pullback (total transform) of a class on the base surface, given by
    /// integer coefficients over the base generators.
    pub fn class_from_base(&self, base: &[i64]) -> DivisorClass {
        assert_eq!(base.len(), self.surface.base_rank(), "base coefficient count");
        let mut coeffs = vec![int(0); self.rank()];
        for (i, c) in base.iter().enumerate() {
            coeffs[i] = int(*c);
        }
        DivisorClass { coeffs }
    }

    /// Same as [`Self::class_from_base`] with rational base coefficients.
    pub fn class_from_base_rat(&self, base: &[Rat]) -> DivisorClass {
        assert_eq!(base.len(), self.surface.base_rank(), "base coefficient count");
        let mut coeffs = vec![int(0); self.rank()];
        for (i, c) in base.iter().enumerate() {
            coeffs[i] = c.clone();
        }
        DivisorClass { coeffs }
    }

    /// Total transform `e_i` of the `i`-th exceptional curve, `1 ≤ i ≤ m`.
    pub fn exceptional(&self, i: usize) -> DivisorClass {
        assert!(
            (1..=self.blowups).contains(&i),
            "exceptional index {i} out of range 1..={}",
            self.blowups
        );
        let mut coeffs = vec![int(0); self.rank()];
        coeffs[self.surface.base_rank() + i - 1] = int(1);
        DivisorClass { coeffs }
    }

    /// Canonical class of the blown-up surface:
    /// pullback of the base canonical class plus every exceptional.
    pub fn canonical_class(&self) -> DivisorClass {
        let mut k = self.class_from_base(&self.surface.canonical_base_coeffs());
        for i in 1..=self.blowups {
            k = &k + &self.exceptional(i);
        }
        k
    }

    /// Exact intersection number of two classes.
    // The double index loop mirrors the bilinear form Σ aᵢ gᵢⱼ bⱼ.
    #[allow(clippy::needless_range_loop)]
    pub fn intersect(&self, a: &DivisorClass, b: &DivisorClass) -> Rat {
        let n = self.rank();
        assert_eq!(a.coeffs.len(), n, "class rank mismatch");
        assert_eq!(b.coeffs.len(), n, "class rank mismatch");
        let base = self.surface.base_gram();
        let br = self.surface.base_rank();
        let mut total = int(0);
        for i in 0..br {
            for j in 0..br {
                if base[i][j] != 0 {
                    total += &a.coeffs[i] * &b.coeffs[j] * int(base[i][j]);
                }
            }
        }
        for i in br..n {
            total -= &a.coeffs[i] * &b.coeffs[i];
        }
        total
    }

    /// Self-intersection shorthand.
    pub fn self_intersect(&self, a: &DivisorClass) -> Rat {
        self.intersect(a, a)
    }

    /// Gram matrix of a family of classes.
    pub fn gram(&self, v: &[DivisorClass]) -> Vec<Vec<Rat>> {
        v.iter()
            .map(|a| v.iter().map(|b| self.intersect(a, b)).collect())
            .collect()
    }

    /// Whether the span of `v` is negative definite, decided exactly by
    /// symmetric Gaussian elimination on the Gram matrix (all pivots must be
    /// negative; a zero or positive pivot, including the singular case,
    /// yields `false`).
    // Row p is read while row i is mutated, so the elimination must index.
    #[allow(clippy::needless_range_loop)]
    pub fn is_negative_definite(&self, v: &[DivisorClass]) -> bool {
        let mut g = self.gram(v);
        let n = g.len();
        for p in 0..n {
            if !g[p][p].is_negative() {
                return false;
            }
            for i in (p + 1)..n {
                let factor = &g[i][p] / &g[p][p];
                for j in p..n {
                    let sub = &factor * &g[p][j];
                    g[i][j] -= sub;
                }
            }
        }
        true
    }

    /// Signature `(positive, negative, zero)` of the intersection form
    /// restricted to the span of `v`, computed by exact symmetric reduction.
    pub fn signature(&self, v: &[DivisorClass]) -> (usize, usize, usize) {
        let g = self.gram(v);
        signature_of_gram(g)
    }
}

/// Signature of a symmetric rational matrix by congruence reduction.
///
/// When a diagonal pivot vanishes but its row is nonzero, the congruence
/// `v_p ← v_p + v_j` creates a nonzero pivot without changing the signature.
// Rows p and j are read while rows p and i are mutated; index loops only.
#[allow(clippy::needless_range_loop)]
fn signature_of_gram(mut g: Vec<Vec<Rat>>) -> (usize, usize, usize) {
    let n = g.len();
    let (mut pos, mut neg, mut zero) = (0usize, 0usize, 0usize);
    for p in 0..n {
        if g[p][p].is_zero() {
            if let Some(j) = ((p + 1)..n).find(|&j| !g[p][j].is_zero()) {
                // Congruence by v_p += v_j: row and column update.
                for k in 0..n {
                    let add = g[j][k].clone();
                    g[p][k] += add;
                }
                for row in g.iter_mut() {
                    let add = row[j].clone();
                    row[p] += add;
                }
            }
        }
        if g[p][p].is_zero() {
            zero += 1;
            continue;
        }
        if g[p][p].is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in (p + 1)..n {
            let factor = &g[i][p] / &g[p][p];
            if factor.is_zero() {
                continue;
            }
            for j in (p + 1)..n {
                let sub = &factor * &g[p][j];
                g[i][j] -= sub;
            }
            g[i][p] = int(0);
            g[p][i] = int(0);
        }
    }
    (pos, neg, zero)
}

impl DivisorClass {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rat::is_zero)
    }

    pub fn scale(&self, s: &Rat) -> DivisorClass {
        DivisorClass {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }
}

impl Add for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        assert_eq!(self.coeffs.len(), rhs.coeffs.len(), "class rank mismatch");
        DivisorClass {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        assert_eq!(self.coeffs.len(), rhs.coeffs.len(), "class rank mismatch");
        DivisorClass {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        DivisorClass {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul<&Rat> for &DivisorClass {
    type Output = DivisorClass;
    fn mul(self, rhs: &Rat) -> DivisorClass {
        self.scale(rhs)
    }
}
