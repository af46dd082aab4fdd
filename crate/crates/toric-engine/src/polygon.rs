//! Exact convex lattice polygons: clipping, area, lattice points.

use num::{BigInt, Signed, Zero};
use picard_lattice::{int, Rat};
use thiserror::Error;

/// A convex polygon with exact rational vertices in counterclockwise order.
/// May be degenerate (fewer than three vertices) after clipping.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePolygon {
    vertices: Vec<(Rat, Rat)>,
}

/// Domain errors of the volume oracle.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("volume oracle is only defined for x ≥ 0 (got {0})")]
    NegativeX(String),
}

impl LatticePolygon {
    /// Builds a polygon from counterclockwise vertices. Panics if fewer than
    /// three vertices are supplied or the orientation check fails; use the
    /// clipping methods to produce (possibly degenerate) sub-polygons.
    pub fn new(vertices: Vec<(Rat, Rat)>) -> LatticePolygon {
        assert!(vertices.len() >= 3, "a polygon needs at least 3 vertices");
        let p = LatticePolygon { vertices };
        assert!(
            p.twice_signed_area() > int(0),
            "vertices must be in counterclockwise order"
        );
        p
    }

    pub fn vertices(&self) -> &[(Rat, Rat)] {
        &self.vertices
    }

    fn twice_signed_area(&self) -> Rat {
        let n = self.vertices.len();
        let mut total = int(0);
        for i in 0..n {
            let (x1, y1) = &self.vertices[i];
            let (x2, y2) = &self.vertices[(i + 1) % n];
            total += x1 * y2 - x2 * y1;
        }
        total
    }

    /// Exact area (0 for degenerate polygons).
    pub fn area(&self) -> Rat {
        if self.vertices.len() < 3 {
            return int(0);
        }
        self.twice_signed_area() / int(2)
    }

    /// Intersection with the half-plane `a·u₁ + b·u₂ ≥ c`, exact
    /// Sutherland–Hodgman clipping. The result keeps counterclockwise order
    /// and may be degenerate.
    pub fn clip_ge(&self, a: &Rat, b: &Rat, c: &Rat) -> LatticePolygon {
        let value = |p: &(Rat, Rat)| -> Rat { a * &p.0 + b * &p.1 - c };
        let n = self.vertices.len();
        let mut out: Vec<(Rat, Rat)> = Vec::new();
        let push = |p: (Rat, Rat), out: &mut Vec<(Rat, Rat)>| {
            if out.last() != Some(&p) {
                out.push(p);
            }
        };
        for i in 0..n {
            let cur = &self.vertices[i];
            let next = &self.vertices[(i + 1) % n];
            let vc = value(cur);
            let vn = value(next);
            if !vc.is_negative() {
                push(cur.clone(), &mut out);
            }
            // Edge crosses the boundary line strictly: insert the exact
            // intersection point.
            if (vc.is_negative() && vn.is_positive()) || (vc.is_positive() && vn.is_negative()) {
                let t = &vc / (&vc - &vn);
                let x = &cur.0 + (&next.0 - &cur.0) * &t;
                let y = &cur.1 + (&next.1 - &cur.1) * &t;
                push((x, y), &mut out);
            }
        }
        if out.len() > 1 && out.first() == out.last() {
            out.pop();
        }
        LatticePolygon { vertices: out }
    }

    /// Intersection with `a·u₁ + b·u₂ ≤ c`.
    pub fn clip_le(&self, a: &Rat, b: &Rat, c: &Rat) -> LatticePolygon {
        self.clip_ge(&-a, &-b, &-c)
    }

    /// Number of integer lattice points inside or on the boundary.
    pub fn lattice_points(&self) -> u64 {
        match self.vertices.len() {
            0 => return 0,
            1 => {
                let (x, y) = &self.vertices[0];
                return u64::from(x.is_integer() && y.is_integer());
            }
            _ => {}
        }
        let floor = |r: &Rat| -> BigInt { r.floor().to_integer() };
        let ceil = |r: &Rat| -> BigInt { r.ceil().to_integer() };
        let xs: Vec<&Rat> = self.vertices.iter().map(|v| &v.0).collect();
        let ys: Vec<&Rat> = self.vertices.iter().map(|v| &v.1).collect();
        let (xmin, xmax) = (
            ceil(xs.iter().min().unwrap()),
            floor(xs.iter().max().unwrap()),
        );
        let (ymin, ymax) = (
            ceil(ys.iter().min().unwrap()),
            floor(ys.iter().max().unwrap()),
        );
        let mut count = 0u64;
        let mut x = xmin.clone();
        while x <= xmax {
            let mut y = ymin.clone();
            while y <= ymax {
                if self.contains_integer_point(&x, &y) {
                    count += 1;
                }
                y += 1;
            }
            x += 1;
        }
        count
    }

    fn contains_integer_point(&self, x: &BigInt, y: &BigInt) -> bool {
        let px = Rat::from_integer(x.clone());
        let py = Rat::from_integer(y.clone());
        let n = self.vertices.len();
        if n == 2 {
            // Degenerate segment: the point must be on it.
            let (a, b) = (&self.vertices[0], &self.vertices[1]);
            let cross = (&b.0 - &a.0) * (&py - &a.1) - (&b.1 - &a.1) * (&px - &a.0);
            if !cross.is_zero() {
                return false;
            }
            let dot = (&px - &a.0) * (&b.0 - &a.0) + (&py - &a.1) * (&b.1 - &a.1);
            let len2 = (&b.0 - &a.0) * (&b.0 - &a.0) + (&b.1 - &a.1) * (&b.1 - &a.1);
            return !dot.is_negative() && dot <= len2;
        }
        for i in 0..n {
            let a = &self.vertices[i];
            let b = &self.vertices[(i + 1) % n];
            let cross = (&b.0 - &a.0) * (&py - &a.1) - (&b.1 - &a.1) * (&px - &a.0);
            if cross.is_negative() {
                return false;
            }
        }
        true
    }
}

/// Moment polygon of `s·H` on the plane: the triangle `conv{(0,0),(s,0),(0,s)}`.
pub fn moment_triangle(s: &Rat) -> LatticePolygon {
    let zero = int(0);
    LatticePolygon::new(vec![
        (zero.clone(), zero.clone()),
        (s.clone(), zero),
        (int(0), s.clone()),
    ])
}

/// Moment polygon of `t·(f1+f2)` on the quadric: the square `[0,t]²`.
pub fn moment_square(t: &Rat) -> LatticePolygon {
    let zero = int(0);
    LatticePolygon::new(vec![
        (zero.clone(), zero.clone()),
        (t.clone(), zero),
        (t.clone(), t.clone()),
        (int(0), t.clone()),
    ])
}

/// Volume oracle for a monomial valuation with weights `(a, b)` at the
/// origin corner of the moment polygon `p`: twice the area of
/// `p ∩ {a·u₁ + b·u₂ ≥ x}`. Errors for `x < 0`; returns `0` once the
/// half-plane clears the polygon.
pub fn monomial_volume_oracle(
    p: &LatticePolygon,
    a: i64,
    b: i64,
    x: &Rat,
) -> Result<Rat, OracleError> {
    if x.is_negative() {
        return Err(OracleError::NegativeX(picard_lattice::format_rat(x)));
    }
    Ok(p.clip_ge(&int(a), &int(b), x).area() * int(2))
}

/// Number of lattice points of `p ∩ {a·u₁ + b·u₂ ≥ x}`; counts global
/// sections of the corresponding twisted linear system on the subdivided
/// surface when the data is integral.
pub fn lattice_point_count(p: &LatticePolygon, a: i64, b: i64, x: &Rat) -> u64 {
    p.clip_ge(&int(a), &int(b), x).lattice_points()
}

#[cfg(test)]
mod tests {
    use super::*;
    use picard_lattice::rat;

    #[test]
    fn triangle_area_and_points() {
        let t = moment_triangle(&int(3));
        assert_eq!(t.area(), rat(9, 2));
        // Lattice points of 3H on the plane: 10 monomials of degree ≤ 3.
        assert_eq!(t.lattice_points(), 10);
    }

    #[test]
    fn clipping_preserves_total_area() {
        let t = moment_triangle(&rat(7, 2));
        for (a, b, x) in [(2i64, 1i64, rat(3, 2)), (5, 2, int(4)), (1, 1, rat(7, 2))] {
            let hi = t.clip_ge(&int(a), &int(b), &x).area();
            let lo = t.clip_le(&int(a), &int(b), &x).area();
            assert_eq!(hi + lo, t.area(), "split at {a},{b},{x}");
        }
    }

    #[test]
    fn oracle_matches_hand_computed_plane_volumes() {
        // Weights (2,1) on the triangle of side s=3: vol = 9 − x²/2 on [0,3],
        // then (6−x)²/2 on [3,6].
        let t = moment_triangle(&int(3));
        let vol = |x: Rat| monomial_volume_oracle(&t, 2, 1, &x).unwrap();
        assert_eq!(vol(int(0)), int(9));
        assert_eq!(vol(int(2)), int(7));
        assert_eq!(vol(int(3)), rat(9, 2));
        assert_eq!(vol(int(4)), int(2));
        assert_eq!(vol(int(6)), int(0));
        assert_eq!(vol(int(7)), int(0));
        // Weights (3,1): first break at x = s, double root at 3s.
        let vol31 = |x: Rat| monomial_volume_oracle(&t, 3, 1, &x).unwrap();
        assert_eq!(vol31(int(3)), int(6)); // 9 − 9/3
        assert_eq!(vol31(rat(9, 2)), rat(27, 8)); // (9−9/2)²/6
        assert_eq!(vol31(int(9)), int(0));
    }

    #[test]
    fn oracle_matches_hand_computed_quadric_volumes() {
        // Diagonal weights (1,1) on the square [0,2]²: 8−x² then (4−x)².
        let sq = moment_square(&int(2));
        let vol = |x: Rat| monomial_volume_oracle(&sq, 1, 1, &x).unwrap();
        assert_eq!(vol(int(0)), int(8));
        assert_eq!(vol(int(1)), int(7));
        assert_eq!(vol(int(2)), int(4));
        assert_eq!(vol(int(3)), int(1));
        assert_eq!(vol(int(4)), int(0));
        // Weights (2,1): middle piece is linear (10 − 2x on [2,4]).
        let vol21 = |x: Rat| monomial_volume_oracle(&sq, 2, 1, &x).unwrap();
        assert_eq!(vol21(int(0)), int(8));
        assert_eq!(vol21(int(2)), int(6));
        assert_eq!(vol21(int(3)), int(4));
        assert_eq!(vol21(int(5)), rat(1, 2));
        assert_eq!(vol21(int(6)), int(0));
    }

    #[test]
    fn oracle_rejects_negative_x() {
        let t = moment_triangle(&int(3));
        assert!(monomial_volume_oracle(&t, 1, 1, &rat(-1, 2)).is_err());
    }

    #[test]
    fn clipped_lattice_points_count_sections() {
        // Triangle of side 3 clipped at 2u₁+u₂ ≥ 2 leaves 8 lattice points
        // (Riemann–Roch: M = 3H−e₁−e₂ on the two-point blowup has
        // M·(M−K)/2 + 1 = 14/2 + 1 = 8).
        let t = moment_triangle(&int(3));
        assert_eq!(lattice_point_count(&t, 2, 1, &int(2)), 8);
    }

    #[test]
    fn degenerate_clips() {
        let t = moment_triangle(&int(2));
        // Clip past the far vertex: empty.
        let empty = t.clip_ge(&int(1), &int(1), &int(5));
        assert_eq!(empty.area(), int(0));
        assert_eq!(empty.lattice_points(), 0);
        // Clip exactly at the far edge: the full hypotenuse segment remains,
        // containing 3 lattice points.
        let seg = t.clip_ge(&int(1), &int(1), &int(2));
        assert_eq!(seg.area(), int(0));
        assert_eq!(seg.lattice_points(), 3);
    }
}
