//! Closed-form values of the stability slope `beta = 1 − S/A` for divisor
//! families whose volume integrals are known exactly.  These expressions are
//! evaluated independently of the sweep engine so the two can cross-check
//! each other.
//!
//! Throughout, `A` is the log discrepancy of the divisor over the pair, `S`
//! the normalised integral of the volume function, `s = 3 − 2·delta` the
//! degree of the adjusted anticanonical class on the plane, and
//! `t = 2 − delta` its bidegree component on the quadric.

use crate::families::Pair;
use num::{One, Zero};
use picard_lattice::{int, rat, Rat};
use thiserror::Error;

/// How the centre of a monomial valuation meets the boundary conic (plane)
/// or the diagonal (quadric).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConicContact {
    /// The boundary curve misses the centre entirely.
    Disjoint,
    /// The boundary curve passes through the first centre transversally to
    /// both reference curves of the monomial chain.
    Transversal,
    /// The boundary curve is tangent to the first reference curve at the
    /// first centre (second-order contact); requires `a > b`.
    Tangent,
}

impl ConicContact {
    pub fn label(self) -> &'static str {
        match self {
            ConicContact::Disjoint => "disjoint",
            ConicContact::Transversal => "transversal",
            ConicContact::Tangent => "tangent",
        }
    }
}

/// Rejections for closed-form evaluations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormulaError {
    #[error("monomial weights must be positive and coprime, got ({a}, {b})")]
    BadWeights { a: u64, b: u64 },
    #[error("tangent contact needs the first weight to exceed the second, got ({a}, {b})")]
    TangentNeedsLargerFirstWeight { a: u64, b: u64 },
    #[error("no closed form recorded: {0}")]
    Domain(String),
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn check_weights(a: u64, b: u64) -> Result<(), FormulaError> {
    if a == 0 || b == 0 || gcd(a, b) != 1 {
        return Err(FormulaError::BadWeights { a, b });
    }
    Ok(())
}

fn check_pair(pair: &Pair) -> Result<(), FormulaError> {
    pair.validate()
        .map_err(|e| FormulaError::Domain(e.to_string()))
}

/// Vanishing order of the boundary conic (or the diagonal) along the
/// monomial valuation with weights `(a, b)` in the given contact position.
pub fn conic_contact_order(a: u64, b: u64, contact: ConicContact) -> Result<Rat, FormulaError> {
    check_weights(a, b)?;
    let (a_r, b_r) = (int(a as i64), int(b as i64));
    Ok(match contact {
        ConicContact::Disjoint => Rat::zero(),
        ConicContact::Transversal => a_r.min(b_r),
        ConicContact::Tangent => {
            if a <= b {
                return Err(FormulaError::TangentNeedsLargerFirstWeight { a, b });
            }
            (int(2) * b_r).min(a_r)
        }
    })
}

/// `beta` of the boundary conic itself on the plane pair:
/// `(3 − 4·delta) / (6·(1 − delta))`.
pub fn plane_boundary_conic(delta: &Rat) -> Result<Rat, FormulaError> {
    check_pair(&Pair::PlaneConic {
        delta: delta.clone(),
    })?;
    Ok((int(3) - int(4) * delta) / (int(6) * (Rat::one() - delta)))
}

/// `beta` of an irreducible plane curve of the given degree in general
/// position with respect to the conic: `1 − s/(3·degree)`.
pub fn plane_curve(degree: u32, delta: &Rat) -> Result<Rat, FormulaError> {
    if degree == 0 {
        return Err(FormulaError::Domain("curve degree must be positive".into()));
    }
    check_pair(&Pair::PlaneConic {
        delta: delta.clone(),
    })?;
    let s = int(3) - int(2) * delta;
    Ok(Rat::one() - s / int(3 * i64::from(degree)))
}

/// `beta` of the monomial valuation with weights `(a, b)` over the plane
/// pair: `1 − (a + b)·s / (3·A)` with `A = a + b − delta·(contact order)`.
pub fn plane_monomial(
    a: u64,
    b: u64,
    contact: ConicContact,
    delta: &Rat,
) -> Result<Rat, FormulaError> {
    check_pair(&Pair::PlaneConic {
        delta: delta.clone(),
    })?;
    let order = conic_contact_order(a, b, contact)?;
    let sum = int((a + b) as i64);
    let s = int(3) - int(2) * delta;
    let log_discrepancy = &sum - delta * order;
    Ok(Rat::one() - sum * s / (int(3) * log_discrepancy))
}

/// Nef and vanishing thresholds of the plane monomial valuation:
/// `(min(a,b)·s, max(a,b)·s)`; independent of the contact position.
pub fn plane_monomial_thresholds(a: u64, b: u64, delta: &Rat) -> Result<(Rat, Rat), FormulaError> {
    check_weights(a, b)?;
    check_pair(&Pair::PlaneConic {
        delta: delta.clone(),
    })?;
    let s = int(3) - int(2) * delta;
    let lo = int(a.min(b) as i64);
    let hi = int(a.max(b) as i64);
    Ok((lo * &s, hi * s))
}

/// `beta` of the boundary diagonal itself on the quadric pair:
/// `(1 − 2·delta) / (3·(1 − delta))`.
pub fn quadric_boundary_diagonal(delta: &Rat) -> Result<Rat, FormulaError> {
    check_pair(&Pair::QuadricDiagonal {
        delta: delta.clone(),
    })?;
    Ok((Rat::one() - int(2) * delta) / (int(3) * (Rat::one() - delta)))
}

/// `beta` of the monomial valuation with weights `(a, b)` at a corner of
/// two fibres on the quadric pair: `1 − (a + b)·t / (2·A)` with
/// `A = a + b − delta·(contact order)`.  Tangent contact with the diagonal
/// follows a different chain and has its own closed form below.
pub fn quadric_monomial(
    a: u64,
    b: u64,
    contact: ConicContact,
    delta: &Rat,
) -> Result<Rat, FormulaError> {
    if contact == ConicContact::Tangent {
        return Err(FormulaError::Domain(
            "tangent contact on the quadric is covered by the diagonal-contact chain".into(),
        ));
    }
    check_pair(&Pair::QuadricDiagonal {
        delta: delta.clone(),
    })?;
    let order = conic_contact_order(a, b, contact)?;
    let sum = int((a + b) as i64);
    let t = int(2) - delta;
    let log_discrepancy = &sum - delta * order;
    Ok(Rat::one() - sum * t / (int(2) * log_discrepancy))
}

/// Thresholds of the quadric corner monomial valuation:
/// `(min(a,b)·t, (a + b)·t)`.
pub fn quadric_monomial_thresholds(
    a: u64,
    b: u64,
    delta: &Rat,
) -> Result<(Rat, Rat), FormulaError> {
    check_weights(a, b)?;
    check_pair(&Pair::QuadricDiagonal {
        delta: delta.clone(),
    })?;
    let t = int(2) - delta;
    Ok((int(a.min(b) as i64) * &t, int((a + b) as i64) * t))
}

/// `beta` of the weight-(3,2) valuation whose chain follows the diagonal
/// with second-order contact: `(1 − 2·delta) / (3·(5 − 3·delta))`.
pub fn quadric_diagonal_contact(delta: &Rat) -> Result<Rat, FormulaError> {
    check_pair(&Pair::QuadricDiagonal {
        delta: delta.clone(),
    })?;
    Ok((Rat::one() - int(2) * delta) / (int(3) * (int(5) - int(3) * delta)))
}

/// Thresholds of the diagonal-contact valuation: `(3·t, 4·t)`.
pub fn quadric_diagonal_contact_thresholds(delta: &Rat) -> Result<(Rat, Rat), FormulaError> {
    check_pair(&Pair::QuadricDiagonal {
        delta: delta.clone(),
    })?;
    let t = int(2) - delta;
    Ok((int(3) * &t, int(4) * t))
}

/// `beta` of an irreducible curve of the given bidegree on the quadric, in
/// general position with respect to the diagonal.  Recorded for fibres and
/// for bidegree `(1, 1)`.
pub fn quadric_curve(p: u32, q: u32, delta: &Rat) -> Result<Rat, FormulaError> {
    check_pair(&Pair::QuadricDiagonal {
        delta: delta.clone(),
    })?;
    match (p, q) {
        (1, 0) | (0, 1) => Ok(delta / int(2)),
        (1, 1) => Ok((Rat::one() + delta) / int(3)),
        _ => Err(FormulaError::Domain(format!(
            "no closed form recorded for bidegree ({p}, {q})"
        ))),
    }
}

/// `beta` of the valuation extracted by blowing up `m − 1` points along a
/// line followed by one general free point: `(m − 2) / ((m + 1)(m − 1))`.
///
/// Needs `m ≥ 3`: the first two infinitely-near points always determine a
/// line, so a tail point off the line only exists once the line is pinned
/// down by at least two chain points.
pub fn line_free_tail(m: u32) -> Result<Rat, FormulaError> {
    if m < 3 {
        return Err(FormulaError::Domain(
            "the free-tail chain needs at least three points".into(),
        ));
    }
    let m = i64::from(m);
    Ok(rat(m - 2, (m + 1) * (m - 1)))
}

/// Thresholds of the free-tail valuation: `(3m/(m − 1), 3(m − 1))`.
pub fn line_free_tail_thresholds(m: u32) -> Result<(Rat, Rat), FormulaError> {
    if m < 3 {
        return Err(FormulaError::Domain(
            "the free-tail chain needs at least three points".into(),
        ));
    }
    let m = i64::from(m);
    Ok((rat(3 * m, m - 1), int(3 * (m - 1))))
}

/// `beta` of the negative section `e` on the Hirzebruch pair:
/// `(2m·d1 − 2m·d1² − 6·d1 + 3·d1·d2 − 2m) / (3(1 − d1)(m·d1 + 4 − 2·d2))`.
pub fn hirzebruch_negative_section(m: u32, d1: &Rat, d2: &Rat) -> Result<Rat, FormulaError> {
    check_pair(&Pair::Hirzebruch {
        m,
        section: d1.clone(),
        fibre: d2.clone(),
    })?;
    let m = int(i64::from(m));
    let numerator = int(2) * &m * d1 - int(2) * &m * d1 * d1 - int(6) * d1
        + int(3) * d1 * d2
        - int(2) * &m;
    let denominator = int(3) * (Rat::one() - d1) * (&m * d1 + int(4) - int(2) * d2);
    Ok(numerator / denominator)
}

/// `beta` of the boundary fibre on the Hirzebruch pair.  With
/// `t = 2 − d1`, `c = m + 2 − d2` and `u = c − m·t`, the volume of
/// `L − x·fibre` is `t(2(c − x) − mt)` up to the nef threshold `u` and
/// `(c − x)²/m` beyond it, so for `m ≥ 1`
/// `beta = 1 − ((2c − mt)·u − u² + m²t²/3) / ((1 − d2)·(2c − m·t))`;
/// for `m = 0` this degenerates to `−d2 / (2(1 − d2))`.
pub fn hirzebruch_fibre(m: u32, d1: &Rat, d2: &Rat) -> Result<Rat, FormulaError> {
    check_pair(&Pair::Hirzebruch {
        m,
        section: d1.clone(),
        fibre: d2.clone(),
    })?;
    if m == 0 {
        return Ok(-d2 / (int(2) * (Rat::one() - d2)));
    }
    let m = int(i64::from(m));
    let t = int(2) - d1;
    let c = &m + int(2) - d2;
    let width = int(2) * &c - &m * &t;
    let u = &c - &m * &t;
    let mean = (&width * &u - &u * &u + &m * &m * &t * &t / int(3)) / &width;
    Ok(Rat::one() - mean / (Rat::one() - d2))
}

/// `beta` of the negative section `e` and of the boundary section `e∞` on
/// `F_1` with boundary `delta·e∞`, as a pair.  Both are proportional to
/// `1 − 4·delta + delta²`, with opposite signs.
pub fn positive_section_pair(delta: &Rat) -> Result<(Rat, Rat), FormulaError> {
    check_pair(&Pair::HirzebruchPositiveSection {
        delta: delta.clone(),
    })?;
    let q = Rat::one() - int(4) * delta + delta * delta;
    let four_minus = int(4) - delta;
    let on_e = -int(2) * &q / (int(3) * &four_minus);
    let on_e_inf = int(2) * q / (int(3) * (Rat::one() - delta) * four_minus);
    Ok((on_e, on_e_inf))
}

/// `beta` of the two boundary lines on the two-line plane pair, as a pair:
/// `((d2 − 2·d1)/(3(1 − d1)), (d1 − 2·d2)/(3(1 − d2)))`.
pub fn two_lines(d1: &Rat, d2: &Rat) -> Result<(Rat, Rat), FormulaError> {
    check_pair(&Pair::TwoLines {
        first: d1.clone(),
        second: d2.clone(),
    })?;
    let on_first = (d2 - int(2) * d1) / (int(3) * (Rat::one() - d1));
    let on_second = (d1 - int(2) * d2) / (int(3) * (Rat::one() - d2));
    Ok((on_first, on_second))
}

/// The identity tying `beta` to the thresholds for plane chains:
/// every valuation obtained from a chain of point blowups over the plane
/// satisfies `S = (nef threshold + vanishing threshold) / 3`, hence
/// `beta = 1 − (eps + tau) / (3·A)`.  (Fails on the quadric.)
pub fn plane_threshold_identity(log_discrepancy: &Rat, eps: &Rat, tau: &Rat) -> Rat {
    Rat::one() - (eps + tau) / (int(3) * log_discrepancy)
}
