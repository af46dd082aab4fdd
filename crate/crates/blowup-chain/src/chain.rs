//! Validated blowup chains: intersection-theoretic bookkeeping for a tower
//! of point blowups over the plane or the quadric, with exact multiplicity
//! budgets, dual classes and log discrepancies.

use crate::description::{ChainDescription, SurfaceId};
use num::{One, Signed, Zero};
use picard_lattice::{format_rat, int, BaseSurface, DivisorClass, PicardBasis, Rat};
use std::collections::BTreeMap;
use thiserror::Error;

/// Validation errors raised while building a [`BlowupChain`].
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ChainError {
    #[error("chains are only supported over the plane and the quadric, not {0}")]
    UnsupportedBase(String),
    #[error("chain needs at least one point")]
    EmptyChain,
    #[error("curve `{id}` has a base class of length {got}, expected {want}")]
    WrongBaseClassLength { id: String, got: usize, want: usize },
    #[error("curve `{0}` has a base class that is not effective and nonzero")]
    InvalidBaseClass(String),
    #[error("curve id `{0}` is declared twice")]
    DuplicateCurveId(String),
    #[error("unknown curve id `{0}`")]
    UnknownCurve(String),
    #[error("boundary coefficient {coefficient} of `{curve}` is outside [0, 1)")]
    BoundaryCoefficientOutOfRange { curve: String, coefficient: String },
    #[error("curve `{0}` appears twice in the boundary")]
    DuplicateBoundaryCurve(String),
    #[error("point {point}: multiplicity of `{curve}` must be omitted instead of 0")]
    ZeroMultiplicity { point: usize, curve: String },
    #[error("point 1 lies on the base surface and cannot sit on an exceptional curve")]
    FirstPointOnExceptional,
    #[error("point {point}: `on_exceptional` must name a step in [1, {max}], got {host}")]
    InvalidHostExceptional { point: usize, host: usize, max: usize },
    #[error(
        "point {point}: `{first}` and `{second}` cannot meet there with \
         multiplicities {mult_first}·{mult_second}; remaining intersection is {budget}"
    )]
    ExcessIncidence {
        point: usize,
        first: String,
        second: String,
        mult_first: u32,
        mult_second: u32,
        budget: String,
    },
    #[error("curve `{curve}` violates the proximity inequality at step {step}")]
    BrokenProximity { curve: String, step: usize },
}

/// A validated tower of point blowups `X̃ → X` over the plane or the
/// quadric, carrying strict transforms of declared curves, the strict and
/// dual classes of every exceptional curve, and log discrepancies with
/// respect to a boundary divisor. The distinguished divisor is the final
/// exceptional curve.
#[derive(Debug, Clone)]
pub struct BlowupChain {
    basis: PicardBasis,
    curve_ids: Vec<String>,
    base_classes: Vec<Vec<i64>>,
    mults: Vec<Vec<u32>>,
    hosts: Vec<usize>,
    boundary: Vec<(usize, Rat)>,
    strict_curves: Vec<DivisorClass>,
    strict_exceptionals: Vec<DivisorClass>,
    duals: Vec<DivisorClass>,
    pure_a: Vec<Rat>,
}

impl BlowupChain {
    /// Builds and fully validates a chain from its description.
    pub fn build(desc: &ChainDescription) -> Result<BlowupChain, ChainError> {
        let surface = match desc.surface {
            SurfaceId::Plane => BaseSurface::ProjectivePlane,
            SurfaceId::Quadric => BaseSurface::QuadricSurface,
            SurfaceId::Hirzebruch { m } => {
                return Err(ChainError::UnsupportedBase(format!("Hirzebruch({m})")))
            }
        };
        let m = desc.points.len();
        if m == 0 {
            return Err(ChainError::EmptyChain);
        }
        let basis = PicardBasis::new(surface, m);

        // Curves: unique ids, base classes of the right shape.
        let mut curve_ids = Vec::new();
        let mut index = BTreeMap::new();
        let mut base_classes = Vec::new();
        for spec in &desc.curves {
            if index.insert(spec.id.clone(), curve_ids.len()).is_some() {
                return Err(ChainError::DuplicateCurveId(spec.id.clone()));
            }
            let want = surface.base_rank();
            if spec.base_class.len() != want {
                return Err(ChainError::WrongBaseClassLength {
                    id: spec.id.clone(),
                    got: spec.base_class.len(),
                    want,
                });
            }
            if spec.base_class.iter().any(|&c| c < 0) || spec.base_class.iter().all(|&c| c == 0) {
                return Err(ChainError::InvalidBaseClass(spec.id.clone()));
            }
            curve_ids.push(spec.id.clone());
            base_classes.push(spec.base_class.clone());
        }

        // Boundary: known curves, coefficients in [0, 1), no repeats.
        let mut boundary = Vec::new();
        for entry in &desc.boundary {
            let ci = *index
                .get(&entry.curve)
                .ok_or_else(|| ChainError::UnknownCurve(entry.curve.clone()))?;
            if entry.coefficient.is_negative() || entry.coefficient >= Rat::one() {
                return Err(ChainError::BoundaryCoefficientOutOfRange {
                    curve: entry.curve.clone(),
                    coefficient: format_rat(&entry.coefficient),
                });
            }
            if boundary.iter().any(|&(j, _)| j == ci) {
                return Err(ChainError::DuplicateBoundaryCurve(entry.curve.clone()));
            }
            boundary.push((ci, entry.coefficient.clone()));
        }

        // Point data: host steps and multiplicity tables.
        let mut hosts = Vec::with_capacity(m);
        let mut mults = vec![vec![0u32; m]; curve_ids.len()];
        for (pi, point) in desc.points.iter().enumerate() {
            let step = pi + 1;
            match point.on_exceptional {
                None => hosts.push(0),
                Some(_) if step == 1 => return Err(ChainError::FirstPointOnExceptional),
                Some(q) => {
                    // The previous exceptional curve is implicit; a second
                    // one must come strictly before it.
                    if q == 0 || q + 1 >= step {
                        return Err(ChainError::InvalidHostExceptional {
                            point: step,
                            host: q,
                            max: step.saturating_sub(2),
                        });
                    }
                    hosts.push(q);
                }
            }
            for (id, &mu) in &point.multiplicities {
                let ci = *index
                    .get(id)
                    .ok_or_else(|| ChainError::UnknownCurve(id.clone()))?;
                if mu == 0 {
                    return Err(ChainError::ZeroMultiplicity {
                        point: step,
                        curve: id.clone(),
                    });
                }
                mults[ci][pi] = mu;
            }
        }

        // Incremental construction with pairwise incidence budgets: at each
        // step, any two distinct objects through the point must still have
        // enough intersection left to meet with the declared multiplicities.
        let mut strict_curves: Vec<DivisorClass> = base_classes
            .iter()
            .map(|c| basis.class_from_base(c))
            .collect();
        let mut strict_exceptionals: Vec<DivisorClass> = Vec::with_capacity(m);
        for pi in 0..m {
            let step = pi + 1;
            // Objects through this point: (label, running class index) with
            // multiplicity; exceptional curves always with multiplicity 1.
            enum Obj {
                Curve(usize),
                Exceptional(usize),
            }
            let mut through: Vec<(Obj, u32)> = Vec::new();
            for (ci, _) in curve_ids.iter().enumerate() {
                if mults[ci][pi] > 0 {
                    through.push((Obj::Curve(ci), mults[ci][pi]));
                }
            }
            if step >= 2 {
                through.push((Obj::Exceptional(step - 2), 1));
            }
            if hosts[pi] >= 1 {
                through.push((Obj::Exceptional(hosts[pi] - 1), 1));
            }
            let class_of = |o: &Obj| -> &DivisorClass {
                match o {
                    Obj::Curve(ci) => &strict_curves[*ci],
                    Obj::Exceptional(ei) => &strict_exceptionals[*ei],
                }
            };
            let label_of = |o: &Obj| -> String {
                match o {
                    Obj::Curve(ci) => curve_ids[*ci].clone(),
                    Obj::Exceptional(ei) => format!("E{}", ei + 1),
                }
            };
            for i in 0..through.len() {
                for j in i + 1..through.len() {
                    let (u, mu) = &through[i];
                    let (v, mv) = &through[j];
                    let budget = basis.intersect(class_of(u), class_of(v));
                    if budget < int(i64::from(*mu) * i64::from(*mv)) {
                        return Err(ChainError::ExcessIncidence {
                            point: step,
                            first: label_of(u),
                            second: label_of(v),
                            mult_first: *mu,
                            mult_second: *mv,
                            budget: format_rat(&budget),
                        });
                    }
                }
            }
            // Perform the blowup: subtract the new exceptional class from
            // every object through the point with its multiplicity.
            let exc = basis.exceptional(step);
            for (o, mu) in &through {
                let correction = exc.scale(&int(i64::from(*mu)));
                match o {
                    Obj::Curve(ci) => {
                        strict_curves[*ci] = &strict_curves[*ci] - &correction;
                    }
                    Obj::Exceptional(ei) => {
                        strict_exceptionals[*ei] = &strict_exceptionals[*ei] - &correction;
                    }
                }
            }
            strict_exceptionals.push(exc);
        }

        // Proximity inequalities: every declared curve must keep a
        // non-negative intersection with every exceptional strict transform.
        // The pairwise budgets imply this for faithful declarations; this is
        // a final safety net.
        for (ci, class) in strict_curves.iter().enumerate() {
            for (ei, exc) in strict_exceptionals.iter().enumerate() {
                if basis.intersect(class, exc).is_negative() {
                    return Err(ChainError::BrokenProximity {
                        curve: curve_ids[ci].clone(),
                        step: ei + 1,
                    });
                }
            }
        }

        // Dual classes: E*_i = E*_q + E*_{i−1} + e_i, with E*_0 = 0. These
        // are characterised by (E*_i · strict E_j) = −δ_ij.
        let mut duals: Vec<DivisorClass> = Vec::with_capacity(m);
        // Pure log discrepancies of the chain: A_i = A_q + A_{i−1}, A_0 = 1.
        let mut pure_a: Vec<Rat> = Vec::with_capacity(m);
        for pi in 0..m {
            let step = pi + 1;
            let mut dual = basis.exceptional(step);
            let from_prev = if step >= 2 {
                dual = &dual + &duals[step - 2];
                pure_a[step - 2].clone()
            } else {
                Rat::one()
            };
            let from_host = if hosts[pi] >= 1 {
                dual = &dual + &duals[hosts[pi] - 1];
                pure_a[hosts[pi] - 1].clone()
            } else {
                Rat::one()
            };
            duals.push(dual);
            pure_a.push(from_prev + from_host);
        }

        let chain = BlowupChain {
            basis,
            curve_ids,
            base_classes,
            mults,
            hosts,
            boundary,
            strict_curves,
            strict_exceptionals,
            duals,
            pure_a,
        };
        debug_assert!(chain.dual_pairing_holds());
        Ok(chain)
    }

    /// The ambient lattice of the blown-up surface.
    pub fn basis(&self) -> &PicardBasis {
        &self.basis
    }

    /// Number of blowup steps.
    pub fn step_count(&self) -> usize {
        self.strict_exceptionals.len()
    }

    /// Ids of the declared curves, in declaration order.
    pub fn curve_ids(&self) -> impl Iterator<Item = &str> {
        self.curve_ids.iter().map(String::as_str)
    }

    fn curve_pos(&self, id: &str) -> Result<usize, ChainError> {
        self.curve_ids
            .iter()
            .position(|c| c == id)
            .ok_or_else(|| ChainError::UnknownCurve(id.to_string()))
    }

    /// Strict transform class of a declared curve on the blown-up surface.
    pub fn strict_curve(&self, id: &str) -> Result<&DivisorClass, ChainError> {
        Ok(&self.strict_curves[self.curve_pos(id)?])
    }

    /// Base class of a declared curve.
    pub fn base_class_of(&self, id: &str) -> Result<&[i64], ChainError> {
        Ok(&self.base_classes[self.curve_pos(id)?])
    }

    /// Strict transform class of the `i`-th exceptional curve (1-based).
    pub fn exceptional_strict(&self, i: usize) -> &DivisorClass {
        &self.strict_exceptionals[i - 1]
    }

    /// Dual class of the `i`-th exceptional curve (1-based): the nef-over-X
    /// class with `(dual_i · strict_j) = −δ_ij`.
    pub fn dual_class(&self, i: usize) -> &DivisorClass {
        &self.duals[i - 1]
    }

    /// Dual class of the distinguished (final) exceptional curve.
    pub fn final_dual(&self) -> &DivisorClass {
        self.duals.last().expect("chain is nonempty")
    }

    /// `−(final dual)²`, the positive rational `f` with
    /// `(pullback of the extracted divisor) = dual / f`.
    pub fn dual_norm(&self) -> Rat {
        -self.basis.self_intersect(self.final_dual())
    }

    /// Class of `x` units of the extracted divisor pulled back to the top:
    /// `(x / f) · dual`.
    pub fn valuation_direction(&self) -> DivisorClass {
        let f = self.dual_norm();
        self.final_dual().scale(&(Rat::one() / f))
    }

    /// Host step of point `i` (1-based): `0` for a free point, otherwise the
    /// earlier step whose exceptional curve passes through the point.
    pub fn host(&self, i: usize) -> usize {
        self.hosts[i - 1]
    }

    /// Number of free points in the chain.
    pub fn free_point_count(&self) -> usize {
        self.hosts.iter().filter(|&&q| q == 0).count()
    }

    /// Multiplicity of a declared curve at point `i` (1-based).
    pub fn multiplicity(&self, i: usize, id: &str) -> Result<u32, ChainError> {
        Ok(self.mults[self.curve_pos(id)?][i - 1])
    }

    /// Boundary coefficient of a curve (`0` when absent from the boundary).
    pub fn boundary_coefficient(&self, id: &str) -> Result<Rat, ChainError> {
        let ci = self.curve_pos(id)?;
        Ok(self
            .boundary
            .iter()
            .find(|&&(j, _)| j == ci)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rat::zero))
    }

    /// Boundary summands as `(curve id, coefficient)` pairs.
    pub fn boundary_entries(&self) -> impl Iterator<Item = (&str, &Rat)> {
        self.boundary
            .iter()
            .map(|(ci, c)| (self.curve_ids[*ci].as_str(), c))
    }

    /// Vanishing order of a declared curve along the distinguished divisor:
    /// the pairing of the final dual class with the curve's strict transform.
    pub fn order_along(&self, id: &str) -> Result<Rat, ChainError> {
        let class = self.strict_curve(id)?;
        Ok(self.basis.intersect(self.final_dual(), class))
    }

    /// Log discrepancy of the distinguished divisor over the bare surface
    /// (an integer for chains of point blowups).
    pub fn pure_log_discrepancy(&self) -> Rat {
        self.pure_a.last().expect("chain is nonempty").clone()
    }

    /// Log discrepancy over the pair: the pure value minus the boundary
    /// coefficients weighted by vanishing orders.
    pub fn log_discrepancy(&self) -> Rat {
        let mut a = self.pure_log_discrepancy();
        for (ci, coeff) in &self.boundary {
            let ord = self
                .basis
                .intersect(self.final_dual(), &self.strict_curves[*ci]);
            a -= coeff * &ord;
        }
        a
    }

    /// Independent computation of the pair log discrepancy by running the
    /// blowup recursion on multiplicities (each step contributes
    /// `2 − mult of the accumulated boundary`); used to cross-check
    /// [`Self::log_discrepancy`].
    pub fn log_discrepancy_by_recursion(&self) -> Rat {
        let m = self.step_count();
        let mut a: Vec<Rat> = Vec::with_capacity(m);
        for pi in 0..m {
            let step = pi + 1;
            let mut value = int(2);
            for (ci, coeff) in &self.boundary {
                value -= coeff * &int(i64::from(self.mults[*ci][pi]));
            }
            if step >= 2 {
                value -= Rat::one() - &a[step - 2];
            }
            if self.hosts[pi] >= 1 {
                value -= Rat::one() - &a[self.hosts[pi] - 1];
            }
            a.push(value);
        }
        a.pop().expect("chain is nonempty")
    }

    /// Pullback of `−(K_base + boundary)` to the blown-up surface.
    pub fn log_anticanonical(&self) -> DivisorClass {
        let anti: Vec<i64> = self
            .basis
            .surface
            .canonical_base_coeffs()
            .iter()
            .map(|c| -c)
            .collect();
        let mut class = self.basis.class_from_base(&anti);
        for (ci, coeff) in &self.boundary {
            let pullback = self.basis.class_from_base(&self.base_classes[*ci]);
            class = &class - &pullback.scale(coeff);
        }
        class
    }

    /// Whether the dual graph of the exceptional curves is a path — the
    /// combinatorial shape carved out by a purely log terminal extraction of
    /// the final curve.
    // Vertex indices address `degree`, `seen`, and the curve list at once.
    #[allow(clippy::needless_range_loop)]
    pub fn is_path_configuration(&self) -> bool {
        let m = self.step_count();
        if m == 1 {
            return true;
        }
        let mut degree = vec![0usize; m];
        let mut edges = 0usize;
        for i in 0..m {
            for j in i + 1..m {
                let pairing = self
                    .basis
                    .intersect(&self.strict_exceptionals[i], &self.strict_exceptionals[j]);
                if pairing.is_positive() {
                    degree[i] += 1;
                    degree[j] += 1;
                    edges += 1;
                }
            }
        }
        // A path on m vertices: m−1 edges, all degrees ≤ 2, connected
        // (m−1 edges + no vertex of degree 0 + degree bound forces a path
        // once acyclicity holds; check connectivity directly to be safe).
        if edges != m - 1 || degree.iter().any(|&d| d > 2 || d == 0) {
            return false;
        }
        let mut seen = vec![false; m];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for j in 0..m {
                if i != j && !seen[j] {
                    let pairing = self
                        .basis
                        .intersect(&self.strict_exceptionals[i], &self.strict_exceptionals[j]);
                    if pairing.is_positive() {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    fn dual_pairing_holds(&self) -> bool {
        let m = self.step_count();
        (1..=m).all(|i| {
            (1..=m).all(|j| {
                let pairing = self
                    .basis
                    .intersect(self.dual_class(i), self.exceptional_strict(j));
                pairing == if i == j { int(-1) } else { int(0) }
            })
        })
    }
}
