//! Catalogued divisor cases: curves on the surface itself and divisorial
//! valuations obtained from chains of point blowups, each packaged with the
//! sweep input, the log discrepancy, an optional closed-form slope to check
//! against, and a product-type verdict.
//!
//! Every constructor here vouches for its own curve catalog: when the listed
//! curves demonstrably generate the effective cone of the blown-up surface,
//! the catalog is marked cone-generating and the vanishing threshold the
//! sweep finds can be certified exactly.

use std::collections::BTreeMap;

use blowup_chain::{
    BlowupChain, BoundaryEntry, ChainDescription, ChainError, CurveSpec, PointSpec, SurfaceId,
};
use num::Zero;
use picard_lattice::{int, BaseSurface, PicardBasis, Rat};
use thiserror::Error;
use volume_zariski::{
    sweep_input_from_chain, CatalogError, CurveCatalog, CurveEntry, SweepInput,
};

use crate::beta::ProductTypeVerdict;
use crate::families::{FamilyError, Pair};
use crate::formulas::{self, ConicContact, FormulaError};

/// Errors raised while assembling a divisor case.
#[derive(Debug, Error)]
pub enum BuildError {
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error("{0}")]
    Unsupported(String),
}

/// One blowup step of a monomial valuation: which earlier exceptional curve
/// hosts the point besides the implicit previous one (`0` for none), which
/// of the two coordinate axes pass through it, and the weight vector of the
/// corresponding exceptional divisor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialStep {
    pub host: usize,
    pub on_first_axis: bool,
    pub on_second_axis: bool,
    pub weights: (u64, u64),
}

/// The full blowup schedule realising the monomial valuation with weights
/// `(a, b)` on the two coordinate axes through a smooth point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialPlan {
    pub target: (u64, u64),
    pub steps: Vec<MonomialStep>,
}

impl MonomialPlan {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Computes the blowup schedule of the `(a, b)`-monomial valuation by the
/// mediant walk on weight vectors: starting from the two axis directions,
/// repeatedly blow up the intersection of the two most recent exceptional
/// curves (or an axis) on the side of the target weight vector, until the
/// mediant reaches `(a, b)` itself.
pub fn monomial_plan(a: u64, b: u64) -> Result<MonomialPlan, BuildError> {
    if a == 0 || b == 0 || gcd(a, b) != 1 {
        return Err(FormulaError::BadWeights { a, b }.into());
    }
    let target = (a, b);
    // Each side carries the weight vector of the curve and the index of the
    // blowup step that created it (0 for the original axes).
    let mut left: ((u64, u64), usize) = ((1, 0), 0);
    let mut right: ((u64, u64), usize) = ((0, 1), 0);
    let mut steps: Vec<MonomialStep> = Vec::new();
    loop {
        let index = steps.len() + 1;
        let mediant = (left.0 .0 + right.0 .0, left.0 .1 + right.0 .1);
        // The point sits on the previous exceptional curve implicitly; the
        // other side is an extra host only when it is itself exceptional.
        let mut host = 0usize;
        for side in [left.1, right.1] {
            if side >= 1 && side != index - 1 {
                host = side;
            }
        }
        steps.push(MonomialStep {
            host,
            on_first_axis: left.1 == 0,
            on_second_axis: right.1 == 0,
            weights: mediant,
        });
        if mediant == target {
            return Ok(MonomialPlan { target, steps });
        }
        let cross = (mediant.0 as i128) * (target.1 as i128)
            - (mediant.1 as i128) * (target.0 as i128);
        if cross > 0 {
            left = (mediant, index);
        } else {
            right = (mediant, index);
        }
    }
}

fn delta_pair_plane(delta: &Rat) -> Result<Pair, BuildError> {
    let pair = Pair::PlaneConic {
        delta: delta.clone(),
    };
    pair.validate()?;
    Ok(pair)
}

fn delta_pair_quadric(delta: &Rat) -> Result<Pair, BuildError> {
    let pair = Pair::QuadricDiagonal {
        delta: delta.clone(),
    };
    pair.validate()?;
    Ok(pair)
}

/// Chain description for the `(a, b)`-monomial valuation at a point of the
/// plane, with the boundary conic disjoint from, transversal to, or tangent
/// to the first axis at that point.
pub fn plane_monomial_description(
    a: u64,
    b: u64,
    contact: ConicContact,
    delta: &Rat,
) -> Result<ChainDescription, BuildError> {
    delta_pair_plane(delta)?;
    if contact == ConicContact::Tangent && a <= b {
        return Err(FormulaError::TangentNeedsLargerFirstWeight { a, b }.into());
    }
    let plan = monomial_plan(a, b)?;
    let mut curves = vec![
        CurveSpec {
            id: "line-1".to_string(),
            base_class: vec![1],
        },
        CurveSpec {
            id: "line-2".to_string(),
            base_class: vec![1],
        },
    ];
    let with_conic = contact != ConicContact::Disjoint || !delta.is_zero();
    if with_conic {
        curves.push(CurveSpec {
            id: "conic".to_string(),
            base_class: vec![2],
        });
    }
    let boundary = if delta.is_zero() {
        Vec::new()
    } else {
        vec![BoundaryEntry {
            curve: "conic".to_string(),
            coefficient: delta.clone(),
        }]
    };
    let points = plan
        .steps
        .iter()
        .enumerate()
        .map(|(k, step)| {
            let mut multiplicities = BTreeMap::new();
            if step.on_first_axis {
                multiplicities.insert("line-1".to_string(), 1);
            }
            if step.on_second_axis {
                multiplicities.insert("line-2".to_string(), 1);
            }
            let conic_here = match contact {
                ConicContact::Disjoint => false,
                ConicContact::Transversal => k == 0,
                // Tangent to the first axis: the conic follows that axis
                // through the first two points of the schedule.
                ConicContact::Tangent => k <= 1,
            };
            if with_conic && conic_here {
                multiplicities.insert("conic".to_string(), 1);
            }
            PointSpec {
                on_exceptional: (step.host >= 1).then_some(step.host),
                multiplicities,
            }
        })
        .collect();
    Ok(ChainDescription {
        surface: SurfaceId::Plane,
        curves,
        boundary,
        points,
    })
}

/// Chain description for the `(a, b)`-monomial valuation at a point of the
/// quadric where two rulings cross, with the boundary diagonal disjoint from
/// or transversal to the configuration. Tangential contact with the diagonal
/// is a genuinely different chain, covered by
/// [`quadric_diagonal_contact_description`].
pub fn quadric_monomial_description(
    a: u64,
    b: u64,
    contact: ConicContact,
    delta: &Rat,
) -> Result<ChainDescription, BuildError> {
    delta_pair_quadric(delta)?;
    if contact == ConicContact::Tangent {
        return Err(BuildError::Unsupported(
            "tangential contact with the diagonal is modelled by the diagonal-contact chain"
                .to_string(),
        ));
    }
    let plan = monomial_plan(a, b)?;
    let mut curves = vec![
        CurveSpec {
            id: "fibre-1".to_string(),
            base_class: vec![1, 0],
        },
        CurveSpec {
            id: "fibre-2".to_string(),
            base_class: vec![0, 1],
        },
    ];
    let with_diagonal = contact == ConicContact::Transversal || !delta.is_zero();
    if with_diagonal {
        curves.push(CurveSpec {
            id: "diagonal".to_string(),
            base_class: vec![1, 1],
        });
    }
    let boundary = if delta.is_zero() {
        Vec::new()
    } else {
        vec![BoundaryEntry {
            curve: "diagonal".to_string(),
            coefficient: delta.clone(),
        }]
    };
    let points = plan
        .steps
        .iter()
        .enumerate()
        .map(|(k, step)| {
            let mut multiplicities = BTreeMap::new();
            if step.on_first_axis {
                multiplicities.insert("fibre-1".to_string(), 1);
            }
            if step.on_second_axis {
                multiplicities.insert("fibre-2".to_string(), 1);
            }
            if with_diagonal && contact == ConicContact::Transversal && k == 0 {
                multiplicities.insert("diagonal".to_string(), 1);
            }
            PointSpec {
                on_exceptional: (step.host >= 1).then_some(step.host),
                multiplicities,
            }
        })
        .collect();
    Ok(ChainDescription {
        surface: SurfaceId::Quadric,
        curves,
        boundary,
        points,
    })
}

/// Chain description of the weight-(3,2) valuation following the diagonal of
/// the quadric: blow up a point of the diagonal, then the point where the
/// strict diagonal meets the first exceptional curve, then the intersection
/// of the first two exceptional curves.
pub fn quadric_diagonal_contact_description(delta: &Rat) -> Result<ChainDescription, BuildError> {
    delta_pair_quadric(delta)?;
    let curves = vec![
        CurveSpec {
            id: "fibre-1".to_string(),
            base_class: vec![1, 0],
        },
        CurveSpec {
            id: "fibre-2".to_string(),
            base_class: vec![0, 1],
        },
        CurveSpec {
            id: "diagonal".to_string(),
            base_class: vec![1, 1],
        },
    ];
    let boundary = if delta.is_zero() {
        Vec::new()
    } else {
        vec![BoundaryEntry {
            curve: "diagonal".to_string(),
            coefficient: delta.clone(),
        }]
    };
    let mut first = BTreeMap::new();
    first.insert("fibre-1".to_string(), 1);
    first.insert("fibre-2".to_string(), 1);
    first.insert("diagonal".to_string(), 1);
    let mut second = BTreeMap::new();
    second.insert("diagonal".to_string(), 1);
    let points = vec![
        PointSpec {
            on_exceptional: None,
            multiplicities: first,
        },
        PointSpec {
            on_exceptional: None,
            multiplicities: second,
        },
        PointSpec {
            on_exceptional: Some(1),
            multiplicities: BTreeMap::new(),
        },
    ];
    Ok(ChainDescription {
        surface: SurfaceId::Quadric,
        curves,
        boundary,
        points,
    })
}

/// Chain description of the tail valuation over a line in the bare plane:
/// the first `m − 1` points follow the line, the final point is generic on
/// the previous exceptional curve.
///
/// Needs `m ≥ 3`: the first two infinitely-near points always determine a
/// line, so a final point off the line requires the line to be fixed by at
/// least two earlier chain points.
pub fn line_free_tail_description(m: usize) -> Result<ChainDescription, BuildError> {
    if m < 3 {
        return Err(BuildError::Unsupported(
            "the line tail needs at least three blowups; shorter chains cannot avoid the line"
                .to_string(),
        ));
    }
    let curves = vec![CurveSpec {
        id: "line".to_string(),
        base_class: vec![1],
    }];
    let points = (1..=m)
        .map(|i| {
            let mut multiplicities = BTreeMap::new();
            if i < m {
                multiplicities.insert("line".to_string(), 1);
            }
            PointSpec {
                on_exceptional: None,
                multiplicities,
            }
        })
        .collect();
    Ok(ChainDescription {
        surface: SurfaceId::Plane,
        curves,
        boundary: Vec::new(),
        points,
    })
}

/// Chain description of the nine-step valuation following a smooth plane
/// cubic in the bare plane.
pub fn cubic_nine_description() -> ChainDescription {
    let curves = vec![CurveSpec {
        id: "cubic".to_string(),
        base_class: vec![3],
    }];
    let points = (0..9)
        .map(|_| {
            let mut multiplicities = BTreeMap::new();
            multiplicities.insert("cubic".to_string(), 1);
            PointSpec {
                on_exceptional: None,
                multiplicities,
            }
        })
        .collect();
    ChainDescription {
        surface: SurfaceId::Plane,
        curves,
        boundary: Vec::new(),
        points,
    }
}

/// A divisor case ready for the sweep: the pair it lives over, the sweep
/// input, the log discrepancy of the divisor with respect to the pair, an
/// optional closed-form slope for cross-checking, and whether the divisor is
/// realised by a one-parameter subgroup of automorphisms of the pair.
#[derive(Debug, Clone)]
pub struct DivisorCase {
    pub id: String,
    pub pair: Pair,
    pub input: SweepInput,
    pub log_discrepancy: Rat,
    pub closed_form_beta: Option<Rat>,
    pub product_type: ProductTypeVerdict,
    /// Whether the dual graph of the blowup chain is a path (`None` for
    /// divisors that are curves on the surface itself).
    pub path_configuration: Option<bool>,
}

fn chain_case(
    id: String,
    pair: Pair,
    description: &ChainDescription,
    closed_form_beta: Option<Rat>,
    product_type: ProductTypeVerdict,
    cone_generating: bool,
) -> Result<DivisorCase, BuildError> {
    let chain = BlowupChain::build(description)?;
    let mut input = sweep_input_from_chain(&chain)?;
    input.catalog.cone_generating = cone_generating;
    Ok(DivisorCase {
        id,
        pair,
        log_discrepancy: chain.log_discrepancy(),
        input,
        closed_form_beta,
        product_type,
        path_configuration: Some(chain.is_path_configuration()),
    })
}

#[allow(clippy::too_many_arguments)]
fn surface_case(
    id: &str,
    pair: Pair,
    surface: BaseSurface,
    polarisation: &[Rat],
    direction: &[i64],
    catalog: &[(&str, &[i64])],
    log_discrepancy: Rat,
    closed_form_beta: Option<Rat>,
    product_type: ProductTypeVerdict,
) -> DivisorCase {
    let basis = PicardBasis::new(surface, 0);
    let entries = catalog
        .iter()
        .map(|(label, class)| CurveEntry {
            label: (*label).to_string(),
            class: basis.class_from_base(class),
        })
        .collect();
    let input = SweepInput {
        polarisation: basis.class_from_base_rat(polarisation),
        direction: basis.class_from_base(direction),
        basis,
        catalog: CurveCatalog {
            entries,
            // Curves on the unblown surface: these catalogs list honest
            // irreducible generators of the (finitely generated) effective
            // cone of the base surface itself.
            cone_generating: true,
        },
    };
    DivisorCase {
        id: id.to_string(),
        pair,
        input,
        log_discrepancy,
        closed_form_beta,
        product_type,
        path_configuration: None,
    }
}

fn plane_polarisation(delta: &Rat) -> Vec<Rat> {
    vec![int(3) - int(2) * delta]
}

fn quadric_polarisation(delta: &Rat) -> Vec<Rat> {
    let t = int(2) - delta;
    vec![t.clone(), t]
}

/// The boundary conic itself, as a divisor on the plane.
pub fn boundary_conic(delta: &Rat) -> Result<DivisorCase, BuildError> {
    let pair = delta_pair_plane(delta)?;
    let beta = formulas::plane_boundary_conic(delta)?;
    Ok(surface_case(
        "boundary-conic",
        pair,
        BaseSurface::ProjectivePlane,
        &plane_polarisation(delta),
        &[2],
        &[("line", &[1])],
        int(1) - delta,
        Some(beta),
        // No one-parameter subgroup of the plane fixing the conic has a
        // divisorial fixed curve, so the conic is never its weight divisor.
        ProductTypeVerdict::NotProductType,
    ))
}

/// An irreducible plane curve of the given degree in general position with
/// respect to the boundary conic.
pub fn plane_curve_case(degree: u32, delta: &Rat) -> Result<DivisorCase, BuildError> {
    let pair = delta_pair_plane(delta)?;
    let beta = formulas::plane_curve(degree, delta)?;
    // A line is the weight divisor of a subtorus with a repeated weight, but
    // only in the bare plane: any one-parameter subgroup preserving the conic
    // acts on it nontrivially and has isolated fixed points.
    let product_type = if degree == 1 && delta.is_zero() {
        ProductTypeVerdict::ProductType
    } else {
        ProductTypeVerdict::NotProductType
    };
    Ok(surface_case(
        &format!("plane-curve-{degree}"),
        pair,
        BaseSurface::ProjectivePlane,
        &plane_polarisation(delta),
        &[degree as i64],
        &[("line", &[1])],
        int(1),
        Some(beta),
        product_type,
    ))
}

fn plane_monomial_product_type(a: u64, b: u64, contact: ConicContact, delta: &Rat) -> ProductTypeVerdict {
    if delta.is_zero() {
        // Bare plane: every monomial valuation at a torus point is the
        // weight of a one-parameter subgroup of the big torus.
        ProductTypeVerdict::ProductType
    } else if contact == ConicContact::Tangent && (a, b) == (2, 1) {
        // The subgroup fixing a point of the conic acts with weights (2,1)
        // on coordinates in which the conic osculates the first axis.
        ProductTypeVerdict::ProductType
    } else {
        ProductTypeVerdict::NotProductType
    }
}

/// The `(a, b)`-monomial valuation at a plane point, with the stated contact
/// between the boundary conic and the first axis.
pub fn plane_monomial_case(
    a: u64,
    b: u64,
    contact: ConicContact,
    delta: &Rat,
) -> Result<DivisorCase, BuildError> {
    plane_monomial_case_with_id(
        format!("monomial-{a}-{b}-{}", contact.label()),
        a,
        b,
        contact,
        delta,
    )
}

fn plane_monomial_case_with_id(
    id: String,
    a: u64,
    b: u64,
    contact: ConicContact,
    delta: &Rat,
) -> Result<DivisorCase, BuildError> {
    let pair = delta_pair_plane(delta)?;
    let beta = formulas::plane_monomial(a, b, contact, delta)?;
    let description = plane_monomial_description(a, b, contact, delta)?;
    chain_case(
        id,
        pair,
        &description,
        Some(beta),
        plane_monomial_product_type(a, b, contact, delta),
        // The blown-up surface is toric (the conic only decorates the
        // boundary multiplicities): the strict axes, the line at infinity
        // and the exceptional curves are the torus-invariant curves, and
        // they generate the effective cone of any smooth toric surface.
        true,
    )
}

/// Single blowup of a point on the boundary conic, transversal model.
pub fn point_on_conic(delta: &Rat) -> Result<DivisorCase, BuildError> {
    plane_monomial_case_with_id(
        "point-on-conic".to_string(),
        1,
        1,
        ConicContact::Transversal,
        delta,
    )
}

/// Single blowup of a plane point away from the boundary conic.
pub fn generic_point(delta: &Rat) -> Result<DivisorCase, BuildError> {
    plane_monomial_case_with_id(
        "generic-point".to_string(),
        1,
        1,
        ConicContact::Disjoint,
        delta,
    )
}

/// The tail valuation over a line in the bare plane: `m − 1` blowups along
/// the line followed by one generic blowup on the last exceptional curve.
pub fn line_free_tail_case(m: usize) -> Result<DivisorCase, BuildError> {
    let beta = formulas::line_free_tail(m as u32)?;
    let description = line_free_tail_description(m)?;
    chain_case(
        format!("line-free-tail-{m}"),
        Pair::PlaneConic { delta: int(0) },
        &description,
        Some(beta),
        // The final point is generic on its exceptional curve, off every
        // torus-fixed locus, so no subgroup of automorphisms realises this
        // valuation as a weight.
        ProductTypeVerdict::NotProductType,
        // Any irreducible curve of degree d through the chain has
        // multiplicities μ1 ≥ … ≥ μm with μ1 + μ2 + μ3 ≤ d, which forces
        // d² ≥ Σμi², so every negative irreducible class already appears in
        // the catalog: strict line, exceptional curves, and lines through
        // the first point only.
        true,
    )
}

/// The nine-step valuation following a smooth cubic in the bare plane.
pub fn cubic_nine_case() -> Result<DivisorCase, BuildError> {
    chain_case(
        "cubic-nine".to_string(),
        Pair::PlaneConic { delta: int(0) },
        &cubic_nine_description(),
        // No closed form is pinned here; the slope is reported from the
        // sweep alone and cross-checked by the threshold identity in tests.
        None,
        ProductTypeVerdict::NotProductType,
        // The strict cubic has square zero on the nine-fold blowup and the
        // effective cone is not finitely generated there; the catalog cannot
        // claim generation, so the threshold stays heuristic.
        false,
    )
}

/// The boundary diagonal itself, as a divisor on the quadric.
pub fn boundary_diagonal(delta: &Rat) -> Result<DivisorCase, BuildError> {
    let pair = delta_pair_quadric(delta)?;
    let beta = formulas::quadric_boundary_diagonal(delta)?;
    Ok(surface_case(
        "boundary-diagonal",
        pair,
        BaseSurface::QuadricSurface,
        &quadric_polarisation(delta),
        &[1, 1],
        &[("fibre-1", &[1, 0]), ("fibre-2", &[0, 1])],
        int(1) - delta,
        Some(beta),
        // One-parameter subgroups preserving the diagonal have isolated
        // fixed points on the quadric, so no curve is their weight divisor.
        ProductTypeVerdict::NotProductType,
    ))
}

/// An irreducible curve of bidegree `(p, q)` on the quadric, distinct from
/// the boundary diagonal.
pub fn quadric_curve_case(p: u32, q: u32, delta: &Rat) -> Result<DivisorCase, BuildError> {
    let pair = delta_pair_quadric(delta)?;
    let beta = formulas::quadric_curve(p, q, delta)?;
    // A ruling fibre is the weight divisor of a subgroup scaling one factor,
    // but such subgroups move the diagonal; with boundary only isolated
    // fixed points remain.
    let product_type = if (p, q) != (1, 1) && delta.is_zero() {
        ProductTypeVerdict::ProductType
    } else {
        ProductTypeVerdict::NotProductType
    };
    Ok(surface_case(
        &format!("quadric-curve-{p}-{q}"),
        pair,
        BaseSurface::QuadricSurface,
        &quadric_polarisation(delta),
        &[p as i64, q as i64],
        &[("fibre-1", &[1, 0]), ("fibre-2", &[0, 1])],
        int(1),
        Some(beta),
        product_type,
    ))
}

fn quadric_monomial_product_type(
    a: u64,
    b: u64,
    contact: ConicContact,
    delta: &Rat,
) -> ProductTypeVerdict {
    if delta.is_zero() {
        ProductTypeVerdict::ProductType
    } else if (a, b) == (1, 1) && contact == ConicContact::Transversal {
        // The diagonal subgroup fixing a point of the diagonal acts with
        // equal weights on the two rulings through it.
        ProductTypeVerdict::ProductType
    } else {
        ProductTypeVerdict::NotProductType
    }
}

/// The `(a, b)`-monomial valuation at a quadric point where two rulings
/// cross, with the stated contact between the boundary diagonal and the
/// configuration.
pub fn quadric_monomial_case(
    a: u64,
    b: u64,
    contact: ConicContact,
    delta: &Rat,
) -> Result<DivisorCase, BuildError> {
    quadric_monomial_case_with_id(
        format!("monomial-{a}-{b}-{}", contact.label()),
        a,
        b,
        contact,
        delta,
    )
}

fn quadric_monomial_case_with_id(
    id: String,
    a: u64,
    b: u64,
    contact: ConicContact,
    delta: &Rat,
) -> Result<DivisorCase, BuildError> {
    let pair = delta_pair_quadric(delta)?;
    let beta = formulas::quadric_monomial(a, b, contact, delta)?;
    let description = quadric_monomial_description(a, b, contact, delta)?;
    chain_case(
        id,
        pair,
        &description,
        Some(beta),
        quadric_monomial_product_type(a, b, contact, delta),
        // Toric blowup of the quadric: the two rulings through the point,
        // the two opposite rulings and the exceptional curves are the
        // torus-invariant generators of the effective cone.
        true,
    )
}

/// Single blowup of a point on the boundary diagonal.
pub fn point_on_diagonal(delta: &Rat) -> Result<DivisorCase, BuildError> {
    quadric_monomial_case_with_id(
        "point-on-diagonal".to_string(),
        1,
        1,
        ConicContact::Transversal,
        delta,
    )
}

/// Single blowup of a quadric point away from the boundary diagonal.
pub fn quadric_generic_point(delta: &Rat) -> Result<DivisorCase, BuildError> {
    quadric_monomial_case_with_id(
        "generic-point".to_string(),
        1,
        1,
        ConicContact::Disjoint,
        delta,
    )
}

/// The weight-(3,2) valuation following the diagonal of the quadric.
pub fn diagonal_contact_case(delta: &Rat) -> Result<DivisorCase, BuildError> {
    let pair = delta_pair_quadric(delta)?;
    let beta = formulas::quadric_diagonal_contact(delta)?;
    let description = quadric_diagonal_contact_description(delta)?;
    chain_case(
        "diagonal-contact".to_string(),
        pair,
        &description,
        Some(beta),
        // In coordinates centred at the point this is the (2,3)-monomial
        // valuation transverse to the diagonal's branch; the subgroups
        // preserving the diagonal only produce corner or on-diagonal
        // weights, never this one.
        ProductTypeVerdict::NotProductType,
        // Any irreducible curve through the configuration other than the
        // catalog curves has multiplicities μ1 ≥ μ2 + μ3 (the second and
        // third points are satellites of the first) and decomposes against
        // the catalog with nonnegative coefficients, so the listed curves
        // generate the effective cone.
        true,
    )
}

fn hirzebruch_pair(m: u32, d1: &Rat, d2: &Rat) -> Result<Pair, BuildError> {
    let pair = Pair::Hirzebruch {
        m,
        section: d1.clone(),
        fibre: d2.clone(),
    };
    pair.validate()?;
    Ok(pair)
}

fn hirzebruch_polarisation(m: u32, d1: &Rat, d2: &Rat) -> Vec<Rat> {
    vec![int(2) - d1, int(i64::from(m)) + int(2) - d2]
}

/// The negative section of a Hirzebruch surface whose boundary is a multiple
/// of that section plus a multiple of one fibre.
pub fn negative_section_case(m: u32, d1: &Rat, d2: &Rat) -> Result<DivisorCase, BuildError> {
    let pair = hirzebruch_pair(m, d1, d2)?;
    let beta = formulas::hirzebruch_negative_section(m, d1, d2)?;
    Ok(surface_case(
        "negative-section",
        pair,
        BaseSurface::Hirzebruch(m),
        &hirzebruch_polarisation(m, d1, d2),
        &[1, 0],
        &[("negative-section", &[1, 0]), ("fibre", &[0, 1])],
        int(1) - d1,
        Some(beta),
        // Fibrewise scaling fixes the negative section, the positive
        // sections and every fibre, hence preserves the boundary.
        ProductTypeVerdict::ProductType,
    ))
}

/// The boundary fibre of a Hirzebruch surface whose boundary is a multiple
/// of the negative section plus a multiple of that fibre.
pub fn boundary_fibre_case(m: u32, d1: &Rat, d2: &Rat) -> Result<DivisorCase, BuildError> {
    let pair = hirzebruch_pair(m, d1, d2)?;
    let beta = formulas::hirzebruch_fibre(m, d1, d2)?;
    Ok(surface_case(
        "boundary-fibre",
        pair,
        BaseSurface::Hirzebruch(m),
        &hirzebruch_polarisation(m, d1, d2),
        &[0, 1],
        &[("negative-section", &[1, 0]), ("fibre", &[0, 1])],
        int(1) - d2,
        Some(beta),
        // Scaling along the base fixes the marked fibre, the opposite fibre
        // and both distinguished sections.
        ProductTypeVerdict::ProductType,
    ))
}

fn positive_section_boundary_pair(delta: &Rat) -> Result<Pair, BuildError> {
    let pair = Pair::HirzebruchPositiveSection {
        delta: delta.clone(),
    };
    pair.validate()?;
    Ok(pair)
}

/// The negative section of the first Hirzebruch surface when the boundary is
/// a multiple of a positive section.
pub fn f1_negative_section_case(delta: &Rat) -> Result<DivisorCase, BuildError> {
    let pair = positive_section_boundary_pair(delta)?;
    let (beta, _) = formulas::positive_section_pair(delta)?;
    Ok(surface_case(
        "negative-section",
        pair,
        BaseSurface::Hirzebruch(1),
        &[int(2) - delta, int(3) - delta],
        &[1, 0],
        &[("negative-section", &[1, 0]), ("fibre", &[0, 1])],
        int(1),
        Some(beta),
        // Fibrewise scaling fixes the negative section and any chosen
        // positive section simultaneously.
        ProductTypeVerdict::ProductType,
    ))
}

/// The boundary positive section of the first Hirzebruch surface.
pub fn f1_positive_section_case(delta: &Rat) -> Result<DivisorCase, BuildError> {
    let pair = positive_section_boundary_pair(delta)?;
    let (_, beta) = formulas::positive_section_pair(delta)?;
    Ok(surface_case(
        "positive-section",
        pair,
        BaseSurface::Hirzebruch(1),
        &[int(2) - delta, int(3) - delta],
        &[1, 1],
        &[("negative-section", &[1, 0]), ("fibre", &[0, 1])],
        int(1) - delta,
        Some(beta),
        ProductTypeVerdict::ProductType,
    ))
}

fn two_lines_pair(d1: &Rat, d2: &Rat) -> Result<Pair, BuildError> {
    let pair = Pair::TwoLines {
        first: d1.clone(),
        second: d2.clone(),
    };
    pair.validate()?;
    Ok(pair)
}

fn two_lines_polarisation(d1: &Rat, d2: &Rat) -> Vec<Rat> {
    vec![int(3) - d1 - d2]
}

/// The first boundary line of the plane pair with two boundary lines.
pub fn first_line_case(d1: &Rat, d2: &Rat) -> Result<DivisorCase, BuildError> {
    let pair = two_lines_pair(d1, d2)?;
    let (beta, _) = formulas::two_lines(d1, d2)?;
    Ok(surface_case(
        "line-1",
        pair,
        BaseSurface::ProjectivePlane,
        &two_lines_polarisation(d1, d2),
        &[1],
        &[("line", &[1])],
        int(1) - d1,
        Some(beta),
        // A diagonal subgroup fixing the intersection point and a third,
        // generic line fixes both boundary lines pointwise enough to have
        // either of them as its weight divisor.
        ProductTypeVerdict::ProductType,
    ))
}

/// The second boundary line of the plane pair with two boundary lines.
pub fn second_line_case(d1: &Rat, d2: &Rat) -> Result<DivisorCase, BuildError> {
    let pair = two_lines_pair(d1, d2)?;
    let (_, beta) = formulas::two_lines(d1, d2)?;
    Ok(surface_case(
        "line-2",
        pair,
        BaseSurface::ProjectivePlane,
        &two_lines_polarisation(d1, d2),
        &[1],
        &[("line", &[1])],
        int(1) - d2,
        Some(beta),
        ProductTypeVerdict::ProductType,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use picard_lattice::rat;

    #[test]
    fn mediant_walk_produces_the_expected_schedules() {
        let plan = monomial_plan(1, 1).unwrap();
        assert_eq!(plan.len(), 1);
        assert_eq!(
            plan.steps[0],
            MonomialStep {
                host: 0,
                on_first_axis: true,
                on_second_axis: true,
                weights: (1, 1)
            }
        );

        let plan = monomial_plan(3, 2).unwrap();
        assert_eq!(
            plan.steps,
            vec![
                MonomialStep {
                    host: 0,
                    on_first_axis: true,
                    on_second_axis: true,
                    weights: (1, 1)
                },
                MonomialStep {
                    host: 0,
                    on_first_axis: true,
                    on_second_axis: false,
                    weights: (2, 1)
                },
                MonomialStep {
                    host: 1,
                    on_first_axis: false,
                    on_second_axis: false,
                    weights: (3, 2)
                },
            ]
        );

        let plan = monomial_plan(4, 1).unwrap();
        assert_eq!(plan.len(), 4);
        assert!(plan.steps.iter().all(|s| s.host == 0));
        assert!(plan.steps.iter().all(|s| s.on_first_axis));
        assert_eq!(
            plan.steps.iter().filter(|s| s.on_second_axis).count(),
            1
        );
        assert_eq!(plan.steps[3].weights, (4, 1));
    }

    #[test]
    fn mediant_walk_rejects_degenerate_weights() {
        assert!(monomial_plan(0, 1).is_err());
        assert!(monomial_plan(2, 4).is_err());
    }

    #[test]
    fn tangent_chain_carries_the_conic_through_two_points() {
        let delta = rat(1, 2);
        let desc = plane_monomial_description(2, 1, ConicContact::Tangent, &delta).unwrap();
        assert_eq!(desc.points.len(), 2);
        assert_eq!(desc.points[0].multiplicities.get("conic"), Some(&1));
        assert_eq!(desc.points[1].multiplicities.get("conic"), Some(&1));
        let chain = BlowupChain::build(&desc).unwrap();
        // a + b − δ·min(2b, a) = 3 − 2δ = 2.
        assert_eq!(chain.log_discrepancy(), int(2));
        assert_eq!(chain.order_along("conic").unwrap(), int(2));
    }

    #[test]
    fn tangent_contact_requires_dominant_first_weight() {
        let delta = rat(1, 2);
        assert!(plane_monomial_description(1, 1, ConicContact::Tangent, &delta).is_err());
        assert!(plane_monomial_description(2, 3, ConicContact::Tangent, &delta).is_err());
    }

    #[test]
    fn diagonal_contact_chain_has_the_pinned_invariants() {
        let delta = rat(1, 2);
        let desc = quadric_diagonal_contact_description(&delta).unwrap();
        let chain = BlowupChain::build(&desc).unwrap();
        assert_eq!(chain.dual_norm(), int(6));
        assert_eq!(chain.order_along("diagonal").unwrap(), int(3));
        // a + b − 3δ = 5 − 3δ.
        assert_eq!(chain.log_discrepancy(), rat(7, 2));
        assert!(chain.is_path_configuration());
    }

    #[test]
    fn line_tail_chain_matches_hand_computed_invariants() {
        let desc = line_free_tail_description(4).unwrap();
        let chain = BlowupChain::build(&desc).unwrap();
        assert_eq!(chain.dual_norm(), int(4));
        assert_eq!(chain.log_discrepancy(), int(5));
        assert_eq!(chain.free_point_count(), 4);
        assert_eq!(chain.order_along("line").unwrap(), int(3));
    }

    #[test]
    fn cubic_nine_chain_matches_hand_computed_invariants() {
        let chain = BlowupChain::build(&cubic_nine_description()).unwrap();
        assert_eq!(chain.dual_norm(), int(9));
        assert_eq!(chain.log_discrepancy(), int(10));
        assert_eq!(chain.order_along("cubic").unwrap(), int(9));
        let strict = chain.strict_curve("cubic").unwrap();
        assert_eq!(chain.basis().intersect(strict, strict), int(0));
    }

    #[test]
    fn product_type_verdicts_follow_the_boundary() {
        let zero = int(0);
        let half = rat(1, 2);
        assert_eq!(
            plane_monomial_case(3, 2, ConicContact::Disjoint, &zero)
                .unwrap()
                .product_type,
            ProductTypeVerdict::ProductType
        );
        assert_eq!(
            plane_monomial_case(3, 2, ConicContact::Disjoint, &half)
                .unwrap()
                .product_type,
            ProductTypeVerdict::NotProductType
        );
        assert_eq!(
            plane_monomial_case(2, 1, ConicContact::Tangent, &half)
                .unwrap()
                .product_type,
            ProductTypeVerdict::ProductType
        );
        assert_eq!(
            point_on_diagonal(&half).unwrap().product_type,
            ProductTypeVerdict::ProductType
        );
        assert_eq!(
            quadric_generic_point(&half).unwrap().product_type,
            ProductTypeVerdict::NotProductType
        );
    }

    #[test]
    fn surface_cases_carry_their_log_discrepancies() {
        let half = rat(1, 2);
        assert_eq!(boundary_conic(&half).unwrap().log_discrepancy, rat(1, 2));
        assert_eq!(plane_curve_case(2, &half).unwrap().log_discrepancy, int(1));
        assert_eq!(
            boundary_diagonal(&half).unwrap().log_discrepancy,
            rat(1, 2)
        );
        assert_eq!(
            negative_section_case(2, &half, &rat(1, 4))
                .unwrap()
                .log_discrepancy,
            rat(1, 2)
        );
        assert_eq!(
            f1_positive_section_case(&half).unwrap().log_discrepancy,
            rat(1, 2)
        );
        assert_eq!(
            second_line_case(&rat(1, 4), &half).unwrap().log_discrepancy,
            rat(1, 2)
        );
    }

    #[test]
    fn chain_cases_mark_their_catalogs() {
        let zero = int(0);
        assert!(
            plane_monomial_case(2, 1, ConicContact::Disjoint, &zero)
                .unwrap()
                .input
                .catalog
                .cone_generating
        );
        assert!(line_free_tail_case(4).unwrap().input.catalog.cone_generating);
        assert!(!cubic_nine_case().unwrap().input.catalog.cone_generating);
        assert!(diagonal_contact_case(&zero)
            .unwrap()
            .input
            .catalog
            .cone_generating);
    }
}
