//! Input data for a volume sweep: the lattice, the polarisation, the sweep
//! direction and a catalog of curves that can appear in negative parts or
//! effective decompositions.

use blowup_chain::BlowupChain;
use picard_lattice::{DivisorClass, PicardBasis, Rat};
use thiserror::Error;

/// One curve the sweep may interact with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveEntry {
    pub label: String,
    pub class: DivisorClass,
}

/// The curves available to the sweep. `cone_generating` asserts that the
/// entries generate the effective cone of the surface; only constructors
/// that can justify this geometrically should set it, since certified
/// thresholds depend on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveCatalog {
    pub entries: Vec<CurveEntry>,
    pub cone_generating: bool,
}

impl CurveCatalog {
    pub fn labels(&self) -> Vec<String> {
        self.entries.iter().map(|e| e.label.clone()).collect()
    }

    /// Adds an entry unless one with the same class is already present.
    pub fn push_unique(&mut self, label: &str, class: DivisorClass) {
        if !self.entries.iter().any(|e| e.class == class) {
            self.entries.push(CurveEntry {
                label: label.to_string(),
                class,
            });
        }
    }
}

/// Full sweep input: the family of classes `L − x·direction` on the lattice.
#[derive(Debug, Clone)]
pub struct SweepInput {
    pub basis: PicardBasis,
    pub polarisation: DivisorClass,
    pub direction: DivisorClass,
    pub catalog: CurveCatalog,
}

/// Errors turning a blowup chain into a sweep input.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum CatalogError {
    #[error(
        "the quadric chain must declare both fibres through the first point \
         (base classes [1,0] and [0,1] with multiplicity at point 1); these \
         curves are unique and cannot be synthesised"
    )]
    MissingFibre,
}

/// Builds the sweep for `−(K + boundary) − x·(extracted divisor)` from a
/// validated chain.
///
/// The catalog holds the strict transforms of all declared curves and all
/// exceptional curves. Over the plane it also receives a general line (which
/// misses every centre) and a general member of the pencil of lines through
/// the first point (which meets only the first centre); both exist for any
/// chain. Over the quadric the two fibres through the first point are unique
/// curves whose behaviour along the chain cannot be guessed, so they must be
/// declared explicitly; only the two far fibres are added automatically.
///
/// `cone_generating` is left `false`: this function cannot know whether the
/// declared curves exhaust the effective cone. Family constructors with a
/// geometric argument may set it afterwards.
pub fn sweep_input_from_chain(chain: &BlowupChain) -> Result<SweepInput, CatalogError> {
    let basis = chain.basis().clone();
    let mut catalog = CurveCatalog {
        entries: Vec::new(),
        cone_generating: false,
    };
    for id in chain.curve_ids() {
        catalog.entries.push(CurveEntry {
            label: id.to_string(),
            class: chain.strict_curve(id).expect("declared curve").clone(),
        });
    }
    for i in 1..=chain.step_count() {
        catalog.entries.push(CurveEntry {
            label: format!("E{i}"),
            class: chain.exceptional_strict(i).clone(),
        });
    }
    match basis.surface {
        picard_lattice::BaseSurface::ProjectivePlane => {
            let far = basis.class_from_base(&[1]);
            catalog.push_unique("far-line", far);
            let through_first = &basis.class_from_base(&[1]) - &basis.exceptional(1);
            catalog.push_unique("line-p1", through_first);
        }
        picard_lattice::BaseSurface::QuadricSurface => {
            for (idx, fibre_class) in [[1i64, 0], [0, 1]].iter().enumerate() {
                let has_fibre = chain.curve_ids().any(|id| {
                    chain.base_class_of(id).expect("declared curve") == fibre_class.as_slice()
                        && chain.multiplicity(1, id).expect("declared curve") >= 1
                });
                if !has_fibre {
                    return Err(CatalogError::MissingFibre);
                }
                let far = basis.class_from_base(fibre_class);
                catalog.push_unique(&format!("far-fibre-{}", idx + 1), far);
            }
        }
        picard_lattice::BaseSurface::Hirzebruch(_) => {
            unreachable!("chains are never built over Hirzebruch surfaces")
        }
    }
    Ok(SweepInput {
        polarisation: chain.log_anticanonical(),
        direction: chain.valuation_direction(),
        basis,
        catalog,
    })
}

/// Number of sections `(M·(M−K))/2 + 1` predicted by Riemann–Roch for a nef
/// class with vanishing higher cohomology on a rational surface.
pub fn riemann_roch_sections(basis: &PicardBasis, class: &DivisorClass) -> Rat {
    let k = basis.canonical_class();
    let m_minus_k = class - &k;
    basis.intersect(class, &m_minus_k) / picard_lattice::int(2) + Rat::from_integer(1.into())
}
