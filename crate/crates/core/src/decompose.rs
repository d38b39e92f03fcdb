//! Greedy decomposition of a nef class into Minkowski basis elements.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::basis::{basis_element_for_support, boundary_element, BasisElement};
use crate::divisor::DivClass;
use crate::error::{Error, Result};
use crate::lattice::SurfaceModel;
use crate::rat::Rat;
use crate::zariski::{null_set, zariski_decompose, ChamberSupport};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub weight: Rat,
    pub element: BasisElement,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    /// The class passed in.
    pub input: DivClass,
    /// The nef class that was decomposed: the input, or its positive part.
    pub decomposed: DivClass,
    /// Negative part dropped before decomposing (empty for nef input).
    pub dropped_negative: BTreeMap<usize, Rat>,
    pub terms: Vec<Term>,
}

impl Decomposition {
    /// `sum weight_i * M_i`.
    pub fn reconstruct(&self, rank: usize) -> DivClass {
        self.terms.iter().fold(DivClass::zero(rank), |acc, t| {
            acc + t.element.divisor.scale(&t.weight)
        })
    }

    /// Supports used, in order.
    pub fn supports(&self) -> Vec<&ChamberSupport> {
        self.terms.iter().map(|t| &t.element.support).collect()
    }
}

/// The largest `tau` with `d - tau*m` nef, for nef `d` and nonzero nef `m`.
pub fn tau_max(s: &SurfaceModel, d: &DivClass, m: &DivClass) -> Result<Rat> {
    s.require_nef(d, "class")?;
    s.require_nef(m, "basis class")?;
    if m.is_zero() {
        return Err(Error::Input("tau_max needs a nonzero direction".into()));
    }
    (0..s.eff_generators().len())
        .filter_map(|j| {
            let mg = s.dot_eff(m, j);
            mg.is_positive().then(|| s.dot_eff(d, j) / mg)
        })
        .min()
        .ok_or_else(|| {
            Error::Domain(format!(
                "{} - t*{} stays nef for every t",
                s.display(d),
                s.display(m)
            ))
        })
}

/// Writes a nef class as `sum a_i M_i` with `a_i > 0` and `M_i` Minkowski basis
/// elements whose supports strictly increase.
pub fn decompose(s: &SurfaceModel, d: &DivClass) -> Result<Decomposition> {
    s.require_nef(d, "class")?;
    let terms = greedy(s, d)?;
    let out = Decomposition {
        input: d.clone(),
        decomposed: d.clone(),
        dropped_negative: BTreeMap::new(),
        terms,
    };
    if out.reconstruct(s.rank()) != *d {
        return Err(Error::Internal(
            "decomposition does not sum to the input".into(),
        ));
    }
    Ok(out)
}

fn greedy(s: &SurfaceModel, d: &DivClass) -> Result<Vec<Term>> {
    let mut rest = d.clone();
    let mut terms: Vec<Term> = Vec::new();
    for _ in 0..=s.negative_curves().len() + 1 {
        if rest.is_zero() {
            return Ok(terms);
        }
        if s.square(&rest).is_zero() {
            let ray = rest.primitive_integral()?;
            if !s.nef_cone()?.generators().contains(&ray) {
                return Err(Error::Internal(format!(
                    "remainder {} has square zero but is not a nef boundary ray",
                    s.display(&rest)
                )));
            }
            let weight = rest
                .ratio_to(&ray)
                .expect("multiple of its primitive class");
            terms.push(Term {
                weight,
                element: boundary_element(s, ray)?,
            });
            return Ok(terms);
        }
        let supp = null_set(s, &rest)?;
        if let Some(prev) = terms.last() {
            let prev = &prev.element.support;
            if !(prev.is_subset(&supp) && prev != &supp) {
                return Err(Error::Internal(format!(
                    "support chain did not grow: {:?} then {:?}",
                    prev.indices(),
                    supp.indices()
                )));
            }
        }
        let element = basis_element_for_support(s, &supp)?.ok_or_else(|| {
            Error::Internal(format!(
                "Null({}) has no nef basis element",
                s.display(&rest)
            ))
        })?;
        let tau = tau_max(s, &rest, &element.divisor)?;
        rest = &rest - &element.divisor.scale(&tau);
        debug_assert!(s.is_nef(&rest));
        terms.push(Term {
            weight: tau,
            element,
        });
    }
    Err(Error::Internal("decomposition did not terminate".into()))
}

/// Decomposes the positive part of a big class and records the dropped
/// negative part.
pub fn decompose_big(s: &SurfaceModel, d: &DivClass) -> Result<Decomposition> {
    let z = zariski_decompose(s, d)?;
    if !s.square(&z.positive).is_positive() {
        return Err(Error::Domain(format!("{} is not big", s.display(d))));
    }
    let mut out = decompose(s, &z.positive)?;
    out.input = d.clone();
    out.dropped_negative = z.negative_coeffs;
    Ok(out)
}
