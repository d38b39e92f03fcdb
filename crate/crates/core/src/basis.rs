//! Minkowski basis: one element per Zariski chamber support, plus the nef
//! boundary rays of square zero.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::body::{mu, SimplexSpec};
use crate::divisor::DivClass;
use crate::error::{Error, Result};
use crate::lattice::SurfaceModel;
use crate::linalg;
use crate::par;
use crate::rat::Rat;
use crate::zariski::{enumerate_chamber_supports, null_set, ChamberSupport};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    /// Primitive integral nef class.
    pub divisor: DivClass,
    /// `Null(divisor)` for chamber elements, empty for boundary rays.
    pub support: ChamberSupport,
    /// `C . divisor`.
    pub height: Rat,
    /// `mu_C(divisor)`; 0 for boundary rays.
    pub length: Rat,
    /// Coefficient of `C` in `divisor = d C + sum a_i N_i`; 0 for boundary rays.
    pub d_coeff: Rat,
}

impl BasisElement {
    pub fn simplex(&self) -> SimplexSpec {
        SimplexSpec::new(self.height.clone(), self.length.clone())
            .expect("basis heights and lengths are nonnegative")
    }
}

/// Distinct basis classes, with the element each chamber support maps to.
#[derive(Clone, Debug)]
pub struct MinkowskiBasis {
    /// Chamber elements (each stored with its full `Null` set), then boundary rays.
    pub elements: Vec<BasisElement>,
    /// Every chamber support and the index of its element.
    pub chambers: BTreeMap<ChamberSupport, usize>,
}

impl MinkowskiBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn for_support(&self, supp: &ChamberSupport) -> Option<&BasisElement> {
        self.chambers.get(supp).map(|&i| &self.elements[i])
    }

    pub fn contains(&self, d: &DivClass) -> bool {
        self.elements.iter().any(|e| &e.divisor == d)
    }

    /// Distinct `(height, length)` pairs.
    pub fn building_blocks(&self) -> Vec<(Rat, Rat)> {
        let mut out: Vec<(Rat, Rat)> = self
            .elements
            .iter()
            .map(|e| (e.height.clone(), e.length.clone()))
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

fn validate_support(s: &SurfaceModel, supp: &ChamberSupport) -> Result<()> {
    let n = s.negative_curves().len();
    if let Some(&bad) = supp.indices().iter().find(|&&i| i >= n) {
        return Err(Error::Input(format!(
            "negative-curve index {bad} out of range ({n} curves)"
        )));
    }
    if !linalg::is_negative_definite_int(&s.gram(supp.indices())) {
        return Err(Error::Input(format!(
            "curves {:?} do not span a negative definite lattice",
            supp.indices()
        )));
    }
    Ok(())
}

/// The basis element attached to `supp`: `M = C + sum a_i N_i` with
/// `M . N_j = 0` for `j` in `supp`, made primitive. `None` when `M` is not nef.
pub fn basis_element_for_support(
    s: &SurfaceModel,
    supp: &ChamberSupport,
) -> Result<Option<BasisElement>> {
    if let Some(hit) = s.basis_cache.read().expect("cache lock").get(supp) {
        return Ok(hit.clone());
    }
    validate_support(s, supp)?;
    let computed = compute_element(s, supp)?;
    s.basis_cache
        .write()
        .expect("cache lock")
        .insert(supp.clone(), computed.clone());
    Ok(computed)
}

fn compute_element(s: &SurfaceModel, supp: &ChamberSupport) -> Result<Option<BasisElement>> {
    let c = s.flag_curve();
    let idx = supp.indices();
    let mut m = c.clone();
    if !idx.is_empty() {
        let g: Vec<Vec<Rat>> = s
            .gram(idx)
            .iter()
            .map(|r| r.iter().map(|&x| Rat::from_integer(x.into())).collect())
            .collect();
        let rhs: Vec<Vec<Rat>> = idx.iter().map(|&i| vec![-s.dot_negative(c, i)]).collect();
        let a = linalg::solve(&g, &rhs)
            .ok_or_else(|| Error::Internal("singular negative definite Gram matrix".into()))?;
        for (&i, ai) in idx.iter().zip(&a) {
            m = m + s.negative_curves()[i].scale(&ai[0]);
        }
    }
    if !s.is_nef(&m) {
        return Ok(None);
    }
    let divisor = m.primitive_integral()?;
    let d_coeff = m
        .ratio_to(&divisor)
        .map(|r| Rat::one() / r)
        .ok_or_else(|| Error::Internal("primitive class is not a multiple".into()))?;
    Ok(Some(finish(s, divisor, supp.clone(), d_coeff)?))
}

fn finish(
    s: &SurfaceModel,
    divisor: DivClass,
    support: ChamberSupport,
    d_coeff: Rat,
) -> Result<BasisElement> {
    let height = s.dot_flag(&divisor);
    let length = mu(s, &divisor)?;
    Ok(BasisElement {
        divisor,
        support,
        height,
        length,
        d_coeff,
    })
}

/// Extreme rays of the nef cone with square zero (primitive integral).
pub fn nef_boundary_rays(s: &SurfaceModel) -> Result<Vec<DivClass>> {
    Ok(s.nef_cone()?
        .generators()
        .iter()
        .filter(|r| s.square(r).is_zero())
        .cloned()
        .collect())
}

pub(crate) fn boundary_element(s: &SurfaceModel, ray: DivClass) -> Result<BasisElement> {
    finish(s, ray, ChamberSupport::empty(), Rat::zero())
}

/// One element per distinct chamber class, then the square-zero nef rays not
/// already present.
pub fn minkowski_basis(s: &SurfaceModel) -> Result<MinkowskiBasis> {
    let supports = enumerate_chamber_supports(s)?;
    let found = par::map(&supports, |supp| basis_element_for_support(s, supp));
    let mut by_class: BTreeMap<DivClass, Vec<ChamberSupport>> = BTreeMap::new();
    for (supp, el) in supports.iter().zip(found) {
        let el = el?.ok_or_else(|| {
            Error::Internal(format!(
                "chamber support {:?} produced a class that is not nef",
                supp.indices()
            ))
        })?;
        by_class.entry(el.divisor).or_default().push(supp.clone());
    }
    let mut elements = Vec::new();
    let mut chambers = BTreeMap::new();
    let mut ordered: Vec<(DivClass, Vec<ChamberSupport>)> = by_class.into_iter().collect();
    ordered.sort_by(|a, b| a.1[0].cmp(&b.1[0]));
    for (class, supps) in ordered {
        let full = null_set(s, &class)?;
        if !supps.contains(&full) {
            return Err(Error::Internal(format!(
                "Null({}) is not among the chamber supports",
                s.display(&class)
            )));
        }
        let el = basis_element_for_support(s, &full)?
            .ok_or_else(|| Error::Internal("chamber element vanished".into()))?;
        for supp in supps {
            chambers.insert(supp, elements.len());
        }
        elements.push(el);
    }
    for ray in nef_boundary_rays(s)? {
        if !elements.iter().any(|e| e.divisor == ray) {
            elements.push(boundary_element(s, ray)?);
        }
    }
    Ok(MinkowskiBasis { elements, chambers })
}
