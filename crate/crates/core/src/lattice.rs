//! Intersection theory on the Néron–Severi lattice of a surface.

use std::collections::HashMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::basis::BasisElement;
use crate::cone::{dual_cone, Cone};
use crate::divisor::DivClass;
use crate::error::{Error, Result};
use crate::linalg;
use crate::rat::Rat;
use crate::zariski::ChamberSupport;

/// Symmetric integer intersection matrix of signature `(1, rank - 1)`.
#[derive(Clone, PartialEq, Eq)]
pub struct IntersectionForm {
    matrix: Vec<Vec<i64>>,
}

impl IntersectionForm {
    /// Validates shape, symmetry and the Hodge-index signature.
    pub fn new(matrix: Vec<Vec<i64>>) -> Result<Self> {
        let n = matrix.len();
        if n == 0 {
            return Err(Error::Input("intersection matrix is empty".into()));
        }
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Input(format!(
                    "intersection matrix row {i} has length {}, expected {n}",
                    row.len()
                )));
            }
            for (j, x) in row.iter().enumerate().take(i) {
                if *x != matrix[j][i] {
                    return Err(Error::Input(format!(
                        "intersection matrix is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        let rat: Vec<Vec<Rat>> = matrix
            .iter()
            .map(|r| r.iter().map(|&x| Rat::from_integer(x.into())).collect())
            .collect();
        let (pos, neg, zero) = linalg::inertia(&rat);
        if pos != 1 || neg != n - 1 || zero != 0 {
            return Err(Error::Input(format!(
                "intersection form has signature ({pos}, {neg}) with {zero}-dimensional kernel; \
                 the Hodge index theorem requires (1, {})",
                n - 1
            )));
        }
        Ok(Self { matrix })
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    /// `J v` for an integer vector `v`.
    pub fn apply_int(&self, v: &[i64]) -> Vec<i64> {
        self.matrix
            .iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn pair(&self, a: &DivClass, b: &DivClass) -> Rat {
        let (na, nb) = (a.numerators(), b.numerators());
        let mut s = BigInt::zero();
        for (i, row) in self.matrix.iter().enumerate() {
            if na[i].is_zero() {
                continue;
            }
            let mut t = BigInt::zero();
            for (j, &m) in row.iter().enumerate() {
                if m != 0 && !nb[j].is_zero() {
                    t += &nb[j] * m;
                }
            }
            s += &na[i] * t;
        }
        Rat::new(s, a.denominator() * b.denominator())
    }
}

impl fmt::Debug for IntersectionForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntersectionForm({:?})", self.matrix)
    }
}

/// A smooth projective surface with rational polyhedral pseudo-effective cone,
/// together with the class of the flag curve.
///
/// The nef cone, the facets of the effective cone and Minkowski basis elements
/// are computed on first use and cached; the cache is safe to read concurrently.
pub struct SurfaceModel {
    labels: Vec<String>,
    form: IntersectionForm,
    eff: Cone,
    flag: DivClass,
    negative: Vec<DivClass>,
    eff_functionals: Vec<Vec<i64>>,
    neg_functionals: Vec<Vec<i64>>,
    neg_int: Vec<Vec<i64>>,
    flag_functional: Vec<i64>,
    nef: OnceLock<Cone>,
    pub(crate) basis_cache: RwLock<HashMap<ChamberSupport, Option<BasisElement>>>,
}

impl Clone for SurfaceModel {
    fn clone(&self) -> Self {
        Self {
            labels: self.labels.clone(),
            form: self.form.clone(),
            eff: self.eff.clone(),
            flag: self.flag.clone(),
            negative: self.negative.clone(),
            eff_functionals: self.eff_functionals.clone(),
            neg_functionals: self.neg_functionals.clone(),
            neg_int: self.neg_int.clone(),
            flag_functional: self.flag_functional.clone(),
            nef: self.nef.clone(),
            basis_cache: RwLock::new(HashMap::new()),
        }
    }
}

impl fmt::Debug for SurfaceModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SurfaceModel")
            .field("labels", &self.labels)
            .field("form", &self.form)
            .field("eff_generators", &self.eff.generators())
            .field("flag_curve", &self.flag)
            .field("negative_curves", &self.negative)
            .finish()
    }
}

impl PartialEq for SurfaceModel {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels
            && self.form == other.form
            && self.eff.generators() == other.eff.generators()
            && self.flag == other.flag
            && self.negative == other.negative
    }
}

impl SurfaceModel {
    /// Builds and validates a model. When `negative_curves` is `None` they are
    /// taken to be the effective generators of negative self-intersection.
    pub fn new(
        labels: Vec<String>,
        form: IntersectionForm,
        eff_generators: Vec<DivClass>,
        flag_curve: DivClass,
        negative_curves: Option<Vec<DivClass>>,
    ) -> Result<Self> {
        let rank = form.rank();
        if labels.len() != rank {
            return Err(Error::Input(format!(
                "{} labels given for rank {rank}",
                labels.len()
            )));
        }
        if eff_generators.is_empty() {
            return Err(Error::Input("no effective generators".into()));
        }
        let int_vec = |what: &str, d: &DivClass| -> Result<Vec<i64>> {
            if d.rank() != rank {
                return Err(Error::Input(format!(
                    "{what} {d} has {} coordinates, expected {rank}",
                    d.rank()
                )));
            }
            d.to_i64()
                .ok_or_else(|| Error::Input(format!("{what} {d} is not integral")))
        };
        let mut eff_int = Vec::with_capacity(eff_generators.len());
        for g in &eff_generators {
            let v = int_vec("effective generator", g)?;
            if g.is_zero() {
                return Err(Error::Input("zero effective generator".into()));
            }
            eff_int.push(v);
        }
        let flag_int = int_vec("flag curve", &flag_curve)?;
        if !form.pair(&flag_curve, &flag_curve).is_positive() {
            return Err(Error::Input(format!(
                "flag curve {flag_curve} must have positive self-intersection"
            )));
        }
        for g in &eff_generators {
            if form.pair(&flag_curve, g).is_negative() {
                return Err(Error::Input(format!(
                    "flag curve {flag_curve} is not nef: negative against generator {g}"
                )));
            }
        }
        let negative = match negative_curves {
            Some(list) => list,
            None => eff_generators
                .iter()
                .filter(|g| form.pair(g, g).is_negative())
                .cloned()
                .collect(),
        };
        let mut neg_int = Vec::with_capacity(negative.len());
        for (i, n) in negative.iter().enumerate() {
            let v = int_vec("negative curve", n)?;
            if n.primitive_integral()? != *n {
                return Err(Error::Input(format!(
                    "negative curve {n} is not a primitive integral class"
                )));
            }
            if !form.pair(n, n).is_negative() {
                return Err(Error::Input(format!(
                    "negative curve {n} has nonnegative self-intersection"
                )));
            }
            if !eff_generators.contains(n) {
                return Err(Error::Input(format!(
                    "negative curve {n} is not an effective generator"
                )));
            }
            if negative[..i].contains(n) {
                return Err(Error::Input(format!("negative curve {n} listed twice")));
            }
            neg_int.push(v);
        }
        let eff_functionals = eff_int.iter().map(|g| form.apply_int(g)).collect();
        let neg_functionals = neg_int.iter().map(|g| form.apply_int(g)).collect();
        let flag_functional = form.apply_int(&flag_int);
        Ok(Self {
            labels,
            eff: Cone::new(rank, eff_generators)?,
            form,
            flag: flag_curve,
            negative,
            eff_functionals,
            neg_functionals,
            neg_int,
            flag_functional,
            nef: OnceLock::new(),
            basis_cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn rank(&self) -> usize {
        self.form.rank()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn form(&self) -> &IntersectionForm {
        &self.form
    }

    pub fn eff_cone(&self) -> &Cone {
        &self.eff
    }

    pub fn eff_generators(&self) -> &[DivClass] {
        self.eff.generators()
    }

    pub fn flag_curve(&self) -> &DivClass {
        &self.flag
    }

    pub fn negative_curves(&self) -> &[DivClass] {
        &self.negative
    }

    pub(crate) fn negative_int(&self, i: usize) -> &[i64] {
        &self.neg_int[i]
    }

    pub fn display(&self, d: &DivClass) -> String {
        d.display_with(&self.labels)
    }

    pub(crate) fn check(&self, d: &DivClass) -> Result<()> {
        if d.rank() != self.rank() {
            return Err(Error::Input(format!(
                "divisor {d} has {} coordinates, surface has rank {}",
                d.rank(),
                self.rank()
            )));
        }
        Ok(())
    }

    pub fn intersect(&self, a: &DivClass, b: &DivClass) -> Result<Rat> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.form.pair(a, b))
    }

    pub fn square(&self, d: &DivClass) -> Rat {
        self.form.pair(d, d)
    }

    /// `d . N_i` for the i-th negative curve.
    pub fn dot_negative(&self, d: &DivClass, i: usize) -> Rat {
        d.eval(&self.neg_functionals[i])
    }

    /// `d . G_j` for the j-th effective generator.
    pub fn dot_eff(&self, d: &DivClass, j: usize) -> Rat {
        d.eval(&self.eff_functionals[j])
    }

    /// `C . d` for the flag curve `C`.
    pub fn dot_flag(&self, d: &DivClass) -> Rat {
        d.eval(&self.flag_functional)
    }

    /// Index of the first effective generator that `d` meets negatively.
    pub fn first_non_nef_witness(&self, d: &DivClass) -> Option<usize> {
        (0..self.eff_functionals.len()).find(|&j| self.dot_eff(d, j).is_negative())
    }

    pub fn is_nef(&self, d: &DivClass) -> bool {
        self.first_non_nef_witness(d).is_none()
    }

    pub(crate) fn require_nef(&self, d: &DivClass, what: &str) -> Result<()> {
        self.check(d)?;
        if let Some(j) = self.first_non_nef_witness(d) {
            let g = &self.eff_generators()[j];
            return Err(Error::Domain(format!(
                "{what} {} is not nef: ({}) . ({}) = {}",
                self.display(d),
                self.display(d),
                self.display(g),
                self.dot_eff(d, j)
            )));
        }
        Ok(())
    }

    /// The nef cone, dual to the effective cone under the intersection form.
    pub fn nef_cone(&self) -> Result<&Cone> {
        if let Some(c) = self.nef.get() {
            return Ok(c);
        }
        let nef = dual_cone(self, &self.eff)?;
        // Facets of Eff are the functionals x -> R . x for nef rays R.
        let facets: Vec<Vec<i64>> = nef
            .generators()
            .iter()
            .map(|r| {
                let v = r.to_i64().expect("nef rays are integral");
                let f = self.form.apply_int(&v);
                DivClass::from_ints(&f).primitive_integral().and_then(|p| {
                    p.to_i64()
                        .ok_or_else(|| Error::Internal("facet overflow".into()))
                })
            })
            .collect::<Result<_>>()?;
        self.eff.seed_facets(facets);
        let _ = self.nef.set(nef);
        Ok(self.nef.get().expect("just set"))
    }

    /// Facet functionals of the effective cone (`f . x >= 0` inside).
    pub fn eff_facets(&self) -> Result<&[Vec<i64>]> {
        self.nef_cone()?;
        self.eff.facets()
    }

    pub fn is_pseudo_effective(&self, d: &DivClass) -> Result<bool> {
        self.check(d)?;
        Ok(self.violated_eff_facet(d)?.is_none())
    }

    pub(crate) fn violated_eff_facet(&self, d: &DivClass) -> Result<Option<&Vec<i64>>> {
        let facets = self.eff_facets()?;
        if let Some(n) = d.small_numerators() {
            let mut overflow = false;
            for f in facets {
                match DivClass::small_eval(&n, f) {
                    Some(x) if x < 0 => return Ok(Some(f)),
                    Some(_) => {}
                    None => {
                        overflow = true;
                        break;
                    }
                }
            }
            if !overflow {
                return Ok(None);
            }
        }
        Ok(facets.iter().find(|f| d.eval(f).is_negative()))
    }

    pub(crate) fn require_pseudo_effective(&self, d: &DivClass) -> Result<()> {
        self.check(d)?;
        if let Some(f) = self.violated_eff_facet(d)? {
            return Err(Error::Domain(format!(
                "{} is not pseudo-effective: facet functional {:?} of Eff evaluates to {}",
                self.display(d),
                f,
                d.eval(f)
            )));
        }
        Ok(())
    }

    /// Gram matrix of a set of negative curves.
    pub fn gram(&self, subset: &[usize]) -> Vec<Vec<i64>> {
        subset
            .iter()
            .map(|&i| {
                subset
                    .iter()
                    .map(|&j| {
                        self.neg_functionals[i]
                            .iter()
                            .zip(&self.neg_int[j])
                            .map(|(a, b)| a * b)
                            .sum()
                    })
                    .collect()
            })
            .collect()
    }
}

/// `a . b` under the surface's intersection form.
pub fn intersect(s: &SurfaceModel, a: &DivClass, b: &DivClass) -> Result<Rat> {
    s.intersect(a, b)
}

/// Whether the Gram matrix of the chosen negative curves is negative definite.
/// The empty set is negative definite.
pub fn is_negative_definite(s: &SurfaceModel, subset: &[usize]) -> Result<bool> {
    if let Some(&bad) = subset.iter().find(|&&i| i >= s.negative_curves().len()) {
        return Err(Error::Input(format!(
            "negative-curve index {bad} out of range ({} curves)",
            s.negative_curves().len()
        )));
    }
    Ok(linalg::is_negative_definite_int(&s.gram(subset)))
}

/// The positive multiple of `v` with coprime integer coordinates.
pub fn primitive_integral(v: &DivClass) -> Result<DivClass> {
    v.primitive_integral()
}
