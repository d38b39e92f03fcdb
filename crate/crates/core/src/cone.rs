//! Rational polyhedral cones with a generator and a facet description.

use std::sync::OnceLock;

use num_traits::{Signed, Zero};

use crate::dd;
use crate::divisor::DivClass;
use crate::error::{Error, Result};
use crate::lattice::SurfaceModel;
use crate::linalg;
use crate::par;
use crate::rat::Rat;

/// A cone given by generators; the facet functionals (`f . x >= 0` inside,
/// primitive integer vectors in the standard pairing) are derived on demand.
#[derive(Debug, Clone)]
pub struct Cone {
    rank: usize,
    generators: Vec<DivClass>,
    facets: OnceLock<Vec<Vec<i64>>>,
}

impl Cone {
    pub fn new(rank: usize, generators: Vec<DivClass>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.rank() != rank) {
            return Err(Error::Input(format!(
                "cone generator {g} has {} coordinates, expected {rank}",
                g.rank()
            )));
        }
        Ok(Self {
            rank,
            generators,
            facets: OnceLock::new(),
        })
    }

    pub(crate) fn with_facets(
        rank: usize,
        generators: Vec<DivClass>,
        facets: Vec<Vec<i64>>,
    ) -> Self {
        let cell = OnceLock::new();
        let _ = cell.set(facets);
        Self {
            rank,
            generators,
            facets: cell,
        }
    }

    pub(crate) fn seed_facets(&self, facets: Vec<Vec<i64>>) {
        let _ = self.facets.set(facets);
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &[DivClass] {
        &self.generators
    }

    /// Facet functionals. Equations of a lower-dimensional cone appear as `+-` pairs.
    pub fn facets(&self) -> Result<&[Vec<i64>]> {
        if let Some(f) = self.facets.get() {
            return Ok(f);
        }
        let gens = integral_generators(&self.generators)?;
        let facets = if gens.is_empty() {
            // The zero cone: every coordinate vanishes.
            (0..self.rank)
                .flat_map(|i| {
                    let mut e = vec![0i64; self.rank];
                    e[i] = 1;
                    let neg = e.iter().map(|x| -x).collect();
                    [e, neg]
                })
                .collect()
        } else {
            let polar = dd::extreme_rays(&gens, self.rank)?;
            let mut out = polar.rays;
            for l in polar.lineality {
                out.push(l.iter().map(|x| -x).collect());
                out.push(l);
            }
            out
        };
        let _ = self.facets.set(facets);
        Ok(self.facets.get().expect("just set"))
    }

    pub fn contains(&self, v: &DivClass) -> Result<bool> {
        if v.rank() != self.rank {
            return Err(Error::Input(format!(
                "vector {v} has {} coordinates, cone has rank {}",
                v.rank(),
                self.rank
            )));
        }
        Ok(self.facets()?.iter().all(|f| !v.eval(f).is_negative()))
    }
}

fn integral_generators(gens: &[DivClass]) -> Result<Vec<Vec<i64>>> {
    let mut out: Vec<Vec<i64>> = Vec::new();
    for g in gens.iter().filter(|g| !g.is_zero()) {
        let p = g
            .primitive_integral()?
            .to_i64()
            .ok_or_else(|| Error::Input(format!("generator {g} does not fit in 64 bits")))?;
        if !out.contains(&p) {
            out.push(p);
        }
    }
    Ok(out)
}

/// True iff every facet functional is nonnegative at `v`.
pub fn cone_contains(c: &Cone, v: &DivClass) -> Result<bool> {
    c.contains(v)
}

/// `{x : x . g >= 0 for all generators g of c}` under the surface's intersection
/// form, with extreme rays (primitive integral) and facets populated.
pub fn dual_cone(s: &SurfaceModel, c: &Cone) -> Result<Cone> {
    if c.rank() != s.rank() {
        return Err(Error::Input(format!(
            "cone of rank {} on a surface of rank {}",
            c.rank(),
            s.rank()
        )));
    }
    let gens = integral_generators(c.generators())?;
    if gens.is_empty() {
        return Err(Error::Input(
            "dual of a cone with only zero generators".into(),
        ));
    }
    let mut constraints: Vec<Vec<i64>> = Vec::with_capacity(gens.len());
    for g in &gens {
        let f = DivClass::from_ints(&s.form().apply_int(g))
            .primitive_integral()?
            .to_i64()
            .ok_or_else(|| Error::Internal("functional overflow".into()))?;
        if !constraints.contains(&f) {
            constraints.push(f);
        }
    }
    let rank = s.rank();
    let rd = dd::extreme_rays(&constraints, rank)?;
    let mut generators: Vec<DivClass> = rd.rays.iter().map(|r| DivClass::from_ints(r)).collect();
    for l in &rd.lineality {
        generators.push(DivClass::from_ints(l));
        generators.push(-DivClass::from_ints(l));
    }
    let facets = if rd.lineality.is_empty() && !rd.rays.is_empty() {
        irredundant(&constraints, &rd.rays, rank)
    } else {
        constraints
    };
    Ok(Cone::with_facets(rank, generators, facets))
}

/// Keeps the constraints whose tight rays span a hyperplane (full-dimensional,
/// pointed cone).
fn irredundant(constraints: &[Vec<i64>], rays: &[Vec<i64>], rank: usize) -> Vec<Vec<i64>> {
    let keep = par::map(constraints, |f| {
        let tight: Vec<Vec<Rat>> = rays
            .iter()
            .filter(|r| r.iter().zip(f).map(|(a, b)| a * b).sum::<i64>().is_zero())
            .map(|r| r.iter().map(|&x| Rat::from_integer(x.into())).collect())
            .collect();
        linalg::rank(&tight, rank) + 1 == rank
    });
    constraints
        .iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(f, _)| f.clone())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn has(c: &Cone, v: &[i64]) -> bool {
        c.generators().contains(&DivClass::from_ints(v))
    }

    #[test]
    fn collinear_nef_rays() {
        let s = catalog::collinear_three();
        let nef = dual_cone(&s, s.eff_cone()).unwrap();
        for r in [[1, -1, 0, 0], [1, 0, -1, 0], [1, 0, 0, -1], [1, 0, 0, 0]] {
            assert!(has(&nef, &r), "missing {r:?}");
        }
        assert_eq!(nef.generators().len(), 4);
        assert!(nef
            .contains(&DivClass::from_ints(&[15, -3, -3, -1]))
            .unwrap());
    }

    #[test]
    fn k3_nef_rays() {
        let s = catalog::k3_example();
        let nef = dual_cone(&s, s.eff_cone()).unwrap();
        assert!(has(&nef, &[1, 0, 1]));
        assert!(has(&nef, &[0, 1, 1]));
        assert!(has(&nef, &[2, 2, 1]));
        assert_eq!(nef.generators().len(), 3);
    }

    #[test]
    fn rank_one_is_self_dual() {
        let form = crate::lattice::IntersectionForm::new(vec![vec![2]]).unwrap();
        let s = SurfaceModel::new(
            vec!["A".into()],
            form,
            vec![DivClass::from_ints(&[1])],
            DivClass::from_ints(&[1]),
            None,
        )
        .unwrap();
        let nef = dual_cone(&s, s.eff_cone()).unwrap();
        assert_eq!(nef.generators(), &[DivClass::from_ints(&[1])]);
    }

    #[test]
    fn membership_examples() {
        let x6 = catalog::del_pezzo(6).unwrap();
        assert!(
            cone_contains(x6.eff_cone(), &DivClass::from_ints(&[0, 1, 0, 0, 0, 0, 0])).unwrap()
        );
        let nef = x6.nef_cone().unwrap();
        assert!(!cone_contains(nef, &DivClass::from_ints(&[1, -1, -1, 0, 0, 0, 0])).unwrap());
        assert!(cone_contains(nef, &DivClass::zero(7)).unwrap());
        assert!(cone_contains(x6.eff_cone(), &DivClass::zero(7)).unwrap());
    }

    #[test]
    fn degenerate_inputs() {
        let s = catalog::k3_example();
        let zero = Cone::new(3, vec![DivClass::zero(3)]).unwrap();
        assert!(matches!(dual_cone(&s, &zero), Err(Error::Input(_))));
        // A single ray: its dual is a half-space with a 2-dimensional lineality space.
        let ray = Cone::new(3, vec![DivClass::from_ints(&[1, 1, 1])]).unwrap();
        let d = dual_cone(&s, &ray).unwrap();
        for g in d.generators() {
            assert!(!s
                .form()
                .pair(g, &DivClass::from_ints(&[1, 1, 1]))
                .is_negative());
        }
        assert!(d.contains(&DivClass::from_ints(&[1, 1, 1])).unwrap());
        assert!(!d.contains(&DivClass::from_ints(&[-1, -1, -1])).unwrap());
    }
}
