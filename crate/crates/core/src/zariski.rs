//! Zariski decomposition, `Null`/`Neg` sets and Zariski chamber supports.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::divisor::DivClass;
use crate::error::{Error, Result};
use crate::lattice::SurfaceModel;
use crate::linalg;
use crate::par;
use crate::rat::Rat;

/// A sorted set of negative-curve indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChamberSupport(Vec<usize>);

impl ChamberSupport {
    pub fn new(mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        indices.dedup();
        Self(indices)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.0.iter().all(|&i| other.contains(i))
    }
}

/// `D = P + sum a_i N_i` with `P` nef, `a_i > 0`, `P . N_i = 0` and the `N_i`
/// spanning a negative definite lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZariskiPair {
    pub positive: DivClass,
    pub negative_coeffs: BTreeMap<usize, Rat>,
}

impl ZariskiPair {
    pub fn negative_part(&self, s: &SurfaceModel) -> DivClass {
        self.negative_coeffs
            .iter()
            .fold(DivClass::zero(s.rank()), |acc, (&i, a)| {
                acc + s.negative_curves()[i].scale(a)
            })
    }

    pub fn support(&self) -> ChamberSupport {
        ChamberSupport::new(self.negative_coeffs.keys().copied().collect())
    }

    /// Re-checks every defining property against `d`.
    pub fn verify(&self, s: &SurfaceModel, d: &DivClass) -> Result<()> {
        let fail = |why: String| Err(Error::Internal(format!("Zariski certificate: {why}")));
        if &self.positive + &self.negative_part(s) != *d {
            return fail("P + N does not reconstruct the input".into());
        }
        if !s.is_nef(&self.positive) {
            return fail("positive part is not nef".into());
        }
        for (&i, a) in &self.negative_coeffs {
            if !a.is_positive() {
                return fail(format!("coefficient of curve {i} is {a}"));
            }
            if !s.dot_negative(&self.positive, i).is_zero() {
                return fail(format!("positive part meets curve {i}"));
            }
        }
        if !linalg::is_negative_definite_int(&s.gram(self.support().indices())) {
            return fail("support is not negative definite".into());
        }
        Ok(())
    }
}

fn lex_cmp_zero(vals: &[Rat]) -> Ordering {
    for v in vals {
        if v.is_positive() {
            return Ordering::Greater;
        }
        if v.is_negative() {
            return Ordering::Less;
        }
    }
    Ordering::Equal
}

/// Zariski decomposition of `comps[0] + e*comps[1] + e^2*comps[2] + ...` for an
/// infinitesimal `e > 0`, i.e. over the lexicographically ordered field.
/// With one component this is the ordinary decomposition.
#[derive(Clone, Debug)]
pub(crate) struct LexZariski {
    /// Curves with lexicographically positive coefficient, sorted.
    pub support: Vec<usize>,
    /// `coeffs[k][c]`: coefficient of `support[k]` in component `c`.
    pub coeffs: Vec<Vec<Rat>>,
    pub positive: Vec<DivClass>,
}

/// Iterative support augmentation: start from the curves met negatively, make the
/// remainder orthogonal to the current support, and add every curve that the
/// remainder still meets negatively until it is nef.
pub(crate) fn lex_zariski(s: &SurfaceModel, comps: &[DivClass]) -> Result<LexZariski> {
    let n = s.negative_curves().len();
    let lex_dot = |ds: &[DivClass], i: usize| -> Vec<Rat> {
        ds.iter().map(|d| s.dot_negative(d, i)).collect()
    };
    let mut support: Vec<usize> = (0..n)
        .filter(|&i| lex_cmp_zero(&lex_dot(comps, i)) == Ordering::Less)
        .collect();
    let mut positive = comps.to_vec();
    let mut coeffs: Vec<Vec<Rat>> = Vec::new();
    for _ in 0..=n {
        if !support.is_empty() {
            let gram = s.gram(&support);
            if !linalg::is_negative_definite_int(&gram) {
                return Err(Error::Domain(
                    "class is not pseudo-effective: candidate negative support is not negative definite"
                        .into(),
                ));
            }
            let g: Vec<Vec<Rat>> = gram
                .iter()
                .map(|r| r.iter().map(|&x| Rat::from_integer(x.into())).collect())
                .collect();
            let rhs: Vec<Vec<Rat>> = support.iter().map(|&i| lex_dot(comps, i)).collect();
            coeffs = linalg::solve(&g, &rhs)
                .ok_or_else(|| Error::Internal("singular negative definite Gram matrix".into()))?;
            positive = comps
                .iter()
                .enumerate()
                .map(|(c, d)| {
                    support.iter().zip(&coeffs).fold(d.clone(), |acc, (&i, a)| {
                        if a[c].is_zero() {
                            acc
                        } else {
                            acc - s.negative_curves()[i].scale(&a[c])
                        }
                    })
                })
                .collect();
        }
        let added: Vec<usize> = (0..n)
            .filter(|i| !support.contains(i))
            .filter(|&i| lex_cmp_zero(&lex_dot(&positive, i)) == Ordering::Less)
            .collect();
        if added.is_empty() {
            break;
        }
        support.extend(added);
        support.sort_unstable();
    }
    for (&i, a) in support.iter().zip(&coeffs) {
        if lex_cmp_zero(a) == Ordering::Less {
            return Err(Error::Domain(format!(
                "class is not pseudo-effective: negative coefficient on curve {i}"
            )));
        }
    }
    for j in 0..s.eff_generators().len() {
        let vals: Vec<Rat> = positive.iter().map(|p| s.dot_eff(p, j)).collect();
        if lex_cmp_zero(&vals) == Ordering::Less {
            return Err(Error::Domain(format!(
                "class is not pseudo-effective: positive part meets generator {} negatively",
                s.display(&s.eff_generators()[j])
            )));
        }
    }
    let (support, coeffs): (Vec<usize>, Vec<Vec<Rat>>) = support
        .into_iter()
        .zip(coeffs.into_iter().chain(std::iter::repeat(Vec::new())))
        .filter(|(_, a)| lex_cmp_zero(a) == Ordering::Greater)
        .unzip();
    Ok(LexZariski {
        support,
        coeffs,
        positive,
    })
}

/// The Zariski decomposition of a pseudo-effective class.
pub fn zariski_decompose(s: &SurfaceModel, d: &DivClass) -> Result<ZariskiPair> {
    s.require_pseudo_effective(d)?;
    let lex = lex_zariski(s, std::slice::from_ref(d))?;
    let negative_coeffs = lex
        .support
        .iter()
        .zip(&lex.coeffs)
        .map(|(&i, a)| (i, a[0].clone()))
        .collect();
    let pair = ZariskiPair {
        positive: lex.positive.into_iter().next().expect("one component"),
        negative_coeffs,
    };
    debug_assert!(pair.verify(s, d).is_ok());
    Ok(pair)
}

/// Negative curves orthogonal to the nef class `p`. For nef classes that are
/// not big this is still the full orthogonal set; chamber semantics only apply
/// to big classes.
pub fn null_set(s: &SurfaceModel, p: &DivClass) -> Result<ChamberSupport> {
    s.require_nef(p, "class")?;
    Ok(ChamberSupport::new(
        (0..s.negative_curves().len())
            .filter(|&i| s.dot_negative(p, i).is_zero())
            .collect(),
    ))
}

/// Support of the negative part.
pub fn neg_support(s: &SurfaceModel, d: &DivClass) -> Result<ChamberSupport> {
    Ok(zariski_decompose(s, d)?.support())
}

/// Every set `S` of negative curves that is `Null(P)` for some big nef `P`,
/// including the empty set of the nef chamber.
///
/// Subsets are grown depth-first. Alongside each subset we keep the nef rays
/// orthogonal to it; their sum lies in the relative interior of the face
/// `Nef ∩ S^⊥`, so `S` is a support iff that sum is big and meets every curve
/// outside `S` positively. Non-negative-definite subsets and subsets whose face
/// is not big are not extended.
pub fn enumerate_chamber_supports(s: &SurfaceModel) -> Result<Vec<ChamberSupport>> {
    let nef = s.nef_cone()?;
    let rays: Vec<Vec<i64>> = nef
        .generators()
        .iter()
        .map(|r| r.to_i64().expect("integral nef rays"))
        .collect();
    let n = s.negative_curves().len();
    // products[r][j] = R_r . N_j
    let products: Vec<Vec<i64>> = rays
        .iter()
        .map(|r| {
            let jr = s.form().apply_int(r);
            (0..n)
                .map(|j| jr.iter().zip(s.negative_int(j)).map(|(a, b)| a * b).sum())
                .collect()
        })
        .collect();
    let ctx = EnumCtx {
        s,
        rays: &rays,
        products: &products,
    };
    let all_rays: Vec<usize> = (0..rays.len()).collect();
    let mut out = Vec::new();
    if ctx.is_support(&[], &all_rays) {
        out.push(ChamberSupport::empty());
    }
    let rest = par::range_flat_map(n, |first| {
        let face: Vec<usize> = all_rays
            .iter()
            .copied()
            .filter(|&r| products[r][first] == 0)
            .collect();
        let mut found = Vec::new();
        ctx.extend(&mut vec![first], &face, &mut found);
        found
    });
    out.extend(rest);
    out.sort();
    Ok(out)
}

struct EnumCtx<'a> {
    s: &'a SurfaceModel,
    rays: &'a [Vec<i64>],
    products: &'a [Vec<i64>],
}

impl EnumCtx<'_> {
    fn face_sum(&self, face: &[usize]) -> Vec<i64> {
        let mut p = vec![0i64; self.s.rank()];
        for &r in face {
            for (x, y) in p.iter_mut().zip(&self.rays[r]) {
                *x += y;
            }
        }
        p
    }

    fn face_is_big(&self, face: &[usize]) -> bool {
        let p = DivClass::from_ints(&self.face_sum(face));
        !face.is_empty() && self.s.square(&p).is_positive()
    }

    fn is_support(&self, subset: &[usize], face: &[usize]) -> bool {
        if !self.face_is_big(face) {
            return false;
        }
        (0..self.s.negative_curves().len())
            .filter(|j| !subset.contains(j))
            .all(|j| face.iter().map(|&r| self.products[r][j]).sum::<i64>() > 0)
    }

    fn extend(&self, subset: &mut Vec<usize>, face: &[usize], out: &mut Vec<ChamberSupport>) {
        if !linalg::is_negative_definite_int(&self.s.gram(subset)) || !self.face_is_big(face) {
            return;
        }
        if self.is_support(subset, face) {
            out.push(ChamberSupport::new(subset.clone()));
        }
        let last = *subset.last().expect("nonempty");
        for next in last + 1..self.s.negative_curves().len() {
            let sub_face: Vec<usize> = face
                .iter()
                .copied()
                .filter(|&r| self.products[r][next] == 0)
                .collect();
            subset.push(next);
            self.extend(subset, &sub_face, out);
            subset.pop();
        }
    }
}
