//! Okounkov bodies as exact convex polygons.
//!
//! Polygons are stored canonically: vertices counter-clockwise, no repeated or
//! collinear vertices, starting at the vertex with the smallest `(y, x)`. Two
//! polygons are equal iff their vertex lists are.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::decompose::Decomposition;
use crate::divisor::DivClass;
use crate::error::{Error, Result};
use crate::lattice::SurfaceModel;
use crate::rat::{fmt_rat, Rat};
use crate::zariski::{lex_zariski, zariski_decompose};

pub type Point = (Rat, Rat);

/// The triangle with vertices `(0,0)`, `(length,0)`, `(0,height)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplexSpec {
    height: Rat,
    length: Rat,
}

impl SimplexSpec {
    pub fn new(height: Rat, length: Rat) -> Result<Self> {
        if height.is_negative() || length.is_negative() {
            return Err(Error::Input(format!(
                "simplex needs nonnegative height and length, got ({height}, {length})"
            )));
        }
        Ok(Self { height, length })
    }

    pub fn height(&self) -> &Rat {
        &self.height
    }

    pub fn length(&self) -> &Rat {
        &self.length
    }
}

impl fmt::Display for SimplexSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Δ({}, {})", fmt_rat(&self.height), fmt_rat(&self.length))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BodyPolygon {
    vertices: Vec<Point>,
}

fn cross(o: &Point, a: &Point, b: &Point) -> Rat {
    (&a.0 - &o.0) * (&b.1 - &o.1) - (&a.1 - &o.1) * (&b.0 - &o.0)
}

fn yx(a: &Point, b: &Point) -> Ordering {
    a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0))
}

impl BodyPolygon {
    /// Convex hull of a nonempty point set, in canonical form.
    pub fn hull(mut points: Vec<Point>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Input("convex hull of no points".into()));
        }
        points.sort();
        points.dedup();
        if points.len() <= 2 {
            points.sort_by(yx);
            return Ok(Self { vertices: points });
        }
        let chain = |pts: &mut dyn Iterator<Item = &Point>| {
            let mut h: Vec<Point> = Vec::new();
            for p in pts {
                while h.len() >= 2 && !cross(&h[h.len() - 2], &h[h.len() - 1], p).is_positive() {
                    h.pop();
                }
                h.push(p.clone());
            }
            h.pop();
            h
        };
        let mut v = chain(&mut points.iter());
        v.extend(chain(&mut points.iter().rev()));
        let start = (0..v.len())
            .min_by(|&i, &j| yx(&v[i], &v[j]))
            .expect("nonempty");
        v.rotate_left(start);
        Ok(Self { vertices: v })
    }

    pub fn point(p: Point) -> Self {
        Self { vertices: vec![p] }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn is_point(&self) -> bool {
        self.vertices.len() == 1
    }

    pub fn is_segment(&self) -> bool {
        self.vertices.len() == 2
    }

    /// Edge vectors in counter-clockwise order starting at the first vertex.
    /// A segment has two opposite edges, a point none.
    pub fn edges(&self) -> Vec<Point> {
        let n = self.vertices.len();
        if n < 2 {
            return Vec::new();
        }
        (0..n)
            .map(|i| {
                let (a, b) = (&self.vertices[i], &self.vertices[(i + 1) % n]);
                (&b.0 - &a.0, &b.1 - &a.1)
            })
            .collect()
    }

    pub fn translate(&self, by: &Point) -> Self {
        Self {
            vertices: self
                .vertices
                .iter()
                .map(|(x, y)| (x + &by.0, y + &by.1))
                .collect(),
        }
    }

    /// Whether `p` lies in the polygon (boundary included).
    pub fn contains_point(&self, p: &Point) -> bool {
        match self.vertices.len() {
            1 => &self.vertices[0] == p,
            2 => {
                let (a, b) = (&self.vertices[0], &self.vertices[1]);
                cross(a, b, p).is_zero()
                    && p.0 >= a.0.clone().min(b.0.clone())
                    && p.0 <= a.0.clone().max(b.0.clone())
                    && p.1 >= a.1.clone().min(b.1.clone())
                    && p.1 <= a.1.clone().max(b.1.clone())
            }
            n => (0..n)
                .all(|i| !cross(&self.vertices[i], &self.vertices[(i + 1) % n], p).is_negative()),
        }
    }

    /// Whether `inner` is a subset of `self`.
    pub fn contains(&self, inner: &BodyPolygon) -> bool {
        inner.vertices.iter().all(|p| self.contains_point(p))
    }

    /// Slopes `dy/dx` of the non-vertical edges.
    pub fn slopes(&self) -> Vec<Rat> {
        self.edges()
            .into_iter()
            .filter(|(dx, _)| !dx.is_zero())
            .map(|(dx, dy)| dy / dx)
            .collect()
    }

    pub fn has_integral_slopes(&self) -> bool {
        self.slopes().iter().all(|s| s.is_integer())
    }
}

impl fmt::Display for BodyPolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .vertices
            .iter()
            .map(|(x, y)| format!("({}, {})", fmt_rat(x), fmt_rat(y)))
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

pub fn simplex_body(spec: &SimplexSpec) -> BodyPolygon {
    let zero = Rat::zero();
    BodyPolygon::hull(vec![
        (zero.clone(), zero.clone()),
        (spec.length.clone(), zero.clone()),
        (zero, spec.height.clone()),
    ])
    .expect("three points")
}

/// Half-plane index then cross product: orders directions by angle in `[0, 2pi)`.
fn angle_cmp(a: &Point, b: &Point) -> Ordering {
    let half = |p: &Point| !(p.1.is_positive() || (p.1.is_zero() && p.0.is_positive()));
    half(a).cmp(&half(b)).then_with(|| {
        let c = &a.0 * &b.1 - &a.1 * &b.0;
        if c.is_positive() {
            Ordering::Less
        } else if c.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    })
}

/// Minkowski sum by merging the two edge sequences by angle.
pub fn minkowski_sum(a: &BodyPolygon, b: &BodyPolygon) -> BodyPolygon {
    let start = (
        &a.vertices[0].0 + &b.vertices[0].0,
        &a.vertices[0].1 + &b.vertices[0].1,
    );
    let (ea, eb) = (a.edges(), b.edges());
    let mut pts = Vec::with_capacity(ea.len() + eb.len() + 1);
    let mut cur = start;
    let (mut i, mut j) = (0, 0);
    while i < ea.len() || j < eb.len() {
        let take_a =
            j == eb.len() || (i < ea.len() && angle_cmp(&ea[i], &eb[j]) != Ordering::Greater);
        let e = if take_a {
            i += 1;
            &ea[i - 1]
        } else {
            j += 1;
            &eb[j - 1]
        };
        pts.push(cur.clone());
        cur = (&cur.0 + &e.0, &cur.1 + &e.1);
    }
    pts.push(cur);
    BodyPolygon::hull(pts).expect("nonempty")
}

/// `c * a` for `c >= 0`.
pub fn scale(a: &BodyPolygon, c: &Rat) -> Result<BodyPolygon> {
    if c.is_negative() {
        return Err(Error::Input(format!("negative scale factor {c}")));
    }
    BodyPolygon::hull(a.vertices.iter().map(|(x, y)| (x * c, y * c)).collect())
}

pub fn area(a: &BodyPolygon) -> Rat {
    let v = &a.vertices;
    let n = v.len();
    if n < 3 {
        return Rat::zero();
    }
    let twice: Rat = (0..n)
        .map(|i| {
            let (p, q) = (&v[i], &v[(i + 1) % n]);
            &p.0 * &q.1 - &q.0 * &p.1
        })
        .sum();
    twice / Rat::from_integer(2.into())
}

/// `mu_C(d) = sup{t : d - tC pseudo-effective}` for pseudo-effective `d`.
pub fn mu(s: &SurfaceModel, d: &DivClass) -> Result<Rat> {
    s.require_pseudo_effective(d)?;
    let c = s.flag_curve();
    if let Some(r) = mu_small(s.eff_facets()?, d, c) {
        return Ok(r);
    }
    s.eff_facets()?
        .iter()
        .filter_map(|f| {
            let fc = c.eval(f);
            fc.is_positive().then(|| d.eval(f) / fc)
        })
        .min()
        .ok_or_else(|| Error::Internal("no facet of Eff is positive on the flag curve".into()))
}

/// `mu` in machine integers; `None` on overflow.
fn mu_small(facets: &[Vec<i64>], d: &DivClass, c: &DivClass) -> Option<Rat> {
    let (dn, cn) = (d.small_numerators()?, c.small_numerators()?);
    let mut best: Option<(i128, i128)> = None;
    for f in facets {
        let fc = DivClass::small_eval(&cn, f)?;
        if fc <= 0 {
            continue;
        }
        let fd = DivClass::small_eval(&dn, f)?;
        let better = match best {
            None => true,
            Some((bd, bc)) => fd.checked_mul(bc)? < bd.checked_mul(fc)?,
        };
        if better {
            best = Some((fd, fc));
        }
    }
    let (fd, fc) = best?;
    Some(Rat::new(
        BigInt::from(fd) * c.denominator(),
        BigInt::from(fc) * d.denominator(),
    ))
}

/// Minkowski sum of the weighted elementary bodies of a decomposition.
pub fn body_from_decomposition(dec: &Decomposition) -> BodyPolygon {
    dec.terms
        .iter()
        .map(|t| scale(&simplex_body(&t.element.simplex()), &t.weight).expect("positive weight"))
        .fold(BodyPolygon::point((Rat::zero(), Rat::zero())), |acc, p| {
            minkowski_sum(&acc, &p)
        })
}

/// The body from its definition: for `0 <= t <= mu` the vertical slice at `t` is
/// `[ord, ord + C . P(t)]` with `P(t)` the positive part of `d - tC`; for a nef
/// class `ord = 0`. Between breakpoints `P(t)` is affine in `t`, so the upper
/// boundary is piecewise linear and the polygon is the hull of its breakpoints
/// and `(0,0)`, `(mu,0)`.
///
/// Supports nef classes and big classes (the latter via their positive part).
pub fn body_direct(s: &SurfaceModel, d: &DivClass) -> Result<BodyPolygon> {
    s.check(d)?;
    let c = s.flag_curve().clone();
    let zero = Rat::zero();
    let z = zariski_decompose(s, d)?;
    let p = z.positive;
    let sq = s.square(&p);
    if !sq.is_positive() {
        if !z.negative_coeffs.is_empty() {
            return Err(Error::Domain(format!(
                "{} is neither nef nor big; the body is only computed for nef or big classes",
                s.display(d)
            )));
        }
        // Nef of square zero: the slice at t = 0 only.
        let top = (zero.clone(), s.dot_flag(&p));
        return BodyPolygon::hull(vec![(zero.clone(), zero), top]);
    }
    let end = mu(s, &p)?;
    let mut pts = vec![
        (zero.clone(), zero.clone()),
        (end.clone(), zero.clone()),
        (zero.clone(), s.dot_flag(&p)),
    ];
    let mut t = zero.clone();
    let minus_c = -c.clone();
    let limit = s.negative_curves().len() + 2;
    for _ in 0..limit {
        if t >= end {
            break;
        }
        let base = &p - &c.scale(&t);
        let lex = lex_zariski(s, &[base, minus_c.clone()])?;
        let (p0, p1) = (&lex.positive[0], &lex.positive[1]);
        let mut step = &end - &t;
        for j in 0..s.eff_generators().len() {
            let slope = s.dot_eff(p1, j);
            if slope.is_negative() {
                let hit = -s.dot_eff(p0, j) / slope;
                if hit < step {
                    step = hit;
                }
            }
        }
        if !step.is_positive() {
            return Err(Error::Internal("body sweep made no progress".into()));
        }
        t = &t + &step;
        let y = s.dot_flag(p0) + &step * s.dot_flag(p1);
        pts.push((t.clone(), y));
    }
    if t < end {
        return Err(Error::Internal("body sweep did not reach mu".into()));
    }
    BodyPolygon::hull(pts)
}
