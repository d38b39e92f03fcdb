//! Acceptance run: prints one PASS/FAIL line per criterion and exits nonzero
//! if any criterion fails. All comparisons are exact.

#![allow(clippy::needless_range_loop)]

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use okounkov_core::batch::{bodies_direct, check_bodies};
use okounkov_core::rat::{frac, int};
use okounkov_core::{
    area, basis_element_for_support, body_direct, body_from_decomposition, catalog, decompose,
    enumerate_chamber_supports, minkowski_basis, minkowski_sum, null_set, simplex_body,
    zariski_decompose, BodyPolygon, ChamberSupport, DivClass, Rat, SimplexSpec, SurfaceModel,
};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn ok<T>(r: okounkov_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn curve_index(s: &SurfaceModel, v: &[i64]) -> Result<usize, String> {
    let d = DivClass::from_ints(v);
    s.negative_curves()
        .iter()
        .position(|c| *c == d)
        .ok_or_else(|| format!("{} is not a negative curve", s.display(&d)))
}

fn support(s: &SurfaceModel, curves: &[Vec<i64>]) -> Result<ChamberSupport, String> {
    Ok(ChamberSupport::new(
        curves
            .iter()
            .map(|c| curve_index(s, c))
            .collect::<Result<_, _>>()?,
    ))
}

fn poly(pts: &[(Rat, Rat)]) -> BodyPolygon {
    BodyPolygon::hull(pts.to_vec()).expect("nonempty")
}

// Classes on X_6 as integer vectors over H, E1, ..., E6 (points are 1-based).

fn e6(i: usize) -> Vec<i64> {
    let mut v = vec![0; 7];
    v[i] = 1;
    v
}

fn l6(i: usize, j: usize) -> Vec<i64> {
    let mut v = vec![0; 7];
    v[0] = 1;
    v[i] = -1;
    v[j] = -1;
    v
}

fn c6(i: usize) -> Vec<i64> {
    let mut v = vec![-1; 7];
    v[0] = 2;
    v[i] = 0;
    v
}

/// `h H - sum m_i E_i` from `(i, m_i)` pairs.
fn m6(h: i64, mults: &[(usize, i64)]) -> Vec<i64> {
    let mut v = vec![0; 7];
    v[0] = h;
    for &(i, m) in mults {
        v[i] = -m;
    }
    v
}

fn span(from: usize, to: usize, m: i64) -> Vec<(usize, i64)> {
    (from..=to).map(|i| (i, m)).collect()
}

fn table_rows() -> Vec<(usize, Vec<Vec<i64>>, Vec<i64>)> {
    let mut rows = Vec::new();
    for s in 0..=6 {
        rows.push((1, (1..=s).map(e6).collect(), m6(1, &[])));
    }
    for s in 1..=5 {
        for t in 0..=(5 - s) {
            let mut supp: Vec<Vec<i64>> = (2..=s + 1).map(|j| l6(1, j)).collect();
            supp.extend((s + 2..=s + 1 + t).map(e6));
            let mut mults = vec![(1, s as i64)];
            mults.extend(span(2, s + 1, 1));
            rows.push((2, supp, m6(s as i64 + 1, &mults)));
        }
    }
    for t in 0..=3 {
        let mut supp = vec![l6(1, 2), l6(1, 3), l6(2, 3)];
        supp.extend((4..4 + t).map(e6));
        rows.push((3, supp, m6(4, &span(1, 3, 2))));
    }
    for s in 0..=4 {
        for with_e1 in [false, true] {
            let mut supp = vec![c6(1)];
            supp.extend((3..=2 + s).map(|j| l6(2, j)));
            if with_e1 {
                supp.push(e6(1));
            }
            let mut mults = vec![(2, 2 + s as i64)];
            mults.extend(span(3, 2 + s, 3));
            mults.extend(span(3 + s, 6, 2));
            rows.push((4, supp, m6(5 + s as i64, &mults)));
        }
    }
    for with_e1 in [false, true] {
        let mut supp = vec![c6(1), l6(2, 3), l6(2, 4), l6(3, 4)];
        if with_e1 {
            supp.push(e6(1));
        }
        let mut mults = span(2, 4, 4);
        mults.extend(span(5, 6, 2));
        rows.push((5, supp, m6(8, &mults)));
    }
    for s in 0..=3 {
        let mut supp = vec![c6(1), c6(2)];
        supp.extend((4..=3 + s).map(|j| l6(3, j)));
        let mut mults = vec![(1, 2), (2, 2), (3, s as i64 + 4)];
        mults.extend(span(4, 3 + s, 5));
        mults.extend(span(4 + s, 6, 4));
        rows.push((6, supp, m6(9 + s as i64, &mults)));
    }
    let mut mults = vec![(1, 2), (2, 2), (6, 4)];
    mults.extend(span(3, 5, 6));
    rows.push((
        7,
        vec![c6(1), c6(2), l6(3, 4), l6(3, 5), l6(4, 5)],
        m6(12, &mults),
    ));
    rows
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i + 1);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Relabels the points: `E_i -> E_perm[i-1]`.
fn permute(v: &[i64], perm: &[usize]) -> Vec<i64> {
    let mut out = vec![0; v.len()];
    out[0] = v[0];
    for (i, &p) in perm.iter().enumerate() {
        out[p] = v[i + 1];
    }
    out
}

fn criterion_1() -> Check {
    let s = ok(catalog::del_pezzo(6))?;
    let rows = table_rows();
    let perms = permutations(6);
    let mut seen_rows = BTreeSet::new();
    for (row, supp, expected) in &rows {
        seen_rows.insert(*row);
        for perm in &perms {
            let curves: Vec<Vec<i64>> = supp.iter().map(|c| permute(c, perm)).collect();
            let want = DivClass::from_ints(&permute(expected, perm));
            let sigma = support(&s, &curves)?;
            let got = ok(basis_element_for_support(&s, &sigma))?
                .ok_or_else(|| format!("row {row}: no nef element for {curves:?}"))?;
            // The table lists M with C-coefficient 1; the element stores its
            // primitive multiple together with that coefficient.
            let unscaled = &(Rat::one() / &got.d_coeff) * &got.divisor;
            ensure!(
                unscaled == want && got.divisor == ok(want.primitive_integral())?,
                "row {row}: support {curves:?} gave {} (C-coefficient {}), expected {}",
                s.display(&got.divisor),
                got.d_coeff,
                s.display(&want)
            );
        }
    }
    ensure!(seen_rows.len() == 7, "only rows {seen_rows:?} instantiated");
    Ok(format!(
        "{} instantiations of 7 patterns under all {} relabelings",
        rows.len(),
        perms.len()
    ))
}

fn criterion_2() -> Check {
    let s = ok(catalog::del_pezzo(6))?;
    let d = DivClass::from_ints(&[7, -2, -1, -3, -2, -2, 0]);
    let dec = ok(decompose(&s, &d))?;
    let weights: Vec<Rat> = dec.terms.iter().map(|t| t.weight.clone()).collect();
    ensure!(
        weights == vec![int(2), frac(1, 2), frac(1, 2)],
        "weights {weights:?}"
    );
    let first_two = dec.terms[..2].iter().fold(DivClass::zero(7), |a, t| {
        &a + &(&t.weight * &t.element.divisor)
    });
    let rest = &d - &first_two;
    ensure!(
        s.square(&rest).is_zero(),
        "remainder {} has nonzero square",
        s.display(&rest)
    );
    ensure!(
        rest == &frac(1, 2) * &DivClass::from_ints(&[2, -1, 0, -1, -1, -1, 0]),
        "remainder {}",
        s.display(&rest)
    );
    ensure!(dec.reconstruct(7) == d, "reconstruction differs");
    let want = poly(&[
        (int(0), int(0)),
        (frac(5, 2), int(0)),
        (frac(5, 2), int(1)),
        (int(2), int(5)),
        (int(0), int(7)),
    ]);
    let from_dec = body_from_decomposition(&dec);
    ensure!(from_dec == want, "body from decomposition {from_dec}");
    let direct = ok(body_direct(&s, &d))?;
    ensure!(direct == want, "direct body {direct}");
    ensure!(area(&want) == frac(27, 2), "area {}", area(&want));
    ensure!(
        area(&want) * int(2) == s.square(&d),
        "D^2 = {}",
        s.square(&d)
    );
    Ok(format!("body {want}"))
}

fn class_set(v: &[Vec<i64>]) -> BTreeSet<DivClass> {
    v.iter().map(|c| DivClass::from_ints(c)).collect()
}

fn criterion_3() -> Check {
    let s = catalog::collinear_three();
    let chambers = ok(enumerate_chamber_supports(&s))?;
    ensure!(chambers.len() == 12, "{} chambers", chambers.len());
    let basis = ok(minkowski_basis(&s))?;
    let got: BTreeSet<DivClass> = basis.elements.iter().map(|e| e.divisor.clone()).collect();
    let want = class_set(&[
        vec![1, 0, 0, 0],
        vec![3, -1, -1, -1],
        vec![2, -1, -1, 0],
        vec![2, -1, 0, -1],
        vec![2, 0, -1, -1],
        vec![1, -1, 0, 0],
        vec![1, 0, -1, 0],
        vec![1, 0, 0, -1],
    ]);
    ensure!(got == want && basis.len() == 8, "basis {got:?}");

    let d = DivClass::from_ints(&[15, -3, -3, -1]);
    let dec = ok(decompose(&s, &d))?;
    let terms: Vec<(Rat, DivClass)> = dec
        .terms
        .iter()
        .map(|t| (t.weight.clone(), t.element.divisor.clone()))
        .collect();
    let want_terms = vec![
        (int(8), DivClass::from_ints(&[1, 0, 0, 0])),
        (int(1), DivClass::from_ints(&[3, -1, -1, -1])),
        (int(2), DivClass::from_ints(&[2, -1, -1, 0])),
    ];
    ensure!(terms == want_terms, "terms {terms:?}");
    let from_dec = body_from_decomposition(&dec);
    let direct = ok(body_direct(&s, &d))?;
    ensure!(from_dec == direct, "{from_dec} != {direct}");
    let p = ok(zariski_decompose(&s, &d))?.positive;
    ensure!(area(&direct) == int(103), "area {}", area(&direct));
    ensure!(
        area(&direct) * int(2) == s.square(&p),
        "P^2 = {}",
        s.square(&p)
    );

    // H . M = 3 and M - 2H = -(E1 + E2 + E3) + H is on the boundary of Eff,
    // so the elementary body is the triangle of base 2.
    let m = DivClass::from_ints(&[3, -1, -1, -1]);
    let elem = basis
        .elements
        .iter()
        .find(|e| e.divisor == m)
        .ok_or("3H-E1-E2-E3 missing")?;
    let tri = ok(SimplexSpec::new(int(3), int(2)))?;
    ensure!(elem.simplex() == tri, "3H-E1-E2-E3 has {}", elem.simplex());
    ensure!(
        ok(body_direct(&s, &m))? == simplex_body(&tri),
        "direct body of 3H-E1-E2-E3"
    );
    Ok(format!("body {direct}; 3H-E1-E2-E3 has {tri}"))
}

fn criterion_4() -> Check {
    let entry = ok(catalog::entry("k3-bf"))?;
    let s = entry.model;
    let chambers = ok(enumerate_chamber_supports(&s))?;
    ensure!(chambers.len() == 5, "{} chambers", chambers.len());
    let basis = ok(minkowski_basis(&s))?;
    let got: BTreeSet<DivClass> = basis.elements.iter().map(|e| e.divisor.clone()).collect();
    let want = class_set(&[
        vec![1, 1, 1],
        vec![3, 2, 2],
        vec![2, 3, 2],
        vec![1, 1, 2],
        vec![2, 2, 1],
        vec![1, 0, 1],
        vec![0, 1, 1],
    ]);
    ensure!(got == want && basis.len() == 7, "basis {got:?}");
    let blocks: BTreeSet<(Rat, Rat)> = basis.building_blocks().into_iter().collect();
    let want_blocks: BTreeSet<(Rat, Rat)> = [(4, 1), (9, 2), (6, 1), (3, 0)]
        .iter()
        .map(|&(h, l)| (int(h), int(l)))
        .collect();
    ensure!(blocks == want_blocks, "blocks {blocks:?}");
    let mut non_integral = None;
    for e in &basis.elements {
        let body = ok(body_direct(&s, &e.divisor))?;
        ensure!(
            body == simplex_body(&e.simplex()),
            "body of {} is {body}, not {}",
            s.display(&e.divisor),
            e.simplex()
        );
        if non_integral.is_none() && !body.has_integral_slopes() {
            non_integral = Some((e.divisor.clone(), body));
        }
    }
    let (d, body) = non_integral.ok_or("every edge slope is integral")?;
    Ok(format!("{} has body {body}", s.display(&d)))
}

fn criterion_5() -> Check {
    let s = ok(catalog::del_pezzo(2))?;
    let basis = ok(minkowski_basis(&s))?;
    let h = DivClass::from_ints(&[1, 0, 0]);
    let cases = [
        (vec![1, 0, 0], vec![vec![0, 1, 0], vec![0, 0, 1]]),
        (vec![2, -1, 0], vec![vec![0, 0, 1]]),
        (vec![2, 0, -1], vec![vec![0, 1, 0]]),
    ];
    for (p, curves) in &cases {
        let supp = support(&s, curves)?;
        let p = DivClass::from_ints(p);
        ensure!(
            ok(null_set(&s, &p))? == supp,
            "Null({}) is not {curves:?}",
            s.display(&p)
        );
        ensure!(
            basis.chambers.contains_key(&supp),
            "{curves:?} is not a chamber support"
        );
        let e = basis
            .for_support(&supp)
            .ok_or_else(|| format!("no element for {curves:?}"))?;
        ensure!(e.divisor == h, "{curves:?} gives {}", s.display(&e.divisor));
    }
    let copies = basis.elements.iter().filter(|e| e.divisor == h).count();
    ensure!(copies == 1, "H appears {copies} times");
    Ok(format!(
        "{} chambers, {} basis elements",
        basis.chambers.len(),
        basis.len()
    ))
}

const NEF_SAMPLES: usize = 500;
const PAIRS: usize = 100;
const PSEF_SAMPLES: usize = 200;

/// Coordinate ranges that contain every nef class of the box `[-10, 20]^rho`.
/// A nef class meets every effective generator and the (nef) flag curve
/// nonnegatively; when such a class pairs as a multiple of one coordinate, that
/// coordinate has a sign.
fn nef_ranges(s: &SurfaceModel) -> Vec<(i64, i64)> {
    let mut ranges = vec![(-10i64, 20i64); s.rank()];
    for g in s
        .eff_generators()
        .iter()
        .chain(std::iter::once(s.flag_curve()))
    {
        let row = s.form().apply_int(&g.to_i64().expect("integral"));
        let nonzero: Vec<usize> = (0..row.len()).filter(|&i| row[i] != 0).collect();
        if let [i] = nonzero[..] {
            if row[i] > 0 {
                ranges[i].0 = ranges[i].0.max(0);
            } else {
                ranges[i].1 = ranges[i].1.min(0);
            }
        }
    }
    ranges
}

fn nef_samples(
    s: &SurfaceModel,
    rng: &mut ChaCha8Rng,
    count: usize,
) -> Result<Vec<DivClass>, String> {
    let ranges = nef_ranges(s);
    let mut out = Vec::with_capacity(count);
    let mut tries = 0u64;
    while out.len() < count {
        tries += 1;
        ensure!(tries < 50_000_000, "only {} nef samples found", out.len());
        let v: Vec<i64> = ranges
            .iter()
            .map(|&(lo, hi)| rng.gen_range(lo..=hi))
            .collect();
        let d = DivClass::from_ints(&v);
        if s.is_nef(&d) {
            out.push(d);
        }
    }
    Ok(out)
}

/// Pseudo-effective classes: a nef sample (sometimes dropped) plus up to three
/// effective generators with small multiplicities.
fn psef_samples(s: &SurfaceModel, nef: &[DivClass], rng: &mut ChaCha8Rng) -> Vec<DivClass> {
    let gens = s.eff_generators();
    (0..PSEF_SAMPLES)
        .map(|_| {
            let mut d = if rng.gen_bool(0.8) {
                nef[rng.gen_range(0..nef.len())].clone()
            } else {
                DivClass::zero(s.rank())
            };
            for _ in 0..rng.gen_range(1..=3) {
                let g = &gens[rng.gen_range(0..gens.len())];
                d = &d + &(&int(rng.gen_range(1..=4)) * g);
            }
            d
        })
        .collect()
}

// Brute-force Zariski oracle with its own pairing and linear algebra.

fn dot(s: &SurfaceModel, a: &DivClass, b: &DivClass) -> Rat {
    let m = s.form().matrix();
    let mut acc = Rat::zero();
    for i in 0..m.len() {
        for j in 0..m.len() {
            if m[i][j] != 0 {
                acc += a.coord(i) * b.coord(j) * int(m[i][j]);
            }
        }
    }
    acc
}

/// Sylvester's criterion on `-g` via Gaussian elimination without pivoting.
fn negative_definite(g: &[Vec<Rat>]) -> bool {
    let n = g.len();
    let mut a: Vec<Vec<Rat>> = g
        .iter()
        .map(|r| r.iter().map(|x| -x.clone()).collect())
        .collect();
    for k in 0..n {
        if !a[k][k].is_positive() {
            return false;
        }
        for i in k + 1..n {
            let f = &a[i][k] / &a[k][k];
            for j in k..n {
                let t = &f * &a[k][j];
                a[i][j] -= t;
            }
        }
    }
    true
}

fn solve(g: &[Vec<Rat>], rhs: &[Rat]) -> Option<Vec<Rat>> {
    let n = g.len();
    let mut a: Vec<Vec<Rat>> = g
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            r.iter()
                .cloned()
                .chain(std::iter::once(b.clone()))
                .collect()
        })
        .collect();
    for k in 0..n {
        let p = (k..n).find(|&i| !a[i][k].is_zero())?;
        a.swap(k, p);
        let inv = Rat::one() / &a[k][k];
        for j in k..=n {
            a[k][j] = &a[k][j] * &inv;
        }
        for i in 0..n {
            if i != k && !a[i][k].is_zero() {
                let f = a[i][k].clone();
                for j in k..=n {
                    let t = &f * &a[k][j];
                    a[i][j] -= t;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n].clone()).collect())
}

type Oracle = (DivClass, BTreeMap<usize, Rat>);

/// Tries every candidate support `S`: `S` must be negative definite, the
/// coefficients making `D - N` orthogonal to `S` strictly positive and `D - N`
/// nef. Exactly one `S` may pass.
///
/// Each connected component of `Neg(D)` contains a curve met negatively by `D`.
/// When all negative curves are `(-1)`-curves, negative definite sets are
/// orthogonal, so components are single curves and only those curves qualify.
fn oracle(s: &SurfaceModel, d: &DivClass) -> Result<Oracle, String> {
    let curves = s.negative_curves();
    let all_minus_one = curves.iter().all(|c| dot(s, c, c) == int(-1));
    let pool: Vec<usize> = if all_minus_one {
        (0..curves.len())
            .filter(|&i| dot(s, d, &curves[i]).is_negative())
            .collect()
    } else {
        (0..curves.len()).collect()
    };
    ensure!(pool.len() <= 20, "candidate pool of {} curves", pool.len());
    let nef = |p: &DivClass| {
        s.eff_generators()
            .iter()
            .all(|g| !dot(s, p, g).is_negative())
    };
    let mut found: Vec<Oracle> = Vec::new();
    for mask in 0u32..(1 << pool.len()) {
        let idx: Vec<usize> = (0..pool.len())
            .filter(|b| mask >> b & 1 == 1)
            .map(|b| pool[b])
            .collect();
        let g: Vec<Vec<Rat>> = idx
            .iter()
            .map(|&i| {
                idx.iter()
                    .map(|&j| dot(s, &curves[i], &curves[j]))
                    .collect()
            })
            .collect();
        if !negative_definite(&g) {
            continue;
        }
        let rhs: Vec<Rat> = idx.iter().map(|&i| dot(s, d, &curves[i])).collect();
        let a = solve(&g, &rhs).ok_or("singular definite matrix")?;
        if a.iter().any(|x| !x.is_positive()) {
            continue;
        }
        let p = idx
            .iter()
            .zip(&a)
            .fold(d.clone(), |acc, (&i, x)| &acc - &(x * &curves[i]));
        if nef(&p) {
            found.push((p, idx.into_iter().zip(a).collect()));
        }
    }
    ensure!(
        found.len() == 1,
        "{} valid supports for {}",
        found.len(),
        s.display(d)
    );
    Ok(found.pop().expect("one"))
}

#[derive(Default)]
struct Tally {
    nef: usize,
    big: usize,
    pairs: usize,
    psef: usize,
}

fn property_suite(
    name: &str,
    seed: u64,
    witness: &mut bool,
    tally: &mut Tally,
) -> Result<(), String> {
    let s = ok(catalog::by_name(name))?;
    let rho = s.rank();
    let del_pezzo = name.starts_with("dp");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples = nef_samples(&s, &mut rng, NEF_SAMPLES + 2 * PAIRS)?;
    let (singles, pair_parts) = samples.split_at(NEF_SAMPLES);

    let checks = check_bodies(&s, singles);
    for (d, c) in singles.iter().zip(checks) {
        let c = c.map_err(|e| format!("{name}: {}: {e}", s.display(d)))?;
        let dec = &c.decomposition;
        ensure!(
            dec.reconstruct(rho) == *d && dec.decomposed == *d,
            "6a {name}: {} does not reconstruct",
            s.display(d)
        );
        ensure!(
            dec.terms.len() <= rho,
            "6a {name}: {} uses {} terms",
            s.display(d),
            dec.terms.len()
        );
        ensure!(
            c.from_decomposition == c.direct,
            "6b {name}: {}: {} != {}",
            s.display(d),
            c.from_decomposition,
            c.direct
        );
        let sq = s.square(d);
        if sq.is_positive() {
            tally.big += 1;
            ensure!(
                area(&c.direct) * int(2) == sq,
                "6c {name}: {}: area {} but D^2 = {sq}",
                s.display(d),
                area(&c.direct)
            );
        }
        if del_pezzo {
            ensure!(
                c.direct.has_integral_slopes(),
                "6e {name}: {} has body {}",
                s.display(d),
                c.direct
            );
        }
    }
    tally.nef += singles.len();

    let firsts: Vec<DivClass> = pair_parts.iter().step_by(2).cloned().collect();
    let seconds: Vec<DivClass> = pair_parts.iter().skip(1).step_by(2).cloned().collect();
    let sums: Vec<DivClass> = firsts.iter().zip(&seconds).map(|(a, b)| a + b).collect();
    let b1 = bodies_direct(&s, &firsts);
    let b2 = bodies_direct(&s, &seconds);
    let b12 = bodies_direct(&s, &sums);
    for (i, ((x, y), z)) in b1.into_iter().zip(b2).zip(b12).enumerate() {
        let (x, y, z) = (ok(x)?, ok(y)?, ok(z)?);
        let sum = minkowski_sum(&x, &y);
        ensure!(
            z.contains(&sum),
            "6d {name}: body of {} + {} misses the sum of their bodies",
            s.display(&firsts[i]),
            s.display(&seconds[i])
        );
        if del_pezzo {
            ensure!(
                z.has_integral_slopes(),
                "6e {name}: {} has body {z}",
                s.display(&sums[i])
            );
        }
    }
    tally.pairs += sums.len();

    if name == "dp6" {
        let a = DivClass::from_ints(&[3, -2, -1, -1, 0, 0, 0]);
        let b = DivClass::from_ints(&[4, 0, 0, -2, -2, -2, 0]);
        let sum = minkowski_sum(&ok(body_direct(&s, &a))?, &ok(body_direct(&s, &b))?);
        let whole = ok(body_direct(&s, &(&a + &b)))?;
        ensure!(
            whole.contains(&sum) && whole != sum,
            "6d dp6: no strict inclusion for the example pair: {sum} vs {whole}"
        );
        *witness = true;
    }

    for d in psef_samples(&s, singles, &mut rng) {
        let pair = ok(zariski_decompose(&s, &d))
            .map_err(|e| format!("6f {name}: {}: {e}", s.display(&d)))?;
        let (p, coeffs) = oracle(&s, &d).map_err(|e| format!("6f {name}: {e}"))?;
        ensure!(
            pair.positive == p && pair.negative_coeffs == coeffs,
            "6f {name}: {}: got P = {}, oracle P = {}",
            s.display(&d),
            s.display(&pair.positive),
            s.display(&p)
        );
        tally.psef += 1;
    }
    Ok(())
}

fn criterion_6() -> Check {
    let mut witness = false;
    let mut tally = Tally::default();
    for (k, name) in catalog::NAMES.iter().enumerate() {
        property_suite(name, 0x5eed_0000 + k as u64, &mut witness, &mut tally)?;
    }
    ensure!(witness, "6d: no strict inclusion witness recorded");
    Ok(format!(
        "{} surfaces; {} nef samples ({} big), {} pairs, {} pseudo-effective samples; strict witness on dp6",
        catalog::NAMES.len(),
        tally.nef,
        tally.big,
        tally.pairs,
        tally.psef
    ))
}

fn criterion_7() -> Check {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = okounkov_cli::run_with(
        [
            "okounkov",
            "verify",
            "dp6",
            "7H-2E1-E2-3E3-2E4-2E5",
            "3H-2E1-E2-E3",
            "4H-2E3-2E4-2E5",
        ],
        None,
        &mut out,
        &mut err,
    );
    ensure!(
        code == 0,
        "exit code {code}: {}",
        String::from_utf8_lossy(&err)
    );
    let v: Value = serde_json::from_slice(&out).map_err(|e| e.to_string())?;
    ensure!(
        v["verdict"] == "not a Minkowski decomposition",
        "verdict {}",
        v["verdict"]
    );
    ensure!(
        v["minkowski_decomposition"] == false,
        "flag {}",
        v["minkowski_decomposition"]
    );
    let (sum, body) = (&v["sum_of_bodies"], &v["body"]);
    ensure!(sum.is_array() && body.is_array(), "polygons missing");
    ensure!(sum != body, "polygons are equal");
    Ok(format!("sum of bodies {sum} vs body {body}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        (
            "1 basis elements of the degree-3 del Pezzo chamber table",
            criterion_1,
        ),
        (
            "2 decomposition and body of 7H-2E1-E2-3E3-2E4-2E5 on X6",
            criterion_2,
        ),
        ("3 three collinear points", criterion_3),
        ("4 K3 surface of Picard number 3", criterion_4),
        ("5 chambers of X2 sharing the element H", criterion_5),
        ("6 fuzzed property suite", criterion_6),
        (
            "7 verify rejects the alternative representation",
            criterion_7,
        ),
    ];
    let mut failed = 0;
    for (label, f) in criteria {
        let start = Instant::now();
        let result =
            catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".to_string()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {label}: PASS ({secs:.1}s) {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {label}: FAIL ({secs:.1}s) {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
