//! Built-in surfaces: del Pezzo surfaces `X_r` (blow-ups of the plane in
//! `r <= 8` general points), the blow-up in three collinear points, and a K3
//! surface of Picard number 3 whose effective cone is spanned by three
//! `(-2)`-curves.

use std::collections::BTreeSet;

use crate::divisor::DivClass;
use crate::error::{Error, Result};
use crate::lattice::{IntersectionForm, SurfaceModel};
use crate::rat::{int, Rat};

/// Names accepted by [`by_name`].
pub const NAMES: &[&str] = &[
    "dp1",
    "dp2",
    "dp3",
    "dp4",
    "dp5",
    "dp6",
    "dp7",
    "dp8",
    "collinear3",
    "k3-bf",
];

/// Degree and point multiplicities of the plane curves whose strict transforms
/// are the `(-1)`-curves, with the smallest `r` at which each family appears.
/// A negative multiplicity marks an exceptional curve.
const MINUS_ONE_FAMILIES: &[(usize, i64, &[i64])] = &[
    (1, 0, &[-1]),
    (2, 1, &[1, 1]),
    (5, 2, &[1, 1, 1, 1, 1]),
    (7, 3, &[2, 1, 1, 1, 1, 1, 1]),
    (8, 4, &[2, 2, 2, 1, 1, 1, 1, 1]),
    (8, 5, &[2, 2, 2, 2, 2, 2, 1, 1]),
    (8, 6, &[3, 2, 2, 2, 2, 2, 2, 2]),
];

fn distinct_placements(mults: &[i64], r: usize) -> BTreeSet<Vec<i64>> {
    fn rec(rest: &mut Vec<i64>, slots: &mut Vec<i64>, pos: usize, out: &mut BTreeSet<Vec<i64>>) {
        if pos == slots.len() {
            if rest.is_empty() {
                out.insert(slots.clone());
            }
            return;
        }
        if rest.len() < slots.len() - pos {
            slots[pos] = 0;
            rec(rest, slots, pos + 1, out);
        }
        let choices: BTreeSet<i64> = rest.iter().copied().collect();
        for m in choices {
            let idx = rest.iter().position(|&x| x == m).expect("present");
            rest.remove(idx);
            slots[pos] = m;
            rec(rest, slots, pos + 1, out);
            rest.insert(idx, m);
        }
        slots[pos] = 0;
    }
    let mut out = BTreeSet::new();
    rec(&mut mults.to_vec(), &mut vec![0; r], 0, &mut out);
    out
}

/// The `(-1)`-curves on `X_r` in the basis `H, E1, ..., Er`.
pub fn minus_one_curves(r: usize) -> Vec<DivClass> {
    let mut curves = Vec::new();
    for &(from, degree, mults) in MINUS_ONE_FAMILIES {
        if r < from {
            continue;
        }
        for placement in distinct_placements(mults, r).into_iter().rev() {
            let mut v = Vec::with_capacity(r + 1);
            v.push(degree);
            v.extend(placement.iter().map(|m| -m));
            curves.push(DivClass::from_ints(&v));
        }
    }
    curves
}

fn standard_labels(r: usize) -> Vec<String> {
    std::iter::once("H".to_string())
        .chain((1..=r).map(|i| format!("E{i}")))
        .collect()
}

fn diagonal_form(r: usize) -> IntersectionForm {
    let m = (0..=r)
        .map(|i| {
            (0..=r)
                .map(|j| match (i == j, i) {
                    (false, _) => 0,
                    (true, 0) => 1,
                    (true, _) => -1,
                })
                .collect()
        })
        .collect();
    IntersectionForm::new(m).expect("diag(1,-1,...,-1) has signature (1, r)")
}

/// Del Pezzo surface `X_r`, `1 <= r <= 8`, with flag curve `H`.
pub fn del_pezzo(r: usize) -> Result<SurfaceModel> {
    if !(1..=8).contains(&r) {
        return Err(Error::Input(format!(
            "del Pezzo surfaces X_r are available for 1 <= r <= 8, got {r}"
        )));
    }
    let curves = minus_one_curves(r);
    let mut eff = curves.clone();
    if r == 1 {
        // X_1 has a single (-1)-curve; the other extremal effective ray is the
        // pencil of lines through the blown-up point.
        eff.push(DivClass::from_ints(&[1, -1]));
    }
    let mut h = vec![0; r + 1];
    h[0] = 1;
    SurfaceModel::new(
        standard_labels(r),
        diagonal_form(r),
        eff,
        DivClass::from_ints(&h),
        Some(curves),
    )
}

/// Blow-up of the plane in three collinear points, flag curve `H`.
pub fn collinear_three() -> SurfaceModel {
    let eff = vec![
        DivClass::from_ints(&[0, 1, 0, 0]),
        DivClass::from_ints(&[0, 0, 1, 0]),
        DivClass::from_ints(&[0, 0, 0, 1]),
        DivClass::from_ints(&[1, -1, -1, -1]),
    ];
    SurfaceModel::new(
        standard_labels(3),
        diagonal_form(3),
        eff,
        DivClass::from_ints(&[1, 0, 0, 0]),
        None,
    )
    .expect("valid built-in model")
}

/// K3 surface of Picard number 3 in the basis `L1, L2, D` (two lines and a
/// conic forming a hyperplane section), flag curve `L1 + L2 + D`.
pub fn k3_example() -> SurfaceModel {
    let form = IntersectionForm::new(vec![vec![-2, 1, 2], vec![1, -2, 2], vec![2, 2, -2]])
        .expect("valid K3 intersection matrix");
    let eff = vec![
        DivClass::from_ints(&[1, 0, 0]),
        DivClass::from_ints(&[0, 1, 0]),
        DivClass::from_ints(&[0, 0, 1]),
    ];
    SurfaceModel::new(
        vec!["L1".into(), "L2".into(), "D".into()],
        form,
        eff,
        DivClass::from_ints(&[1, 1, 1]),
        None,
    )
    .expect("valid built-in model")
}

pub fn by_name(name: &str) -> Result<SurfaceModel> {
    match name {
        "collinear3" => Ok(collinear_three()),
        "k3-bf" => Ok(k3_example()),
        _ => match name
            .strip_prefix("dp")
            .and_then(|r| r.parse::<usize>().ok())
        {
            Some(r) => del_pezzo(r),
            None => Err(Error::Input(format!(
                "unknown catalog surface {name:?}; known: {}",
                NAMES.join(", ")
            ))),
        },
    }
}

/// Reference values a catalog surface is expected to reproduce.
#[derive(Debug, Clone, Default)]
pub struct Golden {
    pub chamber_count: Option<usize>,
    pub negative_curve_count: Option<usize>,
    /// Minkowski basis as integer classes, in no particular order.
    pub basis: Option<Vec<Vec<i64>>>,
    /// Distinct elementary bodies `(height, length)` of the basis.
    pub building_blocks: Option<Vec<(Rat, Rat)>>,
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub model: SurfaceModel,
    pub golden: Golden,
}

pub fn entry(name: &str) -> Result<CatalogEntry> {
    let name = *NAMES
        .iter()
        .find(|n| **n == name)
        .ok_or_else(|| Error::Input(format!("unknown catalog surface {name:?}")))?;
    let model = by_name(name)?;
    let golden = match name {
        "collinear3" => Golden {
            chamber_count: Some(12),
            negative_curve_count: Some(4),
            basis: Some(vec![
                vec![1, 0, 0, 0],
                vec![3, -1, -1, -1],
                vec![2, -1, -1, 0],
                vec![2, -1, 0, -1],
                vec![2, 0, -1, -1],
                vec![1, -1, 0, 0],
                vec![1, 0, -1, 0],
                vec![1, 0, 0, -1],
            ]),
            building_blocks: None,
        },
        "k3-bf" => Golden {
            chamber_count: Some(5),
            negative_curve_count: Some(3),
            basis: Some(vec![
                vec![1, 1, 1],
                vec![3, 2, 2],
                vec![2, 3, 2],
                vec![1, 1, 2],
                vec![2, 2, 1],
                vec![1, 0, 1],
                vec![0, 1, 1],
            ]),
            building_blocks: Some(vec![
                (int(4), int(1)),
                (int(9), int(2)),
                (int(6), int(1)),
                (int(3), int(0)),
            ]),
        },
        dp => {
            let r: usize = dp[2..].parse().expect("dp name");
            let counts = [0, 1, 3, 6, 10, 16, 27, 56, 240];
            Golden {
                negative_curve_count: Some(counts[r]),
                ..Golden::default()
            }
        }
    };
    Ok(CatalogEntry {
        name,
        model,
        golden,
    })
}

pub fn entries() -> Vec<CatalogEntry> {
    NAMES
        .iter()
        .map(|n| entry(n).expect("known name"))
        .collect()
}
