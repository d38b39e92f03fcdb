//! Double description: extreme rays of `{x : a_i . x >= 0}` from the inequalities.
//!
//! Integer arithmetic throughout; every ray is kept primitive, and adjacency of
//! a positive/negative pair is decided combinatorially from the sets of tight
//! constraints (stored as bitsets).

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg;
use crate::par;
use crate::rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct RayData {
    /// Primitive integral extreme rays of the pointed part.
    pub rays: Vec<Vec<i64>>,
    /// Primitive integral basis of the lineality space (empty when pointed).
    pub lineality: Vec<Vec<i64>>,
}

fn overflow() -> Error {
    Error::Internal("integer overflow in double description".into())
}

fn dot(a: &[i128], b: &[i128]) -> Result<i128> {
    a.iter().zip(b).try_fold(0i128, |acc, (x, y)| {
        x.checked_mul(*y)
            .and_then(|p| acc.checked_add(p))
            .ok_or_else(overflow)
    })
}

fn make_primitive(v: &mut [i128]) {
    let g = v.iter().fold(0i128, |g, x| g.gcd(x));
    if g > 1 {
        for x in v.iter_mut() {
            *x /= g;
        }
    }
}

fn rat_column_to_primitive(col: &[Rat]) -> Result<Vec<i128>> {
    let l = col
        .iter()
        .fold(num_bigint::BigInt::from(1), |acc, c| acc.lcm(c.denom()));
    let mut v: Vec<i128> = col
        .iter()
        .map(|c| {
            (c.numer() * (&l / c.denom()))
                .to_i128()
                .ok_or_else(overflow)
        })
        .collect::<Result<_>>()?;
    make_primitive(&mut v);
    Ok(v)
}

/// Extreme rays and lineality space of `{x in Q^dim : c . x >= 0 for all c}`.
pub(crate) fn extreme_rays(constraints: &[Vec<i64>], dim: usize) -> Result<RayData> {
    let rows: Vec<Vec<Rat>> = constraints
        .iter()
        .map(|r| r.iter().map(|&x| Rat::from_integer(x.into())).collect())
        .collect();
    let (indep, kernel) = linalg::independent_rows_and_kernel(&rows, dim);
    let lineality = kernel
        .iter()
        .map(|k| to_i64(&rat_column_to_primitive(k)?))
        .collect::<Result<Vec<_>>>()?;
    let k = indep.len();
    if k == 0 {
        return Ok(RayData {
            rays: Vec::new(),
            lineality,
        });
    }
    let wide: Vec<Vec<i128>> = constraints
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    if k == dim {
        let rays = pointed(&wide, k, &indep)?;
        return Ok(RayData {
            rays: rays.iter().map(|r| to_i64(r)).collect::<Result<_>>()?,
            lineality,
        });
    }
    // Work inside the row space, where the cone is pointed, then map back.
    let basis: Vec<&Vec<i128>> = indep.iter().map(|&i| &wide[i]).collect();
    let reduced = wide
        .iter()
        .map(|a| basis.iter().map(|b| dot(a, b)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let rays = pointed(&reduced, k, &indep)?
        .into_iter()
        .map(|y| {
            let mut x = vec![0i128; dim];
            for (yj, b) in y.iter().zip(&basis) {
                for (xi, bi) in x.iter_mut().zip(b.iter()) {
                    *xi = yj
                        .checked_mul(*bi)
                        .and_then(|p| xi.checked_add(p))
                        .ok_or_else(overflow)?;
                }
            }
            make_primitive(&mut x);
            to_i64(&x)
        })
        .collect::<Result<_>>()?;
    Ok(RayData { rays, lineality })
}

fn to_i64(v: &[i128]) -> Result<Vec<i64>> {
    v.iter()
        .map(|&x| i64::try_from(x).map_err(|_| overflow()))
        .collect()
}

struct RaySet {
    words: usize,
    rays: Vec<Vec<i128>>,
    zeros: Vec<u64>,
}

impl RaySet {
    fn zero_set(&self, r: usize) -> &[u64] {
        &self.zeros[r * self.words..(r + 1) * self.words]
    }
}

/// Pointed case: `rows` has full column rank `k`, `initial` indexes `k`
/// independent rows.
fn pointed(rows: &[Vec<i128>], k: usize, initial: &[usize]) -> Result<Vec<Vec<i128>>> {
    let m = rows.len();
    let words = m.div_ceil(64);
    let a_init: Vec<Vec<Rat>> = initial
        .iter()
        .map(|&i| {
            rows[i]
                .iter()
                .map(|&x| Rat::from_integer(x.into()))
                .collect()
        })
        .collect();
    let identity: Vec<Vec<Rat>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| Rat::from_integer(((i == j) as i64).into()))
                .collect()
        })
        .collect();
    let inv = linalg::solve(&a_init, &identity)
        .ok_or_else(|| Error::Internal("initial constraint block is singular".into()))?;

    let mut set = RaySet {
        words,
        rays: Vec::with_capacity(k),
        zeros: Vec::with_capacity(k * words),
    };
    for j in 0..k {
        let col: Vec<Rat> = inv.iter().map(|row| row[j].clone()).collect();
        set.rays.push(rat_column_to_primitive(&col)?);
        let mut z = vec![0u64; words];
        for (i, &row) in initial.iter().enumerate() {
            if i != j {
                z[row / 64] |= 1 << (row % 64);
            }
        }
        set.zeros.extend(z);
    }

    let mut done = vec![false; m];
    for &i in initial {
        done[i] = true;
    }
    for c in 0..m {
        if done[c] {
            continue;
        }
        done[c] = true;
        set = add_constraint(set, &rows[c], c, k)?;
    }
    Ok(set.rays)
}

fn add_constraint(set: RaySet, row: &[i128], c: usize, k: usize) -> Result<RaySet> {
    let words = set.words;
    let vals = set
        .rays
        .iter()
        .map(|r| dot(row, r))
        .collect::<Result<Vec<_>>>()?;
    let pos: Vec<usize> = (0..vals.len()).filter(|&i| vals[i] > 0).collect();
    let neg: Vec<usize> = (0..vals.len()).filter(|&i| vals[i] < 0).collect();
    let bit = (c / 64, 1u64 << (c % 64));

    let new_rays: Vec<(Vec<i128>, Vec<u64>)> = if pos.is_empty() || neg.is_empty() {
        Vec::new()
    } else {
        let total = set.rays.len();
        let need = k.saturating_sub(2) as u32;
        let set_ref = &set;
        let vals_ref = &vals;
        let neg_ref = &neg;
        let produced: Vec<Result<(Vec<i128>, Vec<u64>)>> = par::flat_map(&pos, |&p| {
            let zp = set_ref.zero_set(p);
            let mut out = Vec::new();
            let mut common = vec![0u64; words];
            'pairs: for &n in neg_ref {
                let zn = set_ref.zero_set(n);
                let mut cnt = 0u32;
                for w in 0..words {
                    common[w] = zp[w] & zn[w];
                    cnt += common[w].count_ones();
                }
                if cnt < need {
                    continue;
                }
                for r in 0..total {
                    if r == p || r == n {
                        continue;
                    }
                    let zr = set_ref.zero_set(r);
                    if (0..words).all(|w| common[w] & !zr[w] == 0) {
                        continue 'pairs;
                    }
                }
                let (vp, vn) = (vals_ref[p], -vals_ref[n]);
                let ray: Result<Vec<i128>> = set_ref.rays[n]
                    .iter()
                    .zip(&set_ref.rays[p])
                    .map(|(x, y)| {
                        let a = vp.checked_mul(*x).ok_or_else(overflow)?;
                        let b = vn.checked_mul(*y).ok_or_else(overflow)?;
                        a.checked_add(b).ok_or_else(overflow)
                    })
                    .collect();
                out.push(ray.map(|mut r| {
                    make_primitive(&mut r);
                    let mut z = common.clone();
                    z[bit.0] |= bit.1;
                    (r, z)
                }));
            }
            out
        });
        produced.into_iter().collect::<Result<_>>()?
    };

    let mut next = RaySet {
        words,
        rays: Vec::with_capacity(set.rays.len() + new_rays.len()),
        zeros: Vec::with_capacity((set.rays.len() + new_rays.len()) * words),
    };
    for (i, v) in vals.iter().enumerate() {
        if *v < 0 {
            continue;
        }
        let mut z = set.zero_set(i).to_vec();
        if v.is_zero() {
            z[bit.0] |= bit.1;
        }
        next.rays.push(set.rays[i].clone());
        next.zeros.extend(z);
    }
    for (r, z) in new_rays {
        next.rays.push(r);
        next.zeros.extend(z);
    }
    Ok(next)
}
