//! Small dense exact linear algebra over `Rat` and `BigInt`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::rat::Rat;

/// Solves `a * x = b` for square nonsingular `a` (`n x n`) and `b` with `n` rows.
/// Returns `None` when `a` is singular.
pub(crate) fn solve(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = a.len();
    if n == 0 {
        return Some(Vec::new());
    }
    let m = b[0].len();
    let mut aug: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| row.iter().chain(rhs.iter()).cloned().collect())
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(col, piv);
        let inv = aug[col][col].recip();
        for v in aug[col].iter_mut().skip(col) {
            *v = &*v * &inv;
        }
        let pivot_row = aug[col].clone();
        for (r, row) in aug.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                if !p.is_zero() {
                    *v = &*v - &f * p;
                }
            }
        }
    }
    Some(aug.into_iter().map(|row| row[n..n + m].to_vec()).collect())
}

/// Row-reduces `rows` and returns the indices of a maximal linearly independent
/// subset (greedy, in input order) together with a basis of the right kernel.
pub(crate) fn independent_rows_and_kernel(
    rows: &[Vec<Rat>],
    dim: usize,
) -> (Vec<usize>, Vec<Vec<Rat>>) {
    // Echelon form kept in reduced shape, one pivot column per stored row.
    let mut basis: Vec<(usize, Vec<Rat>)> = Vec::new();
    let mut chosen = Vec::new();
    for (idx, row) in rows.iter().enumerate() {
        let mut v = row.clone();
        for (pc, b) in &basis {
            if !v[*pc].is_zero() {
                let f = v[*pc].clone();
                for (x, y) in v.iter_mut().zip(b) {
                    *x = &*x - &f * y;
                }
            }
        }
        if let Some(pc) = v.iter().position(|x| !x.is_zero()) {
            let inv = v[pc].recip();
            for x in v.iter_mut() {
                *x = &*x * &inv;
            }
            for (_, b) in basis.iter_mut() {
                if !b[pc].is_zero() {
                    let f = b[pc].clone();
                    for (x, y) in b.iter_mut().zip(&v) {
                        *x = &*x - &f * y;
                    }
                }
            }
            basis.push((pc, v));
            chosen.push(idx);
            if basis.len() == dim {
                break;
            }
        }
    }
    let pivots: Vec<usize> = basis.iter().map(|(pc, _)| *pc).collect();
    let mut kernel = Vec::new();
    for free in (0..dim).filter(|c| !pivots.contains(c)) {
        let mut k = vec![Rat::zero(); dim];
        k[free] = Rat::from_integer(1.into());
        for (pc, b) in &basis {
            k[*pc] = -b[free].clone();
        }
        kernel.push(k);
    }
    (chosen, kernel)
}

pub(crate) fn rank(rows: &[Vec<Rat>], dim: usize) -> usize {
    independent_rows_and_kernel(rows, dim).0.len()
}

/// Negative definiteness by the signs of the leading principal minors,
/// computed fraction-free (Bareiss).
pub(crate) fn is_negative_definite_int(gram: &[Vec<i64>]) -> bool {
    let n = gram.len();
    let mut m: Vec<Vec<BigInt>> = gram
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut prev = BigInt::from(1);
    for k in 0..n {
        // m[k][k] is now the (k+1)-th leading principal minor.
        let minor = &m[k][k];
        let want_negative = k % 2 == 0;
        if minor.is_zero() || minor.is_negative() != want_negative {
            return false;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    true
}

/// Inertia `(positive, negative, zero)` of a symmetric rational matrix via
/// symmetric Gaussian elimination (Sylvester's law of inertia).
pub(crate) fn inertia(sym: &[Vec<Rat>]) -> (usize, usize, usize) {
    let mut a: Vec<Vec<Rat>> = sym.to_vec();
    let mut active: Vec<usize> = (0..a.len()).collect();
    let (mut pos, mut neg) = (0, 0);
    while !active.is_empty() {
        if let Some(&p) = active.iter().find(|&&i| !a[i][i].is_zero()) {
            let d = a[p][p].clone();
            if d.is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            active.retain(|&i| i != p);
            for &i in &active {
                let f = &a[i][p] / &d;
                if f.is_zero() {
                    continue;
                }
                for &j in &active {
                    let v = &a[i][j] - &f * &a[p][j];
                    a[i][j] = v;
                }
            }
            continue;
        }
        // Zero diagonal: look for an off-diagonal pair, which splits off a
        // hyperbolic 2x2 block contributing one positive and one negative square.
        let pair = active.iter().find_map(|&i| {
            active
                .iter()
                .find(|&&j| j != i && !a[i][j].is_zero())
                .map(|&j| (i, j))
        });
        match pair {
            None => break,
            Some((i, j)) => {
                // Replace row/col i by row/col i + row/col j: new diagonal 2*a_ij != 0.
                let rj = a[j].clone();
                for (x, y) in a[i].iter_mut().zip(&rj) {
                    *x = &*x + y;
                }
                for row in a.iter_mut() {
                    let v = &row[i] + &row[j];
                    row[i] = v;
                }
            }
        }
    }
    (pos, neg, active.len())
}
