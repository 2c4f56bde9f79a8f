//! Exact Gauss-Jordan elimination over a [`Field`].

use crate::scalar::Field;

pub type Matrix<S> = Vec<Vec<S>>;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn row_reduce<S: Field>(m: &mut Matrix<S>) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("nonzero pivot is invertible");
        for x in m[r].iter_mut().skip(c) {
            *x = x.mul(&inv);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !y.is_zero() {
                    *x = x.sub(&f.mul(y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<S: Field>(m: &Matrix<S>) -> usize {
    row_reduce(&mut m.clone()).len()
}

/// A basis of `{x : m x = 0}`, one vector per free column with that entry 1.
pub fn nullspace<S: Field>(m: &Matrix<S>, ctx: &S::Ctx) -> Vec<Vec<S>> {
    let cols = m.first().map_or(0, Vec::len);
    let mut r = m.clone();
    let pivots = row_reduce(&mut r);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![S::zero(ctx); cols];
            v[f] = S::one(ctx);
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = r[row][f].neg();
            }
            v
        })
        .collect()
}

pub fn determinant<S: Field>(m: &Matrix<S>, ctx: &S::Ctx) -> S {
    let n = m.len();
    let mut a = m.clone();
    let mut det = S::one(ctx);
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return S::zero(ctx);
        };
        if p != c {
            a.swap(p, c);
            det = det.neg();
        }
        det = det.mul(&a[c][c]);
        let inv = a[c][c].inv().expect("nonzero pivot is invertible");
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].mul(&inv);
            for j in c..n {
                let t = f.mul(&a[c][j]);
                a[i][j] = a[i][j].sub(&t);
            }
        }
    }
    det
}
