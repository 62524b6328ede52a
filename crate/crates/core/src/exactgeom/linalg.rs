//! Dense exact linear algebra by row reduction.

use num_traits::{One, Zero};

use super::rational::{dot, zeros, QVec, Q};

/// Reduced row echelon form in place. Returns the pivot columns.
pub fn rref(rows: &mut Vec<QVec>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Q::one() / &rows[r][c];
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in c..rows[i].len() {
                    let t = &f * &rows[r][j];
                    rows[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank(vectors: &[QVec]) -> usize {
    let Some(first) = vectors.first() else {
        return 0;
    };
    let mut m = vectors.to_vec();
    rref(&mut m, first.len()).len()
}

/// Basis of `{x : <r, x> = 0 for every row r}` in `Q^dim`.
pub fn nullspace(rows: &[QVec], dim: usize) -> Vec<QVec> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, dim);
    let mut basis = Vec::new();
    for free in (0..dim).filter(|c| !pivots.contains(c)) {
        let mut v = zeros(dim);
        v[free] = Q::one();
        for (row, &pc) in m.iter().zip(&pivots) {
            v[pc] = -row[free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Some solution of `A x = b` with `A` given by rows, or `None`.
pub fn solve(rows: &[QVec], b: &[Q], dim: usize) -> Option<QVec> {
    let mut m: Vec<QVec> = rows
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut row = r.clone();
            row.push(bi.clone());
            row
        })
        .collect();
    let pivots = rref(&mut m, dim + 1);
    if pivots.contains(&dim) {
        return None;
    }
    let mut x = zeros(dim);
    for (row, &pc) in m.iter().zip(&pivots) {
        x[pc] = row[dim].clone();
    }
    Some(x)
}

/// Coefficients `c` with `sum c_i basis_i = v`, if `v` lies in the span.
pub fn coordinates(basis: &[QVec], v: &[Q]) -> Option<QVec> {
    let dim = v.len();
    let rows: Vec<QVec> = (0..dim)
        .map(|i| basis.iter().map(|b| b[i].clone()).collect())
        .collect();
    solve(&rows, v, basis.len())
}

pub fn in_span(basis: &[QVec], v: &[Q]) -> bool {
    if basis.is_empty() {
        return v.iter().all(Zero::is_zero);
    }
    coordinates(basis, v).is_some()
}

/// A basis of the row space, as a subset of the input rows (first maximal independent prefix).
pub fn independent_subset(vectors: &[QVec]) -> Vec<usize> {
    let mut chosen: Vec<QVec> = Vec::new();
    let mut idx = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        let mut trial = chosen.clone();
        trial.push(v.clone());
        if rank(&trial) > chosen.len() {
            chosen.push(v.clone());
            idx.push(i);
        }
    }
    idx
}

/// Orthogonal complement (w.r.t. the standard pairing) of the span of `vectors`.
pub fn orthogonal_complement(vectors: &[QVec], dim: usize) -> Vec<QVec> {
    nullspace(vectors, dim)
}

/// Evaluate a matrix (rows) on a vector.
pub fn apply(rows: &[QVec], v: &[Q]) -> QVec {
    rows.iter().map(|r| dot(r, v)).collect()
}
