//! Dense linear algebra over F_p: reduced row echelon form, rank, kernel.
//! Everything is deterministic — pivots are chosen left to right, rows kept
//! in order — so computed bases are reproducible byte for byte.

use crate::gf::Fp;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(rows: &mut Vec<Vec<Fp>>) -> Vec<usize> {
    let nrows = rows.len();
    if nrows == 0 {
        return Vec::new();
    }
    let ncols = rows[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(pr) = (r..nrows).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = rows[r][col].inv().expect("pivot is nonzero");
        for v in rows[r].iter_mut() {
            *v *= inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let f = row[col];
                for (x, pv) in row.iter_mut().zip(&pivot_row) {
                    *x -= *pv * f;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == nrows {
            break;
        }
    }
    rows.retain(|row| row.iter().any(|v| !v.is_zero()));
    pivots
}

pub fn rank(mut rows: Vec<Vec<Fp>>) -> usize {
    rref(&mut rows).len()
}

/// Basis of the right kernel of the matrix, echelonized over the free
/// variables (each basis vector has a 1 in "its" free column and 0 in the
/// other free columns).
pub fn kernel_basis(mut rows: Vec<Vec<Fp>>, ncols: usize, p: u64) -> Vec<Vec<Fp>> {
    for row in &rows {
        debug_assert_eq!(row.len(), ncols);
    }
    let pivots = rref(&mut rows);
    let is_pivot = {
        let mut v = vec![false; ncols];
        for &c in &pivots {
            v[c] = true;
        }
        v
    };
    let mut basis = Vec::new();
    for free in 0..ncols {
        if is_pivot[free] {
            continue;
        }
        let mut vec = vec![Fp::zero(p); ncols];
        vec[free] = Fp::one(p);
        for (r, &pc) in pivots.iter().enumerate() {
            vec[pc] = -rows[r][free];
        }
        basis.push(vec);
    }
    basis
}

/// Rank of the row span of `a` stacked with `b`, without mutating either.
pub fn rank_of_union(a: &[Vec<Fp>], b: &[Vec<Fp>]) -> usize {
    let mut rows: Vec<Vec<Fp>> = a.to_vec();
    rows.extend(b.iter().cloned());
    rank(rows)
}
