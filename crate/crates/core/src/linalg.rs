//! Gaussian elimination over `F_p`.

use crate::geometry::PrimeField;

/// Reduces `rows` in place to reduced row echelon form and returns the pivot
/// column of each nonzero row.
pub(crate) fn rref(f: &PrimeField, rows: &mut Vec<Vec<u32>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(sel) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, sel);
        let s = f.inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, s);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let k = rows[i][c];
                for j in 0..ncols {
                    let v = f.mul(k, rows[r][j]);
                    rows[i][j] = f.sub(rows[i][j], v);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// A basis of `{x : A·x = 0}`. Each basis vector has a `1` in one free
/// column and zeros in the other free columns.
pub(crate) fn nullspace(f: &PrimeField, rows: &[Vec<u32>], ncols: usize) -> Vec<Vec<u32>> {
    let mut m = rows.to_vec();
    let pivots = rref(f, &mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u32; ncols];
            v[fc] = 1;
            for (row, &pc) in m.iter().zip(&pivots) {
                v[pc] = f.neg(row[fc]);
            }
            v
        })
        .collect()
}

/// Solves `A·x = b` for one solution, if any.
pub(crate) fn solve(f: &PrimeField, a: &[Vec<u32>], b: &[u32], ncols: usize) -> Option<Vec<u32>> {
    let mut aug: Vec<Vec<u32>> = a
        .iter()
        .zip(b)
        .map(|(row, &bi)| {
            let mut r = row.clone();
            r.push(bi);
            r
        })
        .collect();
    let pivots = rref(f, &mut aug, ncols + 1);
    if pivots.contains(&ncols) {
        return None;
    }
    let mut x = vec![0u32; ncols];
    for (row, &pc) in aug.iter().zip(&pivots) {
        x[pc] = row[ncols];
    }
    Some(x)
}
