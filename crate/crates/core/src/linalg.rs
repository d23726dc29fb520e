//! Dense linear algebra over ℚ: reduced row echelon form, rank, solving and
//! kernels. Used for coefficient matching and pointwise evaluation.

use num_traits::{One, Zero};

use crate::ratfield::Q;

pub type QMatrix = Vec<Vec<Q>>;

/// Reduces `a` in place to reduced row echelon form and returns the pivot
/// columns. Rows may be reordered.
pub fn rref(a: &mut QMatrix) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        if !inv.is_one() {
            for v in a[r][c..].iter_mut() {
                *v *= &inv;
            }
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, pv) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(a: &QMatrix) -> usize {
    let mut m = a.clone();
    rref(&mut m).len()
}

/// One solution of `a·x = b` with every free variable set to zero, or `None`
/// when the system is inconsistent.
pub fn solve_particular(a: &QMatrix, b: &[Q]) -> Option<Vec<Q>> {
    let cols = a.first().map_or(0, Vec::len);
    let mut aug: QMatrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![Q::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][cols].clone();
    }
    Some(x)
}

/// Basis of the right kernel, one vector per free column, in column order.
pub fn kernel(a: &QMatrix, cols: usize) -> Vec<Vec<Q>> {
    let mut m = a.clone();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); cols];
            v[f] = Q::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfield::q;

    fn m(rows: &[&[i64]]) -> QMatrix {
        rows.iter()
            .map(|r| r.iter().map(|&v| q(v)).collect())
            .collect()
    }

    #[test]
    fn rank_and_kernel() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&a), 2);
        let k = kernel(&a, 3);
        assert_eq!(k.len(), 1);
        for row in &a {
            let dot: Q = row.iter().zip(&k[0]).map(|(x, y)| x * y).sum();
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn particular_solution() {
        let a = m(&[&[1, 1, 0], &[0, 1, 1]]);
        let x = solve_particular(&a, &[q(3), q(5)]).unwrap();
        assert_eq!(x, vec![q(-2), q(5), q(0)]);
        let bad = m(&[&[1, 1], &[2, 2]]);
        assert!(solve_particular(&bad, &[q(1), q(3)]).is_none());
    }
}
