//! Matrices over ℚ[λ]: denominator clearing, fraction-free elimination,
//! Euclidean row echelon forms and column reduction.

use num_traits::Zero;

use crate::linalg;
use crate::ratfield::{Poly, RationalFunction, Q};
use crate::tfm::Tfm;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    pub rows: usize,
    pub cols: usize,
    pub a: Vec<Vec<Poly>>,
}

impl PolyMatrix {
    pub fn new(a: Vec<Vec<Poly>>) -> Self {
        let rows = a.len();
        let cols = a.first().map_or(0, Vec::len);
        PolyMatrix { rows, cols, a }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            a: vec![vec![Poly::zero(); cols]; rows],
        }
    }

    /// Multiplies each row by the lcm of its denominators. Returns the
    /// polynomial matrix and the row multipliers.
    pub fn clear_rows(t: &Tfm) -> (PolyMatrix, Vec<Poly>) {
        let mut dens = Vec::with_capacity(t.rows());
        let mut a = Vec::with_capacity(t.rows());
        for i in 0..t.rows() {
            let l = t.row(i).iter().fold(Poly::one(), |acc, f| acc.lcm(f.den()));
            a.push(t.row(i).iter().map(|f| scaled_num(f, &l)).collect());
            dens.push(l);
        }
        (
            PolyMatrix {
                rows: t.rows(),
                cols: t.cols(),
                a,
            },
            dens,
        )
    }

    /// Multiplies each column by the lcm of its denominators.
    pub fn clear_cols(t: &Tfm) -> (PolyMatrix, Vec<Poly>) {
        let (pt, dens) = PolyMatrix::clear_rows(&t.transpose());
        (pt.transpose(), dens)
    }

    /// Entries of a polynomial transfer matrix; `None` if some entry has a
    /// nontrivial denominator.
    pub fn from_tfm(t: &Tfm) -> Option<PolyMatrix> {
        let mut a = vec![vec![Poly::zero(); t.cols()]; t.rows()];
        for i in 0..t.rows() {
            for j in 0..t.cols() {
                let f = t.get(i, j);
                if !f.is_polynomial() {
                    return None;
                }
                a[i][j] = f.num().clone();
            }
        }
        Some(PolyMatrix {
            rows: t.rows(),
            cols: t.cols(),
            a,
        })
    }

    pub fn to_tfm(&self) -> Tfm {
        Tfm::from_fn(self.rows, self.cols, |i, j| {
            RationalFunction::poly(self.a[i][j].clone())
        })
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut a = vec![vec![Poly::zero(); self.rows]; self.cols];
        for (i, row) in self.a.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                a[j][i] = v.clone();
            }
        }
        PolyMatrix {
            rows: self.cols,
            cols: self.rows,
            a,
        }
    }

    pub fn mul(&self, o: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, o.rows, "polynomial matrix dimensions");
        let mut out = PolyMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.a[i][k].is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    if !o.a[k][j].is_zero() {
                        out.a[i][j] = &out.a[i][j] + &(&self.a[i][k] * &o.a[k][j]);
                    }
                }
            }
        }
        out
    }

    pub fn select_cols(&self, idx: &[usize]) -> PolyMatrix {
        PolyMatrix {
            rows: self.rows,
            cols: idx.len(),
            a: self
                .a
                .iter()
                .map(|r| idx.iter().map(|&j| r[j].clone()).collect())
                .collect(),
        }
    }

    /// Fraction-free (Bareiss) forward elimination. Returns the eliminated
    /// matrix, the pivot positions and the number of row swaps.
    fn bareiss(&self) -> (Vec<Vec<Poly>>, Vec<(usize, usize)>, usize) {
        let mut a = self.a.clone();
        let mut prev = Poly::one();
        let mut pivots = Vec::new();
        let mut swaps = 0;
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows)
                .filter(|&i| !a[i][c].is_zero())
                .min_by_key(|&i| a[i][c].deg0())
            else {
                continue;
            };
            if p != r {
                a.swap(p, r);
                swaps += 1;
            }
            let piv = a[r][c].clone();
            for i in r + 1..self.rows {
                let f = a[i][c].clone();
                for j in c + 1..self.cols {
                    let v = &(&piv * &a[i][j]) - &(&f * &a[r][j]);
                    a[i][j] = if prev.is_one() {
                        v
                    } else {
                        v.exact_div(&prev).expect("Bareiss division is exact")
                    };
                }
                a[i][c] = Poly::zero();
            }
            prev = piv;
            pivots.push((r, c));
            r += 1;
        }
        (a, pivots, swaps)
    }

    pub fn rank(&self) -> usize {
        self.bareiss().1.len()
    }

    pub fn det(&self) -> Poly {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        if self.rows == 0 {
            return Poly::one();
        }
        if self.rows == 1 {
            return self.a[0][0].clone();
        }
        if self.rows == 2 {
            return &(&self.a[0][0] * &self.a[1][1]) - &(&self.a[0][1] * &self.a[1][0]);
        }
        let (a, pivots, swaps) = self.bareiss();
        if pivots.len() < self.rows {
            return Poly::zero();
        }
        let d = a[self.rows - 1][self.cols - 1].clone();
        if swaps % 2 == 1 {
            -d
        } else {
            d
        }
    }

    /// Monic gcd of all maximal (rows×rows) minors of a wide matrix; zero if
    /// the matrix is rank deficient.
    pub fn max_minors_gcd(&self) -> Poly {
        assert!(
            self.rows <= self.cols,
            "max_minors_gcd expects rows <= cols"
        );
        let mut g = Poly::zero();
        for idx in combinations(self.cols, self.rows) {
            let d = self.select_cols(&idx).det();
            if d.is_zero() {
                continue;
            }
            g = g.gcd(&d);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Euclidean row reduction to echelon form with unimodular row
    /// operations. For a full-column-rank input the top square block is
    /// upper triangular and the remaining rows vanish; that block is a
    /// greatest common right divisor of the row blocks.
    pub fn row_echelon(&self) -> PolyMatrix {
        let mut a = self.a.clone();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            loop {
                let Some(p) = (r..self.rows)
                    .filter(|&i| !a[i][c].is_zero())
                    .min_by_key(|&i| a[i][c].deg0())
                else {
                    break;
                };
                a.swap(p, r);
                let mut clean = true;
                for i in r + 1..self.rows {
                    if a[i][c].is_zero() {
                        continue;
                    }
                    let (quo, _) = a[i][c].div_rem(&a[r][c]);
                    let (head, tail) = a.split_at_mut(i);
                    let pr = &head[r];
                    for j in c..self.cols {
                        if !pr[j].is_zero() {
                            tail[0][j] = &tail[0][j] - &(&quo * &pr[j]);
                        }
                    }
                    if !tail[0][c].is_zero() {
                        clean = false;
                    }
                }
                if clean {
                    break;
                }
            }
            if !a[r][c].is_zero() {
                r += 1;
            }
        }
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            a,
        }
    }

    /// Degree of each column (max entry degree; zero columns get 0).
    pub fn col_degrees(&self) -> Vec<usize> {
        (0..self.cols)
            .map(|j| {
                (0..self.rows)
                    .map(|i| self.a[i][j].deg0())
                    .max()
                    .unwrap_or(0)
            })
            .collect()
    }

    /// Leading column coefficient matrix for the given column degrees.
    pub fn leading_col_coeffs(&self, degs: &[usize]) -> Vec<Vec<Q>> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.a[i][j].coeff(degs[j]))
                    .collect()
            })
            .collect()
    }

    /// Column-reduces a full-column-rank matrix by unimodular column
    /// operations: afterwards the leading column coefficient matrix has full
    /// column rank.
    pub fn column_reduce(&self) -> PolyMatrix {
        let mut m = self.clone();
        loop {
            let degs = m.col_degrees();
            let lead = m.leading_col_coeffs(&degs);
            let ker = linalg::kernel(&lead, m.cols);
            let Some(alpha) = ker.into_iter().next() else {
                return m;
            };
            let jstar = (0..m.cols)
                .filter(|&j| !alpha[j].is_zero())
                .max_by(|&x, &y| degs[x].cmp(&degs[y]).then(y.cmp(&x)))
                .expect("kernel vector is nonzero");
            let inv = alpha[jstar].recip();
            for i in 0..m.rows {
                let mut acc = Poly::zero();
                for j in 0..m.cols {
                    if alpha[j].is_zero() {
                        continue;
                    }
                    let coef: Q = &alpha[j] * &inv;
                    let term = m.a[i][j].shift(degs[jstar] - degs[j]).scale(&coef);
                    acc = &acc + &term;
                }
                m.a[i][jstar] = acc;
            }
        }
    }
}

fn scaled_num(f: &RationalFunction, l: &Poly) -> Poly {
    if f.is_zero() {
        return Poly::zero();
    }
    &l.exact_div(f.den()).expect("lcm is a multiple") * f.num()
}

/// All k-subsets of 0..n in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}
