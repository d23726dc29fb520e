//! Matrices of rational functions.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::error::{invalid, Error, Result};
use crate::linalg::{self, QMatrix};
use crate::polymat::PolyMatrix;
use crate::ratfield::{is_member_a, Poly, RationalFunction, Region, Q};
use crate::sparsity::BinMatrix;

type Rf = RationalFunction;

/// Dense row-major matrix over ℝ(λ).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tfm {
    rows: usize,
    cols: usize,
    e: Vec<Rf>,
}

/// Output block sizes `m` (rows of the plant) and input block sizes `p`
/// (columns of the plant).
#[derive(Clone, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct Partition {
    pub m: Vec<usize>,
    pub p: Vec<usize>,
}

impl Partition {
    pub fn new(m: Vec<usize>, p: Vec<usize>) -> Result<Self> {
        if m.is_empty() || p.is_empty() || m.contains(&0) || p.contains(&0) {
            return invalid("partition block sizes must be positive and non-empty");
        }
        Ok(Partition { m, p })
    }

    /// One block per scalar signal.
    pub fn unit(m: usize, p: usize) -> Self {
        Partition {
            m: vec![1; m],
            p: vec![1; p],
        }
    }

    pub fn m_total(&self) -> usize {
        self.m.iter().sum()
    }

    pub fn p_total(&self) -> usize {
        self.p.iter().sum()
    }

    pub fn is_unit(&self) -> bool {
        self.m.iter().chain(&self.p).all(|&s| s == 1)
    }

    /// Checks that the partition fits an m×p plant.
    pub fn check_plant(&self, g: &Tfm) -> Result<()> {
        if g.rows() != self.m_total() || g.cols() != self.p_total() {
            return invalid(format!(
                "partition sums ({}, {}) do not match plant {}x{}",
                self.m_total(),
                self.p_total(),
                g.rows(),
                g.cols()
            ));
        }
        Ok(())
    }
}

pub(crate) fn offsets(sizes: &[usize]) -> Vec<usize> {
    let mut o = Vec::with_capacity(sizes.len() + 1);
    let mut acc = 0;
    o.push(0);
    for s in sizes {
        acc += s;
        o.push(acc);
    }
    o
}

impl Tfm {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rf>) -> Result<Self> {
        if entries.len() != rows * cols {
            return invalid(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            ));
        }
        Ok(Tfm {
            rows,
            cols,
            e: entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Tfm {
            rows,
            cols,
            e: vec![Rf::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Tfm::from_fn(n, n, |i, j| if i == j { Rf::one() } else { Rf::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rf) -> Self {
        let mut e = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                e.push(f(i, j));
            }
        }
        Tfm { rows, cols, e }
    }

    pub fn from_rows(rows: Vec<Vec<Rf>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return invalid("ragged rows");
        }
        Ok(Tfm {
            rows: r,
            cols: c,
            e: rows.into_iter().flatten().collect(),
        })
    }

    pub fn scalar(f: Rf) -> Self {
        Tfm {
            rows: 1,
            cols: 1,
            e: vec![f],
        }
    }

    pub fn column(v: Vec<Rf>) -> Self {
        Tfm {
            rows: v.len(),
            cols: 1,
            e: v,
        }
    }

    pub fn diag(d: &[Rf]) -> Self {
        let n = d.len();
        Tfm::from_fn(n, n, |i, j| if i == j { d[i].clone() } else { Rf::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rf {
        &self.e[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rf) {
        self.e[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Rf] {
        &self.e
    }

    pub fn row(&self, i: usize) -> &[Rf] {
        &self.e[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rf>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().all(Rf::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    pub fn is_proper(&self) -> bool {
        self.e.iter().all(Rf::is_proper)
    }

    pub fn is_strictly_proper(&self) -> bool {
        self.e.iter().all(Rf::is_strictly_proper)
    }

    /// Every entry proper with poles in Ω.
    pub fn is_member_a(&self, region: Region) -> bool {
        self.e.iter().all(|f| is_member_a(f, region))
    }

    pub fn map(&self, f: impl Fn(&Rf) -> Rf) -> Tfm {
        Tfm {
            rows: self.rows,
            cols: self.cols,
            e: self.e.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, s: &Rf) -> Tfm {
        self.map(|v| v * s)
    }

    pub fn transpose(&self) -> Tfm {
        Tfm::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn checked_add(&self, o: &Tfm) -> Result<Tfm> {
        self.same_dims(o, "add")?;
        Ok(Tfm {
            rows: self.rows,
            cols: self.cols,
            e: self.e.iter().zip(&o.e).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn checked_sub(&self, o: &Tfm) -> Result<Tfm> {
        self.same_dims(o, "subtract")?;
        Ok(Tfm {
            rows: self.rows,
            cols: self.cols,
            e: self.e.iter().zip(&o.e).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn checked_mul(&self, o: &Tfm) -> Result<Tfm> {
        if self.cols != o.rows {
            return invalid(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, o.rows, o.cols
            ));
        }
        let mut out = Tfm::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * o.cols + j;
                    out.e[idx] = &out.e[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    fn same_dims(&self, o: &Tfm, what: &str) -> Result<()> {
        if self.dims() != o.dims() {
            return invalid(format!(
                "cannot {what} {}x{} and {}x{}",
                self.rows, self.cols, o.rows, o.cols
            ));
        }
        Ok(())
    }

    /// Exact inverse by Gauss–Jordan elimination over ℝ(λ).
    pub fn inverse(&self) -> Result<Tfm> {
        if !self.is_square() {
            return invalid("inverse of a non-square matrix");
        }
        let n = self.rows;
        if n == 1 {
            return self.e[0]
                .recip()
                .map(Tfm::scalar)
                .ok_or(Error::SingularMatrix);
        }
        if self.is_diagonal() {
            let d = (0..n)
                .map(|i| self.get(i, i).recip().ok_or(Error::SingularMatrix))
                .collect::<Result<Vec<_>>>()?;
            return Ok(Tfm::diag(&d));
        }
        let mut a = self.to_rows();
        let mut inv = Tfm::identity(n).to_rows();
        for c in 0..n {
            let p = pick_pivot(&a, c, c).ok_or(Error::SingularMatrix)?;
            a.swap(c, p);
            inv.swap(c, p);
            let piv = a[c][c].recip().unwrap();
            for j in 0..n {
                a[c][j] = &a[c][j] * &piv;
                inv[c][j] = &inv[c][j] * &piv;
            }
            for i in 0..n {
                if i == c || a[i][c].is_zero() {
                    continue;
                }
                let f = a[i][c].clone();
                for j in 0..n {
                    if !a[c][j].is_zero() {
                        a[i][j] = &a[i][j] - &(&f * &a[c][j]);
                    }
                    if !inv[c][j].is_zero() {
                        inv[i][j] = &inv[i][j] - &(&f * &inv[c][j]);
                    }
                }
            }
        }
        Tfm::from_rows(inv)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    /// Determinant over ℝ(λ).
    pub fn det(&self) -> Result<Rf> {
        if !self.is_square() {
            return invalid("determinant of a non-square matrix");
        }
        if self.is_diagonal() {
            return Ok((0..self.rows).fold(Rf::one(), |acc, i| &acc * self.get(i, i)));
        }
        let (p, dens) = PolyMatrix::clear_rows(self);
        let d = p.det();
        let scale = dens.iter().fold(Poly::one(), |acc, d| &acc * d);
        Rf::new(d, scale)
    }

    /// Rank over ℝ(λ), computed fraction-free on the row-cleared numerators.
    pub fn rank(&self) -> usize {
        PolyMatrix::clear_rows(self).0.rank()
    }

    /// Standard Kronecker product.
    pub fn kron(&self, o: &Tfm) -> Tfm {
        Tfm::from_fn(self.rows * o.rows, self.cols * o.cols, |i, j| {
            let a = self.get(i / o.rows, j / o.cols);
            if a.is_zero() {
                return Rf::zero();
            }
            a * o.get(i % o.rows, j % o.cols)
        })
    }

    /// Column-major stacking: entry (i, j) goes to index i + j·rows.
    pub fn vec(&self) -> Tfm {
        let mut v = Vec::with_capacity(self.rows * self.cols);
        for j in 0..self.cols {
            for i in 0..self.rows {
                v.push(self.get(i, j).clone());
            }
        }
        Tfm::column(v)
    }

    /// Inverse of [`Tfm::vec`].
    pub fn unvec(v: &Tfm, rows: usize, cols: usize) -> Result<Tfm> {
        if v.cols != 1 || v.rows != rows * cols {
            return invalid(format!(
                "cannot reshape a {}x{} matrix into {rows}x{cols}",
                v.rows, v.cols
            ));
        }
        Ok(Tfm::from_fn(rows, cols, |i, j| v.e[i + j * rows].clone()))
    }

    pub fn diag_of_vec(v: &Tfm) -> Result<Tfm> {
        if v.cols != 1 && v.rows > 0 {
            return invalid("diag_of_vec expects a column vector");
        }
        Ok(Tfm::diag(&v.e))
    }

    pub fn hstack(parts: &[&Tfm]) -> Result<Tfm> {
        let rows = parts.first().map_or(0, |p| p.rows);
        if parts.iter().any(|p| p.rows != rows) {
            return invalid("hstack row counts differ");
        }
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Tfm::zeros(rows, cols);
        let mut c0 = 0;
        for p in parts {
            out.put(0, c0, p);
            c0 += p.cols;
        }
        Ok(out)
    }

    pub fn vstack(parts: &[&Tfm]) -> Result<Tfm> {
        let cols = parts.first().map_or(0, |p| p.cols);
        if parts.iter().any(|p| p.cols != cols) {
            return invalid("vstack column counts differ");
        }
        let rows = parts.iter().map(|p| p.rows).sum();
        let mut out = Tfm::zeros(rows, cols);
        let mut r0 = 0;
        for p in parts {
            out.put(r0, 0, p);
            r0 += p.rows;
        }
        Ok(out)
    }

    pub fn block_diag(parts: &[Tfm]) -> Tfm {
        let rows = parts.iter().map(|p| p.rows).sum();
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Tfm::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for p in parts {
            out.put(r0, c0, p);
            r0 += p.rows;
            c0 += p.cols;
        }
        out
    }

    /// Writes `src` with its top-left corner at (r0, c0).
    pub fn put(&mut self, r0: usize, c0: usize, src: &Tfm) {
        for i in 0..src.rows {
            for j in 0..src.cols {
                self.set(r0 + i, c0 + j, src.get(i, j).clone());
            }
        }
    }

    pub fn sub_matrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Tfm {
        Tfm::from_fn(rows, cols, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn select_rows(&self, idx: &[usize]) -> Tfm {
        Tfm::from_fn(idx.len(), self.cols, |i, j| self.get(idx[i], j).clone())
    }

    pub fn select_cols(&self, idx: &[usize]) -> Tfm {
        Tfm::from_fn(self.rows, idx.len(), |i, j| self.get(i, idx[j]).clone())
    }

    /// Elementwise nonzero pattern.
    pub fn pattern(&self) -> BinMatrix {
        BinMatrix::from_fn(self.rows, self.cols, |i, j| !self.get(i, j).is_zero())
    }

    /// Block nonzero pattern: entry (I, J) is 1 unless block (I, J) vanishes.
    pub fn pattern_blocks(&self, row_sizes: &[usize], col_sizes: &[usize]) -> Result<BinMatrix> {
        if row_sizes.iter().sum::<usize>() != self.rows
            || col_sizes.iter().sum::<usize>() != self.cols
        {
            return invalid(format!(
                "block sizes {row_sizes:?} x {col_sizes:?} do not fit a {}x{} matrix",
                self.rows, self.cols
            ));
        }
        let ro = offsets(row_sizes);
        let co = offsets(col_sizes);
        Ok(BinMatrix::from_fn(
            row_sizes.len(),
            col_sizes.len(),
            |bi, bj| {
                (ro[bi]..ro[bi + 1])
                    .any(|i| (co[bj]..co[bj + 1]).any(|j| !self.get(i, j).is_zero()))
            },
        ))
    }

    /// Block pattern of a plant-shaped (m×p) matrix.
    pub fn plant_pattern(&self, part: &Partition) -> Result<BinMatrix> {
        self.pattern_blocks(&part.m, &part.p)
    }

    /// Block pattern of a controller-shaped (p×m) matrix.
    pub fn controller_pattern(&self, part: &Partition) -> Result<BinMatrix> {
        self.pattern_blocks(&part.p, &part.m)
    }

    /// Constant matrix a(λ0).
    pub fn eval_at(&self, x: &Q) -> Result<QMatrix> {
        let mut out = vec![vec![Q::zero(); self.cols]; self.rows];
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[i][j] = self
                    .get(i, j)
                    .eval(x)
                    .ok_or_else(|| Error::PoleAtEvaluation(x.to_string()))?;
            }
        }
        Ok(out)
    }

    pub fn eval_rank_at(&self, x: &Q) -> Result<usize> {
        Ok(linalg::rank(&self.eval_at(x)?))
    }

    /// Limit as λ → ∞; `None` if some entry is improper.
    pub fn value_at_infinity(&self) -> Option<QMatrix> {
        let mut out = vec![vec![Q::zero(); self.cols]; self.rows];
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[i][j] = self.get(i, j).value_at_infinity()?;
            }
        }
        Some(out)
    }

    /// Reduced row echelon form over ℝ(λ) together with the pivot columns.
    pub fn rref(&self) -> (Tfm, Vec<usize>) {
        let mut a = self.to_rows();
        let (rows, cols) = self.dims();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = pick_pivot(&a, r, c) else {
                continue;
            };
            a.swap(r, p);
            let piv = a[r][c].recip().unwrap();
            for j in c..cols {
                a[r][j] = &a[r][j] * &piv;
            }
            for i in 0..rows {
                if i == r || a[i][c].is_zero() {
                    continue;
                }
                let f = a[i][c].clone();
                for j in c..cols {
                    if !a[r][j].is_zero() {
                        a[i][j] = &a[i][j] - &(&f * &a[r][j]);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (
            Tfm::from_rows(a).unwrap_or_else(|_| Tfm::zeros(rows, cols)),
            pivots,
        )
    }

    /// Largest denominator degree over all entries.
    pub fn max_den_degree(&self) -> usize {
        self.e.iter().map(|f| f.den().deg0()).max().unwrap_or(0)
    }

    /// Human-readable rendering, one row per line.
    pub fn pretty(&self, var: &str) -> String {
        let cells: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(|f| f.pretty(var)).collect())
            .collect();
        let widths: Vec<usize> = (0..self.cols)
            .map(|j| {
                cells
                    .iter()
                    .map(|r| r[j].chars().count())
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let mut s = String::new();
        for row in cells {
            s.push_str("[ ");
            for (j, c) in row.iter().enumerate() {
                let pad = widths[j] - c.chars().count();
                s.push_str(c);
                s.push_str(&" ".repeat(pad));
                s.push_str(if j + 1 < self.cols { " | " } else { " ]" });
            }
            s.push('\n');
        }
        s
    }
}

/// Row index ≥ `from` whose entry in column `c` is nonzero and simplest.
fn pick_pivot(a: &[Vec<Rf>], from: usize, c: usize) -> Option<usize> {
    (from..a.len())
        .filter(|&i| !a[i][c].is_zero())
        .min_by_key(|&i| a[i][c].num().deg0() + a[i][c].den().deg0())
}

impl fmt::Debug for Tfm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Tfm {}x{}", self.rows, self.cols)?;
        write!(f, "{}", self.pretty("λ"))
    }
}

impl<'a> Add<&'a Tfm> for &'a Tfm {
    type Output = Tfm;
    fn add(self, o: &Tfm) -> Tfm {
        self.checked_add(o).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<'a> Sub<&'a Tfm> for &'a Tfm {
    type Output = Tfm;
    fn sub(self, o: &Tfm) -> Tfm {
        self.checked_sub(o).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<'a> Mul<&'a Tfm> for &'a Tfm {
    type Output = Tfm;
    fn mul(self, o: &Tfm) -> Tfm {
        self.checked_mul(o).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &Tfm {
    type Output = Tfm;
    fn neg(self) -> Tfm {
        self.map(|v| -v)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Tfm> for Tfm {
            type Output = Tfm;
            fn $m(self, o: Tfm) -> Tfm {
                (&self).$m(&o)
            }
        }
        impl $tr<&Tfm> for Tfm {
            type Output = Tfm;
            fn $m(self, o: &Tfm) -> Tfm {
                (&self).$m(o)
            }
        }
        impl $tr<Tfm> for &Tfm {
            type Output = Tfm;
            fn $m(self, o: Tfm) -> Tfm {
                self.$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
