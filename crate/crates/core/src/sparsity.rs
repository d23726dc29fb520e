//! Boolean sparsity patterns, quadratic invariance and the feedback
//! transformation K ↦ K(I + GK)⁻¹.

use std::fmt;

use crate::error::{invalid, Error, Result};
use crate::ratfield::RationalFunction;
use crate::tfm::{offsets, Partition, Tfm};

/// Matrix over the Boolean semiring ({0,1}, or, and).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinMatrix {
    rows: usize,
    cols: usize,
    bits: Vec<bool>,
}

impl BinMatrix {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut bits = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                bits.push(f(i, j));
            }
        }
        BinMatrix { rows, cols, bits }
    }

    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return invalid("ragged binary matrix");
        }
        if rows.iter().flatten().any(|&b| b > 1) {
            return invalid("binary matrix entries must be 0 or 1");
        }
        Ok(BinMatrix::from_fn(r, c, |i, j| rows[i][j] == 1))
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        BinMatrix::from_fn(rows, cols, |_, _| false)
    }

    pub fn ones(rows: usize, cols: usize) -> Self {
        BinMatrix::from_fn(rows, cols, |_, _| true)
    }

    pub fn identity(n: usize) -> Self {
        BinMatrix::from_fn(n, n, |i, j| i == j)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        self.bits[i * self.cols + j] = v;
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) as u8).collect())
            .collect()
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// Boolean matrix product.
    pub fn mul(&self, o: &BinMatrix) -> Result<BinMatrix> {
        if self.cols != o.rows {
            return invalid(format!(
                "cannot multiply {}x{} by {}x{} binary matrices",
                self.rows, self.cols, o.rows, o.cols
            ));
        }
        Ok(BinMatrix::from_fn(self.rows, o.cols, |i, j| {
            (0..self.cols).any(|k| self.get(i, k) && o.get(k, j))
        }))
    }

    /// Entrywise partial order.
    pub fn le(&self, o: &BinMatrix) -> bool {
        self.rows == o.rows
            && self.cols == o.cols
            && self.bits.iter().zip(&o.bits).all(|(a, b)| !a || *b)
    }

    pub fn complement(&self) -> BinMatrix {
        BinMatrix {
            rows: self.rows,
            cols: self.cols,
            bits: self.bits.iter().map(|b| !b).collect(),
        }
    }

    /// Replaces every block entry by a constant block of the given sizes.
    pub fn expand(&self, row_sizes: &[usize], col_sizes: &[usize]) -> Result<BinMatrix> {
        if row_sizes.len() != self.rows || col_sizes.len() != self.cols {
            return invalid("block sizes do not match the binary matrix");
        }
        let ro = offsets(row_sizes);
        let co = offsets(col_sizes);
        let block_of = |o: &[usize], x: usize| o.iter().rposition(|&s| s <= x).unwrap();
        Ok(BinMatrix::from_fn(ro[self.rows], co[self.cols], |i, j| {
            self.get(block_of(&ro, i), block_of(&co, j))
        }))
    }

    /// Column-major stacking, matching [`Tfm::vec`].
    pub fn vec_bits(&self) -> Vec<bool> {
        let mut v = Vec::with_capacity(self.bits.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                v.push(self.get(i, j));
            }
        }
        v
    }

    pub fn is_block_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || !self.get(i, j)))
    }
}

impl fmt::Debug for BinMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_rows())
    }
}

impl fmt::Display for BinMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<&str> = (0..self.cols)
                .map(|j| if self.get(i, j) { "1" } else { "0" })
                .collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// K^bin together with the block partition it refers to. K^bin has one
/// row per input block and one column per output block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsityConstraint {
    pub kbin: BinMatrix,
    pub partition: Partition,
}

impl SparsityConstraint {
    pub fn new(kbin: BinMatrix, partition: Partition) -> Result<Self> {
        if kbin.rows() != partition.p.len() || kbin.cols() != partition.m.len() {
            return invalid(format!(
                "kbin is {}x{} but the partition has {} input and {} output blocks",
                kbin.rows(),
                kbin.cols(),
                partition.p.len(),
                partition.m.len()
            ));
        }
        Ok(SparsityConstraint { kbin, partition })
    }

    /// Constraint on scalar entries for a p×m controller.
    pub fn elementwise(kbin: BinMatrix) -> Self {
        let partition = Partition::unit(kbin.cols(), kbin.rows());
        SparsityConstraint { kbin, partition }
    }

    /// K^bin expanded to one bit per scalar controller entry (p×m).
    pub fn scalar_kbin(&self) -> BinMatrix {
        self.kbin
            .expand(&self.partition.p, &self.partition.m)
            .expect("partition checked")
    }

    pub fn controller_dims(&self) -> (usize, usize) {
        (self.partition.p_total(), self.partition.m_total())
    }

    /// Restricts this constraint to the scalar level.
    pub fn to_scalar(&self) -> SparsityConstraint {
        SparsityConstraint::elementwise(self.scalar_kbin())
    }
}

/// Boolean QI test: K^bin·G^bin·K^bin ≤ K^bin.
pub fn is_qi(kbin: &BinMatrix, gbin: &BinMatrix) -> Result<bool> {
    if gbin.rows() != kbin.cols() || gbin.cols() != kbin.rows() {
        return invalid(format!(
            "kbin {}x{} and gbin {}x{} are not conformable",
            kbin.rows(),
            kbin.cols(),
            gbin.rows(),
            gbin.cols()
        ));
    }
    Ok(kbin.mul(gbin)?.mul(kbin)?.le(kbin))
}

/// QI test of a constraint against a plant, at block level.
pub fn is_qi_for(s: &SparsityConstraint, g: &Tfm) -> Result<bool> {
    s.partition.check_plant(g)?;
    is_qi(&s.kbin, &g.plant_pattern(&s.partition)?)
}

/// Membership of a controller-shaped matrix in 𝒮.
pub fn in_s(k: &Tfm, s: &SparsityConstraint) -> Result<bool> {
    if k.dims() != s.controller_dims() {
        return invalid(format!(
            "controller is {}x{}, constraint expects {}x{}",
            k.rows(),
            k.cols(),
            s.controller_dims().0,
            s.controller_dims().1
        ));
    }
    Ok(k.controller_pattern(&s.partition)?.le(&s.kbin))
}

pub fn kbin_perp(kbin: &BinMatrix) -> BinMatrix {
    kbin.complement()
}

/// x = x_S + x_S⊥ with the blocks allowed by K^bin kept in x_S.
pub fn split_s(x: &Tfm, s: &SparsityConstraint) -> Result<(Tfm, Tfm)> {
    if x.dims() != s.controller_dims() {
        return invalid("split_s: dimensions do not match the constraint");
    }
    let bits = s.scalar_kbin();
    let keep = Tfm::from_fn(x.rows(), x.cols(), |i, j| {
        if bits.get(i, j) {
            x.get(i, j).clone()
        } else {
            RationalFunction::zero()
        }
    });
    let rest = Tfm::from_fn(x.rows(), x.cols(), |i, j| {
        if bits.get(i, j) {
            RationalFunction::zero()
        } else {
            x.get(i, j).clone()
        }
    });
    Ok((keep, rest))
}

fn check_feedback_args(k: &Tfm, g: &Tfm) -> Result<()> {
    if !g.is_strictly_proper() {
        return Err(Error::InvalidPlant("plant must be strictly proper".into()));
    }
    if k.rows() != g.cols() || k.cols() != g.rows() {
        return invalid("controller and plant dimensions are not compatible");
    }
    Ok(())
}

/// h_G(K) = K(I + GK)⁻¹.
pub fn h_g(k: &Tfm, g: &Tfm) -> Result<Tfm> {
    check_feedback_args(k, g)?;
    let m = g.rows();
    let s = (&Tfm::identity(m) + &(g * k)).inverse()?;
    Ok(k * &s)
}

/// Inverse transformation K ↦ K(I − GK)⁻¹.
pub fn h_g_inv(k: &Tfm, g: &Tfm) -> Result<Tfm> {
    check_feedback_args(k, g)?;
    let m = g.rows();
    let s = (&Tfm::identity(m) - &(g * k)).inverse()?;
    Ok(k * &s)
}

/// Φ = I − diag(vec(K^bin)) on the scalar-expanded pattern: a constant 0/1
/// diagonal matrix selecting the forbidden entries of vec(K).
pub fn phi_selector(s: &SparsityConstraint) -> Tfm {
    let bits = s.scalar_kbin().vec_bits();
    let d: Vec<RationalFunction> = bits
        .iter()
        .map(|&b| {
            if b {
                RationalFunction::zero()
            } else {
                RationalFunction::one()
            }
        })
        .collect();
    Tfm::diag(&d)
}

/// Indices into vec(K) (column-major) of forbidden scalar entries.
pub fn forbidden_vec_indices(s: &SparsityConstraint) -> Vec<usize> {
    s.scalar_kbin()
        .vec_bits()
        .iter()
        .enumerate()
        .filter(|(_, &b)| !b)
        .map(|(i, _)| i)
        .collect()
}
