//! Solving T·z = b with z constrained to the stable proper ring, by sweeping
//! over candidate denominators and matching polynomial coefficients.

use num_traits::Zero;

use crate::error::{invalid, Result};
use crate::linalg::{self, QMatrix};
use crate::polymat::PolyMatrix;
use crate::ratfield::{stable_part, Poly, RationalFunction, Region, Q};
use crate::tfm::Tfm;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AffineSolveOutcome {
    /// `z` solves the system exactly and lies in 𝔸; found at sweep degree `degree`.
    Solved { z: Tfm, degree: usize },
    /// rank T < rank [T | b] over ℝ(λ): no solution of any kind.
    FieldInfeasible { rank_t: usize, rank_tb: usize },
    /// Solvable over ℝ(λ) but no stable solution of the searched form up to `degree`.
    Inconclusive { degree: usize },
}

/// Searches z_j = w_j(λ) / (D(λ)·σ(λ)^k), deg w_j ≤ deg D + k, for k = 0, 1, …,
/// `max_degree`. D collects the stable factors that any solution may be
/// forced to carry: stable denominators of b and stable zeros of T. With
/// D = 1 this is exactly the family z = poly/σ^k. The first hit is returned
/// with every free coefficient set to zero.
pub fn stable_affine_solve(
    t: &Tfm,
    b: &Tfm,
    region: Region,
    max_degree: usize,
) -> Result<AffineSolveOutcome> {
    if b.cols() != 1 || b.rows() != t.rows() {
        return invalid(format!(
            "right-hand side is {}x{}, expected {}x1",
            b.rows(),
            b.cols(),
            t.rows()
        ));
    }
    let n = t.cols();
    if t.rows() == 0 || b.is_zero() {
        return Ok(AffineSolveOutcome::Solved {
            z: Tfm::zeros(n, 1),
            degree: 0,
        });
    }
    let aug = Tfm::hstack(&[t, b])?;
    let (paug, _) = PolyMatrix::clear_rows(&aug);
    let rows_sel = independent_rows(&PolyMatrix::clear_rows(t).0);
    let rank_t = rows_sel.len();
    let rank_tb = paug.rank();
    if rank_t < rank_tb {
        return Ok(AffineSolveOutcome::FieldInfeasible { rank_t, rank_tb });
    }
    let t_sel = t.select_rows(&rows_sel);
    let b_sel = b.select_rows(&rows_sel);
    let d = base_denominator(&t_sel, &b_sel, region);
    let sigma = region.sigma();

    // Rows cleared jointly with the right-hand side.
    let (pa, _) = PolyMatrix::clear_rows(&Tfm::hstack(&[&t_sel, &b_sel])?);
    let lhs: Vec<Vec<Poly>> = pa.a.iter().map(|r| r[..n].to_vec()).collect();
    let rhs: Vec<Poly> = pa.a.iter().map(|r| r[n].clone()).collect();

    let mut sigma_k = Poly::one();
    for k in 0..=max_degree {
        if k > 0 {
            sigma_k = &sigma_k * &sigma;
        }
        let den = &d * &sigma_k;
        let width = den.deg0() + 1;
        let targets: Vec<Poly> = rhs.iter().map(|r| r * &den).collect();
        if let Some(w) = match_coefficients(&lhs, &targets, width) {
            let z = Tfm::column(
                w.into_iter()
                    .map(|wj| RationalFunction::new(wj, den.clone()).expect("nonzero denominator"))
                    .collect(),
            );
            if &(t * &z) == b && z.is_member_a(region) {
                return Ok(AffineSolveOutcome::Solved { z, degree: k });
            }
        }
    }
    Ok(AffineSolveOutcome::Inconclusive { degree: max_degree })
}

/// Indices of a maximal set of linearly independent rows (over ℝ(λ)).
pub(crate) fn independent_rows(p: &PolyMatrix) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut cur: Vec<Vec<Poly>> = Vec::new();
    for i in 0..p.rows {
        cur.push(p.a[i].clone());
        if PolyMatrix::new(cur.clone()).rank() == cur.len() {
            chosen.push(i);
        } else {
            cur.pop();
        }
    }
    chosen
}

/// Stable part of lcm(den b) · (zeros of T), with σ factors removed since
/// the sweep supplies those.
fn base_denominator(t: &Tfm, b: &Tfm, region: Region) -> Poly {
    let (p, dens) = PolyMatrix::clear_rows(t);
    let minors = p.max_minors_gcd();
    let row_scale = dens.iter().fold(Poly::one(), |acc, d| &acc * d);
    let zeros = RationalFunction::new(minors, row_scale)
        .map(|f| f.num().monic())
        .unwrap_or_else(|_| Poly::one());
    let den_b = b
        .entries()
        .iter()
        .fold(Poly::one(), |acc, f| acc.lcm(f.den()));
    let cand = &den_b * &zeros;
    let mut hints: Vec<Poly> = Vec::new();
    for f in t.entries().iter().chain(b.entries()) {
        hints.push(f.num().clone());
        hints.push(f.den().clone());
    }
    let sigma = region.sigma();
    hints.push(sigma.clone());
    let mut d = stable_part(&cand, &hints, region);
    while let Some(next) = d.exact_div(&sigma) {
        if d.is_constant() {
            break;
        }
        d = next;
    }
    d.monic()
}

/// Finds polynomials w_j with deg < `width` and Σ_j lhs[i][j]·w_j = targets[i]
/// for every row, by comparing coefficients. Free coefficients are zero.
fn match_coefficients(lhs: &[Vec<Poly>], targets: &[Poly], width: usize) -> Option<Vec<Poly>> {
    let n = lhs.first().map_or(0, Vec::len);
    let mut a: QMatrix = Vec::new();
    let mut rhs: Vec<Q> = Vec::new();
    for (row, target) in lhs.iter().zip(targets) {
        let deg = row
            .iter()
            .map(|p| p.degree().map_or(0, |d| d + width))
            .max()
            .unwrap_or(0)
            .max(target.deg0() + 1);
        for c in 0..deg {
            let mut eq = vec![Q::zero(); n * width];
            for (j, pij) in row.iter().enumerate() {
                for (e, coef) in pij.coeffs().iter().enumerate() {
                    if e <= c && c - e < width && !coef.is_zero() {
                        eq[j * width + (c - e)] = coef.clone();
                    }
                }
            }
            a.push(eq);
            rhs.push(target.coeff(c));
        }
    }
    let x = linalg::solve_particular(&a, &rhs)?;
    Some(
        (0..n)
            .map(|j| Poly::new(x[j * width..(j + 1) * width].to_vec()))
            .collect(),
    )
}

/// Kernel of T·v = 0 over ℝ(λ) as stable column vectors. Polynomial kernel
/// vectors are collected degree by degree, keeping those that raise the rank
/// (a minimal polynomial basis), then each is divided by σ^deg so it lies
/// in 𝔸. The count equals cols − rank(T).
pub fn nullspace_basis(t: &Tfm, region: Region) -> Vec<Tfm> {
    let n = t.cols();
    if t.rows() == 0 {
        return (0..n)
            .map(|j| {
                let mut e = Tfm::zeros(n, 1);
                e.set(j, 0, RationalFunction::one());
                e
            })
            .collect();
    }
    let (p, _) = PolyMatrix::clear_rows(t);
    let sel = independent_rows(&p);
    let rank = sel.len();
    let need = n - rank;
    if need == 0 {
        return Vec::new();
    }
    let p = PolyMatrix::new(sel.iter().map(|&i| p.a[i].clone()).collect());
    let bound: usize =
        p.a.iter()
            .map(|r| r.iter().map(Poly::deg0).max().unwrap_or(0))
            .sum();
    let sigma = region.sigma();
    let mut found: Vec<Vec<Poly>> = Vec::new();
    for d in 0..=bound {
        let width = d + 1;
        for v in polynomial_kernel(&p, width) {
            let mut trial = found.clone();
            trial.push(v.clone());
            if PolyMatrix::new(trial.clone()).rank() == trial.len() {
                found = trial;
                if found.len() == need {
                    break;
                }
            }
        }
        if found.len() == need {
            break;
        }
    }
    found
        .into_iter()
        .map(|v| {
            let deg = v.iter().map(Poly::deg0).max().unwrap_or(0);
            let den = sigma.pow(deg as u32);
            Tfm::column(
                v.into_iter()
                    .map(|e| RationalFunction::new(e, den.clone()).unwrap())
                    .collect(),
            )
        })
        .collect()
}

/// ℚ-basis of polynomial vectors v with deg v_j < width and P·v = 0.
fn polynomial_kernel(p: &PolyMatrix, width: usize) -> Vec<Vec<Poly>> {
    let n = p.cols;
    let mut a: QMatrix = Vec::new();
    for row in &p.a {
        let deg = row
            .iter()
            .map(|q| q.degree().map_or(0, |d| d + width))
            .max()
            .unwrap_or(0);
        for c in 0..deg {
            let mut eq = vec![Q::zero(); n * width];
            for (j, pij) in row.iter().enumerate() {
                for (e, coef) in pij.coeffs().iter().enumerate() {
                    if e <= c && c - e < width {
                        eq[j * width + (c - e)] = coef.clone();
                    }
                }
            }
            a.push(eq);
        }
    }
    linalg::kernel(&a, n * width)
        .into_iter()
        .map(|x| {
            (0..n)
                .map(|j| Poly::new(x[j * width..(j + 1) * width].to_vec()))
                .collect()
        })
        .collect()
}
