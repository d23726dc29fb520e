//! Reference procedures for the model-matching step.

use qistab::factorization::{decoupled_dcf, factorize, Dcf};
use qistab::modelmatch::{
    build_system, determined_component_certificate, stable_affine_solve, AffineSolveOutcome, Side,
};
use qistab::ratfield::q;
use qistab::sparsity::{in_s, is_qi_for};
use qistab::tfm::Partition;
use qistab::{BinMatrix, Poly, RationalFunction, Region, SparsityConstraint, Tfm};

use super::{rf, Gen};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generic {
    Feasible(Tfm),
    Infeasible,
    Inconclusive,
}

impl Generic {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Generic::Feasible(_))
    }
}

/// Verdict from the coefficient-matching solver and the rank / determined
/// component certificates only.
pub fn generic_verdict(d: &Dcf, s: &SparsityConstraint, side: Side, max_degree: usize) -> Generic {
    let sys = build_system(d, s, side).unwrap();
    let (p, m) = sys.dims;
    match stable_affine_solve(&sys.t, &sys.b, d.region, max_degree).unwrap() {
        AffineSolveOutcome::Solved { z, .. } => Generic::Feasible(Tfm::unvec(&z, p, m).unwrap()),
        AffineSolveOutcome::FieldInfeasible { .. } => Generic::Infeasible,
        AffineSolveOutcome::Inconclusive { .. } => {
            if determined_component_certificate(&sys).is_some() {
                Generic::Infeasible
            } else {
                Generic::Inconclusive
            }
        }
    }
}

/// Exhaustive search over Q with entries c(λ)/(λ+1)², c of degree ≤ 2 with
/// coefficients in {-1, 0, 1}. Floating point screens candidates at a few
/// sample points; a hit is confirmed exactly. Returns the first exact hit.
pub fn grid_search(d: &Dcf, s: &SparsityConstraint) -> Option<Tfm> {
    let (p, m) = (d.inputs(), d.outputs());
    let cells = p * m;
    let sigma2 = Poly::from_i64s(&[1, 2, 1]);
    let mut cands: Vec<RationalFunction> = Vec::new();
    for a in -1..=1 {
        for b in -1..=1 {
            for c in -1..=1 {
                cands.push(
                    RationalFunction::new(Poly::from_i64s(&[a, b, c]), sigma2.clone()).unwrap(),
                );
            }
        }
    }
    let points = [2i64, 3, 5, 7, 11];
    let f = |x: &RationalFunction, t: i64| -> f64 {
        let v = x.eval(&q(t)).unwrap();
        v.numer().to_string().parse::<f64>().unwrap()
            / v.denom().to_string().parse::<f64>().unwrap()
    };
    let mx = &d.m * &d.x;
    let kbin = s.scalar_kbin();
    // residual(e, t) = Σ_{kl} coef[e][kl](t)·q_kl(t) + rhs[e](t)
    let mut coef: Vec<Vec<Vec<f64>>> = Vec::new();
    let mut rhs: Vec<Vec<f64>> = Vec::new();
    for j in 0..m {
        for i in 0..p {
            if kbin.get(i, j) {
                continue;
            }
            let mut ce = Vec::new();
            for l in 0..m {
                for k in 0..p {
                    ce.push(
                        points
                            .iter()
                            .map(|&t| f(d.m.get(i, k), t) * f(d.m_tilde.get(l, j), t))
                            .collect(),
                    );
                }
            }
            coef.push(ce);
            rhs.push(points.iter().map(|&t| f(mx.get(i, j), t)).collect());
        }
    }
    let cand_vals: Vec<Vec<f64>> = cands
        .iter()
        .map(|c| points.iter().map(|&t| f(c, t)).collect())
        .collect();
    let mut idx = vec![0usize; cells];
    loop {
        let ok = coef.iter().zip(&rhs).all(|(ce, r)| {
            (0..points.len()).all(|t| {
                let mut acc = r[t];
                for (cell, &ci) in idx.iter().enumerate() {
                    acc += ce[cell][t] * cand_vals[ci][t];
                }
                acc.abs() <= 1e-9 * (1.0 + r[t].abs())
            })
        });
        if ok {
            // vec order: cell = k + l·p
            let qm = Tfm::from_fn(p, m, |k, l| cands[idx[k + l * p]].clone());
            let xq = &d.x + &(&qm * &d.m_tilde);
            if in_s(&(&d.m * &xq), s).unwrap() {
                return Some(qm);
            }
        }
        let mut c = 0;
        loop {
            if c == cells {
                return None;
            }
            idx[c] += 1;
            if idx[c] < cands.len() {
                break;
            }
            idx[c] = 0;
            c += 1;
        }
    }
}

/// Random 2×2 plant whose unstable poles sit on the diagonal, off-diagonal
/// entries stable (or zero), with an input/output decoupled DCF.
pub fn decoupled_instance(gen: &mut Gen) -> Option<(Tfm, Dcf)> {
    let c = Region::Continuous;
    let u1 = gen.int(1, 3);
    let u2 = gen.int(1, 3);
    let diag1 = RationalFunction::from_roots(gen.int(1, 3), &[], &[u1, -gen.int(1, 4)]);
    let diag2 = RationalFunction::from_roots(gen.int(-3, -1), &[], &[u2]);
    let off = |gen: &mut Gen| {
        if gen.coin(0.3) {
            RationalFunction::zero()
        } else {
            RationalFunction::from_roots(gen.int(1, 2), &[], &[-gen.int(1, 5)])
        }
    };
    let g = Tfm::from_rows(vec![vec![diag1, off(gen)], vec![off(gen), diag2]]).unwrap();
    let part = Partition::unit(2, 2);
    let any = factorize(&g, c).ok()?;
    let d = decoupled_dcf(&g, &part, &any).ok()?;
    Some((g, d))
}

/// All 2×2 patterns with exactly two zeros.
pub fn two_zero_patterns() -> Vec<BinMatrix> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in a + 1..4 {
            out.push(BinMatrix::from_fn(2, 2, |i, j| {
                let cell = i * 2 + j;
                cell != a && cell != b
            }));
        }
    }
    out
}

/// Every 2×2 controller pattern that is QI under `g`.
pub fn qi_patterns_2x2(g: &Tfm) -> Vec<BinMatrix> {
    let mut out = Vec::new();
    for bits in 0u8..16 {
        let kbin = BinMatrix::from_fn(2, 2, |i, j| bits >> (i * 2 + j) & 1 == 1);
        if is_qi_for(&SparsityConstraint::elementwise(kbin.clone()), g).unwrap() {
            out.push(kbin);
        }
    }
    out
}

/// A controller in 𝒮 violating K·G·K ∈ 𝒮, built from two allowed entries
/// (i, j), (k, l) with G[j, k] ≠ 0 and (i, l) forbidden.
pub fn violating_controller(kbin: &BinMatrix, g: &Tfm) -> Option<Tfm> {
    let (p, m) = (kbin.rows(), kbin.cols());
    for i in 0..p {
        for j in 0..m {
            for k in 0..p {
                for l in 0..m {
                    if kbin.get(i, j) && kbin.get(k, l) && !kbin.get(i, l) && !g.get(j, k).is_zero()
                    {
                        let mut kk = Tfm::zeros(p, m);
                        kk.set(i, j, rf(1, &[], &[-1]));
                        kk.set(k, l, rf(2, &[], &[-2]));
                        return Some(kk);
                    }
                }
            }
        }
    }
    None
}
