//! Exact root-location tests and membership in the ring of stable proper
//! rational functions.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::poly::{Poly, Q};
use super::rational::RationalFunction;
use crate::error::{Error, Result};

/// Open stability region Ω. Points on the boundary count as unstable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Region {
    /// Open left half-plane, λ = s.
    Continuous,
    /// Open unit disk, λ = z.
    Discrete,
}

impl Region {
    /// Fixed stable polynomial used to make polynomial factors proper:
    /// λ + 1 in continuous time, λ in discrete time.
    pub fn sigma(self) -> Poly {
        match self {
            Region::Continuous => Poly::from_i64s(&[1, 1]),
            Region::Discrete => Poly::x(),
        }
    }

    pub fn var(self) -> &'static str {
        match self {
            Region::Continuous => "s",
            Region::Discrete => "z",
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Region::Continuous => "continuous",
            Region::Discrete => "discrete",
        })
    }
}

impl FromStr for Region {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "continuous" | "continuous-lhp" | "s" => Ok(Region::Continuous),
            "discrete" | "discrete-unit-disk" | "z" => Ok(Region::Discrete),
            _ => Err(Error::InvalidArgument(format!("unknown region '{s}'"))),
        }
    }
}

/// True iff every root of `p` lies in the open region. Constants are stable.
pub fn is_stable_poly(p: &Poly, region: Region) -> Result<bool> {
    if p.is_zero() {
        return Err(Error::InvalidArgument(
            "stability of the zero polynomial".into(),
        ));
    }
    Ok(match region {
        Region::Continuous => routh_hurwitz(p),
        Region::Discrete => schur_cohn(p),
    })
}

/// Routh array on the descending coefficients; any zero in the first column
/// means a root on or right of the imaginary axis.
fn routh_hurwitz(p: &Poly) -> bool {
    let n = p.deg0();
    if n == 0 {
        return true;
    }
    let desc: Vec<Q> = p.coeffs().iter().rev().cloned().collect();
    // A Hurwitz polynomial has all coefficients nonzero and of one sign.
    let s0 = desc[0].is_positive();
    if desc.iter().any(|c| c.is_zero() || c.is_positive() != s0) {
        return false;
    }
    let mut prev: Vec<Q> = desc.iter().step_by(2).cloned().collect();
    let mut cur: Vec<Q> = desc.iter().skip(1).step_by(2).cloned().collect();
    for _ in 1..n {
        let pivot = cur[0].clone();
        let width = prev
            .len()
            .saturating_sub(1)
            .max(cur.len().saturating_sub(1));
        let mut next = Vec::with_capacity(width);
        for j in 0..width {
            let a = prev.get(j + 1).cloned().unwrap_or_else(Q::zero);
            let b = cur.get(j + 1).cloned().unwrap_or_else(Q::zero);
            next.push((&pivot * &a - &prev[0] * &b) / &pivot);
        }
        if next.is_empty() || next[0].is_zero() || next[0].is_positive() != s0 {
            return false;
        }
        prev = cur;
        cur = next;
    }
    true
}

/// Schur–Cohn reduction: p has all roots in the open unit disk iff
/// |p(0)| < |lead p| and (lead·p − p(0)·rev p)/λ has the same property.
fn schur_cohn(p: &Poly) -> bool {
    let mut cur = p.monic();
    while let Some(n) = cur.degree() {
        if n == 0 {
            return true;
        }
        let a0 = cur.coeff(0);
        let an = cur.coeff(n);
        if a0.abs() >= an.abs() {
            return false;
        }
        let next = &cur.scale(&an) - &cur.reversed(n).scale(&a0);
        // constant term cancels exactly; divide by λ
        let shifted = Poly::new(next.coeffs().iter().skip(1).cloned().collect());
        cur = shifted.monic();
    }
    true
}

/// Membership in 𝔸: proper with every pole in Ω.
pub fn is_member_a(f: &RationalFunction, region: Region) -> bool {
    f.is_proper() && is_stable_poly(f.den(), region).unwrap_or(false)
}

/// Units of 𝔸: biproper with stable numerator and denominator. Zero is not a unit.
pub fn is_unit_a(f: &RationalFunction, region: Region) -> bool {
    if f.is_zero() {
        return false;
    }
    f.relative_degree() == Some(0)
        && is_stable_poly(f.num(), region).unwrap_or(false)
        && is_stable_poly(f.den(), region).unwrap_or(false)
}

/// Largest divisor of `p` whose roots all lie in Ω, assembled from the
/// members of a coprime factor basis built out of `p` and the `hints`.
/// Factors that mix stable and unstable roots and cannot be split further
/// by the hints or by rational-root extraction are treated as unstable.
pub fn stable_part(p: &Poly, hints: &[Poly], region: Region) -> Poly {
    if p.is_constant() {
        return Poly::one();
    }
    let mut seeds: Vec<Poly> = vec![p.squarefree_part()];
    for h in hints {
        if !h.is_constant() && !h.is_zero() {
            seeds.push(h.squarefree_part());
        }
    }
    let basis = coprime_basis(&seeds);
    let mut out = Poly::one();
    for b in basis {
        let mut pieces = vec![b.clone()];
        if !is_stable_poly(&b, region).unwrap_or(false) {
            pieces = split_rational_roots(&b);
        }
        for piece in pieces {
            if is_stable_poly(&piece, region).unwrap_or(false) {
                let e = p.multiplicity_of(&piece);
                if e > 0 {
                    out = &out * &piece.pow(e as u32);
                }
            }
        }
    }
    out.monic()
}

fn split_rational_roots(b: &Poly) -> Vec<Poly> {
    let mut rest = b.clone();
    let mut out = Vec::new();
    for (r, _) in b.rational_roots() {
        let lin = Poly::new(vec![-r, Q::one()]);
        rest = rest.exact_div(&lin).unwrap_or(rest);
        out.push(lin);
    }
    if !rest.is_constant() {
        out.push(rest.monic());
    }
    out
}

/// Pairwise coprime, squarefree, monic polynomials whose products generate
/// every input up to units (a gcd-free basis).
pub fn coprime_basis(polys: &[Poly]) -> Vec<Poly> {
    let mut basis: Vec<Poly> = Vec::new();
    for p in polys {
        let mut pending = vec![p.squarefree_part()];
        while let Some(mut f) = pending.pop() {
            if f.is_constant() {
                continue;
            }
            let mut i = 0;
            while i < basis.len() && !f.is_constant() {
                let g = f.gcd(&basis[i]);
                if g.is_constant() {
                    i += 1;
                    continue;
                }
                let b = basis.swap_remove(i);
                let b_rest = b.exact_div(&g).unwrap();
                f = f.exact_div(&g).unwrap();
                pending.push(b_rest);
                pending.push(g);
                i = 0;
                if !f.is_constant() {
                    continue;
                }
            }
            if !f.is_constant() {
                basis.push(f.monic());
            }
        }
    }
    basis.sort_by(|a, b| a.coeffs().cmp(b.coeffs()));
    basis
}
