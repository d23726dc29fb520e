//! Closed-loop maps of the feedback interconnection of G and K.

use crate::error::{invalid, Error, Result};
use crate::factorization::{youla_factors, Dcf};
use crate::ratfield::Region;
use crate::sparsity::{in_s, SparsityConstraint};
use crate::tfm::Tfm;

/// The four closed-loop blocks S₀ = (I + GK)⁻¹, S₀G, KS₀, KS₀G.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedLoopMap {
    pub s0: Tfm,
    pub s0_g: Tfm,
    pub k_s0: Tfm,
    pub k_s0_g: Tfm,
}

impl ClosedLoopMap {
    /// Internal stability: all four blocks in 𝔸.
    pub fn is_internally_stable(&self, region: Region) -> bool {
        [&self.s0, &self.s0_g, &self.k_s0, &self.k_s0_g]
            .iter()
            .all(|b| b.is_member_a(region))
    }

    /// [[S₀, S₀G], [KS₀, KS₀G]].
    pub fn as_block(&self) -> Tfm {
        let top = Tfm::hstack(&[&self.s0, &self.s0_g]).unwrap();
        let bottom = Tfm::hstack(&[&self.k_s0, &self.k_s0_g]).unwrap();
        Tfm::vstack(&[&top, &bottom]).unwrap()
    }
}

pub fn closed_loop(g: &Tfm, k: &Tfm) -> Result<ClosedLoopMap> {
    if k.rows() != g.cols() || k.cols() != g.rows() {
        return invalid("controller and plant dimensions are not compatible");
    }
    let s0 = (&Tfm::identity(g.rows()) + &(g * k)).inverse()?;
    let s0_g = &s0 * g;
    let k_s0 = k * &s0;
    let k_s0_g = &k_s0 * g;
    Ok(ClosedLoopMap {
        s0,
        s0_g,
        k_s0,
        k_s0_g,
    })
}

/// Closed-loop blocks written through the factorization:
/// S₀ = Ỹ_Q·M̃, S₀G = Ỹ_Q·Ñ, KS₀ = M·X_Q, KS₀G = I − M·Y_Q.
pub fn closed_loop_affine(d: &Dcf, q: &Tfm) -> Result<ClosedLoopMap> {
    let f = youla_factors(d, q)?;
    Ok(ClosedLoopMap {
        s0: &f.y_tilde_q * &d.m_tilde,
        s0_g: &f.y_tilde_q * &d.n_tilde,
        k_s0: &d.m * &f.x_q,
        k_s0_g: &Tfm::identity(d.inputs()) - &(&d.m * &f.y_q),
    })
}

/// Closed loop as T1 + T2·Q·T3 (stacked as in [`ClosedLoopMap::as_block`]).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffinePieces {
    pub t1: Tfm,
    /// [−N; M]
    pub t2: Tfm,
    /// [M̃ Ñ]
    pub t3: Tfm,
}

pub fn extract_affine_pieces(d: &Dcf) -> AffinePieces {
    let zero_q = Tfm::zeros(d.inputs(), d.outputs());
    let t1 = closed_loop_affine(d, &zero_q)
        .expect("zero is a valid parameter")
        .as_block();
    let t2 = Tfm::vstack(&[&-&d.n, &d.m]).unwrap();
    let t3 = Tfm::hstack(&[&d.m_tilde, &d.n_tilde]).unwrap();
    AffinePieces { t1, t2, t3 }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ControllerReport {
    pub in_s: bool,
    pub internally_stable: bool,
    /// Youla parameter recovered as Q = M⁻¹·KS₀·M̃⁻¹ − X·M̃⁻¹, when a
    /// factorization is available.
    pub q: Option<Tfm>,
    pub q_stable: Option<bool>,
}

impl ControllerReport {
    pub fn passes(&self) -> bool {
        self.in_s && self.internally_stable && self.q_stable != Some(false)
    }
}

pub fn verify_controller(
    g: &Tfm,
    k: &Tfm,
    s: &SparsityConstraint,
    region: Region,
    d: Option<&Dcf>,
) -> Result<ControllerReport> {
    let cl = match closed_loop(g, k) {
        Ok(cl) => Some(cl),
        Err(Error::SingularMatrix) => None,
        Err(e) => return Err(e),
    };
    let internally_stable = cl.as_ref().is_some_and(|c| c.is_internally_stable(region));
    let (q, q_stable) = match (d, &cl) {
        (Some(d), Some(cl)) => {
            let mt_inv = d.m_tilde.inverse()?;
            let q = &(&(&d.m.inverse()? * &cl.k_s0) * &mt_inv) - &(&d.x * &mt_inv);
            let st = q.is_member_a(region);
            (Some(q), Some(st))
        }
        _ => (None, None),
    };
    Ok(ControllerReport {
        in_s: in_s(k, s)?,
        internally_stable,
        q,
        q_stable,
    })
}
