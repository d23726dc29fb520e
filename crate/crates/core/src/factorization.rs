//! Coprime and doubly coprime factorizations over the stable proper ring 𝔸,
//! Youla-updated factors, and block-decoupled factorizations.

use crate::error::{invalid, Error, Result};
use crate::linalg;
use crate::modelmatch::solver::{stable_affine_solve, AffineSolveOutcome};
use crate::polymat::PolyMatrix;
use crate::ratfield::{is_stable_poly, is_unit_a, RationalFunction, Region};
use crate::tfm::{offsets, Partition, Tfm};

/// Right coprime pair G = N·M⁻¹ with witnesses Y·M + X·N = I.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RightPair {
    pub n: Tfm,
    pub m: Tfm,
    pub x: Tfm,
    pub y: Tfm,
}

/// Left coprime pair G = M̃⁻¹·Ñ with witnesses M̃·Ỹ + Ñ·X̃ = I.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeftPair {
    pub n_tilde: Tfm,
    pub m_tilde: Tfm,
    pub x_tilde: Tfm,
    pub y_tilde: Tfm,
}

/// Doubly coprime factorization:
///
/// ```text
/// [  Y   X ] [ M  -X~ ]   [ I 0 ]
/// [ -N~  M~] [ N   Y~ ] = [ 0 I ]
/// ```
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dcf {
    pub m: Tfm,
    pub n: Tfm,
    pub m_tilde: Tfm,
    pub n_tilde: Tfm,
    pub x: Tfm,
    pub y: Tfm,
    pub x_tilde: Tfm,
    pub y_tilde: Tfm,
    pub region: Region,
}

/// Outcome of each exact check performed by [`verify_dcf`].
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct DcfReport {
    pub factors_stable: bool,
    pub denominators_invertible: bool,
    pub left_factorization: bool,
    pub right_factorization: bool,
    pub bezout_identity: bool,
}

impl DcfReport {
    pub fn all_pass(&self) -> bool {
        self.factors_stable
            && self.denominators_invertible
            && self.left_factorization
            && self.right_factorization
            && self.bezout_identity
    }
}

impl Dcf {
    /// Number of plant outputs m.
    pub fn outputs(&self) -> usize {
        self.m_tilde.rows()
    }

    /// Number of plant inputs p.
    pub fn inputs(&self) -> usize {
        self.m.rows()
    }

    /// G = N·M⁻¹.
    pub fn plant(&self) -> Result<Tfm> {
        Ok(&self.n * &self.m.inverse()?)
    }

    pub fn left(&self) -> Result<Tfm> {
        let top = Tfm::hstack(&[&self.y, &self.x])?;
        let bottom = Tfm::hstack(&[&-&self.n_tilde, &self.m_tilde])?;
        Tfm::vstack(&[&top, &bottom])
    }

    pub fn right(&self) -> Result<Tfm> {
        let top = Tfm::hstack(&[&self.m, &-&self.x_tilde])?;
        let bottom = Tfm::hstack(&[&self.n, &self.y_tilde])?;
        Tfm::vstack(&[&top, &bottom])
    }

    /// Exact block Bézout identity; false on inconsistent dimensions.
    pub fn bezout_holds(&self) -> bool {
        match (self.left(), self.right()) {
            (Ok(l), Ok(r)) => l.checked_mul(&r).is_ok_and(|p| p.is_identity()),
            _ => false,
        }
    }

    /// The Youla-updated eight-tuple for a stable Q; again a DCF of G.
    pub fn with_q(&self, q: &Tfm) -> Result<Dcf> {
        let f = youla_factors(self, q)?;
        Ok(Dcf {
            x: f.x_q,
            y: f.y_q,
            x_tilde: f.x_tilde_q,
            y_tilde: f.y_tilde_q,
            ..self.clone()
        })
    }

    /// True when M and M̃ are block diagonal for the given partition.
    pub fn is_decoupled(&self, part: &Partition) -> bool {
        let m_ok = self
            .m
            .pattern_blocks(&part.p, &part.p)
            .map(|b| b.is_block_diagonal());
        let mt_ok = self
            .m_tilde
            .pattern_blocks(&part.m, &part.m)
            .map(|b| b.is_block_diagonal());
        matches!((m_ok, mt_ok), (Ok(true), Ok(true)))
    }
}

fn check_proper(g: &Tfm) -> Result<()> {
    if !g.is_proper() {
        return invalid("plant has an improper entry");
    }
    Ok(())
}

/// Degree bound for the Bézout witness sweep.
fn witness_bound(m: &Tfm, n: &Tfm) -> usize {
    let stacked = Tfm::vstack(&[m, n]).unwrap();
    let col_den: usize = (0..stacked.cols())
        .map(|j| {
            (0..stacked.rows())
                .map(|i| stacked.get(i, j).den().deg0())
                .max()
                .unwrap_or(0)
        })
        .sum();
    2 * col_den + 4
}

/// Right coprime factorization by polynomial matrix fractions.
///
/// Columns of G are brought over a common denominator (G = Np·Dp⁻¹), the
/// greatest common right divisor R of [Dp; Np] is removed, the stacked
/// matrix is column reduced, and each column j is divided by σ^kⱼ where kⱼ
/// is its column degree. Column reducedness makes [M; N] full rank at
/// infinity and coprimeness makes it full rank at every finite point, so
/// Bézout witnesses with σ-power denominators exist and are then searched.
pub fn right_mfd(g: &Tfm, region: Region) -> Result<RightPair> {
    check_proper(g)?;
    let (m_out, p_in) = g.dims();
    if g.is_member_a(region) {
        return Ok(RightPair {
            n: g.clone(),
            m: Tfm::identity(p_in),
            x: Tfm::zeros(p_in, m_out),
            y: Tfm::identity(p_in),
        });
    }
    let (np, dens) = PolyMatrix::clear_cols(g);
    let mut stacked = PolyMatrix::zeros(p_in + m_out, p_in);
    for (j, d) in dens.iter().enumerate() {
        stacked.a[j][j] = d.clone();
    }
    for i in 0..m_out {
        for j in 0..p_in {
            stacked.a[p_in + i][j] = np.a[i][j].clone();
        }
    }
    let echelon = stacked.row_echelon();
    let r = PolyMatrix::new(echelon.a[..p_in].to_vec()).to_tfm();
    let r_inv = r.inverse()?;
    let reduced = PolyMatrix::from_tfm(&(&stacked.to_tfm() * &r_inv))
        .ok_or_else(|| Error::Internal("common right divisor did not divide".into()))?;
    let reduced = reduced.column_reduce();
    let degs = reduced.col_degrees();
    let sigma = region.sigma();
    let scale = Tfm::diag(
        &degs
            .iter()
            .map(|&k| {
                RationalFunction::new(crate::ratfield::Poly::one(), sigma.pow(k as u32)).unwrap()
            })
            .collect::<Vec<_>>(),
    );
    let full = &reduced.to_tfm() * &scale;
    let m = full.sub_matrix(0, 0, p_in, p_in);
    let n = full.sub_matrix(p_in, 0, m_out, p_in);
    let bound = witness_bound(&m, &n);
    right_from_factors(n, m, region, bound)
}

/// Left coprime factorization, the transpose dual of [`right_mfd`].
pub fn left_mfd(g: &Tfm, region: Region) -> Result<LeftPair> {
    check_proper(g)?;
    let r = right_mfd(&g.transpose(), region)?;
    Ok(LeftPair {
        n_tilde: r.n.transpose(),
        m_tilde: r.m.transpose(),
        x_tilde: r.x.transpose(),
        y_tilde: r.y.transpose(),
    })
}

/// Finds witnesses Y, X with Y·M + X·N = I for a supplied right pair.
pub fn right_from_factors(n: Tfm, m: Tfm, region: Region, max_degree: usize) -> Result<RightPair> {
    let p = m.rows();
    if !m.is_square() || n.cols() != p {
        return invalid("right factors have incompatible dimensions");
    }
    if !m.is_member_a(region) || !n.is_member_a(region) {
        return invalid("right factors are not stable");
    }
    let mo = n.rows();
    let t = Tfm::hstack(&[&m.transpose(), &n.transpose()])?;
    let mut y = Tfm::zeros(p, p);
    let mut x = Tfm::zeros(p, mo);
    for i in 0..p {
        let z = solve_witness(&t, i, region, max_degree)?;
        for j in 0..p {
            y.set(i, j, z.get(j, 0).clone());
        }
        for j in 0..mo {
            x.set(i, j, z.get(p + j, 0).clone());
        }
    }
    Ok(RightPair { n, m, x, y })
}

/// Finds witnesses Ỹ, X̃ with M̃·Ỹ + Ñ·X̃ = I for a supplied left pair.
pub fn left_from_factors(
    n_tilde: Tfm,
    m_tilde: Tfm,
    region: Region,
    max_degree: usize,
) -> Result<LeftPair> {
    let r = right_from_factors(n_tilde.transpose(), m_tilde.transpose(), region, max_degree)?;
    Ok(LeftPair {
        n_tilde,
        m_tilde,
        x_tilde: r.x.transpose(),
        y_tilde: r.y.transpose(),
    })
}

fn solve_witness(t: &Tfm, i: usize, region: Region, max_degree: usize) -> Result<Tfm> {
    let mut e = Tfm::zeros(t.rows(), 1);
    e.set(i, 0, RationalFunction::one());
    match stable_affine_solve(t, &e, region, max_degree)? {
        AffineSolveOutcome::Solved { z, .. } => Ok(z),
        AffineSolveOutcome::FieldInfeasible { .. } => {
            invalid("factors are not coprime (no Bezout witness over the rational functions)")
        }
        AffineSolveOutcome::Inconclusive { degree } => Err(Error::InconclusiveCoprimeness(degree)),
    }
}

/// Default witness bound for supplied factors.
pub fn default_witness_bound_right(n: &Tfm, m: &Tfm) -> usize {
    witness_bound(m, n)
}

/// Combines a right and a left coprime pair of the same plant into a DCF.
/// With the raw witnesses the off-diagonal block of the Bézout product is
/// Δ = X₀Ỹ₀ − Y₀X̃₀; replacing X̃ = X̃₀ + MΔ and Ỹ = Ỹ₀ − NΔ cancels it.
pub fn dcf_complete(right: &RightPair, left: &LeftPair, region: Region) -> Result<Dcf> {
    if right.n.dims() != left.n_tilde.dims() {
        return invalid("right and left pairs have different plant dimensions");
    }
    if &left.m_tilde * &right.n != &left.n_tilde * &right.m {
        return invalid("right and left pairs factor different plants");
    }
    let delta = &(&right.x * &left.y_tilde) - &(&right.y * &left.x_tilde);
    let d = Dcf {
        m: right.m.clone(),
        n: right.n.clone(),
        m_tilde: left.m_tilde.clone(),
        n_tilde: left.n_tilde.clone(),
        x: right.x.clone(),
        y: right.y.clone(),
        x_tilde: &left.x_tilde + &(&right.m * &delta),
        y_tilde: &left.y_tilde - &(&right.n * &delta),
        region,
    };
    if !d.bezout_holds() {
        return Err(Error::Internal(
            "completed factorization fails the Bezout identity".into(),
        ));
    }
    Ok(d)
}

/// Full DCF of a proper plant.
pub fn factorize(g: &Tfm, region: Region) -> Result<Dcf> {
    let r = right_mfd(g, region)?;
    let l = left_mfd(g, region)?;
    dcf_complete(&r, &l, region)
}

/// DCF from supplied (M, N, M̃, Ñ): witnesses are recomputed and completed.
pub fn dcf_from_factors(m: Tfm, n: Tfm, m_tilde: Tfm, n_tilde: Tfm, region: Region) -> Result<Dcf> {
    let bound_r = witness_bound(&m, &n);
    let bound_l = witness_bound(&m_tilde.transpose(), &n_tilde.transpose());
    let r = right_from_factors(n, m, region, bound_r)?;
    let l = left_from_factors(n_tilde, m_tilde, region, bound_l)?;
    dcf_complete(&r, &l, region)
}

/// Checks every defining property exactly; never fails.
pub fn verify_dcf(d: &Dcf, g: &Tfm) -> DcfReport {
    let region = d.region;
    let factors_stable = [
        &d.m, &d.n, &d.m_tilde, &d.n_tilde, &d.x, &d.y, &d.x_tilde, &d.y_tilde,
    ]
    .iter()
    .all(|f| f.is_member_a(region));
    let m_inv = if d.m.is_square() {
        d.m.inverse().ok()
    } else {
        None
    };
    let mt_inv = if d.m_tilde.is_square() {
        d.m_tilde.inverse().ok()
    } else {
        None
    };
    let right_factorization = m_inv
        .as_ref()
        .and_then(|mi| d.n.checked_mul(mi).ok())
        .is_some_and(|v| &v == g);
    let left_factorization = mt_inv
        .as_ref()
        .and_then(|mi| mi.checked_mul(&d.n_tilde).ok())
        .is_some_and(|v| &v == g);
    let bezout_identity = d.bezout_holds();
    DcfReport {
        factors_stable,
        denominators_invertible: m_inv.is_some() && mt_inv.is_some(),
        left_factorization,
        right_factorization,
        bezout_identity,
    }
}

/// Youla-updated factors for a stable Q (p×m).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YoulaFactors {
    pub x_q: Tfm,
    pub x_tilde_q: Tfm,
    pub y_q: Tfm,
    pub y_tilde_q: Tfm,
}

pub fn youla_factors(d: &Dcf, q: &Tfm) -> Result<YoulaFactors> {
    if q.dims() != (d.inputs(), d.outputs()) {
        return invalid(format!(
            "Q is {}x{}, expected {}x{}",
            q.rows(),
            q.cols(),
            d.inputs(),
            d.outputs()
        ));
    }
    if !q.is_member_a(d.region) {
        return invalid("Q must be stable and proper");
    }
    Ok(YoulaFactors {
        x_q: &d.x + &(q * &d.m_tilde),
        x_tilde_q: &d.x_tilde + &(&d.m * q),
        y_q: &d.y - &(q * &d.n_tilde),
        y_tilde_q: &d.y_tilde - &(&d.n * q),
    })
}

/// K_Q = Y_Q⁻¹X_Q, cross-checked against X̃_Q·Ỹ_Q⁻¹.
pub fn controller_from_q(d: &Dcf, q: &Tfm) -> Result<Tfm> {
    let f = youla_factors(d, q)?;
    let k = &f.y_q.inverse()? * &f.x_q;
    let k2 = &f.x_tilde_q * &f.y_tilde_q.inverse()?;
    if k != k2 {
        return Err(Error::Internal(
            "left and right controller formulas disagree".into(),
        ));
    }
    Ok(k)
}

/// Output-decoupled left factorization assembled from one LCF per block row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecoupledLeft {
    pub blocks: Vec<LeftPair>,
    pub m_tilde: Tfm,
    pub n_tilde: Tfm,
}

/// Input-decoupled right factorization assembled from one RCF per block column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecoupledRight {
    pub blocks: Vec<RightPair>,
    pub m: Tfm,
    pub n: Tfm,
}

pub fn row_decoupled_lcf(g: &Tfm, part: &Partition, region: Region) -> Result<DecoupledLeft> {
    part.check_plant(g)?;
    let ro = offsets(&part.m);
    let mut blocks = Vec::new();
    for i in 0..part.m.len() {
        let gi = g.sub_matrix(ro[i], 0, part.m[i], g.cols());
        blocks.push(left_mfd(&gi, region)?);
    }
    let m_tilde = Tfm::block_diag(&blocks.iter().map(|b| b.m_tilde.clone()).collect::<Vec<_>>());
    let n_tilde = Tfm::vstack(&blocks.iter().map(|b| &b.n_tilde).collect::<Vec<_>>())?;
    Ok(DecoupledLeft {
        blocks,
        m_tilde,
        n_tilde,
    })
}

pub fn col_decoupled_rcf(g: &Tfm, part: &Partition, region: Region) -> Result<DecoupledRight> {
    part.check_plant(g)?;
    let co = offsets(&part.p);
    let mut blocks = Vec::new();
    for j in 0..part.p.len() {
        let gj = g.sub_matrix(0, co[j], g.rows(), part.p[j]);
        blocks.push(right_mfd(&gj, region)?);
    }
    let m = Tfm::block_diag(&blocks.iter().map(|b| b.m.clone()).collect::<Vec<_>>());
    let n = Tfm::hstack(&blocks.iter().map(|b| &b.n).collect::<Vec<_>>())?;
    Ok(DecoupledRight { blocks, m, n })
}

/// Left coprimeness of (Ñ, M̃) over 𝔸: Ψ = [M̃ Ñ] must keep full row rank at
/// every unstable point and at infinity. After clearing each row by its
/// (stable) denominator, the finite condition is that the gcd of all
/// maximal minors has only stable roots.
pub fn psi_coprimeness_test(m_tilde: &Tfm, n_tilde: &Tfm, region: Region) -> bool {
    let Ok(psi) = Tfm::hstack(&[m_tilde, n_tilde]) else {
        return false;
    };
    full_row_rank_over_a(&psi, region)
}

/// Right counterpart: [M; N] full column rank at unstable points and infinity.
pub fn psi_coprimeness_test_right(m: &Tfm, n: &Tfm, region: Region) -> bool {
    let Ok(psi) = Tfm::vstack(&[m, n]) else {
        return false;
    };
    full_row_rank_over_a(&psi.transpose(), region)
}

fn full_row_rank_over_a(psi: &Tfm, region: Region) -> bool {
    if !psi.is_member_a(region) || psi.rows() > psi.cols() {
        return false;
    }
    let (p, _) = PolyMatrix::clear_rows(psi);
    let g = p.max_minors_gcd();
    if g.is_zero() || !is_stable_poly(&g, region).unwrap_or(false) {
        return false;
    }
    match psi.value_at_infinity() {
        Some(v) => linalg::rank(&v) == psi.rows(),
        None => false,
    }
}

/// Unimodular over 𝔸: entries stable and determinant a unit of 𝔸.
pub fn is_unimodular(u: &Tfm, region: Region) -> bool {
    u.is_square()
        && u.is_member_a(region)
        && u.det().is_ok_and(|d| is_unit_a(&d, region))
        && u.inverse().is_ok_and(|ui| ui.is_member_a(region))
}

/// Input/output decoupled DCF from decoupled pairs and any DCF of the same
/// plant. With Θ = (M⁺)⁻¹M and Θ̃ = M̃(M̃⁺)⁻¹ unimodular, the witnesses are
/// transported as Y⁺ = ΘY, X⁺ = ΘX, X̃⁺ = X̃Θ̃, Ỹ⁺ = ỸΘ̃.
pub fn io_decoupled_dcf(
    left: &DecoupledLeft,
    right: &DecoupledRight,
    any: &Dcf,
    part: &Partition,
) -> Result<Dcf> {
    let region = any.region;
    if right.m.dims() != any.m.dims() || left.m_tilde.dims() != any.m_tilde.dims() {
        return invalid("decoupled pairs do not match the DCF dimensions");
    }
    let theta = &right.m.inverse()? * &any.m;
    let theta_t = &any.m_tilde * &left.m_tilde.inverse()?;
    if &right.n * &theta != any.n {
        return invalid("decoupled right pair factors a different plant");
    }
    if &theta_t * &left.n_tilde != any.n_tilde {
        return invalid("decoupled left pair factors a different plant");
    }
    if !is_unimodular(&theta, region) {
        return Err(Error::NotUnimodular("right correction factor".into()));
    }
    if !is_unimodular(&theta_t, region) {
        return Err(Error::NotUnimodular("left correction factor".into()));
    }
    let d = Dcf {
        m: right.m.clone(),
        n: right.n.clone(),
        m_tilde: left.m_tilde.clone(),
        n_tilde: left.n_tilde.clone(),
        y: &theta * &any.y,
        x: &theta * &any.x,
        x_tilde: &any.x_tilde * &theta_t,
        y_tilde: &any.y_tilde * &theta_t,
        region,
    };
    let g = d.plant()?;
    if !verify_dcf(&d, &g).all_pass() || !d.is_decoupled(part) {
        return Err(Error::Internal(
            "decoupled factorization failed verification".into(),
        ));
    }
    Ok(d)
}

/// Convenience: decoupled pairs from the plant, then [`io_decoupled_dcf`].
pub fn decoupled_dcf(g: &Tfm, part: &Partition, any: &Dcf) -> Result<Dcf> {
    let left = row_decoupled_lcf(g, part, any.region)?;
    let right = col_decoupled_rcf(g, part, any.region)?;
    io_decoupled_dcf(&left, &right, any, part)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfield::RationalFunction as Rf;

    fn rf(g: i64, z: &[i64], p: &[i64]) -> Rf {
        Rf::from_roots(g, z, p)
    }

    #[test]
    fn stable_scalar_is_trivial() {
        let g = Tfm::scalar(rf(1, &[], &[-2]));
        let d = factorize(&g, Region::Continuous).unwrap();
        assert!(d.m.is_identity() && d.y.is_identity() && d.x.is_zero());
        assert_eq!(d.n, g);
        assert!(verify_dcf(&d, &g).all_pass());
    }

    #[test]
    fn unstable_scalar() {
        let g = Tfm::scalar(rf(1, &[], &[1]));
        let r = right_mfd(&g, Region::Continuous).unwrap();
        assert_eq!(r.n.get(0, 0), &rf(1, &[], &[-1]));
        assert_eq!(r.m.get(0, 0), &rf(1, &[1], &[-1]));
        assert!((&(&r.y * &r.m) + &(&r.x * &r.n)).is_identity());
        let d = factorize(&g, Region::Continuous).unwrap();
        assert!(verify_dcf(&d, &g).all_pass());
    }

    #[test]
    fn perturbed_factor_fails_check() {
        let g = Tfm::scalar(rf(1, &[], &[1]));
        let mut d = factorize(&g, Region::Continuous).unwrap();
        d.n.set(0, 0, rf(2, &[], &[-1]));
        let rep = verify_dcf(&d, &g);
        assert!(!rep.right_factorization);
        assert!(!rep.all_pass());
    }

    #[test]
    fn mimo_factorization() {
        let g = Tfm::from_rows(vec![
            vec![rf(1, &[], &[1]), rf(1, &[], &[-2])],
            vec![rf(2, &[3], &[1, -1]), Rf::zero()],
        ])
        .unwrap();
        let d = factorize(&g, Region::Continuous).unwrap();
        assert!(verify_dcf(&d, &g).all_pass());
        let dd = factorize(&g, Region::Discrete);
        // poles at 1 and −1 lie on the unit circle: still factorizable
        assert!(verify_dcf(&dd.unwrap(), &g).all_pass());
    }

    #[test]
    fn row_decoupled_shared_mode() {
        let c = Region::Continuous;
        let g = Tfm::column(vec![rf(1, &[], &[1]), rf(1, &[], &[1])]);
        let part = Partition::unit(2, 1);
        let left = row_decoupled_lcf(&g, &part, c).unwrap();
        assert_eq!(
            left.m_tilde,
            Tfm::diag(&[rf(1, &[1], &[-1]), rf(1, &[1], &[-1])])
        );
        assert_eq!(
            left.n_tilde,
            Tfm::column(vec![rf(1, &[], &[-1]), rf(1, &[], &[-1])])
        );
        assert!(!psi_coprimeness_test(&left.m_tilde, &left.n_tilde, c));
        let any = factorize(&g, c).unwrap();
        let right = col_decoupled_rcf(&g, &part, c).unwrap();
        assert!(matches!(
            io_decoupled_dcf(&left, &right, &any, &part),
            Err(Error::NotUnimodular(_))
        ));
    }

    #[test]
    fn row_decoupled_distinct_modes() {
        let c = Region::Continuous;
        let g = Tfm::diag(&[rf(1, &[], &[1]), rf(1, &[], &[2])]);
        let part = Partition::unit(2, 2);
        let left = row_decoupled_lcf(&g, &part, c).unwrap();
        assert!(psi_coprimeness_test(&left.m_tilde, &left.n_tilde, c));
        let any = factorize(&g, c).unwrap();
        let d = decoupled_dcf(&g, &part, &any).unwrap();
        assert!(verify_dcf(&d, &g).all_pass());
        assert!(d.is_decoupled(&part));
    }

    #[test]
    fn youla_identity_and_controller() {
        let c = Region::Continuous;
        let g = Tfm::scalar(rf(1, &[], &[1]));
        let d = factorize(&g, c).unwrap();
        let q = Tfm::scalar(rf(3, &[2], &[-4]));
        let dq = d.with_q(&q).unwrap();
        assert!(verify_dcf(&dq, &g).all_pass());
        let k = controller_from_q(&d, &q).unwrap();
        let k0 = controller_from_q(&d, &Tfm::zeros(1, 1)).unwrap();
        assert_eq!(k0, &d.y.inverse().unwrap() * &d.x);
        assert!(!k.is_zero());
        assert!(youla_factors(&d, &Tfm::scalar(rf(1, &[], &[3]))).is_err());
    }
}
