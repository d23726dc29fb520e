//! Decision and synthesis: the sparsity requirement on the Youla-updated
//! controller, written as an exact model-matching problem over 𝔸.
//!
//! For a DCF and stable Q, K_Q(I + GK_Q)⁻¹ = M·X_Q = M·X + M·Q·M̃. When the
//! constraint is quadratically invariant, K_Q ∈ 𝒮 exactly when this closed
//! loop map is in 𝒮, i.e. when the forbidden entries of vec(M·Q·M̃ + M·X)
//! vanish. With vec(M·Q·M̃) = (M̃ᵀ ⊗ M)·vec(Q) that is a linear system in
//! vec(Q) to be solved over 𝔸.

mod closed_loop;
pub mod solver;

pub use closed_loop::{
    closed_loop, closed_loop_affine, extract_affine_pieces, verify_controller, AffinePieces,
    ClosedLoopMap, ControllerReport,
};
pub use solver::{nullspace_basis, stable_affine_solve, AffineSolveOutcome};

use crate::error::{invalid, Error, Result};
use crate::factorization::{controller_from_q, factorize, verify_dcf, youla_factors, Dcf};
use crate::ratfield::{RationalFunction, Region};
use crate::sparsity::{forbidden_vec_indices, in_s, is_qi_for, split_s, SparsityConstraint};
use crate::tfm::Tfm;

/// Which of the two equivalent right-hand sides generated the system:
/// −vec(X̃·M̃) (left) or −vec(M·X) (right).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl std::str::FromStr for Side {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            _ => invalid(format!("unknown side '{s}'")),
        }
    }
}

/// T·vec(Q) = b restricted to the forbidden entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelMatchProblem {
    pub t: Tfm,
    pub b: Tfm,
    pub region: Region,
    pub side: Side,
    /// Controller dimensions (p, m).
    pub dims: (usize, usize),
    pub constraint: SparsityConstraint,
    /// Positions in vec(K) of the selected rows.
    pub rows: Vec<usize>,
}

impl ModelMatchProblem {
    pub fn equation_count(&self) -> usize {
        self.t.rows()
    }
}

pub fn build_system(d: &Dcf, s: &SparsityConstraint, side: Side) -> Result<ModelMatchProblem> {
    let (p, m) = (d.inputs(), d.outputs());
    if s.controller_dims() != (p, m) {
        return invalid(format!(
            "constraint is for a {}x{} controller, factorization gives {p}x{m}",
            s.controller_dims().0,
            s.controller_dims().1
        ));
    }
    let g = d.plant()?;
    if !is_qi_for(s, &g)? {
        return Err(Error::QiViolation);
    }
    let rows = forbidden_vec_indices(s);
    let op = d.m_tilde.transpose().kron(&d.m);
    let t = op.select_rows(&rows);
    let rhs = match side {
        Side::Left => &d.x_tilde * &d.m_tilde,
        Side::Right => &d.m * &d.x,
    };
    let b = (-&rhs.vec()).select_rows(&rows);
    Ok(ModelMatchProblem {
        t,
        b,
        region: d.region,
        side,
        dims: (p, m),
        constraint: s.clone(),
        rows,
    })
}

/// Default sweep bound: total denominator degree of the plant plus slack.
pub fn default_max_degree(g: &Tfm) -> usize {
    g.entries().iter().map(|f| f.den().deg0()).sum::<usize>() + 4
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Feasible,
    TriviallyFeasible,
    Infeasible,
    Inconclusive,
}

impl Verdict {
    pub fn is_feasible(self) -> bool {
        matches!(self, Verdict::Feasible | Verdict::TriviallyFeasible)
    }
}

/// Why a problem was declared infeasible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Infeasibility {
    /// rank T < rank [T | b] over ℝ(λ).
    FieldRank { rank_t: usize, rank_tb: usize },
    /// Entry `index` of vec(Q) is the same in every solution over ℝ(λ) and
    /// that common value is not in 𝔸.
    DeterminedComponent {
        index: usize,
        value: RationalFunction,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Certificates {
    /// K ∈ 𝒮 and the forbidden entries of M·X_Q vanish.
    pub pattern_ok: bool,
    /// The Youla-updated factorization satisfies the block Bézout identity.
    pub bezout_ok: bool,
    /// All four closed-loop blocks are stable.
    pub closed_loop_stable: bool,
}

impl Certificates {
    pub fn all(&self) -> bool {
        self.pattern_ok && self.bezout_ok && self.closed_loop_stable
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SynthesisReport {
    pub qi: bool,
    pub verdict: Verdict,
    pub q0: Option<Tfm>,
    pub controller: Option<Tfm>,
    pub certificates: Option<Certificates>,
    pub infeasibility: Option<Infeasibility>,
    pub search_degree_used: usize,
    pub equations: usize,
    pub dcf: Dcf,
}

#[derive(Clone, Debug, Default)]
pub struct SynthesisOptions {
    pub max_degree: Option<usize>,
    pub side: Option<Side>,
}

/// Decides whether a stabilizing controller in 𝒮 exists and, if so,
/// returns one with exact certificates.
pub fn decide_and_synthesize(
    g: &Tfm,
    s: &SparsityConstraint,
    d: Option<&Dcf>,
    region: Region,
    opts: &SynthesisOptions,
) -> Result<SynthesisReport> {
    if !g.is_strictly_proper() {
        return Err(Error::InvalidPlant("plant must be strictly proper".into()));
    }
    s.partition.check_plant(g)?;
    if !is_qi_for(s, g)? {
        return Err(Error::QiViolation);
    }
    let dcf = match d {
        Some(d) => {
            if d.region != region {
                return invalid("factorization region differs from the problem region");
            }
            if !verify_dcf(d, g).all_pass() {
                return invalid("supplied factorization does not verify against the plant");
            }
            d.clone()
        }
        None => factorize(g, region)?,
    };
    let max_degree = opts.max_degree.unwrap_or_else(|| default_max_degree(g));
    let problem = build_system(&dcf, s, opts.side.unwrap_or(Side::Left))?;
    let (p, m) = problem.dims;
    let mut report = SynthesisReport {
        qi: true,
        verdict: Verdict::Inconclusive,
        q0: None,
        controller: None,
        certificates: None,
        infeasibility: None,
        search_degree_used: 0,
        equations: problem.equation_count(),
        dcf: dcf.clone(),
    };
    if problem.equation_count() == 0 {
        report.verdict = Verdict::TriviallyFeasible;
        return finish_feasible(report, g, s, Tfm::zeros(p, m));
    }
    match stable_affine_solve(&problem.t, &problem.b, region, max_degree)? {
        AffineSolveOutcome::Solved { z, degree } => {
            report.verdict = Verdict::Feasible;
            report.search_degree_used = degree;
            let q0 = Tfm::unvec(&z, p, m)?;
            finish_feasible(report, g, s, q0)
        }
        AffineSolveOutcome::FieldInfeasible { rank_t, rank_tb } => {
            report.verdict = Verdict::Infeasible;
            report.infeasibility = Some(Infeasibility::FieldRank { rank_t, rank_tb });
            Ok(report)
        }
        AffineSolveOutcome::Inconclusive { degree } => {
            report.search_degree_used = degree;
            if let Some(cert) = determined_component_certificate(&problem) {
                report.verdict = Verdict::Infeasible;
                report.infeasibility = Some(cert);
                return Ok(report);
            }
            if dcf.is_decoupled(&s.partition) {
                let dec = decoupled_feasibility(&dcf, s)?;
                if dec.feasible {
                    report.verdict = Verdict::Feasible;
                    return finish_feasible(report, g, s, dec.q_perp);
                }
            }
            Ok(report)
        }
    }
}

fn finish_feasible(
    mut report: SynthesisReport,
    g: &Tfm,
    s: &SparsityConstraint,
    q0: Tfm,
) -> Result<SynthesisReport> {
    let dcf = &report.dcf;
    let k = controller_from_q(dcf, &q0)?;
    let f = youla_factors(dcf, &q0)?;
    let mx = &dcf.m * &f.x_q;
    let pattern_ok = in_s(&k, s)? && in_s(&mx, s)?;
    let bezout_ok = verify_dcf(&dcf.with_q(&q0)?, g).all_pass();
    let closed_loop_stable = closed_loop(g, &k)?.is_internally_stable(dcf.region);
    report.certificates = Some(Certificates {
        pattern_ok,
        bezout_ok,
        closed_loop_stable,
    });
    report.q0 = Some(q0);
    report.controller = Some(k);
    Ok(report)
}

/// Reduced echelon form of [T | b] over ℝ(λ): a pivot row without free
/// columns pins its variable to a single value shared by all solutions.
/// If such a value is not in 𝔸 there is no stable solution at all.
pub fn determined_component_certificate(problem: &ModelMatchProblem) -> Option<Infeasibility> {
    let n = problem.t.cols();
    let aug = Tfm::hstack(&[&problem.t, &problem.b]).ok()?;
    let (r, pivots) = aug.rref();
    if pivots.last() == Some(&n) {
        return None;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    for (row, &c) in pivots.iter().enumerate() {
        if free.iter().all(|&f| r.get(row, f).is_zero()) {
            let value = r.get(row, n).clone();
            if !crate::ratfield::is_member_a(&value, problem.region) {
                return Some(Infeasibility::DeterminedComponent { index: c, value });
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parametrization {
    pub q0: Tfm,
    /// Stable directions: Q = Q₀ + Σ cᵢ·basisᵢ with stable scalars cᵢ keeps
    /// the forbidden entries of M·X_Q at zero.
    pub basis: Vec<Tfm>,
    /// True when the basis is the set of allowed-entry indicators (decoupled case).
    pub decoupled: bool,
}

pub fn parametrize(
    d: &Dcf,
    s: &SparsityConstraint,
    q0: &Tfm,
    side: Side,
) -> Result<Parametrization> {
    let (p, m) = (d.inputs(), d.outputs());
    if q0.dims() != (p, m) {
        return invalid("Q0 has the wrong dimensions");
    }
    if d.is_decoupled(&s.partition) {
        let bits = s.scalar_kbin();
        let mut basis = Vec::new();
        for j in 0..m {
            for i in 0..p {
                if bits.get(i, j) {
                    let mut e = Tfm::zeros(p, m);
                    e.set(i, j, RationalFunction::one());
                    basis.push(e);
                }
            }
        }
        return Ok(Parametrization {
            q0: q0.clone(),
            basis,
            decoupled: true,
        });
    }
    let problem = build_system(d, s, side)?;
    let basis = nullspace_basis(&problem.t, d.region)
        .into_iter()
        .map(|v| Tfm::unvec(&v, p, m))
        .collect::<Result<Vec<_>>>()?;
    Ok(Parametrization {
        q0: q0.clone(),
        basis,
        decoupled: false,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecoupledVerdict {
    pub feasible: bool,
    /// −M⁻¹X̃_𝒮⊥; the unique 𝒮⊥ part of any admissible Q.
    pub q_perp: Tfm,
}

/// Fast path for input/output decoupled factorizations: admissible Q exist
/// iff M⁻¹X̃_𝒮⊥ is stable.
pub fn decoupled_feasibility(d: &Dcf, s: &SparsityConstraint) -> Result<DecoupledVerdict> {
    if !d.is_decoupled(&s.partition) {
        return invalid("factorization is not decoupled for this partition");
    }
    let (_, xt_perp) = split_s(&d.x_tilde, s)?;
    let q_perp = -&(&d.m.inverse()? * &xt_perp);
    Ok(DecoupledVerdict {
        feasible: q_perp.is_member_a(d.region),
        q_perp,
    })
}
