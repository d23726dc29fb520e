use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use qistab::factorization::{factorize, verify_dcf};
use qistab::json::{parametrization_json, synthesis_report_json, to_value, DcfFile, ProblemFile};
use qistab::modelmatch::{
    decide_and_synthesize, parametrize, verify_controller, Infeasibility, Side, SynthesisOptions,
    SynthesisReport, Verdict,
};
use qistab::sparsity::is_qi_for;
use qistab::{Error, Region, Tfm};

const EXIT_OK: u8 = 0;
const EXIT_NEGATIVE: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "qistab",
    version,
    about = "Exact stabilizing controller synthesis under QI sparsity constraints"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Test quadratic invariance of K^bin under the plant pattern.
    Check(Common),
    /// Compute (or complete) a doubly coprime factorization and verify it.
    Factor(Common),
    /// Decide feasibility and synthesize a controller obeying K^bin.
    Synth(Common),
    /// Synthesize, then list the free directions of the parameter Q.
    Parametrize(Common),
    /// Check an external controller: sparsity, internal stability and its Youla parameter.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct Common {
    /// Problem file (JSON).
    problem: PathBuf,
    /// Highest degree tried in the stable solution search.
    #[arg(long)]
    max_degree: Option<usize>,
    /// Which right-hand side to build the matching system from.
    #[arg(long)]
    side: Option<Side>,
    /// Override the stability region from the problem file.
    #[arg(long)]
    region: Option<Region>,
    /// Write the JSON report to this file.
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Print the JSON report on stdout instead of the readable summary.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: Common,
    /// Controller file (Tfm JSON); defaults to the problem's "controller" field.
    #[arg(long)]
    controller: Option<PathBuf>,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InconclusiveCoprimeness(_) => EXIT_INCONCLUSIVE,
            _ => EXIT_INVALID,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INVALID,
        message: message.into(),
    }
}

/// Report produced by a command: exit code, JSON payload, readable text.
struct Outcome {
    code: u8,
    json: Value,
    text: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (common, result) = match &cli.command {
        Command::Check(c) => (c, load(c).and_then(|p| cmd_check(&p))),
        Command::Factor(c) => (c, load(c).and_then(|p| cmd_factor(&p))),
        Command::Synth(c) => (c, load(c).and_then(|p| cmd_synth(&p, c))),
        Command::Parametrize(c) => (c, load(c).and_then(|p| cmd_parametrize(&p, c))),
        Command::Verify(v) => (&v.common, load(&v.common).and_then(|p| cmd_verify(p, v))),
    };
    match result {
        Ok(out) => {
            let rendered = serde_json::to_string_pretty(&out.json).expect("report serializes");
            if let Some(path) = &common.output {
                if let Err(e) = std::fs::write(path, format!("{rendered}\n")) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(EXIT_INVALID);
                }
            }
            if common.json {
                println!("{rendered}");
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))
}

fn load(c: &Common) -> Result<ProblemFile, Failure> {
    let text = read(&c.problem)?;
    let mut p = ProblemFile::from_json(&text)
        .map_err(|e| invalid(format!("{}: {e}", c.problem.display())))?;
    if let Some(r) = c.region {
        p.region = r;
    }
    Ok(p)
}

fn require_strictly_proper(p: &ProblemFile) -> Result<(), Failure> {
    for i in 0..p.plant.rows() {
        for j in 0..p.plant.cols() {
            let f = p.plant.get(i, j);
            if !f.is_strictly_proper() {
                return Err(invalid(format!(
                    "plant entry ({i},{j}) = {} is not strictly proper",
                    f.pretty("s")
                )));
            }
        }
    }
    Ok(())
}

fn var(p: &ProblemFile) -> &'static str {
    p.region.var()
}

fn cmd_check(p: &ProblemFile) -> Result<Outcome, Failure> {
    let s = p.constraint()?;
    let gbin = p.plant.plant_pattern(&s.partition)?;
    let qi = is_qi_for(&s, &p.plant)?;
    let text = format!(
        "G^bin:\n{gbin}\nK^bin:\n{}\nquadratically invariant: {qi}\n",
        s.kbin
    );
    Ok(Outcome {
        code: if qi { EXIT_OK } else { EXIT_NEGATIVE },
        json: json!({ "qi": qi, "gbin": to_value(&gbin), "kbin": to_value(&s.kbin) }),
        text,
    })
}

fn cmd_factor(p: &ProblemFile) -> Result<Outcome, Failure> {
    require_strictly_proper(p)?;
    let d = match &p.dcf {
        Some(f) => f.clone().into_dcf(p.region)?,
        None => factorize(&p.plant, p.region)?,
    };
    let report = verify_dcf(&d, &p.plant);
    let v = var(p);
    let mut text = String::new();
    for (name, m) in [
        ("M", &d.m),
        ("N", &d.n),
        ("M~", &d.m_tilde),
        ("N~", &d.n_tilde),
        ("X", &d.x),
        ("Y", &d.y),
        ("X~", &d.x_tilde),
        ("Y~", &d.y_tilde),
    ] {
        text.push_str(&format!("{name} =\n{}\n", m.pretty(v)));
    }
    text.push_str(&format!(
        "stable factors: {}\nleft factorization: {}\nright factorization: {}\nBezout identity: {}\n",
        report.factors_stable && report.denominators_invertible,
        report.left_factorization,
        report.right_factorization,
        report.bezout_identity
    ));
    let code = if report.all_pass() {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    };
    Ok(Outcome {
        code,
        json: to_value(&DcfFile::from_dcf(&d, Some(report))),
        text,
    })
}

fn synthesize(p: &ProblemFile, c: &Common) -> Result<SynthesisReport, Failure> {
    require_strictly_proper(p)?;
    let s = p.constraint()?;
    let d = p.dcf()?;
    let opts = p.options.clone().unwrap_or_default();
    let opts = SynthesisOptions {
        max_degree: c.max_degree.or(opts.max_degree),
        side: c.side.or(opts.side),
    };
    Ok(decide_and_synthesize(
        &p.plant,
        &s,
        d.as_ref(),
        p.region,
        &opts,
    )?)
}

fn verdict_code(v: Verdict) -> u8 {
    match v {
        Verdict::Feasible | Verdict::TriviallyFeasible => EXIT_OK,
        Verdict::Infeasible => EXIT_NEGATIVE,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

fn synthesis_text(r: &SynthesisReport, v: &str) -> String {
    let mut t = format!(
        "quadratically invariant: {}\nverdict: {}\n",
        r.qi,
        to_value(&r.verdict).as_str().unwrap()
    );
    t.push_str(&format!(
        "equations: {}\nsearch degree used: {}\n",
        r.equations, r.search_degree_used
    ));
    if let Some(q0) = &r.q0 {
        t.push_str(&format!("Q0 =\n{}\n", q0.pretty(v)));
    }
    if let Some(k) = &r.controller {
        t.push_str(&format!("K =\n{}\n", k.pretty(v)));
    }
    if let Some(c) = &r.certificates {
        t.push_str(&format!(
            "pattern ok: {}\nBezout ok: {}\nclosed loop stable: {}\n",
            c.pattern_ok, c.bezout_ok, c.closed_loop_stable
        ));
    }
    match &r.infeasibility {
        Some(Infeasibility::FieldRank { rank_t, rank_tb }) => t.push_str(&format!(
            "no solution over the rational functions: rank T = {rank_t} < rank [T | b] = {rank_tb}\n"
        )),
        Some(Infeasibility::DeterminedComponent { index, value }) => t.push_str(&format!(
            "vec(Q) entry {index} is forced to {}, which is not stable\n",
            value.pretty(v)
        )),
        None => {}
    }
    t
}

fn cmd_synth(p: &ProblemFile, c: &Common) -> Result<Outcome, Failure> {
    let r = synthesize(p, c)?;
    Ok(Outcome {
        code: verdict_code(r.verdict),
        json: synthesis_report_json(&r),
        text: synthesis_text(&r, var(p)),
    })
}

fn cmd_parametrize(p: &ProblemFile, c: &Common) -> Result<Outcome, Failure> {
    let r = synthesize(p, c)?;
    let mut text = synthesis_text(&r, var(p));
    let mut json = json!({ "synthesis": synthesis_report_json(&r) });
    if let Some(q0) = &r.q0 {
        let s = p.constraint()?;
        let side = c
            .side
            .or(p.options.as_ref().and_then(|o| o.side))
            .unwrap_or(Side::Left);
        let par = parametrize(&r.dcf, &s, q0, side)?;
        text.push_str(&format!("free directions: {}\n", par.basis.len()));
        for (i, b) in par.basis.iter().enumerate() {
            text.push_str(&format!("direction {i} =\n{}\n", b.pretty(var(p))));
        }
        json["parametrization"] = parametrization_json(&par);
    }
    Ok(Outcome {
        code: verdict_code(r.verdict),
        json,
        text,
    })
}

fn cmd_verify(p: ProblemFile, v: &VerifyArgs) -> Result<Outcome, Failure> {
    let k: Tfm = match &v.controller {
        Some(path) => {
            let text = read(path)?;
            let value: Value = serde_json::from_str(&text)
                .map_err(|e| invalid(format!("{}: {e}", path.display())))?;
            // Accept either a bare matrix or a synth report carrying one.
            let m = value.get("controller").cloned().unwrap_or(value);
            serde_json::from_value(m).map_err(|e| invalid(format!("{}: {e}", path.display())))?
        }
        None => p
            .controller
            .clone()
            .ok_or_else(|| invalid("no controller given"))?,
    };
    if k.rows() != p.plant.cols() || k.cols() != p.plant.rows() {
        return Err(invalid("controller dimensions do not match the plant"));
    }
    let s = p.constraint()?;
    let d = p.dcf()?;
    let d = match d {
        Some(d) => Some(d),
        None if p.plant.is_strictly_proper() => Some(factorize(&p.plant, p.region)?),
        None => None,
    };
    let r = verify_controller(&p.plant, &k, &s, p.region, d.as_ref())?;
    let mut text = format!(
        "in S: {}\ninternally stable: {}\n",
        r.in_s, r.internally_stable
    );
    if let Some(q) = &r.q {
        text.push_str(&format!(
            "Q =\n{}\nQ stable: {}\n",
            q.pretty(var(&p)),
            r.q_stable.unwrap()
        ));
    }
    let json = json!({
        "in_s": r.in_s,
        "internally_stable": r.internally_stable,
        "q": r.q.as_ref().map(to_value),
        "q_stable": r.q_stable,
        "pass": r.passes(),
    });
    Ok(Outcome {
        code: if r.passes() { EXIT_OK } else { EXIT_NEGATIVE },
        json,
        text,
    })
}
