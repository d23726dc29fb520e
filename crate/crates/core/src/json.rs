//! JSON encodings. Coefficients are exact rational strings ("3", "-1/2"),
//! ascending in degree.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};

use crate::error::{invalid, Error, Result};
use crate::factorization::{dcf_from_factors, verify_dcf, Dcf, DcfReport};
use crate::modelmatch::{Infeasibility, Parametrization, Side, SynthesisReport};
use crate::ratfield::{parse_q, Poly, RationalFunction, Region};
use crate::sparsity::{BinMatrix, SparsityConstraint};
use crate::tfm::{Partition, Tfm};

fn poly_strings(p: &Poly) -> Vec<String> {
    if p.is_zero() {
        return vec!["0".into()];
    }
    p.coeffs().iter().map(|c| c.to_string()).collect()
}

fn parse_poly(v: &[String]) -> Result<Poly> {
    v.iter()
        .map(|s| parse_q(s))
        .collect::<Result<Vec<_>>>()
        .map(Poly::new)
}

#[derive(Serialize, Deserialize)]
struct RfRepr {
    num: Vec<String>,
    den: Vec<String>,
}

impl Serialize for RationalFunction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RfRepr {
            num: poly_strings(self.num()),
            den: poly_strings(self.den()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalFunction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = RfRepr::deserialize(d)?;
        let num = parse_poly(&r.num).map_err(D::Error::custom)?;
        let den = parse_poly(&r.den).map_err(D::Error::custom)?;
        RationalFunction::new(num, den).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct TfmRepr {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<RationalFunction>>,
}

impl Serialize for Tfm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TfmRepr {
            rows: self.rows(),
            cols: self.cols(),
            entries: self.to_rows(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Tfm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = TfmRepr::deserialize(d)?;
        if r.entries.len() != r.rows || r.entries.iter().any(|row| row.len() != r.cols) {
            return Err(D::Error::custom(format!(
                "entries do not form a {}x{} matrix",
                r.rows, r.cols
            )));
        }
        let flat = r.entries.into_iter().flatten().collect();
        Tfm::new(r.rows, r.cols, flat).map_err(D::Error::custom)
    }
}

impl Serialize for BinMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for BinMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<u8>>::deserialize(d)?;
        BinMatrix::from_rows(&rows).map_err(D::Error::custom)
    }
}

/// Factorization as stored on disk. The four witnesses are optional; when
/// any is missing they are recomputed from (M, N, M̃, Ñ).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DcfFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub region: Option<Region>,
    #[serde(rename = "M")]
    pub m: Tfm,
    #[serde(rename = "N")]
    pub n: Tfm,
    #[serde(rename = "M_tilde")]
    pub m_tilde: Tfm,
    #[serde(rename = "N_tilde")]
    pub n_tilde: Tfm,
    #[serde(rename = "X", default, skip_serializing_if = "Option::is_none")]
    pub x: Option<Tfm>,
    #[serde(rename = "Y", default, skip_serializing_if = "Option::is_none")]
    pub y: Option<Tfm>,
    #[serde(rename = "X_tilde", default, skip_serializing_if = "Option::is_none")]
    pub x_tilde: Option<Tfm>,
    #[serde(rename = "Y_tilde", default, skip_serializing_if = "Option::is_none")]
    pub y_tilde: Option<Tfm>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<DcfReport>,
}

impl DcfFile {
    pub fn from_dcf(d: &Dcf, report: Option<DcfReport>) -> Self {
        DcfFile {
            region: Some(d.region),
            m: d.m.clone(),
            n: d.n.clone(),
            m_tilde: d.m_tilde.clone(),
            n_tilde: d.n_tilde.clone(),
            x: Some(d.x.clone()),
            y: Some(d.y.clone()),
            x_tilde: Some(d.x_tilde.clone()),
            y_tilde: Some(d.y_tilde.clone()),
            report,
        }
    }

    pub fn into_dcf(self, region: Region) -> Result<Dcf> {
        if self.region.is_some_and(|r| r != region) {
            return invalid("factorization region differs from the problem region");
        }
        match (self.x, self.y, self.x_tilde, self.y_tilde) {
            (Some(x), Some(y), Some(x_tilde), Some(y_tilde)) => Ok(Dcf {
                m: self.m,
                n: self.n,
                m_tilde: self.m_tilde,
                n_tilde: self.n_tilde,
                x,
                y,
                x_tilde,
                y_tilde,
                region,
            }),
            _ => dcf_from_factors(self.m, self.n, self.m_tilde, self.n_tilde, region),
        }
    }
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemOptions {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub side: Option<Side>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProblemFile {
    pub plant: Tfm,
    pub kbin: BinMatrix,
    #[serde(default = "default_region")]
    pub region: Region,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partition: Option<Partition>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dcf: Option<DcfFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub options: Option<ProblemOptions>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub controller: Option<Tfm>,
}

fn default_region() -> Region {
    Region::Continuous
}

impl ProblemFile {
    pub fn from_json(text: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn constraint(&self) -> Result<SparsityConstraint> {
        let part = match &self.partition {
            Some(p) => p.clone(),
            None => Partition::unit(self.plant.rows(), self.plant.cols()),
        };
        part.check_plant(&self.plant)?;
        SparsityConstraint::new(self.kbin.clone(), part)
    }

    /// The supplied factorization, completed and checked against the plant.
    pub fn dcf(&self) -> Result<Option<Dcf>> {
        let Some(f) = &self.dcf else { return Ok(None) };
        let d = f.clone().into_dcf(self.region)?;
        if !verify_dcf(&d, &self.plant).all_pass() {
            return Err(Error::InvalidArgument(
                "supplied factorization does not verify against the plant".into(),
            ));
        }
        Ok(Some(d))
    }
}

pub fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("in-memory values always serialize")
}

pub fn infeasibility_json(inf: &Infeasibility) -> Value {
    match inf {
        Infeasibility::FieldRank { rank_t, rank_tb } => json!({
            "kind": "field-rank",
            "rank_t": rank_t,
            "rank_tb": rank_tb,
        }),
        Infeasibility::DeterminedComponent { index, value } => json!({
            "kind": "determined-component",
            "index": index,
            "value": to_value(value),
        }),
    }
}

pub fn synthesis_report_json(r: &SynthesisReport) -> Value {
    json!({
        "qi": r.qi,
        "verdict": to_value(&r.verdict),
        "q0": r.q0.as_ref().map(to_value),
        "controller": r.controller.as_ref().map(to_value),
        "certificates": r.certificates.as_ref().map(to_value),
        "infeasibility": r.infeasibility.as_ref().map(infeasibility_json),
        "search_degree_used": r.search_degree_used,
        "equations": r.equations,
    })
}

pub fn parametrization_json(p: &Parametrization) -> Value {
    json!({
        "q0": to_value(&p.q0),
        "decoupled": p.decoupled,
        "basis": p.basis.iter().map(to_value).collect::<Vec<_>>(),
    })
}
