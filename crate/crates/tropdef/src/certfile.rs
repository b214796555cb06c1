//! JSON certificate files, format `tropical-defect-cert/1`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use tropdef_core::algebra::{DefectTuple, Exponent, Variables, WeightVector};
use tropdef_core::defects::{Certificate, CertificateMode, DetectionLine, OracleKind};

use crate::syntax::{format_rational, parse_coefficient, parse_rational};

pub const FORMAT: &str = "tropical-defect-cert/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateFile {
    pub format: String,
    pub convention: String,
    pub variables: Vec<String>,
    pub weights: Vec<Vec<String>>,
    pub witness_monomial: Option<BTreeMap<String, i64>>,
    pub mode: String,
    pub oracle: Option<String>,
    pub line: Option<String>,
    pub assumptions: Vec<String>,
    #[serde(default)]
    pub affine: Vec<String>,
    pub system_digest: String,
}

pub fn mode_name(m: CertificateMode) -> &'static str {
    match m {
        CertificateMode::PositiveDimensional => "positive-dimensional",
        CertificateMode::VarietyExclusion => "variety-exclusion",
        CertificateMode::WitnessMonomial => "witness-monomial",
    }
}

pub fn oracle_name(o: OracleKind) -> &'static str {
    match o {
        OracleKind::TrivialValuation => "trivial-valuation",
        OracleKind::GroebnerOverapproximation => "groebner-overapproximation",
        OracleKind::TropicalBasis => "tropical-basis",
    }
}

pub fn line_name(l: DetectionLine) -> &'static str {
    match l {
        DetectionLine::PositiveDimensional => "positive-dim",
        DetectionLine::VarietyExclusion => "variety-exclusion",
        DetectionLine::HighDimensional => "high-dim",
        DetectionLine::StableExclusion => "stable-exclusion",
    }
}

fn lookup<T: Copy>(name: &str, all: &[T], f: impl Fn(T) -> &'static str, what: &str) -> Result<T, String> {
    all.iter().copied().find(|&x| f(x) == name).ok_or_else(|| format!("unknown {what} '{name}'"))
}

impl CertificateFile {
    pub fn from_certificate(cert: &Certificate) -> Self {
        let witness = cert.witness.as_ref().map(|m| {
            cert.variables.iter().zip(m.as_slice()).filter(|(_, &k)| k != 0).map(|(n, &k)| (n.clone(), k)).collect()
        });
        Self {
            format: FORMAT.into(),
            convention: "min".into(),
            variables: cert.variables.clone(),
            weights: cert.tuple.entries().iter().map(|w| w.as_slice().iter().map(format_rational).collect()).collect(),
            witness_monomial: witness,
            mode: mode_name(cert.mode).into(),
            oracle: cert.oracle.map(|o| oracle_name(o).into()),
            line: cert.line.map(|l| line_name(l).into()),
            assumptions: cert.assumptions.clone(),
            affine: cert.affine.iter().map(|c| c.to_string()).collect(),
            system_digest: cert.system_digest.clone(),
        }
    }

    pub fn to_certificate(&self) -> Result<Certificate, String> {
        if self.format != FORMAT {
            return Err(format!("unsupported certificate format '{}'", self.format));
        }
        if self.convention != "min" {
            return Err(format!("unsupported convention '{}'", self.convention));
        }
        if self.weights.is_empty() {
            return Err("certificate has no weights".into());
        }
        let n = self.variables.len();
        let mut entries = Vec::new();
        for row in &self.weights {
            if row.len() != n {
                return Err(format!("weight has {} entries, expected {n}", row.len()));
            }
            entries.push(WeightVector(row.iter().map(|s| parse_rational(s)).collect::<Result<_, _>>()?));
        }
        let tuple = DefectTuple::new(entries).map_err(|e| e.to_string())?;
        let vars = Variables::new(&self.variables);
        let witness = match &self.witness_monomial {
            None => None,
            Some(map) => {
                let mut e = Exponent::zero(n);
                for (name, &k) in map {
                    let i = vars.index_of(name).ok_or_else(|| format!("witness names unknown variable '{name}'"))?;
                    e.0[i] = k;
                }
                Some(e)
            }
        };
        let mode = lookup(
            &self.mode,
            &[CertificateMode::PositiveDimensional, CertificateMode::VarietyExclusion, CertificateMode::WitnessMonomial],
            mode_name,
            "mode",
        )?;
        let oracle = self
            .oracle
            .as_deref()
            .map(|o| {
                lookup(
                    o,
                    &[OracleKind::TrivialValuation, OracleKind::GroebnerOverapproximation, OracleKind::TropicalBasis],
                    oracle_name,
                    "oracle",
                )
            })
            .transpose()?;
        let line = self
            .line
            .as_deref()
            .map(|l| {
                lookup(
                    l,
                    &[
                        DetectionLine::PositiveDimensional,
                        DetectionLine::VarietyExclusion,
                        DetectionLine::HighDimensional,
                        DetectionLine::StableExclusion,
                    ],
                    line_name,
                    "line",
                )
            })
            .transpose()?;
        let affine = self.affine.iter().map(|s| parse_coefficient(s)).collect::<Result<Vec<_>, _>>()?;
        Ok(Certificate {
            system_digest: self.system_digest.clone(),
            variables: self.variables.clone(),
            tuple,
            witness,
            mode,
            oracle,
            line,
            assumptions: self.assumptions.clone(),
            affine,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self, String> {
        serde_json::from_str(text).map_err(|e| e.to_string())
    }
}

/// Reads a certificate from JSON text.
pub fn read_certificate(text: &str) -> Result<Certificate, String> {
    CertificateFile::from_json(text)?.to_certificate()
}

/// Writes a certificate as pretty-printed JSON.
pub fn write_certificate(cert: &Certificate) -> String {
    CertificateFile::from_certificate(cert).to_json()
}
