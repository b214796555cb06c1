use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::oracle::{zero_dim_variety_points, OracleKind, VarietyOracle};
use super::perturbed::contains_perturbed;
use super::{affine_constraints, affine_subspace, ASSUME_SG, ASSUME_STAR, ASSUME_WG};
use crate::algebra::membership::{
    graded_nested_initial_membership, lifted_nested_initial_membership, nested_initial_is_unit,
};
use crate::algebra::{DefectTuple, Exponent, PolynomialSystem, ValuedCoefficient};
use crate::error::Result;
use crate::tropical::groebner_polyhedron;

/// How the variety side of a certificate is argued.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CertificateMode {
    PositiveDimensional,
    VarietyExclusion,
    WitnessMonomial,
}

/// The line of the detection algorithm that produced a certificate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DetectionLine {
    /// Strong genericity: a positive-dimensional cell of `Trop(F′)`.
    PositiveDimensional,
    /// Strong genericity: a point of `Trop(F′)` outside `Trop(I′)`.
    VarietyExclusion,
    /// Weak genericity: a star cone of dimension above `d`.
    HighDimensional,
    /// Weak genericity: a stable candidate outside `Trop(I′)`.
    StableExclusion,
}

/// A claimed tropical defect of a system together with the data needed to
/// check it independently.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub system_digest: String,
    pub variables: Vec<String>,
    pub tuple: DefectTuple,
    pub witness: Option<Exponent>,
    pub mode: CertificateMode,
    pub oracle: Option<OracleKind>,
    pub line: Option<DetectionLine>,
    pub assumptions: Vec<String>,
    /// `λ_i` of the affine constraints `x_i − λ_i` on the first variables.
    pub affine: Vec<ValuedCoefficient>,
}

impl Certificate {
    /// A witness-monomial certificate for `system`.
    pub fn with_witness(system: &PolynomialSystem, tuple: DefectTuple, witness: Exponent) -> Self {
        Self {
            system_digest: system.digest(),
            variables: system.vars().names().to_vec(),
            tuple,
            witness: Some(witness),
            mode: CertificateMode::WitnessMonomial,
            oracle: None,
            line: None,
            assumptions: Vec::new(),
            affine: Vec::new(),
        }
    }

    /// A certificate for `system` without a witness, whose variety side is
    /// left to the verifier.
    pub fn bare(system: &PolynomialSystem, tuple: DefectTuple) -> Self {
        Self {
            system_digest: system.digest(),
            variables: system.vars().names().to_vec(),
            tuple,
            witness: None,
            mode: CertificateMode::VarietyExclusion,
            oracle: None,
            line: None,
            assumptions: Vec::new(),
            affine: Vec::new(),
        }
    }

    fn asserts(&self, label: &str) -> bool {
        self.assumptions.iter().any(|a| a == label)
    }
}

/// Variety-side arguments, in the order the verifier tries them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarietyCheck {
    WitnessMonomial,
    UnitIdeal,
    OracleExclusion,
    DimensionEvidence,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckRecord {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub prevariety_side: bool,
    pub variety_side: bool,
    /// The variety-side argument that succeeded.
    pub variety_check: Option<VarietyCheck>,
    pub checks: Vec<CheckRecord>,
    /// Assumptions the accepted argument depends on.
    pub assumptions_used: Vec<String>,
    pub accepted: bool,
}

struct Log(Vec<CheckRecord>);

impl Log {
    fn push(&mut self, name: &str, passed: bool, detail: impl Into<String>) -> bool {
        self.0.push(CheckRecord { name: name.into(), passed, detail: detail.into() });
        passed
    }
}

/// Checks a certificate against `system`, independently of how it was
/// produced.
///
/// The prevariety side requires every nested initial form to be
/// non-monomial. The variety side tries, in order: the witness monomial by
/// graded linear algebra; the unit-ideal test of the nested initial ideal
/// (trivially valued input); exclusion of the perturbed point from the
/// oracle's points of `Trop(I′)`; and dimension evidence under the recorded
/// assumptions.
pub fn verify_certificate(
    system: &PolynomialSystem,
    cert: &Certificate,
    oracle: Option<&VarietyOracle>,
) -> Result<VerificationReport> {
    let mut log = Log(Vec::new());
    let n = system.nvars();
    let mut structural = log.push(
        "variables",
        cert.variables.as_slice() == system.vars().names(),
        "certificate variables match the system",
    );
    structural &= log.push("dimension", cert.tuple.ambient_dim() == n, format!("tuple entries have length {n}"));
    if !cert.system_digest.is_empty() {
        structural &= log.push("digest", cert.system_digest == system.digest(), "system digest matches");
    }
    structural &= log.push("affine", cert.affine.len() < n.max(1) && cert.affine.iter().all(|c| !c.is_zero()), "affine constraints are well formed");
    if !structural {
        return Ok(finish(log, false, None, Vec::new()));
    }

    let mut prevariety_side = true;
    for (i, g) in system.generators().iter().enumerate() {
        let ini = g.nested_initial_form(&cert.tuple)?;
        if ini.is_monomial() {
            prevariety_side = false;
            log.push("prevariety", false, format!("generator {i} has a monomial nested initial form"));
            break;
        }
    }
    if prevariety_side {
        log.push("prevariety", true, format!("all {} nested initial forms are non-monomial", system.len()));
    }

    let mut used = Vec::new();
    let mut variety = None;

    if let Some(m) = &cert.witness {
        let ok = match witness_membership(system, cert, m) {
            Ok(Some(detail)) => log.push("witness", true, detail),
            Ok(None) => log.push("witness", false, "no multiple of the witness up to one extra degree is in the graded piece"),
            Err(e) => log.push("witness", false, e.to_string()),
        };
        if ok {
            variety = Some(VarietyCheck::WitnessMonomial);
        }
    }

    // a witness certificate stands or falls with its witness
    if variety.is_none() && cert.mode != CertificateMode::WitnessMonomial && system.is_trivially_valued() {
        let ok = match nested_initial_is_unit(system, &cert.tuple) {
            Ok(b) => log.push("unit", b, if b { "nested initial ideal is the unit ideal" } else { "nested initial ideal is proper" }),
            Err(e) => log.push("unit", false, e.to_string()),
        };
        if ok {
            variety = Some(VarietyCheck::UnitIdeal);
        }
    }

    if variety.is_none() {
        if let Some(oracle) = oracle {
            if let Some(a) = oracle_exclusion(system, cert, oracle, &mut log)? {
                variety = Some(VarietyCheck::OracleExclusion);
                used = a;
            }
        }
    }

    if variety.is_none() {
        if let Some(a) = dimension_evidence(system, cert, &mut log)? {
            variety = Some(VarietyCheck::DimensionEvidence);
            used = a;
        }
    }

    Ok(finish(log, prevariety_side, variety, used))
}

/// Membership of the witness in its own degree, then of its multiples by one
/// variable, which suffices in the Laurent ring.
fn witness_membership(system: &PolynomialSystem, cert: &Certificate, m: &Exponent) -> Result<Option<String>> {
    if graded_nested_initial_membership(system, &cert.tuple, m)? {
        return Ok(Some(format!("witness lies in degree {} of the nested initial ideal", m.degree())));
    }
    Ok(lifted_nested_initial_membership(system, &cert.tuple, m, 1)?.map(|e| {
        let names = system.vars().names();
        let factor: Vec<&str> =
            e.as_slice().iter().zip(m.as_slice()).zip(names).filter(|((a, b), _)| a > b).map(|(_, v)| v.as_str()).collect();
        format!("witness times {} lies in degree {} of the nested initial ideal", factor.join("*"), e.degree())
    }))
}

fn finish(log: Log, prevariety_side: bool, variety: Option<VarietyCheck>, used: Vec<String>) -> VerificationReport {
    let variety_side = variety.is_some();
    VerificationReport {
        prevariety_side,
        variety_side,
        variety_check: variety,
        checks: log.0,
        assumptions_used: used,
        accepted: prevariety_side && variety_side,
    }
}

/// Whether the perturbed point of the tuple stays in `H`.
fn tuple_in_subspace(cert: &Certificate, n: usize) -> Result<bool> {
    let h = affine_subspace(n, &cert.affine)?;
    Ok(contains_perturbed(&h, &cert.tuple))
}

fn oracle_exclusion(
    system: &PolynomialSystem,
    cert: &Certificate,
    oracle: &VarietyOracle,
    log: &mut Log,
) -> Result<Option<Vec<String>>> {
    let n = system.nvars();
    if !tuple_in_subspace(cert, n)? {
        log.push("oracle", false, "perturbed point leaves the affine subspace");
        return Ok(None);
    }
    let mut used = Vec::new();
    if let VarietyOracle::TropicalBasis(_) = oracle {
        match oracle.check_basis(system)? {
            Some(true) => {}
            Some(false) => {
                log.push("oracle", false, "supplied basis generates a different ideal");
                return Ok(None);
            }
            None => used.push(super::ASSUME_BASIS.to_string()),
        }
    } else if !cert.affine.is_empty() {
        // Trop(I′) only agrees with Trop(I) ∩ H under a genericity assumption.
        let label = [ASSUME_SG, ASSUME_WG].into_iter().find(|a| cert.asserts(a));
        match label {
            Some(a) => used.push(a.to_string()),
            None => {
                log.push("oracle", false, "oracle describes Trop(I′); needs SG or WG asserted");
                return Ok(None);
            }
        }
    }
    let f_prime = system.extended(affine_constraints(system.vars(), &cert.affine))?;
    let points = match zero_dim_variety_points(&f_prime, cert.affine.len(), oracle) {
        Ok(p) => p,
        Err(e) => {
            log.push("oracle", false, e.to_string());
            return Ok(None);
        }
    };
    let excluded = !points.contains_tuple(&cert.tuple);
    log.push(
        "oracle",
        excluded,
        if excluded { "perturbed point lies outside the oracle's cells" } else { "perturbed point lies in an oracle cell" },
    );
    Ok(excluded.then_some(used))
}

fn dimension_evidence(system: &PolynomialSystem, cert: &Certificate, log: &mut Log) -> Result<Option<Vec<String>>> {
    let n = system.nvars();
    let d = cert.affine.len();
    let line = match cert.line {
        Some(l @ (DetectionLine::PositiveDimensional | DetectionLine::HighDimensional)) => l,
        _ => return Ok(None),
    };
    if cert.tuple.len() < 2 {
        log.push("dimension", false, "tuple has no direction");
        return Ok(None);
    }
    let (sys, bound, needed): (PolynomialSystem, usize, &[&str]) = match line {
        DetectionLine::PositiveDimensional => {
            if !tuple_in_subspace(cert, n)? {
                log.push("dimension", false, "perturbed point leaves the affine subspace");
                return Ok(None);
            }
            (system.extended(affine_constraints(system.vars(), &cert.affine))?, 0, &[ASSUME_STAR, ASSUME_SG])
        }
        _ => (system.clone(), d, &[ASSUME_STAR]),
    };
    if let Some(missing) = needed.iter().find(|a| !cert.asserts(a)) {
        log.push("dimension", false, format!("dimension evidence needs \"{missing}\""));
        return Ok(None);
    }
    let w0 = cert.tuple.first();
    let ini = sys.initial_forms(w0)?;
    let cone = groebner_polyhedron(&ini, &cert.tuple.entries()[1])?;
    let dim = cone.dimension();
    let ok = dim > bound as isize;
    log.push("dimension", ok, format!("star cone has dimension {dim}, bound {bound}"));
    Ok(ok.then(|| needed.iter().map(|a| a.to_string()).collect()))
}
