//! Detection of tropical defects, the singleton transformation and
//! independent verification of certificates.
//!
//! A defect is a tuple `(w_0, …, w_k)` whose perturbation
//! `w_0 + ε w_1 + … + ε^k w_k` lies in `Trop(F)` but not in `Trop(I)` for all
//! small `ε > 0`. Both detection routines intersect with the affine space
//! `H = {w : w_i = ν(λ_i), i < d}` and compare against a [`VarietyOracle`].

mod certificate;
mod oracle;
mod perturbed;

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

pub use certificate::{
    verify_certificate, Certificate, CertificateMode, CheckRecord, DetectionLine, VarietyCheck, VerificationReport,
};
pub use oracle::{zero_dim_variety_points, OracleKind, VarietyOracle, VarietyPoints};
pub use perturbed::{contains_perturbed, perturbed_point};

use crate::algebra::{
    groebner_basis, DefectTuple, Exponent, LaurentPolynomial, PolynomialSystem, TermOrder, ValuedCoefficient,
    Variables, WeightVector,
};
use crate::error::{Error, Result};
use crate::num::Rational;
use crate::polyhedra::HPolyhedron;
use crate::tropical::{coordinate_subspace, groebner_polyhedron, initial_cell, prevariety, PrevarietyOptions};

pub const ASSUME_STAR: &str = "(*) asserted";
pub const ASSUME_SG: &str = "SG asserted";
pub const ASSUME_WG: &str = "WG asserted";
pub const ASSUME_BASIS: &str = "tropical basis trusted";

/// `x_i − λ_i` for `i < λ.len()`.
pub fn affine_constraints(vars: &Variables, lambda: &[ValuedCoefficient]) -> Vec<LaurentPolynomial> {
    let n = vars.len();
    lambda
        .iter()
        .enumerate()
        .map(|(i, l)| {
            LaurentPolynomial::from_terms(vars, [(Exponent::unit(n, i), ValuedCoefficient::one()), (Exponent::zero(n), -l)])
        })
        .collect()
}

/// `H = {w : w_i = ν(λ_i)}`.
pub fn affine_subspace(n: usize, lambda: &[ValuedCoefficient]) -> Result<HPolyhedron> {
    let vals = lambda
        .iter()
        .map(|l| l.valuation().ok_or_else(|| Error::Invalid("affine constant must be nonzero".into())))
        .collect::<Result<Vec<Rational>>>()?;
    coordinate_subspace(n, &vals)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DetectionStatus {
    Found,
    /// `Trop(F)` and `Trop(I)` agree on `H` (stably, for the weak test).
    NotFound,
    /// The oracle is a superset and could not exclude any candidate.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Detection {
    pub status: DetectionStatus,
    pub line: Option<DetectionLine>,
    pub certificate: Option<Certificate>,
    /// Number of `Trop(I′)` oracle calls.
    pub oracle_queries: usize,
    /// Number of candidate points examined.
    pub candidates: usize,
}

impl Detection {
    pub fn found(&self) -> bool {
        self.status == DetectionStatus::Found
    }

    pub fn tuple(&self) -> Option<&DefectTuple> {
        self.certificate.as_ref().map(|c| &c.tuple)
    }

    fn empty(status: DetectionStatus, oracle_queries: usize, candidates: usize) -> Self {
        Self { status, line: None, certificate: None, oracle_queries, candidates }
    }
}

fn check_input(system: &PolynomialSystem, d: usize) -> Result<()> {
    let n = system.nvars();
    if d >= n.max(1) && !(d == 0 && n == 0) {
        return Err(Error::Invalid("the subspace dimension d must be below the number of variables".into()));
    }
    if system.generators().iter().any(LaurentPolynomial::is_zero) {
        return Err(Error::ZeroPolynomial);
    }
    Ok(())
}

fn make_certificate(
    system: &PolynomialSystem,
    tuple: DefectTuple,
    mode: CertificateMode,
    line: DetectionLine,
    oracle: Option<OracleKind>,
    assumptions: &[&str],
    lambda: &[ValuedCoefficient],
) -> Certificate {
    Certificate {
        system_digest: system.digest(),
        variables: system.vars().names().to_vec(),
        tuple,
        witness: None,
        mode,
        oracle,
        line: Some(line),
        assumptions: assumptions.iter().map(|a| a.to_string()).collect(),
        affine: lambda.to_vec(),
    }
}

fn basis_assumptions(system: &PolynomialSystem, oracle: &VarietyOracle, base: &[&'static str]) -> Result<Vec<&'static str>> {
    let mut out = base.to_vec();
    match oracle.check_basis(system)? {
        Some(true) => {}
        Some(false) => return Err(Error::Invalid("supplied tropical basis generates a different ideal".into())),
        None => out.push(ASSUME_BASIS),
    }
    Ok(out)
}

/// The test under strong genericity on `H = {w_i = v_i, i < d}`.
///
/// Intersects `Trop(F)` with `H` through the affine generators
/// `x_i − t^{v_i}`. A positive-dimensional cell gives a defect `(w, u)` with
/// `w` interior and `u` along the cell; otherwise points of the prevariety
/// missing from the oracle's `Trop(I′)` are defects. The caller asserts (∗)
/// and (SG).
pub fn detect_strong(system: &PolynomialSystem, v: &[Rational], oracle: &VarietyOracle) -> Result<Detection> {
    check_input(system, v.len())?;
    let n = system.nvars();
    let lambda: Vec<ValuedCoefficient> = v.iter().map(|x| ValuedCoefficient::t_power(x.clone())).collect();
    let f_prime = system.extended(affine_constraints(system.vars(), &lambda))?;
    let pv = prevariety(&f_prime, &HPolyhedron::universe(n), &PrevarietyOptions::default())?;
    let candidates = pv.cells.len();

    for cell in &pv.cells {
        let hull = cell.hull();
        if hull.dim > 0 {
            let tuple = DefectTuple::new(vec![WeightVector(hull.point), WeightVector(hull.basis[0].clone())])?;
            let cert = make_certificate(
                system,
                tuple,
                CertificateMode::PositiveDimensional,
                DetectionLine::PositiveDimensional,
                None,
                &[ASSUME_STAR, ASSUME_SG],
                &lambda,
            );
            return Ok(Detection {
                status: DetectionStatus::Found,
                line: Some(DetectionLine::PositiveDimensional),
                certificate: Some(cert),
                oracle_queries: 0,
                candidates,
            });
        }
    }
    if pv.cells.is_empty() {
        return Ok(Detection::empty(DetectionStatus::NotFound, 0, 0));
    }

    let assumptions = basis_assumptions(system, oracle, &[ASSUME_STAR, ASSUME_SG])?;
    let points = zero_dim_variety_points(&f_prime, lambda.len(), oracle)?;
    for cell in &pv.cells {
        let w = WeightVector(cell.hull().point);
        if !points.contains(&w) {
            let cert = make_certificate(
                system,
                DefectTuple::singleton(w),
                CertificateMode::VarietyExclusion,
                DetectionLine::VarietyExclusion,
                Some(oracle.kind()),
                &assumptions,
                &lambda,
            );
            return Ok(Detection {
                status: DetectionStatus::Found,
                line: Some(DetectionLine::VarietyExclusion),
                certificate: Some(cert),
                oracle_queries: 1,
                candidates,
            });
        }
    }
    let status = if points.exact { DetectionStatus::NotFound } else { DetectionStatus::Inconclusive };
    Ok(Detection::empty(status, 1, candidates))
}

/// Points `w` of `Trop(F′)` whose Gröbner polyhedron `C_w(F′)` is a point.
pub fn zero_dimensional_candidates(f_prime: &PolynomialSystem) -> Result<Vec<WeightVector>> {
    let n = f_prime.nvars();
    let options = PrevarietyOptions { abort_above_dim: None, prune_contained: false, all_faces: true };
    let pv = prevariety(f_prime, &HPolyhedron::universe(n), &options)?;
    let mut out = BTreeSet::new();
    for cell in &pv.cells {
        let hull = cell.hull();
        if hull.dim != 0 {
            continue;
        }
        let w = WeightVector(hull.point);
        if groebner_polyhedron(f_prime, &w)?.dimension() == 0 {
            out.insert(w);
        }
    }
    Ok(out.into_iter().collect())
}

/// The test under weak genericity on `H = {w_i = ν(λ_i), i < d}`.
///
/// For each zero-dimensional Gröbner polyhedron `{w}` of `F′`, the star
/// `Trop(in_w F)` is computed. A cone `C_u(in_w F)` of dimension above `d`
/// yields `(w, u, hull basis)` without consulting the oracle; cones meeting
/// `H` transversally are collected and checked against `Trop(I′)` at the
/// end. The caller asserts (∗) and (WG) for the second kind.
pub fn detect_weak(system: &PolynomialSystem, lambda: &[ValuedCoefficient], oracle: &VarietyOracle) -> Result<Detection> {
    check_input(system, lambda.len())?;
    let n = system.nvars();
    let d = lambda.len();
    let h = affine_subspace(n, lambda)?;
    let f_prime = system.extended(affine_constraints(system.vars(), lambda))?;
    let candidates = zero_dimensional_candidates(&f_prime)?;

    let mut delta: Vec<DefectTuple> = Vec::new();
    for w in &candidates {
        let ini = system.initial_forms(w)?;
        let star = prevariety(&ini, &HPolyhedron::universe(n), &PrevarietyOptions::default())?;
        for cell in &star.cells {
            let u = WeightVector(cell.hull().point);
            let cone = groebner_polyhedron(&ini, &u)?;
            let hull = cone.dimension_and_hull().ok_or(Error::EmptyPolyhedron)?;
            let mut entries = vec![w.clone(), u];
            entries.extend(hull.basis.iter().cloned().map(WeightVector));
            if hull.dim > d {
                let cert = make_certificate(
                    system,
                    DefectTuple::new(entries)?,
                    CertificateMode::PositiveDimensional,
                    DetectionLine::HighDimensional,
                    None,
                    &[ASSUME_STAR],
                    lambda,
                );
                return Ok(Detection {
                    status: DetectionStatus::Found,
                    line: Some(DetectionLine::HighDimensional),
                    certificate: Some(cert),
                    oracle_queries: 0,
                    candidates: candidates.len(),
                });
            }
            if cone.sum_dimension(&h)? == n {
                delta.push(DefectTuple::new(entries)?);
            }
        }
    }
    if delta.is_empty() {
        return Ok(Detection::empty(DetectionStatus::NotFound, 0, candidates.len()));
    }

    let assumptions = basis_assumptions(system, oracle, &[ASSUME_STAR, ASSUME_WG])?;
    let points = zero_dim_variety_points(&f_prime, d, oracle)?;
    for tuple in delta {
        if !points.contains(tuple.first()) {
            let cert = make_certificate(
                system,
                tuple,
                CertificateMode::VarietyExclusion,
                DetectionLine::StableExclusion,
                Some(oracle.kind()),
                &assumptions,
                lambda,
            );
            return Ok(Detection {
                status: DetectionStatus::Found,
                line: Some(DetectionLine::StableExclusion),
                certificate: Some(cert),
                oracle_queries: 1,
                candidates: candidates.len(),
            });
        }
    }
    let status = if points.exact { DetectionStatus::NotFound } else { DetectionStatus::Inconclusive };
    Ok(Detection::empty(status, 1, candidates.len()))
}

/// Replaces a tuple by a single weight `u` with `in_u(I) = in_{w_k}⋯in_{w_0}(I)`.
///
/// Takes a Gröbner basis `G` for the order refining the tuple, forms the
/// cone of weights giving every `g ∈ G` the same initial form as the tuple,
/// and returns an interior point of it.
pub fn singleton(system: &PolynomialSystem, tuple: &DefectTuple) -> Result<WeightVector> {
    if !system.is_trivially_valued() {
        return Err(Error::ValuedInput);
    }
    if !system.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let n = system.nvars();
    if tuple.ambient_dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: tuple.ambient_dim() });
    }
    let g = groebner_basis(system, &TermOrder::for_tuple(tuple))?;
    let mut cone = HPolyhedron::universe(n);
    for p in g.generators() {
        cone = cone.intersect(&initial_cell(p, tuple)?)?;
    }
    let u = WeightVector(cone.canonical().relative_interior_point()?);
    for p in g.generators() {
        if p.nested_initial_form(tuple)? != p.initial_form(&u)? {
            return Err(Error::Invalid("singleton postcondition failed".to_string()));
        }
    }
    Ok(u)
}

/// Human-readable name of a detection line.
pub fn line_name(line: Option<DetectionLine>) -> String {
    match line {
        Some(DetectionLine::PositiveDimensional) => "positive-dim",
        Some(DetectionLine::VarietyExclusion) => "variety-exclusion",
        Some(DetectionLine::HighDimensional) => "high-dim",
        Some(DetectionLine::StableExclusion) => "stable-exclusion",
        None => "none",
    }
    .to_string()
}
