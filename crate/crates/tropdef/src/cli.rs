//! Command dispatch. [`run`] returns the exit code and the JSON (or system
//! text, for `gen`) written to standard output.
//!
//! Exit codes: 0 when the command completed with the claimed result, 1 on
//! input errors and rejected certificates, 2 when an inexact oracle left the
//! answer inconclusive.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};
use tropdef_core::algebra::{apply_unimodular, pull_back_weight, DefectTuple, PolynomialSystem, ValuedCoefficient, WeightVector};
use tropdef_core::defects::{
    detect_strong, detect_weak, singleton, verify_certificate, Detection, DetectionStatus, VarietyCheck, VarietyOracle,
};
use tropdef_core::instances::{builtin_certificates, cox_system, gaussoid_system, validate_cox_system, CoxSpec};
use tropdef_core::num::Rational;
use tropdef_core::polyhedra::HPolyhedron;
use tropdef_core::tropical::{prevariety, PrevarietyOptions, TropicalCell};

use crate::certfile::{line_name, read_certificate, write_certificate, CertificateFile};
use crate::syntax::{format_rational, parse_coefficient_list, parse_rational, parse_rational_list, parse_system, serialize_system};

/// Half-width of the sampling range: `λ_i` and `v_i` are drawn uniformly from
/// `[-SAMPLE_RANGE, SAMPLE_RANGE]`, excluding zero for `λ_i`.
pub const SAMPLE_RANGE: i64 = 16;

#[derive(Parser, Debug)]
#[command(name = "tropdef", version, about = "Find and check tropical defects of polynomial systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tropical prevariety of a system.
    Prevariety {
        file: PathBuf,
        /// JSON polyhedron `{"equalities": [[a.., b]], "inequalities": [[a.., b]]}`
        /// with `a·x = b` and `a·x ≥ b`.
        #[arg(long)]
        seed_poly: Option<PathBuf>,
        #[arg(long)]
        abort_above_dim: Option<usize>,
    },
    /// Search for a tropical defect on affine subspaces.
    Defect {
        #[arg(value_enum)]
        algorithm: Algorithm,
        file: PathBuf,
        #[command(flatten)]
        opts: DefectOpts,
    },
    /// Turn a tuple into a single weight with the same initial ideal.
    Singleton {
        file: PathBuf,
        /// JSON array of weight vectors, entries as strings "p/q".
        #[arg(long)]
        tuple: String,
    },
    /// Check a certificate against a system.
    Verify {
        file: PathBuf,
        /// Certificate file, or `builtin:gaussoid` / `builtin:cox`.
        #[arg(long)]
        cert: String,
        #[arg(long)]
        oracle: Option<String>,
    },
    /// Print a built-in system or certificate.
    Gen {
        #[command(subcommand)]
        what: Gen,
    },
}

#[derive(Subcommand, Debug)]
enum Gen {
    /// The gaussoid ideal T_n.
    Gaussoid {
        #[arg(long)]
        n: u8,
    },
    /// The Cox trinomials: the ten listed ones, or a full file with the
    /// parameters d1..d6 substituted.
    Cox {
        /// Six comma-separated rationals.
        #[arg(long)]
        d: Option<String>,
        #[arg(long)]
        full: Option<PathBuf>,
    },
    /// A published certificate: `gaussoid` or `cox`.
    Cert { name: String },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Algorithm {
    Strong,
    Weak,
}

#[derive(Args, Debug)]
struct DefectOpts {
    /// Number of constrained coordinates.
    #[arg(long)]
    dim: usize,
    /// Valuations `v_i` for the strong test.
    #[arg(long, allow_hyphen_values = true)]
    v: Option<String>,
    /// Constants `λ_i` for the weak test.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    #[arg(long)]
    sample: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    count: usize,
    /// `trivial`, `gb` or `basis:<file>`.
    #[arg(long, default_value = "gb")]
    oracle: String,
    /// Unimodular matrix as JSON rows, or `random` for a seeded one per sample.
    #[arg(long)]
    transform: Option<String>,
}

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type CliResult = Result<(i32, String), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn load_system(path: &Path) -> Result<PolynomialSystem, Failure> {
    parse_system(&read(path)?).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn load_oracle(spec: &str, system: &PolynomialSystem) -> Result<VarietyOracle, Failure> {
    match spec {
        "trivial" => Ok(VarietyOracle::TrivialValuation),
        "gb" => Ok(VarietyOracle::GroebnerOverapproximation),
        _ => {
            let Some(path) = spec.strip_prefix("basis:") else {
                return Err(Failure(format!("unknown oracle '{spec}'")));
            };
            let basis = load_system(Path::new(path))?;
            if basis.vars() != system.vars() {
                return Err(Failure("basis file declares different variables".into()));
            }
            Ok(VarietyOracle::TropicalBasis(basis))
        }
    }
}

fn rationals(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(format_rational(x))).collect())
}

fn cell_json(c: &TropicalCell) -> Value {
    let hull = c.hull();
    let p = &c.polyhedron;
    let rows = |rows: &[tropdef_core::polyhedra::Constraint]| -> Value {
        rows.iter()
            .map(|r| {
                let mut v: Vec<Value> = r.a.iter().map(|x| Value::String(x.to_string())).collect();
                v.push(Value::String(r.b.to_string()));
                Value::Array(v)
            })
            .collect()
    };
    json!({
        "dimension": hull.dim,
        "point": rationals(&hull.point),
        "directions": hull.basis.iter().map(|b| rationals(b)).collect::<Vec<_>>(),
        "equalities": rows(p.equalities()),
        "inequalities": rows(p.inequalities()),
    })
}

fn output(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}

fn parse_seed_poly(text: &str, n: usize) -> Result<HPolyhedron, Failure> {
    let v: Value = serde_json::from_str(text)?;
    let rows = |key: &str| -> Result<Vec<(Vec<Rational>, Rational)>, Failure> {
        let Some(list) = v.get(key) else { return Ok(Vec::new()) };
        let list = list.as_array().ok_or_else(|| Failure(format!("'{key}' must be an array")))?;
        list.iter()
            .map(|row| {
                let row = row.as_array().ok_or_else(|| Failure(format!("rows of '{key}' must be arrays")))?;
                if row.len() != n + 1 {
                    return Err(Failure(format!("rows of '{key}' need {} entries", n + 1)));
                }
                let mut q = row
                    .iter()
                    .map(|x| match x {
                        Value::String(s) => parse_rational(s).map_err(Failure),
                        Value::Number(k) => parse_rational(&k.to_string()).map_err(Failure),
                        _ => Err(Failure("entries must be rationals".into())),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let b = q.pop().unwrap();
                Ok((q, b))
            })
            .collect()
    };
    Ok(HPolyhedron::from_constraints(n, &rows("equalities")?, &rows("inequalities")?)?)
}

fn cmd_prevariety(file: &Path, seed_poly: Option<&Path>, abort: Option<usize>) -> CliResult {
    let system = load_system(file)?;
    let n = system.nvars();
    let seed = match seed_poly {
        Some(p) => parse_seed_poly(&read(p)?, n)?,
        None => HPolyhedron::universe(n),
    };
    let options = PrevarietyOptions { abort_above_dim: abort, ..PrevarietyOptions::default() };
    let pv = prevariety(&system, &seed, &options)?;
    let v = json!({
        "variables": system.vars().names(),
        "cells": pv.cells.iter().map(cell_json).collect::<Vec<_>>(),
        "aborted": pv.aborted.as_ref().map(cell_json),
        "assumptions": Vec::<String>::new(),
    });
    Ok((0, output(v)))
}

fn parse_tuple(text: &str) -> Result<DefectTuple, Failure> {
    let rows: Vec<Vec<Value>> = serde_json::from_str(text)?;
    let entries = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| match x {
                    Value::String(s) => parse_rational(s).map_err(Failure),
                    Value::Number(k) => parse_rational(&k.to_string()).map_err(Failure),
                    _ => Err(Failure("tuple entries must be rationals".into())),
                })
                .collect::<Result<Vec<_>, _>>()
                .map(WeightVector)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(DefectTuple::new(entries)?)
}

fn parse_matrix(text: &str, n: usize) -> Result<Vec<Vec<i64>>, Failure> {
    let m: Vec<Vec<i64>> = serde_json::from_str(text)?;
    if m.len() != n || m.iter().any(|r| r.len() != n) {
        return Err(Failure(format!("transform must be a {n}x{n} integer matrix")));
    }
    Ok(m)
}

/// A unimodular matrix as a product of `2n` random elementary operations.
fn random_unimodular(n: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    if n < 2 {
        return m;
    }
    for _ in 0..2 * n {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let k: i64 = if rng.gen_bool(0.5) { 1 } else { -1 };
        for c in 0..n {
            m[i][c] += k * m[j][c];
        }
    }
    m
}

enum Subspace {
    Strong(Vec<Rational>),
    Weak(Vec<ValuedCoefficient>),
}

impl Subspace {
    fn json(&self) -> Value {
        match self {
            Subspace::Strong(v) => json!({ "v": rationals(v) }),
            Subspace::Weak(l) => json!({ "lambda": l.iter().map(|c| c.to_string()).collect::<Vec<_>>() }),
        }
    }
}

struct Job {
    subspace: Subspace,
    transform: Option<Vec<Vec<i64>>>,
}

fn status_name(s: DetectionStatus) -> &'static str {
    match s {
        DetectionStatus::Found => "found",
        DetectionStatus::NotFound => "not-found",
        DetectionStatus::Inconclusive => "inconclusive",
    }
}

fn run_job(system: &PolynomialSystem, oracle: &VarietyOracle, job: &Job) -> Result<Value, Failure> {
    let (sys, orc) = match &job.transform {
        Some(m) => {
            let sys = apply_unimodular(system, m)?;
            let orc = match oracle {
                VarietyOracle::TropicalBasis(b) => VarietyOracle::TropicalBasis(apply_unimodular(b, m)?),
                o => o.clone(),
            };
            (sys, orc)
        }
        None => (system.clone(), oracle.clone()),
    };
    let det: Detection = match &job.subspace {
        Subspace::Strong(v) => detect_strong(&sys, v, &orc)?,
        Subspace::Weak(l) => detect_weak(&sys, l, &orc)?,
    };
    let mut out = json!({
        "status": status_name(det.status),
        "line": det.line.map(line_name),
        "subspace": job.subspace.json(),
        "oracle_queries": det.oracle_queries,
        "candidates": det.candidates,
        "certificate": det.certificate.as_ref().map(|c| serde_json::to_value(CertificateFile::from_certificate(c)).unwrap()),
        "assumptions": det.certificate.as_ref().map(|c| c.assumptions.clone()).unwrap_or_default(),
    });
    if let Some(m) = &job.transform {
        out["transform"] = json!(m);
        out["transformed_system"] = Value::String(serialize_system(&sys));
        if let Some(c) = &det.certificate {
            let pulled: Vec<Value> = c
                .tuple
                .entries()
                .iter()
                .map(|w| pull_back_weight(w, m).map(|p| rationals(p.as_slice())))
                .collect::<Result<_, _>>()?;
            out["original_tuple"] = Value::Array(pulled);
        }
    }
    Ok(out)
}

fn cmd_defect(algorithm: Algorithm, file: &Path, opts: &DefectOpts) -> CliResult {
    let system = load_system(file)?;
    let n = system.nvars();
    if opts.dim >= n.max(1) {
        return Err(Failure(format!("--dim must be below the number of variables ({n})")));
    }
    let oracle = load_oracle(&opts.oracle, &system)?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let fixed_transform = match opts.transform.as_deref() {
        None | Some("random") => None,
        Some(t) => Some(parse_matrix(t, n)?),
    };
    let random_transform = opts.transform.as_deref() == Some("random");

    let mut jobs = Vec::new();
    if opts.sample {
        for _ in 0..opts.count.max(1) {
            let subspace = match algorithm {
                Algorithm::Strong => Subspace::Strong(
                    (0..opts.dim).map(|_| Rational::from_integer(rng.gen_range(-SAMPLE_RANGE..=SAMPLE_RANGE).into())).collect(),
                ),
                Algorithm::Weak => Subspace::Weak(
                    (0..opts.dim)
                        .map(|_| {
                            let mut k = rng.gen_range(-SAMPLE_RANGE..SAMPLE_RANGE);
                            if k >= 0 {
                                k += 1;
                            }
                            ValuedCoefficient::from_integer(k)
                        })
                        .collect(),
                ),
            };
            let transform = if random_transform { Some(random_unimodular(n, &mut rng)) } else { fixed_transform.clone() };
            jobs.push(Job { subspace, transform });
        }
    } else {
        let subspace = match algorithm {
            Algorithm::Strong => {
                let v = parse_rational_list(opts.v.as_deref().unwrap_or("")).map_err(Failure)?;
                Subspace::Strong(v)
            }
            Algorithm::Weak => {
                let l = parse_coefficient_list(opts.lambda.as_deref().unwrap_or("")).map_err(Failure)?;
                Subspace::Weak(l)
            }
        };
        let len = match &subspace {
            Subspace::Strong(v) => v.len(),
            Subspace::Weak(l) => l.len(),
        };
        if len != opts.dim {
            return Err(Failure(format!("expected {} subspace values, got {len}", opts.dim)));
        }
        let transform = if random_transform { Some(random_unimodular(n, &mut rng)) } else { fixed_transform };
        jobs.push(Job { subspace, transform });
    }

    let results: Vec<Result<Value, Failure>> = jobs.par_iter().map(|j| run_job(&system, &oracle, j)).collect();
    let results = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    let any = |s: &str| results.iter().any(|r| r["status"] == s);
    let code = if any("found") || !any("inconclusive") { 0 } else { 2 };
    let v = if opts.sample {
        let mut assumptions: Vec<String> = results
            .iter()
            .flat_map(|r| r["assumptions"].as_array().cloned().unwrap_or_default())
            .filter_map(|a| a.as_str().map(String::from))
            .collect();
        assumptions.sort();
        assumptions.dedup();
        json!({
            "seed": opts.seed,
            "sample_range": SAMPLE_RANGE,
            "generator": "ChaCha8",
            "samples": results,
            "assumptions": assumptions,
        })
    } else {
        results.into_iter().next().unwrap()
    };
    Ok((code, output(v)))
}

fn cmd_singleton(file: &Path, tuple: &str) -> CliResult {
    let system = load_system(file)?;
    let tuple = parse_tuple(tuple)?;
    let u = singleton(&system, &tuple)?;
    Ok((0, output(json!({ "weight": rationals(u.as_slice()), "assumptions": Vec::<String>::new() }))))
}

fn check_name(c: VarietyCheck) -> &'static str {
    match c {
        VarietyCheck::WitnessMonomial => "witness-monomial",
        VarietyCheck::UnitIdeal => "unit-ideal",
        VarietyCheck::OracleExclusion => "oracle-exclusion",
        VarietyCheck::DimensionEvidence => "dimension-evidence",
    }
}

fn cmd_verify(file: &Path, cert: &str, oracle: Option<&str>) -> CliResult {
    let system = load_system(file)?;
    let cert = match cert.strip_prefix("builtin:") {
        Some(name) => builtin_certificates()
            .into_iter()
            .find(|(n, _)| *n == name)
            .map(|(_, c)| c)
            .ok_or_else(|| Failure(format!("unknown built-in certificate '{name}'")))?,
        None => read_certificate(&read(Path::new(cert))?).map_err(Failure)?,
    };
    let oracle = oracle.map(|o| load_oracle(o, &system)).transpose()?;
    let report = verify_certificate(&system, &cert, oracle.as_ref())?;
    let v = json!({
        "accepted": report.accepted,
        "prevariety_side": report.prevariety_side,
        "variety_side": report.variety_side,
        "variety_check": report.variety_check.map(check_name),
        "checks": report.checks.iter().map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail})).collect::<Vec<_>>(),
        "assumptions": report.assumptions_used,
    });
    Ok((if report.accepted { 0 } else { 1 }, output(v)))
}

fn cmd_gen(what: &Gen) -> CliResult {
    match what {
        Gen::Gaussoid { n } => Ok((0, serialize_system(&gaussoid_system(*n)?))),
        Gen::Cox { d, full } => {
            let mut spec = CoxSpec::default();
            if let Some(d) = d {
                let v = parse_rational_list(d).map_err(Failure)?;
                spec.d = v.try_into().map_err(|_| Failure("--d needs six rationals".into()))?;
            }
            spec.check_genericity()?;
            match full {
                None => Ok((0, serialize_system(&cox_system(&spec)?))),
                Some(path) => {
                    let mut text = String::new();
                    let params: Vec<String> =
                        spec.d.iter().enumerate().map(|(i, x)| format!("d{}={}", i + 1, format_rational(x))).collect();
                    text.push_str(&format!("params: {}\n", params.join(", ")));
                    text.push_str(&read(path)?);
                    let system = parse_system(&text).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
                    validate_cox_system(&system)?;
                    Ok((0, serialize_system(&system)))
                }
            }
        }
        Gen::Cert { name } => {
            let cert = builtin_certificates()
                .into_iter()
                .find(|(n, _)| n == name)
                .map(|(_, c)| c)
                .ok_or_else(|| Failure(format!("unknown built-in certificate '{name}'")))?;
            let mut s = write_certificate(&cert);
            s.push('\n');
            Ok((0, s))
        }
    }
}

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            return (code, e.to_string());
        }
    };
    let result = match &cli.command {
        Command::Prevariety { file, seed_poly, abort_above_dim } => {
            cmd_prevariety(file, seed_poly.as_deref(), *abort_above_dim)
        }
        Command::Defect { algorithm, file, opts } => cmd_defect(*algorithm, file, opts),
        Command::Singleton { file, tuple } => cmd_singleton(file, tuple),
        Command::Verify { file, cert, oracle } => cmd_verify(file, cert, oracle.as_deref()),
        Command::Gen { what } => cmd_gen(what),
    };
    match result {
        Ok(r) => r,
        Err(Failure(msg)) => (1, output(json!({ "error": msg, "assumptions": Vec::<String>::new() }))),
    }
}
