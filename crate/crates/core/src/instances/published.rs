use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::cox::cox_variables;
use super::gaussoid::gaussoid_variables;
use crate::algebra::{DefectTuple, Exponent, Variables, WeightVector};
use crate::defects::{Certificate, CertificateMode};

/// Weight for `T_4` in the variable order of [`gaussoid_variables`].
pub const GAUSSOID_WEIGHT: [i64; 40] = [
    14, 10, 6, 0, 6, 8, 8, 2, 8, 6, 6, 2, 8, 8, 8, 8, 8, 4, 2, 10, 9, 3, 5, 5, 9, 11, 1, 5, 7, 5, 5, 5, 7, 7, 1, 5, 8, 6, 4, 4,
];

/// Weight for the Cox ideal in the variable order of [`cox_variables`].
pub const COX_WEIGHT: [i64; 27] = [2, 1, 0, 1, 1, 1, 0, 2, 0, 0, 0, 1, 0, 0, 0, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0];

fn monomial(vars: &Variables, names: &[&str]) -> Exponent {
    let mut e = Exponent::zero(vars.len());
    for name in names {
        e.0[vars.index_of(name).expect("published variable exists")] += 1;
    }
    e
}

fn certificate(vars: &Variables, weight: &[i64], witness: &[&str]) -> Certificate {
    Certificate {
        system_digest: String::new(),
        variables: vars.names().to_vec(),
        tuple: DefectTuple::singleton(WeightVector::from_integers(weight)),
        witness: Some(monomial(vars, witness)),
        mode: CertificateMode::WitnessMonomial,
        oracle: None,
        line: None,
        assumptions: Vec::new(),
        affine: Vec::new(),
    }
}

/// The gaussoid defect of `T_4` with witness `a_{23} a_{23|1}`.
pub fn gaussoid_certificate() -> Certificate {
    let vars = gaussoid_variables(4).expect("n = 4 is supported");
    certificate(&vars, &GAUSSOID_WEIGHT, &["a23", "a23_1"])
}

/// The defect of the Cox ideal with witness `E_6 F_{56} G_6`. Checking the
/// witness needs the full generating set.
pub fn cox_certificate() -> Certificate {
    certificate(&cox_variables(), &COX_WEIGHT, &["E6", "F56", "G6"])
}

/// Both published certificates, unverified.
pub fn builtin_certificates() -> Vec<(&'static str, Certificate)> {
    vec![("gaussoid", gaussoid_certificate()), ("cox", cox_certificate())]
}
