//! The two application ideals and their published defects.

mod cox;
mod gaussoid;
mod published;


pub use cox::{cox_system, cox_variables, validate_cox_system, CoxSpec, DEFAULT_D};
pub use gaussoid::{gaussoid_system, gaussoid_variables};

pub use published::{builtin_certificates, cox_certificate, gaussoid_certificate, COX_WEIGHT, GAUSSOID_WEIGHT};
