//! File formats and the command-line front end for `tropdef-core`.

pub mod certfile;
pub mod cli;
pub mod syntax;

pub use certfile::{read_certificate, write_certificate, CertificateFile};
pub use syntax::{parse_system, serialize_system, ParseError};
