//! Detection and verification of tropical defects.
//!
//! A tropical defect of a finite generating set `F` of an ideal `I` is a
//! perturbed weight `w_0 + εw_1 + … + εᵏw_k` lying in the tropical prevariety
//! of `F` but outside the tropical variety of `I`. This crate provides the
//! exact arithmetic, polyhedral and Gröbner machinery needed to search for
//! such defects and to check them independently.
//!
//! All weights follow the min-convention.

#![no_std]
extern crate alloc;
#[cfg(feature = "std")]
extern crate std;

pub mod algebra;
pub mod defects;
mod error;
pub mod instances;
pub mod num;
pub mod polyhedra;
pub mod tropical;

pub use error::{Error, Result};
