//! Exact rational polyhedra in H-representation.

pub mod lp;
mod hpoly;

pub use hpoly::{Constraint, HPolyhedron, Hull};
