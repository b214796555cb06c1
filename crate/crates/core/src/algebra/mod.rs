//! Coefficients, Laurent polynomials, term orders and Gröbner bases.

pub mod coefficient;
pub mod groebner;
pub mod membership;
pub mod order;
pub mod polynomial;
pub mod unimodular;
pub mod weight;

pub use coefficient::ValuedCoefficient;
pub use groebner::{groebner_basis, is_groebner_basis, normal_form, truncated_groebner_basis};
pub use membership::{
    graded_initial_membership, initial_ideal_basis, laurent_properness, lifted_nested_initial_membership,
    truncated_initial_ideal_basis,
};
pub use order::{Tiebreak, TermOrder};
pub use polynomial::{Exponent, LaurentPolynomial, PolynomialSystem, Variables};
pub use unimodular::{apply_unimodular, pull_back_weight};
pub use weight::{DefectTuple, WeightVector};
