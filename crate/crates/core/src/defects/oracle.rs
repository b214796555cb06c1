use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::membership::{laurent_properness, saturation};
use crate::algebra::{groebner_basis, normal_form, PolynomialSystem, TermOrder, WeightVector};
use crate::error::{Error, Result};
use crate::num::Rational;
use crate::polyhedra::HPolyhedron;
use crate::tropical::{prevariety, PrevarietyOptions};

use super::perturbed::contains_perturbed;

/// Stand-in for the tropical variety of `I' = I + ⟨x_i − λ_i⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VarietyOracle {
    /// For trivially valued input: `Trop(I')` is `{0}` if `I'` is proper and
    /// empty otherwise.
    TrivialValuation,
    /// Prevariety of a Gröbner basis of `F'`: a superset of `Trop(I')`.
    GroebnerOverapproximation,
    /// A user-supplied tropical basis of `I`; the affine constraints are
    /// appended before taking the prevariety.
    TropicalBasis(PolynomialSystem),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OracleKind {
    TrivialValuation,
    GroebnerOverapproximation,
    TropicalBasis,
}

impl VarietyOracle {
    pub fn kind(&self) -> OracleKind {
        match self {
            Self::TrivialValuation => OracleKind::TrivialValuation,
            Self::GroebnerOverapproximation => OracleKind::GroebnerOverapproximation,
            Self::TropicalBasis(_) => OracleKind::TropicalBasis,
        }
    }

    /// Whether the answers are exactly `Trop(I')` (under the user's claim
    /// for a supplied tropical basis).
    pub fn is_exact(&self) -> bool {
        !matches!(self, Self::GroebnerOverapproximation)
    }

    /// Checks that a supplied basis generates the same Laurent ideal as
    /// `system`. `None` when the check is out of reach (valued input), in
    /// which case the basis is trusted.
    pub fn check_basis(&self, system: &PolynomialSystem) -> Result<Option<bool>> {
        let Self::TropicalBasis(basis) = self else { return Ok(Some(true)) };
        if basis.vars() != system.vars() {
            return Err(Error::VariableMismatch);
        }
        if !basis.is_trivially_valued() || !system.is_trivially_valued() {
            return Ok(None);
        }
        let order = TermOrder::grevlex(system.nvars());
        let contained = |a: &PolynomialSystem, b: &PolynomialSystem| -> Result<bool> {
            let sat = saturation(b)?;
            for g in a.generators() {
                if !normal_form(g, &sat, &order)?.is_zero() {
                    return Ok(false);
                }
            }
            Ok(true)
        };
        Ok(Some(contained(basis, system)? && contained(system, basis)?))
    }
}

/// The oracle's description of `Trop(I')`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarietyPoints {
    pub cells: Vec<HPolyhedron>,
    /// `false` when the cells only cover a superset.
    pub exact: bool,
}

impl VarietyPoints {
    pub fn contains(&self, w: &WeightVector) -> bool {
        self.cells.iter().any(|c| c.contains_point(w.as_slice()))
    }

    /// Whether the perturbed point of a tuple lies in some cell.
    pub fn contains_tuple(&self, tuple: &crate::algebra::DefectTuple) -> bool {
        self.cells.iter().any(|c| contains_perturbed(c, tuple))
    }

    /// Representative points: one relative-interior point per cell.
    pub fn points(&self) -> Vec<WeightVector> {
        self.cells.iter().filter_map(|c| c.relative_interior_point().ok()).map(WeightVector).collect()
    }
}

/// Points of `Trop(I')` for `F' = F ∪ constraints`, where the last
/// `constraints` generators of `f_prime` are the affine constraints.
pub fn zero_dim_variety_points(
    f_prime: &PolynomialSystem,
    constraints: usize,
    oracle: &VarietyOracle,
) -> Result<VarietyPoints> {
    let n = f_prime.nvars();
    match oracle {
        VarietyOracle::TrivialValuation => {
            if !f_prime.is_trivially_valued() {
                return Err(Error::ValuedInput);
            }
            let cells =
                if laurent_properness(f_prime)? { vec![HPolyhedron::point(&vec![Rational::from_integer(0.into()); n])] } else { Vec::new() };
            Ok(VarietyPoints { cells, exact: true })
        }
        VarietyOracle::GroebnerOverapproximation => {
            let g = groebner_basis(f_prime, &TermOrder::grevlex(n))?;
            let pv = prevariety(&g, &HPolyhedron::universe(n), &PrevarietyOptions::default())?;
            Ok(VarietyPoints { cells: pv.cells.into_iter().map(|c| c.polyhedron).collect(), exact: false })
        }
        VarietyOracle::TropicalBasis(basis) => {
            if basis.vars() != f_prime.vars() {
                return Err(Error::VariableMismatch);
            }
            let k = f_prime.len();
            let extra = f_prime.generators()[k - constraints.min(k)..].to_vec();
            let sys = basis.extended(extra)?;
            let pv = prevariety(&sys, &HPolyhedron::universe(n), &PrevarietyOptions::default())?;
            Ok(VarietyPoints { cells: pv.cells.into_iter().map(|c| c.polyhedron).collect(), exact: true })
        }
    }
}
