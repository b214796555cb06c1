use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::algebra::{Exponent, LaurentPolynomial, PolynomialSystem, ValuedCoefficient, Variables};
use crate::error::{Error, Result};
use crate::num::{rat, Rational};

/// Tested generic choice of the parameters `d_1, …, d_6`.
pub const DEFAULT_D: [i64; 6] = [1, 2, 4, 8, 16, 32];

/// Parameters of the cubic surface: the blown-up points are `(1 : d_i : d_i³)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxSpec {
    pub d: [Rational; 6],
}

impl Default for CoxSpec {
    fn default() -> Self {
        Self { d: DEFAULT_D.map(rat) }
    }
}

/// `E_1, …, E_6, F_12, …, F_56, G_1, …, G_6`.
pub fn cox_variables() -> Variables {
    let mut names: Vec<String> = (1..=6).map(|i| format!("E{i}")).collect();
    for i in 1..=6 {
        for j in i + 1..=6 {
            names.push(format!("F{i}{j}"));
        }
    }
    names.extend((1..=6).map(|i| format!("G{i}")));
    Variables::new(&names)
}

impl CoxSpec {
    /// Rejects parameters for which a coefficient factor of the ten
    /// trinomials vanishes, or two of the points coincide.
    pub fn check_genericity(&self) -> Result<()> {
        let d = &self.d;
        for i in 0..6 {
            for j in i + 1..6 {
                if d[i] == d[j] {
                    return Err(Error::Genericity(format!("d{} - d{}", i + 1, j + 1)));
                }
            }
        }
        for i in 1..6 {
            for j in i + 1..6 {
                if (&d[0] + &d[i] + &d[j]).is_zero() {
                    return Err(Error::Genericity(format!("d1 + d{} + d{}", i + 1, j + 1)));
                }
            }
        }
        Ok(())
    }

    fn factor(&self, i: usize, j: usize) -> Rational {
        let d = &self.d;
        (&d[i - 1] - &d[j - 1]) * (&d[0] + &d[i - 1] + &d[j - 1])
    }
}

/// The ten trinomials listed for the Cox ideal, one per triple
/// `2 ≤ a < b < c ≤ 6`, with the parameters substituted:
/// `(d_b−d_c)(d_1+d_b+d_c) E_a F_1a − (d_a−d_c)(d_1+d_a+d_c) E_b F_1b
/// + (d_a−d_b)(d_1+d_a+d_b) E_c F_1c`.
pub fn cox_system(spec: &CoxSpec) -> Result<PolynomialSystem> {
    spec.check_genericity()?;
    let vars = cox_variables();
    let term = |c: Rational, a: usize| {
        let mut e = Exponent::zero(vars.len());
        e.0[vars.index_of(&format!("E{a}")).unwrap()] = 1;
        e.0[vars.index_of(&format!("F1{a}")).unwrap()] = 1;
        LaurentPolynomial::monomial(&vars, e, ValuedCoefficient::from_rational(c))
    };
    let mut gens = Vec::new();
    for a in 2..=6 {
        for b in a + 1..=6 {
            for c in b + 1..=6 {
                let f = &(&term(spec.factor(b, c), a) - &term(spec.factor(a, c), b)) + &term(spec.factor(a, b), c);
                gens.push(f);
            }
        }
    }
    PolynomialSystem::new(&vars, gens)
}

/// Checks a user-supplied Cox generating set: the variables are exactly
/// those of [`cox_variables`] and every generator is a trivially valued
/// homogeneous quadric.
pub fn validate_cox_system(system: &PolynomialSystem) -> Result<()> {
    if system.vars().names() != cox_variables().names() {
        return Err(Error::Invalid("variables differ from E1..E6, F12..F56, G1..G6".into()));
    }
    for (i, g) in system.generators().iter().enumerate() {
        if g.is_zero() {
            return Err(Error::Invalid(format!("generator {} is zero", i + 1)));
        }
        if !g.is_homogeneous() || g.max_degree() != Some(2) || g.terms().any(|(e, _)| e.0.iter().any(|&x| x < 0)) {
            return Err(Error::Invalid(format!("generator {} is not a homogeneous quadric", i + 1)));
        }
        if !g.is_trivially_valued() {
            return Err(Error::ValuedInput);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_trinomial_coefficients() {
        let f = cox_system(&CoxSpec::default()).unwrap();
        assert_eq!(f.len(), 10);
        assert_eq!(f.nvars(), 27);
        let v = f.vars();
        let mono = |a: &str, b: &str| {
            let mut e = Exponent::zero(27);
            e.0[v.index_of(a).unwrap()] = 1;
            e.0[v.index_of(b).unwrap()] = 1;
            e
        };
        // d = (1,2,4,8,16,32): (4-8)(1+4+8) = -52, (2-8)(1+2+8) = -66, (2-4)(1+2+4) = -14
        let g = &f.generators()[0];
        assert_eq!(g.coefficient(&mono("E2", "F12")), Some(&ValuedCoefficient::from_integer(-52)));
        assert_eq!(g.coefficient(&mono("E3", "F13")), Some(&ValuedCoefficient::from_integer(66)));
        assert_eq!(g.coefficient(&mono("E4", "F14")), Some(&ValuedCoefficient::from_integer(-14)));
        assert_eq!(g.len(), 3);
        validate_cox_system(&f).unwrap();
    }

    #[test]
    fn equal_parameters_rejected() {
        let mut spec = CoxSpec::default();
        spec.d[3] = spec.d[2].clone();
        assert_eq!(cox_system(&spec), Err(Error::Genericity("d3 - d4".into())));
    }

    #[test]
    fn vanishing_sum_rejected() {
        let spec = CoxSpec { d: [1, 2, -3, 8, 16, 32].map(rat) };
        assert_eq!(cox_system(&spec), Err(Error::Genericity("d1 + d2 + d3".into())));
    }

    #[test]
    fn degenerate_parameters_kill_a_term() {
        // with d3 = d4 the factor (d3 - d4) vanishes and the first trinomial
        // loses its E2 F12 term; this is why such parameters are rejected
        let d = [1, 2, 4, 4, 16, 32].map(rat);
        let spec = CoxSpec { d };
        assert!(spec.factor(3, 4).is_zero());
    }
}
