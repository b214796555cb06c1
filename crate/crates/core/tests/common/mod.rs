#![allow(dead_code)]

use tropdef_core::algebra::{Exponent, LaurentPolynomial, PolynomialSystem, ValuedCoefficient, Variables};
use tropdef_core::num::{rat, Rational};

pub fn c(n: i64) -> ValuedCoefficient {
    ValuedCoefficient::from_integer(n)
}

/// `n · t^e`
pub fn ct(n: i64, e: i64) -> ValuedCoefficient {
    ValuedCoefficient::monomial(rat(n), rat(e))
}

pub fn poly(vars: &Variables, terms: &[(ValuedCoefficient, &[i64])]) -> LaurentPolynomial {
    LaurentPolynomial::from_terms(vars, terms.iter().map(|(c, e)| (Exponent(e.to_vec()), c.clone())))
}

pub fn system(names: &[&str], gens: impl FnOnce(&Variables) -> Vec<LaurentPolynomial>) -> PolynomialSystem {
    let v = Variables::new(names);
    let g = gens(&v);
    PolynomialSystem::new(&v, g).unwrap()
}

/// `{x+y+1, x+t^{-1}y+2}`
pub fn f1() -> PolynomialSystem {
    system(&["x", "y"], |v| {
        vec![
            poly(v, &[(c(1), &[1, 0]), (c(1), &[0, 1]), (c(1), &[0, 0])]),
            poly(v, &[(c(1), &[1, 0]), (ct(1, -1), &[0, 1]), (c(2), &[0, 0])]),
        ]
    })
}

/// `{x+y+1, (t^{-1}−1)y+1}`
pub fn f2() -> PolynomialSystem {
    system(&["x", "y"], |v| {
        vec![
            poly(v, &[(c(1), &[1, 0]), (c(1), &[0, 1]), (c(1), &[0, 0])]),
            poly(v, &[(&ct(1, -1) - &c(1), &[0, 1]), (c(1), &[0, 0])]),
        ]
    })
}

/// `{(x+1)(y+1), (x−1)(y+1)}`
pub fn strong_example() -> PolynomialSystem {
    system(&["x", "y"], |v| {
        vec![
            poly(v, &[(c(1), &[1, 1]), (c(1), &[1, 0]), (c(1), &[0, 1]), (c(1), &[0, 0])]),
            poly(v, &[(c(1), &[1, 1]), (c(1), &[1, 0]), (c(-1), &[0, 1]), (c(-1), &[0, 0])]),
        ]
    })
}

/// `{y+1}`, a tropical basis of the ideal of [`strong_example`].
pub fn strong_basis() -> PolynomialSystem {
    system(&["x", "y"], |v| vec![poly(v, &[(c(1), &[0, 1]), (c(1), &[0, 0])])])
}

/// The image of [`strong_example`] under `x ↦ ab`, `y ↦ b`.
pub fn psi_example() -> PolynomialSystem {
    system(&["a", "b"], |v| {
        vec![
            poly(v, &[(c(1), &[1, 2]), (c(1), &[1, 1]), (c(1), &[0, 1]), (c(1), &[0, 0])]),
            poly(v, &[(c(1), &[1, 2]), (c(1), &[1, 1]), (c(-1), &[0, 1]), (c(-1), &[0, 0])]),
        ]
    })
}

pub fn psi_basis() -> PolynomialSystem {
    system(&["a", "b"], |v| vec![poly(v, &[(c(1), &[0, 1]), (c(1), &[0, 0])])])
}

/// `{x+z+2, y+z+1}` and the tropical basis obtained by adding `x−y+1`.
pub fn line_example() -> (PolynomialSystem, PolynomialSystem) {
    let gens = |v: &Variables| {
        vec![
            poly(v, &[(c(1), &[1, 0, 0]), (c(1), &[0, 0, 1]), (c(2), &[0, 0, 0])]),
            poly(v, &[(c(1), &[0, 1, 0]), (c(1), &[0, 0, 1]), (c(1), &[0, 0, 0])]),
        ]
    };
    let f = system(&["x", "y", "z"], gens);
    let b = system(&["x", "y", "z"], |v| {
        let mut g = gens(v);
        g.push(poly(v, &[(c(1), &[1, 0, 0]), (c(-1), &[0, 1, 0]), (c(1), &[0, 0, 0])]));
        g
    });
    (f, b)
}

pub fn q(xs: &[i64]) -> Vec<Rational> {
    xs.iter().map(|&x| rat(x)).collect()
}
