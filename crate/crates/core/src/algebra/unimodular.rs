//! Monomial changes of coordinates `x^α ↦ x^{Mα}` for unimodular `M`.

use alloc::string::ToString;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use super::polynomial::{Exponent, PolynomialSystem};
use super::weight::WeightVector;
use crate::error::{Error, Result};
use crate::num::{rat, Rational};

fn check_square(m: &[Vec<i64>], n: usize) -> Result<()> {
    if m.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: m.len() });
    }
    if let Some(r) = m.iter().find(|r| r.len() != n) {
        return Err(Error::DimensionMismatch { expected: n, found: r.len() });
    }
    Ok(())
}

/// Determinant by exact elimination.
pub fn determinant(m: &[Vec<i64>]) -> Rational {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        let pivot = a[c].clone();
        for row in a.iter_mut().skip(c + 1) {
            if row[c].is_zero() {
                continue;
            }
            let f = &row[c] / &pivot[c];
            for (x, y) in row.iter_mut().zip(&pivot).skip(c) {
                *x -= &f * y;
            }
        }
    }
    det
}

fn require_unimodular(m: &[Vec<i64>], n: usize) -> Result<()> {
    check_square(m, n)?;
    let d = determinant(m);
    if !d.abs().is_one() {
        return Err(Error::NotUnimodular(d.to_string()));
    }
    Ok(())
}

/// Replaces `x_j` by the monomial whose exponent is column `j` of `m`.
pub fn apply_unimodular(system: &PolynomialSystem, m: &[Vec<i64>]) -> Result<PolynomialSystem> {
    let n = system.nvars();
    require_unimodular(m, n)?;
    let image = |e: &Exponent| -> Result<Exponent> {
        let mut out = Vec::with_capacity(n);
        for row in m {
            let mut acc: i64 = 0;
            for (&a, &x) in row.iter().zip(e.as_slice()) {
                acc = a.checked_mul(x).and_then(|p| acc.checked_add(p)).ok_or(Error::ExponentOverflow)?;
            }
            out.push(acc);
        }
        Ok(Exponent(out))
    };
    let gens = system
        .generators()
        .iter()
        .map(|g| g.map_exponents(system.vars(), image))
        .collect::<Result<Vec<_>>>()?;
    PolynomialSystem::new(system.vars(), gens)
}

/// `Mᵀ w`: a weight for the transformed system, read back in the original
/// coordinates.
pub fn pull_back_weight(w: &WeightVector, m: &[Vec<i64>]) -> Result<WeightVector> {
    let n = w.len();
    check_square(m, n)?;
    Ok(WeightVector(
        (0..n).map(|j| (0..n).fold(Rational::zero(), |acc, i| acc + &w[i] * rat(m[i][j]))).collect(),
    ))
}

/// Inverse of a unimodular integer matrix.
pub fn inverse(m: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let n = m.len();
    require_unimodular(m, n)?;
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row: Vec<Rational> = r.iter().map(|&x| rat(x)).collect();
            row.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            row
        })
        .collect();
    crate::num::rref(&mut a, n);
    a.iter()
        .map(|row| {
            row[n..]
                .iter()
                .map(|x| {
                    use num_traits::ToPrimitive;
                    x.to_integer().to_i64().ok_or(Error::ExponentOverflow)
                })
                .collect()
        })
        .collect()
}

/// `M^{-T} w`, the inverse of [`pull_back_weight`].
pub fn push_forward_weight(w: &WeightVector, m: &[Vec<i64>]) -> Result<WeightVector> {
    pull_back_weight(w, &inverse(m)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::coefficient::ValuedCoefficient;
    use crate::algebra::polynomial::{LaurentPolynomial, Variables};
    use crate::num::rat_vec;
    use alloc::vec;

    fn psi() -> Vec<Vec<i64>> {
        // x ↦ a·b, y ↦ b
        vec![vec![1, 0], vec![1, 1]]
    }

    #[test]
    fn weight_pull_back() {
        let eb = WeightVector(rat_vec(&[0, 1]));
        assert_eq!(pull_back_weight(&eb, &psi()).unwrap(), WeightVector(rat_vec(&[1, 1])));
        let back = push_forward_weight(&WeightVector(rat_vec(&[1, 1])), &psi()).unwrap();
        assert_eq!(back, eb);
    }

    #[test]
    fn transforms_example_system() {
        let v = Variables::new(&["x", "y"]);
        let x = LaurentPolynomial::variable(&v, 0);
        let y = LaurentPolynomial::variable(&v, 1);
        let one = LaurentPolynomial::constant(&v, ValuedCoefficient::one());
        let f = PolynomialSystem::new(&v, vec![&(&x + &one) * &(&y + &one), &(&x - &one) * &(&y + &one)]).unwrap();
        let g = apply_unimodular(&f, &psi()).unwrap();
        let ab = &x * &y;
        assert_eq!(g.generators()[0], &(&ab + &one) * &(&y + &one));
        assert_eq!(g.generators()[1], &(&ab - &one) * &(&y + &one));
        let id = vec![vec![1, 0], vec![0, 1]];
        assert_eq!(apply_unimodular(&f, &id).unwrap(), f);
    }

    #[test]
    fn rejects_singular() {
        let v = Variables::new(&["x", "y"]);
        let f = PolynomialSystem::new(&v, vec![]).unwrap();
        assert!(matches!(apply_unimodular(&f, &[vec![2, 0], vec![0, 1]]), Err(Error::NotUnimodular(_))));
    }
}
