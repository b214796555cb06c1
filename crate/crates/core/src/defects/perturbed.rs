use core::cmp::Ordering;

use alloc::vec::Vec;

use num_traits::Zero;

use crate::algebra::DefectTuple;
use crate::num::Rational;
use crate::polyhedra::{Constraint, HPolyhedron};

fn values(c: &Constraint, tuple: &DefectTuple) -> Vec<Rational> {
    tuple
        .entries()
        .iter()
        .enumerate()
        .map(|(i, w)| {
            let ax = c.a.iter().zip(w.as_slice()).fold(Rational::zero(), |acc, (a, x)| acc + x * a);
            if i == 0 {
                ax - Rational::from_integer(c.b.clone())
            } else {
                ax
            }
        })
        .collect()
}

fn lex_sign(v: &[Rational]) -> Ordering {
    v.iter().find(|x| !x.is_zero()).map_or(Ordering::Equal, |x| x.cmp(&Rational::zero()))
}

/// Whether `w_0 + ε w_1 + … + ε^k w_k` lies in `p` for all sufficiently
/// small `ε > 0`.
pub fn contains_perturbed(p: &HPolyhedron, tuple: &DefectTuple) -> bool {
    if tuple.ambient_dim() != p.ambient_dim() {
        return false;
    }
    p.equalities().iter().all(|c| lex_sign(&values(c, tuple)) == Ordering::Equal)
        && p.inequalities().iter().all(|c| lex_sign(&values(c, tuple)) != Ordering::Less)
}

/// `w_0 + ε w_1 + … + ε^k w_k` for a concrete `ε`.
pub fn perturbed_point(tuple: &DefectTuple, eps: &Rational) -> Vec<Rational> {
    let n = tuple.ambient_dim();
    let mut out = alloc::vec![Rational::zero(); n];
    let mut scale = Rational::from_integer(1.into());
    for w in tuple.entries() {
        for (o, x) in out.iter_mut().zip(w.as_slice()) {
            *o += &scale * x;
        }
        scale *= eps;
    }
    out
}
