use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::lp::{feasible_point, minimize, LpOutcome, Row};
use crate::error::{Error, Result};
use crate::num::{dot, null_space, primitive_integer_row, rank, rref, Rational};

/// A constraint `a·x = b` or `a·x ≥ b` with coprime integer entries.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Constraint {
    pub a: Vec<BigInt>,
    pub b: BigInt,
}

impl Constraint {
    fn from_rational(a: &[Rational], b: &Rational) -> Self {
        let mut row: Vec<Rational> = a.to_vec();
        row.push(b.clone());
        let mut ints = primitive_integer_row(&row);
        let b = ints.pop().unwrap();
        Self { a: ints, b }
    }

    fn rational(&self) -> Row {
        (self.a.iter().map(|x| Rational::from_integer(x.clone())).collect(), Rational::from_integer(self.b.clone()))
    }

    fn is_trivial_lhs(&self) -> bool {
        self.a.iter().all(Zero::is_zero)
    }

    /// Flips the sign so that the first nonzero coefficient is positive.
    fn oriented(mut self) -> Self {
        if self.a.iter().find(|x| !x.is_zero()).is_some_and(Signed::is_negative) {
            self.a.iter_mut().for_each(|x| *x = -&*x);
            self.b = -self.b;
        }
        self
    }

    fn value(&self, x: &[Rational]) -> Rational {
        self.a.iter().zip(x).fold(Rational::zero(), |acc, (a, x)| acc + x * a)
    }
}

/// A convex polyhedron `{x : A_eq x = b_eq, A_in x ≥ b_in}` in `Qⁿ`.
///
/// Rows are kept as coprime integer vectors, equalities with positive
/// leading coefficient, and both lists sorted without duplicates. Two
/// polyhedra describing the same set have equal [`HPolyhedron::canonical`]
/// forms.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HPolyhedron {
    dim: usize,
    equalities: Vec<Constraint>,
    inequalities: Vec<Constraint>,
}

/// Affine hull data of a nonempty polyhedron.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hull {
    pub dim: usize,
    /// Basis of the direction space of the affine hull.
    pub basis: Vec<Vec<Rational>>,
    /// A relative-interior point.
    pub point: Vec<Rational>,
}

struct Analysis {
    /// Indices of inequalities that hold with equality on the whole set.
    implicit: Vec<bool>,
    hull: Hull,
}

impl HPolyhedron {
    /// All of `Qⁿ`.
    pub fn universe(dim: usize) -> Self {
        Self { dim, equalities: Vec::new(), inequalities: Vec::new() }
    }

    /// The canonical empty polyhedron `{0 ≥ 1}`.
    pub fn empty(dim: usize) -> Self {
        Self { dim, equalities: Vec::new(), inequalities: vec![Constraint { a: vec![BigInt::zero(); dim], b: BigInt::one() }] }
    }

    pub fn from_constraints(dim: usize, eqs: &[Row], ineqs: &[Row]) -> Result<Self> {
        let mut p = Self::universe(dim);
        for (a, b) in eqs {
            p.push_equality(a, b)?;
        }
        for (a, b) in ineqs {
            p.push_inequality(a, b)?;
        }
        Ok(p.normalized())
    }

    /// The single point `{p}`.
    pub fn point(p: &[Rational]) -> Self {
        let n = p.len();
        let eqs: Vec<Row> = (0..n)
            .map(|i| {
                let mut a = vec![Rational::zero(); n];
                a[i] = Rational::one();
                (a, p[i].clone())
            })
            .collect();
        Self::from_constraints(n, &eqs, &[]).expect("dimensions agree")
    }

    fn check_len(&self, a: &[Rational]) -> Result<()> {
        if a.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: a.len() });
        }
        Ok(())
    }

    fn push_equality(&mut self, a: &[Rational], b: &Rational) -> Result<()> {
        self.check_len(a)?;
        self.equalities.push(Constraint::from_rational(a, b).oriented());
        Ok(())
    }

    fn push_inequality(&mut self, a: &[Rational], b: &Rational) -> Result<()> {
        self.check_len(a)?;
        self.inequalities.push(Constraint::from_rational(a, b));
        Ok(())
    }

    /// Adds `a·x = b`.
    pub fn with_equality(mut self, a: &[Rational], b: &Rational) -> Result<Self> {
        self.push_equality(a, b)?;
        Ok(self.normalized())
    }

    /// Adds `a·x ≥ b`.
    pub fn with_inequality(mut self, a: &[Rational], b: &Rational) -> Result<Self> {
        self.push_inequality(a, b)?;
        Ok(self.normalized())
    }

    /// Drops trivially true rows, collapses trivially false ones to the
    /// canonical empty form, and sorts and deduplicates.
    fn normalized(mut self) -> Self {
        let mut contradiction = false;
        self.equalities.retain(|c| {
            if c.is_trivial_lhs() {
                contradiction |= !c.b.is_zero();
                false
            } else {
                true
            }
        });
        self.inequalities.retain(|c| {
            if c.is_trivial_lhs() {
                contradiction |= c.b.is_positive();
                false
            } else {
                true
            }
        });
        if contradiction {
            return Self::empty(self.dim);
        }
        self.equalities.sort();
        self.equalities.dedup();
        self.inequalities.sort();
        self.inequalities.dedup();
        self
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn equalities(&self) -> &[Constraint] {
        &self.equalities
    }

    pub fn inequalities(&self) -> &[Constraint] {
        &self.inequalities
    }

    fn rows(&self) -> (Vec<Row>, Vec<Row>) {
        (
            self.equalities.iter().map(Constraint::rational).collect(),
            self.inequalities.iter().map(Constraint::rational).collect(),
        )
    }

    pub fn contains_point(&self, x: &[Rational]) -> bool {
        x.len() == self.dim
            && self.equalities.iter().all(|c| c.value(x) == Rational::from_integer(c.b.clone()))
            && self.inequalities.iter().all(|c| c.value(x) >= Rational::from_integer(c.b.clone()))
    }

    pub fn is_empty(&self) -> bool {
        let (eqs, ineqs) = self.rows();
        feasible_point(self.dim, &eqs, &ineqs).is_none()
    }

    fn analyze(&self) -> Option<Analysis> {
        let (eqs, ineqs) = self.rows();
        let first = feasible_point(self.dim, &eqs, &ineqs)?;
        let m = ineqs.len();
        let mut status: Vec<Option<bool>> = vec![None; m];
        let mut witnesses: Vec<Vec<Rational>> = Vec::new();
        let mark = |x: &[Rational], status: &mut Vec<Option<bool>>| {
            let mut fresh = false;
            for (k, (a, b)) in ineqs.iter().enumerate() {
                if status[k].is_none() && &dot(a, x) > b {
                    status[k] = Some(false);
                    fresh = true;
                }
            }
            fresh
        };
        if mark(&first, &mut status) {
            witnesses.push(first.clone());
        }
        for k in 0..m {
            if status[k].is_some() {
                continue;
            }
            // maximize a·x subject to P and a·x ≤ b + 1
            let (a, b) = &ineqs[k];
            let mut extra = ineqs.clone();
            extra.push((a.iter().map(|x| -x).collect(), -(b + Rational::one())));
            let neg: Vec<Rational> = a.iter().map(|x| -x).collect();
            match minimize(&neg, &eqs, &extra) {
                LpOutcome::Optimal { point, value } => {
                    if -value > *b {
                        mark(&point, &mut status);
                        witnesses.push(point);
                    } else {
                        status[k] = Some(true);
                    }
                }
                _ => unreachable!("feasible bounded auxiliary problem"),
            }
        }
        let implicit: Vec<bool> = status.iter().map(|s| s.unwrap_or(true)).collect();
        let point = if witnesses.is_empty() {
            first
        } else {
            let k = Rational::from_integer(BigInt::from(witnesses.len()));
            let mut p = vec![Rational::zero(); self.dim];
            for w in &witnesses {
                for (x, y) in p.iter_mut().zip(w) {
                    *x += y;
                }
            }
            p.into_iter().map(|x| x / &k).collect()
        };
        let mut hull_rows: Vec<Vec<Rational>> = eqs.iter().map(|(a, _)| a.clone()).collect();
        hull_rows.extend(ineqs.iter().zip(&implicit).filter(|(_, &i)| i).map(|((a, _), _)| a.clone()));
        let basis = null_space(&hull_rows, self.dim);
        Some(Analysis { implicit, hull: Hull { dim: basis.len(), basis, point } })
    }

    /// Dimension, affine-hull direction basis and a relative-interior point;
    /// `None` for the empty set.
    pub fn dimension_and_hull(&self) -> Option<Hull> {
        self.analyze().map(|a| a.hull)
    }

    /// Dimension, with `-1` for the empty set.
    pub fn dimension(&self) -> isize {
        self.dimension_and_hull().map_or(-1, |h| h.dim as isize)
    }

    /// A point satisfying every non-implicit inequality strictly.
    pub fn relative_interior_point(&self) -> Result<Vec<Rational>> {
        self.dimension_and_hull().map(|h| h.point).ok_or(Error::EmptyPolyhedron)
    }

    /// `dim(P + Q)`: rank of the union of both direction spaces.
    pub fn sum_dimension(&self, other: &Self) -> Result<usize> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        let a = self.dimension_and_hull().ok_or(Error::EmptyPolyhedron)?;
        let b = other.dimension_and_hull().ok_or(Error::EmptyPolyhedron)?;
        let mut all = a.basis;
        all.extend(b.basis);
        Ok(rank(&all, self.dim))
    }

    /// Concatenation of both constraint lists.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        let mut p = self.clone();
        p.equalities.extend(other.equalities.iter().cloned());
        p.inequalities.extend(other.inequalities.iter().cloned());
        Ok(p.normalized())
    }

    /// Unique representation of the underlying set: implicit equalities made
    /// explicit and brought to reduced echelon form, inequalities reduced
    /// modulo the equalities, and redundant inequalities removed.
    pub fn canonical(&self) -> Self {
        let Some(analysis) = self.analyze() else {
            return Self::empty(self.dim);
        };
        let (eqs, ineqs) = self.rows();
        let mut eq_rows: Vec<Vec<Rational>> = eqs
            .iter()
            .chain(ineqs.iter().zip(&analysis.implicit).filter(|(_, &i)| i).map(|(r, _)| r))
            .map(|(a, b)| {
                let mut r = a.clone();
                r.push(b.clone());
                r
            })
            .collect();
        let pivots = rref(&mut eq_rows, self.dim);
        let reduce = |(a, b): &Row| -> Row {
            let mut a = a.clone();
            let mut b = b.clone();
            for (row, &p) in eq_rows.iter().zip(&pivots) {
                if a[p].is_zero() {
                    continue;
                }
                let f = a[p].clone();
                for (x, y) in a.iter_mut().zip(row) {
                    *x -= &f * y;
                }
                b -= &f * &row[self.dim];
            }
            (a, b)
        };
        let mut kept: Vec<Row> = Vec::new();
        let mut seen = BTreeSet::new();
        for (r, _) in ineqs.iter().zip(&analysis.implicit).filter(|(_, &i)| !i) {
            let (a, b) = reduce(r);
            if a.iter().all(Zero::is_zero) {
                continue;
            }
            let c = Constraint::from_rational(&a, &b);
            if seen.insert(c.clone()) {
                kept.push(c.rational());
            }
        }
        let eq_final: Vec<Row> = eq_rows.iter().map(|r| (r[..self.dim].to_vec(), r[self.dim].clone())).collect();
        // sorted so that the survivor among redundant rows is deterministic
        kept.sort_by(|x, y| Constraint::from_rational(&x.0, &x.1).cmp(&Constraint::from_rational(&y.0, &y.1)));
        let mut k = 0;
        while k < kept.len() {
            let (a, b) = kept[k].clone();
            let others: Vec<Row> = kept.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, r)| r.clone()).collect();
            let redundant = match minimize(&a, &eq_final, &others) {
                LpOutcome::Optimal { value, .. } => value >= b,
                _ => false,
            };
            if redundant {
                kept.remove(k);
            } else {
                k += 1;
            }
        }
        let mut p = Self::universe(self.dim);
        for (a, b) in &eq_final {
            p.equalities.push(Constraint::from_rational(a, b).oriented());
        }
        for (a, b) in &kept {
            p.inequalities.push(Constraint::from_rational(a, b));
        }
        p.normalized()
    }

    /// Whether `inner ⊆ self`, decided by one or two LPs per constraint.
    pub fn contains(&self, inner: &Self) -> Result<bool> {
        if self.dim != inner.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: inner.dim });
        }
        let (eqs, ineqs) = inner.rows();
        if feasible_point(self.dim, &eqs, &ineqs).is_none() {
            return Ok(true);
        }
        let bounded_below = |a: &[Rational], b: &Rational| match minimize(a, &eqs, &ineqs) {
            LpOutcome::Optimal { value, .. } => value >= *b,
            _ => false,
        };
        for c in &self.inequalities {
            let (a, b) = c.rational();
            if !bounded_below(&a, &b) {
                return Ok(false);
            }
        }
        for c in &self.equalities {
            let (a, b) = c.rational();
            let na: Vec<Rational> = a.iter().map(|x| -x).collect();
            if !bounded_below(&a, &b) || !bounded_below(&na, &-b) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Debug for HPolyhedron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |f: &mut fmt::Formatter<'_>, c: &Constraint, op: &str| -> fmt::Result {
            f.write_str("[")?;
            for (i, x) in c.a.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "] {op} {}", c.b)
        };
        f.write_str("{")?;
        let mut first = true;
        for c in &self.equalities {
            if !first {
                f.write_str(", ")?;
            }
            show(f, c, "=")?;
            first = false;
        }
        for c in &self.inequalities {
            if !first {
                f.write_str(", ")?;
            }
            show(f, c, ">=")?;
            first = false;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{rat, rat_vec};

    fn poly(n: usize, eqs: &[(&[i64], i64)], ineqs: &[(&[i64], i64)]) -> HPolyhedron {
        let conv = |rows: &[(&[i64], i64)]| rows.iter().map(|(a, b)| (rat_vec(a), rat(*b))).collect::<Vec<_>>();
        HPolyhedron::from_constraints(n, &conv(eqs), &conv(ineqs)).unwrap()
    }

    #[test]
    fn emptiness() {
        assert!(poly(1, &[], &[(&[1], 1), (&[-1], 0)]).is_empty());
        assert!(!poly(2, &[(&[1, 0], 1), (&[0, 1], 0)], &[]).is_empty());
        // the pair-cell {w_y = 1, w_x ≥ 0} meets {w_x = 0, w_y ≤ 0} nowhere
        let cell = poly(2, &[(&[0, 1], 1)], &[(&[1, 0], 0)]);
        let probe = poly(2, &[(&[1, 0], 0)], &[(&[0, -1], 0)]);
        assert!(cell.intersect(&probe).unwrap().is_empty());
    }

    #[test]
    fn hull_of_point_and_ray() {
        let pt = poly(2, &[(&[1, 0], 0), (&[0, 1], 1)], &[]);
        let h = pt.dimension_and_hull().unwrap();
        assert_eq!((h.dim, h.basis.len(), h.point), (0, 0, rat_vec(&[0, 1])));

        let ray = poly(2, &[(&[1, 0], 0)], &[(&[0, 1], 1)]);
        let h = ray.dimension_and_hull().unwrap();
        assert_eq!(h.dim, 1);
        assert_eq!(h.basis, vec![rat_vec(&[0, 1])]);
        assert!(h.point[0].is_zero() && h.point[1] > rat(1));
    }

    #[test]
    fn interior_point_is_strict() {
        let seg = poly(1, &[], &[(&[1], 0), (&[-1], -2)]);
        let p = seg.relative_interior_point().unwrap();
        assert!(p[0] > rat(0) && p[0] < rat(2));
        assert_eq!(poly(1, &[], &[(&[1], 1), (&[-1], 0)]).relative_interior_point(), Err(Error::EmptyPolyhedron));
    }

    #[test]
    fn sum_dimensions() {
        let origin = HPolyhedron::point(&rat_vec(&[0, 0]));
        assert_eq!(origin.sum_dimension(&origin).unwrap(), 0);
        let lx = poly(2, &[(&[0, 1], 0)], &[]);
        let ly = poly(2, &[(&[1, 0], 0)], &[]);
        assert_eq!(lx.sum_dimension(&ly).unwrap(), 2);
        let cone = poly(3, &[(&[0, 0, 1], 0)], &[(&[1, 0, 0], 0), (&[0, 1, 0], 0)]);
        let plane = poly(3, &[(&[1, 0, 0], 1)], &[]);
        assert_eq!(cone.sum_dimension(&plane).unwrap(), 3);
    }

    #[test]
    fn intersections_normalize() {
        let p = poly(1, &[], &[(&[1], 0)]);
        let q = poly(1, &[], &[(&[-1], 0)]);
        assert_eq!(p.intersect(&q).unwrap().canonical(), poly(1, &[(&[1], 0)], &[]));
        assert_eq!(p.intersect(&HPolyhedron::universe(1)).unwrap(), p);
        // tripod ray {w_x = w_y ≤ 0} meets {w_x = 0} at the origin
        let ray = poly(2, &[(&[1, -1], 0)], &[(&[-1, 0], 0)]);
        let line = poly(2, &[(&[1, 0], 0)], &[]);
        assert_eq!(ray.intersect(&line).unwrap().canonical(), HPolyhedron::point(&rat_vec(&[0, 0])));
    }

    #[test]
    fn canonical_forms_agree() {
        let a = poly(2, &[], &[(&[1, 0], 0), (&[0, 1], 0), (&[1, 1], -5), (&[2, 0], -3)]);
        let b = poly(2, &[], &[(&[0, 3], 0), (&[4, 0], 0)]);
        assert_eq!(a.canonical(), b.canonical());
        assert!(a.contains(&b).unwrap() && b.contains(&a).unwrap());
        let empty1 = poly(1, &[], &[(&[1], 3), (&[-1], 0)]);
        assert_eq!(empty1.canonical(), HPolyhedron::empty(1));
    }
}
