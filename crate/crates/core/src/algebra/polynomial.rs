//! Laurent polynomials with valued coefficients and their initial forms.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::Signed;
use sha2::{Digest, Sha256};

use super::coefficient::ValuedCoefficient;
use super::weight::{DefectTuple, WeightVector};
use crate::error::{Error, Result};
use crate::num::{dot_int, Rational};

/// Ordered list of variable names shared by all polynomials of a system.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Variables(Arc<[String]>);

impl Variables {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        Self(names.iter().map(|s| s.as_ref().to_string()).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|v| v == name)
    }

    /// Appends a fresh variable whose name does not clash with existing ones.
    pub fn extended(&self, base: &str) -> (Self, usize) {
        let mut name = String::from(base);
        while self.index_of(&name).is_some() {
            name.push('_');
        }
        let mut names: Vec<String> = self.0.to_vec();
        names.push(name);
        let idx = names.len() - 1;
        (Self(names.into()), idx)
    }
}

impl fmt::Debug for Variables {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

/// Integer exponent vector of a Laurent monomial.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Exponent(pub Vec<i64>);

impl Exponent {
    pub fn zero(n: usize) -> Self {
        Self(alloc::vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut e = Self::zero(n);
        e.0[i] = 1;
        e
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::ExponentOverflow))
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b).ok_or(Error::ExponentOverflow))
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }
}

/// A Laurent polynomial `Σ c_α x^α` over [`ValuedCoefficient`]s.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPolynomial {
    vars: Variables,
    terms: BTreeMap<Exponent, ValuedCoefficient>,
}

impl LaurentPolynomial {
    pub fn zero(vars: &Variables) -> Self {
        Self { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &Variables, c: ValuedCoefficient) -> Self {
        Self::monomial(vars, Exponent::zero(vars.len()), c)
    }

    pub fn variable(vars: &Variables, i: usize) -> Self {
        Self::monomial(vars, Exponent::unit(vars.len(), i), ValuedCoefficient::one())
    }

    pub fn monomial(vars: &Variables, exp: Exponent, c: ValuedCoefficient) -> Self {
        assert_eq!(exp.len(), vars.len(), "exponent length must match the variable count");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { vars: vars.clone(), terms }
    }

    /// Sums up the given terms, merging equal exponents.
    pub fn from_terms(
        vars: &Variables,
        terms: impl IntoIterator<Item = (Exponent, ValuedCoefficient)>,
    ) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Exponent, c: ValuedCoefficient) {
        use alloc::collections::btree_map::Entry;
        debug_assert_eq!(e.len(), self.vars.len());
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn vars(&self) -> &Variables {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &ValuedCoefficient)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &Exponent) -> Option<&ValuedCoefficient> {
        self.terms.get(e)
    }

    pub fn support(&self) -> Vec<Exponent> {
        self.terms.keys().cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn is_trivially_valued(&self) -> bool {
        self.terms.values().all(ValuedCoefficient::is_trivially_valued)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Exponent::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().map(Exponent::degree).max()
    }

    pub fn with_vars(&self, vars: &Variables) -> Result<Self> {
        if vars.len() != self.vars.len() {
            return Err(Error::DimensionMismatch { expected: vars.len(), found: self.vars.len() });
        }
        Ok(Self { vars: vars.clone(), terms: self.terms.clone() })
    }

    pub fn scale(&self, c: &ValuedCoefficient) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        Self { vars: self.vars.clone(), terms: self.terms.iter().map(|(e, d)| (e.clone(), d * c)).collect() }
    }

    /// Multiplies by the monomial `x^shift`.
    pub fn shift(&self, shift: &Exponent) -> Result<Self> {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| Ok((e.checked_add(shift)?, c.clone())))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(Self { vars: self.vars.clone(), terms })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.vars != other.vars {
            return Err(Error::VariableMismatch);
        }
        let mut out = Self::zero(&self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.checked_add(eb)?, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut acc = Self::constant(&self.vars, ValuedCoefficient::one());
        for _ in 0..k {
            acc = acc.checked_mul(self)?;
        }
        Ok(acc)
    }

    /// Tropical scores `w·α + ν(c_α)` of all terms.
    pub fn scores(&self, w: &WeightVector) -> Result<Vec<(&Exponent, Rational)>> {
        self.check_weight(w)?;
        Ok(self
            .terms
            .iter()
            .map(|(e, c)| (e, dot_int(w.as_slice(), &e.0) + c.valuation().expect("nonzero coefficient")))
            .collect())
    }

    fn check_weight(&self, w: &WeightVector) -> Result<()> {
        if w.len() != self.vars.len() {
            return Err(Error::DimensionMismatch { expected: self.vars.len(), found: w.len() });
        }
        Ok(())
    }

    fn residue_poly<'a>(&self, exps: impl IntoIterator<Item = &'a Exponent>) -> Self {
        let terms = exps
            .into_iter()
            .map(|e| (e.clone(), ValuedCoefficient::from_rational(self.terms[e].residue())))
            .collect();
        Self { vars: self.vars.clone(), terms }
    }

    /// The initial form with respect to `w` (min-convention), over the
    /// residue field.
    pub fn initial_form(&self, w: &WeightVector) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let scores = self.scores(w)?;
        let min = scores.iter().map(|(_, s)| s).min().unwrap().clone();
        Ok(self.residue_poly(scores.iter().filter(|(_, s)| *s == min).map(|(e, _)| *e)))
    }

    /// `in_{w_k} ⋯ in_{w_0}(f)`, computed as the lexicographic argmin of the
    /// score tuples `(w_0·α + ν(c_α), w_1·α, …, w_k·α)`.
    pub fn nested_initial_form(&self, tuple: &DefectTuple) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let entries = tuple.entries();
        let first = entries.first().ok_or(Error::EmptyTuple)?;
        let mut alive: Vec<(&Exponent, Rational)> = self.scores(first)?;
        for (i, w) in entries.iter().enumerate() {
            if i > 0 {
                self.check_weight(w)?;
                for (e, s) in alive.iter_mut() {
                    *s = dot_int(w.as_slice(), &e.0);
                }
            }
            let min = alive.iter().map(|(_, s)| s).min().unwrap().clone();
            alive.retain(|(_, s)| *s == min);
        }
        Ok(self.residue_poly(alive.iter().map(|(e, _)| *e)))
    }

    /// Whether `w` lies on the tropical hypersurface of `self`.
    pub fn tropically_contains(&self, w: &WeightVector) -> Result<bool> {
        Ok(!self.initial_form(w)?.is_monomial())
    }

    /// Componentwise minimum of all exponents.
    pub fn min_exponent(&self) -> Option<Exponent> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |mut acc, e| {
            for (a, b) in acc.0.iter_mut().zip(&e.0) {
                *a = (*a).min(*b);
            }
            acc
        }))
    }

    /// Divides by the largest monomial so that all exponents are nonnegative
    /// and no variable divides every term.
    pub fn to_polynomial(&self) -> Result<Self> {
        match self.min_exponent() {
            None => Ok(self.clone()),
            Some(m) => {
                let neg = Exponent(m.0.iter().map(|x| -x).collect());
                self.shift(&neg)
            }
        }
    }

    /// Multiplies by the smallest monomial making all exponents nonnegative;
    /// polynomials are returned unchanged.
    pub fn clear_denominators(&self) -> Result<Self> {
        match self.min_exponent() {
            None => Ok(self.clone()),
            Some(m) => {
                let shift = Exponent(m.0.iter().map(|&x| if x < 0 { -x } else { 0 }).collect());
                self.shift(&shift)
            }
        }
    }

    pub fn map_exponents(&self, vars: &Variables, f: impl Fn(&Exponent) -> Result<Exponent>) -> Result<Self> {
        let mut out = Self::zero(vars);
        for (e, c) in &self.terms {
            out.add_term(f(e)?, c.clone());
        }
        Ok(out)
    }

    /// Leading coefficient in the exponent order, used to normalize up to units.
    pub fn last_coefficient(&self) -> Option<&ValuedCoefficient> {
        self.terms.values().next_back()
    }
}

impl fmt::Debug for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn coefficient_is_negative(c: &ValuedCoefficient) -> bool {
    c.is_tsum() && c.numerator_terms().count() == 1 && c.numerator_terms().all(|(_, v)| v.is_negative())
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let negative = coefficient_is_negative(c);
            let mag = if negative { -c } else { c.clone() };
            if i > 0 {
                f.write_str(if negative { " - " } else { " + " })?;
            } else if negative {
                f.write_str("-")?;
            }
            let is_const = e.0.iter().all(|&x| x == 0);
            let mut wrote = false;
            if is_const || !mag.is_one() {
                write!(f, "{mag}")?;
                wrote = true;
            }
            for (name, &k) in self.vars.names().iter().zip(&e.0) {
                if k == 0 {
                    continue;
                }
                if wrote {
                    f.write_str("*")?;
                }
                f.write_str(name)?;
                if k < 0 {
                    write!(f, "^({k})")?;
                } else if k != 1 {
                    write!(f, "^{k}")?;
                }
                wrote = true;
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a LaurentPolynomial> for &'a LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        assert!(self.vars == rhs.vars, "variable lists differ");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a LaurentPolynomial> for &'a LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl<'a> Mul<&'a LaurentPolynomial> for &'a LaurentPolynomial {
    type Output = LaurentPolynomial;
    /// Panics on exponent overflow; see [`LaurentPolynomial::checked_mul`].
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self.checked_mul(rhs).expect("polynomial product")
    }
}

/// A finite generating set `F` over a shared variable list.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolynomialSystem {
    vars: Variables,
    generators: Vec<LaurentPolynomial>,
    homogeneous: bool,
    trivially_valued: bool,
}

impl PolynomialSystem {
    pub fn new(vars: &Variables, generators: Vec<LaurentPolynomial>) -> Result<Self> {
        if generators.iter().any(|g| g.vars() != vars) {
            return Err(Error::VariableMismatch);
        }
        let homogeneous = generators.iter().all(LaurentPolynomial::is_homogeneous);
        let trivially_valued = generators.iter().all(LaurentPolynomial::is_trivially_valued);
        Ok(Self { vars: vars.clone(), generators, homogeneous, trivially_valued })
    }

    pub fn vars(&self) -> &Variables {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn generators(&self) -> &[LaurentPolynomial] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous
    }

    pub fn is_trivially_valued(&self) -> bool {
        self.trivially_valued
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.generators.iter().filter_map(LaurentPolynomial::max_degree).max()
    }

    /// The system with `extra` appended.
    pub fn extended(&self, extra: impl IntoIterator<Item = LaurentPolynomial>) -> Result<Self> {
        let mut gens = self.generators.clone();
        gens.extend(extra);
        Self::new(&self.vars, gens)
    }

    pub fn initial_forms(&self, w: &WeightVector) -> Result<Self> {
        let gens = self.generators.iter().map(|g| g.initial_form(w)).collect::<Result<Vec<_>>>()?;
        Self::new(&self.vars, gens)
    }

    pub fn nested_initial_forms(&self, tuple: &DefectTuple) -> Result<Self> {
        let gens = self.generators.iter().map(|g| g.nested_initial_form(tuple)).collect::<Result<Vec<_>>>()?;
        Self::new(&self.vars, gens)
    }

    /// Whether `w` lies in the tropical prevariety of the generators.
    pub fn tropically_contains(&self, w: &WeightVector) -> Result<bool> {
        for g in &self.generators {
            if !g.tropically_contains(w)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Lowercase hex SHA-256 of the canonical text of the system.
    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        h.update(b"vars:");
        for (i, v) in self.vars.names().iter().enumerate() {
            if i > 0 {
                h.update(b",");
            }
            h.update(v.as_bytes());
        }
        h.update(b"\n");
        for g in &self.generators {
            h.update(g.to_string().as_bytes());
            h.update(b"\n");
        }
        let bytes = h.finalize();
        let mut out = String::with_capacity(64);
        for b in bytes.iter() {
            use core::fmt::Write;
            let _ = write!(out, "{b:02x}");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rat;

    fn xy() -> Variables {
        Variables::new(&["x", "y"])
    }

    pub(crate) fn poly(vars: &Variables, terms: &[(&[i64], ValuedCoefficient)]) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(vars, terms.iter().map(|(e, c)| (Exponent(e.to_vec()), c.clone())))
    }

    fn c(n: i64) -> ValuedCoefficient {
        ValuedCoefficient::from_integer(n)
    }

    #[test]
    fn initial_form_of_line() {
        let v = xy();
        let f = poly(&v, &[(&[1, 0], c(1)), (&[0, 1], c(1)), (&[0, 0], c(1))]);
        let got = f.initial_form(&WeightVector::from_integers(&[0, 2])).unwrap();
        assert_eq!(got, poly(&v, &[(&[1, 0], c(1)), (&[0, 0], c(1))]));
    }

    #[test]
    fn initial_form_valued_monomial() {
        let v = xy();
        let coef = &ValuedCoefficient::t_power(rat(-1)) - &c(1);
        let f = poly(&v, &[(&[0, 1], coef), (&[0, 0], c(1))]);
        let got = f.initial_form(&WeightVector::from_integers(&[0, 2])).unwrap();
        assert!(got.is_monomial());
        assert_eq!(got, poly(&v, &[(&[0, 0], c(1))]));
    }

    #[test]
    fn nested_form_of_valued_line() {
        let v = xy();
        let f = poly(&v, &[(&[1, 0], c(1)), (&[0, 1], ValuedCoefficient::t_power(rat(-1))), (&[0, 0], c(2))]);
        let w = WeightVector::from_integers(&[0, 1]);
        let tuple = DefectTuple::new(alloc::vec![w.clone(), w]).unwrap();
        assert_eq!(f.nested_initial_form(&tuple).unwrap(), poly(&v, &[(&[1, 0], c(1)), (&[0, 0], c(2))]));
    }

    #[test]
    fn nested_form_lexicographic() {
        let v = xy();
        let f = poly(&v, &[(&[1, 0], c(1)), (&[0, 1], c(1)), (&[0, 0], c(1))]);
        let tuple =
            DefectTuple::new(alloc::vec![WeightVector::from_integers(&[0, 0]), WeightVector::from_integers(&[1, 2])])
                .unwrap();
        assert_eq!(f.nested_initial_form(&tuple).unwrap(), poly(&v, &[(&[0, 0], c(1))]));
        let single = DefectTuple::singleton(WeightVector::from_integers(&[3, 1]));
        assert_eq!(
            f.nested_initial_form(&single).unwrap(),
            f.initial_form(&WeightVector::from_integers(&[3, 1])).unwrap()
        );
    }

    #[test]
    fn zero_polynomial_rejected() {
        let v = xy();
        let z = LaurentPolynomial::zero(&v);
        assert_eq!(z.initial_form(&WeightVector::zeros(2)), Err(Error::ZeroPolynomial));
        assert_eq!(DefectTuple::new(Vec::new()), Err(Error::EmptyTuple));
    }

    #[test]
    fn display_is_readable() {
        let v = xy();
        let f = poly(&v, &[(&[1, 0], c(1)), (&[0, 1], ValuedCoefficient::t_power(rat(-1))), (&[0, 0], c(2))]);
        assert_eq!(f.to_string(), "x + t^(-1)*y + 2");
        let g = poly(&v, &[(&[-1, 2], c(-3))]);
        assert_eq!(g.to_string(), "-3*x^(-1)*y^2");
    }
}
