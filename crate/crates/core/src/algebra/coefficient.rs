//! Scalars carrying a `t`-adic valuation.
//!
//! A [`ValuedCoefficient`] is a quotient of two finite sums `Σ c_q t^q` with
//! rational exponents `q` and rational coefficients `c_q`. The valuation is the
//! difference of the least exponents of numerator and denominator, and the
//! residue is the quotient of the corresponding coefficients.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::num::Rational;

/// Largest `t`-degree (in units of the common exponent denominator) for which
/// numerator and denominator are reduced by a polynomial gcd.
const GCD_DEGREE_LIMIT: usize = 4096;

type TSum = BTreeMap<Rational, Rational>;

#[derive(Clone)]
pub struct ValuedCoefficient {
    num: TSum,
    den: TSum,
}

fn unit_sum() -> TSum {
    let mut s = TSum::new();
    s.insert(Rational::zero(), Rational::one());
    s
}

fn is_unit_sum(s: &TSum) -> bool {
    s.len() == 1 && s.iter().next().is_some_and(|(e, c)| e.is_zero() && c.is_one())
}

fn add_into(acc: &mut TSum, exp: Rational, coef: Rational) {
    use alloc::collections::btree_map::Entry;
    match acc.entry(exp) {
        Entry::Vacant(v) => {
            if !coef.is_zero() {
                v.insert(coef);
            }
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += coef;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

fn sum_mul(a: &TSum, b: &TSum) -> TSum {
    let mut out = TSum::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            add_into(&mut out, ea + eb, ca * cb);
        }
    }
    out
}

fn sum_add(a: &TSum, b: &TSum) -> TSum {
    let mut out = a.clone();
    for (e, c) in b {
        add_into(&mut out, e.clone(), c.clone());
    }
    out
}

fn sum_scale(a: &TSum, shift: &Rational, factor: &Rational) -> TSum {
    a.iter().map(|(e, c)| (e + shift, c * factor)).collect()
}

// Dense univariate polynomials over Q, lowest degree first.
mod upoly {
    use super::*;

    pub fn trim(p: &mut Vec<Rational>) {
        while p.last().is_some_and(Zero::is_zero) {
            p.pop();
        }
    }

    pub fn rem(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let mut r = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        let lead_inv = b[db].recip();
        while r.len() > db {
            let shift = r.len() - 1 - db;
            let f = r.last().unwrap() * &lead_inv;
            for (i, c) in b.iter().enumerate() {
                if !c.is_zero() {
                    r[shift + i] -= &f * c;
                }
            }
            trim(&mut r);
        }
        r
    }

    pub fn div_exact(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let mut r = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        if r.len() <= db {
            return Vec::new();
        }
        let mut q = alloc::vec![Rational::zero(); r.len() - db];
        let lead_inv = b[db].recip();
        while r.len() > db {
            let shift = r.len() - 1 - db;
            let f = r.last().unwrap() * &lead_inv;
            for (i, c) in b.iter().enumerate() {
                if !c.is_zero() {
                    r[shift + i] -= &f * c;
                }
            }
            q[shift] = f;
            trim(&mut r);
        }
        q
    }

    pub fn gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = rem(&x, &y);
            x = y;
            y = r;
        }
        if let Some(lead) = x.last().cloned() {
            for c in x.iter_mut() {
                *c /= &lead;
            }
        }
        x
    }
}

impl ValuedCoefficient {
    pub fn zero() -> Self {
        Self { num: TSum::new(), den: unit_sum() }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(q: Rational) -> Self {
        Self::monomial(q, Rational::zero())
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    /// `t^q`.
    pub fn t_power(q: Rational) -> Self {
        Self::monomial(Rational::one(), q)
    }

    /// `c · t^q`.
    pub fn monomial(c: Rational, q: Rational) -> Self {
        let mut num = TSum::new();
        if !c.is_zero() {
            num.insert(q, c);
        }
        Self { num, den: unit_sum() }
    }

    /// Builds `(Σ num) / (Σ den)` from `(exponent, coefficient)` pairs.
    /// Returns `None` if the denominator is zero.
    pub fn from_parts(
        num: impl IntoIterator<Item = (Rational, Rational)>,
        den: impl IntoIterator<Item = (Rational, Rational)>,
    ) -> Option<Self> {
        let mut n = TSum::new();
        for (e, c) in num {
            add_into(&mut n, e, c);
        }
        let mut d = TSum::new();
        for (e, c) in den {
            add_into(&mut d, e, c);
        }
        if d.is_empty() {
            return None;
        }
        Some(Self::canonical(n, d))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn is_one(&self) -> bool {
        is_unit_sum(&self.num) && is_unit_sum(&self.den)
    }

    /// Least exponent of the numerator minus least exponent of the
    /// denominator; `None` stands for the valuation of zero.
    pub fn valuation(&self) -> Option<Rational> {
        let (n, _) = self.num.iter().next()?;
        let (d, _) = self.den.iter().next().expect("denominator is nonzero");
        Some(n - d)
    }

    /// Ratio of the lowest-order coefficients; zero for zero.
    pub fn residue(&self) -> Rational {
        match (self.num.iter().next(), self.den.iter().next()) {
            (Some((_, n)), Some((_, d))) => n / d,
            _ => Rational::zero(),
        }
    }

    pub fn valuation_and_residue(&self) -> (Option<Rational>, Rational) {
        (self.valuation(), self.residue())
    }

    pub fn is_trivially_valued(&self) -> bool {
        is_unit_sum(&self.den) && self.num.len() == 1 && self.num.keys().next().unwrap().is_zero()
    }

    /// The underlying rational if the element is trivially valued (or zero).
    pub fn as_rational(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        self.is_trivially_valued().then(|| self.num.values().next().unwrap().clone())
    }

    /// Whether the element is a finite `t`-sum (denominator one).
    pub fn is_tsum(&self) -> bool {
        is_unit_sum(&self.den)
    }

    pub fn numerator_terms(&self) -> impl Iterator<Item = (&Rational, &Rational)> {
        self.num.iter()
    }

    pub fn denominator_terms(&self) -> impl Iterator<Item = (&Rational, &Rational)> {
        self.den.iter()
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::canonical(self.den.clone(), self.num.clone()))
    }

    fn canonical(num: TSum, den: TSum) -> Self {
        if num.is_empty() {
            return Self::zero();
        }
        if is_unit_sum(&den) {
            return Self { num, den };
        }
        let (qn, _) = num.iter().next().unwrap();
        let (qd, cd) = den.iter().next().unwrap();
        let shift = qn - qd;
        let qn = qn.clone();
        let qd = qd.clone();
        let cd = cd.clone();
        if den.len() == 1 {
            let inv = cd.recip();
            let num = sum_scale(&num, &-qd, &inv);
            return Self { num, den: unit_sum() };
        }
        let mut n = sum_scale(&num, &-qn, &Rational::one());
        let mut d = sum_scale(&den, &-qd, &Rational::one());
        if let Some((pn, pd, l)) = Self::dense(&n, &d) {
            let g = upoly::gcd(&pn, &pd);
            if g.len() > 1 {
                let pn = upoly::div_exact(&pn, &g);
                let pd = upoly::div_exact(&pd, &g);
                n = Self::sparse(&pn, &l);
                d = Self::sparse(&pd, &l);
            }
        }
        let lead = d.values().next().unwrap().clone();
        let inv = lead.recip();
        let num = sum_scale(&n, &shift, &inv);
        let den = sum_scale(&d, &Rational::zero(), &inv);
        Self { num, den }
    }

    fn dense(n: &TSum, d: &TSum) -> Option<(Vec<Rational>, Vec<Rational>, BigInt)> {
        let l = n.keys().chain(d.keys()).fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
        let index = |e: &Rational| -> Option<usize> {
            let i = (e * &l).to_integer();
            i.to_usize().filter(|&i| i <= GCD_DEGREE_LIMIT)
        };
        let mut pn = Vec::new();
        let mut pd = Vec::new();
        for (p, s) in [(&mut pn, n), (&mut pd, d)] {
            for (e, c) in s {
                let i = index(e)?;
                if p.len() <= i {
                    p.resize(i + 1, Rational::zero());
                }
                p[i] = c.clone();
            }
        }
        Some((pn, pd, l))
    }

    fn sparse(p: &[Rational], l: &BigInt) -> TSum {
        p.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (Rational::new(BigInt::from(i), l.clone()), c.clone()))
            .collect()
    }
}

impl PartialEq for ValuedCoefficient {
    fn eq(&self, other: &Self) -> bool {
        if self.num == other.num && self.den == other.den {
            return true;
        }
        if self.is_zero() || other.is_zero() {
            return false;
        }
        sum_mul(&self.num, &other.den) == sum_mul(&other.num, &self.den)
    }
}

impl Eq for ValuedCoefficient {}

impl fmt::Debug for ValuedCoefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn write_rational_exponent(f: &mut fmt::Formatter<'_>, q: &Rational) -> fmt::Result {
    if q.is_integer() && !q.is_negative() {
        write!(f, "t^{}", q.numer())
    } else if q.is_integer() {
        write!(f, "t^({})", q.numer())
    } else {
        write!(f, "t^({}/{})", q.numer(), q.denom())
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, q: &Rational) -> fmt::Result {
    if q.is_integer() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

fn write_sum(f: &mut fmt::Formatter<'_>, s: &TSum) -> fmt::Result {
    if s.is_empty() {
        return f.write_str("0");
    }
    for (i, (e, c)) in s.iter().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        if i > 0 {
            f.write_str(if neg { " - " } else { " + " })?;
        } else if neg {
            f.write_str("-")?;
        }
        if e.is_zero() {
            write_rational(f, &mag)?;
        } else {
            if !mag.is_one() {
                write_rational(f, &mag)?;
                f.write_str("*")?;
            }
            write_rational_exponent(f, e)?;
        }
    }
    Ok(())
}

impl fmt::Display for ValuedCoefficient {
    /// Writes the value in the system-file syntax when the denominator is one;
    /// general quotients are written as `(num)/(den)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if is_unit_sum(&self.den) {
            if self.num.len() > 1 {
                f.write_str("(")?;
                write_sum(f, &self.num)?;
                f.write_str(")")
            } else {
                write_sum(f, &self.num)
            }
        } else {
            f.write_str("(")?;
            write_sum(f, &self.num)?;
            f.write_str(")/(")?;
            write_sum(f, &self.den)?;
            f.write_str(")")
        }
    }
}

impl<'a> Add<&'a ValuedCoefficient> for &'a ValuedCoefficient {
    type Output = ValuedCoefficient;
    fn add(self, rhs: &ValuedCoefficient) -> ValuedCoefficient {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = sum_add(&self.num, &rhs.num);
            return ValuedCoefficient::canonical(num, self.den.clone());
        }
        let num = sum_add(&sum_mul(&self.num, &rhs.den), &sum_mul(&rhs.num, &self.den));
        ValuedCoefficient::canonical(num, sum_mul(&self.den, &rhs.den))
    }
}

impl<'a> Sub<&'a ValuedCoefficient> for &'a ValuedCoefficient {
    type Output = ValuedCoefficient;
    fn sub(self, rhs: &ValuedCoefficient) -> ValuedCoefficient {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a ValuedCoefficient> for &'a ValuedCoefficient {
    type Output = ValuedCoefficient;
    fn mul(self, rhs: &ValuedCoefficient) -> ValuedCoefficient {
        if self.is_zero() || rhs.is_zero() {
            return ValuedCoefficient::zero();
        }
        let num = sum_mul(&self.num, &rhs.num);
        if is_unit_sum(&self.den) && is_unit_sum(&rhs.den) {
            return ValuedCoefficient { num, den: unit_sum() };
        }
        ValuedCoefficient::canonical(num, sum_mul(&self.den, &rhs.den))
    }
}

impl<'a> Div<&'a ValuedCoefficient> for &'a ValuedCoefficient {
    type Output = ValuedCoefficient;
    /// Panics on division by zero.
    fn div(self, rhs: &ValuedCoefficient) -> ValuedCoefficient {
        let inv = rhs.inverse().expect("division by zero");
        self * &inv
    }
}

impl Neg for &ValuedCoefficient {
    type Output = ValuedCoefficient;
    fn neg(self) -> ValuedCoefficient {
        ValuedCoefficient {
            num: self.num.iter().map(|(e, c)| (e.clone(), -c)).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for ValuedCoefficient {
    type Output = ValuedCoefficient;
    fn neg(self) -> ValuedCoefficient {
        -&self
    }
}

impl From<Rational> for ValuedCoefficient {
    fn from(q: Rational) -> Self {
        Self::from_rational(q)
    }
}

impl From<i64> for ValuedCoefficient {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{rat, ratio};

    #[test]
    fn inverse_power_of_t() {
        let c = ValuedCoefficient::t_power(rat(-1));
        assert_eq!(c.valuation_and_residue(), (Some(rat(-1)), rat(1)));
    }

    #[test]
    fn plain_rational() {
        let c = ValuedCoefficient::from_integer(5);
        assert_eq!(c.valuation_and_residue(), (Some(rat(0)), rat(5)));
        assert!(c.is_trivially_valued());
    }

    #[test]
    fn quotient_of_sums() {
        // (2 t^{1/2} + 3 t^2) / (1 - t)
        let c = ValuedCoefficient::from_parts(
            [(ratio(1, 2), rat(2)), (rat(2), rat(3))],
            [(rat(0), rat(1)), (rat(1), rat(-1))],
        )
        .unwrap();
        assert_eq!(c.valuation_and_residue(), (Some(ratio(1, 2)), rat(2)));
        assert!(!c.is_trivially_valued());
    }

    #[test]
    fn zero_has_infinite_valuation() {
        let z = ValuedCoefficient::zero();
        assert_eq!(z.valuation_and_residue(), (None, rat(0)));
    }

    #[test]
    fn fractions_reduce() {
        // (t^2 - 1)/(t - 1) = t + 1
        let a = ValuedCoefficient::from_parts(
            [(rat(2), rat(1)), (rat(0), rat(-1))],
            [(rat(1), rat(1)), (rat(0), rat(-1))],
        )
        .unwrap();
        let b = ValuedCoefficient::from_parts([(rat(1), rat(1)), (rat(0), rat(1))], [(rat(0), rat(1))])
            .unwrap();
        assert_eq!(a, b);
        assert!(a.is_tsum());
    }

    #[test]
    fn field_arithmetic() {
        let tinv = ValuedCoefficient::t_power(rat(-1));
        let one = ValuedCoefficient::one();
        let x = &tinv - &one; // t^{-1} - 1
        let y = &one / &x;
        let back = &y * &x;
        assert!(back.is_one());
        assert_eq!(y.valuation(), Some(rat(1)));
        assert_eq!(y.residue(), rat(1));
    }
}
