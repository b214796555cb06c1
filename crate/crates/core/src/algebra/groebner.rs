//! Buchberger's algorithm with Gebauer–Möller pair elimination.
//!
//! Generators are moved into the polynomial ring by clearing the smallest
//! monomial factor; the engine then works on sparse polynomials whose terms
//! are kept sorted by the requested [`TermOrder`]. Pairs are selected by the
//! normal strategy (lowest lcm in the term order; for lex this avoids the
//! coefficient growth of degree-first selection) and the result is the
//! reduced, monic basis sorted by leading monomial.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_traits::{One, Zero};

use super::coefficient::ValuedCoefficient;
use super::order::{Tiebreak, TermOrder};
use super::polynomial::{Exponent, LaurentPolynomial, PolynomialSystem, Variables};
use crate::error::{Error, Result};
use crate::num::Rational;

/// Coefficient fields the engine can run over.
pub trait Scalar: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_valued(c: &ValuedCoefficient) -> Option<Self>;
    fn to_valued(&self) -> ValuedCoefficient;
}

impl Scalar for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_valued(c: &ValuedCoefficient) -> Option<Self> {
        c.as_rational()
    }
    fn to_valued(&self) -> ValuedCoefficient {
        ValuedCoefficient::from_rational(self.clone())
    }
}

impl Scalar for ValuedCoefficient {
    fn zero() -> Self {
        ValuedCoefficient::zero()
    }
    fn one() -> Self {
        ValuedCoefficient::one()
    }
    fn is_zero(&self) -> bool {
        ValuedCoefficient::is_zero(self)
    }
    fn is_one(&self) -> bool {
        ValuedCoefficient::is_one(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_valued(c: &ValuedCoefficient) -> Option<Self> {
        Some(c.clone())
    }
    fn to_valued(&self) -> ValuedCoefficient {
        self.clone()
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) struct Mon {
    key: Vec<i128>,
    exps: Vec<u32>,
    mask: u64,
}

pub(crate) struct Ring {
    rows: Vec<Vec<i128>>,
    tiebreak: Tiebreak,
}

fn mask_of(exps: &[u32]) -> u64 {
    let mut m = 0u64;
    for (i, &e) in exps.iter().enumerate() {
        if e != 0 {
            m |= 1u64 << (i % 64);
        }
    }
    m
}

impl Ring {
    pub(crate) fn new(n: usize, order: &TermOrder) -> Result<Self> {
        Ok(Self { rows: order.integer_rows(n)?, tiebreak: order.tiebreak() })
    }

    pub(crate) fn mon(&self, exps: Vec<u32>) -> Mon {
        let key = self
            .rows
            .iter()
            .map(|r| r.iter().zip(&exps).map(|(a, &e)| a * i128::from(e)).sum())
            .collect();
        let mask = mask_of(&exps);
        Mon { key, exps, mask }
    }

    pub(crate) fn cmp(&self, a: &Mon, b: &Mon) -> Ordering {
        match a.key.cmp(&b.key) {
            Ordering::Equal => {}
            o => return o,
        }
        match self.tiebreak {
            Tiebreak::Lex => a.exps.cmp(&b.exps),
            Tiebreak::RevLex => {
                for (x, y) in a.exps.iter().rev().zip(b.exps.iter().rev()) {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }
        }
    }

    fn mul(&self, a: &Mon, b: &Mon) -> Mon {
        Mon {
            key: a.key.iter().zip(&b.key).map(|(x, y)| x + y).collect(),
            exps: a.exps.iter().zip(&b.exps).map(|(x, y)| x + y).collect(),
            mask: a.mask | b.mask,
        }
    }

    fn divides(a: &Mon, b: &Mon) -> bool {
        a.mask & !b.mask == 0 && a.exps.iter().zip(&b.exps).all(|(x, y)| x <= y)
    }

    fn quotient(&self, b: &Mon, a: &Mon) -> Mon {
        Mon {
            key: b.key.iter().zip(&a.key).map(|(x, y)| x - y).collect(),
            exps: b.exps.iter().zip(&a.exps).map(|(x, y)| x - y).collect(),
            mask: 0,
        }
        .with_mask()
    }

    fn lcm(&self, a: &Mon, b: &Mon) -> Mon {
        self.mon(a.exps.iter().zip(&b.exps).map(|(x, y)| *x.max(y)).collect())
    }

    fn coprime(a: &Mon, b: &Mon) -> bool {
        a.exps.iter().zip(&b.exps).all(|(x, y)| *x == 0 || *y == 0)
    }

    pub(crate) fn from_laurent<C: Scalar>(&self, p: &LaurentPolynomial) -> Result<Poly<C>> {
        let mut terms = Vec::with_capacity(p.len());
        for (e, c) in p.terms() {
            let exps = e
                .as_slice()
                .iter()
                .map(|&x| u32::try_from(x).map_err(|_| Error::Unsupported("negative exponent in polynomial ring".into())))
                .collect::<Result<Vec<_>>>()?;
            let c = C::from_valued(c).ok_or(Error::ValuedInput)?;
            terms.push((self.mon(exps), c));
        }
        terms.sort_by(|a, b| self.cmp(&b.0, &a.0));
        Ok(Poly { terms })
    }

    pub(crate) fn to_laurent<C: Scalar>(&self, vars: &Variables, p: &Poly<C>) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(
            vars,
            p.terms.iter().map(|(m, c)| (Exponent(m.exps.iter().map(|&e| i64::from(e)).collect()), c.to_valued())),
        )
    }

    /// `p - c·m·q`, both sorted descending.
    fn sub_mul<C: Scalar>(&self, p: &[(Mon, C)], c: &C, m: &Mon, q: &[(Mon, C)]) -> Vec<(Mon, C)> {
        let mut out = Vec::with_capacity(p.len() + q.len());
        let mut i = 0;
        let mut j = 0;
        let mut shifted: Option<(Mon, C)> = q.first().map(|(qm, qc)| (self.mul(m, qm), qc.mul(c)));
        while i < p.len() || shifted.is_some() {
            let take_p = match (&shifted, p.get(i)) {
                (None, _) => Ordering::Greater,
                (Some(_), None) => Ordering::Less,
                (Some((sm, _)), Some((pm, _))) => self.cmp(pm, sm),
            };
            match take_p {
                Ordering::Greater => {
                    out.push(p[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let (sm, sc) = shifted.take().unwrap();
                    out.push((sm, sc.neg()));
                    j += 1;
                    shifted = q.get(j).map(|(qm, qc)| (self.mul(m, qm), qc.mul(c)));
                }
                Ordering::Equal => {
                    let (sm, sc) = shifted.take().unwrap();
                    let v = p[i].1.sub(&sc);
                    if !v.is_zero() {
                        out.push((sm, v));
                    }
                    i += 1;
                    j += 1;
                    shifted = q.get(j).map(|(qm, qc)| (self.mul(m, qm), qc.mul(c)));
                }
            }
        }
        out
    }

    /// Fully reduces `p` modulo the polynomials in `basis` (any subset may be
    /// given through `active`).
    pub(crate) fn reduce<C: Scalar>(&self, p: Poly<C>, basis: &[Poly<C>], active: &[usize], full: bool) -> Poly<C> {
        let mut rest: Vec<(Mon, C)> = Vec::new();
        let mut cur = p.terms;
        let mut start = 0usize;
        loop {
            if start >= cur.len() {
                break;
            }
            let (lm, lc) = &cur[start];
            let reducer = active.iter().map(|&k| &basis[k]).find(|g| Ring::divides(g.lm(), lm));
            match reducer {
                Some(g) => {
                    let m = self.quotient(lm, g.lm());
                    let c = lc.div(g.lc());
                    cur = self.sub_mul(&cur[start..], &c, &m, &g.terms);
                    start = 0;
                }
                None => {
                    if !full {
                        let mut out = rest;
                        out.extend(cur.drain(start..));
                        return Poly { terms: out };
                    }
                    rest.push(cur[start].clone());
                    start += 1;
                }
            }
        }
        Poly { terms: rest }
    }

    fn spoly<C: Scalar>(&self, f: &Poly<C>, g: &Poly<C>) -> Poly<C> {
        let l = self.lcm(f.lm(), g.lm());
        let mf = self.quotient(&l, f.lm());
        let mg = self.quotient(&l, g.lm());
        let scaled: Vec<(Mon, C)> = f.terms.iter().map(|(m, c)| (self.mul(&mf, m), c.div(f.lc()))).collect();
        let c = C::one().div(g.lc());
        Poly { terms: self.sub_mul(&scaled, &c, &mg, &g.terms) }
    }
}

impl Mon {
    fn with_mask(mut self) -> Self {
        self.mask = mask_of(&self.exps);
        self
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Poly<C> {
    pub(crate) terms: Vec<(Mon, C)>,
}

impl<C: Scalar> Poly<C> {
    fn lm(&self) -> &Mon {
        &self.terms[0].0
    }

    fn lc(&self) -> &C {
        &self.terms[0].1
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn monic(mut self) -> Self {
        if let Some((_, lc)) = self.terms.first() {
            if !lc.is_one() {
                let inv = C::one().div(lc);
                for (_, c) in self.terms.iter_mut() {
                    *c = c.mul(&inv);
                }
            }
        }
        self
    }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Mon,
}

pub(crate) fn buchberger<C: Scalar>(ring: &Ring, input: Vec<Poly<C>>, max_degree: Option<u32>) -> Vec<Poly<C>> {
    let mut polys: Vec<Poly<C>> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let mut input: Vec<Poly<C>> = input.into_iter().filter(|p| !p.is_zero()).collect();
    input.sort_by(|a, b| ring.cmp(a.lm(), b.lm()));
    for p in input {
        let h = ring.reduce(p, &polys, &active, true);
        if h.is_zero() {
            continue;
        }
        polys.push(h.monic());
        update(ring, &polys, &mut active, &mut pairs, polys.len() - 1);
    }

    while !pairs.is_empty() {
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                ring.cmp(&pairs[a].lcm, &pairs[b].lcm)
            })
            .unwrap();
        let pair = pairs.swap_remove(best);
        if max_degree.is_some_and(|d| pair.lcm.exps.iter().sum::<u32>() > d) {
            continue;
        }
        let s = ring.spoly(&polys[pair.i], &polys[pair.j]);
        let h = ring.reduce(s, &polys, &active, false);
        if h.is_zero() {
            continue;
        }
        let h = ring.reduce(h, &polys, &active, true).monic();
        polys.push(h);
        update(ring, &polys, &mut active, &mut pairs, polys.len() - 1);
    }

    let mut basis: Vec<Poly<C>> = active.iter().map(|&k| polys[k].clone()).collect();
    interreduce(ring, &mut basis);
    basis
}

fn update<C: Scalar>(ring: &Ring, polys: &[Poly<C>], active: &mut Vec<usize>, pairs: &mut Vec<Pair>, h: usize) {
    let lh = polys[h].lm().clone();
    let cands: Vec<(usize, Mon, bool)> = active
        .iter()
        .map(|&g| {
            let lg = polys[g].lm();
            (g, ring.lcm(&lh, lg), Ring::coprime(&lh, lg))
        })
        .collect();
    // Chain criterion among the new pairs, keeping one representative per
    // divisibility class; coprime pairs survive this step and are dropped below.
    let mut keep = alloc::vec![true; cands.len()];
    for a in 0..cands.len() {
        if cands[a].2 {
            continue;
        }
        let dominated = (0..cands.len()).any(|b| {
            b != a && (keep[b] || b > a) && Ring::divides(&cands[b].1, &cands[a].1) && {
                // of two pairs with equal lcm keep the later one
                cands[b].1 != cands[a].1 || b > a
            }
        });
        if dominated {
            keep[a] = false;
        }
    }
    pairs.retain(|p| {
        let (li, lj) = (polys[p.i].lm(), polys[p.j].lm());
        !(Ring::divides(&lh, &p.lcm) && ring.lcm(li, &lh) != p.lcm && ring.lcm(&lh, lj) != p.lcm)
    });
    for (k, (g, lcm, coprime)) in cands.into_iter().enumerate() {
        if keep[k] && !coprime {
            pairs.push(Pair { i: g, j: h, lcm });
        }
    }
    active.retain(|&g| !Ring::divides(&lh, polys[g].lm()));
    active.push(h);
}

fn interreduce<C: Scalar>(ring: &Ring, basis: &mut Vec<Poly<C>>) {
    basis.sort_by(|a, b| ring.cmp(a.lm(), b.lm()));
    let mut out: Vec<Poly<C>> = Vec::with_capacity(basis.len());
    let all: Vec<Poly<C>> = core::mem::take(basis);
    for (k, p) in all.iter().enumerate() {
        let others: Vec<usize> = (0..all.len()).filter(|&j| j != k).collect();
        let lead = Poly { terms: alloc::vec![p.terms[0].clone()] };
        let tail = Poly { terms: p.terms[1..].to_vec() };
        let tail = ring.reduce(tail, &all, &others, true);
        let mut terms = lead.terms;
        terms.extend(tail.terms);
        out.push(Poly { terms }.monic());
    }
    *basis = out;
}

fn check_order(system: &PolynomialSystem, order: &TermOrder) -> Result<()> {
    if !system.is_homogeneous() && !order.is_global(system.nvars()) {
        return Err(Error::Unsupported(
            "term order is not a well-order and the input is not homogeneous".into(),
        ));
    }
    Ok(())
}

fn polynomial_generators(system: &PolynomialSystem) -> Result<Vec<LaurentPolynomial>> {
    system.generators().iter().filter(|g| !g.is_zero()).map(LaurentPolynomial::clear_denominators).collect()
}

fn run<C: Scalar>(system: &PolynomialSystem, order: &TermOrder, max_degree: Option<u32>) -> Result<PolynomialSystem> {
    let ring = Ring::new(system.nvars(), order)?;
    let input = polynomial_generators(system)?
        .iter()
        .map(|g| ring.from_laurent::<C>(g))
        .collect::<Result<Vec<_>>>()?;
    let basis = buchberger(&ring, input, max_degree);
    let gens = basis.iter().map(|p| ring.to_laurent(system.vars(), p)).collect();
    PolynomialSystem::new(system.vars(), gens)
}

/// Reduced Gröbner basis of the ideal generated by `system` in the polynomial
/// ring (Laurent generators are first multiplied by a monomial clearing
/// negative exponents).
pub fn groebner_basis(system: &PolynomialSystem, order: &TermOrder) -> Result<PolynomialSystem> {
    check_order(system, order)?;
    if system.is_trivially_valued() {
        run::<Rational>(system, order, None)
    } else {
        run::<ValuedCoefficient>(system, order, None)
    }
}

/// Elements of degree at most `max_degree` of the reduced Gröbner basis of a
/// homogeneous system; only pairs whose lcm has degree at most `max_degree`
/// are processed. Normal forms of polynomials of degree at most
/// `max_degree` agree with those modulo the full basis.
pub fn truncated_groebner_basis(
    system: &PolynomialSystem,
    order: &TermOrder,
    max_degree: u32,
) -> Result<PolynomialSystem> {
    if !system.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let b = if system.is_trivially_valued() {
        run::<Rational>(system, order, Some(max_degree))?
    } else {
        run::<ValuedCoefficient>(system, order, Some(max_degree))?
    };
    let low = b
        .generators()
        .iter()
        .filter(|g| g.max_degree().is_some_and(|d| d <= i64::from(max_degree)))
        .cloned()
        .collect();
    PolynomialSystem::new(system.vars(), low)
}

fn normal_form_with<C: Scalar>(
    f: &LaurentPolynomial,
    basis: &PolynomialSystem,
    order: &TermOrder,
) -> Result<LaurentPolynomial> {
    let ring = Ring::new(basis.nvars(), order)?;
    let gs = basis.generators().iter().map(|g| ring.from_laurent::<C>(g)).collect::<Result<Vec<_>>>()?;
    let idx: Vec<usize> = (0..gs.len()).collect();
    let p = ring.from_laurent::<C>(f)?;
    Ok(ring.to_laurent(basis.vars(), &ring.reduce(p, &gs, &idx, true)))
}

/// Remainder of `f` on division by `basis`; zero iff `f` lies in the
/// polynomial-ring ideal when `basis` is a Gröbner basis for `order`.
pub fn normal_form(f: &LaurentPolynomial, basis: &PolynomialSystem, order: &TermOrder) -> Result<LaurentPolynomial> {
    if f.vars() != basis.vars() {
        return Err(Error::VariableMismatch);
    }
    if f.is_trivially_valued() && basis.is_trivially_valued() {
        normal_form_with::<Rational>(f, basis, order)
    } else {
        normal_form_with::<ValuedCoefficient>(f, basis, order)
    }
}

fn s_pairs_reduce<C: Scalar>(basis: &PolynomialSystem, order: &TermOrder) -> Result<bool> {
    let ring = Ring::new(basis.nvars(), order)?;
    let gs = basis.generators().iter().map(|g| ring.from_laurent::<C>(g)).collect::<Result<Vec<_>>>()?;
    let idx: Vec<usize> = (0..gs.len()).collect();
    for i in 0..gs.len() {
        for j in i + 1..gs.len() {
            let s = ring.spoly(&gs[i], &gs[j]);
            if !ring.reduce(s, &gs, &idx, false).is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Buchberger's criterion: every S-polynomial reduces to zero.
pub fn is_groebner_basis(basis: &PolynomialSystem, order: &TermOrder) -> Result<bool> {
    if basis.is_trivially_valued() {
        s_pairs_reduce::<Rational>(basis, order)
    } else {
        s_pairs_reduce::<ValuedCoefficient>(basis, order)
    }
}

/// Leading exponent of `f` under `order`.
pub fn leading_exponent(f: &LaurentPolynomial, order: &TermOrder) -> Option<Exponent> {
    f.terms()
        .map(|(e, _)| e)
        .max_by(|a, b| order.compare(a.as_slice(), b.as_slice()))
        .cloned()
}
