//! The system-file format.
//!
//! ```text
//! # comment
//! vars: x, y
//! params: d1=1, d2=3/2
//! x + t^(-1)*y + 2
//! (x+1)*(y+1)
//! ```
//!
//! Polynomials are built from `+ - * ^ ( )`, integer and `p/q` literals,
//! declared variables, parameters and the valued atom `t`. `^` binds tighter
//! than `*`, which binds tighter than `+` and `-`. Exponents of variables are
//! integers; only `t` takes rational exponents.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use tropdef_core::algebra::{Exponent, LaurentPolynomial, PolynomialSystem, ValuedCoefficient, Variables};
use tropdef_core::num::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, (usize, String)> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        if ch.is_whitespace() {
            i += 1;
        } else if ch.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((start, Tok::Num(s.parse().expect("digits"))));
        } else if ch.is_alphabetic() || ch == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((start, Tok::Ident(chars[start..i].iter().collect())));
        } else if "+-*^()/".contains(ch) {
            out.push((i, Tok::Op(ch)));
            i += 1;
        } else {
            return Err((i, format!("unexpected character '{ch}'")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    vars: &'a Variables,
    params: &'a BTreeMap<String, Rational>,
}

type PResult<T> = Result<T, (usize, String)>;

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn at(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(c, _)| *c)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, op: char) -> PResult<()> {
        if self.eat(op) {
            Ok(())
        } else {
            Err((self.at(), format!("expected '{op}'")))
        }
    }

    fn constant(&self, c: ValuedCoefficient) -> LaurentPolynomial {
        LaurentPolynomial::constant(self.vars, c)
    }

    fn mul(&self, a: &LaurentPolynomial, b: &LaurentPolynomial, at: usize) -> PResult<LaurentPolynomial> {
        a.checked_mul(b).map_err(|e| (at, e.to_string()))
    }

    fn expr(&mut self) -> PResult<LaurentPolynomial> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> PResult<LaurentPolynomial> {
        let mut acc = self.unary()?;
        loop {
            let at = self.at();
            if self.eat('*') {
                let rhs = self.unary()?;
                acc = self.mul(&acc, &rhs, at)?;
            } else if self.peek() == Some(&Tok::Op('/')) {
                return Err((at, "division is only allowed inside rational literals".into()));
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> PResult<LaurentPolynomial> {
        if self.eat('-') {
            Ok(-&self.unary()?)
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn integer(&mut self) -> PResult<BigInt> {
        let at = self.at();
        let neg = self.eat('-');
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(if neg { -n } else { n })
            }
            _ => Err((at, "expected an integer".into())),
        }
    }

    /// `k`, `(k)`, `(-k)` or `(p/q)`.
    fn exponent(&mut self) -> PResult<Rational> {
        let at = self.at();
        if self.eat('(') {
            let p = self.integer()?;
            let q = if self.eat('/') { self.integer()? } else { BigInt::one() };
            self.expect(')')?;
            if q.is_zero() {
                return Err((at, "zero denominator in exponent".into()));
            }
            Ok(Rational::new(p, q))
        } else {
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    Ok(Rational::from_integer(n))
                }
                _ => Err((at, "malformed exponent".into())),
            }
        }
    }

    fn power(&mut self) -> PResult<LaurentPolynomial> {
        let at = self.at();
        match self.peek().cloned() {
            Some(Tok::Ident(name)) if name == "t" => {
                self.pos += 1;
                let q = if self.eat('^') { self.exponent()? } else { Rational::one() };
                Ok(self.constant(ValuedCoefficient::t_power(q)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let base = if let Some(i) = self.vars.index_of(&name) {
                    Base::Var(i)
                } else if let Some(v) = self.params.get(&name) {
                    Base::Poly(self.constant(ValuedCoefficient::from_rational(v.clone())))
                } else {
                    return Err((at, format!("undeclared identifier '{name}'")));
                };
                self.finish_power(base, at)
            }
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let mut value = Rational::from_integer(n);
                if self.peek() == Some(&Tok::Op('/')) {
                    if let Some((_, Tok::Num(d))) = self.toks.get(self.pos + 1).cloned() {
                        self.pos += 2;
                        if d.is_zero() {
                            return Err((at, "zero denominator".into()));
                        }
                        value /= Rational::from_integer(d);
                    }
                }
                self.finish_power(Base::Poly(self.constant(ValuedCoefficient::from_rational(value))), at)
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(')')?;
                self.finish_power(Base::Poly(inner), at)
            }
            _ => Err((at, "expected a term".into())),
        }
    }

    fn finish_power(&mut self, base: Base, at: usize) -> PResult<LaurentPolynomial> {
        let k = if self.eat('^') {
            let q = self.exponent()?;
            if !q.is_integer() {
                return Err((at, "only t takes rational exponents".into()));
            }
            q.to_integer().to_i64().ok_or((at, "exponent out of range".to_string()))?
        } else {
            1
        };
        match base {
            Base::Var(i) => {
                let mut e = Exponent::zero(self.vars.len());
                e.0[i] = k;
                Ok(LaurentPolynomial::monomial(self.vars, e, ValuedCoefficient::one()))
            }
            Base::Poly(p) => {
                if k < 0 {
                    if p.is_monomial() {
                        let (e, c) = p.terms().next().expect("monomial");
                        let c = c.inverse().expect("nonzero");
                        let e = Exponent(e.0.iter().map(|x| -x).collect());
                        let inv = LaurentPolynomial::monomial(self.vars, e, c);
                        return inv.pow(k.unsigned_abs() as u32).map_err(|e| (at, e.to_string()));
                    }
                    return Err((at, "negative powers are only allowed for monomials".into()));
                }
                p.pow(u32::try_from(k).map_err(|_| (at, "exponent out of range".to_string()))?)
                    .map_err(|e| (at, e.to_string()))
            }
        }
    }
}

enum Base {
    Var(usize),
    Poly(LaurentPolynomial),
}

/// Parses one polynomial over `vars`.
pub fn parse_polynomial(
    src: &str,
    vars: &Variables,
    params: &BTreeMap<String, Rational>,
) -> Result<LaurentPolynomial, (usize, String)> {
    let toks = tokenize(src)?;
    let mut p = Parser { toks, pos: 0, end: src.chars().count(), vars, params };
    let out = p.expr()?;
    if p.pos < p.toks.len() {
        return Err((p.at(), "unexpected trailing input".into()));
    }
    Ok(out)
}

/// Parses a coefficient such as `3`, `-1/2`, `t^(-1)` or `2*t^3 - 1`.
pub fn parse_coefficient(src: &str) -> Result<ValuedCoefficient, String> {
    let vars = Variables::new::<&str>(&[]);
    let p = parse_polynomial(src, &vars, &BTreeMap::new()).map_err(|(c, m)| format!("column {}: {m}", c + 1))?;
    let c = p.terms().next().map(|(_, c)| c.clone());
    Ok(c.unwrap_or_else(ValuedCoefficient::zero))
}

/// Parses a rational `p` or `p/q`.
pub fn parse_rational(src: &str) -> Result<Rational, String> {
    let s = src.trim();
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: BigInt = p.parse().map_err(|_| format!("malformed rational '{src}'"))?;
    let q: BigInt = q.parse().map_err(|_| format!("malformed rational '{src}'"))?;
    if q.is_zero() {
        return Err(format!("zero denominator in '{src}'"));
    }
    Ok(Rational::new(p, q))
}

pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(a, _)| a).trim()
}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_alphabetic() || c == '_') && chars.all(|c| c.is_alphanumeric() || c == '_')
}

/// Parses a whole system file.
pub fn parse_system(text: &str) -> Result<PolynomialSystem, ParseError> {
    let err = |line: usize, column: usize, message: String| ParseError { line, column, message };
    let mut vars: Option<Variables> = None;
    let mut params: BTreeMap<String, Rational> = BTreeMap::new();
    let mut gens = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let offset = raw.len() - raw.trim_start().len();
        if let Some(rest) = line.strip_prefix("vars:") {
            if vars.is_some() {
                return Err(err(line_no, 1, "duplicate vars header".into()));
            }
            let names: Vec<&str> = rest.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
            for n in &names {
                if !valid_name(n) || *n == "t" {
                    return Err(err(line_no, 1, format!("invalid variable name '{n}'")));
                }
            }
            let mut sorted = names.clone();
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(err(line_no, 1, "duplicate variable name".into()));
            }
            vars = Some(Variables::new(&names));
            continue;
        }
        if let Some(rest) = line.strip_prefix("params:") {
            for item in rest.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                let (name, value) =
                    item.split_once('=').ok_or_else(|| err(line_no, 1, format!("expected name=value in '{item}'")))?;
                let name = name.trim();
                if !valid_name(name) || name == "t" {
                    return Err(err(line_no, 1, format!("invalid parameter name '{name}'")));
                }
                let value = parse_rational(value).map_err(|m| err(line_no, 1, m))?;
                params.insert(name.to_string(), value);
            }
            continue;
        }
        let Some(v) = vars.as_ref() else {
            return Err(err(line_no, 1, "polynomial before the vars header".into()));
        };
        if let Some(clash) = v.names().iter().find(|n| params.contains_key(*n)) {
            return Err(err(line_no, 1, format!("'{clash}' is both a variable and a parameter")));
        }
        let p = parse_polynomial(line, v, &params).map_err(|(c, m)| err(line_no, offset + c + 1, m))?;
        gens.push(p);
    }
    let vars = vars.ok_or_else(|| err(1, 1, "missing vars header".into()))?;
    PolynomialSystem::new(&vars, gens).map_err(|e| err(1, 1, e.to_string()))
}

/// Multiplies out coefficient denominators so every coefficient is a `t`-sum.
fn integral(p: &LaurentPolynomial) -> LaurentPolynomial {
    let mut out = p.clone();
    loop {
        let Some((_, c)) = out.terms().find(|(_, c)| !c.is_tsum()) else { return out };
        let den = ValuedCoefficient::from_parts(
            c.denominator_terms().map(|(e, x)| (e.clone(), x.clone())),
            [(Rational::zero(), Rational::one())],
        )
        .expect("denominator is nonzero");
        out = out.scale(&den);
    }
}

/// Writes a system in the format read by [`parse_system`]. Generators with
/// non-polynomial coefficients in `t` are multiplied by their denominators,
/// which does not change the ideal.
pub fn serialize_system(system: &PolynomialSystem) -> String {
    let mut out = format!("vars: {}\n", system.vars().names().join(", "));
    for g in system.generators() {
        out.push_str(&integral(g).to_string());
        out.push('\n');
    }
    out
}

/// Parses a comma-separated list of rationals.
pub fn parse_rational_list(src: &str) -> Result<Vec<Rational>, String> {
    src.split(',').map(str::trim).filter(|s| !s.is_empty()).map(parse_rational).collect()
}

/// Parses a comma-separated list of coefficients, rejecting zero.
pub fn parse_coefficient_list(src: &str) -> Result<Vec<ValuedCoefficient>, String> {
    src.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            let c = parse_coefficient(s)?;
            if c.is_zero() {
                Err(format!("coefficient '{s}' is zero"))
            } else {
                Ok(c)
            }
        })
        .collect()
}
