use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::{One, ToPrimitive};

use super::weight::DefectTuple;
use crate::error::{Error, Result};
use crate::num::{common_denominator, Rational};

/// Final resolver applied when all weight rows tie.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tiebreak {
    /// The last differing exponent decides; the smaller exponent is larger.
    RevLex,
    /// The first differing exponent decides; the larger exponent is larger.
    Lex,
}

/// A monomial order given by weight rows compared max-first, followed by a
/// fixed tiebreak on exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermOrder {
    rows: Vec<Vec<Rational>>,
    tiebreak: Tiebreak,
}

impl TermOrder {
    pub fn new(rows: Vec<Vec<Rational>>, tiebreak: Tiebreak) -> Self {
        Self { rows, tiebreak }
    }

    pub fn lex() -> Self {
        Self::new(Vec::new(), Tiebreak::Lex)
    }

    pub fn grevlex(n: usize) -> Self {
        Self::new(vec![vec![Rational::one(); n]], Tiebreak::RevLex)
    }

    /// `(1⃗, −w_0, …, −w_k, revlex)`: leading terms are those of minimal
    /// min-convention weight, as in a max-convention system.
    pub fn for_tuple(tuple: &DefectTuple) -> Self {
        let n = tuple.ambient_dim();
        let mut rows = vec![vec![Rational::one(); n]];
        rows.extend(tuple.entries().iter().map(|w| w.neg().0));
        Self::new(rows, Tiebreak::RevLex)
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn tiebreak(&self) -> Tiebreak {
        self.tiebreak
    }

    /// Rows scaled to integers, each by a positive factor.
    pub(crate) fn integer_rows(&self, n: usize) -> Result<Vec<Vec<i128>>> {
        self.rows
            .iter()
            .map(|row| {
                if row.len() != n {
                    return Err(Error::DimensionMismatch { expected: n, found: row.len() });
                }
                let d = common_denominator(row);
                row.iter()
                    .map(|x| {
                        (x * &d).to_integer().to_i64().map(i128::from).ok_or(Error::ExponentOverflow)
                    })
                    .collect()
            })
            .collect()
    }

    pub fn compare(&self, a: &[i64], b: &[i64]) -> Ordering {
        for row in &self.rows {
            let sa: Rational = row.iter().zip(a).map(|(r, &x)| r * Rational::from_integer(x.into())).sum();
            let sb: Rational = row.iter().zip(b).map(|(r, &x)| r * Rational::from_integer(x.into())).sum();
            match sa.cmp(&sb) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        tiebreak_cmp(self.tiebreak, a.iter().copied(), b.iter().copied())
    }

    /// Whether every variable is larger than 1, i.e. the order is a well-order
    /// on the nonnegative orthant.
    pub fn is_global(&self, n: usize) -> bool {
        let zero = vec![0i64; n];
        (0..n).all(|i| {
            let mut e = vec![0i64; n];
            e[i] = 1;
            self.compare(&e, &zero) == Ordering::Greater
        })
    }
}

pub(crate) fn tiebreak_cmp<A, B>(tb: Tiebreak, a: A, b: B) -> Ordering
where
    A: DoubleEndedIterator<Item = i64>,
    B: DoubleEndedIterator<Item = i64>,
{
    match tb {
        Tiebreak::Lex => {
            for (x, y) in a.zip(b) {
                if x != y {
                    return x.cmp(&y);
                }
            }
            Ordering::Equal
        }
        Tiebreak::RevLex => {
            for (x, y) in a.rev().zip(b.rev()) {
                if x != y {
                    return y.cmp(&x);
                }
            }
            Ordering::Equal
        }
    }
}
