use alloc::vec::Vec;
use core::fmt;
use core::ops::Index;

use crate::error::{Error, Result};
use crate::num::Rational;

/// A rational weight vector, read in min-convention.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct WeightVector(pub Vec<Rational>);

impl WeightVector {
    pub fn new(entries: Vec<Rational>) -> Self {
        Self(entries)
    }

    pub fn zeros(n: usize) -> Self {
        Self(alloc::vec![Rational::from_integer(0.into()); n])
    }

    pub fn from_integers(xs: &[i64]) -> Self {
        Self(crate::num::rat_vec(xs))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.0
    }

    pub fn neg(&self) -> Self {
        Self(self.0.iter().map(|x| -x).collect())
    }
}

impl Index<usize> for WeightVector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl fmt::Debug for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

impl From<Vec<Rational>> for WeightVector {
    fn from(v: Vec<Rational>) -> Self {
        Self(v)
    }
}

/// The tuple `(w_0, …, w_k)` standing for the perturbed weight
/// `w_0 + ε w_1 + … + ε^k w_k` with `ε > 0` arbitrarily small.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct DefectTuple(Vec<WeightVector>);

impl DefectTuple {
    pub fn new(entries: Vec<WeightVector>) -> Result<Self> {
        let Some(first) = entries.first() else {
            return Err(Error::EmptyTuple);
        };
        let n = first.len();
        if let Some(bad) = entries.iter().find(|w| w.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: bad.len() });
        }
        Ok(Self(entries))
    }

    pub fn singleton(w: WeightVector) -> Self {
        Self(alloc::vec![w])
    }

    pub fn entries(&self) -> &[WeightVector] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.0.first().map_or(0, WeightVector::len)
    }

    pub fn first(&self) -> &WeightVector {
        &self.0[0]
    }

    /// Applies a linear map entrywise.
    pub fn map(&self, f: impl Fn(&WeightVector) -> WeightVector) -> Self {
        Self(self.0.iter().map(f).collect())
    }
}
