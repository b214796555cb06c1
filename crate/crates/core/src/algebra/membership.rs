//! Initial ideals: Gröbner-based bases, degree-graded membership by linear
//! algebra, and properness in the Laurent ring.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::{One, Zero};

use super::coefficient::ValuedCoefficient;
use super::groebner::{groebner_basis, truncated_groebner_basis};
use super::order::{tiebreak_cmp, Tiebreak, TermOrder};
use super::polynomial::{Exponent, LaurentPolynomial, PolynomialSystem, Variables};
use super::weight::{DefectTuple, WeightVector};
use crate::error::{Error, Result};
use crate::num::Rational;

fn require_trivial_homogeneous(system: &PolynomialSystem) -> Result<()> {
    if !system.is_trivially_valued() {
        return Err(Error::ValuedInput);
    }
    if !system.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    Ok(())
}

/// Gröbner basis of `in_w(I)` over the residue field: a Gröbner basis for
/// `(1⃗, −w, revlex)` followed by initial forms.
pub fn initial_ideal_basis(system: &PolynomialSystem, w: &WeightVector) -> Result<PolynomialSystem> {
    nested_initial_ideal_basis(system, &DefectTuple::singleton(w.clone()))
}

/// Generators of `in_{w_k} ⋯ in_{w_0}(I)` for a homogeneous, trivially
/// valued system.
pub fn nested_initial_ideal_basis(system: &PolynomialSystem, tuple: &DefectTuple) -> Result<PolynomialSystem> {
    require_trivial_homogeneous(system)?;
    if tuple.ambient_dim() != system.nvars() {
        return Err(Error::DimensionMismatch { expected: system.nvars(), found: tuple.ambient_dim() });
    }
    let g = groebner_basis(system, &TermOrder::for_tuple(tuple))?;
    g.nested_initial_forms(tuple)
}

/// The elements of degree at most `max_degree` of [`nested_initial_ideal_basis`],
/// enough for normal forms up to that degree.
pub fn truncated_initial_ideal_basis(
    system: &PolynomialSystem,
    tuple: &DefectTuple,
    max_degree: u32,
) -> Result<PolynomialSystem> {
    require_trivial_homogeneous(system)?;
    if tuple.ambient_dim() != system.nvars() {
        return Err(Error::DimensionMismatch { expected: system.nvars(), found: tuple.ambient_dim() });
    }
    let g = truncated_groebner_basis(system, &TermOrder::for_tuple(tuple), max_degree)?;
    g.nested_initial_forms(tuple)
}

/// Integer score rows: each tuple entry scaled by a positive integer.
fn integer_weights(tuple: &DefectTuple) -> Result<Vec<Vec<i128>>> {
    let rows: Vec<Vec<Rational>> = tuple.entries().iter().map(|w| w.0.clone()).collect();
    TermOrder::new(rows, Tiebreak::RevLex).integer_rows(tuple.ambient_dim())
}

fn score(rows: &[Vec<i128>], e: &[i64]) -> Vec<i128> {
    rows.iter().map(|r| r.iter().zip(e).map(|(a, &x)| a * i128::from(x)).sum()).collect()
}

fn monomials_of_degree(n: usize, d: i64) -> Vec<Vec<i64>> {
    fn rec(n: usize, i: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if i == n - 1 {
            cur[i] = left;
            out.push(cur.clone());
            cur[i] = 0;
            return;
        }
        for k in (0..=left).rev() {
            cur[i] = k;
            rec(n, i + 1, left - k, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(n, 0, d, &mut vec![0; n], &mut out);
    out
}

type SparseRow = Vec<(usize, Rational)>;

/// `a - f·b` on rows sorted by column.
fn axpy(a: &SparseRow, f: &Rational, b: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ord = match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) => x.0.cmp(&y.0),
            (Some(_), None) => Ordering::Less,
            _ => Ordering::Greater,
        };
        match ord {
            Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                out.push((b[j].0, -(f * &b[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let v = &a[i].1 - f * &b[j].1;
                if !v.is_zero() {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Incremental echelon form keyed by the smallest column of each row.
#[derive(Default)]
struct Echelon {
    pivots: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    fn reduce(&self, mut row: SparseRow) -> SparseRow {
        let mut start = 0;
        while start < row.len() {
            let (c, ref v) = row[start];
            match self.pivots.get(&c) {
                Some(p) => {
                    let f = v.clone();
                    let tail = axpy(&row[start..].to_vec(), &f, p);
                    row.truncate(start);
                    row.extend(tail);
                }
                None => start += 1,
            }
        }
        row
    }

    fn insert(&mut self, row: SparseRow) {
        let row = self.reduce_leading(row);
        if let Some((c, v)) = row.first().cloned() {
            let inv = v.recip();
            let row = row.into_iter().map(|(k, x)| (k, x * &inv)).collect();
            self.pivots.insert(c, row);
        }
    }

    /// Eliminates leading entries until the first column is not a pivot.
    fn reduce_leading(&self, mut row: SparseRow) -> SparseRow {
        while let Some((c, v)) = row.first() {
            match self.pivots.get(c) {
                Some(p) => {
                    let f = v.clone();
                    row = axpy(&row, &f, p);
                }
                None => break,
            }
        }
        row
    }
}

/// Decides `m ∈ in_w(I)` by linear algebra in degree `deg(m)`; see
/// [`graded_nested_initial_membership`].
pub fn graded_initial_membership(system: &PolynomialSystem, w: &WeightVector, m: &Exponent) -> Result<bool> {
    graded_nested_initial_membership(system, &DefectTuple::singleton(w.clone()), m)
}

/// Decides whether the monomial `x^m` lies in the degree-`deg(m)` part of the
/// nested initial ideal of a homogeneous, trivially valued system.
///
/// The rows are all products `x^β·g` of degree `deg(m)`; columns are sorted
/// by score tuple. An echelon basis with pivots at the lowest-score column has
/// initial forms spanning the initial space of the row span, and `m` is tested
/// against the rows whose initial score equals that of `m`.
pub fn graded_nested_initial_membership(system: &PolynomialSystem, tuple: &DefectTuple, m: &Exponent) -> Result<bool> {
    let space = GradedInitialSpace::new(system, tuple, m)?;
    Ok(space.contains(m))
}

/// Looks for a multiple `x^β·x^m` with `|β| ≤ extra` in the graded pieces of
/// the nested initial ideal, returning the first one found. In the Laurent
/// ring any such multiple puts `x^m` itself in the initial ideal.
pub fn lifted_nested_initial_membership(
    system: &PolynomialSystem,
    tuple: &DefectTuple,
    m: &Exponent,
    extra: i64,
) -> Result<Option<Exponent>> {
    let n = system.nvars();
    for k in 0..=extra {
        let shifts = monomials_of_degree(n, k);
        let Some(first) = shifts.first() else { continue };
        let probe = m.checked_add(&Exponent(first.clone()))?;
        let space = GradedInitialSpace::new(system, tuple, &probe)?;
        for beta in shifts {
            let target = m.checked_add(&Exponent(beta))?;
            if space.contains(&target) {
                return Ok(Some(target));
            }
        }
    }
    Ok(None)
}

/// Echelon form of the degree-`d` piece of an ideal with columns sorted by
/// score tuple.
struct GradedInitialSpace {
    columns: Vec<(Vec<i128>, Exponent)>,
    index: BTreeMap<Exponent, usize>,
    echelon: Echelon,
}

impl GradedInitialSpace {
    /// The piece in degree `deg(m)`; `m` is checked for sign and length.
    fn new(system: &PolynomialSystem, tuple: &DefectTuple, m: &Exponent) -> Result<Self> {
        require_trivial_homogeneous(system)?;
        let n = system.nvars();
        if tuple.ambient_dim() != n || m.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: m.len().min(tuple.ambient_dim()) });
        }
        if m.as_slice().iter().any(|&x| x < 0) {
            return Err(Error::Invalid("witness monomial has negative exponents".into()));
        }
        let d = m.degree();
        let gens: Vec<LaurentPolynomial> =
            system.generators().iter().filter(|g| !g.is_zero()).map(|g| g.clear_denominators()).collect::<Result<_>>()?;
        let top = gens.iter().filter_map(|g| g.max_degree()).max().unwrap_or(0);
        if d < top {
            return Err(Error::WitnessDegree { witness: d, generators: top });
        }
        let weights = integer_weights(tuple)?;

        let mut rows: Vec<Vec<(Exponent, Rational)>> = Vec::new();
        let mut multipliers: BTreeMap<i64, Vec<Vec<i64>>> = BTreeMap::new();
        for g in &gens {
            let e = g.max_degree().unwrap();
            let betas = multipliers.entry(d - e).or_insert_with(|| monomials_of_degree(n, d - e));
            for beta in betas.iter() {
                let shift = Exponent(beta.clone());
                let row = g
                    .terms()
                    .map(|(a, c)| Ok((a.checked_add(&shift)?, c.as_rational().ok_or(Error::ValuedInput)?)))
                    .collect::<Result<Vec<_>>>()?;
                rows.push(row);
            }
        }

        let mut columns: Vec<(Vec<i128>, Exponent)> = {
            let mut set: BTreeMap<&Exponent, ()> = BTreeMap::new();
            for r in &rows {
                for (e, _) in r {
                    set.insert(e, ());
                }
            }
            set.into_keys().map(|e| (score(&weights, e.as_slice()), e.clone())).collect()
        };
        columns.sort_by(|a, b| {
            a.0.cmp(&b.0)
                .then_with(|| tiebreak_cmp(Tiebreak::RevLex, a.1.as_slice().iter().copied(), b.1.as_slice().iter().copied()))
        });
        let index: BTreeMap<Exponent, usize> = columns.iter().enumerate().map(|(i, (_, e))| (e.clone(), i)).collect();

        let mut echelon = Echelon::default();
        for r in &rows {
            let mut sparse: SparseRow = r.iter().map(|(e, c)| (index[e], c.clone())).collect();
            sparse.sort_by_key(|(c, _)| *c);
            echelon.insert(sparse);
        }
        Ok(Self { columns, index, echelon })
    }

    /// Whether `x^m` is the nested initial form of some element of the piece.
    fn contains(&self, m: &Exponent) -> bool {
        // a monomial absent from every row is absent from every initial form
        let Some(&target) = self.index.get(m) else { return false };
        let target_score = &self.columns[target].0;
        let mut group = Echelon::default();
        for row in self.echelon.pivots.values() {
            let lead_score = &self.columns[row[0].0].0;
            if lead_score != target_score {
                continue;
            }
            let initial: SparseRow = row.iter().filter(|(c, _)| &self.columns[*c].0 == lead_score).cloned().collect();
            group.insert(initial);
        }
        group.reduce(vec![(target, Rational::one())]).is_empty()
    }
}

fn all_variables_product(vars: &Variables, y: usize) -> LaurentPolynomial {
    let mut e = Exponent::zero(vars.len());
    for x in e.0.iter_mut() {
        *x = 1;
    }
    let lhs = LaurentPolynomial::monomial(vars, e, ValuedCoefficient::one());
    debug_assert_eq!(y, vars.len() - 1);
    &lhs - &LaurentPolynomial::constant(vars, ValuedCoefficient::one())
}

fn lift(system: &PolynomialSystem, vars: &Variables) -> Result<Vec<LaurentPolynomial>> {
    system
        .generators()
        .iter()
        .map(|g| {
            let p = g.to_polynomial()?;
            p.map_exponents(vars, |e| {
                let mut v = e.0.clone();
                v.push(0);
                Ok(Exponent(v))
            })
        })
        .collect()
}

/// Whether the ideal generated by `system` in the Laurent polynomial ring is
/// proper. Adjoins `y` with `y·x_1⋯x_n − 1` and looks for a constant in a
/// Gröbner basis.
pub fn laurent_properness(system: &PolynomialSystem) -> Result<bool> {
    if system.generators().iter().all(LaurentPolynomial::is_zero) {
        return Ok(true);
    }
    let (vars, y) = system.vars().extended("y");
    let mut gens = lift(system, &vars)?;
    gens.push(all_variables_product(&vars, y));
    let ext = PolynomialSystem::new(&vars, gens)?;
    let g = groebner_basis(&ext, &TermOrder::grevlex(vars.len()))?;
    Ok(!g.generators().iter().any(|p| p.len() == 1 && p.terms().all(|(e, _)| e.degree() == 0)))
}

/// `J : (x_1⋯x_n)^∞` for the polynomial ideal generated by `system`, as a
/// grevlex Gröbner basis.
pub fn saturation(system: &PolynomialSystem) -> Result<PolynomialSystem> {
    let n = system.nvars();
    let (vars, y) = system.vars().extended("y");
    let mut gens = lift(system, &vars)?;
    gens.push(all_variables_product(&vars, y));
    let ext = PolynomialSystem::new(&vars, gens)?;
    let mut ey = vec![Rational::zero(); n + 1];
    ey[y] = Rational::one();
    let order = TermOrder::new(vec![ey, vec![Rational::one(); n + 1]], Tiebreak::RevLex);
    let g = groebner_basis(&ext, &order)?;
    let kept = g
        .generators()
        .iter()
        .filter(|p| p.terms().all(|(e, _)| e.0[y] == 0))
        .map(|p| p.map_exponents(system.vars(), |e| Ok(Exponent(e.0[..n].to_vec()))))
        .collect::<Result<Vec<_>>>()?;
    let s = PolynomialSystem::new(system.vars(), kept)?;
    groebner_basis(&s, &TermOrder::grevlex(n))
}

/// Homogenizes each generator with a fresh last variable.
pub fn homogenize(system: &PolynomialSystem) -> Result<PolynomialSystem> {
    let (vars, _) = system.vars().extended("h");
    let gens = system
        .generators()
        .iter()
        .map(|g| {
            let p = g.to_polynomial()?;
            let top = p.max_degree().unwrap_or(0);
            p.map_exponents(&vars, |e| {
                let mut v = e.0.clone();
                v.push(top - e.degree());
                Ok(Exponent(v))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    PolynomialSystem::new(&vars, gens)
}

/// Whether the nested initial ideal `in_{w_k} ⋯ in_{w_0}(I)` generates the
/// unit ideal of the Laurent ring, i.e. the tuple is not in `Trop(I)`.
/// Requires trivially valued input; non-homogeneous input is saturated and
/// homogenized first.
pub fn nested_initial_is_unit(system: &PolynomialSystem, tuple: &DefectTuple) -> Result<bool> {
    if !system.is_trivially_valued() {
        return Err(Error::ValuedInput);
    }
    if tuple.ambient_dim() != system.nvars() {
        return Err(Error::DimensionMismatch { expected: system.nvars(), found: tuple.ambient_dim() });
    }
    let ini = if system.is_homogeneous() {
        nested_initial_ideal_basis(system, tuple)?
    } else {
        let n = system.nvars();
        let sat = saturation(system)?;
        let hom = homogenize(&sat)?;
        let padded = DefectTuple::new(
            tuple
                .entries()
                .iter()
                .map(|w| {
                    let mut v = w.0.clone();
                    v.push(Rational::zero());
                    WeightVector(v)
                })
                .collect(),
        )?;
        let ini = nested_initial_ideal_basis(&hom, &padded)?;
        let gens = ini
            .generators()
            .iter()
            .map(|p| p.map_exponents(system.vars(), |e| Ok(Exponent(e.0[..n].to_vec()))))
            .collect::<Result<Vec<_>>>()?;
        PolynomialSystem::new(system.vars(), gens)?
    };
    Ok(!laurent_properness(&ini)?)
}
