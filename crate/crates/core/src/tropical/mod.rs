//! Tropical hypersurfaces, Gröbner polyhedra and prevarieties.
//!
//! For a term `c_α x^α` and a weight `w` the score is `w·α + ν(c_α)`. A
//! weight lies on the tropical hypersurface of `f` when the minimal score is
//! attained at least twice.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::algebra::{DefectTuple, LaurentPolynomial, PolynomialSystem, WeightVector};
use crate::error::{Error, Result};
use crate::num::{dot, Rational};
use crate::polyhedra::{HPolyhedron, Hull};

/// Exponents (as rationals) and valuations of the terms of a polynomial, in
/// the polynomial's term order.
struct Terms {
    exps: Vec<Vec<Rational>>,
    vals: Vec<Rational>,
}

impl Terms {
    fn of(f: &LaurentPolynomial) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut exps = Vec::with_capacity(f.len());
        let mut vals = Vec::with_capacity(f.len());
        for (e, c) in f.terms() {
            exps.push(e.as_slice().iter().map(|&x| Rational::from_integer(x.into())).collect());
            vals.push(c.valuation().expect("stored coefficients are nonzero"));
        }
        Ok(Self { exps, vals })
    }

    fn len(&self) -> usize {
        self.vals.len()
    }

    fn score(&self, k: usize, w: &[Rational]) -> Rational {
        dot(&self.exps[k], w) + &self.vals[k]
    }

    fn argmin(&self, w: &[Rational]) -> Vec<usize> {
        let scores: Vec<Rational> = (0..self.len()).map(|k| self.score(k, w)).collect();
        let min = scores.iter().min().unwrap();
        (0..self.len()).filter(|&k| &scores[k] == min).collect()
    }

    /// `{w : all terms of `tie` share the minimal score}`.
    fn tie_cell(&self, n: usize, tie: &[usize]) -> Result<HPolyhedron> {
        let r = tie[0];
        let mut eqs = Vec::new();
        let mut ineqs = Vec::new();
        for k in 0..self.len() {
            if k == r {
                continue;
            }
            // score_k − score_r  (=|≥) 0
            let a: Vec<Rational> = self.exps[k].iter().zip(&self.exps[r]).map(|(x, y)| x - y).collect();
            let b = &self.vals[r] - &self.vals[k];
            if tie.contains(&k) {
                eqs.push((a, b));
            } else {
                ineqs.push((a, b));
            }
        }
        HPolyhedron::from_constraints(n, &eqs, &ineqs)
    }
}

/// A polyhedron on which each processed generator attains its minimal
/// score on (at least) the recorded terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalCell {
    pub polyhedron: HPolyhedron,
    /// `(generator index, tied term indices)`; term indices follow the
    /// generator's exponent order.
    pub provenance: Vec<(usize, Vec<usize>)>,
}

impl TropicalCell {
    pub fn hull(&self) -> Hull {
        self.polyhedron.dimension_and_hull().expect("cells are nonempty")
    }

    pub fn dimension(&self) -> usize {
        self.hull().dim
    }
}

fn hypersurface_cells_with(f: &LaurentPolynomial, index: usize) -> Result<Vec<TropicalCell>> {
    let terms = Terms::of(f)?;
    let n = f.nvars();
    let mut out: BTreeMap<HPolyhedron, TropicalCell> = BTreeMap::new();
    for i in 0..terms.len() {
        for j in i + 1..terms.len() {
            let p = terms.tie_cell(n, &[i, j])?.canonical();
            if p.is_empty() {
                continue;
            }
            out.entry(p.clone()).or_insert(TropicalCell { polyhedron: p, provenance: vec![(index, vec![i, j])] });
        }
    }
    Ok(out.into_values().collect())
}

/// Pair cells `{w·α + ν_α = w·β + ν_β ≤ w·γ + ν_γ for all γ}` of all term
/// pairs, canonicalized, nonempty and without duplicates.
pub fn hypersurface_cells(f: &LaurentPolynomial) -> Result<Vec<TropicalCell>> {
    hypersurface_cells_with(f, 0)
}

fn hypersurface_faces_with(f: &LaurentPolynomial, index: usize) -> Result<Vec<TropicalCell>> {
    let terms = Terms::of(f)?;
    let n = f.nvars();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut queue: Vec<Vec<usize>> = Vec::new();
    let mut out = Vec::new();
    for i in 0..terms.len() {
        for j in i + 1..terms.len() {
            queue.push(vec![i, j]);
        }
    }
    while let Some(tie) = queue.pop() {
        let cell = terms.tie_cell(n, &tie)?;
        let Some(hull) = cell.dimension_and_hull() else { continue };
        let exact = terms.argmin(&hull.point);
        if !seen.insert(exact.clone()) {
            continue;
        }
        for k in 0..terms.len() {
            if !exact.contains(&k) {
                let mut next = exact.clone();
                next.push(k);
                next.sort_unstable();
                queue.push(next);
            }
        }
        let p = terms.tie_cell(n, &exact)?.canonical();
        out.push(TropicalCell { polyhedron: p, provenance: vec![(index, exact)] });
    }
    out.sort_by(|a, b| a.polyhedron.cmp(&b.polyhedron));
    Ok(out)
}

/// Every closed cell of the tropical hypersurface: one per set of terms that
/// is exactly the argmin set somewhere, so that the relative interior of the
/// cell is the locus with that argmin set.
pub fn hypersurface_faces(f: &LaurentPolynomial) -> Result<Vec<TropicalCell>> {
    hypersurface_faces_with(f, 0)
}

/// Gröbner polyhedron `C_w(F)`: the closure of the weights inducing the
/// same initial form as `w` on every generator.
pub fn groebner_polyhedron(system: &PolynomialSystem, w: &WeightVector) -> Result<HPolyhedron> {
    let n = system.nvars();
    if w.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: w.len() });
    }
    let mut p = HPolyhedron::universe(n);
    for f in system.generators() {
        let terms = Terms::of(f)?;
        let tie = terms.argmin(w.as_slice());
        p = p.intersect(&terms.tie_cell(n, &tie)?)?;
    }
    Ok(p.canonical())
}

/// The closed cone of weights `v` with `in_v(f)` supported on the support of
/// the nested initial form of `f` at `tuple`.
pub fn initial_cell(f: &LaurentPolynomial, tuple: &DefectTuple) -> Result<HPolyhedron> {
    let terms = Terms::of(f)?;
    let ini = f.nested_initial_form(tuple)?;
    let tie: Vec<usize> =
        f.terms().enumerate().filter(|(_, (e, _))| ini.coefficient(e).is_some()).map(|(k, _)| k).collect();
    terms.tie_cell(f.nvars(), &tie)
}

/// Switches for [`prevariety`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrevarietyOptions {
    /// Report the first final cell whose dimension exceeds this bound.
    pub abort_above_dim: Option<usize>,
    /// Drop cells contained in other cells after each generator.
    pub prune_contained: bool,
    /// Intersect all faces of each hypersurface instead of its pair cells;
    /// without pruning the final cells are then exactly the Gröbner
    /// polyhedra `C_w(F)` of the points `w` of the prevariety (plus possibly
    /// some unions of them).
    pub all_faces: bool,
}

impl Default for PrevarietyOptions {
    fn default() -> Self {
        Self { abort_above_dim: None, prune_contained: true, all_faces: false }
    }
}

/// Cells covering `Trop(F) ∩ seed`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prevariety {
    pub cells: Vec<TropicalCell>,
    /// A final cell of dimension above the requested bound, if any.
    pub aborted: Option<TropicalCell>,
}

impl Prevariety {
    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Whether some cell contains `w`.
    pub fn contains_point(&self, w: &[Rational]) -> bool {
        self.cells.iter().any(|c| c.polyhedron.contains_point(w))
    }

    pub fn max_dimension(&self) -> Option<usize> {
        self.cells.iter().map(TropicalCell::dimension).max()
    }
}

fn prune(cells: Vec<TropicalCell>) -> Result<Vec<TropicalCell>> {
    let mut keep = vec![true; cells.len()];
    for i in 0..cells.len() {
        for j in 0..cells.len() {
            if i == j || !keep[j] {
                continue;
            }
            if cells[j].polyhedron.contains(&cells[i].polyhedron)? {
                keep[i] = false;
                break;
            }
        }
    }
    Ok(cells.into_iter().zip(keep).filter(|(_, k)| *k).map(|(c, _)| c).collect())
}

/// Intersects the hypersurfaces of all generators with `seed`, processing
/// generators with fewest cells first and deduplicating by canonical form.
pub fn prevariety(system: &PolynomialSystem, seed: &HPolyhedron, options: &PrevarietyOptions) -> Result<Prevariety> {
    let n = system.nvars();
    if seed.ambient_dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: seed.ambient_dim() });
    }
    let seed = seed.canonical();
    if seed.is_empty() {
        return Err(Error::EmptyPolyhedron);
    }
    let mut per_gen: Vec<(usize, Vec<TropicalCell>)> = system
        .generators()
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let cells = if options.all_faces { hypersurface_faces_with(f, i)? } else { hypersurface_cells_with(f, i)? };
            Ok((i, cells))
        })
        .collect::<Result<_>>()?;
    per_gen.sort_by_key(|(i, c)| (c.len(), *i));

    let mut work = vec![TropicalCell { polyhedron: seed, provenance: Vec::new() }];
    for (_, hcells) in &per_gen {
        let mut next: BTreeMap<HPolyhedron, TropicalCell> = BTreeMap::new();
        for cell in &work {
            for h in hcells {
                let p = cell.polyhedron.intersect(&h.polyhedron)?.canonical();
                if p.is_empty() || next.contains_key(&p) {
                    continue;
                }
                let mut provenance = cell.provenance.clone();
                provenance.extend(h.provenance.iter().cloned());
                next.insert(p.clone(), TropicalCell { polyhedron: p, provenance });
            }
        }
        work = next.into_values().collect();
        if options.prune_contained {
            work = prune(work)?;
        }
        if work.is_empty() {
            break;
        }
    }
    let aborted = match options.abort_above_dim {
        Some(d) => work.iter().find(|c| c.dimension() > d).cloned(),
        None => None,
    };
    Ok(Prevariety { cells: work, aborted })
}

/// Stable intersection with `h`: `σ ∩ h` for the cells with `dim(σ + h) = n`.
pub fn stable_filter(cells: &[TropicalCell], h: &HPolyhedron) -> Result<Vec<TropicalCell>> {
    let n = h.ambient_dim();
    if h.is_empty() {
        return Err(Error::EmptyPolyhedron);
    }
    let mut out = Vec::new();
    for c in cells {
        if c.polyhedron.sum_dimension(h)? != n {
            continue;
        }
        let p = c.polyhedron.intersect(h)?.canonical();
        if !p.is_empty() {
            out.push(TropicalCell { polyhedron: p, provenance: c.provenance.clone() });
        }
    }
    Ok(out)
}

/// The affine subspace `{w : w_i = values_i for i < values.len()}`.
pub fn coordinate_subspace(n: usize, values: &[Rational]) -> Result<HPolyhedron> {
    let eqs: Vec<_> = values
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let mut a = vec![Rational::zero(); n];
            a[i] = Rational::from_integer(1.into());
            (a, v.clone())
        })
        .collect();
    HPolyhedron::from_constraints(n, &eqs, &[])
}
