//! Full decomposition, point location and verification oracles.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algnum::{
    compare_rational, make_separable_over_cell, restrict_to_fiber, roots_over_cell, AlgebraicCoordinate,
    Rational, SamplePoint,
};
use crate::error::{Error, Result};
use crate::lifting::{cad_lifting, Bound, Cell, Delineation, LiftOptions, NullificationWarning};
use crate::poly::{MultiPoly, VarOrder};
use crate::projection::{cad_projection, Method, ProjectionLevels};

#[derive(Clone, Debug)]
pub struct Cad {
    pub order: VarOrder,
    pub method: Method,
    pub final_oi: bool,
    /// Sorted lexicographically by index.
    pub cells: Vec<Cell>,
    pub warnings: Vec<NullificationWarning>,
    pub delineations: Vec<Delineation>,
    pub projection: ProjectionLevels,
    lifting_sets: BTreeMap<Vec<usize>, Vec<MultiPoly>>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CadOptions {
    pub method: Method,
    pub final_oi: bool,
    pub strict: bool,
}

impl Cad {
    pub fn num_vars(&self) -> usize {
        self.order.len()
    }

    pub fn cell(&self, index: &[usize]) -> Option<&Cell> {
        self.cells
            .binary_search_by(|c| c.index.as_slice().cmp(index))
            .ok()
            .map(|i| &self.cells[i])
    }

    /// Polynomials the stack over `base` was built from.
    pub fn lifting_set(&self, base: &[usize]) -> Option<&[MultiPoly]> {
        self.lifting_sets.get(base).map(Vec::as_slice)
    }

    /// Sections over a rational point lying in the cell `base`.
    fn sections_over(&self, base: &[usize], prefix: &[Rational]) -> Result<(SamplePoint, Vec<AlgebraicCoordinate>)> {
        let q = self
            .lifting_set(base)
            .ok_or_else(|| Error::Integrity(format!("no stack over {base:?}")))?;
        let mut s = SamplePoint::from_rationals(prefix.iter().cloned());
        let mut live = Vec::new();
        for p in q {
            if !restrict_to_fiber(p, &mut s)?.is_zero() {
                live.push(p.clone());
            }
        }
        let sep = make_separable_over_cell(&live, &mut s)?;
        let roots = roots_over_cell(&sep, &mut s)?;
        Ok((s, roots.sections.into_iter().map(|(c, _)| c).collect()))
    }

    /// The cell containing a rational point.
    pub fn locate_point(&self, pt: &[Rational]) -> Result<&Cell> {
        if pt.len() != self.num_vars() {
            return Err(Error::InvalidInput(format!(
                "point has {} coordinates, expected {}",
                pt.len(),
                self.num_vars()
            )));
        }
        let mut index = Vec::with_capacity(pt.len());
        for k in 0..pt.len() {
            let (mut s, mut sections) = self.sections_over(&index, &pt[..k])?;
            let mut pos = 2 * sections.len() + 1;
            for (j, sec) in sections.iter_mut().enumerate() {
                match compare_rational(&pt[k], sec, k, s.coords_mut())? {
                    Ordering::Less => {
                        pos = 2 * j + 1;
                        break;
                    }
                    Ordering::Equal => {
                        pos = 2 * j + 2;
                        break;
                    }
                    Ordering::Greater => {}
                }
            }
            index.push(pos);
        }
        self.cell(&index)
            .ok_or_else(|| Error::Integrity(format!("point located in missing cell {index:?}")))
    }
}

/// Projection followed by lifting.
pub fn cad_full(polys: &[MultiPoly], order: &VarOrder, opts: CadOptions) -> Result<Cad> {
    let projection = cad_projection(polys, order.len(), opts.method)?;
    if log::log_enabled!(log::Level::Trace) {
        for (k, level) in projection.iter().enumerate() {
            for p in level {
                log::trace!("  level {} ({}): {}", k + 1, order.name(k), order.fmt_poly(p));
            }
        }
    }
    let lifted = cad_lifting(
        &projection,
        LiftOptions {
            final_oi: opts.final_oi,
            strict: opts.strict,
        },
    )?;
    Ok(Cad {
        order: order.clone(),
        method: opts.method,
        final_oi: opts.final_oi,
        cells: lifted.cells,
        warnings: lifted.warnings,
        delineations: lifted.delineations,
        projection,
        lifting_sets: lifted.lifting_sets,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignFailure {
    pub index: Vec<usize>,
    pub point: Vec<Rational>,
    pub expected: Vec<i8>,
    pub found: Vec<i8>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SignReport {
    pub cells_checked: usize,
    pub points_checked: usize,
    pub failure: Option<SignFailure>,
}

impl SignReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

fn sign_vector_rational(polys: &[MultiPoly], pt: &[Rational]) -> Vec<i8> {
    polys
        .iter()
        .map(|p| {
            let v = p.eval_rational(pt).expect("all variables fixed");
            if v > Rational::from_integer(0.into()) {
                1
            } else if v < Rational::from_integer(0.into()) {
                -1
            } else {
                0
            }
        })
        .collect()
}

fn random_between(rng: &mut ChaCha8Rng, lo: &Rational, hi: &Rational) -> Rational {
    let t = Rational::new(rng.gen_range(1..1000).into(), 1000.into());
    lo + (hi - lo) * t
}

/// A random rational strictly between two adjacent coordinates over `s`.
fn random_in_gap(
    rng: &mut ChaCha8Rng,
    s: &SamplePoint,
    lo: Option<&AlgebraicCoordinate>,
    hi: Option<&AlgebraicCoordinate>,
) -> Result<Rational> {
    let k = s.len();
    let one = Rational::from_integer(1.into());
    let eps = Rational::new(1.into(), 10_000.into());
    let span = Rational::from_integer(8.into());
    match (lo, hi) {
        (None, None) => Ok(random_between(rng, &-span.clone(), &span)),
        (Some(a), None) => {
            let top = a.bounds().1;
            Ok(random_between(rng, top, &(top + &span)) + eps)
        }
        (None, Some(b)) => {
            let bottom = b.bounds().0;
            Ok(random_between(rng, &(bottom - &span), bottom) - eps)
        }
        (Some(a), Some(b)) => {
            let mut pa = s.extended(a.clone());
            let mut pb = s.extended(b.clone());
            let mut width = one;
            loop {
                let ahi = pa.coords()[k].bounds().1.clone();
                let blo = pb.coords()[k].bounds().0.clone();
                if ahi < blo {
                    return Ok(random_between(rng, &ahi, &blo));
                }
                width /= Rational::from_integer(4.into());
                pa.refine(k, &width)?;
                pb.refine(k, &width)?;
            }
        }
    }
}

/// Random rational point in the interior of a full-dimensional cell.
fn random_interior_point(cad: &Cad, cell: &Cell, rng: &mut ChaCha8Rng) -> Result<Vec<Rational>> {
    let mut pt: Vec<Rational> = Vec::with_capacity(cell.index.len());
    for (k, &pos) in cell.index.iter().enumerate() {
        let (s, sections) = cad.sections_over(&cell.index[..k], &pt)?;
        let j = (pos - 1) / 2;
        let lo = j.checked_sub(1).and_then(|i| sections.get(i));
        let x = random_in_gap(rng, &s, lo, sections.get(j))?;
        pt.push(x);
    }
    Ok(pt)
}

/// Compare the sign vector of `polys` at each cell's sample with its sign
/// vector at random interior points of every full-dimensional cell.
pub fn verify_sign_invariance(cad: &Cad, polys: &[MultiPoly], samples_per_cell: usize, seed: u64) -> Result<SignReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SignReport::default();
    if polys.is_empty() {
        return Ok(report);
    }
    for cell in &cad.cells {
        let mut sample = cell.sample.clone();
        let mut expected = Vec::with_capacity(polys.len());
        for p in polys {
            expected.push(sample.sign_at(p)?);
        }
        report.cells_checked += 1;
        if !cell.is_full_dimensional() {
            continue;
        }
        for _ in 0..samples_per_cell {
            let pt = random_interior_point(cad, cell, &mut rng)?;
            if cad.locate_point(&pt)?.index != cell.index {
                return Err(Error::Integrity(format!("random point escaped cell {:?}", cell.index)));
            }
            let found = sign_vector_rational(polys, &pt);
            report.points_checked += 1;
            if found != expected {
                report.failure = Some(SignFailure {
                    index: cell.index.clone(),
                    point: pt,
                    expected,
                    found,
                });
                return Ok(report);
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CylindricityReport {
    /// Number of distinct index prefixes of each length.
    pub prefixes: Vec<usize>,
    pub problems: Vec<String>,
}

impl CylindricityReport {
    pub fn passed(&self) -> bool {
        self.problems.is_empty()
    }
}

/// Index-prefix checks: equal lengths, no duplicates, and every stack is
/// `1 ..= 2m+1` with its sections at even positions.
pub fn check_cylindricity(cells: &[Cell]) -> CylindricityReport {
    let mut report = CylindricityReport::default();
    let Some(first) = cells.first() else {
        report.problems.push("no cells".into());
        return report;
    };
    let n = first.index.len();
    let mut seen = BTreeSet::new();
    for c in cells {
        if c.index.len() != n {
            report.problems.push(format!("cell {:?} has length {}, expected {n}", c.index, c.index.len()));
        }
        if c.sample.len() != c.index.len() {
            report.problems.push(format!("cell {:?} has a sample of length {}", c.index, c.sample.len()));
        }
        if !seen.insert(c.index.clone()) {
            report.problems.push(format!("duplicate index {:?}", c.index));
        }
    }
    for len in 0..n {
        let mut children: BTreeMap<&[usize], BTreeSet<usize>> = BTreeMap::new();
        for c in cells.iter().filter(|c| c.index.len() == n) {
            children.entry(&c.index[..len]).or_default().insert(c.index[len]);
        }
        report.prefixes.push(children.len());
        for (prefix, kids) in children {
            let m = kids.len();
            let contiguous = kids.iter().copied().eq(1..=m);
            if m % 2 == 0 || !contiguous {
                report
                    .problems
                    .push(format!("stack over {prefix:?} has positions {kids:?}"));
            }
        }
    }
    report
}

/// Each described section polynomial vanishes at the sample for pinned
/// coordinates and is nonzero at sector coordinates.
pub fn check_samples(cells: &[Cell]) -> Result<Vec<String>> {
    let mut problems = Vec::new();
    for c in cells {
        for (k, b) in c.description.iter().enumerate() {
            let mut pt = c.sample.prefix(k + 1);
            let mut vanishes = |p: &MultiPoly| pt.sign_at(p).map(|s| s == 0);
            let ok = match b {
                Bound::Whole => true,
                Bound::Equal(r) => vanishes(&r.poly)?,
                Bound::Below(r) | Bound::Above(r) => !vanishes(&r.poly)?,
                Bound::Between(l, r) => !vanishes(&l.poly)? && !vanishes(&r.poly)?,
            };
            if !ok {
                problems.push(format!("cell {:?}: sample violates bound {}", c.index, k + 1));
            }
        }
    }
    Ok(problems)
}
