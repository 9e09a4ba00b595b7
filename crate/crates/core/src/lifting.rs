//! Stack construction and the lifting phase.

use std::collections::{BTreeMap, BTreeSet};

use log::{debug, info};

use crate::algnum::{
    fiber_gcd_all, make_separable_over_cell, restrict_to_fiber, roots_over_cell, AlgebraicCoordinate,
    SamplePoint,
};
use crate::error::{Error, Result};
use crate::poly::MultiPoly;
use crate::projection::{Method, ProjectionLevels};

/// A real root of `poly` over the base cell: the `ordinal`-th of `count`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootRef {
    pub poly: MultiPoly,
    pub ordinal: usize,
    pub count: usize,
}

/// Constraint on one coordinate of a cell relative to the roots over its base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    Whole,
    Below(RootRef),
    Equal(RootRef),
    Between(RootRef, RootRef),
    Above(RootRef),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    /// 1-based positions in the successive stacks; even entries are sections.
    pub index: Vec<usize>,
    pub sample: SamplePoint,
    pub description: Vec<Bound>,
}

impl Cell {
    /// The single cell of R^0.
    pub fn root() -> Self {
        Cell {
            index: Vec::new(),
            sample: SamplePoint::new(),
            description: Vec::new(),
        }
    }

    pub fn level(&self) -> usize {
        self.index.len()
    }

    pub fn dimension(&self) -> usize {
        self.index.iter().filter(|&&i| i % 2 == 1).count()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dimension() == self.index.len()
    }
}

/// Stack over `base` for polynomials whose main variable is `base.level()`.
/// None of them may vanish identically over the base sample.
pub fn generate_stack(base: &Cell, q: &[MultiPoly]) -> Result<Vec<Cell>> {
    let k = base.level();
    let mut sample = base.sample.clone();
    let sep = make_separable_over_cell(q, &mut sample)?;
    let roots = roots_over_cell(&sep, &mut sample)?;
    let sections: Vec<AlgebraicCoordinate> = roots.sections.into_iter().map(|(c, _)| c).collect();

    // which input polynomials vanish at each section
    let mut vanish = vec![Vec::new(); sections.len()];
    for (j, c) in sections.iter().enumerate() {
        let mut pt = sample.extended(c.clone());
        for (i, p) in q.iter().enumerate() {
            if pt.sign_at(p)? == 0 {
                vanish[j].push(i);
            }
        }
        // the extended point may have refined its prefix; keep that work
        sample = pt.prefix(k);
    }
    let mut counts = vec![0usize; q.len()];
    for v in &vanish {
        for &i in v {
            counts[i] += 1;
        }
    }
    let mut seen = vec![0usize; q.len()];
    let mut refs = Vec::with_capacity(sections.len());
    for (j, v) in vanish.iter().enumerate() {
        for &i in v {
            seen[i] += 1;
        }
        let &i = v.first().ok_or_else(|| {
            Error::Integrity(format!("section {} over {:?} lies on no polynomial", j + 1, base.index))
        })?;
        refs.push(RootRef {
            poly: q[i].clone(),
            ordinal: seen[i],
            count: counts[i],
        });
    }

    let mut cells = Vec::with_capacity(2 * sections.len() + 1);
    let mut push = |pos: usize, coord: AlgebraicCoordinate, bound: Bound| {
        let mut index = base.index.clone();
        index.push(pos);
        let mut description = base.description.clone();
        description.push(bound);
        cells.push(Cell {
            index,
            sample: sample.extended(coord),
            description,
        });
    };
    for (j, s) in roots.sectors.into_iter().enumerate() {
        let bound = match (j.checked_sub(1).map(|i| &refs[i]), refs.get(j)) {
            (None, None) => Bound::Whole,
            (None, Some(r)) => Bound::Below(r.clone()),
            (Some(l), Some(r)) => Bound::Between(l.clone(), r.clone()),
            (Some(l), None) => Bound::Above(l.clone()),
        };
        push(2 * j + 1, AlgebraicCoordinate::Rational(s), bound);
        if j < sections.len() {
            push(2 * j + 2, sections[j].clone(), Bound::Equal(refs[j].clone()));
        }
    }
    Ok(cells)
}

/// True iff `p` (main variable `sample.len()`) vanishes identically over the
/// fiber of `sample`.
pub fn is_nullified(p: &MultiPoly, sample: &SamplePoint) -> Result<bool> {
    let mut s = sample.clone();
    Ok(restrict_to_fiber(p, &mut s)?.is_zero())
}

/// Squarefree gcd over the fiber of the lowest-order partial derivatives of
/// `p` that do not vanish there. `None` if that gcd is constant.
pub fn minimal_delineating_polynomial(p: &MultiPoly, sample: &SamplePoint) -> Result<Option<MultiPoly>> {
    if !is_nullified(p, sample)? {
        return Err(Error::NotNullified);
    }
    let k = sample.len();
    let mut s = sample.clone();
    // (last variable differentiated, partial) so each multiset appears once
    let mut layer: Vec<(usize, MultiPoly)> = vec![(0, p.clone())];
    loop {
        let mut next = Vec::new();
        for (last, f) in &layer {
            for v in *last..=k {
                let d = f.derivative(v);
                if !d.is_zero() {
                    next.push((v, d));
                }
            }
        }
        if next.is_empty() {
            return Err(Error::Integrity(format!("no nonvanishing partial of {p}")));
        }
        let distinct: BTreeSet<&MultiPoly> = next.iter().map(|(_, d)| d).collect();
        let mut alive = Vec::new();
        for d in distinct {
            let r = restrict_to_fiber(d, &mut s)?;
            if !r.is_zero() {
                alive.push(r);
            }
        }
        if !alive.is_empty() {
            return fiber_gcd_all(&alive, &mut s);
        }
        layer = next;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NullificationWarning {
    pub index: Vec<usize>,
    pub poly: MultiPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Delineation {
    pub index: Vec<usize>,
    pub nullified: MultiPoly,
    pub delineating: Option<MultiPoly>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LiftOptions {
    pub final_oi: bool,
    /// Abort instead of warning on nullification over a positive-dimensional cell.
    pub strict: bool,
}

#[derive(Clone, Debug)]
pub struct Lifted {
    pub cells: Vec<Cell>,
    pub warnings: Vec<NullificationWarning>,
    pub delineations: Vec<Delineation>,
    /// Polynomials each stack was built from, keyed by base cell index.
    pub lifting_sets: BTreeMap<Vec<usize>, Vec<MultiPoly>>,
}

/// Lifting phase over the projection levels.
pub fn cad_lifting(levels: &ProjectionLevels, opts: LiftOptions) -> Result<Lifted> {
    let n = levels.num_vars();
    let mut out = Lifted {
        cells: Vec::new(),
        warnings: Vec::new(),
        delineations: Vec::new(),
        lifting_sets: BTreeMap::new(),
    };
    let mut current = vec![Cell::root()];
    for k in 0..n {
        let level = levels.level(k);
        let check = levels.method == Method::McCallum && k > 0 && (k + 1 < n || opts.final_oi);
        let mut next = Vec::new();
        for base in &current {
            let mut q = Vec::new();
            for p in level {
                if !is_nullified(p, &base.sample)? {
                    q.push(p.clone());
                    continue;
                }
                if !check {
                    debug!("{} vanishes over {:?}; ignored", p, base.index);
                    continue;
                }
                if base.dimension() == 0 {
                    let d = minimal_delineating_polynomial(p, &base.sample)?;
                    debug!("{} nullified over {:?}; delineating {:?}", p, base.index, d);
                    if let Some(d) = &d {
                        if !q.contains(d) {
                            q.push(d.clone());
                        }
                    }
                    out.delineations.push(Delineation {
                        index: base.index.clone(),
                        nullified: p.clone(),
                        delineating: d,
                    });
                } else if opts.strict {
                    return Err(Error::NotWellOriented {
                        index: base.index.clone(),
                        poly: p.clone(),
                    });
                } else {
                    log::warn!("{} nullified over positive-dimensional cell {:?}", p, base.index);
                    out.warnings.push(NullificationWarning {
                        index: base.index.clone(),
                        poly: p.clone(),
                    });
                }
            }
            let stack = generate_stack(base, &q)?;
            debug!("stack over {:?}: {} cells", base.index, stack.len());
            out.lifting_sets.insert(base.index.clone(), q);
            next.extend(stack);
        }
        info!("lifting level {}: {} cells", k + 1, next.len());
        current = next;
    }
    current.sort_by(|a, b| a.index.cmp(&b.index));
    out.cells = current;
    Ok(out)
}
