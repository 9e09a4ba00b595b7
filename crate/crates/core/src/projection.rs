//! Collins' and McCallum's projection operators and the projection phase.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use log::info;

use crate::error::{Error, Result};
use crate::poly::{finest_squarefree_basis, MultiPoly};
use crate::subres::{discriminant, psc_chain, psd, resultant};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Method {
    Collins,
    #[default]
    McCallum,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Collins => "collins",
            Method::McCallum => "mccallum",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "collins" => Ok(Method::Collins),
            "mccallum" => Ok(Method::McCallum),
            _ => Err(Error::InvalidInput(format!("unknown projection method `{s}`"))),
        }
    }
}

/// Projection polynomials grouped by main variable. `level(k)` holds a finest
/// squarefree basis of primitive polynomials whose main variable is `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionLevels {
    pub method: Method,
    levels: Vec<Vec<MultiPoly>>,
}

impl ProjectionLevels {
    pub fn num_vars(&self) -> usize {
        self.levels.len()
    }

    pub fn level(&self, k: usize) -> &[MultiPoly] {
        &self.levels[k]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[MultiPoly]> {
        self.levels.iter().map(Vec::as_slice)
    }

    pub fn all(&self) -> impl Iterator<Item = &MultiPoly> {
        self.levels.iter().flatten()
    }
}

/// Nonzero coefficients from the leading one downward, stopping before the
/// first constant one.
fn truncated_coeffs(f: &MultiPoly, var: usize) -> Vec<MultiPoly> {
    f.nonzero_coefficients(var)
        .into_iter()
        .take_while(|c| !c.is_constant())
        .collect()
}

/// Reducta of positive degree in `var`, stopping after the first one whose
/// leading coefficient is constant.
fn truncated_reducta(f: &MultiPoly, var: usize) -> Vec<MultiPoly> {
    let mut out = Vec::new();
    let mut r = f.clone();
    while r.degree_in(var) > 0 {
        let stop = r.leading_coeff_in(var).is_constant();
        out.push(r.clone());
        if stop {
            break;
        }
        r = r.reductum_in(var, 1).expect("degree is positive");
    }
    out
}

fn collect(out: &mut BTreeSet<MultiPoly>, p: MultiPoly) {
    if !p.is_constant() {
        out.insert(p);
    }
}

/// McCallum's operator: `coeff(B) ∪ discr(B) ∪ res(B)` in variable `var`.
pub fn proj_mccallum(basis: &[MultiPoly], var: usize) -> Result<Vec<MultiPoly>> {
    if var == 0 {
        return Err(Error::NothingToProject);
    }
    let mut out = BTreeSet::new();
    for (i, f) in basis.iter().enumerate() {
        for c in truncated_coeffs(f, var) {
            collect(&mut out, c);
        }
        if f.degree_in(var) >= 2 {
            collect(&mut out, discriminant(f, var)?);
        }
        for g in &basis[i + 1..] {
            if f.degree_in(var) + g.degree_in(var) > 0 {
                collect(&mut out, resultant(f, g, var)?);
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// Collins' operator: `coeff(B) ∪ psd(red(B)) ∪ psc(red(B))` in variable `var`.
pub fn proj_collins(basis: &[MultiPoly], var: usize) -> Result<Vec<MultiPoly>> {
    if var == 0 {
        return Err(Error::NothingToProject);
    }
    let mut out = BTreeSet::new();
    let mut reducta = BTreeSet::new();
    for f in basis {
        for c in truncated_coeffs(f, var) {
            collect(&mut out, c);
        }
        reducta.extend(truncated_reducta(f, var));
    }
    let reducta: Vec<MultiPoly> = reducta.into_iter().collect();
    for (i, r) in reducta.iter().enumerate() {
        for p in psd(r, var)? {
            collect(&mut out, p);
        }
        for s in &reducta[i + 1..] {
            for p in psc_chain(r, s, var)?.iter() {
                if !p.is_zero() {
                    collect(&mut out, p.clone());
                }
            }
        }
    }
    Ok(out.into_iter().collect())
}

pub fn project(basis: &[MultiPoly], var: usize, method: Method) -> Result<Vec<MultiPoly>> {
    match method {
        Method::Collins => proj_collins(basis, var),
        Method::McCallum => proj_mccallum(basis, var),
    }
}

/// Split into content and primitive part repeatedly, filing every
/// nonconstant piece under its main variable.
fn file(pending: &mut [BTreeSet<MultiPoly>], g: &MultiPoly) -> Result<()> {
    if g.is_constant() {
        return Ok(());
    }
    let (c, p) = g.content_primitive()?;
    pending[p.mvar().unwrap()].insert(p);
    file(pending, &c)
}

/// Projection phase over `nvars` variables.
pub fn cad_projection(polys: &[MultiPoly], nvars: usize, method: Method) -> Result<ProjectionLevels> {
    if polys.is_empty() {
        return Err(Error::InvalidInput("no input polynomials".into()));
    }
    let mut pending = vec![BTreeSet::new(); nvars];
    for f in polys {
        if f.is_constant() {
            return Err(Error::InvalidInput(format!("constant input polynomial {f}")));
        }
        if f.mvar().unwrap() >= nvars {
            return Err(Error::InvalidInput(format!("{f} involves an undeclared variable")));
        }
        file(&mut pending, f)?;
    }
    let mut levels = vec![Vec::new(); nvars];
    for k in (0..nvars).rev() {
        let items: Vec<MultiPoly> = std::mem::take(&mut pending[k]).into_iter().collect();
        let basis = finest_squarefree_basis(&items)?;
        info!("projection level {}: {} polynomials", k + 1, basis.len());
        if k > 0 && !basis.is_empty() {
            for q in project(&basis, k, method)? {
                debug_assert!(q.mvar().is_none_or(|m| m < k));
                file(&mut pending, &q)?;
            }
        }
        levels[k] = basis;
    }
    Ok(ProjectionLevels { method, levels })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: usize) -> MultiPoly {
        MultiPoly::var(i)
    }
    fn c(k: i64) -> MultiPoly {
        MultiPoly::constant(k)
    }

    #[test]
    fn mccallum_circle() {
        let circle = v(1).pow(2) + v(0).pow(2) - c(1);
        let out = proj_mccallum(std::slice::from_ref(&circle), 1).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0], c(4) - c(4) * v(0).pow(2));
        let levels = cad_projection(std::slice::from_ref(&circle), 2, Method::McCallum).unwrap();
        assert_eq!(levels.level(1), &[circle]);
        assert_eq!(levels.level(0), &[v(0).pow(2) - c(1)]);
    }

    #[test]
    fn mccallum_lines() {
        let out = proj_mccallum(&[v(1) - v(0), v(1) + v(0)], 1).unwrap();
        assert_eq!(out, vec![c(2) * v(0)]);
        assert!(proj_mccallum(&[v(1).pow(2) + c(1)], 1).unwrap().is_empty());
        assert_eq!(proj_mccallum(&[v(0)], 0), Err(Error::NothingToProject));
    }

    #[test]
    fn collins_examples() {
        let circle = v(1).pow(2) + v(0).pow(2) - c(1);
        let out = proj_collins(&[circle], 1).unwrap();
        assert!(out.contains(&(c(4) * v(0).pow(2) - c(4))));
        let out = proj_collins(&[v(1) * v(0) + c(1)], 1).unwrap();
        assert!(out.contains(&v(0)));
        let out = proj_collins(&[v(1) + v(0)], 1).unwrap();
        assert!(out.is_empty());
    }

    #[test]
    fn projection_w_example() {
        let (x, y, z, w) = (v(0), v(1), v(2), v(3));
        let f = &z * &y - x.pow(2);
        let p = &f + &w.pow(2);
        let levels = cad_projection(std::slice::from_ref(&p), 4, Method::McCallum).unwrap();
        assert_eq!(levels.level(3), &[p]);
        assert_eq!(levels.level(2), &[f]);
        assert_eq!(levels.level(1), &[y]);
        assert_eq!(levels.level(0), &[x]);
    }

    #[test]
    fn projection_rejects_constants() {
        assert!(cad_projection(&[c(3)], 1, Method::McCallum).is_err());
        assert!(cad_projection(&[], 1, Method::McCallum).is_err());
    }
}
