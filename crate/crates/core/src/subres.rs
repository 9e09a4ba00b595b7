//! Resultants, discriminants and principal subresultant coefficients.
//!
//! The production route is the subresultant polynomial remainder sequence;
//! [`sylvester_resultant`] evaluates the Sylvester determinant directly and is
//! kept as an independent cross-check.

use crate::error::{Error, Result};
use crate::poly::{prem_coeffs, MultiPoly};

/// Principal subresultant coefficients `psc_0 ..= psc_m` of a pair regarded as
/// univariate in `var`, `m = min(deg f, deg g)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PscChain {
    pub var: usize,
    pub f: MultiPoly,
    pub g: MultiPoly,
    coeffs: Vec<MultiPoly>,
}

impl PscChain {
    /// `psc_j`; `None` when `j` exceeds the chain length.
    pub fn get(&self, j: usize) -> Option<&MultiPoly> {
        self.coeffs.get(j)
    }

    pub fn resultant(&self) -> &MultiPoly {
        &self.coeffs[0]
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &MultiPoly> {
        self.coeffs.iter()
    }
}

fn lc(v: &[MultiPoly]) -> &MultiPoly {
    v.last().unwrap()
}

fn div_all(v: &[MultiPoly], d: &MultiPoly) -> Vec<MultiPoly> {
    v.iter()
        .map(|c| c.exact_div(d).expect("subresultant division is exact"))
        .collect()
}

/// Chain for `deg a >= deg b >= 0`, both nonzero coefficient vectors.
fn chain_ordered(a: &[MultiPoly], b: &[MultiPoly]) -> Vec<MultiPoly> {
    let p = a.len() - 1;
    let q = b.len() - 1;
    let mut psc = vec![MultiPoly::zero(); q + 1];
    let mut s = lc(b).pow(p - q);
    psc[q] = s.clone();
    if q == 0 {
        return psc;
    }
    let mut big = b.to_vec();
    let mut small = prem_coeffs(a, b);
    if (p - q + 1) % 2 == 1 {
        small = small.iter().map(|c| -c).collect();
    }
    while !small.is_empty() {
        let d = big.len() - 1;
        let e = small.len() - 1;
        // small == S_{d-1}
        if e == d - 1 {
            psc[d - 1] = lc(&small).clone();
        }
        let delta = d - e;
        let next = if delta > 1 {
            let scale = lc(&small).pow(delta - 1);
            let den = s.pow(delta - 1);
            let scaled: Vec<MultiPoly> = small.iter().map(|c| c * &scale).collect();
            div_all(&scaled, &den)
        } else {
            small.clone()
        };
        // next == S_e
        psc[e] = lc(&next).clone();
        if e == 0 {
            break;
        }
        let neg_small: Vec<MultiPoly> = small.iter().map(|c| -c).collect();
        let r = prem_coeffs(&big, &neg_small);
        let den = &s.pow(delta) * lc(&big);
        small = div_all(&r, &den);
        big = next;
        s = lc(&big).clone();
    }
    psc
}

/// Principal subresultant coefficients of `f` and `g` in `var`.
pub fn psc_chain(f: &MultiPoly, g: &MultiPoly, var: usize) -> Result<PscChain> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let fc = f.coeffs_in(var);
    let gc = g.coeffs_in(var);
    let (m, n) = (fc.len() - 1, gc.len() - 1);
    if m == 0 && n == 0 {
        return Err(Error::ResultantUndefined { var });
    }
    let coeffs = if m >= n {
        chain_ordered(&fc, &gc)
    } else {
        chain_ordered(&gc, &fc)
            .into_iter()
            .enumerate()
            .map(|(j, c)| if ((m - j) * (n - j)) % 2 == 1 { -c } else { c })
            .collect()
    };
    Ok(PscChain {
        var,
        f: f.clone(),
        g: g.clone(),
        coeffs,
    })
}

/// `res_var(f, g)` via the subresultant chain.
pub fn resultant(f: &MultiPoly, g: &MultiPoly, var: usize) -> Result<MultiPoly> {
    Ok(psc_chain(f, g, var)?.coeffs.swap_remove(0))
}

/// Fraction-free (Bareiss) determinant over the polynomial ring.
pub fn determinant(mut m: Vec<Vec<MultiPoly>>) -> MultiPoly {
    let n = m.len();
    if n == 0 {
        return MultiPoly::one();
    }
    let mut negate = false;
    let mut prev = MultiPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return MultiPoly::zero();
            };
            m.swap(k, r);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = t.exact_div(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Sylvester matrix of `f` (degree m) and `g` (degree n) in `var`: n shifted
/// rows of `f` followed by m shifted rows of `g`, highest degree first.
pub fn sylvester_matrix(f: &MultiPoly, g: &MultiPoly, var: usize) -> Vec<Vec<MultiPoly>> {
    let fc = f.coeffs_in(var);
    let gc = g.coeffs_in(var);
    let (m, n) = (fc.len() - 1, gc.len() - 1);
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for (cs, shifts) in [(&fc, n), (&gc, m)] {
        for i in 0..shifts {
            let mut row = vec![MultiPoly::zero(); size];
            for (k, c) in cs.iter().rev().enumerate() {
                row[i + k] = c.clone();
            }
            rows.push(row);
        }
    }
    rows
}

/// `res_var(f, g)` as the determinant of the Sylvester matrix.
pub fn sylvester_resultant(f: &MultiPoly, g: &MultiPoly, var: usize) -> Result<MultiPoly> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (m, n) = (f.degree_in(var), g.degree_in(var));
    match (m, n) {
        (0, 0) => Err(Error::ResultantUndefined { var }),
        (0, _) => Ok(f.pow(n)),
        (_, 0) => Ok(g.pow(m)),
        _ => Ok(determinant(sylvester_matrix(f, g, var))),
    }
}

/// `(-1)^(d(d-1)/2) res(f, f') / lc(f)` in `var`.
pub fn discriminant(f: &MultiPoly, var: usize) -> Result<MultiPoly> {
    let d = f.degree_in(var);
    if d < 2 {
        return Err(Error::DiscriminantUndefined { degree: d });
    }
    let r = resultant(f, &f.derivative(var), var)?;
    let q = r.exact_div(&f.leading_coeff_in(var))?;
    Ok(if (d * (d - 1) / 2) % 2 == 1 { -q } else { q })
}

/// Nonzero elements of `{psc_j(f, f') : 0 <= j < deg f}`.
pub fn psd(f: &MultiPoly, var: usize) -> Result<Vec<MultiPoly>> {
    let d = f.degree_in(var);
    if d == 0 {
        return Ok(Vec::new());
    }
    let chain = psc_chain(f, &f.derivative(var), var)?;
    Ok(chain.coeffs.into_iter().take(d).filter(|c| !c.is_zero()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> MultiPoly {
        MultiPoly::var(0)
    }
    fn y() -> MultiPoly {
        MultiPoly::var(1)
    }
    fn c(k: i64) -> MultiPoly {
        MultiPoly::constant(k)
    }

    #[test]
    fn sylvester_examples() {
        assert_eq!(sylvester_resultant(&(x() - c(1)), &(x() + c(1)), 0).unwrap(), c(2));
        assert_eq!(sylvester_resultant(&(x().pow(2) - c(1)), &(x() - c(1)), 0).unwrap(), c(0));
        let circle = y().pow(2) + x().pow(2) - c(1);
        assert_eq!(sylvester_resultant(&circle, &y(), 1).unwrap(), x().pow(2) - c(1));
        assert!(sylvester_resultant(&c(2), &c(3), 0).is_err());
    }

    #[test]
    fn psc_examples() {
        // y^2 + cc, 2y with cc = x^2 - 1
        let cc = x().pow(2) - c(1);
        let f = y().pow(2) + cc.clone();
        let chain = psc_chain(&f, &(c(2) * y()), 1).unwrap();
        assert_eq!(chain.len(), 2);
        assert_eq!(chain.get(0).unwrap(), &(c(4) * cc));
        assert_eq!(chain.get(1).unwrap(), &c(2));
    }

    #[test]
    fn discriminant_examples() {
        let circle = y().pow(2) + x().pow(2) - c(1);
        assert_eq!(discriminant(&circle, 1).unwrap(), c(4) - c(4) * x().pow(2));
        assert_eq!(discriminant(&(x().pow(2) - c(2)), 0).unwrap(), c(8));
        let z = MultiPoly::var(2);
        let f = &z * &y() - x().pow(2);
        assert_eq!(discriminant(&f, 1), Err(Error::DiscriminantUndefined { degree: 1 }));
    }

    #[test]
    fn psd_examples() {
        let circle = y().pow(2) + x().pow(2) - c(1);
        let s = psd(&circle, 1).unwrap();
        assert_eq!(s, vec![c(4) * x().pow(2) - c(4), c(2)]);
        assert_eq!(psd(&(y() + x()), 1).unwrap(), vec![c(1)]);
        assert!(psd(&(x() + c(3)), 1).unwrap().is_empty());
    }
}
