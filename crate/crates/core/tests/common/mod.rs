#![allow(dead_code)]

use std::collections::HashMap;

use projcad::MultiPoly;
use proptest::prelude::*;

pub fn term(coeff: i64, exps: &[usize]) -> MultiPoly {
    exps.iter()
        .enumerate()
        .fold(MultiPoly::constant(coeff), |acc, (v, &e)| &acc * &MultiPoly::monomial(v, e))
}

/// Random polynomial in `nvars` variables with degree at most `max_deg` in
/// each variable and total degree at most `max_deg + 1`.
pub fn arb_poly(nvars: usize, max_deg: usize, max_terms: usize) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec(
        (-6i64..=6, prop::collection::vec(0..=max_deg, nvars)),
        1..=max_terms,
    )
    .prop_map(move |terms| {
        terms
            .into_iter()
            .filter(|(_, e)| e.iter().sum::<usize>() <= max_deg + 1)
            .fold(MultiPoly::zero(), |acc, (c, e)| &acc + &term(c, &e))
    })
}

/// Determinant by cofactor expansion along rows, memoized on the set of
/// remaining columns. Independent of the Bareiss routine in the library.
pub fn cofactor_det(m: &[Vec<MultiPoly>]) -> MultiPoly {
    fn go(m: &[Vec<MultiPoly>], row: usize, cols: u32, memo: &mut HashMap<u32, MultiPoly>) -> MultiPoly {
        if row == m.len() {
            return MultiPoly::one();
        }
        if let Some(v) = memo.get(&cols) {
            return v.clone();
        }
        let mut acc = MultiPoly::zero();
        let mut pos = 0;
        for c in 0..m.len() {
            if cols & (1 << c) == 0 {
                continue;
            }
            if !m[row][c].is_zero() {
                let minor = go(m, row + 1, cols & !(1 << c), memo);
                let t = &m[row][c] * &minor;
                acc = if pos % 2 == 0 { &acc + &t } else { &acc - &t };
            }
            pos += 1;
        }
        memo.insert(cols, acc.clone());
        acc
    }
    let n = m.len();
    go(m, 0, if n == 0 { 0 } else { (1u32 << n) - 1 }, &mut HashMap::new())
}

/// `psc_j(f, g)` in `var` from its defining minor of the Sylvester matrix.
pub fn psc_by_minor(f: &MultiPoly, g: &MultiPoly, var: usize, j: usize) -> MultiPoly {
    let fc = f.coeffs_in(var);
    let gc = g.coeffs_in(var);
    let (m, n) = (fc.len() - 1, gc.len() - 1);
    let width = m + n - j;
    let size = m + n - 2 * j;
    let mut rows = Vec::new();
    for (cs, count) in [(&fc, n - j), (&gc, m - j)] {
        for i in 0..count {
            let mut row = vec![MultiPoly::zero(); width];
            for (k, c) in cs.iter().rev().enumerate() {
                row[i + k] = c.clone();
            }
            rows.push(row[..size].to_vec());
        }
    }
    cofactor_det(&rows)
}
