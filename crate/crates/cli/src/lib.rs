//! Command-line front end for projcad: problem parsing, rendering and the
//! built-in example suite.

pub mod examples;
pub mod parse;
pub mod render;

use projcad::{cad_full, Cad, CadOptions, Error, Result};

pub use parse::{parse_input, Problem};
pub use render::{render, Format};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_NOT_WELL_ORIENTED: i32 = 2;

pub fn compute(problem: &Problem, opts: CadOptions) -> Result<Cad> {
    cad_full(&problem.polys, &problem.order, opts)
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotWellOriented { .. } => EXIT_NOT_WELL_ORIENTED,
        _ => EXIT_INPUT,
    }
}

/// Diagnostic line for a nullification warning.
pub fn warning_message(cad: &Cad, index: &[usize], poly: &projcad::MultiPoly) -> String {
    let conds: Vec<String> = cad
        .cells
        .iter()
        .find(|c| c.index.starts_with(index))
        .map(|c| {
            (0..index.len())
                .map(|k| render::condition(c, k, &cad.order).unwrap_or_else(|e| e.to_string()))
                .collect()
        })
        .unwrap_or_default();
    format!(
        "warning: {} vanishes identically over the positive-dimensional cell {:?} ({}); the output may not be order-invariant",
        cad.order.fmt_poly(poly),
        index,
        conds.join(", ")
    )
}
