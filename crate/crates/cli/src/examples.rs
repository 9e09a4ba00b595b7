//! Built-in example problems with their expected outcomes.

use std::time::{Duration, Instant};

use projcad::{cad_full, CadOptions, Method, Result};

use crate::parse::{parse_input, Problem};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expect {
    Cells(usize),
    /// A nullification warning on the cell with this index.
    WarningAt(&'static [usize]),
}

#[derive(Clone, Copy, Debug)]
pub struct Example {
    pub name: &'static str,
    pub source: &'static str,
    pub method: Method,
    pub final_oi: bool,
    pub expect: Expect,
}

pub const EXAMPLES: &[Example] = &[
    Example {
        name: "circle",
        source: "vars: x, y\nx^2 + y^2 - 1\n",
        method: Method::McCallum,
        final_oi: false,
        expect: Expect::Cells(13),
    },
    Example {
        name: "zy-x2",
        source: "vars: x, y, z\nz*y - x^2\n",
        method: Method::McCallum,
        final_oi: false,
        expect: Expect::Cells(21),
    },
    Example {
        name: "zy-x2-oi",
        source: "vars: x, y, z\nz*y - x^2\n",
        method: Method::McCallum,
        final_oi: true,
        expect: Expect::Cells(23),
    },
    Example {
        name: "w-example",
        source: "vars: x, y, z, w\nz*y - x^2 + w^2\n",
        method: Method::McCallum,
        final_oi: false,
        expect: Expect::Cells(73),
    },
    // the nullification of y*w + x over x = y = 0 happens on the final lift,
    // which is only checked when order-invariance is requested
    Example {
        name: "warn-4var",
        source: "vars: x, y, z, w\ny*w + x\n",
        method: Method::McCallum,
        final_oi: true,
        expect: Expect::WarningAt(&[2, 2, 1]),
    },
];

pub fn find(name: &str) -> Option<&'static Example> {
    EXAMPLES.iter().find(|e| e.name == name)
}

impl Example {
    pub fn problem(&self) -> Problem {
        parse_input(self.source).expect("built-in example parses")
    }

    pub fn options(&self) -> CadOptions {
        CadOptions {
            method: self.method,
            final_oi: self.final_oi,
            strict: false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub name: &'static str,
    pub cells: usize,
    pub warnings: Vec<Vec<usize>>,
    pub passed: bool,
    pub elapsed: Duration,
}

pub fn run(example: &Example) -> Result<Outcome> {
    let p = example.problem();
    let start = Instant::now();
    let cad = cad_full(&p.polys, &p.order, example.options())?;
    let elapsed = start.elapsed();
    let warnings: Vec<Vec<usize>> = cad.warnings.iter().map(|w| w.index.clone()).collect();
    let passed = match example.expect {
        Expect::Cells(n) => cad.cells.len() == n && warnings.is_empty(),
        Expect::WarningAt(idx) => warnings.iter().any(|w| w == idx),
    };
    Ok(Outcome {
        name: example.name,
        cells: cad.cells.len(),
        warnings,
        passed,
        elapsed,
    })
}

pub fn table(outcomes: &[Outcome]) -> String {
    let mut out = format!("{:<10} {:>6} {:>9} {:>10}  result\n", "example", "cells", "warnings", "time");
    for o in outcomes {
        let expected = find(o.name).map(|e| match e.expect {
            Expect::Cells(n) => format!("expected {n} cells"),
            Expect::WarningAt(i) => format!("expected warning at {i:?}"),
        });
        out.push_str(&format!(
            "{:<10} {:>6} {:>9} {:>9.3}s  {} ({})\n",
            o.name,
            o.cells,
            o.warnings.len(),
            o.elapsed.as_secs_f64(),
            if o.passed { "pass" } else { "FAIL" },
            expected.unwrap_or_default()
        ));
    }
    out
}
