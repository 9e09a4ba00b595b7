//! Acceptance checks, one line per criterion. Exits nonzero if any fails.

use std::collections::HashMap;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use projcad::cad::check_samples;
use projcad::lifting::minimal_delineating_polynomial;
use projcad::subres::{discriminant, psc_chain, resultant};
use projcad::{
    cad_full, check_cylindricity, verify_sign_invariance, Cad, CadOptions, Method, MultiPoly, Rational, SamplePoint,
    VarOrder,
};
use projcad_cli::render::{condition, piecewise_tree};
use projcad_cli::{parse_input, EXIT_NOT_WELL_ORIENTED};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn build(src: &str, method: Method, final_oi: bool) -> Result<(Cad, Vec<MultiPoly>, Duration), String> {
    let p = parse_input(src).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let cad = cad_full(&p.polys, &p.order, CadOptions { method, final_oi, strict: false }).map_err(|e| e.to_string())?;
    Ok((cad, p.polys, start.elapsed()))
}

const CIRCLE: &str = "vars: x, y\nx^2 + y^2 - 1\n";
const ZY: &str = "vars: x, y, z\nz*y - x^2\n";
const W: &str = "vars: x, y, z, w\nz*y - x^2 + w^2\n";
const WARN: &str = "vars: x, y, z, w\ny*w + x\n";

fn within(t: Duration, limit: Duration) -> Result<(), String> {
    ensure(t < limit, format!("took {:.3}s, limit {:.0?}", t.as_secs_f64(), limit))
}

fn c1() -> Check {
    let (cad, _, t) = build(CIRCLE, Method::McCallum, false)?;
    within(t, Duration::from_secs(1))?;
    ensure(cad.cells.len() == 13, format!("{} cells", cad.cells.len()))?;
    let tree = piecewise_tree(&cad).map_err(|e| e.to_string())?;
    let shape: Vec<usize> = tree.iter().map(|b| b.children.len()).collect();
    ensure(shape == [1, 3, 5, 3, 1], format!("branches {shape:?}"))?;
    Ok(format!("13 cells, branches {shape:?}, {:.3}s", t.as_secs_f64()))
}

fn c2() -> Check {
    let (plain, _, t1) = build(ZY, Method::McCallum, false)?;
    let (oi, _, t2) = build(ZY, Method::McCallum, true)?;
    within(t1 + t2, Duration::from_secs(5))?;
    ensure(plain.cells.len() == 21, format!("{} cells without finalOI", plain.cells.len()))?;
    ensure(oi.cells.len() == 23, format!("{} cells with finalOI", oi.cells.len()))?;
    let over = |cad: &Cad| cad.cells.iter().filter(|c| c.index.starts_with(&[2, 2])).count();
    ensure(over(&plain) == 1 && over(&oi) == 3, "extra cells not over [2, 2]")?;
    let origin = oi.cell(&[2, 2, 1]).and_then(|c| c.sample.prefix(2).to_rationals());
    let zero = Rational::from_integer(0.into());
    ensure(origin == Some(vec![zero.clone(), zero]), "cell [2, 2] is not x = y = 0")?;
    ensure(oi.delineations.iter().any(|d| d.index == [2, 2]), "no delineation at [2, 2]")?;
    Ok(format!("21 / 23 cells, split over x = y = 0, {:.3}s", (t1 + t2).as_secs_f64()))
}

fn c3() -> Check {
    let (cad, _, t) = build(W, Method::McCallum, false)?;
    within(t, Duration::from_secs(30))?;
    ensure(cad.cells.len() == 73, format!("{} cells", cad.cells.len()))?;
    ensure(cad.warnings.is_empty(), format!("warnings {:?}", cad.warnings))?;
    let z = MultiPoly::var(2);
    let d = cad.delineations.iter().find(|d| d.index == [2, 2]);
    ensure(
        d.is_some_and(|d| d.delineating.as_ref() == Some(&z)),
        format!("delineation at [2, 2]: {d:?}"),
    )?;
    Ok(format!("73 cells, no warning, delineating z, {:.3}s", t.as_secs_f64()))
}

fn c4() -> Check {
    let (x, y, z) = (MultiPoly::var(0), MultiPoly::var(1), MultiPoly::var(2));
    let origin = SamplePoint::from_rationals([Rational::from_integer(0.into()), Rational::from_integer(0.into())]);
    let a = minimal_delineating_polynomial(&(&z * &y - x.pow(2)), &origin).map_err(|e| e.to_string())?;
    ensure(a == Some(z.clone()), format!("zy - x^2 gave {a:?}"))?;
    let b = minimal_delineating_polynomial(&(&z * &y - x), &origin).map_err(|e| e.to_string())?;
    ensure(b.is_none(), format!("zy - x gave {b:?}"))?;
    Ok("z and None".into())
}

fn c5() -> Check {
    let (cad, _, t) = build(WARN, Method::McCallum, true)?;
    within(t, Duration::from_secs(1))?;
    let w = cad.warnings.iter().find(|w| w.index == [2, 2, 1]);
    ensure(w.is_some(), format!("warnings {:?}", cad.warnings))?;
    let cell = cad.cells.iter().find(|c| c.index.starts_with(&[2, 2, 1])).ok_or("no cell over [2, 2, 1]")?;
    let conds = (0..3)
        .map(|k| condition(cell, k, &cad.order))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    ensure(conds == ["x = 0", "y = 0", "z free"], format!("cell is {conds:?}"))?;

    let path = std::env::temp_dir().join(format!("projcad-acceptance-{}.txt", std::process::id()));
    std::fs::write(&path, WARN).map_err(|e| e.to_string())?;
    let status = Command::new(env!("CARGO_BIN_EXE_projcad"))
        .args(["compute", "--input"])
        .arg(&path)
        .args(["--final-oi", "--strict", "--output", "count"])
        .output()
        .map_err(|e| e.to_string())?
        .status;
    let _ = std::fs::remove_file(&path);
    ensure(status.code() == Some(EXIT_NOT_WELL_ORIENTED), format!("strict run exited with {status}"))?;
    Ok(format!("warning at {}, strict exit 2, {:.3}s", conds.join(", "), t.as_secs_f64()))
}

/// Determinant by cofactor expansion, memoized on the remaining columns.
fn cofactor_det(m: &[Vec<MultiPoly>]) -> MultiPoly {
    fn go(m: &[Vec<MultiPoly>], row: usize, cols: u32, memo: &mut HashMap<u32, MultiPoly>) -> MultiPoly {
        if row == m.len() {
            return MultiPoly::one();
        }
        if let Some(v) = memo.get(&cols) {
            return v.clone();
        }
        let mut acc = MultiPoly::zero();
        for (pos, c) in (0..m.len()).filter(|c| cols & (1 << c) != 0).enumerate() {
            if !m[row][c].is_zero() {
                let t = &m[row][c] * &go(m, row + 1, cols & !(1 << c), memo);
                acc = if pos % 2 == 0 { &acc + &t } else { &acc - &t };
            }
        }
        memo.insert(cols, acc.clone());
        acc
    }
    go(m, 0, (1u32 << m.len()) - 1, &mut HashMap::new())
}

/// `psc_j(f, g)` as the leading minor of the shifted coefficient rows.
fn psc_minor(f: &MultiPoly, g: &MultiPoly, var: usize, j: usize) -> MultiPoly {
    let (fc, gc) = (f.coeffs_in(var), g.coeffs_in(var));
    let (m, n) = (fc.len() - 1, gc.len() - 1);
    let size = m + n - 2 * j;
    let mut rows = Vec::new();
    for (cs, count) in [(&fc, n - j), (&gc, m - j)] {
        for i in 0..count {
            let mut row = vec![MultiPoly::zero(); m + n];
            for (k, c) in cs.iter().rev().enumerate() {
                row[i + k] = c.clone();
            }
            row.truncate(size);
            rows.push(row);
        }
    }
    cofactor_det(&rows)
}

/// Random polynomial in `nvars` variables of total degree at most 4 with
/// positive degree in the last one.
fn random_poly(rng: &mut ChaCha8Rng, nvars: usize, min_deg: usize) -> MultiPoly {
    loop {
        let mut p = MultiPoly::zero();
        for _ in 0..rng.gen_range(1..=6) {
            let mut budget = rng.gen_range(0..=4usize);
            let mut t = MultiPoly::constant(rng.gen_range(-5i64..=5));
            for v in (0..nvars).rev() {
                let e = rng.gen_range(0..=budget);
                budget -= e;
                t = &t * &MultiPoly::var(v).pow(e);
            }
            p = &p + &t;
        }
        if p.degree_in(nvars - 1) >= min_deg {
            return p;
        }
    }
}

fn c6() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let err = |e: projcad::Error| e.to_string();
    for case in 0..500 {
        let nv = rng.gen_range(1..=3);
        let v = nv - 1;
        let f = random_poly(&mut rng, nv, 1);
        let g = random_poly(&mut rng, nv, 1);
        let h = random_poly(&mut rng, nv, 1);
        let ctx = |what: &str| format!("case {case}: {what} fails for f = {f}, g = {g}, h = {h}");

        let chain = psc_chain(&f, &g, v).map_err(err)?;
        ensure(chain.resultant() == &psc_minor(&f, &g, v, 0), ctx("psc0 = Sylvester resultant"))?;

        let k = f.degree_in(v).min(g.degree_in(v));
        ensure(chain.len() == k + 1, ctx("chain length"))?;
        for j in 0..=k {
            ensure(chain.get(j) == Some(&psc_minor(&f, &g, v, j)), ctx(&format!("psc_{j} = minor")))?;
        }

        let gh = &g * &h;
        let lhs = resultant(&f, &gh, v).map_err(err)?;
        let rhs = &resultant(&f, &g, v).map_err(err)? * &resultant(&f, &h, v).map_err(err)?;
        ensure(lhs == rhs, ctx("res(f, gh) = res(f, g) res(f, h)"))?;

        if f.degree_in(v) >= 2 {
            let ld = &f.leading_coeff_in(v) * &discriminant(&f, v).map_err(err)?;
            let psc0 = psc_minor(&f, &f.derivative(v), v, 0);
            ensure(ld == psc0 || ld == -psc0, ctx("lc discr = +-psc0(f, f')"))?;
        }
    }
    Ok("500 cases".into())
}

fn structure(cad: &Cad, name: &str) -> Result<usize, String> {
    let report = check_cylindricity(&cad.cells);
    ensure(report.passed(), format!("{name}: {:?}", report.problems))?;
    let problems = check_samples(&cad.cells).map_err(|e| e.to_string())?;
    ensure(problems.is_empty(), format!("{name}: {problems:?}"))?;
    let mut located = 0;
    for cell in &cad.cells {
        if let Some(pt) = cell.sample.to_rationals() {
            let found = cad.locate_point(&pt).map_err(|e| e.to_string())?;
            ensure(found.index == cell.index, format!("{name}: {:?} located in {:?}", cell.index, found.index))?;
            located += 1;
        }
    }
    Ok(located)
}

type Named = (&'static str, Cad, Vec<MultiPoly>);

fn example_cads() -> Result<Vec<Named>, String> {
    let mut out = Vec::new();
    for (name, src, fo) in [("circle", CIRCLE, false), ("zy-x2", ZY, false), ("zy-x2-oi", ZY, true), ("w-example", W, false)] {
        let (cad, polys, _) = build(src, Method::McCallum, fo)?;
        out.push((name, cad, polys));
    }
    Ok(out)
}

fn c7() -> Check {
    let mut located = 0;
    let mut cells = 0;
    for (name, cad, _) in example_cads()? {
        located += structure(&cad, name)?;
        cells += cad.cells.len();
    }
    let (cad, _, _) = build(CIRCLE, Method::Collins, false)?;
    located += structure(&cad, "circle (Collins)")?;
    Ok(format!("{cells} cells, {located} rational samples located"))
}

fn c8() -> Check {
    let mut points = 0;
    let check = |cad: &Cad, polys: &[MultiPoly], seed: u64, name: &str| -> Result<usize, String> {
        let r = verify_sign_invariance(cad, polys, 16, seed).map_err(|e| format!("{name}: {e}"))?;
        ensure(r.passed(), format!("{name}: {:?}", r.failure))?;
        Ok(r.points_checked)
    };
    for (name, cad, polys) in example_cads()? {
        points += check(&cad, &polys, 8, name)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let order = VarOrder::new(["x", "y"]).map_err(|e| e.to_string())?;
    for case in 0..50 {
        let p = loop {
            let mut p = MultiPoly::zero();
            for _ in 0..rng.gen_range(1..=5) {
                let a = rng.gen_range(0..=3usize);
                let b = rng.gen_range(0..=3 - a);
                let t = MultiPoly::constant(rng.gen_range(-4i64..=4)) * MultiPoly::var(0).pow(a) * MultiPoly::var(1).pow(b);
                p = &p + &t;
            }
            if !p.is_constant() {
                break p;
            }
        };
        let cad = cad_full(std::slice::from_ref(&p), &order, CadOptions::default()).map_err(|e| e.to_string())?;
        points += check(&cad, std::slice::from_ref(&p), case, &format!("random {p}"))?;
    }
    Ok(format!("{points} random points agree"))
}

fn c9() -> Check {
    let (cad, polys, t) = build(CIRCLE, Method::Collins, false)?;
    ensure(cad.cells.len() == 13, format!("{} cells", cad.cells.len()))?;
    let r = verify_sign_invariance(&cad, &polys, 16, 9).map_err(|e| e.to_string())?;
    ensure(r.passed(), format!("{:?}", r.failure))?;
    Ok(format!("13 cells, {:.3}s", t.as_secs_f64()))
}

fn main() -> ExitCode {
    let criteria: [(usize, fn() -> Check); 9] =
        [(1, c1), (2, c2), (3, c3), (4, c4), (5, c5), (6, c6), (7, c7), (8, c8), (9, c9)];
    let mut failed = 0;
    for (n, f) in criteria {
        match f() {
            Ok(detail) => println!("criterion {n}: PASS ({detail})"),
            Err(why) => {
                failed += 1;
                println!("criterion {n}: FAIL ({why})");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
