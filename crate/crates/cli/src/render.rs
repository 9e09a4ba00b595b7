//! Output formats: json, text, piecewise and count.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use projcad::algnum::specialize;
use projcad::{AlgebraicCoordinate, Bound, Cad, Cell, Error, MultiPoly, Rational, Result, RootRef, SamplePoint, VarOrder};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Text,
    Piecewise,
    Count,
}

/// Rational as `p/q` (denominator always written).
pub fn rational_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::InvalidInput(format!("malformed rational `{s}`"));
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    let n: BigInt = n.trim().parse().map_err(|_| bad())?;
    let d: BigInt = d.trim().parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoordJson {
    Rational {
        rational: String,
    },
    RootOf {
        #[serde(rename = "rootOf")]
        root_of: String,
        interval: [String; 2],
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellJson {
    pub index: Vec<usize>,
    pub dimension: usize,
    pub sample: Vec<CoordJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WarningJson {
    pub index: Vec<usize>,
    pub polynomial: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CadJson {
    pub variables: Vec<String>,
    pub method: String,
    #[serde(rename = "finalOI")]
    pub final_oi: bool,
    #[serde(rename = "cellCount")]
    pub cell_count: usize,
    pub warnings: Vec<WarningJson>,
    pub cells: Vec<CellJson>,
}

fn coord_json(c: &AlgebraicCoordinate, order: &VarOrder) -> CoordJson {
    match c {
        AlgebraicCoordinate::Rational(r) => CoordJson::Rational {
            rational: rational_string(r),
        },
        AlgebraicCoordinate::RootOf(r) => CoordJson::RootOf {
            root_of: order.fmt_poly(r.poly()),
            interval: [rational_string(&r.interval().lo), rational_string(&r.interval().hi)],
        },
    }
}

pub fn to_json(cad: &Cad) -> CadJson {
    CadJson {
        variables: cad.order.names().to_vec(),
        method: cad.method.to_string(),
        final_oi: cad.final_oi,
        cell_count: cad.cells.len(),
        warnings: cad
            .warnings
            .iter()
            .map(|w| WarningJson {
                index: w.index.clone(),
                polynomial: cad.order.fmt_poly(&w.poly),
            })
            .collect(),
        cells: cad
            .cells
            .iter()
            .map(|c| CellJson {
                index: c.index.clone(),
                dimension: c.dimension(),
                sample: c.sample.coords().iter().map(|x| coord_json(x, &cad.order)).collect(),
            })
            .collect(),
    }
}

fn coord_text(c: &AlgebraicCoordinate, order: &VarOrder) -> String {
    match c {
        AlgebraicCoordinate::Rational(r) => r.to_string(),
        AlgebraicCoordinate::RootOf(r) => format!(
            "root of {} in ({}, {}) ~ {:.6}",
            order.fmt_poly(r.poly()),
            r.interval().lo,
            r.interval().hi,
            c.approx()
        ),
    }
}

fn index_text(index: &[usize]) -> String {
    let parts: Vec<String> = index.iter().map(usize::to_string).collect();
    format!("[{}]", parts.join(", "))
}

/// One line per cell: `index | dimension | sample`.
pub fn to_text(cad: &Cad) -> String {
    let mut out = String::new();
    for c in &cad.cells {
        let sample: Vec<String> = c.sample.coords().iter().map(|x| coord_text(x, &cad.order)).collect();
        let _ = writeln!(out, "{} | {} | {}", index_text(&c.index), c.dimension(), sample.join(", "));
    }
    out
}

fn wrap(s: String) -> String {
    if s.contains(' ') || s.starts_with('-') {
        format!("({s})")
    } else {
        s
    }
}

fn rational_of(p: &MultiPoly) -> Option<Rational> {
    p.constant_value().map(|c| Rational::from_integer(c.clone()))
}

fn quotient(num: &MultiPoly, den: &MultiPoly, order: &VarOrder) -> String {
    if let (Some(n), Some(d)) = (rational_of(num), rational_of(den)) {
        return (n / d).to_string();
    }
    if den.is_one() {
        return order.fmt_poly(num);
    }
    if (-den).is_one() {
        return order.fmt_poly(&-num);
    }
    format!("{}/{}", wrap(order.fmt_poly(num)), wrap(order.fmt_poly(den)))
}

/// Exact square root of a nonnegative rational, if it is one.
fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let (n, d) = (r.numer(), r.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    (&sn * &sn == *n && &sd * &sd == *d).then(|| Rational::new(sn, sd))
}

/// Closed form of a root over the base sample, if one is cheap to write.
/// Over a zero-dimensional base the rational coordinates are substituted;
/// otherwise earlier variables stay symbolic.
pub fn root_expression(r: &RootRef, base: &SamplePoint, zero_dim: bool, order: &VarOrder) -> Result<String> {
    let k = base.len();
    let p = if zero_dim { specialize(&r.poly, base.coords()) } else { r.poly.clone() };
    let mut s = base.clone();
    let mut cs = p.coeffs_in(k);
    while let Some(lc) = cs.last() {
        if s.sign_at(lc)? != 0 {
            break;
        }
        cs.pop();
    }
    let name = order.name(k);
    let fallback = || {
        let poly = MultiPoly::from_coeffs(k, cs.clone());
        format!("root_{}({}, {name})", r.ordinal, order.fmt_poly(&poly))
    };
    match cs.len() {
        2 => Ok(quotient(&-&cs[0], &cs[1], order)),
        3 => {
            let (c, b, a) = (&cs[0], &cs[1], &cs[2]);
            let two_a = MultiPoly::constant(2) * a.clone();
            if r.count == 1 {
                return Ok(quotient(&-b, &two_a, order));
            }
            let lower = r.ordinal == 1;
            let minus = lower == (s.sign_at(a)? > 0);
            let disc = b * b - MultiPoly::constant(4) * (a * c);
            let sign = if minus { "-" } else { "" };
            if let (Some(a), Some(b), Some(d)) = (rational_of(a), rational_of(b), rational_of(&disc)) {
                if let Some(sq) = rational_sqrt(&d) {
                    let sq = if minus { -sq } else { sq };
                    return Ok(((-b + sq) / (Rational::from_integer(2.into()) * a)).to_string());
                }
            }
            if b.is_zero() {
                let radicand = quotient(&-c, a, order);
                return Ok(format!("{sign}sqrt({radicand})"));
            }
            let pm = if minus { "-" } else { "+" };
            Ok(format!(
                "({} {pm} sqrt({}))/{}",
                order.fmt_poly(&-b),
                order.fmt_poly(&disc),
                wrap(order.fmt_poly(&two_a))
            ))
        }
        _ => Ok(fallback()),
    }
}

/// Condition on coordinate `k` of `cell`.
pub fn condition(cell: &Cell, k: usize, order: &VarOrder) -> Result<String> {
    let base = cell.sample.prefix(k);
    let zero_dim = cell.index[..k].iter().all(|i| i % 2 == 0);
    let v = order.name(k);
    let e = |r: &RootRef| root_expression(r, &base, zero_dim, order);
    Ok(match &cell.description[k] {
        Bound::Whole => format!("{v} free"),
        Bound::Below(r) => format!("{v} < {}", e(r)?),
        Bound::Equal(r) => format!("{v} = {}", e(r)?),
        Bound::Between(l, r) => format!("{} < {v} < {}", e(l)?, e(r)?),
        Bound::Above(l) => format!("{} < {v}", e(l)?),
    })
}

/// Node of the piecewise tree: one condition per level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Branch {
    pub condition: String,
    pub index: Vec<usize>,
    pub children: Vec<Branch>,
}

fn build_branches(cells: &[&Cell], k: usize, order: &VarOrder) -> Result<Vec<Branch>> {
    let mut out: Vec<Branch> = Vec::new();
    let mut i = 0;
    while i < cells.len() {
        let pos = cells[i].index[k];
        let j = i + cells[i..].iter().take_while(|c| c.index[k] == pos).count();
        let group = &cells[i..j];
        let children = if k + 1 < group[0].index.len() {
            build_branches(group, k + 1, order)?
        } else {
            Vec::new()
        };
        out.push(Branch {
            condition: condition(group[0], k, order)?,
            index: group[0].index[..=k].to_vec(),
            children,
        });
        i = j;
    }
    Ok(out)
}

pub fn piecewise_tree(cad: &Cad) -> Result<Vec<Branch>> {
    let cells: Vec<&Cell> = cad.cells.iter().collect();
    build_branches(&cells, 0, &cad.order)
}

fn write_branches(out: &mut String, branches: &[Branch], depth: usize) {
    for b in branches {
        let pad = "  ".repeat(depth);
        if b.children.is_empty() {
            let _ = writeln!(out, "{pad}{}    {}", b.condition, index_text(&b.index));
        } else {
            let _ = writeln!(out, "{pad}{}", b.condition);
            write_branches(out, &b.children, depth + 1);
        }
    }
}

pub fn to_piecewise(cad: &Cad) -> Result<String> {
    let mut out = String::new();
    write_branches(&mut out, &piecewise_tree(cad)?, 0);
    Ok(out)
}

pub fn render(cad: &Cad, format: Format) -> Result<String> {
    Ok(match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&to_json(cad)).expect("serializable");
            s.push('\n');
            s
        }
        Format::Text => to_text(cad),
        Format::Piecewise => to_piecewise(cad)?,
        Format::Count => format!("{}\n", cad.cells.len()),
    })
}

/// Index, dimension and rational sample coordinates (`None` for algebraic ones).
pub type CellRecord = (Vec<usize>, usize, Vec<Option<Rational>>);

/// Cell list read back from JSON output.
pub fn cells_from_json(text: &str) -> Result<Vec<CellRecord>> {
    let doc: CadJson = serde_json::from_str(text).map_err(|e| Error::InvalidInput(e.to_string()))?;
    doc.cells
        .into_iter()
        .map(|c| {
            let coords = c
                .sample
                .iter()
                .map(|x| match x {
                    CoordJson::Rational { rational } => parse_rational(rational).map(Some),
                    CoordJson::RootOf { .. } => Ok(None),
                })
                .collect::<Result<Vec<_>>>()?;
            Ok((c.index, c.dimension, coords))
        })
        .collect()
}
