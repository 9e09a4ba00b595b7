//! Problem files: a `vars:` header followed by one polynomial per line.
//!
//! ```text
//! # unit circle
//! vars: x, y
//! x^2 + y^2 - 1
//! ```

use num_bigint::BigInt;
use projcad::{Error, MultiPoly, Result, VarOrder};

const MAX_EXPONENT: usize = 1000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Problem {
    pub order: VarOrder,
    pub polys: Vec<MultiPoly>,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
}

fn lex(text: &str, line: usize, col0: usize) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = col0 + i;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i < chars.len() && (chars[i] == '.' || chars[i] == 'e' || chars[i] == 'E') {
                return Err(err(line, col, "non-integer coefficient"));
            }
            let s: String = chars[start..i].iter().collect();
            out.push((Tok::Int(s.parse().expect("digits")), col));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else if "+-*^()".contains(c) {
            out.push((Tok::Sym(c), col));
            i += 1;
        } else if c == '/' || c == '.' {
            return Err(err(line, col, "non-integer coefficient"));
        } else {
            return Err(err(line, col, format!("unexpected character `{c}`")));
        }
    }
    out.push((Tok::End, col0 + chars.len()));
    Ok(out)
}

impl Lexer {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn col(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == &Tok::Sym(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn unexpected(&self) -> Error {
        let what = match self.peek() {
            Tok::End => "unexpected end of expression".to_string(),
            Tok::Int(n) => format!("unexpected number `{n}`"),
            Tok::Ident(s) => format!("unexpected identifier `{s}`"),
            Tok::Sym(c) => format!("unexpected `{c}`"),
        };
        err(self.line, self.col(), what)
    }
}

struct Parser<'a> {
    lx: Lexer,
    order: &'a VarOrder,
}

impl Parser<'_> {
    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = self.term()?;
        loop {
            if self.lx.eat('+') {
                acc = acc + self.term()?;
            } else if self.lx.eat('-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.unary()?;
        while self.lx.eat('*') {
            acc = acc * self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MultiPoly> {
        if self.lx.eat('-') {
            return Ok(-self.unary()?);
        }
        if self.lx.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if !self.lx.eat('^') {
            return Ok(base);
        }
        let col = self.lx.col();
        match self.lx.peek() {
            Tok::Int(n) => {
                let e = usize::try_from(n)
                    .ok()
                    .filter(|&e| e <= MAX_EXPONENT)
                    .ok_or_else(|| err(self.lx.line, col, format!("exponent exceeds {MAX_EXPONENT}")))?;
                self.lx.bump();
                Ok(base.pow(e))
            }
            _ => Err(err(self.lx.line, col, "exponent must be a nonnegative integer")),
        }
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        let col = self.lx.col();
        match self.lx.peek().clone() {
            Tok::Int(n) => {
                self.lx.bump();
                Ok(MultiPoly::constant(n))
            }
            Tok::Ident(name) => {
                self.lx.bump();
                let v = self
                    .order
                    .index_of(&name)
                    .ok_or_else(|| err(self.lx.line, col, format!("undeclared variable `{name}`")))?;
                Ok(MultiPoly::var(v))
            }
            Tok::Sym('(') => {
                self.lx.bump();
                let e = self.expr()?;
                if !self.lx.eat(')') {
                    return Err(match self.lx.peek() {
                        Tok::End => err(self.lx.line, col, "unclosed `(`"),
                        _ => self.lx.unexpected(),
                    });
                }
                Ok(e)
            }
            _ => Err(self.lx.unexpected()),
        }
    }
}

/// Parse one expression over `order`. `line` and `col0` locate `text` in its
/// file for error messages (both 1-based).
pub fn parse_poly_at(text: &str, order: &VarOrder, line: usize, col0: usize) -> Result<MultiPoly> {
    let toks = lex(text, line, col0)?;
    let mut p = Parser {
        lx: Lexer { toks, pos: 0, line },
        order,
    };
    let e = p.expr()?;
    if p.lx.peek() != &Tok::End {
        return Err(p.lx.unexpected());
    }
    Ok(e)
}

pub fn parse_poly(text: &str, order: &VarOrder) -> Result<MultiPoly> {
    parse_poly_at(text, order, 1, 1)
}

/// Parse a whole problem file.
pub fn parse_input(text: &str) -> Result<Problem> {
    let mut order: Option<VarOrder> = None;
    let mut polys = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        let indent = body.len() - body.trim_start().len();
        let trimmed = body.trim_start();
        match &order {
            None => {
                let Some(rest) = trimmed.strip_prefix("vars:") else {
                    return Err(err(line, indent + 1, "expected `vars:` header"));
                };
                let names: Vec<&str> = rest.split(',').map(str::trim).collect();
                let o = VarOrder::new(names.iter().copied()).map_err(|e| {
                    let msg = match e {
                        Error::VarOrder(m) => m,
                        other => other.to_string(),
                    };
                    err(line, indent + 1, msg)
                })?;
                order = Some(o);
            }
            Some(o) => {
                if trimmed.starts_with("vars:") {
                    return Err(err(line, indent + 1, "duplicate `vars:` header"));
                }
                let p = parse_poly_at(body, o, line, 1)?;
                if p.is_constant() {
                    return Err(err(line, indent + 1, "constant polynomial"));
                }
                polys.push(p);
            }
        }
    }
    let order = order.ok_or_else(|| err(1, 1, "missing `vars:` header"))?;
    if polys.is_empty() {
        return Err(err(text.lines().count().max(1), 1, "no polynomials"));
    }
    Ok(Problem { order, polys })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let p = parse_input("vars: x, y\nx^2 + y^2 - 1").unwrap();
        assert_eq!(p.order.names(), &["x", "y"]);
        let (x, y) = (MultiPoly::var(0), MultiPoly::var(1));
        assert_eq!(p.polys, vec![x.pow(2) + y.pow(2) - MultiPoly::one()]);
        let p = parse_input("vars: x\n2*x - 3").unwrap();
        assert_eq!(p.polys, vec![MultiPoly::constant(2) * x.clone() - MultiPoly::constant(3)]);
        assert_eq!(
            parse_input("vars: x\nx^-1"),
            Err(Error::Parse { line: 2, column: 3, message: "exponent must be a nonnegative integer".into() })
        );
    }

    #[test]
    fn grammar() {
        let o = VarOrder::new(["x", "y"]).unwrap();
        let (x, y) = (MultiPoly::var(0), MultiPoly::var(1));
        assert_eq!(parse_poly("-x^2", &o).unwrap(), -x.pow(2));
        assert_eq!(parse_poly("(x - y)^2", &o).unwrap(), (&x - &y).pow(2));
        assert_eq!(parse_poly("2*(x+1)*y - -3", &o).unwrap(), MultiPoly::constant(2) * (&x + &MultiPoly::one()) * y + MultiPoly::constant(3));
        assert_eq!(parse_poly("x^0", &o).unwrap(), MultiPoly::one());
    }

    #[test]
    fn errors() {
        let bad = |s: &str| match parse_input(s) {
            Err(Error::Parse { line, column, message }) => (line, column, message),
            other => panic!("{other:?}"),
        };
        assert_eq!(bad("vars: x\nx + q").2, "undeclared variable `q`");
        assert_eq!(bad("vars: x\nx + q").1, 5);
        assert_eq!(bad("vars: x\n# c\n1.5*x").0, 3);
        assert_eq!(bad("vars: x\n1.5*x").2, "non-integer coefficient");
        assert_eq!(bad("vars: x\nx/2").2, "non-integer coefficient");
        assert_eq!(bad("x + 1").2, "expected `vars:` header");
        assert_eq!(bad("vars: x, x\nx").2, "duplicate variable `x`");
        assert_eq!(bad("vars: x\n(x + 1").2, "unclosed `(`");
        assert_eq!(bad("vars: x\nx x").1, 3);
        assert_eq!(bad("vars: x\n# nothing").2, "no polynomials");
    }

    #[test]
    fn comments() {
        let p = parse_input("# header\nvars: x # base\n\nx - 1 # root\n  x + 1\n").unwrap();
        assert_eq!(p.polys.len(), 2);
    }
}
