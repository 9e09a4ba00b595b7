//! Exact sparse multivariate polynomials over the integers.
//!
//! A polynomial is stored recursively: a univariate polynomial in its main
//! variable whose coefficients are polynomials in strictly smaller variables.
//! Variables are identified by their index in a [`VarOrder`]; index 0 is the
//! least significant variable (the one lifted first, projected last).

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Ordered, duplicate-free list of variable names, least significant first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarOrder {
    names: Vec<String>,
}

impl VarOrder {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::VarOrder("no variables".into()));
        }
        let mut seen = BTreeSet::new();
        for n in &names {
            let valid = n
                .chars()
                .next()
                .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(Error::VarOrder(format!("`{n}` is not an identifier")));
            }
            if !seen.insert(n.as_str()) {
                return Err(Error::VarOrder(format!("duplicate variable `{n}`")));
            }
        }
        Ok(VarOrder { names })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, var: usize) -> &str {
        &self.names[var]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Render `p` in the input grammar using these variable names.
    pub fn fmt_poly(&self, p: &MultiPoly) -> String {
        p.to_string_with(|v| self.names.get(v).cloned().unwrap_or_else(|| format!("x{}", v + 1)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Repr {
    Const(BigInt),
    /// `coeffs[k]` multiplies `var^k`; at least two entries, last nonzero,
    /// every coefficient has main variable below `var`.
    Uni { var: usize, coeffs: Vec<MultiPoly> },
}

/// Canonical multivariate integer polynomial.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiPoly(Repr);

fn trim(v: &mut Vec<MultiPoly>) {
    while v.last().is_some_and(MultiPoly::is_zero) {
        v.pop();
    }
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly(Repr::Const(BigInt::zero()))
    }

    pub fn one() -> Self {
        MultiPoly(Repr::Const(BigInt::one()))
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        MultiPoly(Repr::Const(c.into()))
    }

    pub fn var(v: usize) -> Self {
        MultiPoly(Repr::Uni {
            var: v,
            coeffs: vec![Self::zero(), Self::one()],
        })
    }

    /// `var^exp`.
    pub fn monomial(v: usize, exp: usize) -> Self {
        if exp == 0 {
            return Self::one();
        }
        let mut coeffs = vec![Self::zero(); exp + 1];
        coeffs[exp] = Self::one();
        MultiPoly(Repr::Uni { var: v, coeffs })
    }

    /// Assemble from coefficients that only involve variables below `var`.
    fn from_coeffs_raw(var: usize, mut coeffs: Vec<MultiPoly>) -> Self {
        trim(&mut coeffs);
        match coeffs.len() {
            0 => Self::zero(),
            1 => coeffs.pop().unwrap(),
            _ => {
                debug_assert!(coeffs.iter().all(|c| c.mvar().is_none_or(|m| m < var)));
                MultiPoly(Repr::Uni { var, coeffs })
            }
        }
    }

    /// `sum_k coeffs[k] * var^k`; the coefficients may involve any variable.
    pub fn from_coeffs(var: usize, coeffs: Vec<MultiPoly>) -> Self {
        if coeffs.iter().all(|c| c.mvar().is_none_or(|m| m < var)) {
            return Self::from_coeffs_raw(var, coeffs);
        }
        let x = Self::var(var);
        coeffs
            .into_iter()
            .rev()
            .fold(Self::zero(), |acc, c| &(&acc * &x) + &c)
    }

    pub fn is_zero(&self) -> bool {
        matches!(&self.0, Repr::Const(c) if c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(&self.0, Repr::Const(c) if c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        matches!(self.0, Repr::Const(_))
    }

    pub fn constant_value(&self) -> Option<&BigInt> {
        match &self.0 {
            Repr::Const(c) => Some(c),
            Repr::Uni { .. } => None,
        }
    }

    /// Greatest variable present, `None` for constants.
    pub fn mvar(&self) -> Option<usize> {
        match &self.0 {
            Repr::Const(_) => None,
            Repr::Uni { var, .. } => Some(*var),
        }
    }

    /// Degree in the main variable (0 for constants).
    pub fn degree(&self) -> usize {
        match &self.0 {
            Repr::Const(_) => 0,
            Repr::Uni { coeffs, .. } => coeffs.len() - 1,
        }
    }

    pub fn degree_in(&self, v: usize) -> usize {
        match &self.0 {
            Repr::Const(_) => 0,
            Repr::Uni { var, coeffs } => match (*var).cmp(&v) {
                Ordering::Equal => coeffs.len() - 1,
                Ordering::Less => 0,
                Ordering::Greater => coeffs.iter().map(|c| c.degree_in(v)).max().unwrap_or(0),
            },
        }
    }

    pub fn total_degree(&self) -> usize {
        match &self.0 {
            Repr::Const(_) => 0,
            Repr::Uni { coeffs, .. } => coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| k + c.total_degree())
                .max()
                .unwrap_or(0),
        }
    }

    pub fn involves(&self, v: usize) -> bool {
        match &self.0 {
            Repr::Const(_) => false,
            Repr::Uni { var, coeffs } => {
                *var == v || (*var > v && coeffs.iter().any(|c| c.involves(v)))
            }
        }
    }

    pub fn variables(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<usize>) {
        if let Repr::Uni { var, coeffs } = &self.0 {
            out.insert(*var);
            coeffs.iter().for_each(|c| c.collect_vars(out));
        }
    }

    /// Coefficients in the main variable, lowest degree first.
    pub fn coeffs(&self) -> Vec<MultiPoly> {
        match &self.0 {
            Repr::Const(_) => vec![self.clone()],
            Repr::Uni { coeffs, .. } => coeffs.clone(),
        }
    }

    /// Coefficients of `self` regarded as univariate in `v`, lowest degree first.
    pub fn coeffs_in(&self, v: usize) -> Vec<MultiPoly> {
        match &self.0 {
            Repr::Const(_) => vec![self.clone()],
            Repr::Uni { var, coeffs } => match (*var).cmp(&v) {
                Ordering::Equal => coeffs.clone(),
                Ordering::Less => vec![self.clone()],
                Ordering::Greater => {
                    let parts: Vec<Vec<MultiPoly>> = coeffs.iter().map(|c| c.coeffs_in(v)).collect();
                    let d = parts.iter().map(Vec::len).max().unwrap_or(1);
                    (0..d)
                        .map(|k| {
                            let cs = parts
                                .iter()
                                .map(|p| p.get(k).cloned().unwrap_or_else(Self::zero))
                                .collect();
                            Self::from_coeffs_raw(*var, cs)
                        })
                        .collect()
                }
            },
        }
    }

    /// Leading coefficient in the main variable.
    pub fn leading_coeff(&self) -> MultiPoly {
        match &self.0 {
            Repr::Const(_) => self.clone(),
            Repr::Uni { coeffs, .. } => coeffs.last().unwrap().clone(),
        }
    }

    pub fn leading_coeff_in(&self, v: usize) -> MultiPoly {
        self.coeffs_in(v).pop().unwrap()
    }

    /// Leading integer coefficient under recursive lexicographic order.
    pub fn leading_base_coeff(&self) -> &BigInt {
        match &self.0 {
            Repr::Const(c) => c,
            Repr::Uni { coeffs, .. } => coeffs.last().unwrap().leading_base_coeff(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> MultiPoly {
        if k.is_zero() {
            return Self::zero();
        }
        self.map_base(&|c| c * k)
    }

    fn map_base(&self, f: &dyn Fn(&BigInt) -> BigInt) -> MultiPoly {
        match &self.0 {
            Repr::Const(c) => Self::constant(f(c)),
            Repr::Uni { var, coeffs } => {
                Self::from_coeffs_raw(*var, coeffs.iter().map(|c| c.map_base(f)).collect())
            }
        }
    }

    fn for_each_base(&self, f: &mut dyn FnMut(&BigInt)) {
        match &self.0 {
            Repr::Const(c) => f(c),
            Repr::Uni { coeffs, .. } => coeffs.iter().for_each(|c| c.for_each_base(f)),
        }
    }

    /// Gcd of all integer coefficients (nonnegative).
    pub fn integer_content(&self) -> BigInt {
        let mut g = BigInt::zero();
        self.for_each_base(&mut |c| g = g.gcd(c));
        g
    }

    /// Largest absolute integer coefficient.
    pub fn max_abs_coeff(&self) -> BigInt {
        let mut m = BigInt::zero();
        self.for_each_base(&mut |c| {
            if c.abs() > m {
                m = c.abs()
            }
        });
        m
    }

    pub fn pow(&self, e: usize) -> MultiPoly {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Sign-normalized associate: positive leading base coefficient.
    pub fn normalized(&self) -> MultiPoly {
        if self.leading_base_coeff().is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Primitive (integer and polynomial content removed), sign-normalized
    /// associate. Used as the set key for deduplication.
    pub fn canonical_associate(&self) -> MultiPoly {
        if self.is_zero() {
            return self.clone();
        }
        if self.is_constant() {
            return Self::one();
        }
        let (_, p) = self.content_primitive().expect("nonzero");
        p
    }

    /// Formal partial derivative.
    pub fn derivative(&self, v: usize) -> MultiPoly {
        match &self.0 {
            Repr::Const(_) => Self::zero(),
            Repr::Uni { var, coeffs } => match (*var).cmp(&v) {
                Ordering::Less => Self::zero(),
                Ordering::Equal => Self::from_coeffs_raw(
                    *var,
                    coeffs
                        .iter()
                        .enumerate()
                        .skip(1)
                        .map(|(k, c)| c.scale(&BigInt::from(k)))
                        .collect(),
                ),
                Ordering::Greater => {
                    Self::from_coeffs_raw(*var, coeffs.iter().map(|c| c.derivative(v)).collect())
                }
            },
        }
    }

    /// `red^k` in variable `v`: remove the `k` highest-degree terms.
    pub fn reductum_in(&self, v: usize, k: usize) -> Result<MultiPoly> {
        let degree = self.degree_in(v);
        if k > degree {
            return Err(Error::ReductumOutOfRange { k, degree });
        }
        let mut cs = self.coeffs_in(v);
        for _ in 0..k {
            cs.pop();
            trim(&mut cs);
        }
        Ok(Self::from_coeffs(v, cs))
    }

    /// `red^k` in the main variable.
    pub fn reductum(&self, k: usize) -> Result<MultiPoly> {
        match self.mvar() {
            Some(v) => self.reductum_in(v, k),
            None if k == 0 => Ok(self.clone()),
            None => Err(Error::ReductumOutOfRange { k, degree: 0 }),
        }
    }

    /// All nonzero coefficients in variable `v`, highest degree first.
    pub fn nonzero_coefficients(&self, v: usize) -> Vec<MultiPoly> {
        let mut cs: Vec<_> = self.coeffs_in(v).into_iter().filter(|c| !c.is_zero()).collect();
        cs.reverse();
        cs
    }

    /// `den^d * self(v = num/den)` where `d = deg_v(self)`; the positive factor
    /// keeps the result integral without changing signs.
    pub fn subst_rational(&self, v: usize, r: &BigRational) -> MultiPoly {
        if !self.involves(v) {
            return self.clone();
        }
        let cs = self.coeffs_in(v);
        let d = cs.len() - 1;
        let (num, den) = (r.numer(), r.denom());
        let mut acc = Self::zero();
        let mut num_pow = BigInt::one();
        for (k, c) in cs.iter().enumerate() {
            let factor = &num_pow * den.pow((d - k) as u32);
            acc = &acc + &c.scale(&factor);
            num_pow *= num;
        }
        acc
    }

    /// Evaluate at a rational point; `point[i]` is the value of variable `i`.
    /// Returns `None` if a variable beyond the point is present.
    pub fn eval_rational(&self, point: &[BigRational]) -> Option<BigRational> {
        match &self.0 {
            Repr::Const(c) => Some(BigRational::from_integer(c.clone())),
            Repr::Uni { var, coeffs } => {
                let x = point.get(*var)?;
                let mut acc = BigRational::zero();
                for c in coeffs.iter().rev() {
                    acc = acc * x + c.eval_rational(point)?;
                }
                Some(acc)
            }
        }
    }

    /// Exact quotient `self / d`; errors if `d` does not divide `self`.
    pub fn exact_div(&self, d: &MultiPoly) -> Result<MultiPoly> {
        if d.is_zero() {
            return Err(Error::InexactDivision);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        if let Some(k) = d.constant_value() {
            if k.is_one() {
                return Ok(self.clone());
            }
            let mut ok = true;
            self.for_each_base(&mut |c| ok &= c.is_multiple_of(k));
            if !ok {
                return Err(Error::InexactDivision);
            }
            return Ok(self.map_base(&|c| c / k));
        }
        let v = d.mvar().unwrap();
        match self.mvar() {
            None => Err(Error::InexactDivision),
            Some(u) if u < v => Err(Error::InexactDivision),
            Some(u) if u > v => {
                let cs = self
                    .coeffs()
                    .iter()
                    .map(|c| c.exact_div(d))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Self::from_coeffs_raw(u, cs))
            }
            Some(_) => {
                let dc = d.coeffs();
                let dlc = dc.last().unwrap();
                let mut r = self.coeffs();
                if r.len() < dc.len() {
                    return Err(Error::InexactDivision);
                }
                let mut q = vec![Self::zero(); r.len() - dc.len() + 1];
                while !r.is_empty() && r.len() >= dc.len() {
                    let k = r.len() - dc.len();
                    let t = r.last().unwrap().exact_div(dlc)?;
                    for (i, c) in dc.iter().enumerate() {
                        r[k + i] = &r[k + i] - &(&t * c);
                    }
                    q[k] = t;
                    if !r.last().unwrap().is_zero() {
                        return Err(Error::InexactDivision);
                    }
                    trim(&mut r);
                }
                if !r.is_empty() {
                    return Err(Error::InexactDivision);
                }
                Ok(Self::from_coeffs_raw(v, q))
            }
        }
    }

    pub fn divides(&self, f: &MultiPoly) -> bool {
        f.exact_div(self).is_ok()
    }

    /// Sign-normalized greatest common divisor.
    pub fn gcd(&self, other: &MultiPoly) -> Result<MultiPoly> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::ZeroGcd);
        }
        Ok(gcd_inner(self, other).normalized())
    }

    /// Gcd of the coefficients in variable `v` (sign-normalized).
    pub fn content_in(&self, v: usize) -> MultiPoly {
        self.coeffs_in(v)
            .iter()
            .fold(Self::zero(), |g, c| gcd_inner(&g, c))
            .normalized()
    }

    /// `(content, primitive part)` with respect to the main variable; the
    /// primitive part is sign-normalized and `content * primpart == self`.
    pub fn content_primitive(&self) -> Result<(MultiPoly, MultiPoly)> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let Some(v) = self.mvar() else {
            return Ok((self.clone(), Self::one()));
        };
        let mut c = self.content_in(v);
        let mut p = self.exact_div(&c).expect("content divides");
        if p.leading_base_coeff().is_negative() {
            p = -p;
            c = -c;
        }
        Ok((c, p))
    }

    pub fn primitive_part(&self) -> Result<MultiPoly> {
        Ok(self.content_primitive()?.1)
    }

    /// `self / gcd(self, d self / d mvar)`, sign-normalized.
    pub fn squarefree_part(&self) -> Result<MultiPoly> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let Some(v) = self.mvar() else {
            return Ok(Self::one());
        };
        let g = self.gcd(&self.derivative(v))?;
        Ok(self.exact_div(&g)?.normalized())
    }

    /// Yun squarefree decomposition in the main variable: pairwise coprime
    /// squarefree factors `a_i` with `self = c * prod a_i^i`. Constant factors
    /// are omitted.
    pub fn squarefree_factors(&self) -> Result<Vec<MultiPoly>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let Some(v) = self.mvar() else {
            return Ok(Vec::new());
        };
        let f = self.primitive_part()?;
        let df = f.derivative(v);
        let b = f.gcd(&df)?;
        let mut c = f.exact_div(&b)?;
        let mut d = &df.exact_div(&b)? - &c.derivative(v);
        let mut out = Vec::new();
        while c.involves(v) {
            let a = c.gcd(&d)?;
            if a.involves(v) {
                out.push(a.normalized());
            }
            c = c.exact_div(&a)?;
            d = &d.exact_div(&a)? - &c.derivative(v);
        }
        Ok(out)
    }

    /// Expanded terms: (exponent per variable index, coefficient).
    pub fn terms(&self) -> Vec<(Vec<usize>, BigInt)> {
        let nvars = self.mvar().map_or(0, |v| v + 1);
        let mut out = Vec::new();
        self.collect_terms(&mut vec![0; nvars], &mut out);
        // highest variable dominates, descending
        out.sort_by(|a, b| b.0.iter().rev().cmp(a.0.iter().rev()));
        out
    }

    fn collect_terms(&self, exps: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, BigInt)>) {
        match &self.0 {
            Repr::Const(c) => {
                if !c.is_zero() {
                    out.push((exps.clone(), c.clone()));
                }
            }
            Repr::Uni { var, coeffs } => {
                for (k, c) in coeffs.iter().enumerate() {
                    exps[*var] = k;
                    c.collect_terms(exps, out);
                }
                exps[*var] = 0;
            }
        }
    }

    pub fn to_string_with(&self, name: impl Fn(usize) -> String) -> String {
        let terms = self.terms();
        if terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (exps, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = exps
                .iter()
                .enumerate()
                .filter(|(_, e)| **e > 0)
                .map(|(v, e)| if *e == 1 { name(v) } else { format!("{}^{}", name(v), e) })
                .collect();
            if mono.is_empty() {
                s.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    s.push_str(&abs.to_string());
                    s.push('*');
                }
                s.push_str(&mono.join("*"));
            }
        }
        s
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(|v| format!("x{}", v + 1)))
    }
}

impl From<i64> for MultiPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl From<BigInt> for MultiPoly {
    fn from(c: BigInt) -> Self {
        Self::constant(c)
    }
}

fn add_impl(a: &MultiPoly, b: &MultiPoly, sub: bool) -> MultiPoly {
    use Repr::*;
    match (&a.0, &b.0) {
        (Const(x), Const(y)) => MultiPoly::constant(if sub { x - y } else { x + y }),
        _ => {
            let (va, vb) = (a.mvar(), b.mvar());
            if va > vb {
                let mut cs = a.coeffs();
                cs[0] = add_impl(&cs[0], b, sub);
                MultiPoly::from_coeffs_raw(va.unwrap(), cs)
            } else if vb > va {
                let mut cs: Vec<_> = if sub { b.coeffs().iter().map(|c| -c).collect() } else { b.coeffs() };
                cs[0] = &cs[0] + a;
                MultiPoly::from_coeffs_raw(vb.unwrap(), cs)
            } else {
                let (ca, cb) = (a.coeffs(), b.coeffs());
                let n = ca.len().max(cb.len());
                let z = MultiPoly::zero();
                let cs = (0..n)
                    .map(|k| add_impl(ca.get(k).unwrap_or(&z), cb.get(k).unwrap_or(&z), sub))
                    .collect();
                MultiPoly::from_coeffs_raw(va.unwrap(), cs)
            }
        }
    }
}

fn mul_impl(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    use Repr::*;
    if a.is_zero() || b.is_zero() {
        return MultiPoly::zero();
    }
    match (&a.0, &b.0) {
        (Const(x), Const(y)) => MultiPoly::constant(x * y),
        _ => {
            let (va, vb) = (a.mvar(), b.mvar());
            if va > vb {
                MultiPoly::from_coeffs_raw(va.unwrap(), a.coeffs().iter().map(|c| mul_impl(c, b)).collect())
            } else if vb > va {
                MultiPoly::from_coeffs_raw(vb.unwrap(), b.coeffs().iter().map(|c| mul_impl(a, c)).collect())
            } else {
                let (ca, cb) = (a.coeffs(), b.coeffs());
                let mut cs = vec![MultiPoly::zero(); ca.len() + cb.len() - 1];
                for (i, x) in ca.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in cb.iter().enumerate() {
                        cs[i + j] = &cs[i + j] + &mul_impl(x, y);
                    }
                }
                MultiPoly::from_coeffs_raw(va.unwrap(), cs)
            }
        }
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        add_impl(self, rhs, false)
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        add_impl(self, rhs, true)
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        mul_impl(self, rhs)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.map_base(&|c| -c)
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$m(rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

/// Pseudo-remainder of coefficient vectors: `lc(b)^(da-db+1) a = q b + r`.
pub(crate) fn prem_coeffs(a: &[MultiPoly], b: &[MultiPoly]) -> Vec<MultiPoly> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    if r.len() < b.len() {
        return r;
    }
    let lcb = &b[db];
    let mut e = r.len() - b.len() + 1;
    while !r.is_empty() && r.len() > db {
        let k = r.len() - 1 - db;
        let lcr = r.last().unwrap().clone();
        for c in r.iter_mut() {
            *c = &*c * lcb;
        }
        for (i, c) in b.iter().enumerate() {
            r[k + i] = &r[k + i] - &(&lcr * c);
        }
        r.pop();
        trim(&mut r);
        e -= 1;
    }
    if e > 0 {
        let f = lcb.pow(e);
        for c in r.iter_mut() {
            *c = &*c * &f;
        }
    }
    r
}

/// Divide a coefficient vector by the gcd of its entries.
fn primitive_coeffs(cs: Vec<MultiPoly>) -> Vec<MultiPoly> {
    let g = cs.iter().fold(MultiPoly::zero(), |g, c| gcd_inner(&g, c));
    if g.is_one() || g.is_zero() {
        return cs;
    }
    cs.iter().map(|c| c.exact_div(&g).expect("content divides")).collect()
}

fn gcd_inner(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    let v = match (a.mvar(), b.mvar()) {
        (None, None) => {
            return MultiPoly::constant(a.constant_value().unwrap().gcd(b.constant_value().unwrap()));
        }
        (x, y) => x.max(y).unwrap(),
    };
    if a.mvar() != Some(v) {
        return gcd_inner(a, &b.content_in(v));
    }
    if b.mvar() != Some(v) {
        return gcd_inner(&a.content_in(v), b);
    }
    let ca = a.content_in(v);
    let cb = b.content_in(v);
    let pa = a.exact_div(&ca).expect("content divides").coeffs();
    let pb = b.exact_div(&cb).expect("content divides").coeffs();
    let c = gcd_inner(&ca, &cb);
    let (mut f, mut g) = if pa.len() >= pb.len() { (pa, pb) } else { (pb, pa) };
    loop {
        let r = prem_coeffs(&f, &g);
        if r.is_empty() {
            break;
        }
        if r.len() == 1 {
            g = vec![MultiPoly::one()];
            break;
        }
        f = g;
        g = primitive_coeffs(r);
    }
    let g = MultiPoly::from_coeffs_raw(v, primitive_coeffs(g));
    &c * &g
}

/// Gcd-refinement of a set of nonconstant polynomials into a pairwise coprime,
/// squarefree, primitive, sign-normalized set generating the same factors.
pub fn finest_squarefree_basis(polys: &[MultiPoly]) -> Result<Vec<MultiPoly>> {
    let mut work: BTreeSet<MultiPoly> = BTreeSet::new();
    for p in polys {
        if p.is_constant() {
            continue;
        }
        for s in p.squarefree_factors()? {
            work.insert(s);
        }
    }
    loop {
        let items: Vec<MultiPoly> = work.iter().cloned().collect();
        let mut split = None;
        'search: for i in 0..items.len() {
            for j in i + 1..items.len() {
                let g = items[i].gcd(&items[j])?;
                if !g.is_constant() {
                    split = Some((i, j, g));
                    break 'search;
                }
            }
        }
        let Some((i, j, g)) = split else { break };
        work.remove(&items[i]);
        work.remove(&items[j]);
        for q in [items[i].exact_div(&g)?, items[j].exact_div(&g)?, g] {
            if !q.is_constant() {
                work.insert(q.normalized());
            }
        }
    }
    Ok(work.into_iter().collect())
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
    fn ring_arithmetic_examples() {
        let p = (x() + c(1)) * (x() - c(1));
        assert_eq!(p, x().pow(2) - c(1));
        assert_eq!(&p + &MultiPoly::zero(), p);
        assert_eq!(p.exact_div(&(x() - c(1))).unwrap(), x() + c(1));
        assert_eq!(p.exact_div(&(x() - c(2))), Err(Error::InexactDivision));
    }

    #[test]
    fn gcd_examples() {
        let a = x().pow(2) - c(1);
        assert_eq!(a.gcd(&(x() - c(1))).unwrap(), x() - c(1));
        assert_eq!((c(2) * x()).gcd(&(c(4) * x().pow(2))).unwrap(), c(2) * x());
        let circle = x().pow(2) + y().pow(2) - c(1);
        assert_eq!(circle.gcd(&x()).unwrap(), c(1));
        assert_eq!(MultiPoly::zero().gcd(&MultiPoly::zero()), Err(Error::ZeroGcd));
    }

    #[test]
    fn content_primitive_examples() {
        let z = MultiPoly::var(2);
        let f = &y() * &z.pow(2) + y().pow(2) * z.clone();
        let (cont, prim) = f.content_primitive().unwrap();
        assert_eq!(cont, y());
        assert_eq!(prim, z.pow(2) + &y() * &z);
        let circle = x().pow(2) + y().pow(2) - c(1);
        assert_eq!(circle.content_primitive().unwrap(), (c(1), circle.clone()));
        let g = c(6) * x().pow(2) + c(4) * x();
        assert_eq!(g.content_primitive().unwrap(), (c(2), c(3) * x().pow(2) + c(2) * x()));
        assert_eq!(MultiPoly::zero().content_primitive(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn squarefree_examples() {
        let f = (x() - c(1)).pow(2) * (x() + c(2));
        assert_eq!(f.squarefree_part().unwrap(), (x() - c(1)) * (x() + c(2)));
        let g = x().pow(2) + c(1);
        assert_eq!(g.squarefree_part().unwrap(), g);
        assert_eq!(y().pow(2).squarefree_part().unwrap(), y());
        let h = &y() * &(y() + c(1)).pow(2);
        assert_eq!(h.squarefree_factors().unwrap(), vec![y(), y() + c(1)]);
    }

    #[test]
    fn basis_examples() {
        let b = finest_squarefree_basis(&[x().pow(2) - c(1), x() - c(1)]).unwrap();
        assert_eq!(b, vec![x() - c(1), x() + c(1)].into_iter().collect::<BTreeSet<_>>().into_iter().collect::<Vec<_>>());
        let b = finest_squarefree_basis(&[x().pow(2) + c(1)]).unwrap();
        assert_eq!(b, vec![x().pow(2) + c(1)]);
        let b = finest_squarefree_basis(&[(x() - c(1)).pow(2), x() + c(2)]).unwrap();
        assert_eq!(b.len(), 2);
        assert!(b.contains(&(x() - c(1))) && b.contains(&(x() + c(2))));
    }

    #[test]
    fn structural_examples() {
        let f = c(3) * x().pow(2) + c(2) * x() + c(1);
        assert_eq!(f.reductum(1).unwrap(), c(2) * x() + c(1));
        assert_eq!(f.reductum(2).unwrap(), c(1));
        assert!(matches!(f.reductum(3), Err(Error::ReductumOutOfRange { .. })));
        let circle = x().pow(2) + y().pow(2) - c(1);
        assert_eq!(circle.nonzero_coefficients(1), vec![c(1), x().pow(2) - c(1)]);
        assert_eq!((y().pow(2) + x()).derivative(1), c(2) * y());
        assert_eq!(circle.coeffs_in(0), vec![y().pow(2) - c(1), c(0), c(1)]);
    }

    #[test]
    fn subst_and_display() {
        let circle = x().pow(2) + y().pow(2) - c(1);
        let half = BigRational::new(1.into(), 2.into());
        // 4 * (1/4 + y^2 - 1)
        assert_eq!(circle.subst_rational(0, &half), c(4) * y().pow(2) - c(3));
        let order = VarOrder::new(["x", "y"]).unwrap();
        assert_eq!(order.fmt_poly(&circle), "y^2 + x^2 - 1");
        assert_eq!(order.fmt_poly(&(c(-2) * &x() * &y() + c(3))), "-2*x*y + 3");
    }

    #[test]
    fn var_order_validation() {
        assert!(VarOrder::new(Vec::<String>::new()).is_err());
        assert!(VarOrder::new(["x", "x"]).is_err());
        assert!(VarOrder::new(["1x"]).is_err());
    }
}
