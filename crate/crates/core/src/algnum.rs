//! Real algebraic sample points.
//!
//! A sample point is a triangular chain of coordinates. Coordinate `k` is
//! either a rational or the unique root, inside a rational isolating
//! interval, of a defining polynomial in `x_0 .. x_k` once the earlier
//! coordinates are substituted. Signs are decided exactly:
//!
//! * rational coordinates are substituted directly;
//! * a polynomial `q` vanishes at a root coordinate iff its gcd with the
//!   defining polynomial over the fiber changes sign on the isolating
//!   interval (the gcd divides a squarefree polynomial with exactly one root
//!   there);
//! * otherwise the value is nonzero and interval evaluation with repeated
//!   bisection of the coordinates eventually excludes zero.
//!
//! Polynomials "over the fiber" are coefficient vectors in the current
//! variable whose coefficients involve only earlier variables; their leading
//! coefficients are trimmed until they are nonzero at the prefix.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::{prem_coeffs, MultiPoly};

pub type Rational = BigRational;

fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Closed rational interval used for interval arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn point(x: Rational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    fn add(&self, o: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
        }
    }

    fn mul(&self, o: &Interval) -> Interval {
        let p = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = p.iter().min().unwrap().clone();
        let hi = p.iter().max().unwrap().clone();
        Interval { lo, hi }
    }

    /// Sign if the interval excludes zero.
    pub fn sign(&self) -> Option<i8> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(0)
        } else {
            None
        }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }
}

/// Open isolating interval with rational endpoints that are not roots, or a
/// degenerate interval `[r, r]` for an exact rational root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsolatingInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl IsolatingInterval {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Rational) -> bool {
        if self.is_exact() {
            x == &self.lo
        } else {
            &self.lo < x && x < &self.hi
        }
    }
}

/// A root of `poly` (main variable = this coordinate) in `(lo, hi)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootOf {
    poly: MultiPoly,
    interval: IsolatingInterval,
    /// Sign of `poly(prefix, lo)`; never zero.
    sign_lo: i8,
}

impl RootOf {
    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }

    pub fn interval(&self) -> &IsolatingInterval {
        &self.interval
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraicCoordinate {
    Rational(Rational),
    RootOf(RootOf),
}

use AlgebraicCoordinate as Coord;

impl AlgebraicCoordinate {
    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Coord::Rational(r) => Some(r),
            Coord::RootOf(_) => None,
        }
    }

    /// Rational lower and upper bounds (equal for rationals).
    pub fn bounds(&self) -> (&Rational, &Rational) {
        match self {
            Coord::Rational(r) => (r, r),
            Coord::RootOf(r) => (&r.interval.lo, &r.interval.hi),
        }
    }

    fn interval(&self) -> Interval {
        let (lo, hi) = self.bounds();
        Interval {
            lo: lo.clone(),
            hi: hi.clone(),
        }
    }

    pub fn approx(&self) -> f64 {
        let (lo, hi) = self.bounds();
        ((lo + hi) / rat(2)).to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for AlgebraicCoordinate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coord::Rational(r) => write!(f, "{r}"),
            Coord::RootOf(r) => write!(f, "root of {} in ({}, {})", r.poly, r.interval.lo, r.interval.hi),
        }
    }
}

/// Triangular chain of coordinates for `x_0 .. x_{k-1}`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SamplePoint {
    coords: Vec<AlgebraicCoordinate>,
}

impl SamplePoint {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_rationals(xs: impl IntoIterator<Item = Rational>) -> Self {
        SamplePoint {
            coords: xs.into_iter().map(Coord::Rational).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[AlgebraicCoordinate] {
        &self.coords
    }

    pub fn coords_mut(&mut self) -> &mut [AlgebraicCoordinate] {
        &mut self.coords
    }

    pub fn push(&mut self, c: AlgebraicCoordinate) {
        self.coords.push(c);
    }

    pub fn extended(&self, c: AlgebraicCoordinate) -> SamplePoint {
        let mut s = self.clone();
        s.push(c);
        s
    }

    pub fn prefix(&self, k: usize) -> SamplePoint {
        SamplePoint {
            coords: self.coords[..k].to_vec(),
        }
    }

    pub fn to_rationals(&self) -> Option<Vec<Rational>> {
        self.coords.iter().map(|c| c.as_rational().cloned()).collect()
    }

    /// Exact sign of `q` at this point.
    pub fn sign_at(&mut self, q: &MultiPoly) -> Result<i8> {
        sign_at(q, &mut self.coords)
    }

    /// Refine coordinate `j` until its isolating interval is at most `width` wide.
    pub fn refine(&mut self, j: usize, width: &Rational) -> Result<()> {
        refine_to_width(&mut self.coords, j, width)
    }

    pub fn approx(&self) -> Vec<f64> {
        self.coords.iter().map(Coord::approx).collect()
    }
}

/// Exact sign of `q` at the point `pts` (coordinates `x_0 .. x_{len-1}`).
pub fn sign_at(q: &MultiPoly, pts: &mut [Coord]) -> Result<i8> {
    let q = specialize(q, pts);
    if let Some(c) = q.constant_value() {
        return Ok(c.signum().to_i8().unwrap());
    }
    let k = q.mvar().unwrap();
    if k >= pts.len() {
        return Err(Error::UnfixedVariable { var: k });
    }
    if let Some(s) = eval_interval(&q, pts).sign() {
        return Ok(s);
    }
    let Coord::RootOf(root) = &pts[k] else {
        unreachable!("rational coordinates were substituted")
    };
    let root = root.clone();
    {
        let head = &mut pts[..k];
        let qf = fiber_trim(q.coeffs_in(k), head)?;
        if qf.is_empty() {
            return Ok(0);
        }
        if qf.len() == 1 {
            return sign_at(&qf[0], head);
        }
        let pf = fiber_trim(specialize(&root.poly, head).coeffs_in(k), head)?;
        let g = fiber_gcd(pf, qf, head)?;
        if g.len() >= 2 {
            let gp = MultiPoly::from_coeffs(k, g);
            let s_lo = sign_at(&gp.subst_rational(k, &root.interval.lo), head)?;
            let s_hi = sign_at(&gp.subst_rational(k, &root.interval.hi), head)?;
            if s_lo * s_hi < 0 {
                return Ok(0);
            }
        }
    }
    loop {
        for j in 0..=k {
            refine_coord(pts, j)?;
        }
        if let Some(s) = eval_interval(&q, pts).sign() {
            return Ok(s);
        }
    }
}

/// Substitute every rational coordinate (scaled by a positive factor).
pub fn specialize(q: &MultiPoly, pts: &[Coord]) -> MultiPoly {
    let mut q = q.clone();
    for (i, c) in pts.iter().enumerate() {
        if let Coord::Rational(r) = c {
            if q.involves(i) {
                q = q.subst_rational(i, r);
            }
        }
    }
    q
}

/// Interval enclosure of `q` over the coordinate boxes.
pub fn eval_interval(q: &MultiPoly, pts: &[Coord]) -> Interval {
    match q.mvar() {
        None => Interval::point(Rational::from_integer(q.constant_value().unwrap().clone())),
        Some(v) => {
            let x = pts[v].interval();
            let mut acc = Interval::point(Rational::zero());
            for c in q.coeffs().iter().rev() {
                acc = acc.mul(&x).add(&eval_interval(c, pts));
            }
            acc
        }
    }
}

/// Halve the isolating interval of coordinate `j` (no-op for rationals). A
/// midpoint that is the root turns the coordinate rational.
fn refine_coord(pts: &mut [Coord], j: usize) -> Result<()> {
    let (head, tail) = pts.split_at_mut(j);
    if let Coord::RootOf(root) = &mut tail[0] {
        if let Some(r) = bisect_root(root, j, head)? {
            tail[0] = Coord::Rational(r);
        }
    }
    Ok(())
}

/// One bisection step; returns the root if the midpoint hits it.
fn bisect_root(root: &mut RootOf, k: usize, head: &mut [Coord]) -> Result<Option<Rational>> {
    let mid = (&root.interval.lo + &root.interval.hi) / rat(2);
    let s = sign_at(&root.poly.subst_rational(k, &mid), head)?;
    if s == 0 {
        return Ok(Some(mid));
    }
    if s == root.sign_lo {
        root.interval.lo = mid;
    } else {
        root.interval.hi = mid;
    }
    Ok(None)
}

fn refine_to_width(pts: &mut [Coord], j: usize, width: &Rational) -> Result<()> {
    loop {
        match &pts[j] {
            Coord::Rational(_) => return Ok(()),
            Coord::RootOf(r) => {
                if &(&r.interval.hi - &r.interval.lo) <= width {
                    return Ok(());
                }
            }
        }
        refine_coord(pts, j)?;
    }
}

// ---------------------------------------------------------------------------
// Polynomials over the fiber

type FiberPoly = Vec<MultiPoly>;

fn fiber_trim(mut v: FiberPoly, head: &mut [Coord]) -> Result<FiberPoly> {
    while let Some(c) = v.last() {
        if sign_at(c, head)? != 0 {
            break;
        }
        v.pop();
    }
    Ok(v)
}

fn fiber_degree(v: &FiberPoly) -> usize {
    v.len().saturating_sub(1)
}

fn derivative(v: &FiberPoly) -> FiberPoly {
    v.iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c.scale(&BigInt::from(k)))
        .collect()
}

/// Divide by the gcd of the coefficients. The content divides the leading
/// coefficient, so it does not vanish at the fiber; its sign there is returned.
fn fiber_primitive(v: FiberPoly, head: &mut [Coord]) -> Result<(FiberPoly, i8)> {
    let g = v
        .iter()
        .fold(MultiPoly::zero(), |g, c| g.gcd(c).unwrap_or_else(|_| MultiPoly::zero()));
    if g.is_zero() || g.is_one() {
        return Ok((v, 1));
    }
    let s = sign_at(&g, head)?;
    let v = v
        .iter()
        .map(|c| c.exact_div(&g).expect("content divides"))
        .collect();
    Ok((v, s))
}

fn neg(v: FiberPoly) -> FiberPoly {
    v.into_iter().map(|c| -c).collect()
}

/// Gcd over the fiber (up to a factor nonzero at the fiber).
fn fiber_gcd(a: FiberPoly, b: FiberPoly, head: &mut [Coord]) -> Result<FiberPoly> {
    let (mut a, mut b) = (fiber_trim(a, head)?, fiber_trim(b, head)?);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    if b.is_empty() {
        return Ok(fiber_primitive(a, head)?.0);
    }
    loop {
        if b.len() == 1 {
            return Ok(vec![MultiPoly::one()]);
        }
        let r = fiber_trim(prem_coeffs(&a, &b), head)?;
        if r.is_empty() {
            return Ok(fiber_primitive(b, head)?.0);
        }
        a = b;
        b = fiber_primitive(r, head)?.0;
    }
}

/// Pseudo-division `lc(b)^e a = q b + r`.
fn pseudo_divide(a: &[MultiPoly], b: &[MultiPoly]) -> (FiberPoly, FiberPoly) {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    if r.len() < b.len() {
        return (vec![], r);
    }
    let lcb = &b[db];
    let mut q = vec![MultiPoly::zero(); r.len() - db];
    let mut e = r.len() - db;
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1 - db;
        let t = r.last().unwrap().clone();
        for c in q.iter_mut().chain(r.iter_mut()) {
            *c = &*c * lcb;
        }
        q[k] = &q[k] + &t;
        for (i, c) in b.iter().enumerate() {
            r[k + i] = &r[k + i] - &(&t * c);
        }
        r.pop();
        while r.last().is_some_and(MultiPoly::is_zero) {
            r.pop();
        }
        e -= 1;
    }
    if e > 0 {
        let f = lcb.pow(e);
        for c in q.iter_mut().chain(r.iter_mut()) {
            *c = &*c * &f;
        }
    }
    (q, r)
}

/// Exact quotient over the fiber (up to a factor nonzero at the fiber).
fn fiber_div(a: &[MultiPoly], b: &[MultiPoly], head: &mut [Coord]) -> Result<FiberPoly> {
    let (q, r) = pseudo_divide(a, b);
    if !fiber_trim(r, head)?.is_empty() {
        return Err(Error::Separability("inexact division over the fiber".into()));
    }
    let q = fiber_trim(q, head)?;
    Ok(fiber_primitive(q, head)?.0)
}

fn fiber_squarefree(a: FiberPoly, head: &mut [Coord]) -> Result<FiberPoly> {
    if a.len() <= 2 {
        return Ok(fiber_primitive(a, head)?.0);
    }
    let g = fiber_gcd(a.clone(), derivative(&a), head)?;
    if g.len() <= 1 {
        return Ok(fiber_primitive(a, head)?.0);
    }
    fiber_div(&a, &g, head)
}

/// Sturm sequence of a polynomial squarefree over the fiber; each element is
/// a positive multiple (at the fiber) of the classical signed remainder.
fn sturm_sequence(p: FiberPoly, head: &mut [Coord]) -> Result<Vec<FiberPoly>> {
    let dp = fiber_trim(derivative(&p), head)?;
    let mut seq = vec![p, dp];
    loop {
        let b = seq.last().unwrap();
        if b.len() <= 1 {
            break;
        }
        let a = &seq[seq.len() - 2];
        let e = a.len() - b.len() + 1;
        let lc_sign = sign_at(b.last().unwrap(), head)?;
        let r = prem_coeffs(a, b);
        let flip = lc_sign < 0 && e % 2 == 1;
        let r = if flip { r } else { neg(r) };
        let r = fiber_trim(r, head)?;
        if r.is_empty() {
            break;
        }
        let (r, s) = fiber_primitive(r, head)?;
        seq.push(if s < 0 { neg(r) } else { r });
    }
    Ok(seq)
}

fn sign_of_fiber_poly_at(v: &[MultiPoly], k: usize, x: &Rational, head: &mut [Coord]) -> Result<i8> {
    let p = MultiPoly::from_coeffs(k, v.to_vec());
    sign_at(&p.subst_rational(k, x), head)
}

fn variations(signs: impl IntoIterator<Item = i8>) -> usize {
    let mut last = 0;
    let mut count = 0;
    for s in signs.into_iter().filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

struct Sturm<'a> {
    seq: Vec<FiberPoly>,
    k: usize,
    head: &'a mut [Coord],
}

impl Sturm<'_> {
    fn at(&mut self, x: &Rational) -> Result<usize> {
        let mut signs = Vec::with_capacity(self.seq.len());
        for v in &self.seq {
            signs.push(sign_of_fiber_poly_at(v, self.k, x, self.head)?);
        }
        Ok(variations(signs))
    }

    fn at_infinity(&mut self, positive: bool) -> Result<usize> {
        let mut signs = Vec::with_capacity(self.seq.len());
        for v in &self.seq {
            let s = sign_at(v.last().unwrap(), self.head)?;
            let odd = fiber_degree(v) % 2 == 1;
            signs.push(if !positive && odd { -s } else { s });
        }
        Ok(variations(signs))
    }

    fn p_sign(&mut self, x: &Rational) -> Result<i8> {
        sign_of_fiber_poly_at(&self.seq[0], self.k, x, self.head)
    }
}

/// Real roots of a polynomial squarefree over the fiber, in increasing order.
fn isolate_fiber(p: FiberPoly, k: usize, head: &mut [Coord]) -> Result<Vec<Coord>> {
    let p = fiber_trim(p, head)?;
    if p.is_empty() {
        return Err(Error::Separability("polynomial vanishes identically on the fiber".into()));
    }
    if p.len() == 1 {
        return Ok(Vec::new());
    }
    if let [c0, c1] = &p[..] {
        if let (Some(c0), Some(c1)) = (c0.constant_value(), c1.constant_value()) {
            return Ok(vec![Coord::Rational(Rational::new(-c0, c1.clone()))]);
        }
    }
    let exact = RationalRoots::new(&p);
    let poly = MultiPoly::from_coeffs(k, p.clone());
    let seq = sturm_sequence(p, head)?;
    let mut st = Sturm { seq, k, head };
    let v_neg = st.at_infinity(false)?;
    let v_pos = st.at_infinity(true)?;
    if v_neg <= v_pos {
        return Ok(Vec::new());
    }
    let mut bound = rat(1);
    let (vl, vr) = loop {
        let l = -&bound;
        if st.p_sign(&l)? != 0 && st.p_sign(&bound)? != 0 {
            let (vl, vr) = (st.at(&l)?, st.at(&bound)?);
            if vl == v_neg && vr == v_pos {
                break (vl, vr);
            }
        }
        bound = &bound * rat(2);
    };
    enum Task {
        Search(Rational, Rational, usize, usize),
        Exact(Rational),
    }
    let mut out = Vec::new();
    // last pushed is handled first, so push right to left
    let mut stack = vec![Task::Search(-bound.clone(), bound, vl, vr)];
    while let Some(task) = stack.pop() {
        let (a, b, va, vb) = match task {
            Task::Exact(m) => {
                out.push(Coord::Rational(m));
                continue;
            }
            Task::Search(a, b, va, vb) => (a, b, va, vb),
        };
        match va - vb {
            0 => {}
            1 => {
                if let Some(r) = exact.as_ref().and_then(|e| e.find_in(&a, &b)) {
                    out.push(Coord::Rational(r.clone()));
                    continue;
                }
                let sign_lo = st.p_sign(&a)?;
                out.push(Coord::RootOf(RootOf {
                    poly: poly.clone(),
                    interval: IsolatingInterval { lo: a, hi: b },
                    sign_lo,
                }));
            }
            _ => {
                let m = (&a + &b) / rat(2);
                if st.p_sign(&m)? != 0 {
                    let vm = st.at(&m)?;
                    stack.push(Task::Search(m.clone(), b, vm, vb));
                    stack.push(Task::Search(a, m, va, vm));
                    continue;
                }
                let mut delta = (&b - &a) / rat(4);
                let (l, r, vlm, vrm) = loop {
                    let l = &m - &delta;
                    let r = &m + &delta;
                    if st.p_sign(&l)? != 0 && st.p_sign(&r)? != 0 {
                        let (x, y) = (st.at(&l)?, st.at(&r)?);
                        if x == y + 1 {
                            break (l, r, x, y);
                        }
                    }
                    delta /= rat(2);
                };
                stack.push(Task::Search(r, b, vrm, vb));
                stack.push(Task::Exact(m));
                stack.push(Task::Search(a, l, va, vlm));
            }
        }
    }
    Ok(out)
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64().filter(|&n| n > 0 && n <= 1_000_000_000)?;
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Some(out)
}

/// Candidate rational roots `±n/d` (`n | a_0`, `d | a_m`, reduced on
/// demand) of an integer polynomial with small extreme coefficients.
struct RationalRoots {
    coeffs: Vec<BigInt>,
    nums: Vec<BigInt>,
    dens: Vec<BigInt>,
}

impl RationalRoots {
    fn new(p: &[MultiPoly]) -> Option<Self> {
        let coeffs: Vec<BigInt> = p.iter().map(|c| c.constant_value().cloned()).collect::<Option<_>>()?;
        let low = coeffs.iter().position(|c| !c.is_zero())?;
        let mut nums = divisors(&coeffs[low])?;
        if low > 0 {
            nums.push(BigInt::zero());
        }
        let dens = divisors(coeffs.last()?)?;
        Some(RationalRoots { coeffs, nums, dens })
    }

    /// The rational root in the open interval `(a, b)`, if any.
    fn find_in(&self, a: &Rational, b: &Rational) -> Option<Rational> {
        let deg = self.coeffs.len() - 1;
        for d in &self.dens {
            for n in &self.nums {
                for n in [n.clone(), -n] {
                    let r = Rational::new_raw(n.clone(), d.clone());
                    if &r <= a || &r >= b {
                        continue;
                    }
                    // sum c_i n^i d^(deg - i)
                    let mut acc = BigInt::zero();
                    let mut dpow = BigInt::from(1);
                    let mut terms = Vec::with_capacity(deg + 1);
                    for _ in 0..=deg {
                        terms.push(dpow.clone());
                        dpow *= d;
                    }
                    let mut npow = BigInt::from(1);
                    for (i, c) in self.coeffs.iter().enumerate() {
                        acc += c * &npow * &terms[deg - i];
                        npow *= &n;
                    }
                    if acc.is_zero() {
                        return Some(Rational::new(n, d.clone()));
                    }
                }
            }
        }
        None
    }
}

/// Isolate the real roots of a nonzero univariate integer polynomial.
pub fn isolate_real_roots(f: &MultiPoly) -> Result<Vec<IsolatingInterval>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let Some(v) = f.mvar() else {
        return Ok(Vec::new());
    };
    if f.variables().len() > 1 {
        return Err(Error::InvalidInput(format!("{f} is not univariate")));
    }
    let mut head: Vec<Coord> = Vec::new();
    let sf = fiber_squarefree(f.coeffs_in(v), &mut head)?;
    Ok(isolate_fiber(sf, v, &mut head)?
        .into_iter()
        .map(|c| match c {
            Coord::Rational(r) => IsolatingInterval { lo: r.clone(), hi: r },
            Coord::RootOf(r) => r.interval,
        })
        .collect())
}

/// Compare a rational with a coordinate of variable `k` over `head`. If the
/// rational equals a `RootOf`, the coordinate is replaced by the rational.
pub fn compare_rational(x: &Rational, c: &mut Coord, k: usize, head: &mut [Coord]) -> Result<Ordering> {
    match c {
        Coord::Rational(r) => Ok(x.cmp(r)),
        Coord::RootOf(root) => {
            if x <= &root.interval.lo {
                return Ok(Ordering::Less);
            }
            if x >= &root.interval.hi {
                return Ok(Ordering::Greater);
            }
            let s = sign_at(&root.poly.subst_rational(k, x), head)?;
            if s == 0 {
                *c = Coord::Rational(x.clone());
                Ok(Ordering::Equal)
            } else if s == root.sign_lo {
                Ok(Ordering::Less)
            } else {
                Ok(Ordering::Greater)
            }
        }
    }
}

/// Order two distinct coordinates of variable `k` over `head`.
fn compare_distinct(a: &mut Coord, b: &mut Coord, k: usize, head: &mut [Coord]) -> Result<Ordering> {
    loop {
        match (&*a, &*b) {
            (Coord::Rational(x), _) => {
                let x = x.clone();
                return compare_rational(&x, b, k, head);
            }
            (_, Coord::Rational(y)) => {
                let y = y.clone();
                return Ok(compare_rational(&y, a, k, head)?.reverse());
            }
            (Coord::RootOf(ra), Coord::RootOf(rb)) => {
                if ra.interval.hi <= rb.interval.lo {
                    return Ok(Ordering::Less);
                }
                if rb.interval.hi <= ra.interval.lo {
                    return Ok(Ordering::Greater);
                }
                if ra.interval == rb.interval && ra.poly == rb.poly {
                    return Err(Error::Separability("duplicate root".into()));
                }
            }
        }
        for c in [&mut *a, &mut *b] {
            if let Coord::RootOf(r) = c {
                if let Some(x) = bisect_root(r, k, head)? {
                    *c = Coord::Rational(x);
                }
            }
        }
    }
}

/// Simplest rational (smallest denominator, then smallest magnitude) in the
/// open interval `(a, b)`.
pub fn simplest_between(a: &Rational, b: &Rational) -> Rational {
    assert!(a < b, "empty interval");
    let n = a.floor() + rat(1);
    if &n < b {
        let hi = b.ceil() - rat(1);
        return if n <= rat(0) && hi >= rat(0) {
            rat(0)
        } else if n > rat(0) {
            n
        } else {
            hi
        };
    }
    let fl = n - rat(1);
    if a == &fl {
        let t = (b - &fl).recip();
        return fl + (t.floor() + rat(1)).recip();
    }
    let inner = simplest_between(&(b - &fl).recip(), &(a - &fl).recip());
    fl + inner.recip()
}

/// Sections over the fiber, ordered, each tagged with the index of its
/// defining polynomial, plus sector sample rationals (one more than sections).
#[derive(Clone, Debug)]
pub struct FiberRoots {
    pub sections: Vec<(AlgebraicCoordinate, usize)>,
    pub sectors: Vec<Rational>,
}

/// Real roots over the point `s` of polynomials whose main variable is
/// `s.len()`. The polynomials must be pairwise coprime and squarefree over
/// the fiber with leading coefficients nonzero there.
pub fn roots_over_cell(polys: &[MultiPoly], s: &mut SamplePoint) -> Result<FiberRoots> {
    let k = s.len();
    let head = &mut s.coords[..];
    let mut sections: Vec<(Coord, usize)> = Vec::new();
    for (i, p) in polys.iter().enumerate() {
        if p.mvar() != Some(k) {
            return Err(Error::Separability(format!("{p} does not have main variable {k}")));
        }
        for root in isolate_fiber(p.coeffs_in(k), k, head)? {
            // insertion keeps `sections` sorted
            let mut root = root;
            let mut pos = sections.len();
            for (j, (other, _)) in sections.iter_mut().enumerate() {
                if compare_distinct(&mut root, other, k, head)? == Ordering::Less {
                    pos = j;
                    break;
                }
            }
            sections.insert(pos, (root, i));
        }
    }
    let mut sectors = Vec::with_capacity(sections.len() + 1);
    if sections.is_empty() {
        sectors.push(Rational::zero());
        return Ok(FiberRoots { sections, sectors });
    }
    sectors.push(match &sections[0].0 {
        Coord::Rational(r) => r.ceil() - rat(1),
        Coord::RootOf(r) => r.interval.lo.floor(),
    });
    for j in 0..sections.len() - 1 {
        let (left, right) = sections.split_at_mut(j + 1);
        let a = &mut left[j].0;
        let b = &mut right[0].0;
        loop {
            let lo = a.bounds().0.clone();
            let hi = b.bounds().1.clone();
            let cand = simplest_between(&lo, &hi);
            if compare_rational(&cand, a, k, head)? == Ordering::Greater
                && compare_rational(&cand, b, k, head)? == Ordering::Less
            {
                sectors.push(cand);
                break;
            }
            for c in [&mut *a, &mut *b] {
                if let Coord::RootOf(r) = c {
                    if let Some(x) = bisect_root(r, k, head)? {
                        *c = Coord::Rational(x);
                    }
                }
            }
        }
    }
    sectors.push(match &sections.last().unwrap().0 {
        Coord::Rational(r) => r.floor() + rat(1),
        Coord::RootOf(r) => r.interval.hi.ceil(),
    });
    Ok(FiberRoots { sections, sectors })
}

/// Replace `polys` (main variable `s.len()`) by polynomials with the same
/// zeros over the fiber that are squarefree and pairwise coprime there.
pub fn make_separable_over_cell(polys: &[MultiPoly], s: &mut SamplePoint) -> Result<Vec<MultiPoly>> {
    let k = s.len();
    let head = &mut s.coords[..];
    let mut queue: Vec<FiberPoly> = Vec::new();
    for p in polys {
        if p.mvar().is_some_and(|m| m > k) {
            return Err(Error::UnfixedVariable { var: p.mvar().unwrap() });
        }
        let v = fiber_trim(specialize(p, head).coeffs_in(k), head)?;
        if v.is_empty() {
            return Err(Error::Separability(format!("{p} vanishes identically over the cell")));
        }
        if v.len() >= 2 {
            queue.push(fiber_squarefree(v, head)?);
        }
    }
    let mut done: Vec<FiberPoly> = Vec::new();
    while let Some(mut q) = queue.pop() {
        let mut i = 0;
        while i < done.len() && q.len() >= 2 {
            let g = fiber_gcd(done[i].clone(), q.clone(), head)?;
            if g.len() >= 2 {
                let e = done.remove(i);
                let e = fiber_div(&e, &g, head)?;
                q = fiber_div(&q, &g, head)?;
                if e.len() >= 2 {
                    queue.push(e);
                }
                queue.push(g);
            } else {
                i += 1;
            }
        }
        if q.len() >= 2 {
            done.push(q);
        }
    }
    let mut out: Vec<MultiPoly> = done
        .into_iter()
        .map(|v| MultiPoly::from_coeffs(k, v).normalized())
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// `p` restricted to the fiber over `s` as a polynomial in `x_{s.len()}`:
/// rational coordinates substituted, vanishing leading coefficients dropped.
/// Returns zero if `p` vanishes identically there.
pub fn restrict_to_fiber(p: &MultiPoly, s: &mut SamplePoint) -> Result<MultiPoly> {
    let k = s.len();
    let head = &mut s.coords[..];
    let v = fiber_trim(specialize(p, head).coeffs_in(k), head)?;
    Ok(MultiPoly::from_coeffs(k, v))
}

/// Sign-normalized squarefree part of the gcd over the fiber of `polys`
/// (each a polynomial in `x_{s.len()}` and earlier variables). `None` if the
/// gcd is constant over the fiber; zero polynomials are ignored.
pub fn fiber_gcd_all(polys: &[MultiPoly], s: &mut SamplePoint) -> Result<Option<MultiPoly>> {
    let k = s.len();
    let head = &mut s.coords[..];
    let mut acc: Option<FiberPoly> = None;
    for p in polys {
        let v = fiber_trim(specialize(p, head).coeffs_in(k), head)?;
        if v.is_empty() {
            continue;
        }
        acc = Some(match acc {
            None => v,
            Some(a) => fiber_gcd(a, v, head)?,
        });
    }
    match acc {
        Some(g) if g.len() >= 2 => {
            let sf = fiber_squarefree(g, head)?;
            Ok(Some(MultiPoly::from_coeffs(k, sf).normalized()))
        }
        _ => Ok(None),
    }
}
