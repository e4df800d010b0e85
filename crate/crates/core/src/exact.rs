//! Exact real algebraic numbers.
//!
//! An [`ExactNumber`] is an expression DAG whose leaves are rationals and whose
//! internal nodes are `+ - * /` and square roots. Every node carries a cached
//! fixed-point interval enclosure. Sign determination refines that enclosure
//! until it either excludes zero or shrinks below a separation bound, at which
//! point the value is provably zero.
//!
//! The separation bound follows the BFMSS construction: each node is written
//! as `U / L` with `U`, `L` algebraic integers whose conjugates are bounded by
//! `u` and `l`. A nonzero value then satisfies `|x| >= 1 / (u^(D-1) * l)` where
//! `D = 2^k` and `k` is the number of distinct square-root nodes.
//!
//! Operations on two rational operands are folded eagerly, so expressions built
//! only from rationals never grow a tree.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

const INITIAL_PRECISION: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("square root of a negative number")]
    NegativeRadicand,
}

/// Exact sign of a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn to_i32(self) -> i32 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn from_i32(v: i32) -> Sign {
        match v.cmp(&0) {
            Ordering::Less => Sign::Negative,
            Ordering::Equal => Sign::Zero,
            Ordering::Greater => Sign::Positive,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }

    fn of_rational(r: &Rational) -> Sign {
        if r.is_zero() {
            Sign::Zero
        } else if r.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_i32(self.to_i32() * rhs.to_i32())
    }
}

/// Which operation an internal node performs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    Add,
    Sub,
    Mul,
    Div,
    Sqrt,
}

impl Op {
    pub fn name(self) -> &'static str {
        match self {
            Op::Add => "add",
            Op::Sub => "sub",
            Op::Mul => "mul",
            Op::Div => "div",
            Op::Sqrt => "sqrt",
        }
    }

    pub fn from_name(name: &str) -> Option<Op> {
        Some(match name {
            "add" => Op::Add,
            "sub" => Op::Sub,
            "mul" => Op::Mul,
            "div" => Op::Div,
            "sqrt" => Op::Sqrt,
            _ => return None,
        })
    }
}

/// Borrowed view of an expression node, for serializers and printers.
pub enum NodeView<'a> {
    Rational(&'a Rational),
    Binary(Op, &'a ExactNumber, &'a ExactNumber),
    Sqrt(&'a ExactNumber),
}

enum Kind {
    Rat(Rational),
    Add(ExactNumber, ExactNumber),
    Sub(ExactNumber, ExactNumber),
    Mul(ExactNumber, ExactNumber),
    Div(ExactNumber, ExactNumber),
    Sqrt(ExactNumber),
}

struct Node {
    kind: Kind,
    cache: Mutex<Option<Interval>>,
    bound: OnceLock<LogBound>,
    float: OnceLock<(f64, f64)>,
}

/// Fixed-point enclosure `[lo, hi] / 2^prec`.
#[derive(Clone, Debug)]
struct Interval {
    lo: BigInt,
    hi: BigInt,
    prec: u32,
}

/// Upper bounds on `log2 u` and `log2 l`, clamped at zero.
#[derive(Clone, Copy, Debug)]
struct LogBound {
    log_u: f64,
    log_l: f64,
}

/// Statistics from one sign determination.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignStats {
    /// Final fixed-point precision, in bits, of the enclosure that decided the sign.
    pub precision: u32,
    /// Bits of the separation bound: a nonzero value exceeds `2^-separation_bits`.
    pub separation_bits: u64,
}

/// Largest precision the refinement loop may need before the separation bound
/// forces a decision, for a given bound. Precision doubles from 64 bits, so the
/// loop overshoots the first sufficient precision by at most a factor of two;
/// the additional factor absorbs error amplification through divisions.
pub fn refinement_budget(separation_bits: u64) -> u64 {
    4 * (separation_bits + INITIAL_PRECISION as u64)
}

/// An exact real algebraic number.
#[derive(Clone)]
pub struct ExactNumber(Arc<Node>);

fn floor_shift(x: &BigInt, bits: u32) -> BigInt {
    x >> bits as usize
}

fn ceil_shift(x: &BigInt, bits: u32) -> BigInt {
    -((-x) >> bits as usize)
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

fn isqrt_ceil(x: &BigInt) -> BigInt {
    let s = x.sqrt();
    if &s * &s < *x {
        s + 1
    } else {
        s
    }
}

fn min_max(values: [BigInt; 4]) -> (BigInt, BigInt) {
    let mut it = values.into_iter();
    let first = it.next().unwrap();
    let (mut lo, mut hi) = (first.clone(), first);
    for v in it {
        if v < lo {
            lo = v;
        } else if v > hi {
            hi = v;
        }
    }
    (lo, hi)
}

impl Interval {
    fn coarsen(&self, prec: u32) -> Interval {
        let d = self.prec - prec;
        Interval {
            lo: floor_shift(&self.lo, d),
            hi: ceil_shift(&self.hi, d),
            prec,
        }
    }

    fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }
}

/// Simplest rational (smallest denominator) in the closed interval `[lo, hi]`.
fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    debug_assert!(lo <= hi);
    if !lo.is_positive() && !hi.is_negative() {
        return Rational::zero();
    }
    if hi.is_negative() {
        return -simplest_between(&-hi, &-lo);
    }
    let fl = lo.floor();
    if &fl == lo {
        return fl;
    }
    let next = &fl + Rational::one();
    if &next <= hi {
        return next;
    }
    let inner = simplest_between(&(hi - &fl).recip(), &(lo - &fl).recip());
    fl + inner.recip()
}

fn rational_sqrt(r: &Rational) -> Option<Rational> {
    let n = r.numer();
    let d = r.denom();
    let sn = n.sqrt();
    let sd = d.sqrt();
    if &(&sn * &sn) == n && &(&sd * &sd) == d {
        Some(Rational::new(sn, sd))
    } else {
        None
    }
}

impl ExactNumber {
    fn from_kind(kind: Kind) -> ExactNumber {
        ExactNumber(Arc::new(Node {
            kind,
            cache: Mutex::new(None),
            bound: OnceLock::new(),
            float: OnceLock::new(),
        }))
    }

    pub fn from_rational(r: Rational) -> ExactNumber {
        ExactNumber::from_kind(Kind::Rat(r))
    }

    pub fn from_integer(n: i64) -> ExactNumber {
        ExactNumber::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    /// `num / den`; panics when `den == 0`.
    pub fn from_ratio(num: i64, den: i64) -> ExactNumber {
        assert!(den != 0, "zero denominator");
        ExactNumber::from_rational(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn zero() -> ExactNumber {
        ExactNumber::from_integer(0)
    }

    pub fn one() -> ExactNumber {
        ExactNumber::from_integer(1)
    }

    /// The rational value, if this node is a rational leaf.
    pub fn as_rational(&self) -> Option<&Rational> {
        match &self.0.kind {
            Kind::Rat(r) => Some(r),
            _ => None,
        }
    }

    pub fn is_rational_leaf(&self) -> bool {
        self.as_rational().is_some()
    }

    pub fn view(&self) -> NodeView<'_> {
        match &self.0.kind {
            Kind::Rat(r) => NodeView::Rational(r),
            Kind::Add(a, b) => NodeView::Binary(Op::Add, a, b),
            Kind::Sub(a, b) => NodeView::Binary(Op::Sub, a, b),
            Kind::Mul(a, b) => NodeView::Binary(Op::Mul, a, b),
            Kind::Div(a, b) => NodeView::Binary(Op::Div, a, b),
            Kind::Sqrt(a) => NodeView::Sqrt(a),
        }
    }

    /// Same node (pointer identity), not value equality.
    pub fn ptr_eq(&self, other: &ExactNumber) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub fn add(&self, other: &ExactNumber) -> ExactNumber {
        match (self.as_rational(), other.as_rational()) {
            (Some(a), Some(b)) => ExactNumber::from_rational(a + b),
            (_, Some(b)) if b.is_zero() => self.clone(),
            (Some(a), _) if a.is_zero() => other.clone(),
            _ => ExactNumber::from_kind(Kind::Add(self.clone(), other.clone())),
        }
    }

    pub fn sub(&self, other: &ExactNumber) -> ExactNumber {
        match (self.as_rational(), other.as_rational()) {
            (Some(a), Some(b)) => ExactNumber::from_rational(a - b),
            (_, Some(b)) if b.is_zero() => self.clone(),
            _ => ExactNumber::from_kind(Kind::Sub(self.clone(), other.clone())),
        }
    }

    pub fn mul(&self, other: &ExactNumber) -> ExactNumber {
        match (self.as_rational(), other.as_rational()) {
            (Some(a), Some(b)) => ExactNumber::from_rational(a * b),
            (Some(a), _) | (_, Some(a)) if a.is_zero() => ExactNumber::zero(),
            (Some(a), _) if a.is_one() => other.clone(),
            (_, Some(b)) if b.is_one() => self.clone(),
            _ => ExactNumber::from_kind(Kind::Mul(self.clone(), other.clone())),
        }
    }

    pub fn neg(&self) -> ExactNumber {
        match self.as_rational() {
            Some(a) => ExactNumber::from_rational(-a),
            None => ExactNumber::zero().sub(self),
        }
    }

    pub fn checked_div(&self, other: &ExactNumber) -> Result<ExactNumber, ExactError> {
        if other.sign() == Sign::Zero {
            return Err(ExactError::DivisionByZero);
        }
        Ok(match (self.as_rational(), other.as_rational()) {
            (Some(a), Some(b)) => ExactNumber::from_rational(a / b),
            (Some(a), _) if a.is_zero() => ExactNumber::zero(),
            (_, Some(b)) if b.is_one() => self.clone(),
            _ => ExactNumber::from_kind(Kind::Div(self.clone(), other.clone())),
        })
    }

    /// Division that panics on a zero divisor, like integer division.
    pub fn div(&self, other: &ExactNumber) -> ExactNumber {
        self.checked_div(other).expect("ExactNumber division by zero")
    }

    pub fn recip(&self) -> Result<ExactNumber, ExactError> {
        ExactNumber::one().checked_div(self)
    }

    pub fn sqrt(&self) -> Result<ExactNumber, ExactError> {
        match self.sign() {
            Sign::Negative => return Err(ExactError::NegativeRadicand),
            Sign::Zero => return Ok(ExactNumber::zero()),
            Sign::Positive => {}
        }
        let arg = self.normalize();
        if let Some(r) = arg.as_rational() {
            if let Some(root) = rational_sqrt(r) {
                return Ok(ExactNumber::from_rational(root));
            }
        }
        Ok(ExactNumber::from_kind(Kind::Sqrt(arg)))
    }

    pub fn square(&self) -> ExactNumber {
        self.mul(self)
    }

    pub fn abs(&self) -> ExactNumber {
        if self.sign() == Sign::Negative {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Collapse to a rational leaf when the value is provably rational with a
    /// denominator small enough to be recovered from a 128-bit enclosure.
    pub fn normalize(&self) -> ExactNumber {
        if self.is_rational_leaf() {
            return self.clone();
        }
        let iv = self.refine(128);
        let lo = Rational::new(iv.lo.clone(), BigInt::one() << iv.prec as usize);
        let hi = Rational::new(iv.hi.clone(), BigInt::one() << iv.prec as usize);
        let candidate = simplest_between(&lo, &hi);
        let diff = self.sub(&ExactNumber::from_rational(candidate.clone()));
        if diff.sign() == Sign::Zero {
            ExactNumber::from_rational(candidate)
        } else {
            self.clone()
        }
    }

    pub fn sign(&self) -> Sign {
        self.sign_with_stats().0
    }

    /// Exact sign together with the refinement statistics that decided it.
    pub fn sign_with_stats(&self) -> (Sign, SignStats) {
        if let Some(r) = self.as_rational() {
            return (
                Sign::of_rational(r),
                SignStats {
                    precision: 0,
                    separation_bits: 0,
                },
            );
        }
        let separation_bits = self.separation_bits();
        let mut prec = INITIAL_PRECISION;
        loop {
            if let Some(iv) = self.eval(prec) {
                let stats = SignStats {
                    precision: prec,
                    separation_bits,
                };
                if iv.lo.is_positive() {
                    return (Sign::Positive, stats);
                }
                if iv.hi.is_negative() {
                    return (Sign::Negative, stats);
                }
                // |x| <= max(|lo|, |hi|) / 2^prec < 2^-separation_bits forces zero.
                if (prec as u64) > separation_bits {
                    let limit = BigInt::one() << (prec as u64 - separation_bits) as usize;
                    if iv.hi < limit && -&iv.lo < limit {
                        return (Sign::Zero, stats);
                    }
                }
            }
            prec = prec.checked_mul(2).expect("precision overflow");
        }
    }

    pub fn compare(&self, other: &ExactNumber) -> Ordering {
        if self.ptr_eq(other) {
            return Ordering::Equal;
        }
        if let (Some(a), Some(b)) = (self.as_rational(), other.as_rational()) {
            return a.cmp(b);
        }
        match self.sub(other).sign() {
            Sign::Negative => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Positive => Ordering::Greater,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.sign() == Sign::Zero
    }

    /// A rational within `error_bound` of the value. Rational leaves are
    /// returned verbatim.
    pub fn approximate(&self, error_bound: &Rational) -> Rational {
        assert!(error_bound.is_positive(), "error bound must be positive");
        if let Some(r) = self.as_rational() {
            return r.clone();
        }
        let mut prec = INITIAL_PRECISION;
        loop {
            if let Some(iv) = self.eval(prec) {
                let scale = BigInt::one() << prec as usize;
                let width = Rational::new(&iv.hi - &iv.lo, scale.clone());
                if &width <= error_bound {
                    return Rational::new(iv.lo, scale);
                }
            }
            prec = prec.checked_mul(2).expect("precision overflow");
        }
    }

    /// Rigorous `f64` bounds `lo <= x <= hi`.
    pub fn f64_bounds(&self) -> (f64, f64) {
        *self.0.float.get_or_init(|| {
            let iv = self.refine(INITIAL_PRECISION);
            let scale = 2f64.powi(INITIAL_PRECISION as i32);
            let lo = iv.lo.to_f64().unwrap_or(f64::NEG_INFINITY) / scale;
            let hi = iv.hi.to_f64().unwrap_or(f64::INFINITY) / scale;
            (lo.next_down(), hi.next_up())
        })
    }

    /// Midpoint of [`f64_bounds`](Self::f64_bounds); for display and filters only.
    pub fn to_f64(&self) -> f64 {
        let (lo, hi) = self.f64_bounds();
        lo / 2.0 + hi / 2.0
    }

    /// Decimal string with exactly `digits` fractional digits, within
    /// `10^-digits` of the value.
    pub fn to_decimal(&self, digits: u32) -> String {
        let ten = BigInt::from(10);
        let scale = num_traits::pow(ten.clone(), digits as usize);
        let eps = Rational::new(BigInt::one(), &scale * &ten);
        let approx = self.approximate(&eps);
        let scaled = (approx * Rational::from_integer(scale.clone())).round();
        let n = scaled.to_integer();
        let negative = n.is_negative();
        let abs = n.abs();
        let (int_part, frac_part) = abs.div_rem(&scale);
        let sign = if negative { "-" } else { "" };
        if digits == 0 {
            return format!("{sign}{int_part}");
        }
        format!(
            "{sign}{int_part}.{:0>width$}",
            frac_part.to_string(),
            width = digits as usize
        )
    }

    fn refine(&self, min_prec: u32) -> Interval {
        let mut prec = min_prec;
        loop {
            if let Some(iv) = self.eval(prec) {
                return iv;
            }
            prec = prec.checked_mul(2).expect("precision overflow");
        }
    }

    /// Enclosure at `prec` bits, or `None` when a divisor enclosure still
    /// straddles zero at this precision.
    fn eval(&self, prec: u32) -> Option<Interval> {
        if let Some(cached) = self.0.cache.lock().unwrap().as_ref() {
            if cached.prec == prec {
                return Some(cached.clone());
            }
            if cached.prec > prec {
                return Some(cached.coarsen(prec));
            }
        }
        let iv = match &self.0.kind {
            Kind::Rat(r) => {
                let num = r.numer() << prec as usize;
                Interval {
                    lo: num.div_floor(r.denom()),
                    hi: ceil_div(&num, r.denom()),
                    prec,
                }
            }
            Kind::Add(a, b) => {
                let (x, y) = (a.eval(prec)?, b.eval(prec)?);
                Interval {
                    lo: x.lo + y.lo,
                    hi: x.hi + y.hi,
                    prec,
                }
            }
            Kind::Sub(a, b) => {
                let (x, y) = (a.eval(prec)?, b.eval(prec)?);
                Interval {
                    lo: x.lo - y.hi,
                    hi: x.hi - y.lo,
                    prec,
                }
            }
            Kind::Mul(a, b) => {
                let (x, y) = (a.eval(prec)?, b.eval(prec)?);
                let (lo, hi) = min_max([&x.lo * &y.lo, &x.lo * &y.hi, &x.hi * &y.lo, &x.hi * &y.hi]);
                Interval {
                    lo: floor_shift(&lo, prec),
                    hi: ceil_shift(&hi, prec),
                    prec,
                }
            }
            Kind::Div(a, b) => {
                let (x, y) = (a.eval(prec)?, b.eval(prec)?);
                if y.contains_zero() {
                    return None;
                }
                let xl = &x.lo << prec as usize;
                let xh = &x.hi << prec as usize;
                let floors = [xl.div_floor(&y.lo), xl.div_floor(&y.hi), xh.div_floor(&y.lo), xh.div_floor(&y.hi)];
                let ceils = [ceil_div(&xl, &y.lo), ceil_div(&xl, &y.hi), ceil_div(&xh, &y.lo), ceil_div(&xh, &y.hi)];
                Interval {
                    lo: min_max(floors).0,
                    hi: min_max(ceils).1,
                    prec,
                }
            }
            Kind::Sqrt(a) => {
                let x = a.eval(prec)?;
                let lo = if x.lo.is_positive() { x.lo } else { BigInt::zero() };
                let hi = if x.hi.is_positive() { x.hi } else { BigInt::zero() };
                Interval {
                    lo: (lo << prec as usize).sqrt(),
                    hi: isqrt_ceil(&(hi << prec as usize)),
                    prec,
                }
            }
        };
        *self.0.cache.lock().unwrap() = Some(iv.clone());
        Some(iv)
    }

    fn log_bound(&self) -> LogBound {
        *self.0.bound.get_or_init(|| match &self.0.kind {
            Kind::Rat(r) => LogBound {
                log_u: r.numer().bits() as f64,
                log_l: r.denom().bits() as f64,
            },
            Kind::Add(a, b) | Kind::Sub(a, b) => {
                let (x, y) = (a.log_bound(), b.log_bound());
                LogBound {
                    log_u: (x.log_u + y.log_l).max(x.log_l + y.log_u) + 1.0,
                    log_l: x.log_l + y.log_l,
                }
            }
            Kind::Mul(a, b) => {
                let (x, y) = (a.log_bound(), b.log_bound());
                LogBound {
                    log_u: x.log_u + y.log_u,
                    log_l: x.log_l + y.log_l,
                }
            }
            Kind::Div(a, b) => {
                let (x, y) = (a.log_bound(), b.log_bound());
                LogBound {
                    log_u: x.log_u + y.log_l,
                    log_l: x.log_l + y.log_u,
                }
            }
            Kind::Sqrt(a) => {
                let x = a.log_bound();
                LogBound {
                    log_u: x.log_u / 2.0,
                    log_l: x.log_l / 2.0,
                }
            }
        })
    }

    /// Number of distinct (by identity) square-root nodes in the DAG.
    pub fn radical_count(&self) -> usize {
        fn walk(x: &ExactNumber, seen: &mut HashSet<*const Node>, count: &mut usize) {
            if !seen.insert(Arc::as_ptr(&x.0)) {
                return;
            }
            match &x.0.kind {
                Kind::Rat(_) => {}
                Kind::Add(a, b) | Kind::Sub(a, b) | Kind::Mul(a, b) | Kind::Div(a, b) => {
                    walk(a, seen, count);
                    walk(b, seen, count);
                }
                Kind::Sqrt(a) => {
                    *count += 1;
                    walk(a, seen, count);
                }
            }
        }
        let mut seen = HashSet::new();
        let mut count = 0;
        walk(self, &mut seen, &mut count);
        count
    }

    /// `B` such that a nonzero value has magnitude at least `2^-B`.
    pub fn separation_bits(&self) -> u64 {
        let bound = self.log_bound();
        let k = self.radical_count() as i32;
        let degree_minus_one = 2f64.powi(k) - 1.0;
        let bits = degree_minus_one * bound.log_u.max(0.0) + bound.log_l.max(0.0);
        // f64 slack; saturates for absurdly deep radical towers
        let bits = (bits * (1.0 + 1e-12)).ceil() + 2.0;
        if bits >= u64::MAX as f64 {
            u64::MAX
        } else {
            bits as u64
        }
    }
}

impl From<Rational> for ExactNumber {
    fn from(r: Rational) -> Self {
        ExactNumber::from_rational(r)
    }
}

impl From<i64> for ExactNumber {
    fn from(n: i64) -> Self {
        ExactNumber::from_integer(n)
    }
}

impl PartialEq for ExactNumber {
    fn eq(&self, other: &Self) -> bool {
        self.compare(other) == Ordering::Equal
    }
}

impl Eq for ExactNumber {}

impl PartialOrd for ExactNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.compare(other))
    }
}

impl Ord for ExactNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        self.compare(other)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&ExactNumber> for &ExactNumber {
            type Output = ExactNumber;
            fn $method(self, rhs: &ExactNumber) -> ExactNumber {
                ExactNumber::$method(self, rhs)
            }
        }
        impl $tr<ExactNumber> for ExactNumber {
            type Output = ExactNumber;
            fn $method(self, rhs: ExactNumber) -> ExactNumber {
                ExactNumber::$method(&self, &rhs)
            }
        }
        impl $tr<&ExactNumber> for ExactNumber {
            type Output = ExactNumber;
            fn $method(self, rhs: &ExactNumber) -> ExactNumber {
                ExactNumber::$method(&self, rhs)
            }
        }
        impl $tr<ExactNumber> for &ExactNumber {
            type Output = ExactNumber;
            fn $method(self, rhs: ExactNumber) -> ExactNumber {
                ExactNumber::$method(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl std::ops::Div<&ExactNumber> for &ExactNumber {
    type Output = ExactNumber;
    fn div(self, rhs: &ExactNumber) -> ExactNumber {
        ExactNumber::div(self, rhs)
    }
}

impl std::ops::Div<ExactNumber> for ExactNumber {
    type Output = ExactNumber;
    fn div(self, rhs: ExactNumber) -> ExactNumber {
        ExactNumber::div(&self, &rhs)
    }
}

impl Neg for &ExactNumber {
    type Output = ExactNumber;
    fn neg(self) -> ExactNumber {
        ExactNumber::neg(self)
    }
}

impl Neg for ExactNumber {
    type Output = ExactNumber;
    fn neg(self) -> ExactNumber {
        ExactNumber::neg(&self)
    }
}

impl fmt::Display for ExactNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.view() {
            NodeView::Rational(r) => write!(f, "{r}"),
            NodeView::Binary(op, a, b) => {
                let sym = match op {
                    Op::Add => "+",
                    Op::Sub => "-",
                    Op::Mul => "*",
                    _ => "/",
                };
                write!(f, "({a} {sym} {b})")
            }
            NodeView::Sqrt(a) => write!(f, "sqrt({a})"),
        }
    }
}

impl fmt::Debug for ExactNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(r) => write!(f, "{r}"),
            None => write!(f, "{} ~ {}", self, self.to_decimal(12)),
        }
    }
}
