//! Exact norm exponents and norm values.
//!
//! A norm is always written `p^(-e)`; larger exponents mean smaller norms.
//! Exponents live in `Q + Q·τ` where `τ` is either `1` or a fixed quadratic
//! irrational `u + v·√d`, so every comparison is decided by exact rational
//! arithmetic.

use std::cmp::Ordering;
use std::fmt;

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Rational numbers used for exponents and slopes.
pub type Q = Ratio<i128>;

pub fn q(n: i128, d: i128) -> Q {
    Q::new(n, d)
}

pub fn qi(n: i128) -> Q {
    Q::from_integer(n)
}

pub(crate) fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// The real number `u + v·√d` with `d` a positive non-square and `v ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadraticScale {
    u: Q,
    v: Q,
    d: i128,
}

impl QuadraticScale {
    /// Returns `None` when `d` is a perfect square (or not positive), or when
    /// `v = 0`; those values are rational and belong to the unit scale.
    pub fn new(u: Q, v: Q, d: i128) -> Option<Self> {
        if d <= 0 || v.is_zero() || is_square(d) {
            return None;
        }
        Some(QuadraticScale { u, v, d })
    }

    pub fn u(&self) -> &Q {
        &self.u
    }

    pub fn v(&self) -> &Q {
        &self.v
    }

    pub fn d(&self) -> i128 {
        self.d
    }

    pub fn to_f64(&self) -> f64 {
        ratio_f64(&self.u) + ratio_f64(&self.v) * (self.d as f64).sqrt()
    }

    /// Sign of `x + y·τ`.
    pub fn sign_of(&self, x: &Q, y: &Q) -> Ordering {
        // x + y(u + v√d) = (x + yu) + (yv)√d
        let rat = x + y * self.u;
        let irr = y * self.v;
        sign_sqrt(&rat, &irr, self.d)
    }
}

/// `a + b*x` with the zero and unit cases collapsed.
fn fmt_linear(a: &Q, b: &Q, x: &str) -> String {
    let term = if b.is_one() {
        x.to_string()
    } else if *b == -Q::one() {
        format!("-{x}")
    } else {
        format!("{}*{x}", fmt_q(b))
    };
    if a.is_zero() {
        term
    } else if *b < Q::zero() {
        format!("{} - {}", fmt_q(a), term.trim_start_matches('-'))
    } else {
        format!("{} + {term}", fmt_q(a))
    }
}

impl fmt::Display for QuadraticScale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = fmt_linear(&self.u, &self.v, &format!("sqrt({})", self.d));
        if self.u.is_zero() {
            write!(f, "{s}")
        } else {
            write!(f, "({s})")
        }
    }
}

fn is_square(d: i128) -> bool {
    if d < 0 {
        return false;
    }
    let r = num_integer::Roots::sqrt(&d);
    r * r == d
}

fn ratio_f64(x: &Q) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

/// Exact sign of `x + y·√d` for a non-square `d > 0`.
pub(crate) fn sign_sqrt(x: &Q, y: &Q, d: i128) -> Ordering {
    let sx = x.cmp(&Q::zero());
    let sy = y.cmp(&Q::zero());
    match (sx, sy) {
        (_, Ordering::Equal) => sx,
        (Ordering::Equal, _) => sy,
        (Ordering::Greater, Ordering::Greater) => Ordering::Greater,
        (Ordering::Less, Ordering::Less) => Ordering::Less,
        _ => {
            // opposite signs: compare x^2 with d*y^2
            let lhs = x * x;
            let rhs = y * y * qi(d);
            match lhs.cmp(&rhs) {
                Ordering::Equal => unreachable!("d is not a square"),
                Ordering::Greater => sx,
                Ordering::Less => sy,
            }
        }
    }
}

/// Scale of an exponent: `τ = 1` or a quadratic irrational.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scale {
    Unit,
    Quadratic(QuadraticScale),
}

/// The exponent `a + b·τ`. Kept canonical: `b = 0` exactly when the scale is
/// the unit scale, so structural equality is value equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NormExponent {
    a: Q,
    b: Q,
    scale: Scale,
}

impl NormExponent {
    pub fn new(a: Q, b: Q, scale: Scale) -> Self {
        match scale {
            Scale::Unit => NormExponent::rational(a + b),
            Scale::Quadratic(s) => {
                if b.is_zero() {
                    NormExponent::rational(a)
                } else {
                    NormExponent {
                        a,
                        b,
                        scale: Scale::Quadratic(s),
                    }
                }
            }
        }
    }

    pub fn rational(a: Q) -> Self {
        NormExponent {
            a,
            b: Q::zero(),
            scale: Scale::Unit,
        }
    }

    pub fn integer(n: i128) -> Self {
        NormExponent::rational(qi(n))
    }

    pub fn zero() -> Self {
        NormExponent::integer(0)
    }

    pub fn a(&self) -> &Q {
        &self.a
    }

    pub fn b(&self) -> &Q {
        &self.b
    }

    pub fn scale(&self) -> &Scale {
        &self.scale
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Q> {
        self.is_rational().then_some(&self.a)
    }

    pub fn to_f64(&self) -> f64 {
        match &self.scale {
            Scale::Unit => ratio_f64(&self.a),
            Scale::Quadratic(s) => ratio_f64(&self.a) + ratio_f64(&self.b) * s.to_f64(),
        }
    }

    fn common_scale<'a>(&'a self, other: &'a Self) -> Result<Option<&'a QuadraticScale>> {
        match (&self.scale, &other.scale) {
            (Scale::Unit, Scale::Unit) => Ok(None),
            (Scale::Quadratic(s), Scale::Unit) | (Scale::Unit, Scale::Quadratic(s)) => Ok(Some(s)),
            (Scale::Quadratic(s), Scale::Quadratic(t)) if s == t => Ok(Some(s)),
            _ => Err(Error::IncompatibleScales),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let scale = match self.common_scale(other)? {
            None => Scale::Unit,
            Some(s) => Scale::Quadratic(s.clone()),
        };
        Ok(NormExponent::new(self.a + other.a, self.b + other.b, scale))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        NormExponent {
            a: -self.a,
            b: -self.b,
            scale: self.scale.clone(),
        }
    }

    /// Multiplies the exponent by a rational number.
    pub fn scale_by(&self, k: &Q) -> Self {
        NormExponent::new(self.a * k, self.b * k, self.scale.clone())
    }

    /// Exact total comparison; errors only on two different irrational scales.
    pub fn compare(&self, other: &Self) -> Result<Ordering> {
        let da = self.a - other.a;
        let db = self.b - other.b;
        Ok(match self.common_scale(other)? {
            None => da.cmp(&Q::zero()),
            Some(s) => s.sign_of(&da, &db),
        })
    }

    pub fn is_positive(&self) -> bool {
        self.compare(&NormExponent::zero()) == Ok(Ordering::Greater)
    }
}

impl fmt::Display for NormExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.scale {
            Scale::Unit => write!(f, "{}", fmt_q(&self.a)),
            Scale::Quadratic(s) => write!(f, "{}", fmt_linear(&self.a, &self.b, &s.to_string())),
        }
    }
}

impl From<Q> for NormExponent {
    fn from(a: Q) -> Self {
        NormExponent::rational(a)
    }
}

impl From<i128> for NormExponent {
    fn from(n: i128) -> Self {
        NormExponent::integer(n)
    }
}

/// A norm `p^(-e)`, known exactly, known only from above, or exactly zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum NormValue {
    ExactZero,
    Exact(NormExponent),
    /// `≤ p^(-e)`, possibly zero.
    AtMost(NormExponent),
}

/// Magnitude endpoint used for interval comparisons.
#[derive(Clone, Copy)]
enum Mag<'a> {
    Zero,
    Pow(&'a NormExponent),
}

fn mag_cmp(x: Mag<'_>, y: Mag<'_>) -> Option<Ordering> {
    match (x, y) {
        (Mag::Zero, Mag::Zero) => Some(Ordering::Equal),
        (Mag::Zero, Mag::Pow(_)) => Some(Ordering::Less),
        (Mag::Pow(_), Mag::Zero) => Some(Ordering::Greater),
        // bigger exponent, smaller norm
        (Mag::Pow(a), Mag::Pow(b)) => b.compare(a).ok(),
    }
}

impl NormValue {
    pub fn one() -> Self {
        NormValue::Exact(NormExponent::zero())
    }

    pub fn exact(e: impl Into<NormExponent>) -> Self {
        NormValue::Exact(e.into())
    }

    pub fn at_most(e: impl Into<NormExponent>) -> Self {
        NormValue::AtMost(e.into())
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, NormValue::AtMost(_))
    }

    /// The exponent of an `Exact` value.
    pub fn exact_exponent(&self) -> Option<&NormExponent> {
        match self {
            NormValue::Exact(e) => Some(e),
            _ => None,
        }
    }

    /// The exponent of the upper bound, `None` for an exact zero.
    pub fn bound_exponent(&self) -> Option<&NormExponent> {
        match self {
            NormValue::ExactZero => None,
            NormValue::Exact(e) | NormValue::AtMost(e) => Some(e),
        }
    }

    fn sup(&self) -> Mag<'_> {
        match self.bound_exponent() {
            None => Mag::Zero,
            Some(e) => Mag::Pow(e),
        }
    }

    fn inf(&self) -> Mag<'_> {
        match self {
            NormValue::Exact(e) => Mag::Pow(e),
            _ => Mag::Zero,
        }
    }

    /// `Some(true)` when `self ≤ other` is certain, `Some(false)` when
    /// `self > other` is certain, `None` when the bounds straddle.
    pub fn is_le(&self, other: &Self) -> Option<bool> {
        if mag_cmp(self.sup(), other.inf())? != Ordering::Greater {
            return Some(true);
        }
        if mag_cmp(self.inf(), other.sup())? == Ordering::Greater {
            return Some(false);
        }
        None
    }

    /// Three-valued strict comparison `self < other`.
    pub fn is_lt(&self, other: &Self) -> Option<bool> {
        if mag_cmp(self.sup(), other.inf())? == Ordering::Less {
            return Some(true);
        }
        if mag_cmp(self.inf(), other.sup())? != Ordering::Less {
            return Some(false);
        }
        None
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        use NormValue::*;
        Ok(match (self, other) {
            (ExactZero, _) | (_, ExactZero) => ExactZero,
            (Exact(a), Exact(b)) => Exact(a.checked_add(b)?),
            (Exact(a) | AtMost(a), Exact(b) | AtMost(b)) => AtMost(a.checked_add(b)?),
        })
    }

    /// The maximum of two norms.
    pub fn try_max(&self, other: &Self) -> Result<Self> {
        use NormValue::*;
        Ok(match (self, other) {
            (ExactZero, x) | (x, ExactZero) => x.clone(),
            (Exact(a), Exact(b)) => Exact(min_exp(a, b)?.clone()),
            (Exact(a), AtMost(b)) | (AtMost(b), Exact(a)) => {
                // max(p^-a, something ≤ p^-b) is exactly p^-a once a ≤ b
                if a.compare(b)? != Ordering::Greater {
                    Exact(a.clone())
                } else {
                    AtMost(b.clone())
                }
            }
            (AtMost(a), AtMost(b)) => AtMost(min_exp(a, b)?.clone()),
        })
    }

    /// The ultrametric bound on `|x + y|` given `|x| = self`, `|y| = other`.
    pub fn try_sum_bound(&self, other: &Self) -> Result<Self> {
        use NormValue::*;
        Ok(match (self, other) {
            (ExactZero, x) | (x, ExactZero) => x.clone(),
            (Exact(a), Exact(b)) => match a.compare(b)? {
                Ordering::Equal => AtMost(a.clone()),
                _ => Exact(min_exp(a, b)?.clone()),
            },
            (Exact(a), AtMost(b)) | (AtMost(b), Exact(a)) => {
                if a.compare(b)? == Ordering::Less {
                    Exact(a.clone())
                } else {
                    AtMost(min_exp(a, b)?.clone())
                }
            }
            (AtMost(a), AtMost(b)) => AtMost(min_exp(a, b)?.clone()),
        })
    }

    /// Like [`try_max`](Self::try_max); panics on incompatible irrational
    /// scales, which never meet in rational-exponent code paths.
    pub fn max(&self, other: &Self) -> Self {
        self.try_max(other)
            .expect("norm exponents with incompatible scales")
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other)
            .expect("norm exponents with incompatible scales")
    }

    pub fn sum_bound(&self, other: &Self) -> Self {
        self.try_sum_bound(other)
            .expect("norm exponents with incompatible scales")
    }

    /// Weakens an exact value to an upper bound.
    pub fn as_bound(&self) -> Self {
        match self {
            NormValue::Exact(e) => NormValue::AtMost(e.clone()),
            other => other.clone(),
        }
    }
}

fn min_exp<'a>(a: &'a NormExponent, b: &'a NormExponent) -> Result<&'a NormExponent> {
    Ok(if a.compare(b)? == Ordering::Greater { b } else { a })
}

impl fmt::Display for NormValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormValue::ExactZero => write!(f, "0"),
            NormValue::Exact(e) => write!(f, "p^-({e})"),
            NormValue::AtMost(e) => write!(f, "<= p^-({e})"),
        }
    }
}

/// Ceiling of a positive exponent divided into another positive exponent:
/// the least `k ≥ 1` with `k·step ≥ target`.
pub fn steps_to_reach(step: &NormExponent, target: &NormExponent) -> Result<u64> {
    if !step.is_positive() {
        return Err(Error::ContractionFailure(format!(
            "step exponent {step} is not positive"
        )));
    }
    let mut k = 1u64;
    loop {
        if step.scale_by(&qi(k as i128)).compare(target)? != Ordering::Less {
            return Ok(k);
        }
        k += 1;
    }
}
