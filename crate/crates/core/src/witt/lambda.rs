//! The norms `λ_t` and `λ_[s,r]`, membership in `Σ_L`, and dominant terms.

use std::cmp::Ordering;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exponent::{NormExponent, NormValue, QuadraticScale, Scale, Q};
use crate::witt::teich::TeichSum;

/// A radius `t > 0`: rational, or a quadratic irrational `u + v√d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LambdaParam {
    Rational(Q),
    Quadratic(QuadraticScale),
}

impl LambdaParam {
    pub fn rational(t: Q) -> Result<Self> {
        if t <= Q::zero() {
            return Err(Error::ContextMismatch(format!("t = {t} is not positive")));
        }
        Ok(LambdaParam::Rational(t))
    }

    /// `u + v√d`; collapses to a rational when `d` is a square or `v = 0`.
    pub fn quadratic(u: Q, v: Q, d: i128) -> Result<Self> {
        match QuadraticScale::new(u, v, d) {
            Some(s) => {
                if s.sign_of(&Q::zero(), &Q::from_integer(1)) != Ordering::Greater {
                    return Err(Error::ContextMismatch(format!("t = {s} is not positive")));
                }
                Ok(LambdaParam::Quadratic(s))
            }
            None => {
                if d < 0 {
                    return Err(Error::ContextMismatch("negative radicand".into()));
                }
                let r = num_integer::Roots::sqrt(&d);
                if !v.is_zero() && r * r != d {
                    return Err(Error::ContextMismatch("invalid radius".into()));
                }
                Self::rational(u + v * Q::from_integer(r))
            }
        }
    }

    pub fn sqrt(d: i128) -> Result<Self> {
        Self::quadratic(Q::zero(), Q::from_integer(1), d)
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, LambdaParam::Rational(_))
    }

    /// `n + t·e`, the exponent of `p^(-n) |x|^t` when `|x| = p^(-e)`.
    pub fn exponent(&self, n: Q, e: Q) -> NormExponent {
        match self {
            LambdaParam::Rational(t) => NormExponent::rational(n + t * e),
            LambdaParam::Quadratic(s) => NormExponent::new(n, e, Scale::Quadratic(s.clone())),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            LambdaParam::Rational(t) => *t.numer() as f64 / *t.denom() as f64,
            LambdaParam::Quadratic(s) => s.to_f64(),
        }
    }
}

impl fmt::Display for LambdaParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LambdaParam::Rational(t) => write!(f, "{t}"),
            LambdaParam::Quadratic(s) => write!(f, "{s}"),
        }
    }
}

/// Norm of one term `p^n [x]`: Exact, or a bound when `x` is below
/// precision.
pub fn term_norm(n: i64, x: &crate::perf::PerfElement, t: &LambdaParam) -> NormValue {
    let n = Q::from_integer(n as i128);
    match (x.valuation(), x.precision()) {
        (Some(e), _) => NormValue::Exact(t.exponent(n, e)),
        (None, Some(m)) => NormValue::AtMost(t.exponent(n, m)),
        (None, None) => NormValue::ExactZero,
    }
}

/// `max_n p^(-n) |x_n|^t`, possibly only a bound when a coefficient is
/// below precision.
pub fn lambda_bound(x: &TeichSum, t: &LambdaParam) -> Result<NormValue> {
    x.terms().try_fold(NormValue::ExactZero, |acc, (n, xn)| {
        acc.try_max(&term_norm(n, xn, t))
    })
}

/// `λ_t(x)`; indeterminate when a bounded coefficient could attain the max.
pub fn lambda_norm(x: &TeichSum, t: &LambdaParam) -> Result<NormValue> {
    let v = lambda_bound(x, t)?;
    if let NormValue::AtMost(e) = &v {
        return Err(Error::Indeterminate(format!(
            "coefficient below precision may attain λ = p^-({e})"
        )));
    }
    Ok(v)
}

/// `λ_[s,r] = max(λ_s, λ_r)`.
pub fn lambda_interval(x: &TeichSum, s: &LambdaParam, r: &LambdaParam) -> Result<NormValue> {
    if s.to_f64() > r.to_f64() {
        return Err(Error::ContextMismatch("interval with s > r".into()));
    }
    lambda_norm(x, s)?.try_max(&lambda_norm(x, r)?)
}

/// `t ∈ Σ_L`: for `L` with value group `p^Q`, exactly the rational radii.
pub fn sigma_membership(t: &LambdaParam) -> bool {
    t.is_rational()
}

#[derive(Debug, Clone, PartialEq)]
pub enum Dominance {
    Dominant {
        index: i64,
        exponent: NormExponent,
        /// No two term norms coincide.
        pairwise_distinct: bool,
    },
    /// Indices whose term norms tie for the maximum.
    Tie(Vec<i64>),
}

/// The term of strictly largest norm.
pub fn dominant_term(x: &TeichSum, t: &LambdaParam) -> Result<Dominance> {
    let mut exps: Vec<(i64, NormExponent)> = Vec::new();
    for (n, xn) in x.terms() {
        match term_norm(n, xn, t) {
            NormValue::Exact(e) => exps.push((n, e)),
            NormValue::AtMost(_) => {
                return Err(Error::Indeterminate(format!(
                    "coefficient of p^{n} below precision"
                )))
            }
            NormValue::ExactZero => {}
        }
    }
    if exps.is_empty() {
        return Err(Error::Indeterminate("empty Teichmüller sum".into()));
    }
    let mut best = 0;
    for i in 1..exps.len() {
        if exps[i].1.compare(&exps[best].1)? == Ordering::Less {
            best = i;
        }
    }
    let mut tied = Vec::new();
    let mut pairwise_distinct = true;
    for i in 0..exps.len() {
        for j in i + 1..exps.len() {
            if exps[i].1.compare(&exps[j].1)? == Ordering::Equal {
                pairwise_distinct = false;
            }
        }
        if exps[i].1.compare(&exps[best].1)? == Ordering::Equal {
            tied.push(exps[i].0);
        }
    }
    if tied.len() > 1 {
        debug_assert!(sigma_membership(t), "ties need a radius in Σ_L");
        return Ok(Dominance::Tie(tied));
    }
    Ok(Dominance::Dominant {
        index: exps[best].0,
        exponent: exps[best].1.clone(),
        pairwise_distinct,
    })
}
