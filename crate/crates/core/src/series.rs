//! Restricted power series `A<T>` with Gauss norms and tail bounds.
//!
//! A series stores coefficients of degree `0..=D` exactly (to base
//! precision) and one bound covering every coefficient of degree `> D`.
//! Polynomials have no tail. Nesting `RestrictedSeries<RestrictedSeries<_>>`
//! gives `A<X><T>`.

use std::fmt;

use crate::coeff::Coeff;
use crate::error::Result;
use crate::exponent::{NormExponent, NormValue};

pub const DEFAULT_MAX_DEGREE: usize = 512;

#[derive(Debug, Clone, PartialEq)]
pub struct SeriesCtx<R: Coeff> {
    pub base: R::Ctx,
    /// Coefficients above this degree are folded into the tail bound.
    pub max_degree: usize,
}

impl<R: Coeff> SeriesCtx<R> {
    pub fn new(base: R::Ctx) -> Self {
        SeriesCtx {
            base,
            max_degree: DEFAULT_MAX_DEGREE,
        }
    }

    pub fn with_max_degree(base: R::Ctx, max_degree: usize) -> Self {
        SeriesCtx { base, max_degree }
    }

    pub fn poly(&self, coeffs: Vec<R>) -> RestrictedSeries<R> {
        RestrictedSeries::polynomial(self, coeffs)
    }

    /// Polynomial with integer coefficients, lowest degree first.
    pub fn from_ints(&self, coeffs: &[i64]) -> RestrictedSeries<R> {
        let coeffs = coeffs.iter().map(|&c| R::from_int(&self.base, c)).collect();
        RestrictedSeries::polynomial(self, coeffs)
    }

    pub fn var(&self) -> RestrictedSeries<R> {
        self.from_ints(&[0, 1])
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RestrictedSeries<R: Coeff> {
    ctx: SeriesCtx<R>,
    coeffs: Vec<R>,
    /// Every coefficient of degree `≥ coeffs.len()` has norm `≤ p^(-tail)`.
    tail: Option<NormExponent>,
}

impl<R: Coeff> RestrictedSeries<R> {
    pub fn new(ctx: &SeriesCtx<R>, coeffs: Vec<R>, tail: Option<NormExponent>) -> Self {
        let mut s = RestrictedSeries {
            ctx: ctx.clone(),
            coeffs,
            tail,
        };
        s.fold_above(ctx.max_degree + 1);
        s
    }

    pub fn polynomial(ctx: &SeriesCtx<R>, coeffs: Vec<R>) -> Self {
        Self::new(ctx, coeffs, None)
    }

    pub fn zero(ctx: &SeriesCtx<R>) -> Self {
        Self::polynomial(ctx, Vec::new())
    }

    pub fn one(ctx: &SeriesCtx<R>) -> Self {
        Self::constant(ctx, R::one(&ctx.base))
    }

    pub fn constant(ctx: &SeriesCtx<R>, c: R) -> Self {
        Self::polynomial(ctx, vec![c])
    }

    pub fn monomial(ctx: &SeriesCtx<R>, c: R, degree: usize) -> Self {
        let mut coeffs = vec![R::zero(&ctx.base); degree];
        coeffs.push(c);
        Self::polynomial(ctx, coeffs)
    }

    pub fn series_ctx(&self) -> &SeriesCtx<R> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    /// Stored coefficient, or zero past the stored range of a polynomial.
    /// `None` past the stored range of a series with a tail.
    pub fn coeff(&self, i: usize) -> Option<R> {
        match self.coeffs.get(i) {
            Some(c) => Some(c.clone()),
            None if self.tail.is_none() => Some(R::zero(&self.ctx.base)),
            None => None,
        }
    }

    pub(crate) fn coeff_or_zero(&self, i: usize) -> R {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| R::zero(&self.ctx.base))
    }

    pub fn stored_len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn tail_exponent(&self) -> Option<&NormExponent> {
        self.tail.as_ref()
    }

    pub fn tail_bound(&self) -> NormValue {
        match &self.tail {
            None => NormValue::ExactZero,
            Some(e) => NormValue::AtMost(e.clone()),
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.tail.is_none()
    }

    /// Degree of the last stored coefficient with a visible (Exact) norm.
    pub fn visible_degree(&self) -> Option<usize> {
        self.coeffs
            .iter()
            .rposition(|c| matches!(c.norm(), NormValue::Exact(_)))
    }

    fn join_tail(&mut self, bound: &NormValue) {
        let merged = self.tail_bound().max(&bound.as_bound());
        self.tail = merged.bound_exponent().cloned();
    }

    /// Moves coefficients of degree `≥ len` into the tail bound.
    fn fold_above(&mut self, len: usize) {
        if self.coeffs.len() <= len {
            return;
        }
        let folded: Vec<R> = self.coeffs.drain(len..).collect();
        for c in folded {
            self.join_tail(&c.norm());
        }
    }

    /// Drops trailing coefficients that vanish at the working precision,
    /// folding their bounds into the tail.
    pub fn trimmed(&self) -> Self {
        let mut out = self.clone();
        for c in out.coeffs.iter_mut() {
            *c = c.trimmed();
        }
        let keep = out
            .coeffs
            .iter()
            .rposition(|c| !c.is_zero_at_precision())
            .map_or(0, |i| i + 1);
        let all_zero_poly = keep == 0 && out.tail.is_none();
        out.fold_above(keep);
        if all_zero_poly {
            // zero at precision; keep one stored coefficient rather than
            // claim an exact zero
            out.coeffs.clear();
        }
        out
    }

    /// Sound stored length for a combination of `self` and `other`: a tail
    /// on either side makes higher stored degrees uncertain.
    fn combined_len(&self, other: &Self, natural: usize) -> usize {
        let mut len = natural.min(self.ctx.max_degree + 1);
        if !self.tail_is_negligible() {
            len = len.min(self.coeffs.len());
        }
        if !other.tail_is_negligible() {
            len = len.min(other.coeffs.len());
        }
        len
    }

    /// A tail at or below the working precision perturbs stored
    /// coefficients only below their own caps.
    fn tail_is_negligible(&self) -> bool {
        match &self.tail {
            None => true,
            Some(e) => e
                .compare(&R::precision(&self.ctx.base))
                .is_ok_and(|o| o != std::cmp::Ordering::Less),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs: Vec<R> = (0..n)
            .map(|i| self.coeff_or_zero(i).add(&other.coeff_or_zero(i)))
            .collect();
        let len = self.combined_len(other, n);
        let mut out = RestrictedSeries {
            ctx: self.ctx.clone(),
            coeffs,
            tail: None,
        };
        out.join_tail(&self.tail_bound());
        out.join_tail(&other.tail_bound());
        out.fold_above(len);
        out
    }

    pub fn neg(&self) -> Self {
        RestrictedSeries {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(Coeff::neg).collect(),
            tail: self.tail.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Cauchy product.
    pub fn mul(&self, other: &Self) -> Self {
        let natural = if self.coeffs.is_empty() || other.coeffs.is_empty() {
            0
        } else {
            self.coeffs.len() + other.coeffs.len() - 1
        };
        let len = self.combined_len(other, natural);
        // coefficients past the ceiling only contribute their norms
        let computed = natural.min(self.ctx.max_degree.saturating_mul(2) + 2);
        let zero = R::zero(&self.ctx.base);
        let mut coeffs = vec![zero; computed];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero_at_precision() && matches!(a.norm(), NormValue::ExactZero) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j < computed {
                    coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
                }
            }
        }
        let mut out = RestrictedSeries {
            ctx: self.ctx.clone(),
            coeffs,
            tail: None,
        };
        out.join_tail(&self.tail_bound().mul(&other.gauss_norm()));
        out.join_tail(&other.tail_bound().mul(&self.gauss_norm()));
        out.fold_above(len);
        out
    }

    /// Multiplies every coefficient by a base element.
    pub fn scale(&self, c: &R) -> Self {
        let mut out = RestrictedSeries {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
            tail: None,
        };
        out.join_tail(&self.tail_bound().mul(&c.norm()));
        out
    }

    /// Multiplies by `T^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        let mut coeffs = vec![R::zero(&self.ctx.base); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(&self.ctx, coeffs, self.tail.clone())
    }

    /// Maximum of the coefficient norms joined with the tail bound.
    pub fn gauss_norm(&self) -> NormValue {
        self.coeffs
            .iter()
            .fold(self.tail_bound(), |acc, c| acc.max(&c.norm()))
    }

    /// `f = low + T^n0 · high` with `deg low < n0`.
    pub fn split_at(&self, n0: usize) -> (Self, Self) {
        let cut = n0.min(self.coeffs.len());
        let low_coeffs = self.coeffs[..cut].to_vec();
        let high_coeffs = self.coeffs[cut..].to_vec();
        // with a tail, degrees between the stored range and n0 are unknown
        let low_tail = if n0 > self.coeffs.len() {
            self.tail.clone()
        } else {
            None
        };
        let low = RestrictedSeries {
            ctx: self.ctx.clone(),
            coeffs: low_coeffs,
            tail: low_tail,
        };
        let high = RestrictedSeries {
            ctx: self.ctx.clone(),
            coeffs: high_coeffs,
            tail: self.tail.clone(),
        };
        (low, high)
    }

    /// Every coefficient and the tail agree with `other` to `p^(-n)`.
    pub fn agrees_to(&self, other: &Self, n: &NormExponent) -> bool {
        self.sub(other).gauss_norm().is_le(&NormValue::Exact(n.clone())) == Some(true)
    }

    /// Evaluates a polynomial at a base element (Horner).
    pub fn eval(&self, x: &R) -> R {
        self.coeffs
            .iter()
            .rev()
            .fold(R::zero(&self.ctx.base), |acc, c| acc.mul(x).add(c))
    }

    pub fn map_coeffs(&self, f: impl Fn(&R) -> R) -> Self {
        RestrictedSeries {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(f).collect(),
            tail: self.tail.clone(),
        }
    }
}

impl<R: Coeff> Coeff for RestrictedSeries<R> {
    type Ctx = SeriesCtx<R>;

    fn ctx(&self) -> SeriesCtx<R> {
        self.ctx.clone()
    }

    fn zero(ctx: &SeriesCtx<R>) -> Self {
        RestrictedSeries::zero(ctx)
    }

    fn one(ctx: &SeriesCtx<R>) -> Self {
        RestrictedSeries::one(ctx)
    }

    fn from_int(ctx: &SeriesCtx<R>, n: i64) -> Self {
        RestrictedSeries::constant(ctx, R::from_int(&ctx.base, n))
    }

    fn add(&self, other: &Self) -> Self {
        RestrictedSeries::add(self, other)
    }

    fn neg(&self) -> Self {
        RestrictedSeries::neg(self)
    }

    fn mul(&self, other: &Self) -> Self {
        RestrictedSeries::mul(self, other)
    }

    fn norm(&self) -> NormValue {
        self.gauss_norm()
    }

    fn is_unit(&self) -> Result<bool> {
        crate::newton::is_unit_tate(self)
    }

    fn inv(&self) -> Result<Self> {
        crate::weierstrass::invert_unit_series(self)
    }

    fn precision(ctx: &SeriesCtx<R>) -> NormExponent {
        R::precision(&ctx.base)
    }

    fn prime(ctx: &SeriesCtx<R>) -> u64 {
        R::prime(&ctx.base)
    }

    fn trimmed(&self) -> Self {
        RestrictedSeries::trimmed(self)
    }

    fn is_zero_at_precision(&self) -> bool {
        !matches!(self.gauss_norm(), NormValue::Exact(_))
    }
}

impl<R: Coeff + fmt::Display> fmt::Display for RestrictedSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if matches!(c.norm(), NormValue::Exact(_)) {
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                match i {
                    0 => write!(f, "({c})")?,
                    1 => write!(f, "({c})*T")?,
                    _ => write!(f, "({c})*T^{i}")?,
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        if let Some(e) = &self.tail {
            write!(f, " + [tail <= p^-({e})]")?;
        }
        Ok(())
    }
}
