//! The coefficient-ring abstraction shared by every normed base.

use std::fmt;

use crate::error::Result;
use crate::exponent::{NormExponent, NormValue};

/// A commutative normed ring with capped precision, usable as the base `A`
/// of a Tate algebra `A<T>`.
///
/// Norms are `p^(-e)` with the same prime throughout; `|p| = p^(-1)`.
pub trait Coeff: Clone + fmt::Debug + PartialEq + Send + Sync {
    /// Ring descriptor (prime, cap, nesting).
    type Ctx: Clone + fmt::Debug + PartialEq + Send + Sync;

    fn ctx(&self) -> Self::Ctx;
    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn from_int(ctx: &Self::Ctx, n: i64) -> Self;

    fn add(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn norm(&self) -> NormValue;

    /// Whether the element is invertible; `Err` when precision cannot decide.
    fn is_unit(&self) -> Result<bool>;
    fn inv(&self) -> Result<Self>;

    /// Working precision `N`: results are asserted modulo `p^N`.
    fn precision(ctx: &Self::Ctx) -> NormExponent;

    fn prime(ctx: &Self::Ctx) -> u64;

    /// Drops internal storage that vanishes at the working precision.
    fn trimmed(&self) -> Self {
        self.clone()
    }

    fn is_zero_at_precision(&self) -> bool {
        !matches!(self.norm(), NormValue::Exact(_))
    }

    /// `|self - other| ≤ p^(-n)` is certain.
    fn agrees_to(&self, other: &Self, n: &NormExponent) -> bool {
        self.sub(other).norm().is_le(&NormValue::Exact(n.clone())) == Some(true)
    }
}
