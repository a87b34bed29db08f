//! `Q_p` at capped absolute precision.
//!
//! An element is `m · p^(-s)` known modulo `p^N`, stored with
//! `0 ≤ m < p^(N+s)` and `s > 0` only when `p ∤ m`. Moduli are kept inside
//! `u64`; when an operation would need more room the result silently gives
//! up precision, which never overclaims.

use std::fmt;

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::exponent::{NormExponent, NormValue};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QpCtx {
    pub p: u64,
    pub cap: i32,
}

impl QpCtx {
    pub fn new(p: u64, cap: i32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::ContextMismatch(format!("{p} is not prime")));
        }
        if cap < 1 || cap > max_exp(p) as i32 {
            return Err(Error::ContextMismatch(format!(
                "cap {cap} outside 1..={} for p = {p}",
                max_exp(p)
            )));
        }
        Ok(QpCtx { p, cap })
    }

    pub fn elem(&self, n: i64) -> PadicElement {
        PadicElement::from_i64(self, n)
    }
}

pub(crate) fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Largest `e` with `p^e` representable in a `u64`.
pub(crate) fn max_exp(p: u64) -> u32 {
    let mut e = 0;
    let mut acc: u64 = 1;
    while let Some(next) = acc.checked_mul(p) {
        acc = next;
        e += 1;
    }
    e
}

pub(crate) fn pow_u128(p: u64, e: u32) -> u128 {
    (p as u128).pow(e)
}

fn pow_mod(p: u64, mut e: u32, m: u128) -> u128 {
    let mut base = p as u128 % m;
    let mut acc = 1u128 % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m` for `gcd(a, m) = 1`.
pub(crate) fn mod_inv(a: u128, m: u128) -> u128 {
    if m == 1 {
        return 0;
    }
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let quot = old_r / r;
        (old_r, r) = (r, old_r - quot * r);
        (old_s, s) = (s, old_s - quot * s);
    }
    debug_assert_eq!(old_r, 1, "not invertible");
    old_s.rem_euclid(m as i128) as u128
}

fn vp_u128(mut m: u128, p: u64) -> u32 {
    debug_assert!(m != 0);
    let p = p as u128;
    let mut v = 0;
    while m.is_multiple_of(p) {
        m /= p;
        v += 1;
    }
    v
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PadicElement {
    p: u64,
    ring_cap: i32,
    cap: i32,
    shift: u32,
    mantissa: u64,
}

impl PadicElement {
    fn build(p: u64, ring_cap: i32, mut cap: i32, mut shift: u32, mut m: u128) -> Self {
        let pp = p as u128;
        if m == 0 {
            shift = 0;
        }
        while shift > 0 && m.is_multiple_of(pp) {
            m /= pp;
            shift -= 1;
        }
        let room = max_exp(p) as i32;
        if cap + shift as i32 > room {
            cap = room - shift as i32;
        }
        let e = cap + shift as i32;
        if e <= 0 {
            return PadicElement {
                p,
                ring_cap,
                cap,
                shift: 0,
                mantissa: 0,
            };
        }
        let modulus = pow_u128(p, e as u32);
        m %= modulus;
        if m == 0 {
            shift = 0;
        }
        PadicElement {
            p,
            ring_cap,
            cap,
            shift,
            mantissa: m as u64,
        }
    }

    pub fn zero(ctx: &QpCtx) -> Self {
        Self::build(ctx.p, ctx.cap, ctx.cap, 0, 0)
    }

    pub fn one(ctx: &QpCtx) -> Self {
        Self::from_i64(ctx, 1)
    }

    pub fn from_i64(ctx: &QpCtx, n: i64) -> Self {
        let modulus = pow_u128(ctx.p, ctx.cap as u32) as i128;
        let m = (n as i128).rem_euclid(modulus) as u128;
        Self::build(ctx.p, ctx.cap, ctx.cap, 0, m)
    }

    /// `num / den` at the ring cap.
    pub fn from_rational(ctx: &QpCtx, num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::parse("denominator", "division by zero"));
        }
        let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
        let mut d = den as u128;
        let mut s = 0u32;
        while d.is_multiple_of(ctx.p as u128) {
            d /= ctx.p as u128;
            s += 1;
        }
        let e = (ctx.cap + s as i32).min(max_exp(ctx.p) as i32);
        let modulus = pow_u128(ctx.p, e as u32);
        let n = (num as i128).rem_euclid(modulus as i128) as u128;
        let m = n * mod_inv(d % modulus, modulus) % modulus;
        Ok(Self::build(ctx.p, ctx.cap, e - s as i32, s, m))
    }

    /// `mantissa · p^(-shift)` at the ring cap.
    pub fn from_parts(ctx: &QpCtx, mantissa: i128, shift: u32) -> Self {
        let e = (ctx.cap + shift as i32).min(max_exp(ctx.p) as i32);
        let modulus = pow_u128(ctx.p, e.max(0) as u32) as i128;
        let m = mantissa.rem_euclid(modulus.max(1)) as u128;
        Self::build(ctx.p, ctx.cap, e - shift as i32, shift, m)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Absolute precision: the element is known modulo `p^cap`.
    pub fn cap(&self) -> i32 {
        self.cap
    }

    pub fn shift(&self) -> u32 {
        self.shift
    }

    pub fn mantissa(&self) -> u64 {
        self.mantissa
    }

    fn modulus(&self) -> u128 {
        let e = self.cap + self.shift as i32;
        if e <= 0 {
            1
        } else {
            pow_u128(self.p, e as u32)
        }
    }

    /// The p-adic valuation, or `None` when the element vanishes at its cap.
    pub fn valuation(&self) -> Option<i32> {
        (self.mantissa != 0).then(|| vp_u128(self.mantissa as u128, self.p) as i32 - self.shift as i32)
    }

    /// Valuation bound used in precision propagation (`cap` for zero).
    fn val_or_cap(&self) -> i32 {
        self.valuation().unwrap_or(self.cap)
    }

    /// Forgets digits at and beyond `p^cap`.
    pub fn with_cap(&self, cap: i32) -> Self {
        let cap = cap.min(self.cap);
        Self::build(
            self.p,
            self.ring_cap.min(cap.max(1)),
            cap,
            self.shift,
            self.mantissa as u128,
        )
    }

    fn same_prime(&self, other: &Self) {
        assert_eq!(self.p, other.p, "p-adic elements over different primes");
    }

    /// Signed representative of the mantissa, in `(-M/2, M/2]`.
    pub fn signed_mantissa(&self) -> i128 {
        let m = self.mantissa as i128;
        let modulus = self.modulus() as i128;
        if 2 * m > modulus {
            m - modulus
        } else {
            m
        }
    }
}

impl Coeff for PadicElement {
    type Ctx = QpCtx;

    fn ctx(&self) -> QpCtx {
        QpCtx {
            p: self.p,
            cap: self.ring_cap,
        }
    }

    fn zero(ctx: &QpCtx) -> Self {
        PadicElement::zero(ctx)
    }

    fn one(ctx: &QpCtx) -> Self {
        PadicElement::one(ctx)
    }

    fn from_int(ctx: &QpCtx, n: i64) -> Self {
        PadicElement::from_i64(ctx, n)
    }

    fn add(&self, other: &Self) -> Self {
        self.same_prime(other);
        let s = self.shift.max(other.shift);
        let cap = self.cap.min(other.cap);
        let e = (cap + s as i32).clamp(0, max_exp(self.p) as i32);
        let modulus = pow_u128(self.p, e as u32);
        let a = self.mantissa as u128 % modulus * pow_mod(self.p, s - self.shift, modulus) % modulus;
        let b = other.mantissa as u128 % modulus * pow_mod(self.p, s - other.shift, modulus) % modulus;
        Self::build(
            self.p,
            self.ring_cap.min(other.ring_cap),
            e - s as i32,
            s,
            (a + b) % modulus,
        )
    }

    fn neg(&self) -> Self {
        let modulus = self.modulus();
        let m = (modulus - self.mantissa as u128 % modulus) % modulus;
        Self::build(self.p, self.ring_cap, self.cap, self.shift, m)
    }

    fn mul(&self, other: &Self) -> Self {
        self.same_prime(other);
        let cap = (self.cap + other.val_or_cap())
            .min(other.cap + self.val_or_cap())
            .min(self.cap)
            .min(other.cap);
        let m = self.mantissa as u128 * other.mantissa as u128;
        Self::build(
            self.p,
            self.ring_cap.min(other.ring_cap),
            cap,
            self.shift + other.shift,
            m,
        )
    }

    fn norm(&self) -> NormValue {
        match self.valuation() {
            Some(v) => NormValue::exact(v as i128),
            None => NormValue::at_most(self.cap as i128),
        }
    }

    fn is_unit(&self) -> Result<bool> {
        if self.mantissa == 0 {
            Err(Error::Indeterminate(format!(
                "element vanishes modulo {}^{}",
                self.p, self.cap
            )))
        } else {
            Ok(true)
        }
    }

    fn inv(&self) -> Result<Self> {
        let v = self.valuation().ok_or_else(|| {
            Error::InsufficientPrecision(format!(
                "cannot invert an element that vanishes modulo {}^{}",
                self.p, self.cap
            ))
        })?;
        let vm = vp_u128(self.mantissa as u128, self.p);
        let unit = self.mantissa as u128 / pow_u128(self.p, vm);
        let new_cap = (self.cap - 2 * v).min(self.ring_cap.max(self.cap));
        let e = new_cap + v;
        if e <= 0 {
            return Ok(Self::build(self.p, self.ring_cap, new_cap, 0, 0));
        }
        let modulus = pow_u128(self.p, e as u32);
        let uinv = mod_inv(unit % modulus, modulus);
        Ok(if v > 0 {
            Self::build(self.p, self.ring_cap, new_cap, v as u32, uinv)
        } else {
            let m = uinv * pow_u128(self.p, (-v) as u32);
            Self::build(self.p, self.ring_cap, new_cap, 0, m)
        })
    }

    fn precision(ctx: &QpCtx) -> NormExponent {
        NormExponent::integer(ctx.cap as i128)
    }

    fn prime(ctx: &QpCtx) -> u64 {
        ctx.p
    }
}

impl fmt::Display for PadicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.shift == 0 {
            write!(f, "{}", self.signed_mantissa())
        } else {
            write!(f, "{}/{}^{}", self.signed_mantissa(), self.p, self.shift)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exponent::{q, qi};

    fn q2(cap: i32) -> QpCtx {
        QpCtx::new(2, cap).unwrap()
    }

    #[test]
    fn two_plus_two_is_four() {
        let c = q2(8);
        let four = c.elem(2).add(&c.elem(2));
        assert_eq!(four, c.elem(4));
        assert_eq!(four.norm(), NormValue::exact(2));
    }

    #[test]
    fn multiplicative_identity() {
        let c = q2(8);
        for n in [-7i64, 0, 3, 12, 200] {
            assert_eq!(c.elem(n).mul(&c.elem(1)), c.elem(n));
        }
    }

    #[test]
    fn inverse_of_three_mod_sixteen() {
        let inv = q2(4).elem(3).inv().unwrap();
        // oracle: extended Euclid, 3·11 = 33 ≡ 1 (mod 16)
        assert_eq!(inv.mantissa(), 11);
        assert_eq!(inv.cap(), 4);
    }

    #[test]
    fn norm_of_zero_is_bounded() {
        assert_eq!(q2(8).elem(0).norm(), NormValue::at_most(8));
        assert_eq!(q2(8).elem(256).norm(), NormValue::at_most(8));
    }

    #[test]
    fn inverse_of_non_unit_has_denominator() {
        let c = q2(8);
        let half = c.elem(2).inv().unwrap();
        assert_eq!(half.norm(), NormValue::exact(-1));
        assert_eq!(half.shift(), 1);
        let one = half.mul(&c.elem(2));
        assert!(one.agrees_to(&c.elem(1), &NormExponent::integer(6)));
        assert_eq!(
            PadicElement::from_rational(&c, 1, 2).unwrap().norm(),
            NormValue::exact(-1)
        );
    }

    #[test]
    fn inverting_vanishing_element_fails() {
        assert!(matches!(
            q2(4).elem(16).inv(),
            Err(Error::InsufficientPrecision(_))
        ));
    }

    #[test]
    fn precision_loss_from_large_inverse() {
        let c = q2(8);
        let x = c.elem(4).inv().unwrap().mul(&c.elem(12));
        // 12/4 = 3, but 1/4 costs two digits on each side
        assert_eq!(x.norm(), NormValue::exact(0));
        assert!(x.agrees_to(&c.elem(3), &NormExponent::integer(4)));
    }

    #[test]
    fn rational_parts() {
        let c = QpCtx::new(3, 6).unwrap();
        let x = PadicElement::from_rational(&c, 5, 9).unwrap();
        assert_eq!(x.norm(), NormValue::exact(-2));
        let back = x.mul(&c.elem(9));
        assert!(back.agrees_to(&c.elem(5), &NormExponent::integer(4)));
        let y = PadicElement::from_rational(&c, 3, 2).unwrap();
        assert_eq!(y.norm(), NormValue::exact(1));
        assert_eq!(NormValue::exact(q(2, 1)), NormValue::exact(qi(2)));
    }

    #[test]
    fn rejects_bad_context() {
        assert!(QpCtx::new(4, 8).is_err());
        assert!(QpCtx::new(2, 0).is_err());
        assert!(QpCtx::new(2, 64).is_err());
    }
}
