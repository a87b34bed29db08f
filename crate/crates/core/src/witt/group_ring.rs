//! Inversion by domination in `B`, computed in the monomial group ring
//! `Q_p[z^(Z[1/p])]`.
//!
//! Teichmüller lifts are multiplicative, so `z^α ↦ [z^α]` embeds the group
//! ring, and a sum `Σ p^n [c_n z^(α_n)]` with monomial coefficients is the
//! element `Σ p^n ω(c_n) z^(α_n)`. For irrational `t` the monomials of an
//! element have pairwise distinct norms, so `λ_t` is the Gauss norm
//! `max |c_α| |z^α|^t` in this basis; for rational `t` that maximum is an
//! upper bound.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exponent::{steps_to_reach, NormExponent, NormValue, Q};
use crate::padic::{max_exp, mod_inv, pow_u128};
use crate::perf::PerfCtx;
use crate::witt::lambda::{dominant_term, Dominance, LambdaParam};
use crate::witt::teich::TeichSum;
use crate::witt::vector::WittVector;

/// Capped-relative `p`-adic number: `u p^v` with `u` a unit known modulo
/// `p^rel`, or zero known modulo `p^abs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GrCoeff {
    Zero { abs: i64 },
    Val { v: i64, u: u64, rel: u32 },
}

impl GrCoeff {
    fn abs_prec(&self) -> i64 {
        match self {
            GrCoeff::Zero { abs } => *abs,
            GrCoeff::Val { v, rel, .. } => v + *rel as i64,
        }
    }

    pub fn valuation(&self) -> Option<i64> {
        match self {
            GrCoeff::Zero { .. } => None,
            GrCoeff::Val { v, .. } => Some(*v),
        }
    }

    fn mul(&self, o: &Self, p: u64) -> Self {
        match (self, o) {
            (
                GrCoeff::Val {
                    v: v1,
                    u: u1,
                    rel: r1,
                },
                GrCoeff::Val {
                    v: v2,
                    u: u2,
                    rel: r2,
                },
            ) => {
                let rel = (*r1).min(*r2);
                let m = pow_u128(p, rel);
                GrCoeff::Val {
                    v: v1 + v2,
                    u: ((*u1 as u128 * *u2 as u128) % m) as u64,
                    rel,
                }
            }
            (GrCoeff::Zero { abs }, x) | (x, GrCoeff::Zero { abs }) => {
                let shift = match x {
                    GrCoeff::Val { v, .. } => *v,
                    GrCoeff::Zero { abs } => *abs,
                };
                GrCoeff::Zero { abs: abs + shift }
            }
        }
    }

    fn add(&self, o: &Self, p: u64) -> Self {
        let abs = self.abs_prec().min(o.abs_prec());
        let vmin = [self.valuation(), o.valuation()].into_iter().flatten().min();
        let Some(vmin) = vmin else {
            return GrCoeff::Zero { abs };
        };
        if abs <= vmin {
            return GrCoeff::Zero { abs };
        }
        let width = (abs - vmin) as u32;
        let m = pow_u128(p, width);
        let mut sum: u128 = 0;
        for c in [self, o] {
            if let GrCoeff::Val { v, u, .. } = c {
                let gap = (v - vmin) as u32;
                if gap < width {
                    sum = (sum + (*u as u128 % m) * pow_u128(p, gap)) % m;
                }
            }
        }
        if sum == 0 {
            return GrCoeff::Zero { abs };
        }
        let mut v = vmin;
        let pp = p as u128;
        while sum.is_multiple_of(pp) {
            sum /= pp;
            v += 1;
        }
        let rel = (abs - v) as u32;
        GrCoeff::Val {
            v,
            u: (sum % pow_u128(p, rel)) as u64,
            rel,
        }
    }

    fn neg(&self, p: u64) -> Self {
        match self {
            GrCoeff::Zero { .. } => self.clone(),
            GrCoeff::Val { v, u, rel } => {
                let m = pow_u128(p, *rel);
                GrCoeff::Val {
                    v: *v,
                    u: ((m - *u as u128) % m) as u64,
                    rel: *rel,
                }
            }
        }
    }

    fn inv(&self, p: u64) -> Result<Self> {
        match self {
            GrCoeff::Zero { .. } => Err(Error::InsufficientPrecision(
                "inverting a coefficient that vanishes at precision".into(),
            )),
            GrCoeff::Val { v, u, rel } => Ok(GrCoeff::Val {
                v: -v,
                u: mod_inv(*u as u128, pow_u128(p, *rel)) as u64,
                rel: *rel,
            }),
        }
    }
}

/// Teichmüller representative of `c ∈ F_p` modulo `p^rel`.
pub fn teichmuller_digit(c: u64, p: u64, rel: u32) -> u64 {
    let m = pow_u128(p, rel);
    let mut x = (c % p) as u128;
    for _ in 1..rel {
        // x ↦ x^p converges to ω(c), one digit per step
        let mut acc = 1u128;
        for _ in 0..p {
            acc = acc * x % m;
        }
        x = acc;
    }
    x as u64
}

/// A finite sum `Σ c_α z^α` with `c_α ∈ Q_p` at capped relative precision.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupRingElement {
    p: u64,
    rel: u32,
    terms: BTreeMap<Q, GrCoeff>,
}

impl GroupRingElement {
    pub fn zero(p: u64) -> Self {
        GroupRingElement {
            p,
            rel: max_exp(p),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(p: u64) -> Self {
        Self::monomial(p, 0, 1, Q::zero())
    }

    /// `p^n ω(c) z^α`.
    pub fn monomial(p: u64, n: i64, c: u64, alpha: Q) -> Self {
        let mut out = Self::zero(p);
        let rel = out.rel;
        if !c.is_multiple_of(p) {
            let u = teichmuller_digit(c, p, rel);
            out.terms.insert(alpha, GrCoeff::Val { v: n, u, rel });
        }
        out
    }

    /// The image of a Teichmüller sum whose coefficients are monomials.
    pub fn from_teich_sum(x: &TeichSum) -> Result<Self> {
        let p = x.terms().next().map_or(2, |(_, xn)| xn.perf_ctx().p);
        let mut out = Self::zero(p);
        for (n, xn) in x.terms() {
            if xn.is_zero() {
                continue;
            }
            let (c, alpha) = xn.as_monomial().ok_or(Error::NonMonomial(n))?;
            out = out.add(&Self::monomial(p, n, c, alpha));
        }
        Ok(out)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// `(α, c_α)` in increasing `α`.
    pub fn terms(&self) -> impl Iterator<Item = (&Q, &GrCoeff)> {
        self.terms.iter()
    }

    fn insert_add(terms: &mut BTreeMap<Q, GrCoeff>, alpha: Q, c: GrCoeff, p: u64) {
        match terms.get_mut(&alpha) {
            Some(slot) => *slot = slot.add(&c, p),
            None => {
                terms.insert(alpha, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (a, c) in &other.terms {
            Self::insert_add(&mut terms, *a, c.clone(), self.p);
        }
        GroupRingElement {
            p: self.p,
            rel: self.rel,
            terms,
        }
    }

    pub fn neg(&self) -> Self {
        GroupRingElement {
            p: self.p,
            rel: self.rel,
            terms: self.terms.iter().map(|(a, c)| (*a, c.neg(self.p))).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms = BTreeMap::new();
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                Self::insert_add(&mut terms, a + b, c.mul(d, self.p), self.p);
            }
        }
        GroupRingElement {
            p: self.p,
            rel: self.rel,
            terms,
        }
    }

    fn term_norm(alpha: &Q, c: &GrCoeff, t: &LambdaParam) -> NormValue {
        match c {
            GrCoeff::Val { v, .. } => NormValue::Exact(t.exponent(Q::from_integer(*v as i128), *alpha)),
            GrCoeff::Zero { abs } => NormValue::AtMost(t.exponent(Q::from_integer(*abs as i128), *alpha)),
        }
    }

    /// `λ_t`; an upper bound when two monomials tie at the maximum.
    pub fn lambda(&self, t: &LambdaParam) -> Result<NormValue> {
        let mut best = NormValue::ExactZero;
        for (a, c) in &self.terms {
            best = best.try_max(&Self::term_norm(a, c, t))?;
        }
        if let NormValue::Exact(e) = &best {
            let mut hits = 0;
            for (a, c) in &self.terms {
                if let NormValue::Exact(f) = Self::term_norm(a, c, t) {
                    if f.compare(e)? == std::cmp::Ordering::Equal {
                        hits += 1;
                    }
                }
            }
            if hits > 1 {
                return Ok(NormValue::AtMost(e.clone()));
            }
        }
        Ok(best)
    }

    /// Drops monomials whose norm is certainly `< p^(-e)`.
    fn drop_below(&self, t: &LambdaParam, e: &NormExponent) -> Result<Self> {
        let cut = NormValue::Exact(e.clone());
        let mut terms = BTreeMap::new();
        for (a, c) in &self.terms {
            if Self::term_norm(a, c, t).is_lt(&cut) != Some(true) {
                terms.insert(*a, c.clone());
            }
        }
        Ok(GroupRingElement {
            p: self.p,
            rel: self.rel,
            terms,
        })
    }

    /// The Witt vector of length `len` of an element of `W(o_L)`, built from
    /// the Teichmüller digits of each coefficient.
    pub fn to_witt(&self, ctx: &PerfCtx, len: usize) -> Result<WittVector> {
        let p = self.p;
        let mut acc = WittVector::zero(ctx, len)?;
        for (alpha, c) in &self.terms {
            if *alpha < Q::zero() {
                return Err(Error::ContextMismatch("monomial outside o_L".into()));
            }
            let (v, u) = match c {
                GrCoeff::Zero { abs } if *abs >= len as i64 => continue,
                GrCoeff::Val { v, u, .. } if *v >= 0 && c.abs_prec() >= len as i64 => (*v, *u),
                _ => {
                    return Err(Error::InsufficientPrecision(format!(
                        "coefficient of z^{alpha} is not known modulo p^{len}"
                    )))
                }
            };
            if v >= len as i64 {
                continue;
            }
            let modulus = pow_u128(p, len as u32);
            let mut m = (u as u128 % modulus) * pow_u128(p, v as u32) % modulus;
            for k in 0..len {
                let width = (len - k) as u32;
                let mk = pow_u128(p, width);
                let d = (m % p as u128) as u64;
                if d != 0 {
                    let piece = WittVector::p_power_teich(&ctx.monomial(d, *alpha)?, k, len)?;
                    acc = acc.add(&piece)?;
                    let w = teichmuller_digit(d, p, width) as u128;
                    m = (m + mk - w % mk) % mk;
                }
                m /= p as u128;
            }
        }
        Ok(acc)
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (a, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match c {
                GrCoeff::Zero { abs } => write!(f, "O(p^{abs})*z^({a})")?,
                GrCoeff::Val { v, u, .. } => write!(f, "{u}*p^{v}*z^({a})")?,
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dim0Inverse {
    /// Index `n*` of the dominant term.
    pub dominant: i64,
    pub inverse: GroupRingElement,
    /// `λ_t(x · inverse - 1)`, from an independent full product.
    pub residual: NormValue,
    /// Geometric-series terms used.
    pub terms: u64,
}

/// Inverts `x` to `λ_t`-precision `p^(-target)` by factoring out its
/// dominant term `y`: `x^(-1) = Σ_k (-y^(-1)(x - y))^k y^(-1)`.
pub fn invert_by_domination(x: &TeichSum, t: &LambdaParam, target: &NormExponent) -> Result<Dim0Inverse> {
    let (n_star, e_y) = match dominant_term(x, t)? {
        Dominance::Tie(ids) => return Err(Error::Tie(ids)),
        Dominance::Dominant { index, exponent, .. } => (index, exponent),
    };
    let gx = GroupRingElement::from_teich_sum(x)?;
    let p = gx.p;
    let (c, alpha) = x
        .get(n_star)
        .and_then(|xn| xn.as_monomial())
        .ok_or(Error::NonMonomial(n_star))?;
    let y = GroupRingElement::monomial(p, n_star, c, alpha);
    let (_, yc) = y.terms.iter().next().expect("dominant term is nonzero");
    let mut yinv = GroupRingElement::zero(p);
    yinv.terms.insert(-alpha, yc.inv(p)?);
    if x.num_terms() == 1 {
        return Ok(Dim0Inverse {
            dominant: n_star,
            inverse: yinv,
            residual: NormValue::ExactZero,
            terms: 1,
        });
    }
    let w = yinv.mul(&gx.sub(&y));
    let step = match w.lambda(t)? {
        NormValue::Exact(e) | NormValue::AtMost(e) => e,
        NormValue::ExactZero => NormExponent::integer(1),
    };
    let max_iter = steps_to_reach(&step, target)? + 2;
    // terms of the inverse below this norm cannot reach the target
    let cut = target.checked_sub(&e_y)?;
    let minus_w = w.neg();
    let mut piece = yinv.clone();
    let mut inverse = yinv;
    let mut k = 1;
    loop {
        piece = piece.mul(&minus_w).drop_below(t, &cut)?;
        if piece.terms.is_empty() {
            break;
        }
        if k > max_iter {
            return Err(Error::PrecisionExhausted {
                iterations: k,
                residual: piece.lambda(t)?.to_string(),
            });
        }
        inverse = inverse.add(&piece);
        k += 1;
    }
    let residual = gx.mul(&inverse).sub(&GroupRingElement::one(p)).lambda(t)?;
    if residual.is_le(&NormValue::Exact(target.clone())) != Some(true) {
        return Err(Error::PrecisionExhausted {
            iterations: k,
            residual: residual.to_string(),
        });
    }
    Ok(Dim0Inverse {
        dominant: n_star,
        inverse,
        residual,
        terms: k,
    })
}

/// Checks the group-ring product against Witt multiplication of length
/// `len`: `W(a·b) = W(a)·W(b)`.
pub fn witt_cross_check(
    a: &GroupRingElement,
    b: &GroupRingElement,
    ctx: &PerfCtx,
    len: usize,
) -> Result<bool> {
    let lhs = a.mul(b).to_witt(ctx, len)?;
    let rhs = a.to_witt(ctx, len)?.mul(&b.to_witt(ctx, len)?)?;
    Ok(lhs.agrees_with(&rhs))
}
