//! Elements of the perfectoid field `L`, the completed perfection of
//! `F_p((z))`, normalized by `|z| = p^(-1)`.
//!
//! An element is a finite sum `Σ c_α z^α` with `α ∈ p^(-k)·Z` and
//! `c_α ∈ F_p`. It is either exact, or known modulo `z^M` for a truncation
//! order `M`; the two modes share one type and arithmetic keeps the weaker
//! of the two precisions.

use std::collections::BTreeMap;
use std::fmt;

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::exponent::{fmt_q, q, NormExponent, NormValue, Q};
use crate::padic::is_prime;

/// Precision used for exact-mode elements when they serve as a Tate-algebra
/// base; large enough that no desk-scale computation reaches it.
const EXACT_MODE_PRECISION: i128 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PerfCtx {
    pub p: u64,
    /// Exponents have denominators dividing `p^root_denom`.
    pub root_denom: u32,
    /// Truncation order numerator over `p^root_denom`; `None` for exact mode.
    trunc_num: Option<i64>,
}

impl PerfCtx {
    /// Truncated mode: elements are known modulo `z^trunc`.
    pub fn truncated(p: u64, root_denom: u32, trunc: Q) -> Result<Self> {
        let mut ctx = Self::exact(p, root_denom)?;
        ctx.trunc_num = Some(ctx.num_index(&trunc)?);
        Ok(ctx)
    }

    /// Exact mode: finite sums with no truncation.
    pub fn exact(p: u64, root_denom: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::ContextMismatch(format!(
                "coefficient field F_{p}: only prime q is supported"
            )));
        }
        if (p as u128)
            .checked_pow(root_denom)
            .is_none_or(|d| d > (1u128 << 40))
        {
            return Err(Error::RootDenominatorOverflow {
                needed: root_denom,
                bound: root_denom,
            });
        }
        Ok(PerfCtx {
            p,
            root_denom,
            trunc_num: None,
        })
    }

    pub fn trunc(&self) -> Option<Q> {
        self.trunc_num.map(|n| self.exponent_at(n))
    }

    pub fn denom(&self) -> i64 {
        (self.p as i64).pow(self.root_denom)
    }

    pub(crate) fn num_index(&self, e: &Q) -> Result<i64> {
        let den = self.denom() as i128;
        if den % e.denom() != 0 {
            let mut needed = 0;
            let mut d = *e.denom();
            while d > 1 && d % self.p as i128 == 0 {
                d /= self.p as i128;
                needed += 1;
            }
            if d != 1 {
                return Err(Error::ContextMismatch(format!(
                    "exponent {} is not in Z[1/{}]",
                    fmt_q(e),
                    self.p
                )));
            }
            return Err(Error::RootDenominatorOverflow {
                needed,
                bound: self.root_denom,
            });
        }
        Ok((e.numer() * (den / e.denom())) as i64)
    }

    pub(crate) fn exponent_at(&self, n: i64) -> Q {
        q(n as i128, self.denom() as i128)
    }

    /// Same field with a larger root-denominator bound.
    pub fn with_root_denom(&self, root_denom: u32) -> Result<Self> {
        let mut ctx = PerfCtx::exact(self.p, root_denom)?;
        if let Some(t) = self.trunc() {
            ctx.trunc_num = Some(ctx.num_index(&t)?);
        }
        Ok(ctx)
    }

    pub fn monomial(&self, coeff: u64, exponent: Q) -> Result<PerfElement> {
        PerfElement::monomial(self, coeff, exponent)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PerfElement {
    ctx: PerfCtx,
    /// exponent numerator over `p^k` → nonzero coefficient in `1..p`
    terms: BTreeMap<i64, u64>,
    /// known modulo `z^(prec/p^k)`; `None` when exact
    prec: Option<i64>,
}

impl PerfElement {
    fn build(ctx: PerfCtx, terms: BTreeMap<i64, u64>, prec: Option<i64>) -> Self {
        let prec = match (prec, ctx.trunc_num) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        let terms = terms
            .into_iter()
            .filter(|&(e, c)| c % ctx.p != 0 && prec.is_none_or(|m| e < m))
            .map(|(e, c)| (e, c % ctx.p))
            .collect();
        PerfElement { ctx, terms, prec }
    }

    pub fn zero(ctx: &PerfCtx) -> Self {
        Self::build(*ctx, BTreeMap::new(), None)
    }

    pub fn one(ctx: &PerfCtx) -> Self {
        Self::build(*ctx, BTreeMap::from([(0, 1)]), None)
    }

    pub fn monomial(ctx: &PerfCtx, coeff: u64, exponent: Q) -> Result<Self> {
        let e = ctx.num_index(&exponent)?;
        Ok(Self::build(*ctx, BTreeMap::from([(e, coeff % ctx.p)]), None))
    }

    /// Builds `Σ c·z^α` from `(α, c)` pairs.
    pub fn from_terms(ctx: &PerfCtx, terms: &[(Q, u64)]) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (e, c) in terms {
            let slot = map.entry(ctx.num_index(e)?).or_insert(0u64);
            *slot = (*slot + c) % ctx.p;
        }
        Ok(Self::build(*ctx, map, None))
    }

    pub fn perf_ctx(&self) -> PerfCtx {
        self.ctx
    }

    /// `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (Q, u64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (self.ctx.exponent_at(e), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn precision(&self) -> Option<Q> {
        self.prec.map(|n| self.ctx.exponent_at(n))
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_none()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(coefficient, exponent)` when the element is a single term.
    pub fn as_monomial(&self) -> Option<(u64, Q)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (&e, &c) = self.terms.iter().next()?;
        Some((c, self.ctx.exponent_at(e)))
    }

    /// The valuation `v` with `|x| = p^(-v)`, if some term is visible.
    pub fn valuation(&self) -> Option<Q> {
        self.terms.keys().next().map(|&e| self.ctx.exponent_at(e))
    }

    fn val_num(&self) -> Option<i64> {
        self.terms.keys().next().copied().or(self.prec)
    }

    /// Re-expresses the element over a context with the same prime.
    pub fn recontext(&self, ctx: &PerfCtx) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (e, c) in self.terms() {
            map.insert(ctx.num_index(&e)?, c);
        }
        let prec = self.precision().map(|m| {
            ctx.num_index(&m).unwrap_or_else(|_| {
                // round the precision down onto the coarser grid
                ((m * Q::from_integer(ctx.denom() as i128)).floor()).to_integer() as i64
            })
        });
        Ok(Self::build(*ctx, map, prec))
    }

    /// The `p`-th power (Frobenius); exact on coefficients since `c^p = c`.
    pub fn frobenius(&self) -> Self {
        let p = self.ctx.p as i64;
        let terms = self.terms.iter().map(|(&e, &c)| (e * p, c)).collect();
        Self::build(self.ctx, terms, self.prec.map(|m| m * p))
    }

    pub fn frobenius_pow(&self, n: u32) -> Self {
        (0..n).fold(self.clone(), |acc, _| acc.frobenius())
    }

    /// The unique `p`-th root. Precision divides by `p` and every exponent
    /// needs one more power of `p` in its denominator.
    pub fn pth_root(&self) -> Result<Self> {
        let p = self.ctx.p as i64;
        let mut terms = BTreeMap::new();
        for (&e, &c) in &self.terms {
            if e % p != 0 {
                return Err(Error::RootDenominatorOverflow {
                    needed: self.ctx.root_denom + 1,
                    bound: self.ctx.root_denom,
                });
            }
            terms.insert(e / p, c);
        }
        Ok(Self::build(self.ctx, terms, self.prec.map(|m| m.div_euclid(p))))
    }

    pub fn pth_root_pow(&self, n: u32) -> Result<Self> {
        (0..n).try_fold(self.clone(), |acc, _| acc.pth_root())
    }

    /// Raises to a non-negative integer power by squaring.
    pub fn pow(&self, mut n: u64) -> Self {
        let mut base = self.clone();
        let mut acc = PerfElement::one(&self.ctx);
        while n > 0 {
            if n & 1 == 1 {
                acc = Coeff::mul(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = Coeff::mul(&base, &base);
            }
        }
        acc
    }

    /// Forgets everything at and beyond `z^m`.
    pub fn truncate(&self, m: Q) -> Result<Self> {
        let n = self.ctx.num_index(&m)?;
        let prec = Some(self.prec.map_or(n, |old| old.min(n)));
        Ok(Self::build(self.ctx, self.terms.clone(), prec))
    }

    fn combine_prec(a: Option<i64>, b: Option<i64>) -> Option<i64> {
        match (a, b) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, y) => x.or(y),
        }
    }
}

impl Coeff for PerfElement {
    type Ctx = PerfCtx;

    fn ctx(&self) -> PerfCtx {
        self.ctx
    }

    fn zero(ctx: &PerfCtx) -> Self {
        PerfElement::zero(ctx)
    }

    fn one(ctx: &PerfCtx) -> Self {
        PerfElement::one(ctx)
    }

    fn from_int(ctx: &PerfCtx, n: i64) -> Self {
        let c = n.rem_euclid(ctx.p as i64) as u64;
        Self::build(*ctx, BTreeMap::from([(0, c)]), None)
    }

    fn add(&self, other: &Self) -> Self {
        assert_eq!(
            self.ctx.p, other.ctx.p,
            "perfectoid elements over different primes"
        );
        let mut terms = self.terms.clone();
        for (&e, &c) in &other.terms {
            let slot = terms.entry(e).or_insert(0);
            *slot = (*slot + c) % self.ctx.p;
        }
        Self::build(self.ctx, terms, Self::combine_prec(self.prec, other.prec))
    }

    fn neg(&self) -> Self {
        let p = self.ctx.p;
        let terms = self.terms.iter().map(|(&e, &c)| (e, (p - c) % p)).collect();
        Self::build(self.ctx, terms, self.prec)
    }

    fn mul(&self, other: &Self) -> Self {
        assert_eq!(
            self.ctx.p, other.ctx.p,
            "perfectoid elements over different primes"
        );
        let p = self.ctx.p;
        // |error| ≤ max(prec_a·|b|, prec_b·|a|), capped at the weaker input
        let prec = Self::combine_prec(
            Self::combine_prec(self.prec, other.prec),
            Self::combine_prec(
                self.prec.zip(other.val_num()).map(|(m, v)| m + v),
                other.prec.zip(self.val_num()).map(|(m, v)| m + v),
            ),
        );
        let mut terms: BTreeMap<i64, u64> = BTreeMap::new();
        for (&e1, &c1) in &self.terms {
            for (&e2, &c2) in &other.terms {
                let e = e1 + e2;
                if prec.is_some_and(|m| e >= m) {
                    continue;
                }
                let slot = terms.entry(e).or_insert(0);
                *slot = (*slot + c1 * c2) % p;
            }
        }
        Self::build(self.ctx, terms, prec)
    }

    fn norm(&self) -> NormValue {
        match (self.valuation(), self.precision()) {
            (Some(v), _) => NormValue::exact(v),
            (None, Some(m)) => NormValue::at_most(m),
            (None, None) => NormValue::ExactZero,
        }
    }

    fn is_unit(&self) -> Result<bool> {
        match self.norm() {
            NormValue::Exact(_) => Ok(true),
            NormValue::ExactZero => Ok(false),
            NormValue::AtMost(_) => Err(Error::Indeterminate(
                "element vanishes at its truncation order".into(),
            )),
        }
    }

    /// Monomials invert exactly; other elements need a truncation order and
    /// are inverted by a geometric series.
    fn inv(&self) -> Result<Self> {
        let (&lead_e, &lead_c) = self.terms.iter().next().ok_or_else(|| {
            Error::InsufficientPrecision("cannot invert an element with no visible term".into())
        })?;
        let p = self.ctx.p;
        let c_inv = crate::padic::mod_inv(lead_c as u128, p as u128) as u64;
        let lead_inv = Self::build(self.ctx, BTreeMap::from([(-lead_e, c_inv)]), None);
        if self.terms.len() == 1 {
            let prec = self.prec.map(|m| m - 2 * lead_e);
            return Ok(Self::build(self.ctx, lead_inv.terms, prec));
        }
        let Some(m) = self.prec else {
            return Err(Error::InsufficientPrecision(
                "inverse of an exact non-monomial is an infinite series; truncate first".into(),
            ));
        };
        // x = lead·(1 + y), |y| < 1; 1/x = lead⁻¹ Σ (-y)^j
        let target = m - 2 * lead_e;
        let y = Coeff::sub(&Coeff::mul(self, &lead_inv), &PerfElement::one(&self.ctx));
        let neg_y = Coeff::neg(&y);
        let mut sum = PerfElement::one(&self.ctx);
        let mut term = PerfElement::one(&self.ctx);
        loop {
            term = Coeff::mul(&term, &neg_y);
            if term.terms.keys().next().is_none_or(|&e| e + lead_e >= target) {
                break;
            }
            sum = Coeff::add(&sum, &term);
        }
        let mut out = Coeff::mul(&sum, &lead_inv);
        out.prec = Some(out.prec.map_or(target, |old| old.min(target)));
        Ok(Self::build(out.ctx, out.terms, out.prec))
    }

    fn precision(ctx: &PerfCtx) -> NormExponent {
        match ctx.trunc() {
            Some(m) => NormExponent::rational(m),
            None => NormExponent::integer(EXACT_MODE_PRECISION),
        }
    }

    fn prime(ctx: &PerfCtx) -> u64 {
        ctx.p
    }
}

impl fmt::Display for PerfElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")?;
        }
        for (i, (e, c)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if c != 1 {
                write!(f, "{c}*")?;
            }
            write!(f, "z^({})", fmt_q(&e))?;
        }
        if let Some(m) = self.precision() {
            write!(f, " + O(z^({}))", fmt_q(&m))?;
        }
        Ok(())
    }
}
