//! Finite-length Witt vectors over the perfectoid coefficient ring.

use std::collections::HashMap;
use std::fmt;

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::perf::{PerfCtx, PerfElement};
use crate::witt::structure::{witt_structure_polys, IntPoly, WITT_LENGTH_CEILING};

/// `(a_0, …, a_{n-1})` with components in `o_L`, `q = p`.
#[derive(Debug, Clone, PartialEq)]
pub struct WittVector {
    ctx: PerfCtx,
    comps: Vec<PerfElement>,
}

impl WittVector {
    pub fn new(ctx: &PerfCtx, comps: Vec<PerfElement>) -> Result<Self> {
        if comps.is_empty() || comps.len() > WITT_LENGTH_CEILING {
            return Err(Error::WittLengthCeiling {
                requested: comps.len(),
                ceiling: WITT_LENGTH_CEILING,
            });
        }
        for c in &comps {
            if c.perf_ctx() != *ctx {
                return Err(Error::ContextMismatch("Witt component over another field".into()));
            }
            if c.valuation().is_some_and(|v| v < 0.into()) {
                return Err(Error::ContextMismatch("Witt component outside o_L".into()));
            }
        }
        Ok(WittVector { ctx: *ctx, comps })
    }

    pub fn zero(ctx: &PerfCtx, len: usize) -> Result<Self> {
        Self::new(ctx, vec![PerfElement::zero(ctx); len])
    }

    pub fn one(ctx: &PerfCtx, len: usize) -> Result<Self> {
        teichmuller(&PerfElement::one(ctx), len)
    }

    /// `p^k [y] = V^k [y^(p^k)]`: the single component `y^(p^k)` at index `k`.
    pub fn p_power_teich(y: &PerfElement, k: usize, len: usize) -> Result<Self> {
        let ctx = y.perf_ctx();
        let mut comps = vec![PerfElement::zero(&ctx); len];
        if k < len {
            comps[k] = y.frobenius_pow(k as u32);
        }
        Self::new(&ctx, comps)
    }

    pub fn perf_ctx(&self) -> PerfCtx {
        self.ctx
    }

    pub fn len(&self) -> usize {
        self.comps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn components(&self) -> &[PerfElement] {
        &self.comps
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ctx != other.ctx || self.len() != other.len() {
            return Err(Error::ContextMismatch("Witt vectors of different shapes".into()));
        }
        Ok(())
    }

    fn apply(&self, other: &Self, polys: &[IntPoly]) -> WittVector {
        let vars: Vec<&PerfElement> = self.comps.iter().chain(other.comps.iter()).collect();
        let mut powers: HashMap<(usize, u32), PerfElement> = HashMap::new();
        let comps = polys
            .iter()
            .map(|poly| evaluate(poly, &vars, &mut powers, &self.ctx))
            .collect();
        WittVector { ctx: self.ctx, comps }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let polys = witt_structure_polys(self.ctx.p, self.len())?;
        Ok(self.apply(other, &polys.sums))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let polys = witt_structure_polys(self.ctx.p, self.len())?;
        Ok(self.apply(other, &polys.prods))
    }

    /// Componentwise agreement at the common precision.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.len() == other.len()
            && self
                .comps
                .iter()
                .zip(&other.comps)
                .all(|(a, b)| a.sub(b).is_zero_at_precision())
    }
}

/// Evaluates an integer polynomial mod `p` at perfectoid elements.
fn evaluate(
    poly: &IntPoly,
    vars: &[&PerfElement],
    powers: &mut HashMap<(usize, u32), PerfElement>,
    ctx: &PerfCtx,
) -> PerfElement {
    let p = ctx.p as i128;
    let mut acc = PerfElement::zero(ctx);
    for (exps, c) in &poly.terms {
        let c = c.rem_euclid(p) as i64;
        if c == 0 {
            continue;
        }
        let mut term = PerfElement::from_int(ctx, c);
        for (i, &e) in exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let pw = powers
                .entry((i, e))
                .or_insert_with(|| vars[i].pow(e as u64))
                .clone();
            term = term.mul(&pw);
            if term.is_zero() && term.is_exact() {
                break;
            }
        }
        acc = acc.add(&term);
    }
    acc
}

/// The Teichmüller lift `[x] = (x, 0, …, 0)`.
pub fn teichmuller(x: &PerfElement, len: usize) -> Result<WittVector> {
    WittVector::p_power_teich(x, 0, len)
}

impl fmt::Display for WittVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.comps.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}
