//! Teichmüller sums `Σ p^n [x_n]`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exponent::Q;
use crate::perf::{PerfCtx, PerfElement};
use crate::witt::vector::WittVector;

/// Finitely many terms `p^n [x_n]` with distinct `n`. Zero coefficients
/// are dropped. Coefficients may lie outside `o_L` (negative exponents).
#[derive(Debug, Clone, PartialEq)]
pub struct TeichSum {
    terms: BTreeMap<i64, PerfElement>,
}

impl TeichSum {
    pub fn new(terms: Vec<(i64, PerfElement)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        let mut prime = None;
        for (n, x) in terms {
            let p = x.perf_ctx().p;
            if prime.is_some_and(|q| q != p) {
                return Err(Error::ContextMismatch("Teichmüller sum over two primes".into()));
            }
            prime = Some(p);
            if map.insert(n, x).is_some() {
                return Err(Error::ContextMismatch(format!("repeated index {n}")));
            }
        }
        map.retain(|_, x: &mut PerfElement| !(x.is_zero() && x.is_exact()));
        Ok(TeichSum { terms: map })
    }

    pub fn single(n: i64, x: PerfElement) -> Self {
        TeichSum::new(vec![(n, x)]).expect("a single term is always valid")
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &PerfElement)> {
        self.terms.iter().map(|(&n, x)| (n, x))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn get(&self, n: i64) -> Option<&PerfElement> {
        self.terms.get(&n)
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Witt vector `(a_0, …, a_{len-1})` with `a_n = x_n^(p^n)`; terms with
    /// `n ≥ len` vanish modulo `p^len`.
    pub fn to_witt(&self, ctx: &PerfCtx, len: usize) -> Result<WittVector> {
        let mut comps = vec![PerfElement::zero(ctx); len];
        for (&n, x) in &self.terms {
            if n < 0 {
                return Err(Error::ContextMismatch(format!("term p^{n} is not in W(o_L)")));
            }
            if (n as usize) < len {
                comps[n as usize] = x.recontext(ctx)?.frobenius_pow(n as u32);
            }
        }
        WittVector::new(ctx, comps)
    }

    /// Inverse of [`to_witt`](Self::to_witt): `x_n = a_n^(1/p^n)`, over a
    /// context with `len - 1` more root denominators.
    pub fn from_witt(w: &WittVector) -> Result<Self> {
        let ctx = w.perf_ctx();
        let wide = ctx.with_root_denom(ctx.root_denom + w.len() as u32 - 1)?;
        let mut terms = Vec::new();
        for (n, a) in w.components().iter().enumerate() {
            let x = a.recontext(&wide)?.pth_root_pow(n as u32)?;
            terms.push((n as i64, x));
        }
        TeichSum::new(terms)
    }

    /// Valuation of each visible coefficient.
    pub fn valuations(&self) -> Vec<(i64, Option<Q>)> {
        self.terms.iter().map(|(&n, x)| (n, x.valuation())).collect()
    }
}

impl fmt::Display for TeichSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (n, x)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "p^{n}[{x}]")?;
        }
        Ok(())
    }
}
