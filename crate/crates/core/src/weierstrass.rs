//! Weierstrass division and preparation in `A<T>`.

use std::fmt;

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::exponent::{steps_to_reach, NormExponent, NormValue};
use crate::series::RestrictedSeries;

/// The first distinguished-form condition that fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Refusal {
    /// The series vanishes at the working precision.
    ZeroSeries,
    /// The tail bound reaches the maximal coefficient norm.
    TailMeetsMax,
    LeadingNotUnit(usize),
    /// Division needs `f_{n0} = 1`; rescale first.
    LeadingNotOne(usize),
    BelowExceedsOne(usize),
    AboveNotSmall(usize),
    TailNotSmall,
}

impl fmt::Display for Refusal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Refusal::ZeroSeries => write!(f, "series is zero at working precision"),
            Refusal::TailMeetsMax => write!(f, "tail bound meets the maximal norm"),
            Refusal::LeadingNotUnit(n) => write!(f, "coefficient {n} is not a unit"),
            Refusal::LeadingNotOne(n) => write!(f, "coefficient {n} is not 1"),
            Refusal::BelowExceedsOne(n) => write!(f, "coefficient {n} has norm > 1"),
            Refusal::AboveNotSmall(n) => write!(f, "coefficient {n} does not have norm < 1"),
            Refusal::TailNotSmall => write!(f, "tail bound is not < 1"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DistinguishedCertificate {
    pub n0: usize,
    /// `f_{n0}` agrees with 1 at working precision.
    pub leading_is_one: bool,
    pub leading_norm: NormValue,
    /// Largest normalized norm among degrees `< n0`; certified `≤ 1`.
    pub max_below: NormValue,
    /// Largest normalized norm above `n0`, tail included; certified `< 1`.
    pub max_above: NormValue,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DivisionResult<R: Coeff> {
    pub q: RestrictedSeries<R>,
    pub r: RestrictedSeries<R>,
    /// Gauss norm of `g - (f q + r)`, recomputed from the outputs.
    pub residual: NormValue,
    pub iterations: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PreparationResult<R: Coeff> {
    pub monic: RestrictedSeries<R>,
    pub unit: RestrictedSeries<R>,
    pub residual: NormValue,
}

fn refuse<T>(r: Refusal) -> Result<T> {
    Err(Error::NotDistinguished(r))
}

fn indeterminate<T>(what: impl Into<String>) -> Result<T> {
    Err(Error::Indeterminate(what.into()))
}

fn target<R: Coeff>(f: &RestrictedSeries<R>) -> NormValue {
    NormValue::Exact(R::precision(&f.series_ctx().base))
}

/// Largest degree attaining the Gauss norm, with everything above it
/// certainly smaller.
fn locate_max<R: Coeff>(f: &RestrictedSeries<R>) -> Result<usize> {
    let g = f.gauss_norm();
    let top = match &g {
        NormValue::ExactZero => return refuse(Refusal::ZeroSeries),
        NormValue::AtMost(_) => return indeterminate("Gauss norm is only bounded"),
        NormValue::Exact(e) => e.clone(),
    };
    let top = NormValue::Exact(top);
    if f.tail_bound().is_lt(&top) != Some(true) {
        return refuse(Refusal::TailMeetsMax);
    }
    let coeffs = f.coeffs();
    let n0 = coeffs
        .iter()
        .rposition(|c| c.norm() == top)
        .expect("an Exact Gauss norm is attained by a stored coefficient");
    for (i, c) in coeffs.iter().enumerate().skip(n0 + 1) {
        if c.norm().is_lt(&top) != Some(true) {
            return indeterminate(format!("coefficient {i} straddles the maximal norm"));
        }
    }
    Ok(n0)
}

/// Checks the distinguished conditions at the largest degree of maximal
/// norm, after normalizing by the inverse of that coefficient.
pub fn check_distinguished<R: Coeff>(f: &RestrictedSeries<R>) -> Result<DistinguishedCertificate> {
    let n0 = locate_max(f)?;
    let base = &f.series_ctx().base;
    let lead = f.coeffs()[n0].clone();
    let one = R::one(base);
    let leading_is_one = lead.agrees_to(&one, &R::precision(base));
    let normalized = if leading_is_one {
        f.clone()
    } else {
        match lead.is_unit() {
            Ok(true) => {}
            Ok(false) => return refuse(Refusal::LeadingNotUnit(n0)),
            Err(e) => return Err(e),
        }
        f.scale(&lead.inv()?)
    };
    let unit_norm = NormValue::one();
    let mut max_below = NormValue::ExactZero;
    for (i, c) in normalized.coeffs().iter().enumerate().take(n0) {
        let n = c.norm();
        match n.is_le(&unit_norm) {
            Some(true) => max_below = max_below.max(&n),
            Some(false) => return refuse(Refusal::BelowExceedsOne(i)),
            None => return indeterminate(format!("coefficient {i} straddles 1")),
        }
    }
    let mut max_above = NormValue::ExactZero;
    for (i, c) in normalized.coeffs().iter().enumerate().skip(n0 + 1) {
        let n = c.norm();
        match n.is_lt(&unit_norm) {
            Some(true) => max_above = max_above.max(&n),
            Some(false) => return refuse(Refusal::AboveNotSmall(i)),
            None => return indeterminate(format!("coefficient {i} straddles 1")),
        }
    }
    let tail = normalized.tail_bound();
    match tail.is_lt(&unit_norm) {
        Some(true) => max_above = max_above.max(&tail),
        _ => return refuse(Refusal::TailNotSmall),
    }
    Ok(DistinguishedCertificate {
        n0,
        leading_is_one,
        leading_norm: lead.norm(),
        max_below,
        max_above,
    })
}

/// Long division of the stored part of `s` by a monic polynomial of
/// degree `n0`. The tail of `s` is carried into the quotient.
fn long_divide<R: Coeff>(s: &RestrictedSeries<R>, monic: &[R]) -> (RestrictedSeries<R>, RestrictedSeries<R>) {
    let ctx = s.series_ctx();
    let n0 = monic.len() - 1;
    let mut rem: Vec<R> = s.coeffs().to_vec();
    let qlen = rem.len().saturating_sub(n0);
    let mut quot = vec![R::zero(&ctx.base); qlen];
    for k in (n0..rem.len()).rev() {
        let c = rem[k].clone();
        if matches!(c.norm(), NormValue::ExactZero) {
            continue;
        }
        for (i, m) in monic.iter().enumerate().take(n0) {
            let idx = k - n0 + i;
            rem[idx] = rem[idx].sub(&c.mul(m));
        }
        rem[k] = R::zero(&ctx.base);
        quot[k - n0] = c;
    }
    rem.truncate(n0);
    let q = RestrictedSeries::new(ctx, quot, s.tail_exponent().cloned());
    let r = RestrictedSeries::polynomial(ctx, rem);
    (q, r)
}

/// `f = P + H` with `P` monic of degree `n0` and `|H| < 1`.
fn split_distinguished<R: Coeff>(f: &RestrictedSeries<R>, n0: usize) -> (Vec<R>, RestrictedSeries<R>) {
    let ctx = f.series_ctx();
    let mut monic: Vec<R> = f.coeffs()[..n0].to_vec();
    monic.push(R::one(&ctx.base));
    let p = RestrictedSeries::polynomial(ctx, monic.clone());
    (monic, f.sub(&p).trimmed())
}

/// Weierstrass division `g = f q + r` with `deg r < n0`, by successive
/// approximation: divide the running remainder by the monic part of `f`
/// and feed back `-H q'`.
pub fn weierstrass_divide<R: Coeff>(
    f: &RestrictedSeries<R>,
    g: &RestrictedSeries<R>,
) -> Result<DivisionResult<R>> {
    let cert = check_distinguished(f)?;
    if !cert.leading_is_one {
        return refuse(Refusal::LeadingNotOne(cert.n0));
    }
    let ctx = f.series_ctx();
    let n0 = cert.n0;
    let (monic, h) = split_distinguished(f, n0);
    let rho = h.gauss_norm();
    if rho.is_lt(&NormValue::one()) != Some(true) {
        return Err(Error::ContractionFailure(format!("|H| = {rho} is not < 1")));
    }
    let goal = target(f);
    let n = R::precision(&ctx.base);
    let max_iter = match (rho.bound_exponent(), g.gauss_norm().bound_exponent()) {
        (Some(step), Some(eg)) => {
            let remaining = n.checked_sub(eg)?;
            steps_to_reach(step, &remaining)? + 2
        }
        _ => 2,
    };

    let mut q = RestrictedSeries::zero(ctx);
    let mut r = RestrictedSeries::zero(ctx);
    let mut s = g.trimmed();
    let mut iterations = 0;
    while s.gauss_norm().is_le(&goal) != Some(true) {
        if iterations >= max_iter {
            return Err(Error::PrecisionExhausted {
                iterations,
                residual: s.gauss_norm().to_string(),
            });
        }
        let (dq, dr) = long_divide(&s, &monic);
        s = h.mul(&dq).neg().trimmed();
        q = q.add(&dq).trimmed();
        r = r.add(&dr).trimmed();
        iterations += 1;
    }
    finish_division(f, g, q, r, iterations)
}

fn finish_division<R: Coeff>(
    f: &RestrictedSeries<R>,
    g: &RestrictedSeries<R>,
    q: RestrictedSeries<R>,
    r: RestrictedSeries<R>,
    iterations: u64,
) -> Result<DivisionResult<R>> {
    let residual = g.sub(&f.mul(&q).add(&r)).gauss_norm();
    if residual.is_le(&target(f)) != Some(true) {
        return Err(Error::PrecisionExhausted {
            iterations,
            residual: residual.to_string(),
        });
    }
    Ok(DivisionResult {
        q,
        r,
        residual,
        iterations,
    })
}

/// Weierstrass division by solving the truncated linear system
/// `g_k = Σ f_i q_{k-i} + r_k`, `k ≤ M`, with Gaussian elimination.
///
/// Row `k` pivots on `r_k` for `k < n0` and on `q_{k-n0}` otherwise; the
/// pivots stay units because the entries below the diagonal are small.
/// `M` is large enough that the dropped quotient coefficients vanish at
/// working precision.
pub fn weierstrass_divide_linear<R: Coeff>(
    f: &RestrictedSeries<R>,
    g: &RestrictedSeries<R>,
) -> Result<DivisionResult<R>> {
    if !f.is_polynomial() || !g.is_polynomial() {
        return Err(Error::ContextMismatch(
            "the linear route takes polynomial inputs".into(),
        ));
    }
    let cert = check_distinguished(f)?;
    if !cert.leading_is_one {
        return refuse(Refusal::LeadingNotOne(cert.n0));
    }
    let ctx = f.series_ctx();
    let base = &ctx.base;
    let n0 = cert.n0;
    let f = f.trimmed();
    let deg_f = f.stored_len().max(n0 + 1) - 1;
    let deg_g = g.stored_len().saturating_sub(1);
    let n = R::precision(base);
    let sweeps = match (cert.max_above.bound_exponent(), g.gauss_norm().bound_exponent()) {
        (Some(step), Some(eg)) => steps_to_reach(step, &n.checked_sub(eg)?)? + 1,
        _ => 1,
    };
    let m = deg_g.max(n0) + (sweeps as usize) * (deg_f - n0) + 1;
    let m = m.min(ctx.max_degree);

    let zero = R::zero(base);
    let size = m + 1;
    let mut a: Vec<Vec<R>> = vec![vec![zero.clone(); size]; size];
    for (k, row) in a.iter_mut().enumerate() {
        for (c, entry) in row.iter_mut().enumerate() {
            if c < n0 {
                if k == c {
                    *entry = R::one(base);
                }
            } else if k + n0 >= c {
                let idx = k + n0 - c;
                if idx < f.stored_len() {
                    *entry = f.coeffs()[idx].clone();
                }
            }
        }
    }
    let mut rhs: Vec<R> = (0..size).map(|k| g.coeff_or_zero(k)).collect();

    for c in 0..size {
        let pivot_inv = a[c][c].inv()?;
        for k in c + 1..size {
            let entry = a[k][c].clone();
            if entry.is_zero_at_precision() {
                continue;
            }
            let factor = entry.mul(&pivot_inv);
            let (top, bottom) = a.split_at_mut(k);
            for (x, y) in bottom[0][c..].iter_mut().zip(&top[c][c..]) {
                if !y.is_zero_at_precision() {
                    *x = x.sub(&factor.mul(y)).trimmed();
                }
            }
            rhs[k] = rhs[k].sub(&factor.mul(&rhs[c])).trimmed();
        }
    }
    let mut sol = vec![zero; size];
    for c in (0..size).rev() {
        let mut acc = rhs[c].clone();
        for j in c + 1..size {
            if !a[c][j].is_zero_at_precision() {
                acc = acc.sub(&a[c][j].mul(&sol[j]));
            }
        }
        sol[c] = acc.mul(&a[c][c].inv()?).trimmed();
    }
    let r = RestrictedSeries::polynomial(ctx, sol[..n0].to_vec()).trimmed();
    let q = RestrictedSeries::polynomial(ctx, sol[n0..].to_vec()).trimmed();
    finish_division(&f, g, q, r, 1)
}

/// Inverse of a unit of `A<T>` by the geometric series in `1 - c u`,
/// `c = u_0^(-1)`.
pub fn invert_unit_series<R: Coeff>(u: &RestrictedSeries<R>) -> Result<RestrictedSeries<R>> {
    if !crate::newton::is_unit_tate(u)? {
        return Err(Error::NotUnit(format!("{:?}", u.gauss_norm())));
    }
    let ctx = u.series_ctx();
    let c = u.coeff_or_zero(0).inv()?;
    let one = RestrictedSeries::one(ctx);
    let w = u.scale(&c).sub(&one).trimmed();
    let n = R::precision(&ctx.base);
    let goal = NormValue::Exact(n.clone());
    let max_iter = match w.gauss_norm().bound_exponent() {
        Some(step) => steps_to_reach(step, &n)? + 2,
        None => 1,
    };
    let mut term = one.clone();
    let mut sum = one;
    let mut k = 0;
    loop {
        term = term.mul(&w).neg().trimmed();
        if term.gauss_norm().is_le(&goal) == Some(true) {
            break;
        }
        k += 1;
        if k > max_iter {
            return Err(Error::PrecisionExhausted {
                iterations: k,
                residual: term.gauss_norm().to_string(),
            });
        }
        sum = sum.add(&term);
    }
    Ok(sum.scale(&c).trimmed())
}

/// Weierstrass preparation `f = g u` with `g` monic of degree `n0` and
/// `u` a unit.
pub fn weierstrass_prepare<R: Coeff>(f: &RestrictedSeries<R>) -> Result<PreparationResult<R>> {
    let cert = check_distinguished(f)?;
    let ctx = f.series_ctx();
    let base = &ctx.base;
    let n0 = cert.n0;
    let lead = f.coeffs()[n0].clone();
    let normalized = if cert.leading_is_one {
        f.clone()
    } else {
        f.scale(&lead.inv()?).trimmed()
    };
    let t_n0 = RestrictedSeries::monomial(ctx, R::one(base), n0);
    let div = weierstrass_divide(&normalized, &t_n0)?;
    let monic = t_n0.sub(&div.r).trimmed();
    let q_inv = invert_unit_series(&div.q)?;
    let unit = if cert.leading_is_one {
        q_inv
    } else {
        q_inv.scale(&lead).trimmed()
    };
    if !crate::newton::is_unit_tate(&unit)? {
        return Err(Error::NotUnit("prepared cofactor".into()));
    }
    let residual = f.sub(&monic.mul(&unit)).gauss_norm();
    Ok(PreparationResult {
        monic,
        unit,
        residual,
    })
}

/// Scales `f` by the inverse of its coefficient of maximal norm, taking the
/// largest such degree, so that the result is distinguished.
pub fn rescale_to_distinguished<R: Coeff>(f: &RestrictedSeries<R>) -> Result<(R, DistinguishedCertificate)> {
    let n0 = locate_max(f)?;
    let lead = &f.coeffs()[n0];
    let c = if lead.agrees_to(&R::one(&f.series_ctx().base), &R::precision(&f.series_ctx().base)) {
        R::one(&f.series_ctx().base)
    } else {
        lead.inv()?
    };
    let cert = check_distinguished(&f.scale(&c))?;
    Ok((c, cert))
}

/// The working-precision exponent used for division targets.
pub fn working_precision<R: Coeff>(f: &RestrictedSeries<R>) -> NormExponent {
    R::precision(&f.series_ctx().base)
}
