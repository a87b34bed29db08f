//! Newton polygons, the unit criterion in `A<T>`, and slope certificates.

use num_integer::Integer;
use num_traits::Zero;

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::exponent::{NormValue, Q};
use crate::series::RestrictedSeries;

/// Lower convex hull of the points `(i, v(f_i))`.
///
/// `slopes` holds `(Δv/Δi, length)` left to right, nondecreasing. Roots
/// have valuation `-slope`; `root_valuations` lists them with multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolygon {
    pub vertices: Vec<(usize, Q)>,
    pub slopes: Vec<(Q, usize)>,
    /// Leading low-degree coefficients that vanish: roots at 0.
    pub zero_roots: usize,
}

impl NewtonPolygon {
    pub fn degree_span(&self) -> usize {
        self.slopes.iter().map(|(_, l)| l).sum()
    }

    pub fn root_valuations(&self) -> Vec<Q> {
        self.slopes
            .iter()
            .flat_map(|(s, l)| std::iter::repeat_n(-s, *l))
            .collect()
    }

    /// Slope multiset with one entry per unit of horizontal length.
    pub fn slope_multiset(&self) -> Vec<Q> {
        let mut v: Vec<Q> = self
            .slopes
            .iter()
            .flat_map(|(s, l)| std::iter::repeat_n(*s, *l))
            .collect();
        v.sort();
        v
    }
}

fn cross(o: &(usize, Q), a: &(usize, Q), b: &(usize, Q)) -> Q {
    let (ox, ax, bx) = (o.0 as i128, a.0 as i128, b.0 as i128);
    Q::from_integer(ax - ox) * (b.1 - o.1) - (a.1 - o.1) * Q::from_integer(bx - ox)
}

/// Lower hull of x-sorted points, collinear interior points removed.
pub fn lower_hull(points: &[(usize, Q)]) -> Vec<(usize, Q)> {
    let mut hull: Vec<(usize, Q)> = Vec::new();
    for p in points {
        while hull.len() >= 2 && cross(&hull[hull.len() - 2], &hull[hull.len() - 1], p) <= Q::zero() {
            hull.pop();
        }
        hull.push(*p);
    }
    hull
}

fn rational_valuation(n: &NormValue) -> Result<Option<Q>> {
    match n {
        NormValue::Exact(e) => e
            .as_rational()
            .copied()
            .map(Some)
            .ok_or_else(|| Error::ContextMismatch("irrational coefficient valuation".into())),
        _ => Ok(None),
    }
}

/// Newton polygon of a polynomial over a field base.
///
/// Zero-at-precision coefficients of lowest degree count as roots at 0.
/// A bounded coefficient elsewhere must lie on or above the hull built from
/// the Exact points, otherwise the polygon is indeterminate.
pub fn newton_polygon<R: Coeff>(f: &RestrictedSeries<R>) -> Result<NewtonPolygon> {
    if !f.is_polynomial() {
        return Err(Error::ContextMismatch(
            "Newton polygon of a series with a tail".into(),
        ));
    }
    let mut exact = Vec::new();
    let mut bounded = Vec::new();
    for (i, c) in f.coeffs().iter().enumerate() {
        let n = c.norm();
        match rational_valuation(&n)? {
            Some(v) => exact.push((i, v)),
            None => {
                if let NormValue::AtMost(e) = &n {
                    let e = e
                        .as_rational()
                        .copied()
                        .ok_or_else(|| Error::ContextMismatch("irrational precision bound".into()))?;
                    bounded.push((i, e));
                }
            }
        }
    }
    let Some(&(first, _)) = exact.first() else {
        return Err(Error::Indeterminate("no coefficient has an exact norm".into()));
    };
    let last = exact.last().unwrap().0;
    let hull = lower_hull(&exact);
    for (i, bound) in &bounded {
        if *i < first {
            continue;
        }
        if *i > last {
            return Err(Error::Indeterminate(format!("degree {i} is below precision")));
        }
        let k = hull.partition_point(|(x, _)| x <= i);
        let (a, b) = (&hull[k - 1], &hull[k.min(hull.len() - 1)]);
        let on_or_above = a.0 == b.0 || cross(a, b, &(*i, *bound)) >= Q::zero();
        if !on_or_above {
            return Err(Error::Indeterminate(format!(
                "coefficient {i} may lie below the hull"
            )));
        }
    }
    let slopes = hull
        .windows(2)
        .map(|w| {
            let len = w[1].0 - w[0].0;
            ((w[1].1 - w[0].1) / Q::from_integer(len as i128), len)
        })
        .collect();
    Ok(NewtonPolygon {
        vertices: hull,
        slopes,
        zero_roots: first,
    })
}

/// Whether `f` is a unit of `A<T>`: the constant term is a unit and, after
/// scaling by its inverse, every other coefficient and the tail have norm
/// `< 1`. Over a field this says the constant term strictly dominates.
pub fn is_unit_tate<R: Coeff>(f: &RestrictedSeries<R>) -> Result<bool> {
    match f.gauss_norm() {
        NormValue::ExactZero => return Ok(false),
        NormValue::AtMost(_) => return Err(Error::Indeterminate("Gauss norm is only bounded".into())),
        NormValue::Exact(_) => {}
    }
    let u0 = f.coeff_or_zero(0);
    if u0.is_zero_at_precision() {
        return match u0.norm() {
            NormValue::ExactZero => Ok(false),
            _ => {
                // the constant term may be nonzero but below everything else
                let one_dominates = f.coeffs().iter().skip(1).any(|c| c.norm().is_exact());
                if one_dominates {
                    Ok(false)
                } else {
                    Err(Error::Indeterminate("constant term below precision".into()))
                }
            }
        };
    }
    if !u0.is_unit()? {
        return Ok(false);
    }
    let c = u0.inv()?;
    let cn = c.norm();
    let one = NormValue::one();
    let mut undecided = false;
    for x in f.coeffs().iter().skip(1) {
        match c.mul(x).norm().is_lt(&one) {
            Some(true) => {}
            Some(false) => return Ok(false),
            None => undecided = true,
        }
    }
    match f.tail_bound().mul(&cn).is_lt(&one) {
        Some(true) => {}
        _ => undecided = true,
    }
    if undecided {
        Err(Error::Indeterminate(
            "a coefficient straddles the constant term".into(),
        ))
    } else {
        Ok(true)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BallVerdict {
    /// `|y - (T - λ)| ≥ |λ|`.
    NotInBall,
    NonUnit,
    /// In the ball yet a unit, which cannot happen for `0 < |λ| < 1`.
    Unit,
}

/// For `y` with `|y - (T - λ)| < |λ|`, certifies that `y` is not a unit.
pub fn nonunit_ball_witness<R: Coeff>(lambda: &R, y: &RestrictedSeries<R>) -> Result<BallVerdict> {
    let ln = lambda.norm();
    let one = NormValue::one();
    if !ln.is_exact() || ln.is_lt(&one) != Some(true) {
        return Err(Error::ContextMismatch(format!("|λ| = {ln} is not in (0, 1)")));
    }
    let ctx = y.series_ctx();
    let center = RestrictedSeries::polynomial(ctx, vec![lambda.neg(), R::one(&ctx.base)]);
    match y.sub(&center).gauss_norm().is_lt(&ln) {
        Some(true) => {}
        Some(false) => return Ok(BallVerdict::NotInBall),
        None => return Err(Error::Indeterminate("distance to T - λ straddles |λ|".into())),
    }
    Ok(if is_unit_tate(y)? {
        BallVerdict::Unit
    } else {
        BallVerdict::NonUnit
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Irreducibility {
    /// Single slope `a/b` in lowest terms with `b = deg f`.
    Irreducible {
        degree: usize,
        slope: Q,
    },
    Unknown,
}

/// Totally ramified certificate for a monic polynomial over `Q_p`.
pub fn irreducibility_certificate<R: Coeff>(f: &RestrictedSeries<R>) -> Result<Irreducibility> {
    let base = &f.series_ctx().base;
    let Some(deg) = f.visible_degree() else {
        return Ok(Irreducibility::Unknown);
    };
    if deg == 0 || !f.coeffs()[deg].agrees_to(&R::one(base), &R::precision(base)) {
        return Err(Error::ContextMismatch("polynomial is not monic".into()));
    }
    let trimmed = RestrictedSeries::polynomial(f.series_ctx(), f.coeffs()[..=deg].to_vec());
    let poly = newton_polygon(&trimmed)?;
    if deg == 1 && poly.zero_roots <= 1 {
        let slope = poly.slopes.first().map_or(Q::zero(), |s| s.0);
        return Ok(Irreducibility::Irreducible { degree: 1, slope });
    }
    if poly.zero_roots > 0 || poly.slopes.len() != 1 {
        return Ok(Irreducibility::Unknown);
    }
    let slope = poly.slopes[0].0;
    let denom = slope.denom().unsigned_abs() as usize;
    debug_assert!(slope.numer().gcd(slope.denom()) == 1 || slope.is_zero());
    Ok(if denom == deg {
        Irreducibility::Irreducible { degree: deg, slope }
    } else {
        Irreducibility::Unknown
    })
}

/// Degree of `Q_p[T]/(f)` over `Q_p` for a certified irreducible `f`.
pub fn residue_degree(cert: &Irreducibility) -> Option<usize> {
    match cert {
        Irreducibility::Irreducible { degree, .. } => Some(*degree),
        Irreducibility::Unknown => None,
    }
}
