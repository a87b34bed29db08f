//! Finite free algebras `B = A[X]/(g)` with `g` monic, multiplication
//! matrices, characteristic polynomials, and the perturbation check.

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::exponent::NormValue;

pub type Matrix<R> = Vec<Vec<R>>;

#[derive(Debug, Clone, PartialEq)]
pub struct FiniteFreeAlgebra<R: Coeff> {
    base: R::Ctx,
    /// `g = c_0 + … + c_{d-1} X^(d-1) + X^d`, lowest degree first.
    modulus: Vec<R>,
    /// Coordinates of `X^d, …, X^(2d-2)` in the basis `1, X, …, X^(d-1)`.
    reductions: Vec<Vec<R>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraElement<R: Coeff> {
    pub coords: Vec<R>,
}

impl<R: Coeff> FiniteFreeAlgebra<R> {
    /// Builds the algebra from a monic modulus given lowest degree first.
    pub fn new(base: &R::Ctx, modulus: Vec<R>) -> Result<Self> {
        let Some(lead) = modulus.last() else {
            return Err(Error::ContextMismatch("empty modulus".into()));
        };
        if modulus.len() < 2 || !lead.agrees_to(&R::one(base), &R::precision(base)) {
            return Err(Error::ContextMismatch(
                "modulus must be monic of degree ≥ 1".into(),
            ));
        }
        let d = modulus.len() - 1;
        let mut modulus = modulus;
        modulus[d] = R::one(base);
        let mut reductions: Vec<Vec<R>> = Vec::with_capacity(d.saturating_sub(1));
        // X^d = -(c_0 + … + c_{d-1} X^(d-1))
        let mut cur: Vec<R> = modulus[..d].iter().map(Coeff::neg).collect();
        for _ in 0..d.saturating_sub(1).max(1) {
            reductions.push(cur.clone());
            // multiply by X and reduce
            let top = cur[d - 1].clone();
            let mut next = vec![R::zero(base)];
            next.extend(cur[..d - 1].iter().cloned());
            for (i, n) in next.iter_mut().enumerate() {
                *n = n.sub(&top.mul(&modulus[i]));
            }
            cur = next;
        }
        Ok(FiniteFreeAlgebra {
            base: base.clone(),
            modulus,
            reductions,
        })
    }

    pub fn from_ints(base: &R::Ctx, modulus: &[i64]) -> Result<Self> {
        Self::new(base, modulus.iter().map(|&c| R::from_int(base, c)).collect())
    }

    pub fn base(&self) -> &R::Ctx {
        &self.base
    }

    pub fn dim(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[R] {
        &self.modulus
    }

    pub fn element(&self, mut coords: Vec<R>) -> Result<AlgebraElement<R>> {
        if coords.len() > self.dim() {
            return Err(Error::ContextMismatch(format!(
                "{} coordinates for an algebra of rank {}",
                coords.len(),
                self.dim()
            )));
        }
        coords.resize(self.dim(), R::zero(&self.base));
        Ok(AlgebraElement { coords })
    }

    pub fn element_from_ints(&self, coords: &[i64]) -> Result<AlgebraElement<R>> {
        self.element(coords.iter().map(|&c| R::from_int(&self.base, c)).collect())
    }

    pub fn one(&self) -> AlgebraElement<R> {
        let mut coords = vec![R::zero(&self.base); self.dim()];
        coords[0] = R::one(&self.base);
        AlgebraElement { coords }
    }

    /// The class of `X`.
    pub fn x(&self) -> AlgebraElement<R> {
        if self.dim() == 1 {
            return AlgebraElement {
                coords: vec![self.modulus[0].neg()],
            };
        }
        let mut coords = vec![R::zero(&self.base); self.dim()];
        coords[1] = R::one(&self.base);
        AlgebraElement { coords }
    }

    pub fn add(&self, a: &AlgebraElement<R>, b: &AlgebraElement<R>) -> AlgebraElement<R> {
        AlgebraElement {
            coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x.add(y)).collect(),
        }
    }

    pub fn sub(&self, a: &AlgebraElement<R>, b: &AlgebraElement<R>) -> AlgebraElement<R> {
        AlgebraElement {
            coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x.sub(y)).collect(),
        }
    }

    pub fn scale(&self, a: &AlgebraElement<R>, c: &R) -> AlgebraElement<R> {
        AlgebraElement {
            coords: a.coords.iter().map(|x| x.mul(c)).collect(),
        }
    }

    pub fn mul(&self, a: &AlgebraElement<R>, b: &AlgebraElement<R>) -> AlgebraElement<R> {
        let d = self.dim();
        let mut full = vec![R::zero(&self.base); 2 * d - 1];
        for (i, x) in a.coords.iter().enumerate() {
            for (j, y) in b.coords.iter().enumerate() {
                full[i + j] = full[i + j].add(&x.mul(y));
            }
        }
        let mut out: Vec<R> = full[..d].to_vec();
        for (k, c) in full.iter().enumerate().skip(d) {
            for (o, r) in out.iter_mut().zip(&self.reductions[k - d]) {
                *o = o.add(&c.mul(r));
            }
        }
        AlgebraElement { coords: out }
    }

    /// Column `j` holds the coordinates of `t · X^j`.
    pub fn mult_matrix(&self, t: &AlgebraElement<R>) -> Matrix<R> {
        let d = self.dim();
        let mut m = vec![vec![R::zero(&self.base); d]; d];
        let mut col = t.clone();
        let x = self.x();
        for j in 0..d {
            for (i, row) in m.iter_mut().enumerate() {
                row[j] = col.coords[i].clone();
            }
            if j + 1 < d {
                col = self.mul(&col, &x);
            }
        }
        m
    }

    /// Characteristic polynomial `det(T - M_t)`, lowest degree first.
    pub fn char_poly(&self, t: &AlgebraElement<R>) -> Vec<R> {
        berkowitz(&self.base, &self.mult_matrix(t))
    }

    /// Evaluates a polynomial (lowest degree first) at `t`.
    pub fn eval(&self, poly: &[R], t: &AlgebraElement<R>) -> AlgebraElement<R> {
        let zero = AlgebraElement {
            coords: vec![R::zero(&self.base); self.dim()],
        };
        poly.iter().rev().fold(zero, |acc, c| {
            let mut next = self.mul(&acc, t);
            next.coords[0] = next.coords[0].add(c);
            next
        })
    }

    pub fn norm(&self, a: &AlgebraElement<R>) -> NormValue {
        a.coords
            .iter()
            .fold(NormValue::ExactZero, |acc, c| acc.max(&c.norm()))
    }

    /// Checks that `t` with `t - x ∈ pR` is integral over the unit ball:
    /// its characteristic polynomial has coefficients of norm `≤ 1`.
    pub fn perturb_integrality(&self, t: &AlgebraElement<R>) -> PerturbationReport<R> {
        let one = NormValue::one();
        let p_norm = NormValue::exact(crate::exponent::qi(1));
        let unit_modulus = self.modulus.iter().all(|c| c.norm().is_le(&one) == Some(true));
        let shift = self.norm(&self.sub(t, &self.x()));
        let char_poly = self.char_poly(t);
        let residual = self.norm(&self.eval(&char_poly, t));
        if !unit_modulus || shift.is_le(&p_norm) != Some(true) {
            return PerturbationReport {
                verdict: PerturbationVerdict::HypothesisNotMet,
                char_poly,
                perturbation: shift,
                cayley_hamilton_residual: residual,
            };
        }
        let target = NormValue::Exact(R::precision(&self.base));
        let integral: Vec<Option<bool>> = char_poly.iter().map(|c| c.norm().is_le(&one)).collect();
        let ch = residual.is_le(&target);
        let verdict = if integral.iter().all(|v| *v == Some(true)) && ch == Some(true) {
            PerturbationVerdict::Pass
        } else if integral.contains(&None) || ch.is_none() {
            PerturbationVerdict::Indeterminate
        } else {
            PerturbationVerdict::Fail
        };
        PerturbationReport {
            verdict,
            char_poly,
            perturbation: shift,
            cayley_hamilton_residual: residual,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PerturbationVerdict {
    Pass,
    Fail,
    Indeterminate,
    HypothesisNotMet,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PerturbationReport<R: Coeff> {
    pub verdict: PerturbationVerdict,
    pub char_poly: Vec<R>,
    /// Norm of `t - x`.
    pub perturbation: NormValue,
    pub cayley_hamilton_residual: NormValue,
}

/// Division-free characteristic polynomial `det(T - M)`, lowest degree
/// first, by Berkowitz's algorithm.
pub fn berkowitz<R: Coeff>(base: &R::Ctx, m: &Matrix<R>) -> Vec<R> {
    let n = m.len();
    let zero = R::zero(base);
    // coefficient vectors are kept highest degree first
    let mut v: Vec<R> = vec![R::one(base)];
    for r in 0..n {
        // leading principal block of size r, border column c and row s
        let a_rr = m[r][r].clone();
        let col: Vec<R> = (0..r).map(|i| m[i][r].clone()).collect();
        let row: Vec<R> = (0..r).map(|j| m[r][j].clone()).collect();
        let mut toeplitz = vec![R::one(base), a_rr.neg()];
        let mut w = col;
        for _ in 0..r {
            let dot = row
                .iter()
                .zip(&w)
                .fold(zero.clone(), |acc, (x, y)| acc.add(&x.mul(y)));
            toeplitz.push(dot.neg());
            w = (0..r)
                .map(|i| (0..r).fold(zero.clone(), |acc, j| acc.add(&m[i][j].mul(&w[j]))))
                .collect();
        }
        let mut next = vec![zero.clone(); r + 2];
        for (i, n_i) in next.iter_mut().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                if i >= j && i - j < toeplitz.len() {
                    *n_i = n_i.add(&toeplitz[i - j].mul(vj));
                }
            }
        }
        v = next;
    }
    v.reverse();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::{PadicElement, QpCtx};

    fn alg() -> (QpCtx, FiniteFreeAlgebra<PadicElement>) {
        let ctx = QpCtx::new(2, 16).unwrap();
        let b = FiniteFreeAlgebra::from_ints(&ctx, &[-2, 0, 1]).unwrap();
        (ctx, b)
    }

    fn ints(ctx: &QpCtx, v: &[i64]) -> Vec<PadicElement> {
        v.iter().map(|&c| ctx.elem(c)).collect()
    }

    #[test]
    fn multiplication_matrices() {
        let (ctx, b) = alg();
        let m = b.mult_matrix(&b.x());
        assert_eq!(m, vec![ints(&ctx, &[0, 2]), ints(&ctx, &[1, 0])]);
        let m = b.mult_matrix(&b.one());
        assert_eq!(m, vec![ints(&ctx, &[1, 0]), ints(&ctx, &[0, 1])]);
        let t = b.element_from_ints(&[2, 1]).unwrap();
        assert_eq!(b.mult_matrix(&t), vec![ints(&ctx, &[2, 2]), ints(&ctx, &[1, 2])]);
    }

    #[test]
    fn characteristic_polynomials() {
        let (ctx, b) = alg();
        assert_eq!(b.char_poly(&b.x()), ints(&ctx, &[-2, 0, 1]));
        let t = b.element_from_ints(&[2, 1]).unwrap();
        assert_eq!(b.char_poly(&t), ints(&ctx, &[2, -4, 1]));
        let t = b.element_from_ints(&[0, 5]).unwrap();
        assert_eq!(b.char_poly(&t), ints(&ctx, &[-50, 0, 1]));
    }

    #[test]
    fn perturbation_examples() {
        let (ctx, b) = alg();
        let t = b.element_from_ints(&[4, 1]).unwrap();
        let rep = b.perturb_integrality(&t);
        assert_eq!(rep.verdict, PerturbationVerdict::Pass);
        assert_eq!(rep.char_poly, ints(&ctx, &[14, -8, 1]));
        assert_eq!(b.perturb_integrality(&b.x()).verdict, PerturbationVerdict::Pass);
        let t = b.element_from_ints(&[1, 1]).unwrap();
        assert_eq!(
            b.perturb_integrality(&t).verdict,
            PerturbationVerdict::HypothesisNotMet
        );
    }

    #[test]
    fn linear_modulus() {
        let ctx = QpCtx::new(3, 8).unwrap();
        let b = FiniteFreeAlgebra::<PadicElement>::from_ints(&ctx, &[-5, 1]).unwrap();
        assert_eq!(b.x().coords, ints(&ctx, &[5]));
        assert_eq!(b.char_poly(&b.x()), ints(&ctx, &[-5, 1]));
    }
}
