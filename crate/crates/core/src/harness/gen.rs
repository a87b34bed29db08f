//! Seeded random instances. Integer data is kept separate from the cap so
//! the same sample can be rebuilt at several precisions.

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::exponent::{q, qi, Q};
use crate::perf::{PerfCtx, PerfElement};
use crate::witt::{TeichSum, WittVector};

fn pow(p: u64, k: u32) -> i64 {
    (p as i64).pow(k)
}

/// Integer in `[-bound, bound]` prime to `p`.
pub fn unit<G: Rng>(rng: &mut G, p: u64, bound: i64) -> i64 {
    loop {
        let x = rng.gen_range(-bound..=bound);
        if x % p as i64 != 0 {
            return x;
        }
    }
}

/// `p^k u` with `k ∈ [lo, hi]`, or zero with probability `1/8`.
fn scaled<G: Rng>(rng: &mut G, p: u64, lo: u32, hi: u32) -> i64 {
    if rng.gen_ratio(1, 8) {
        return 0;
    }
    pow(p, rng.gen_range(lo..=hi)) * unit(rng, p, 40)
}

/// `(f, g)` over `Z`, lowest degree first, with `f` distinguished of
/// degree `n0 ≤ 3`, `f_(n0) = 1` and `|f_i| ≤ p^-1` above `n0`.
#[derive(Debug, Clone)]
pub struct DivisionRaw {
    pub p: u64,
    pub f: Vec<i64>,
    pub g: Vec<i64>,
}

pub fn division_pair<G: Rng>(rng: &mut G, p: u64) -> DivisionRaw {
    let n0 = rng.gen_range(0..=3);
    let mut f: Vec<i64> = (0..n0).map(|_| scaled(rng, p, 0, 3)).collect();
    f.push(1);
    for _ in 0..rng.gen_range(0..=3) {
        f.push(scaled(rng, p, 1, 3));
    }
    let g = (0..=rng.gen_range(0..=6)).map(|_| scaled(rng, p, 0, 3)).collect();
    DivisionRaw { p, f, g }
}

/// A pair over `Z_2[X]`: each coefficient is a polynomial in `X` of
/// degree `≤ 2`, and the part of `f` above `n0` is divisible by 4.
#[derive(Debug, Clone)]
pub struct NestedDivisionRaw {
    pub f: Vec<Vec<i64>>,
    pub g: Vec<Vec<i64>>,
}

fn small_poly<G: Rng>(rng: &mut G, lo: u32) -> Vec<i64> {
    (0..=rng.gen_range(0..=2))
        .map(|_| scaled(rng, 2, lo, lo + 2))
        .collect()
}

pub fn nested_division_pair<G: Rng>(rng: &mut G) -> NestedDivisionRaw {
    let n0 = rng.gen_range(0..=2);
    let mut f: Vec<Vec<i64>> = (0..n0).map(|_| small_poly(rng, 0)).collect();
    f.push(vec![1]);
    for _ in 0..rng.gen_range(0..=2) {
        f.push(small_poly(rng, 2));
    }
    let g = (0..=rng.gen_range(0..=4)).map(|_| small_poly(rng, 0)).collect();
    NestedDivisionRaw { f, g }
}

/// `g` monic of degree `1..=4` with integral coefficients, `u` with a unit
/// constant term and the rest divisible by `p`.
#[derive(Debug, Clone)]
pub struct PreparationRaw {
    pub p: u64,
    pub g: Vec<i64>,
    pub u: Vec<i64>,
}

pub fn preparation_pair<G: Rng>(rng: &mut G, p: u64) -> PreparationRaw {
    let n = rng.gen_range(1..=4);
    let mut g: Vec<i64> = (0..n).map(|_| scaled(rng, p, 0, 3)).collect();
    g.push(1);
    let mut u = vec![unit(rng, p, 40)];
    for _ in 0..rng.gen_range(0..=3) {
        u.push(scaled(rng, p, 1, 3));
    }
    PreparationRaw { p, g, u }
}

/// Monic of degree `1..=max_deg` with nonzero constant term and
/// coefficient valuations at most 4.
pub fn monic_poly<G: Rng>(rng: &mut G, p: u64, max_deg: usize) -> Vec<i64> {
    let n = rng.gen_range(1..=max_deg);
    let mut f: Vec<i64> = (0..n)
        .map(|i| {
            if i == 0 {
                pow(p, rng.gen_range(0..=4)) * unit(rng, p, 10)
            } else {
                scaled(rng, p, 0, 4)
            }
        })
        .collect();
    f.push(1);
    f
}

/// `(λ, y)` with `0 < |λ| < 1` and `|y - (T - λ)| < |λ|`.
pub fn ball_perturbation<G: Rng>(rng: &mut G, p: u64) -> (i64, Vec<i64>) {
    let k = rng.gen_range(1..=4);
    let lambda = pow(p, k) * unit(rng, p, 10);
    let mut y: Vec<i64> = (0..=rng.gen_range(1..=4))
        .map(|_| pow(p, k + 1) * rng.gen_range(-10..=10))
        .collect();
    y[0] -= lambda;
    y[1] += 1;
    (lambda, y)
}

/// Monic modulus of degree `1..=4` over `Z` and coordinates `h` with
/// `t = X + p h`.
pub fn perturbation_instance<G: Rng>(rng: &mut G) -> (Vec<i64>, Vec<i64>) {
    let d = rng.gen_range(1..=4);
    let mut g: Vec<i64> = (0..d).map(|_| rng.gen_range(-50..=50)).collect();
    g.push(1);
    let h = (0..d).map(|_| rng.gen_range(-50..=50)).collect();
    (g, h)
}

/// Random element of `F_p[z^(1/p^k)]`, exponents below `bound`.
pub fn perf_element<G: Rng>(rng: &mut G, ctx: &PerfCtx, bound: Q, max_terms: usize) -> PerfElement {
    let den = ctx.denom() as i128;
    let top = (bound * Q::from_integer(den)).floor().to_integer();
    let terms: Vec<(Q, u64)> = (0..rng.gen_range(0..=max_terms))
        .map(|_| (q(rng.gen_range(0..top), den), rng.gen_range(1..ctx.p)))
        .collect();
    PerfElement::from_terms(ctx, &terms).expect("exponents lie in the context")
}

pub fn witt_vector<G: Rng>(rng: &mut G, ctx: &PerfCtx, len: usize) -> WittVector {
    let bound = ctx.trunc().unwrap_or(qi(4));
    let comps = (0..len).map(|_| perf_element(rng, ctx, bound, 6)).collect();
    WittVector::new(ctx, comps).expect("components lie in o_L")
}

/// A sum of at most `max_terms` nonzero terms `p^n [x_n]`, `n < levels`,
/// always with a level-0 term of valuation below 1.
pub fn teich_sum<G: Rng>(rng: &mut G, ctx: &PerfCtx, levels: i64, max_terms: usize) -> TeichSum {
    let mut ns: Vec<i64> = (1..levels).collect();
    ns.shuffle(rng);
    ns.truncate(rng.gen_range(0..max_terms));
    let mut terms = vec![(0, nonzero_element(rng, ctx, qi(1), qi(3)))];
    for n in ns {
        terms.push((n, nonzero_element(rng, ctx, qi(3), qi(3))));
    }
    TeichSum::new(terms).expect("levels are distinct")
}

/// Nonzero element whose lowest exponent is below `lead`.
fn nonzero_element<G: Rng>(rng: &mut G, ctx: &PerfCtx, lead: Q, bound: Q) -> PerfElement {
    let den = ctx.denom() as i128;
    let e = q(rng.gen_range(0..(lead * Q::from_integer(den)).to_integer()), den);
    let first = ctx
        .monomial(rng.gen_range(1..ctx.p), e)
        .expect("exponent in context");
    let rest = perf_element(rng, ctx, bound, 2);
    let sum = crate::coeff::Coeff::add(&first, &rest);
    if sum.is_zero() {
        first
    } else {
        sum
    }
}

/// A sum of at most 5 monomial terms `p^n [c z^(e_n)]` with distinct `n`
/// in `0..6` and `e_n ∈ (1/2)Z ∩ [0, 3]`, over `p = 2`.
pub fn dominance_sum<G: Rng>(rng: &mut G, ctx: &PerfCtx) -> TeichSum {
    let mut ns: Vec<i64> = (0..6).collect();
    ns.shuffle(rng);
    ns.truncate(rng.gen_range(1..=5));
    let terms = ns
        .into_iter()
        .map(|n| {
            (
                n,
                ctx.monomial(1, q(rng.gen_range(0..=6), 2))
                    .expect("half-integers"),
            )
        })
        .collect();
    TeichSum::new(terms).expect("levels are distinct")
}

/// A sum over `p = 2` whose two largest terms tie for `λ_t`, `t` one of
/// `1/2, 1, 2`, together with the tied levels.
pub fn tie_sum<G: Rng>(rng: &mut G, ctx: &PerfCtx) -> (TeichSum, Q, Vec<i64>) {
    let t = *[q(1, 2), qi(1), qi(2)].choose(rng).expect("nonempty");
    let n1 = rng.gen_range(0..3);
    let n2 = n1 + rng.gen_range(1..3);
    let e2 = q(rng.gen_range(0..=4), 2);
    // n1 + t e1 = n2 + t e2
    let e1 = e2 + Q::from_integer((n2 - n1) as i128) / t;
    let level = Q::from_integer(n2 as i128) + t * e2;
    let mut terms = vec![
        (n1, ctx.monomial(1, e1).expect("dyadic")),
        (n2, ctx.monomial(1, e2).expect("dyadic")),
    ];
    // smaller terms at the remaining levels
    for n in (n2 + 1)..(n2 + 1 + rng.gen_range(0..3)) {
        let min_e = (level - Q::from_integer(n as i128)) / t;
        let e = if min_e < Q::zero() {
            Q::zero()
        } else {
            (min_e * 2).floor() / 2 + q(1, 2)
        };
        terms.push((n, ctx.monomial(1, e).expect("dyadic")));
    }
    (
        TeichSum::new(terms).expect("levels are distinct"),
        t,
        vec![n1, n2],
    )
}
