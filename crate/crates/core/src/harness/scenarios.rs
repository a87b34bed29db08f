use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::gen;
use super::{Check, SuiteConfig, Tally, Verdict};
use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::exponent::{q, qi, NormExponent, NormValue, Q};
use crate::finite_alg::{FiniteFreeAlgebra, Matrix, PerturbationVerdict};
use crate::newton::{is_unit_tate, lower_hull, newton_polygon, nonunit_ball_witness, BallVerdict};
use crate::padic::{PadicElement, QpCtx};
use crate::perf::PerfCtx;
use crate::series::{RestrictedSeries, SeriesCtx};
use crate::weierstrass::{weierstrass_divide, weierstrass_divide_linear, weierstrass_prepare};
use crate::witt::{
    dominant_term, invert_by_domination, lambda_bound, lambda_norm, teichmuller, witt_cross_check, Dominance,
    GroupRingElement, LambdaParam, TeichSum, WittVector,
};

type Qp = RestrictedSeries<PadicElement>;
type Nested = RestrictedSeries<RestrictedSeries<PadicElement>>;

pub(crate) fn qp_poly(p: u64, cap: i32, coeffs: &[i64]) -> Result<Qp> {
    Ok(SeriesCtx::new(QpCtx::new(p, cap)?).from_ints(coeffs))
}

pub(crate) fn nested_poly(cap: i32, coeffs: &[Vec<i64>]) -> Result<Nested> {
    let inner = SeriesCtx::<PadicElement>::new(QpCtx::new(2, cap)?);
    let outer = SeriesCtx::new(inner.clone());
    Ok(outer.poly(coeffs.iter().map(|c| inner.from_ints(c)).collect()))
}

fn exact_like(n: &NormValue) -> bool {
    !matches!(n, NormValue::AtMost(_))
}

fn verdict_of(ok: Option<bool>) -> Verdict {
    match ok {
        Some(true) => Verdict::Pass,
        Some(false) => Verdict::Fail,
        None => Verdict::Indeterminate,
    }
}

/// The four division checks for one sample: residual, norm identity,
/// agreement of the two algorithms, and stability under a higher cap.
#[derive(Default)]
pub(crate) struct DivisionTallies {
    pub residual: Tally,
    pub identity: Tally,
    pub routes: Tally,
    pub monotone: Tally,
}

impl DivisionTallies {
    pub(crate) fn sample<R: Coeff>(
        &mut self,
        (f, g): (&RestrictedSeries<R>, &RestrictedSeries<R>),
        (f_hi, g_hi): (&RestrictedSeries<R>, &RestrictedSeries<R>),
        label: &str,
    ) {
        let n = R::precision(&f.series_ctx().base);
        let target = NormValue::Exact(n.clone());
        let fixed = match weierstrass_divide(f, g) {
            Ok(d) => d,
            Err(e) => {
                let v = Verdict::of_error(&e);
                for t in [
                    &mut self.residual,
                    &mut self.identity,
                    &mut self.routes,
                    &mut self.monotone,
                ] {
                    t.record(v, || format!("{label}: {e}"));
                }
                return;
            }
        };
        self.residual
            .record(verdict_of(fixed.residual.is_le(&target)), || {
                format!("{label}: residual {}", fixed.residual)
            });

        let (gn, qn, rn) = (g.gauss_norm(), fixed.q.gauss_norm(), fixed.r.gauss_norm());
        if [&gn, &qn, &rn].into_iter().all(exact_like) {
            let m = qn.max(&rn);
            let equal = gn.is_le(&m).zip(m.is_le(&gn)).map(|(a, b)| a && b);
            self.identity.record(verdict_of(equal), || {
                format!("{label}: |g| = {gn}, |q| = {qn}, |r| = {rn}")
            });
        } else {
            self.identity.skipped += 1;
        }

        match weierstrass_divide_linear(f, g) {
            Ok(lin) => {
                let ok = fixed.q.agrees_to(&lin.q, &n) && fixed.r.agrees_to(&lin.r, &n);
                self.routes
                    .record(if ok { Verdict::Pass } else { Verdict::Fail }, || {
                        format!(
                            "{label}: |q - q'| = {}, |r - r'| = {}",
                            fixed.q.sub(&lin.q).gauss_norm(),
                            fixed.r.sub(&lin.r).gauss_norm()
                        )
                    });
            }
            Err(e) => self
                .routes
                .record(Verdict::of_error(&e), || format!("{label}: linear route: {e}")),
        }

        match weierstrass_divide(f_hi, g_hi) {
            Ok(hi) => {
                let ok = fixed.q.agrees_to(&hi.q, &n) && fixed.r.agrees_to(&hi.r, &n);
                self.monotone
                    .record(if ok { Verdict::Pass } else { Verdict::Fail }, || {
                        format!(
                            "{label}: higher cap moves q by {} and r by {}",
                            fixed.q.sub(&hi.q).gauss_norm(),
                            fixed.r.sub(&hi.r).gauss_norm()
                        )
                    });
            }
            Err(e) => self
                .monotone
                .record(Verdict::of_error(&e), || format!("{label}: higher cap: {e}")),
        }
    }

    pub(crate) fn checks(&self, cap: i32) -> Vec<Check> {
        vec![
            self.residual.check(&format!("residual |g - fq - r| <= p^-{cap}")),
            self.identity
                .check("norm identity |g| = max(|q|, |r|), exact exponents"),
            self.routes.check(&format!(
                "fixed-point and linear-solve division agree mod p^{cap}"
            )),
            self.monotone
                .check(&format!("cap {} agrees with cap {cap} mod p^{cap}", cap + 8)),
        ]
    }
}

pub(crate) fn division(config: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let cap = config.cap;
    let mut t = DivisionTallies::default();
    for p in [2, 3] {
        for i in 0..config.count(120) {
            let raw = gen::division_pair(rng, p);
            let lo = (qp_poly(p, cap, &raw.f)?, qp_poly(p, cap, &raw.g)?);
            let hi = (qp_poly(p, cap + 8, &raw.f)?, qp_poly(p, cap + 8, &raw.g)?);
            t.sample(
                (&lo.0, &lo.1),
                (&hi.0, &hi.1),
                &format!("Q{p} sample {i} f={:?} g={:?}", raw.f, raw.g),
            );
        }
    }
    for i in 0..config.count(60) {
        let raw = gen::nested_division_pair(rng);
        let lo = (nested_poly(cap, &raw.f)?, nested_poly(cap, &raw.g)?);
        let hi = (nested_poly(cap + 8, &raw.f)?, nested_poly(cap + 8, &raw.g)?);
        t.sample(
            (&lo.0, &lo.1),
            (&hi.0, &hi.1),
            &format!("Q2<X> sample {i} f={:?} g={:?}", raw.f, raw.g),
        );
    }
    Ok(t.checks(cap))
}

#[derive(Default)]
pub(crate) struct PreparationTallies {
    pub recovered: Tally,
    pub unit: Tally,
    pub monotone: Tally,
}

impl PreparationTallies {
    pub(crate) fn sample(&mut self, raw: &gen::PreparationRaw, cap: i32) -> Result<()> {
        let label = format!("Q{} g={:?} u={:?}", raw.p, raw.g, raw.u);
        let n = NormExponent::integer(cap as i128);
        let g = qp_poly(raw.p, cap, &raw.g)?;
        let u = qp_poly(raw.p, cap, &raw.u)?;
        let f = g.mul(&u);
        let f_hi = qp_poly(raw.p, cap + 8, &raw.g)?.mul(&qp_poly(raw.p, cap + 8, &raw.u)?);
        let prep = match weierstrass_prepare(&f) {
            Ok(prep) => prep,
            Err(e) => {
                let v = Verdict::of_error(&e);
                for t in [&mut self.recovered, &mut self.unit, &mut self.monotone] {
                    t.record(v, || format!("{label}: {e}"));
                }
                return Ok(());
            }
        };
        let ok = prep.monic.agrees_to(&g, &n) && prep.unit.agrees_to(&u, &n);
        self.recovered
            .record(if ok { Verdict::Pass } else { Verdict::Fail }, || {
                format!("{label}: got g = {}, u = {}", prep.monic, prep.unit)
            });
        match is_unit_tate(&prep.unit) {
            Ok(b) => self.unit.record(verdict_of(Some(b)), || {
                format!("{label}: returned cofactor is not a unit")
            }),
            Err(e) => self
                .unit
                .record(Verdict::of_error(&e), || format!("{label}: {e}")),
        }
        match weierstrass_prepare(&f_hi) {
            Ok(hi) => {
                let ok = prep.monic.agrees_to(&hi.monic, &n) && prep.unit.agrees_to(&hi.unit, &n);
                self.monotone
                    .record(if ok { Verdict::Pass } else { Verdict::Fail }, || {
                        format!("{label}: higher cap gives g = {}", hi.monic)
                    });
            }
            Err(e) => self
                .monotone
                .record(Verdict::of_error(&e), || format!("{label}: higher cap: {e}")),
        }
        Ok(())
    }

    pub(crate) fn checks(&self, cap: i32) -> Vec<Check> {
        vec![
            self.recovered
                .check(&format!("prepare(g u) recovers g and u mod p^{cap}")),
            self.unit.check("returned cofactor is a unit of Q_p<T>"),
            self.monotone
                .check(&format!("cap {} agrees with cap {cap} mod p^{cap}", cap + 8)),
        ]
    }
}

pub(crate) fn preparation(config: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let mut t = PreparationTallies::default();
    for p in [2, 3, 5] {
        for _ in 0..config.count(40) {
            t.sample(&gen::preparation_pair(rng, p), config.cap)?;
        }
    }
    Ok(t.checks(config.cap))
}

/// Gift-wrapping lower hull over the points `(i, v(a_i))`: from each
/// vertex, the next is the point of least slope, farthest on ties.
fn gift_wrap(points: &[(usize, Q)]) -> Vec<(usize, Q)> {
    let mut hull = Vec::new();
    let Some(mut cur) = points.first().copied() else {
        return hull;
    };
    hull.push(cur);
    loop {
        let next = points
            .iter()
            .filter(|p| p.0 > cur.0)
            .map(|p| ((p.1 - cur.1) / Q::from_integer((p.0 - cur.0) as i128), p))
            .min_by(|a, b| a.0.cmp(&b.0).then(b.1 .0.cmp(&a.1 .0)));
        match next {
            Some((_, p)) => {
                cur = *p;
                hull.push(cur);
            }
            None => return hull,
        }
    }
}

fn valuation_points(f: &Qp) -> Vec<(usize, Q)> {
    f.coeffs()
        .iter()
        .enumerate()
        .filter_map(|(i, c)| c.valuation().map(|v| (i, Q::from_integer(v as i128))))
        .collect()
}

pub(crate) fn polygons(config: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let cap = config.cap;
    let mut additivity = Tally::default();
    let mut hulls = Tally::default();
    for i in 0..config.count(220) {
        let p = [2, 3, 5][i % 3];
        let f = qp_poly(p, cap, &gen::monic_poly(rng, p, 6))?;
        let g = qp_poly(p, cap, &gen::monic_poly(rng, p, 6))?;
        let fg = f.mul(&g);
        let label = format!("Q{p} f = {f}, g = {g}");
        match (newton_polygon(&f), newton_polygon(&g), newton_polygon(&fg)) {
            (Ok(a), Ok(b), Ok(c)) => {
                let mut union = a.slope_multiset();
                union.extend(b.slope_multiset());
                union.sort();
                additivity.record(verdict_of(Some(union == c.slope_multiset())), || {
                    format!("{label}: {:?} vs {:?}", union, c.slope_multiset())
                });
                for (h, s) in [(&a, &f), (&b, &g), (&c, &fg)] {
                    let oracle = gift_wrap(&valuation_points(s));
                    let hull = lower_hull(&valuation_points(s));
                    let ok = h.vertices == oracle && hull == oracle;
                    hulls.record(verdict_of(Some(ok)), || {
                        format!("{s}: {:?} vs {oracle:?}", h.vertices)
                    });
                }
            }
            (a, b, c) => {
                let e = [a.err(), b.err(), c.err()]
                    .into_iter()
                    .flatten()
                    .next()
                    .expect("one failed");
                additivity.record(Verdict::of_error(&e), || format!("{label}: {e}"));
            }
        }
    }
    let mut ball = Tally::default();
    for p in [2, 3] {
        for _ in 0..config.count(60) {
            let (lambda, y) = gen::ball_perturbation(rng, p);
            let y = qp_poly(p, cap, &y)?;
            let l = PadicElement::from_i64(&QpCtx::new(p, cap)?, lambda);
            let v = match (nonunit_ball_witness(&l, &y), is_unit_tate(&y)) {
                (Ok(BallVerdict::NonUnit), Ok(false)) => Verdict::Pass,
                (Err(e), _) | (_, Err(e)) => Verdict::of_error(&e),
                _ => Verdict::Fail,
            };
            ball.record(v, || format!("Q{p} λ = {lambda}, y = {y}"));
        }
    }
    Ok(vec![
        additivity.check("slopes(fg) = slopes(f) + slopes(g) as multisets"),
        hulls.check("hull agrees with the gift-wrapping oracle"),
        ball.check("perturbations of T - λ inside the ball are not units"),
    ])
}

fn mat_mul<R: Coeff>(base: &R::Ctx, a: &Matrix<R>, b: &Matrix<R>) -> Matrix<R> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(R::zero(base), |acc, k| acc.add(&a[i][k].mul(&b[k][j]))))
                .collect()
        })
        .collect()
}

pub(crate) fn perturbation(config: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let cap = config.cap;
    let n = NormExponent::integer(cap as i128);
    let mut integral = Tally::default();
    let mut homomorphism = Tally::default();
    for i in 0..config.count(120) {
        let p = [2, 3][i % 2];
        let ctx = QpCtx::new(p, cap)?;
        let (g, h) = gen::perturbation_instance(rng);
        let alg = FiniteFreeAlgebra::<PadicElement>::from_ints(&ctx, &g)?;
        let small = alg.scale(
            &alg.element_from_ints(&h)?,
            &PadicElement::from_i64(&ctx, p as i64),
        );
        let t = alg.add(&alg.x(), &small);
        let report = alg.perturb_integrality(&t);
        let monic = report
            .char_poly
            .last()
            .is_some_and(|c| c.agrees_to(&PadicElement::one(&ctx), &n));
        let v = match report.verdict {
            PerturbationVerdict::Pass if monic => Verdict::Pass,
            PerturbationVerdict::Indeterminate => Verdict::Indeterminate,
            _ => Verdict::Fail,
        };
        integral.record(v, || {
            format!(
                "Q{p} g = {g:?}, h = {h:?}: {:?}, CH residual {}",
                report.verdict, report.cayley_hamilton_residual
            )
        });

        let s = alg.element_from_ints(
            &(0..alg.dim())
                .map(|_| rng.gen_range(-20..=20))
                .collect::<Vec<_>>(),
        )?;
        let lhs = alg.mult_matrix(&alg.mul(&t, &s));
        let rhs = mat_mul(&ctx, &alg.mult_matrix(&t), &alg.mult_matrix(&s));
        let ok = lhs
            .iter()
            .flatten()
            .zip(rhs.iter().flatten())
            .all(|(a, b)| a.agrees_to(b, &n));
        homomorphism.record(verdict_of(Some(ok)), || format!("Q{p} g = {g:?}"));
    }
    Ok(vec![
        integral.check(&format!(
            "char_poly(t) monic with coefficients of norm <= 1, Cayley-Hamilton residual <= p^-{cap}"
        )),
        homomorphism.check("mult_matrix(ts) = mult_matrix(t) mult_matrix(s)"),
    ])
}

fn witt_axioms(a: &WittVector, b: &WittVector, c: &WittVector) -> Result<bool> {
    let ctx = a.perf_ctx();
    let len = a.len();
    let one = WittVector::one(&ctx, len)?;
    let zero = WittVector::zero(&ctx, len)?;
    let same = |x: WittVector, y: WittVector| x.agrees_with(&y);
    Ok(same(a.add(b)?.add(c)?, a.add(&b.add(c)?)?)
        && same(a.add(b)?, b.add(a)?)
        && same(a.mul(b)?.mul(c)?, a.mul(&b.mul(c)?)?)
        && same(a.mul(b)?, b.mul(a)?)
        && same(a.mul(&b.add(c)?)?, a.mul(b)?.add(&a.mul(c)?)?)
        && same(a.mul(&one)?, a.clone())
        && same(a.add(&zero)?, a.clone()))
}

fn witt_product(x: &TeichSum, y: &TeichSum, ctx: &PerfCtx, len: usize) -> Result<TeichSum> {
    TeichSum::from_witt(&x.to_witt(ctx, len)?.mul(&y.to_witt(ctx, len)?)?)
}

pub(crate) fn witt(config: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let trunc = PerfCtx::truncated(2, 3, qi(4))?;
    let mut axioms = Tally::default();
    for _ in 0..config.count(60) {
        let (a, b, c) = (
            gen::witt_vector(rng, &trunc, 3),
            gen::witt_vector(rng, &trunc, 3),
            gen::witt_vector(rng, &trunc, 3),
        );
        let v = match witt_axioms(&a, &b, &c) {
            Ok(ok) => verdict_of(Some(ok)),
            Err(e) => Verdict::of_error(&e),
        };
        axioms.record(v, || format!("{a:?}, {b:?}, {c:?}"));
    }

    let mut teich = Tally::default();
    for _ in 0..config.count(120) {
        let x = gen::perf_element(rng, &trunc, qi(4), 5);
        let y = gen::perf_element(rng, &trunc, qi(4), 5);
        let ok = teichmuller(&x.mul(&y), 3)?.agrees_with(&teichmuller(&x, 3)?.mul(&teichmuller(&y, 3)?)?);
        teich.record(verdict_of(Some(ok)), || format!("x = {x}, y = {y}"));
    }

    let configured = config.lambda_param()?;
    let radii = [configured, LambdaParam::rational(q(3, 2))?];
    let exact = PerfCtx::exact(2, 3)?;
    let mut pure = Tally::default();
    let mut sums = Tally::default();
    for i in 0..config.count(120) {
        let t = &radii[i % 2];
        let (n, m) = (rng.gen_range(0..2), rng.gen_range(0..2));
        let x = TeichSum::single(n, gen::perf_element(rng, &exact, qi(3), 3));
        let y = TeichSum::single(m, gen::perf_element(rng, &exact, qi(3), 3));
        let v = (|| -> Result<Verdict> {
            let (lx, ly) = (lambda_norm(&x, t)?, lambda_norm(&y, t)?);
            let lxy = lambda_norm(&witt_product(&x, &y, &exact, 4)?, t)?;
            Ok(verdict_of(Some(lxy == lx.try_mul(&ly)?)))
        })();
        pure.record(v.unwrap_or_else(|e| Verdict::of_error(&e)), || {
            format!("t = {t}: {x} * {y}")
        });

        let x = gen::teich_sum(rng, &exact, 4, 4);
        let y = gen::teich_sum(rng, &exact, 4, 4);
        let v = (|| -> Result<Verdict> {
            let bound = lambda_norm(&x, t)?.try_mul(&lambda_norm(&y, t)?)?;
            let lxy = lambda_bound(&witt_product(&x, &y, &exact, 4)?, t)?;
            Ok(verdict_of(lxy.is_le(&bound)))
        })();
        sums.record(v.unwrap_or_else(|e| Verdict::of_error(&e)), || {
            format!("t = {t}: {x} * {y}")
        });
    }
    Ok(vec![
        axioms.check("ring axioms on length-3 Witt vectors over F_2[z^(1/8)]/(z^4)"),
        teich.check("[xy] = [x][y]"),
        pure.check("λ_t(p^n[x] p^m[y]) = λ_t(p^n[x]) λ_t(p^m[y]) exactly"),
        sums.check("λ_t(xy) <= λ_t(x) λ_t(y) on sums of at most 4 terms"),
    ])
}

pub(crate) fn dim0(config: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let t = config.lambda_param()?;
    let target = NormExponent::integer(config.target as i128);
    let ctx = PerfCtx::exact(2, 1)?;
    let mut dominance = Tally::default();
    let mut inversion = Tally::default();
    let mut cross = Tally::default();
    let mut residuals = Vec::new();
    for _ in 0..config.count(60) {
        let x = gen::dominance_sum(rng, &ctx);
        match dominant_term(&x, &t) {
            Ok(Dominance::Dominant {
                pairwise_distinct, ..
            }) => {
                let v = if pairwise_distinct || t.is_rational() {
                    Verdict::Pass
                } else {
                    Verdict::Fail
                };
                dominance.record(v, || format!("{x}: norms not pairwise distinct"));
            }
            Ok(Dominance::Tie(ids)) => {
                let v = if t.is_rational() {
                    Verdict::Indeterminate
                } else {
                    Verdict::Fail
                };
                dominance.record(v, || format!("{x}: tie between {ids:?}"));
                continue;
            }
            Err(e) => {
                dominance.record(Verdict::of_error(&e), || format!("{x}: {e}"));
                continue;
            }
        }
        match invert_by_domination(&x, &t, &target) {
            Ok(inv) => {
                residuals.push(inv.residual.to_string());
                let ok = inv.residual.is_le(&NormValue::Exact(target.clone()));
                inversion.record(verdict_of(ok), || format!("{x}: residual {}", inv.residual));
            }
            Err(e) => inversion.record(Verdict::of_error(&e), || format!("{x}: {e}")),
        }
        let v = GroupRingElement::from_teich_sum(&x)
            .and_then(|g| witt_cross_check(&g, &g, &ctx, 3))
            .map_or_else(|e| Verdict::of_error(&e), |ok| verdict_of(Some(ok)));
        cross.record(v, || format!("{x}"));
    }

    let mut ties = Tally::default();
    for _ in 0..config.count(30) {
        let (x, t_tie, levels) = gen::tie_sum(rng, &ctx);
        let t_tie = LambdaParam::rational(t_tie)?;
        let reported = matches!(dominant_term(&x, &t_tie), Ok(Dominance::Tie(ref ids)) if levels.iter().all(|n| ids.contains(n)));
        let refused = matches!(invert_by_domination(&x, &t_tie, &target), Err(Error::Tie(_)));
        ties.record(verdict_of(Some(reported && refused)), || {
            format!("t = {t_tie}: {x}")
        });
    }
    let mut inverse_check = inversion.check(&format!("λ_t(x x^-1 - 1) <= p^-{}", config.target));
    if inverse_check.detail.is_null() {
        inverse_check.detail = json!({});
    }
    inverse_check.detail["residuals"] = json!(residuals);
    Ok(vec![
        dominance.check(&format!("strict dominance at t = {t}")),
        inverse_check,
        cross.check("group-ring products match length-3 Witt products"),
        ties.check("rational-t ties are reported, never broken"),
    ])
}
