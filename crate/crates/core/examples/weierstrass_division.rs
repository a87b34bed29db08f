//! Weierstrass division `g = f q + r` in `Q_2<T>` and in `Q_2<X><T>`.
//!
//! ```bash
//! cargo run --example weierstrass_division
//! ```

use tateforge::weierstrass::{check_distinguished, weierstrass_divide, weierstrass_divide_linear};
use tateforge::{PadicElement, QpCtx, RestrictedSeries, SeriesCtx};

fn main() -> tateforge::Result<()> {
    let ctx = SeriesCtx::<PadicElement>::new(QpCtx::new(2, 16)?);

    // f = -2 + T + 4T^2 is distinguished of degree 1
    let f = ctx.from_ints(&[-2, 1, 4]);
    let g = ctx.from_ints(&[3, 0, 0, 1]);
    let cert = check_distinguished(&f)?;
    println!("f = {f}  (distinguished, n0 = {})", cert.n0);
    println!("g = {g}");

    let d = weierstrass_divide(&f, &g)?;
    println!("q = {}", d.q);
    println!("r = {}", d.r);
    println!("|g - fq - r| {}  after {} iterations", d.residual, d.iterations);
    println!(
        "|g| = {}, max(|q|, |r|) = {}",
        g.gauss_norm(),
        d.q.gauss_norm().max(&d.r.gauss_norm())
    );

    let lin = weierstrass_divide_linear(&f, &g)?;
    let n = tateforge::NormExponent::integer(16);
    println!(
        "linear solve agrees mod 2^16: {}",
        lin.q.agrees_to(&d.q, &n) && lin.r.agrees_to(&d.r, &n)
    );

    // the same over the base Q_2<X>: f = X + T, g = T^2
    let inner = SeriesCtx::<PadicElement>::new(QpCtx::new(2, 12)?);
    let outer = SeriesCtx::new(inner.clone());
    let f: RestrictedSeries<_> = outer.poly(vec![inner.var(), inner.from_ints(&[1])]);
    let g = outer.poly(vec![
        inner.from_ints(&[0]),
        inner.from_ints(&[0]),
        inner.from_ints(&[1]),
    ]);
    let d = weierstrass_divide(&f, &g)?;
    println!("over Q_2<X>: T^2 = (T + X)·q + r with q = {}, r = {}", d.q, d.r);
    Ok(())
}
