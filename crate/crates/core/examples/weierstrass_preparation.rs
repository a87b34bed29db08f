//! Weierstrass preparation `f = g u` and the unit criterion in `Q_p<T>`.
//!
//! ```bash
//! cargo run --example weierstrass_preparation
//! ```

use tateforge::newton::is_unit_tate;
use tateforge::weierstrass::{rescale_to_distinguished, weierstrass_prepare};
use tateforge::{PadicElement, QpCtx, SeriesCtx};

fn main() -> tateforge::Result<()> {
    let ctx = SeriesCtx::<PadicElement>::new(QpCtx::new(2, 16)?);
    let g = ctx.from_ints(&[-2, 1]);
    let u = ctx.from_ints(&[1, 2]);
    let f = g.mul(&u);
    println!("f = (T - 2)(1 + 2T) = {f}");

    let prep = weierstrass_prepare(&f)?;
    println!("g = {}", prep.monic);
    println!("u = {}", prep.unit);
    println!("u is a unit: {}", is_unit_tate(&prep.unit)?);
    println!("|f - g u| {}", prep.residual);

    // a series whose largest coefficient is not a unit is rescaled first
    let ctx3 = SeriesCtx::<PadicElement>::new(QpCtx::new(3, 12)?);
    let h = ctx3.from_ints(&[9, 1, 3]);
    let (c, cert) = rescale_to_distinguished(&h)?;
    println!("h = {h}: scale by {c}, distinguished of degree {}", cert.n0);
    let prep = weierstrass_prepare(&h.scale(&c))?;
    println!("  g = {}, u = {}", prep.monic, prep.unit);
    Ok(())
}
