//! Newton polygons, root valuations and irreducibility certificates.
//!
//! ```bash
//! cargo run --example newton_polygon
//! ```

use tateforge::newton::{irreducibility_certificate, newton_polygon, nonunit_ball_witness, residue_degree};
use tateforge::{PadicElement, QpCtx, SeriesCtx};

fn main() -> tateforge::Result<()> {
    let ctx = SeriesCtx::<PadicElement>::new(QpCtx::new(2, 16)?);

    // (T - 2)(T - 4)(T^2 - 2): roots of valuation 1, 2 and 1/2
    let f = ctx
        .from_ints(&[-2, 1])
        .mul(&ctx.from_ints(&[-4, 1]))
        .mul(&ctx.from_ints(&[-2, 0, 1]));
    let poly = newton_polygon(&f)?;
    println!("f = {f}");
    println!(
        "vertices: {:?}",
        poly.vertices
            .iter()
            .map(|(i, v)| format!("({i}, {v})"))
            .collect::<Vec<_>>()
    );
    println!(
        "root valuations: {:?}",
        poly.root_valuations()
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
    );

    for coeffs in [&[-2, 0, 1][..], &[-4, 0, 0, 1], &[-1, 0, 1]] {
        let g = ctx.from_ints(coeffs);
        let cert = irreducibility_certificate(&g)?;
        println!("{g}: {cert:?}, residue degree {:?}", residue_degree(&cert));
    }

    // T - λ + (small) is never a unit when the perturbation is below |λ|
    let lambda = PadicElement::from_i64(&ctx.base, 4);
    let y = ctx.from_ints(&[-4 + 8, 1, 16]);
    println!("T - 4 perturbed to {y}: {:?}", nonunit_ball_witness(&lambda, &y)?);
    Ok(())
}
