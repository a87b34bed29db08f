//! Characteristic polynomials in `Q_p[X]/(g)` and integrality of small
//! perturbations of `X`.
//!
//! ```bash
//! cargo run --example perturbation
//! ```

use tateforge::finite_alg::FiniteFreeAlgebra;
use tateforge::{PadicElement, QpCtx};

fn main() -> tateforge::Result<()> {
    let ctx = QpCtx::new(3, 16)?;
    // B = Q_3[X]/(X^3 - X + 1)
    let alg = FiniteFreeAlgebra::<PadicElement>::from_ints(&ctx, &[1, -1, 0, 1])?;
    let three = PadicElement::from_i64(&ctx, 3);
    let h = alg.element_from_ints(&[2, -1, 5])?;
    let t = alg.add(&alg.x(), &alg.scale(&h, &three));
    println!(
        "t = X + 3(2 - X + 5X^2), coordinates {:?}",
        t.coords.iter().map(ToString::to_string).collect::<Vec<_>>()
    );

    let report = alg.perturb_integrality(&t);
    let cp: Vec<String> = report.char_poly.iter().map(ToString::to_string).collect();
    println!("char poly (lowest degree first): {cp:?}");
    println!("|t - X| = {}", report.perturbation);
    println!("Cayley-Hamilton residual {}", report.cayley_hamilton_residual);
    println!("verdict: {:?}", report.verdict);
    Ok(())
}
