//! Inverting a Teichmüller sum with a dominant term, checked against Witt
//! multiplication.
//!
//! ```bash
//! cargo run --example dim0_inversion
//! ```

use num_rational::Ratio;
use tateforge::exponent::qi;
use tateforge::witt::{invert_by_domination, witt_cross_check, GroupRingElement, LambdaParam, TeichSum};
use tateforge::{NormExponent, PerfCtx};

fn main() -> tateforge::Result<()> {
    let ctx = PerfCtx::exact(2, 2)?;
    let x = TeichSum::new(vec![
        (0, ctx.monomial(1, qi(2))?),
        (1, ctx.monomial(1, Ratio::new(1, 2))?),
    ])?;
    let t = LambdaParam::sqrt(2)?;
    let target = NormExponent::integer(10);

    let inv = invert_by_domination(&x, &t, &target)?;
    println!("dominant index {}", inv.dominant);
    println!(
        "{} series terms, inverse has {} monomials",
        inv.terms,
        inv.inverse.num_terms()
    );
    println!("λ_t(x·y - 1) = {}", inv.residual);

    let gx = GroupRingElement::from_teich_sum(&x)?;
    let witt_ctx = PerfCtx::exact(2, 1)?;
    let a = GroupRingElement::from_teich_sum(&TeichSum::new(vec![
        (0, witt_ctx.monomial(1, qi(1))?),
        (1, witt_ctx.monomial(1, qi(0))?),
    ])?)?;
    println!("Witt products agree: {}", witt_cross_check(&a, &a, &witt_ctx, 3)?);
    println!("x = {gx}");

    // equal term norms at t = 1 leave no dominant term
    let tied = TeichSum::new(vec![(0, ctx.monomial(1, qi(1))?), (1, ctx.monomial(1, qi(0))?)])?;
    match invert_by_domination(&tied, &LambdaParam::rational(qi(1))?, &target) {
        Err(e) => println!("tie: {e}"),
        Ok(_) => println!("unexpected inverse"),
    }
    Ok(())
}
