//! The norms `λ_t` on finite Teichmüller sums `Σ [x_n] p^n`.
//!
//! ```bash
//! cargo run --example lambda_norms
//! ```

use num_rational::Ratio;
use tateforge::exponent::qi;
use tateforge::witt::{
    dominant_term, lambda_bound, lambda_interval, lambda_norm, Dominance, LambdaParam, TeichSum,
};
use tateforge::PerfCtx;

fn main() -> tateforge::Result<()> {
    let ctx = PerfCtx::exact(2, 2)?;
    // x = [z^2] + [z^(1/2)] p + [1] p^3
    let x = TeichSum::new(vec![
        (0, ctx.monomial(1, qi(2))?),
        (1, ctx.monomial(1, Ratio::new(1, 2))?),
        (3, ctx.monomial(1, qi(0))?),
    ])?;

    for t in [
        LambdaParam::rational(qi(1))?,
        LambdaParam::rational(qi(2))?,
        LambdaParam::sqrt(2)?,
    ] {
        println!("t = {t}");
        println!("  λ_t(x) = {}", lambda_norm(&x, &t)?);
        println!("  term bound {}", lambda_bound(&x, &t)?);
        match dominant_term(&x, &t)? {
            Dominance::Dominant { index, exponent, .. } => {
                println!("  dominant term p^{index}, norm p^-({exponent})")
            }
            Dominance::Tie(ids) => println!("  tie between {ids:?}"),
        }
    }

    let s = LambdaParam::rational(Ratio::new(1, 2))?;
    let r = LambdaParam::rational(qi(3))?;
    println!("λ_[1/2, 3](x) = {}", lambda_interval(&x, &s, &r)?);
    Ok(())
}
