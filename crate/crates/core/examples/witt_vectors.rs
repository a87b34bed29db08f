//! Truncated Witt vectors over a perfectoid field of characteristic `p`, and
//! the Teichmüller map.
//!
//! ```bash
//! cargo run --example witt_vectors
//! ```

use tateforge::exponent::qi;
use tateforge::witt::{teichmuller, witt_structure_polys, WittVector};
use tateforge::{Coeff, PerfCtx};

fn main() -> tateforge::Result<()> {
    let ctx = PerfCtx::exact(2, 2)?;
    let polys = witt_structure_polys(2, 3)?;
    println!("S_1 = {}", polys.sums[1]);
    println!("P_1 = {}", polys.prods[1]);

    let z = ctx.monomial(1, qi(1))?;
    let w = ctx.monomial(1, num_rational::Ratio::new(1, 2))?;
    let a = teichmuller(&z, 3)?;
    let b = teichmuller(&w, 3)?;
    println!(
        "[z] = {:?}",
        a.components().iter().map(ToString::to_string).collect::<Vec<_>>()
    );

    // the Teichmüller map is multiplicative but not additive
    let prod = a.mul(&b)?;
    println!(
        "[z][z^(1/2)] = [z^(3/2)]: {}",
        prod.agrees_with(&teichmuller(&z.mul(&w), 3)?)
    );
    let sum = a.add(&b)?;
    println!(
        "[z] + [z^(1/2)] = {:?}",
        sum.components()
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
    );

    let two = WittVector::one(&ctx, 3)?.add(&WittVector::one(&ctx, 3)?)?;
    println!(
        "1 + 1 = {:?}",
        two.components()
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
    );
    Ok(())
}
