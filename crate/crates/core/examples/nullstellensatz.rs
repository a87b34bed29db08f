//! Residue fields of maximal ideals `(f)` of `Q_p<T>`, from the bundled
//! polynomial list or from integer coefficients on the command line.
//!
//! ```bash
//! cargo run --example nullstellensatz
//! cargo run --example nullstellensatz -- 3 -3 0 1
//! ```

use tateforge::harness::{nullstellensatz_check, SuiteConfig};
use tateforge::{PadicElement, QpCtx, SeriesCtx};

fn main() -> tateforge::Result<()> {
    let args: Vec<i64> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("integer"))
        .collect();
    if let [p, coeffs @ ..] = args.as_slice() {
        let ctx = SeriesCtx::<PadicElement>::new(QpCtx::new(*p as u64, 16)?);
        let report = nullstellensatz_check(&ctx.from_ints(coeffs));
        print!("{}", report.to_text());
        return Ok(());
    }
    for f in &SuiteConfig::default().corpus()? {
        let report = nullstellensatz_check(f);
        println!(
            "{:>5}  Q_{}  {}",
            report.verdict().to_string(),
            f.series_ctx().base.p,
            f
        );
    }
    Ok(())
}
