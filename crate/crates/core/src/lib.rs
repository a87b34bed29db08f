//! Exact nonarchimedean computer algebra: capped p-adic and perfectoid
//! coefficients, Tate algebras with Gauss norms, Weierstrass division and
//! preparation, Newton polygons, finite free algebras, and Witt vectors
//! with the `λ_t` norms.

pub mod coeff;
pub mod error;
pub mod exponent;
pub mod finite_alg;
pub mod harness;
pub mod io;
pub mod newton;
pub mod padic;
pub mod perf;
pub mod series;
pub mod weierstrass;
pub mod witt;

pub use coeff::Coeff;
pub use error::{Error, Result};
pub use exponent::{NormExponent, NormValue, QuadraticScale, Scale, Q};
pub use padic::{PadicElement, QpCtx};
pub use perf::{PerfCtx, PerfElement};
pub use series::{RestrictedSeries, SeriesCtx};
