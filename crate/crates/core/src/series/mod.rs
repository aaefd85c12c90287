//! Univariate calculus over exact rationals: dense polynomials, truncated
//! Laurent series and rational functions with partial fractions.

mod local;
mod poly;
mod ratfn;

pub use local::{Center, LocalSeries};
pub use poly::Poly;
pub use ratfn::{PartialFractions, RationalFn};
