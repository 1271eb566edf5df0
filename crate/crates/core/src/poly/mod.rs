//! Exact polynomial and truncated power-series arithmetic.

mod int_poly;
mod multi_poly;
mod ring;
mod series;

pub use int_poly::IntPoly;
pub use multi_poly::{Exponents, MultiPoly, MultiTerm, Var};
pub use ring::Ring;
pub use series::TruncatedSeries;
