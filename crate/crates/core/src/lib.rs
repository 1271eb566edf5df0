pub mod betti;
pub mod bijection;
pub mod combin;
pub mod error;
pub mod eulerian;
pub mod limits;
pub mod multistat;
pub mod perm;
pub mod poly;
pub mod realroot;
pub mod report;
pub mod table;

pub use error::{Error, Result};
pub use limits::EnumLimit;
pub use perm::{Permutation, StandardCycleForm};
pub use poly::{IntPoly, MultiPoly, TruncatedSeries};
pub use report::IdentityCheck;
