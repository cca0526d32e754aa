//! Exact search, verification and construction of integer multisets whose
//! cube sum equals the square of their sum.

pub mod catalog;
pub mod enumerate;
pub mod error;
pub mod extend;
pub mod families;
pub mod liouville;
pub mod multiset;
pub mod pell;

pub use error::{Error, Result};
pub use multiset::{CsSet, Multiset, PowerSums};
