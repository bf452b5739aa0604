//! Exact coefficient extraction on truncated formal Laurent series, with a
//! registry of combinatorial identities verified by exact arithmetic.

pub mod combinum;
pub mod expr;
pub mod identities;
pub mod mseries;
pub mod numeric;
pub mod oracle;
pub mod series;

pub use numeric::{ParamBinding, Q};
pub use series::LaurentSeries;
