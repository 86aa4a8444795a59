//! Small dense linear algebra: the matrices here are at most a few hundred wide.

mod dense;
mod exact;
mod lu;
mod svd;

pub use dense::Matrix;
pub use exact::{nullity_fraction_free, rank_fraction_free};
pub use lu::{Lu, LuError};
pub use svd::{complex_singular_values, singular_values, svd, Svd};
