//! The `p`-dependent inner product, the sesquilinear form `K_{r^m p}`, the
//! near/off-diagonal decomposition of `K(s, s)`, and Monte Carlo checks of
//! the supporting integral lemmas.
//!
//! All estimators are deterministic given `(seed, samples, shards)`: the
//! sample stream is split into index ranges, each shard accumulates
//! sequentially, and shard results are combined in index order. The spread
//! of shard means provides the standard errors.

mod abc;
mod estimate;
mod inner;
mod kform;
mod lemmas;

use thiserror::Error;

pub use abc::{abc_decomposition, default_r, ErrorBars, OperatorReport};
pub use estimate::{CEstimate, Estimate, McConfig, SampleMeta};
pub use inner::{diagonalize_in_gram_basis, gram, inner_product, GramMatrix};
pub use kform::{asymptotic_ratio, k_form, norm_sq};
pub use lemmas::{
    local_constants, mean_value_check, verify_schwarz_bound, ConstantsReport, SchwarzCheck,
};

#[derive(Debug, Error)]
pub enum OpError {
    #[error("p is not positive at sample point {index}: p(z, conj z) = {value}")]
    NonpositiveDenominator { index: usize, value: f64 },
    #[error("section degree {got} does not match m + d = {expected}")]
    DegreeMismatch { got: u32, expected: u32 },
    #[error("ambient dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("invalid Monte Carlo configuration: {0}")]
    BadConfig(String),
    #[error("numeric failure: {0}")]
    Numeric(String),
}
