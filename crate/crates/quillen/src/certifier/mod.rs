//! Assembles the Hermitian coefficient matrix of `r^m p`, decides positive
//! definiteness exactly, extracts and verifies sum-of-squares certificates,
//! and searches for the minimal multiplier power.

mod certificate;
mod eigen;
mod ldlt;
mod matrix;
mod search;

use thiserror::Error;

pub use certificate::{
    extract_certificate, extract_certificate_with, verify_certificate, verify_certificate_float,
    Certificate, ExactSos,
};
pub use eigen::{eigendecompose, hermitian_eigen, EigenDecomposition};
pub use ldlt::{is_positive_definite_exact, is_positive_semidefinite_exact, ldlt_pivoted, ExactLdlt, LdltOutcome};
pub use matrix::{assemble_matrix, CoefficientMatrix};
pub use search::{minimal_m_search, minimal_m_search_with, poly_id, SearchOptions, SearchReport};

/// Matrices larger than this are refused unless explicitly overridden; the
/// dense eigendecomposition cost grows cubically.
pub const DIMENSION_GUARD: usize = 2000;

#[derive(Debug, Error)]
pub enum CertError {
    #[error("matrix of r^{m} p is not positive definite (minimum eigenvalue {min_eigenvalue})")]
    NotPositiveDefinite { m: u32, min_eigenvalue: f64 },
    #[error("certificate residual {residual} exceeds tolerance {tol}")]
    ResidualTooLarge { residual: f64, tol: f64 },
    #[error("eigendecomposition failed: {0}")]
    Numeric(String),
    #[error("matrix dimension {dim} exceeds the guard {guard}; rerun with the large-dimension override")]
    DimensionGuard { dim: usize, guard: usize },
    #[error("invalid tolerance {0}; must lie in (0, 1)")]
    BadTolerance(f64),
}
