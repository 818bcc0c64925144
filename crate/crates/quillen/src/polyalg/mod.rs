//! Exact sparse algebra for Hermitian bihomogeneous and holomorphic
//! polynomials in `n + 1` complex variables.
//!
//! Coefficients are exact complex rationals ([`CRat`]) whenever the input is
//! rational (the JSON interchange format only carries rationals); floating
//! [`Complex64`](num::complex::Complex64) coefficients are used for the
//! numeric paths. All values are immutable after construction and every
//! operation is a pure function.

mod json;
mod multiindex;
mod poly;
mod scalar;

pub use json::{parse_poly_json, poly_to_json, PolyJsonError};
pub use multiindex::MultiIndex;
pub use poly::{sphere_min_estimate, HermitianBihomPoly, HoloPoly, PolyError};
pub use scalar::{CRat, Coeff};

/// Exact combinatorial helpers shared with the other modules.
pub mod scalar_support {
    pub use super::scalar::{binomial_int, factorial, multinomial, rat_to_f64};
}

/// Random-draw helpers shared with the geometry module.
pub(crate) mod sampling_support {
    pub(crate) use super::poly::random_unit_vector;
}

/// Fast monomial evaluation shared with the operator module.
pub(crate) mod eval_support {
    pub(crate) use super::poly::monomial_value;
}
