//! Projective points, the diastasis metric, canonical coordinates,
//! Fubini-Study sampling, and the kernel integrals in closed form and by
//! quadrature.

mod chart;
mod integrals;
mod point;
mod quadrature;
mod samples;

pub use chart::CanonicalChart;
pub use integrals::{ball_volume, kernel_power_exact, kernel_power_integral, off_diagonal_integral};
pub use point::{diastasis, ProjectivePoint};
pub use quadrature::{integrate_adaptive, polar_integrate, QuadratureError};
pub use samples::{derive_seed, fs_samples, FsSampleSet};
