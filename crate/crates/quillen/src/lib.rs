//! Constructive certificates for Quillen's positivstellensatz, plus numerical
//! verification of the integral-operator asymptotics that prove it.
//!
//! A Hermitian bihomogeneous polynomial `p` that is strictly positive on the
//! unit sphere of `C^{n+1}` becomes a sum of Hermitian squares after
//! multiplication by a high enough power of `r = |Z_0|^2 + ... + |Z_n|^2`.
//! This crate finds the smallest such power, emits the certificate (with an
//! exact-rational positive-definiteness proof), and checks the supporting
//! kernel integrals, lemmas and operator asymptotics on `CP^n` by quadrature
//! and seeded Monte Carlo.
//!
//! Start with the runnable examples (`cargo run --example certify`, etc.) or
//! the `quillen` binary, which exposes the same pipeline as subcommands.

pub mod certifier;
pub mod cli;
pub mod geometry;
pub mod operator;
pub mod polyalg;
pub mod presets;

pub use certifier::{Certificate, CoefficientMatrix, SearchReport};
pub use polyalg::{CRat, HermitianBihomPoly, HoloPoly, MultiIndex};
