//! Deterministic Fubini-Study sampling, the diastasis, and the Gram-basis
//! spectral picture.
//!
//! The same (seed, count) always reproduces the same sample set byte for
//! byte. On top of those samples we build the Gram matrix of the monomial
//! basis under the weighted inner product and diagonalize the coefficient
//! matrix in the induced orthonormal basis: the resulting eigensections
//! satisfy K(f_eta, f_eta) ~ lambda_eta.

use quillen::geometry::{diastasis, fs_samples};
use quillen::operator::{diagonalize_in_gram_basis, gram, k_form};
use quillen::presets::p_eps_int;

fn main() {
    // Determinism of the sample stream.
    let a = fs_samples(2, 1000, 13);
    let b = fs_samples(2, 1000, 13);
    assert_eq!(a.to_json(), b.to_json());
    println!("sample stream for (n = 2, count = 1000, seed = 13) is reproducible");

    // Diastasis basics on the first few points.
    let pts = a.points();
    println!(
        "diastasis(x0, x1) = {:.6}, diastasis(x0, x0) = {:.1}",
        diastasis(&pts[0], &pts[1]),
        diastasis(&pts[0], &pts[0])
    );

    // Gram-basis diagonalization for p_eps(1) at m = 4.
    let p = p_eps_int(1).to_float();
    let gram_samples = fs_samples(1, 40_000, 900);
    let g = gram(&p, 4, &gram_samples, 10).expect("gram estimation runs");
    let (vals, sections) = diagonalize_in_gram_basis(&p, &g).expect("diagonalization runs");
    let xs = fs_samples(1, 40_000, 977);
    let ys = fs_samples(1, 40_000, 978);
    println!("eigenvalues in the orthonormalized section basis:");
    for (lambda, f) in vals.iter().zip(&sections) {
        let k = k_form(f, f, &p, 4, &xs, &ys, 10).expect("estimator runs");
        println!(
            "  lambda = {lambda:>9.5}   K(f,f) = {:>9.5} +- {:.1e}",
            k.value.re, k.std_err
        );
    }
}
