//! Closed forms vs quadrature for the kernel integrals on CP^n.
//!
//! The m-th power of the normalized kernel integrates to `n! m! / (m+n)!`;
//! its off-diagonal tail beyond radius R decays like `(1 + R^2)^{-m}`; the
//! volume of a diastasis ball of radius R is `(R^2 / (1 + R^2))^n <= R^{2n}`.

use quillen::geometry::{ball_volume, kernel_power_integral, off_diagonal_integral};
use quillen::polyalg::scalar_support::rat_to_f64;

fn main() {
    println!("kernel integral  (exact = n! m! / (m+n)!):");
    for n in [1usize, 2] {
        for m in [0u32, 1, 5, 10, 25] {
            let (exact, quad) = kernel_power_integral(m, n);
            println!(
                "  n = {n}, m = {m:>2}: exact = {exact}, quadrature = {quad:.12e}, rel err = {:.2e}",
                (quad - rat_to_f64(&exact)).abs() / rat_to_f64(&exact)
            );
        }
    }

    println!("\noff-diagonal tail vs (1 + R^2)^(-m), n = 1:");
    for m in [5u32, 10, 20] {
        for r in [0.5f64, 1.0] {
            let tail = off_diagonal_integral(m, 1, r).expect("quadrature converges");
            let bound = (1.0 + r * r).powi(-(m as i32));
            println!("  m = {m:>2}, R = {r}: tail = {tail:.6e} <= bound = {bound:.6e}");
        }
    }

    println!("\nball volume vs R^(2n):");
    for n in [1usize, 2, 3] {
        for r in [0.5f64, 1.0, 2.0] {
            println!(
                "  n = {n}, R = {r}: volume = {:.6e} <= {:.6e}",
                ball_volume(r, n),
                r.powi(2 * n as i32)
            );
        }
    }
}
