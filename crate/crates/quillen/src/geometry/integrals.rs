use num::rational::BigRational;

use super::quadrature::{polar_integrate, polar_integrate_u, QuadratureError};

/// `int_{CP^n} [ |r(x,y)|^2 / (r(x,x) r(y,y)) ]^m Omega(y)`, which is
/// independent of `x`. Returns the closed form `n! m! / (m+n)!` together
/// with an independent quadrature evaluation of
/// `2n int_0^inf r^{2n-1} (1+r^2)^{-(m+n+1)} dr`.
pub fn kernel_power_integral(m: u32, n: usize) -> (BigRational, f64) {
    let exact = kernel_power_exact(m, n);
    let power = -((m as i32) + (n as i32) + 1);
    let quad = polar_integrate(move |r| (1.0 + r * r).powi(power), n, f64::INFINITY)
        .expect("kernel integrand is smooth and integrable");
    (exact, quad)
}

/// Closed form `n! m! / (m+n)!`.
pub fn kernel_power_exact(m: u32, n: usize) -> BigRational {
    use crate::polyalg::scalar_support::factorial;
    factorial(n as u32) * factorial(m) / factorial(m + n as u32)
}

/// `int_{diastasis(x,y) >= R} kernel^m Omega`, x-independent. Satisfies the
/// exact intermediate bound `value <= (1 + R^2)^{-m}`.
pub fn off_diagonal_integral(m: u32, n: usize, r_cut: f64) -> Result<f64, QuadratureError> {
    assert!(r_cut > 0.0, "off-diagonal cut must be positive");
    let u_lo = r_cut * r_cut / (1.0 + r_cut * r_cut);
    let power = -((m as i32) + (n as i32) + 1);
    polar_integrate_u(move |r| (1.0 + r * r).powi(power), n, u_lo, 1.0)
}

/// Omega-measure of the diastasis ball `{y : diastasis(x, y) < R}`,
/// x-independent: `(R^2 / (1 + R^2))^n`. Bounded by `R^{2n}` and tending to
/// 1 as `R -> infinity`.
pub fn ball_volume(r_cut: f64, n: usize) -> f64 {
    assert!(r_cut > 0.0);
    if r_cut.is_infinite() {
        return 1.0;
    }
    let r2 = r_cut * r_cut;
    (r2 / (1.0 + r2)).powi(n as i32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::scalar_support::rat_to_f64;

    #[test]
    fn kernel_integral_reference_values() {
        // m = 0 gives the total mass 1; m = 1, n = 1 gives 1/2.
        let (e, q) = kernel_power_integral(0, 2);
        assert_eq!(rat_to_f64(&e), 1.0);
        assert!((q - 1.0).abs() < 1e-8);
        let (e, q) = kernel_power_integral(1, 1);
        assert_eq!(rat_to_f64(&e), 0.5);
        assert!((q - 0.5).abs() < 1e-8);
        // m = 10, n = 2: 2! 10! / 12! = 1/66.
        let (e, _) = kernel_power_integral(10, 2);
        assert!((rat_to_f64(&e) - 1.0 / 66.0).abs() < 1e-15);
    }

    #[test]
    fn off_diagonal_limits_and_bound() {
        // R -> 0 recovers the full integral.
        let full = rat_to_f64(&kernel_power_exact(3, 1));
        let v = off_diagonal_integral(3, 1, 1e-8).unwrap();
        assert!((v - full).abs() < 1e-8);
        // m = 0, n = 1, R = 1: complement of the half-volume ball.
        let v = off_diagonal_integral(0, 1, 1.0).unwrap();
        assert!((v - 0.5).abs() < 1e-8);
        // Exponential bound at m = 20.
        let v = off_diagonal_integral(20, 1, 1.0).unwrap();
        assert!(v <= 2f64.powi(-20) + 1e-12);
    }

    #[test]
    fn ball_volume_forms() {
        assert!((ball_volume(1.0, 1) - 0.5).abs() < 1e-15);
        assert_eq!(ball_volume(f64::INFINITY, 3), 1.0);
        for r in [0.1, 0.5, 2.0] {
            for n in 1..=3 {
                assert!(ball_volume(r, n) <= r.powi(2 * n as i32) + 1e-15);
            }
        }
        // Against radial quadrature of 2r/(1+r^2)^2 on [0, R].
        let q = polar_integrate(|r| (1.0 + r * r).powi(-2), 1, 1.0).unwrap();
        assert!((q - ball_volume(1.0, 1)).abs() < 1e-10);
    }

    #[test]
    fn ball_plus_offdiagonal_is_total() {
        for (m, n, r) in [(4u32, 1usize, 0.7), (9, 2, 1.3)] {
            let off = off_diagonal_integral(m, n, r).unwrap();
            let power = -((m as i32) + (n as i32) + 1);
            let near = polar_integrate(move |x| (1.0 + x * x).powi(power), n, r).unwrap();
            let total = rat_to_f64(&kernel_power_exact(m, n));
            assert!((off + near - total).abs() < 1e-9);
        }
    }
}
