//! The two integral lemmas behind the operator estimates, checked by
//! seeded Monte Carlo.
//!
//! Schwarz-type inequality: the near-diagonal double integral of
//! `q(x,y) g(x) g(y)` is at most
//! `sqrt(sup_x int_ball q^2) * sqrt(ball volume) * int g^2`.
//! Mean-value identity: for a rotation-invariant weight `h(delta)` and a
//! holomorphic `f` in the canonical chart at `x`, the weighted average of
//! `f - f(x)` over a diastasis ball vanishes.

use num::complex::Complex64;
use quillen::geometry::fs_samples;
use quillen::operator::{mean_value_check, verify_schwarz_bound, McConfig};

fn main() {
    let cfg = McConfig {
        seed: 42,
        samples: 20_000,
        shards: 10,
    };

    // q = kernel^2, g = 1 + |x_1|^2, n = 1, R0 = 0.8.
    let check = verify_schwarz_bound(
        |x, y| x.pairing(y).norm_sqr().powi(2),
        |x| 1.0 + x.coords()[1].norm_sqr(),
        0.8,
        1,
        &cfg,
    )
    .expect("estimator runs");
    println!(
        "Schwarz: lhs = {:.6e} <= rhs = {:.6e} (weak rhs = {:.6e}) -> holds = {}",
        check.lhs, check.rhs, check.rhs_weak, check.holds
    );

    // Equality case: q = 1, g = 1, R0 = infinity gives exactly 1 <= 1.
    let eq = verify_schwarz_bound(|_, _| 1.0, |_| 1.0, f64::INFINITY, 1, &cfg)
        .expect("estimator runs");
    println!("Schwarz equality case: lhs = {} = rhs = {}", eq.lhs, eq.rhs);

    // Mean value at a random center with a cubic holomorphic profile.
    let x = fs_samples(1, 1, 7).points()[0].clone();
    let est = mean_value_check(
        |d| (1.0 + d * d).powi(-4),
        |z| Complex64::new(0.3, -1.1) * z[0] + z[0] * z[0] * z[0],
        &x,
        1.2,
        &cfg,
    )
    .expect("estimator runs");
    println!(
        "mean value residual: |{:.3e}| <= 3 sigma = {:.3e}",
        est.value.norm(),
        3.0 * est.std_err
    );
    assert!(est.value.norm() <= 3.0 * est.std_err);
}
