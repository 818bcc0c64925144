use thiserror::Error;

#[derive(Debug, Error)]
pub enum QuadratureError {
    #[error("quadrature failed to converge (estimate {estimate}, error {error}) after {intervals} subdivisions")]
    NoConvergence {
        estimate: f64,
        error: f64,
        intervals: usize,
    },
    #[error("integrand produced a non-finite value near {at}")]
    NonFinite { at: f64 },
}

// Gauss-Kronrod 15-point rule (QUADPACK dqk15 constants).
const XGK: [f64; 8] = [
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
];
const WG: [f64; 4] = [
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
];

fn gk15(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> Result<(f64, f64), QuadratureError> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut kronrod = 0.0;
    let mut gauss = 0.0;
    for j in 0..8 {
        let dx = h * XGK[j];
        let (x1, x2) = (c - dx, c + dx);
        let f1 = f(x1);
        let f2 = f(x2);
        if !f1.is_finite() {
            return Err(QuadratureError::NonFinite { at: x1 });
        }
        if !f2.is_finite() {
            return Err(QuadratureError::NonFinite { at: x2 });
        }
        let sum = if j == 7 { f1 } else { f1 + f2 };
        kronrod += WGK[j] * sum;
        if j % 2 == 1 {
            gauss += WG[j / 2] * sum;
        }
    }
    kronrod *= h;
    gauss *= h;
    Ok((kronrod, (kronrod - gauss).abs()))
}

/// Adaptive Gauss-Kronrod integration of `f` over `[a, b]` to the given
/// relative tolerance.
pub fn integrate_adaptive(
    f: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    rel_tol: f64,
) -> Result<f64, QuadratureError> {
    const MAX_INTERVALS: usize = 4000;
    if a == b {
        return Ok(0.0);
    }
    // Worklist of (lo, hi, estimate, error), refined greedily.
    let first = gk15(&f, a, b)?;
    let mut segs: Vec<(f64, f64, f64, f64)> = vec![(a, b, first.0, first.1)];
    loop {
        let total: f64 = segs.iter().map(|s| s.2).sum();
        let err: f64 = segs.iter().map(|s| s.3).sum();
        let scale = total.abs().max(1e-300);
        if err <= rel_tol * scale || err < 1e-300 {
            return Ok(total);
        }
        if segs.len() >= MAX_INTERVALS {
            return Err(QuadratureError::NoConvergence {
                estimate: total,
                error: err,
                intervals: segs.len(),
            });
        }
        let worst = segs
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .map(|(i, _)| i)
            .unwrap();
        let (lo, hi, _, _) = segs.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return Err(QuadratureError::NoConvergence {
                estimate: total,
                error: err,
                intervals: segs.len(),
            });
        }
        let left = gk15(&f, lo, mid)?;
        let right = gk15(&f, mid, hi)?;
        segs.push((lo, mid, left.0, left.1));
        segs.push((mid, hi, right.0, right.1));
    }
}

/// Radial integral `2n * int_0^{r_max} r^{2n-1} g(r) dr` (the polar form of
/// an integral over `C^n` against `n! dV / pi^n`), to relative tolerance
/// `1e-10`. `r_max` may be `f64::INFINITY`.
///
/// Internally substitutes `u = r^2 / (1 + r^2)`, which compactifies the
/// half-line and flattens the kernel-type integrands that concentrate near 0
/// for large powers.
pub fn polar_integrate(
    g: impl Fn(f64) -> f64,
    n: usize,
    r_max: f64,
) -> Result<f64, QuadratureError> {
    let u_max = if r_max.is_infinite() {
        1.0
    } else {
        let r2 = r_max * r_max;
        r2 / (1.0 + r2)
    };
    polar_integrate_u(g, n, 0.0, u_max)
}

/// Same substitution restricted to `u in [u_lo, u_hi]`; used for annulus
/// integrals `r in [R, infinity)`.
pub(crate) fn polar_integrate_u(
    g: impl Fn(f64) -> f64,
    n: usize,
    u_lo: f64,
    u_hi: f64,
) -> Result<f64, QuadratureError> {
    let nf = n as f64;
    let f = move |u: f64| {
        let om = 1.0 - u;
        let r = (u / om).sqrt();
        nf * u.powi(n as i32 - 1) * om.powi(-(n as i32) - 1) * g(r)
    };
    integrate_adaptive(f, u_lo, u_hi, 1e-10)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_segment() {
        // 2 * int_0^1 r * r dr = 2/3 for n = 1, g(r) = r.
        let v = polar_integrate(|r| r, 1, 1.0).unwrap();
        assert!((v - 2.0 / 3.0).abs() < 1e-10);
    }

    #[test]
    fn zero_integrand() {
        assert_eq!(polar_integrate(|_| 0.0, 2, f64::INFINITY).unwrap(), 0.0);
    }

    #[test]
    fn kernel_integrand_closed_form() {
        // n = 1, m = 1: 2 int_0^inf r^1 ... gives n! m! / (m+n)! = 1/2.
        let v = polar_integrate(|r| (1.0 + r * r).powi(-3), 1, f64::INFINITY).unwrap();
        assert!((v - 0.5).abs() < 1e-10);
    }

    #[test]
    fn gaussian_against_reference() {
        // 2n int r^{2n-1} e^{-r^2} dr = n! (Gamma integral), n = 3.
        let v = polar_integrate(|r| (-r * r).exp(), 3, f64::INFINITY).unwrap();
        assert!((v - 6.0).abs() < 1e-9 * 6.0);
    }

    #[test]
    fn divergent_integrand_errors() {
        let res = polar_integrate(|_| 1.0, 1, f64::INFINITY);
        assert!(res.is_err());
    }
}
