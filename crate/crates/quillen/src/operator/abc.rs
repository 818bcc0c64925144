use num::complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::estimate::{combine_shards, shard_ranges, McConfig, SampleMeta};
use super::lemmas::local_constants;
use super::OpError;
use crate::geometry::{
    ball_volume, derive_seed, diastasis, fs_samples, kernel_power_exact, off_diagonal_integral,
};
use crate::polyalg::scalar_support::{factorial, rat_to_f64};
use crate::polyalg::{HermitianBihomPoly, HoloPoly};

/// The standard cutoff radius `R(m) = log m / sqrt(m)`.
pub fn default_r(m: u32) -> f64 {
    assert!(m >= 2, "default cutoff needs m >= 2 so that log m > 0");
    (m as f64).ln() / (m as f64).sqrt()
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ErrorBars {
    pub k_value: f64,
    pub norm_sq: f64,
    pub ratio: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

/// One run of the near/off-diagonal decomposition `K(s,s) = A + B + C` at
/// cutoff `R`, with the normalized ratio and the two analytic bounds
/// evaluated from sampled constants.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OperatorReport {
    pub m: u32,
    pub k_value: f64,
    pub norm_sq: f64,
    /// `K(s,s) mⁿ / (n! ‖s‖²)`.
    pub ratio: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub r_used: f64,
    pub error_bars: ErrorBars,
    /// Sampled `C_p R² sqrt(kernel integral) sqrt(ball volume) ‖s‖²`.
    pub b_bound: f64,
    /// Sampled `M_p sqrt(off-diagonal integral) ‖s‖²`.
    pub c_bound: f64,
    pub c_p: f64,
    pub m_p: f64,
    pub sample_meta: SampleMeta,
}

/// Estimates the §2 split of `K(s,s)` by paired sampling: each `(x_i, y_i)`
/// pair is an unbiased draw for the double integral, and the three
/// integrands satisfy `A_i + B_i + C_i = K_i` pointwise, so the
/// decomposition identity is exact on every run. On the near-diagonal
/// region the A/B integrands use the rearrangement through
/// `(r^m p)(y, conj x)`.
pub fn abc_decomposition(
    s: &HoloPoly<Complex64>,
    p: &HermitianBihomPoly<Complex64>,
    m: u32,
    r: Option<f64>,
    cfg: &McConfig,
) -> Result<OperatorReport, OpError> {
    cfg.validate()?;
    let r_used = match r {
        Some(v) => {
            if !(v > 0.0) {
                return Err(OpError::BadConfig(format!("cutoff R must be positive, got {v}")));
            }
            v
        }
        None => default_r(m),
    };
    let n = p.n();
    let expected = m + p.bidegree();
    if s.degree() != expected {
        return Err(OpError::DegreeMismatch {
            got: s.degree(),
            expected,
        });
    }
    let xs = fs_samples(n, cfg.samples, derive_seed(cfg.seed, "abc-x", m as u64));
    let ys = fs_samples(n, cfg.samples, derive_seed(cfg.seed, "abc-y", m as u64));

    struct ShardOut {
        a: f64,
        b: f64,
        c: f64,
        k: f64,
        norm: f64,
    }
    let shards: Vec<Result<ShardOut, OpError>> = shard_ranges(cfg.samples, cfg.shards)
        .into_par_iter()
        .map(|range| {
            let len = range.len() as f64;
            let (mut a, mut b, mut c, mut k, mut norm) = (0.0, 0.0, 0.0, 0.0, 0.0);
            for i in range {
                let x = &xs.points()[i];
                let y = &ys.points()[i];
                let px = p.evaluate(x.coords());
                if px <= 0.0 {
                    return Err(OpError::NonpositiveDenominator { index: i, value: px });
                }
                let py = p.evaluate(y.coords());
                if py <= 0.0 {
                    return Err(OpError::NonpositiveDenominator { index: i, value: py });
                }
                let sx = s.evaluate(x.coords());
                let sy = s.evaluate(y.coords());
                norm += sx.norm_sqr() / px;

                // Raw Eq.-(2) integrand; on unit representatives
                // (r^m p)(x, conj y) = <x, y>^m p(x, conj y).
                let pair_xy = x.pairing(y);
                let p_xy = p.evaluate_polarized(x.coords(), y.coords());
                let f = pair_xy.powu(m) * p_xy * sx.conj() * sy / (px * py);
                k += f.re;

                let delta = diastasis(x, y);
                if delta < r_used {
                    // Near-diagonal rearrangement: kernel^m G² / (r^m p)(y, conj x)
                    // recombines to the raw integrand pointwise.
                    let kernel_m = pair_xy.norm_sqr().powi(m as i32);
                    let den_a = pair_xy.conj().powu(m)
                        * p.evaluate_polarized(y.coords(), x.coords());
                    let a_i = kernel_m * sx.conj() * sy / den_a;
                    let g2 = p_xy.norm_sqr() / (px * py);
                    a += a_i.re;
                    b += (a_i * (g2 - 1.0)).re;
                } else {
                    c += f.re;
                }
            }
            Ok(ShardOut {
                a: a / len,
                b: b / len,
                c: c / len,
                k: k / len,
                norm: norm / len,
            })
        })
        .collect();
    let shards = shards.into_iter().collect::<Result<Vec<_>, _>>()?;
    let a = combine_shards(&shards.iter().map(|s| s.a).collect::<Vec<_>>());
    let b = combine_shards(&shards.iter().map(|s| s.b).collect::<Vec<_>>());
    let c = combine_shards(&shards.iter().map(|s| s.c).collect::<Vec<_>>());
    let k = combine_shards(&shards.iter().map(|s| s.k).collect::<Vec<_>>());
    let norm = combine_shards(&shards.iter().map(|s| s.norm).collect::<Vec<_>>());

    let scale = (m as f64).powi(n as i32) / rat_to_f64(&factorial(n as u32));
    let ratio = k.value * scale / norm.value;
    let ratio_sem = ratio.abs()
        * ((k.std_err / k.value.abs().max(1e-300)).powi(2)
            + (norm.std_err / norm.value.abs().max(1e-300)).powi(2))
        .sqrt();

    // Sampled constants for the analytic B and C bounds.
    let const_pairs = (cfg.samples / 10).max(1000);
    let consts = local_constants(p, const_pairs, derive_seed(cfg.seed, "abc-const", m as u64))?;
    let kernel_int = rat_to_f64(&kernel_power_exact(m, n));
    let off_int = if r_used.is_infinite() {
        0.0
    } else {
        off_diagonal_integral(m, n, r_used)
            .map_err(|e| OpError::Numeric(format!("off-diagonal quadrature: {e}")))?
    };
    let b_bound =
        consts.c_p * r_used * r_used * kernel_int.sqrt() * ball_volume(r_used, n).sqrt() * norm.value;
    let c_bound = consts.m_p * off_int.sqrt() * norm.value;

    Ok(OperatorReport {
        m,
        k_value: k.value,
        norm_sq: norm.value,
        ratio,
        a: a.value,
        b: b.value,
        c: c.value,
        r_used,
        error_bars: ErrorBars {
            k_value: k.std_err,
            norm_sq: norm.std_err,
            ratio: ratio_sem,
            a: a.std_err,
            b: b.std_err,
            c: c.std_err,
        },
        b_bound,
        c_bound,
        c_p: consts.c_p,
        m_p: consts.m_p,
        sample_meta: cfg.meta(),
    })
}
