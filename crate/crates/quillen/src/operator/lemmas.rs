use num::complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::estimate::{combine_shards, combine_shards_c, shard_ranges, CEstimate, McConfig};
use super::OpError;
use crate::geometry::{
    ball_volume, derive_seed, diastasis, fs_samples, CanonicalChart, ProjectivePoint,
};
use crate::polyalg::HermitianBihomPoly;

/// Two-sided Monte Carlo evaluation of the Schwarz-type integral
/// inequality: `lhs` is the restricted double integral of `q g g`, `rhs`
/// its bound `sqrt(sup_x int q²) sqrt(ball volume) int g²`, `rhs_weak` the
/// corollary form without the ball-volume factor.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct SchwarzCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub rhs_weak: f64,
    pub lhs_sem: f64,
    pub rhs_sem: f64,
    pub holds: bool,
}

/// Estimates both sides of the Schwarz lemma for nonnegative continuous
/// `q(x, y)` and `g(x)` with cutoff `R0` on `CP^n`. The supremum factor is
/// taken over a fixed panel of sampled centers, so `rhs` is a lower
/// estimate of the true bound; `holds` grants a 3-sigma slack.
pub fn verify_schwarz_bound<Q, G>(
    q: Q,
    g: G,
    r0: f64,
    n: usize,
    cfg: &McConfig,
) -> Result<SchwarzCheck, OpError>
where
    Q: Fn(&ProjectivePoint, &ProjectivePoint) -> f64 + Sync,
    G: Fn(&ProjectivePoint) -> f64 + Sync,
{
    cfg.validate()?;
    if r0 <= 0.0 {
        return Ok(SchwarzCheck {
            lhs: 0.0,
            rhs: 0.0,
            rhs_weak: 0.0,
            lhs_sem: 0.0,
            rhs_sem: 0.0,
            holds: true,
        });
    }
    let xs = fs_samples(n, cfg.samples, derive_seed(cfg.seed, "schwarz-x", 0));
    let ys = fs_samples(n, cfg.samples, derive_seed(cfg.seed, "schwarz-y", 0));

    let pair_means: Vec<(f64, f64)> = shard_ranges(cfg.samples, cfg.shards)
        .into_par_iter()
        .map(|range| {
            let len = range.len() as f64;
            let (mut lhs, mut g2) = (0.0, 0.0);
            for i in range {
                let x = &xs.points()[i];
                let y = &ys.points()[i];
                let gx = (g)(x);
                g2 += gx * gx;
                if diastasis(x, y) < r0 {
                    lhs += (q)(x, y) * gx * (g)(y);
                }
            }
            (lhs / len, g2 / len)
        })
        .collect();
    let lhs = combine_shards(&pair_means.iter().map(|p| p.0).collect::<Vec<_>>());
    let g2 = combine_shards(&pair_means.iter().map(|p| p.1).collect::<Vec<_>>());

    // sup over a panel of centers of int_{ball} q(x, y)^2 Omega(y).
    let centers = 32.min(xs.len());
    let sup_q = (0..centers)
        .into_par_iter()
        .map(|ci| {
            let x = &xs.points()[ci];
            let mut acc = 0.0;
            for y in ys.points() {
                if diastasis(x, y) < r0 {
                    let v = (q)(x, y);
                    acc += v * v;
                }
            }
            acc / ys.len() as f64
        })
        .reduce(|| 0.0, f64::max);

    let ball = ball_volume(r0, n);
    let rhs = sup_q.sqrt() * ball.sqrt() * g2.value;
    let rhs_weak = sup_q.sqrt() * g2.value;
    let rhs_sem = sup_q.sqrt() * ball.sqrt() * g2.std_err;
    let holds = lhs.value <= rhs + 3.0 * (lhs.std_err + rhs_sem) + 1e-12;
    Ok(SchwarzCheck {
        lhs: lhs.value,
        rhs,
        rhs_weak,
        lhs_sem: lhs.std_err,
        rhs_sem,
        holds,
    })
}

/// Residual of the rotational mean-value identity at a center `x`:
/// estimates `int_{B(x,R0)} h(delta) (f(z(y)) - f(0)) Omega(y)` in the
/// canonical chart of `x`. Zero for holomorphic `f` by the mean value
/// property; exactly zero (not just statistically) for constant `f`.
pub fn mean_value_check<H, F>(
    h: H,
    f: F,
    x: &ProjectivePoint,
    r0: f64,
    cfg: &McConfig,
) -> Result<CEstimate, OpError>
where
    H: Fn(f64) -> f64 + Sync,
    F: Fn(&[Complex64]) -> Complex64 + Sync,
{
    cfg.validate()?;
    let n = x.dim();
    let ys = fs_samples(n, cfg.samples, derive_seed(cfg.seed, "meanvalue", 0));
    let chart = CanonicalChart::new(x);
    let f0 = (f)(&vec![Complex64::new(0.0, 0.0); n]);
    let means: Vec<Complex64> = shard_ranges(cfg.samples, cfg.shards)
        .into_par_iter()
        .map(|range| {
            let len = range.len() as f64;
            let mut acc = Complex64::new(0.0, 0.0);
            for i in range {
                let y = &ys.points()[i];
                let delta = diastasis(x, y);
                if delta < r0 {
                    if let Some(z) = chart.coords(y) {
                        acc += (h)(delta) * ((f)(&z) - f0);
                    }
                }
            }
            acc / len
        })
        .collect();
    Ok(combine_shards_c(&means))
}

/// Sampled lower estimates of the two compactness constants for a
/// metric-positive `p`.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ConstantsReport {
    /// `sup |G - G^{-1}| / delta²` over sampled pairs, where
    /// `G = [|p(x, conj y)|² / (p(x, conj x) p(y, conj y))]^{1/2}`.
    pub c_p: f64,
    /// `sup G` over sampled pairs; 1 at coincident points by normalization.
    pub m_p: f64,
    pub pairs: usize,
    /// Pairs dropped from the `C_p` maximum: `delta < 1e-6` (0/0 noise) or
    /// vanishing polarization.
    pub excluded: usize,
    pub seed: u64,
}

pub fn local_constants(
    p: &HermitianBihomPoly<Complex64>,
    pairs: usize,
    seed: u64,
) -> Result<ConstantsReport, OpError> {
    if pairs == 0 {
        return Err(OpError::BadConfig("need at least one pair".into()));
    }
    let n = p.n();
    let xs = fs_samples(n, pairs, derive_seed(seed, "const-x", 0));
    let ys = fs_samples(n, pairs, derive_seed(seed, "const-y", 0));
    let shards = 8.min(pairs);
    let parts: Vec<Result<(f64, f64, usize), OpError>> = shard_ranges(pairs, shards)
        .into_par_iter()
        .map(|range| {
            let (mut c_p, mut m_p, mut excluded) = (0.0f64, 0.0f64, 0usize);
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
                let g = (p.evaluate_polarized(x.coords(), y.coords()).norm_sqr() / (px * py))
                    .sqrt();
                m_p = m_p.max(g);
                let delta = diastasis(x, y);
                if delta < 1e-6 || !delta.is_finite() || g == 0.0 {
                    excluded += 1;
                    continue;
                }
                c_p = c_p.max((g - g.recip()).abs() / (delta * delta));
            }
            Ok((c_p, m_p, excluded))
        })
        .collect();
    let mut c_p = 0.0f64;
    let mut m_p = 0.0f64;
    let mut excluded = 0usize;
    for part in parts {
        let (c, m, e) = part?;
        c_p = c_p.max(c);
        m_p = m_p.max(m);
        excluded += e;
    }
    Ok(ConstantsReport {
        c_p,
        m_p,
        pairs,
        excluded,
        seed,
    })
}
