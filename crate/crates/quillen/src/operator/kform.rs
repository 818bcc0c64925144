use std::collections::BTreeMap;
use std::ops::Range;

use num::complex::Complex64;
use rayon::prelude::*;

use super::estimate::{combine_shards, combine_shards_c, shard_ranges, CEstimate, Estimate, McConfig};
use super::OpError;
use crate::geometry::{derive_seed, fs_samples, FsSampleSet};
use crate::polyalg::eval_support::monomial_value;
use crate::polyalg::scalar_support::rat_to_f64;
use crate::polyalg::{HermitianBihomPoly, HoloPoly, MultiIndex};

/// Shared setup for the factorized estimator of the sesquilinear form: the
/// double integral of Eq.-(2) type factorizes through the coefficient
/// expansion of `r^m p`,
/// `K(s1,s2) = sum_{gd} c_{gd} E_x[x^g conj(s2)/p] E_y[conj(y^d) s1/p]`,
/// which evaluates the full product grid of the two sample sets in linear
/// time.
struct KCtx<'a> {
    s1: &'a HoloPoly<Complex64>,
    s2: &'a HoloPoly<Complex64>,
    p: &'a HermitianBihomPoly<Complex64>,
    basis: Vec<MultiIndex>,
    /// `(row, col, coeff)` of the coefficient matrix of `r^m p`.
    terms: Vec<(usize, usize, Complex64)>,
}

impl<'a> KCtx<'a> {
    fn new(
        s1: &'a HoloPoly<Complex64>,
        s2: &'a HoloPoly<Complex64>,
        p: &'a HermitianBihomPoly<Complex64>,
        m: u32,
    ) -> Result<Self, OpError> {
        let expected = m + p.bidegree();
        for s in [s1, s2] {
            if s.degree() != expected {
                return Err(OpError::DegreeMismatch {
                    got: s.degree(),
                    expected,
                });
            }
            if s.n() != p.n() {
                return Err(OpError::DimensionMismatch(s.n(), p.n()));
            }
        }
        let q = p.r_power_times(m);
        let basis = MultiIndex::all_of_degree(p.n() + 1, expected);
        let pos: BTreeMap<&MultiIndex, usize> =
            basis.iter().enumerate().map(|(i, idx)| (idx, i)).collect();
        let terms = q
            .terms()
            .map(|((a, b), c)| (pos[a], pos[b], *c))
            .collect();
        Ok(KCtx {
            s1,
            s2,
            p,
            basis,
            terms,
        })
    }

    /// `K` on the product of one x-range and one y-range.
    fn estimate(
        &self,
        xs: &FsSampleSet,
        ys: &FsSampleSet,
        rx: Range<usize>,
        ry: Range<usize>,
    ) -> Result<Complex64, OpError> {
        let dim = self.basis.len();
        let mut a = vec![Complex64::new(0.0, 0.0); dim];
        let mut b = vec![Complex64::new(0.0, 0.0); dim];
        let nx = rx.len() as f64;
        let ny = ry.len() as f64;
        for i in rx {
            let z = xs.points()[i].coords();
            let den = self.p.evaluate(z);
            if den <= 0.0 {
                return Err(OpError::NonpositiveDenominator { index: i, value: den });
            }
            let w = self.s2.evaluate(z).conj() / den;
            for (k, idx) in self.basis.iter().enumerate() {
                a[k] += monomial_value(idx, z) * w;
            }
        }
        for i in ry {
            let z = ys.points()[i].coords();
            let den = self.p.evaluate(z);
            if den <= 0.0 {
                return Err(OpError::NonpositiveDenominator { index: i, value: den });
            }
            let w = self.s1.evaluate(z) / den;
            for (k, idx) in self.basis.iter().enumerate() {
                b[k] += monomial_value(idx, z).conj() * w;
            }
        }
        let mut k = Complex64::new(0.0, 0.0);
        for (row, col, c) in &self.terms {
            k += c * (a[*row] / nx) * (b[*col] / ny);
        }
        Ok(k)
    }
}

/// Double Monte Carlo estimate of the sesquilinear form
/// `K(s1, s2) = int int (r^m p)(x, conj y) conj(s2(x)) s1(y) /
/// ((r^m p)(x, conj x)(r^m p)(y, conj y)) Omega(y) Omega(x)` over the full
/// product of the two sample sets. Shard pairs provide the error bar.
/// Swapping both the sections and the sample sets conjugates the value
/// exactly.
pub fn k_form(
    s1: &HoloPoly<Complex64>,
    s2: &HoloPoly<Complex64>,
    p: &HermitianBihomPoly<Complex64>,
    m: u32,
    samples_x: &FsSampleSet,
    samples_y: &FsSampleSet,
    shards: usize,
) -> Result<CEstimate, OpError> {
    if samples_x.n() != p.n() || samples_y.n() != p.n() {
        return Err(OpError::DimensionMismatch(samples_x.n(), p.n()));
    }
    if shards < 2 || samples_x.len() < shards || samples_y.len() < shards {
        return Err(OpError::BadConfig(
            "need at least 2 shards and one sample per shard on each axis".into(),
        ));
    }
    let ctx = KCtx::new(s1, s2, p, m)?;
    let rxs = shard_ranges(samples_x.len(), shards);
    let rys = shard_ranges(samples_y.len(), shards);
    let vals: Vec<Result<Complex64, OpError>> = rxs
        .into_par_iter()
        .zip(rys)
        .map(|(rx, ry)| ctx.estimate(samples_x, samples_y, rx, ry))
        .collect();
    let vals = vals.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(combine_shards_c(&vals))
}

/// `‖s‖² = int |s|² / (r^m p) Omega`, real by construction.
pub fn norm_sq(
    s: &HoloPoly<Complex64>,
    p: &HermitianBihomPoly<Complex64>,
    m: u32,
    samples: &FsSampleSet,
    shards: usize,
) -> Result<Estimate, OpError> {
    let e = super::inner::inner_product(s, s, p, m, samples, shards)?;
    Ok(Estimate {
        value: e.value.re,
        std_err: e.std_err,
    })
}

/// The Theorem's normalized quantity `K(s,s) mⁿ / (n! ‖s‖²)`, which tends
/// to 1 as `m` grows. Computed per shard (so the error bar reflects the
/// ratio, not its parts) on two independent derived sample streams.
pub fn asymptotic_ratio(
    s: &HoloPoly<Complex64>,
    p: &HermitianBihomPoly<Complex64>,
    m: u32,
    cfg: &McConfig,
) -> Result<Estimate, OpError> {
    cfg.validate()?;
    let n = p.n();
    let xs = fs_samples(n, cfg.samples, derive_seed(cfg.seed, "ratio-x", m as u64));
    let ys = fs_samples(n, cfg.samples, derive_seed(cfg.seed, "ratio-y", m as u64));
    let ctx = KCtx::new(s, s, p, m)?;
    let scale = (m as f64).powi(n as i32)
        / rat_to_f64(&crate::polyalg::scalar_support::factorial(n as u32));
    let rxs = shard_ranges(cfg.samples, cfg.shards);
    let rys = shard_ranges(cfg.samples, cfg.shards);
    let ratios: Vec<Result<f64, OpError>> = rxs
        .into_par_iter()
        .zip(rys)
        .map(|(rx, ry)| {
            let mut norm = 0.0;
            for i in rx.clone() {
                let z = xs.points()[i].coords();
                let den = ctx.p.evaluate(z);
                if den <= 0.0 {
                    return Err(OpError::NonpositiveDenominator { index: i, value: den });
                }
                norm += s.evaluate(z).norm_sqr() / den;
            }
            norm /= rx.len() as f64;
            let k = ctx.estimate(&xs, &ys, rx, ry)?;
            Ok(k.re * scale / norm)
        })
        .collect();
    let ratios = ratios.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(combine_shards(&ratios))
}
