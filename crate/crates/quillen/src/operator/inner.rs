use nalgebra::DMatrix;
use num::complex::Complex64;
use rayon::prelude::*;

use super::estimate::{combine_shards_c, shard_ranges, CEstimate, SampleMeta};
use super::OpError;
use crate::certifier::hermitian_eigen;
use crate::geometry::FsSampleSet;
use crate::polyalg::eval_support::monomial_value;
use crate::polyalg::{HermitianBihomPoly, HoloPoly, MultiIndex};

/// Matrix of the `p`-dependent inner product
/// `<s1, s2> = int s1 conj(s2) / (r^m p) Omega` over the monomial basis of
/// degree `m + d`, estimated on a fixed sample set.
#[derive(Clone, Debug)]
pub struct GramMatrix {
    pub m: u32,
    pub d: u32,
    pub n: usize,
    /// Monomial basis, ascending graded lex.
    pub basis: Vec<MultiIndex>,
    pub entries: DMatrix<Complex64>,
    /// Largest entrywise standard error across the matrix.
    pub max_entry_sem: f64,
    pub sample_meta: SampleMeta,
}

fn check_setup(
    p: &HermitianBihomPoly<Complex64>,
    m: u32,
    samples: &FsSampleSet,
    shards: usize,
) -> Result<(), OpError> {
    if samples.n() != p.n() {
        return Err(OpError::DimensionMismatch(samples.n(), p.n()));
    }
    if shards < 2 || samples.len() < shards {
        return Err(OpError::BadConfig(format!(
            "need at least 2 shards and one sample per shard (got {} samples, {} shards)",
            samples.len(),
            shards
        )));
    }
    let _ = m;
    Ok(())
}

/// On unit-sphere representatives `r(z, conj z) = 1`, so the weight
/// `1 / (r^m p)(z, conj z)` reduces to `1 / p(z, conj z)`.
fn weight_at(
    p: &HermitianBihomPoly<Complex64>,
    z: &[Complex64],
    index: usize,
) -> Result<f64, OpError> {
    let den = p.evaluate(z);
    if den <= 0.0 {
        return Err(OpError::NonpositiveDenominator { index, value: den });
    }
    Ok(den.recip())
}

/// Monte Carlo estimate of the Eq.-style inner product
/// `int s1 conj(s2) / (r^m p) Omega`. Conjugate symmetric by construction:
/// swapping the arguments conjugates the estimate exactly (same samples).
pub fn inner_product(
    s1: &HoloPoly<Complex64>,
    s2: &HoloPoly<Complex64>,
    p: &HermitianBihomPoly<Complex64>,
    m: u32,
    samples: &FsSampleSet,
    shards: usize,
) -> Result<CEstimate, OpError> {
    check_setup(p, m, samples, shards)?;
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
    let pts = samples.points();
    let means: Vec<Result<Complex64, OpError>> = shard_ranges(pts.len(), shards)
        .into_par_iter()
        .map(|range| {
            let len = range.len() as f64;
            let mut acc = Complex64::new(0.0, 0.0);
            for i in range {
                let z = pts[i].coords();
                let w = weight_at(p, z, i)?;
                acc += s1.evaluate(z) * s2.evaluate(z).conj() * w;
            }
            Ok(acc / len)
        })
        .collect();
    let means = means.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(combine_shards_c(&means))
}

/// Gram matrix of the full degree-`(m + d)` monomial basis in one pass over
/// the samples.
pub fn gram(
    p: &HermitianBihomPoly<Complex64>,
    m: u32,
    samples: &FsSampleSet,
    shards: usize,
) -> Result<GramMatrix, OpError> {
    check_setup(p, m, samples, shards)?;
    let n = p.n();
    let d = p.bidegree();
    let basis = MultiIndex::all_of_degree(n + 1, m + d);
    let dim = basis.len();
    let pts = samples.points();
    let shard_means: Vec<Result<DMatrix<Complex64>, OpError>> =
        shard_ranges(pts.len(), shards)
            .into_par_iter()
            .map(|range| {
                let len = range.len() as f64;
                let mut acc: DMatrix<Complex64> = DMatrix::zeros(dim, dim);
                let mut v = vec![Complex64::new(0.0, 0.0); dim];
                for i in range {
                    let z = pts[i].coords();
                    let w = weight_at(p, z, i)?;
                    for (k, idx) in basis.iter().enumerate() {
                        v[k] = monomial_value(idx, z);
                    }
                    for a in 0..dim {
                        for b in 0..dim {
                            acc[(a, b)] += v[a] * v[b].conj() * w;
                        }
                    }
                }
                Ok(acc / Complex64::new(len, 0.0))
            })
            .collect();
    let shard_means = shard_means.into_iter().collect::<Result<Vec<_>, _>>()?;
    let s = shard_means.len() as f64;
    let mut entries: DMatrix<Complex64> = DMatrix::zeros(dim, dim);
    for sm in &shard_means {
        entries += sm;
    }
    entries /= Complex64::new(s, 0.0);
    let mut max_sem = 0.0f64;
    for a in 0..dim {
        for b in 0..dim {
            let var = shard_means
                .iter()
                .map(|sm| (sm[(a, b)] - entries[(a, b)]).norm_sqr())
                .sum::<f64>()
                / (s - 1.0);
            max_sem = max_sem.max((var / s).sqrt());
        }
    }
    Ok(GramMatrix {
        m,
        d,
        n,
        basis,
        entries,
        max_entry_sem: max_sem,
        sample_meta: SampleMeta {
            seed: samples.seed(),
            samples: samples.len(),
            shards,
        },
    })
}

impl GramMatrix {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The Gram form on coefficient vectors: with `G[(a,b)] = <Z^a, Z^b>`,
    /// two sections with coefficients `v1`, `v2` pair as `v2* H v1` where
    /// `H = G^T`. Hermitized against Monte Carlo round-off.
    pub(crate) fn coefficient_form(&self) -> DMatrix<Complex64> {
        let g = (&self.entries + self.entries.adjoint()) * Complex64::new(0.5, 0.0);
        g.transpose()
    }

    /// Congruence transform `W` with `W* H W = I` for the coefficient-space
    /// Gram form `H`: column `j` holds the monomial coefficients of the
    /// orthonormal basis vector `e_j`. Fails when the estimated Gram matrix
    /// is not positive definite (undersampled).
    pub fn orthonormal_transform(&self) -> Result<DMatrix<Complex64>, OpError> {
        let chol = self
            .coefficient_form()
            .cholesky()
            .ok_or_else(|| OpError::Numeric("estimated Gram matrix is not positive definite".into()))?;
        chol.l()
            .adjoint()
            .try_inverse()
            .ok_or_else(|| OpError::Numeric("Cholesky factor is singular".into()))
    }

    /// The orthonormal basis `e_j` as holomorphic polynomials.
    pub fn orthonormal_sections(&self) -> Result<Vec<HoloPoly<Complex64>>, OpError> {
        let w = self.orthonormal_transform()?;
        Ok(self.sections_from_columns(&w))
    }

    pub fn sections_from_columns(&self, cols: &DMatrix<Complex64>) -> Vec<HoloPoly<Complex64>> {
        (0..cols.ncols())
            .map(|j| {
                HoloPoly::from_terms(
                    self.n,
                    self.m + self.d,
                    (0..self.dim()).map(|i| (self.basis[i].clone(), cols[(i, j)])),
                )
            })
            .collect()
    }
}

/// Diagonalizes the coefficient matrix of `r^m p` in the Gram-orthonormal
/// basis: returns the eigenvalues (ascending) and the sections `f_eta`,
/// orthonormal for the estimated inner product, for which
/// `K(f_eta, f_eta)` approximates the corresponding eigenvalue.
pub fn diagonalize_in_gram_basis(
    p: &HermitianBihomPoly<Complex64>,
    g: &GramMatrix,
) -> Result<(Vec<f64>, Vec<HoloPoly<Complex64>>), OpError> {
    let q = p.r_power_times(g.m);
    let dim = g.dim();
    let pos: std::collections::BTreeMap<&MultiIndex, usize> =
        g.basis.iter().enumerate().map(|(i, idx)| (idx, i)).collect();
    let mut c: DMatrix<Complex64> = DMatrix::zeros(dim, dim);
    for ((alpha, beta), v) in q.terms() {
        c[(pos[alpha], pos[beta])] = *v;
    }
    let w = g.orthonormal_transform()?;
    // K(s1, s2) = v2* (H C H) v1 in coefficient space, so the operator in
    // the orthonormal basis is W* H C H W.
    let h = g.coefficient_form();
    let mat = w.adjoint() * &h * c * &h * &w;
    let eig = hermitian_eigen(&mat).map_err(|e| OpError::Numeric(e.to_string()))?;
    let cols = &w * &eig.vectors;
    let sections = g.sections_from_columns(&cols);
    Ok((eig.values, sections))
}
