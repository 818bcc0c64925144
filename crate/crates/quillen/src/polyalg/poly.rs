use std::collections::BTreeMap;

use num::complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::multiindex::MultiIndex;
use super::scalar::{multinomial, Coeff, CRat};

#[derive(Debug, Error)]
pub enum PolyError {
    #[error("ambient dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("term ({alpha:?}, {beta:?}) has bidegree ({da}, {db}), expected ({d}, {d})")]
    BadBidegree {
        alpha: MultiIndex,
        beta: MultiIndex,
        da: u32,
        db: u32,
        d: u32,
    },
    #[error("Hermitian symmetry violated at ({alpha:?}, {beta:?})")]
    NotHermitian { alpha: MultiIndex, beta: MultiIndex },
}

/// Hermitian bihomogeneous polynomial of bidegree `(d, d)` over `Z_0 .. Z_n`:
/// a sparse coefficient map `a_{alpha beta}` with `conj(a_{alpha beta}) =
/// a_{beta alpha}`. Zero coefficients are pruned after every operation.
#[derive(Clone, PartialEq, Debug)]
pub struct HermitianBihomPoly<S: Coeff> {
    n: usize,
    d: u32,
    terms: BTreeMap<(MultiIndex, MultiIndex), S>,
}

impl<S: Coeff> HermitianBihomPoly<S> {
    /// Builds a polynomial from raw terms, checking bidegree and Hermitian
    /// symmetry key by key.
    pub fn from_terms(
        n: usize,
        d: u32,
        terms: impl IntoIterator<Item = ((MultiIndex, MultiIndex), S)>,
    ) -> Result<Self, PolyError> {
        let mut map = BTreeMap::new();
        for ((alpha, beta), c) in terms {
            if c.is_zero() {
                continue;
            }
            let (da, db) = (alpha.length(), beta.length());
            if da != d || db != d || alpha.nvars() != n + 1 || beta.nvars() != n + 1 {
                return Err(PolyError::BadBidegree { alpha, beta, da, db, d });
            }
            map.insert((alpha, beta), c);
        }
        let p = HermitianBihomPoly { n, d, terms: map };
        if !p.is_hermitian() {
            let bad = p
                .terms
                .iter()
                .find(|((a, b), c)| {
                    p.coeff(b, a) != c.conj()
                })
                .map(|((a, b), _)| (a.clone(), b.clone()))
                .unwrap();
            return Err(PolyError::NotHermitian { alpha: bad.0, beta: bad.1 });
        }
        Ok(p)
    }

    /// The constant polynomial of bidegree `(0, 0)` with coefficient 1.
    pub fn unit(n: usize) -> Self {
        let z = MultiIndex::zero(n + 1);
        let mut terms = BTreeMap::new();
        terms.insert((z.clone(), z), S::one());
        HermitianBihomPoly { n, d: 0, terms }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bidegree(&self) -> u32 {
        self.d
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(MultiIndex, MultiIndex), &S)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, alpha: &MultiIndex, beta: &MultiIndex) -> S {
        self.terms
            .get(&(alpha.clone(), beta.clone()))
            .cloned()
            .unwrap_or_else(S::zero)
    }

    /// Exact key-by-key Hermitian symmetry check.
    pub fn is_hermitian(&self) -> bool {
        self.terms.iter().all(|((a, b), c)| {
            self.terms
                .get(&(b.clone(), a.clone()))
                .map(|cc| *cc == c.conj())
                .unwrap_or(false)
        })
    }

    /// Product of two Hermitian bihomogeneous polynomials (coefficient
    /// convolution). The bidegree adds.
    pub fn multiply(&self, other: &Self) -> Result<Self, PolyError> {
        if self.n != other.n {
            return Err(PolyError::DimensionMismatch(self.n, other.n));
        }
        let mut map: BTreeMap<(MultiIndex, MultiIndex), S> = BTreeMap::new();
        for ((a, b), c) in &self.terms {
            for ((a2, b2), c2) in &other.terms {
                let key = (a.add(a2), b.add(b2));
                let add = c.mul(c2);
                match map.get_mut(&key) {
                    Some(v) => *v = v.add(&add),
                    None => {
                        map.insert(key, add);
                    }
                }
            }
        }
        map.retain(|_, v| !v.is_zero());
        Ok(HermitianBihomPoly {
            n: self.n,
            d: self.d + other.d,
            terms: map,
        })
    }

    /// `r^m * self` by the closed-form coefficient sum
    /// `sum_{|gamma|=m} (m! / gamma!) a_{mu-gamma, nu-gamma}`, without
    /// iterated multiplication.
    pub fn r_power_times(&self, m: u32) -> Self {
        if m == 0 {
            return self.clone();
        }
        let mut map: BTreeMap<(MultiIndex, MultiIndex), S> = BTreeMap::new();
        for gamma in MultiIndex::all_of_degree(self.n + 1, m) {
            let w = S::from_bigint(&multinomial(gamma.entries()));
            for ((a, b), c) in &self.terms {
                let key = (a.add(&gamma), b.add(&gamma));
                let add = w.mul(c);
                match map.get_mut(&key) {
                    Some(v) => *v = v.add(&add),
                    None => {
                        map.insert(key, add);
                    }
                }
            }
        }
        map.retain(|_, v| !v.is_zero());
        HermitianBihomPoly {
            n: self.n,
            d: self.d + m,
            terms: map,
        }
    }

    /// Polarized evaluation `p(x, conj(y)) = sum a_{ab} x^a conj(y)^b`.
    pub fn evaluate_polarized(&self, x: &[Complex64], y: &[Complex64]) -> Complex64 {
        let yc: Vec<Complex64> = y.iter().map(|v| v.conj()).collect();
        let mut acc = Complex64::new(0.0, 0.0);
        for ((a, b), c) in &self.terms {
            acc += c.to_c64() * monomial_value(a, x) * monomial_value(b, &yc);
        }
        acc
    }

    /// `p(z, conj(z))`, real for Hermitian polynomials.
    pub fn evaluate(&self, z: &[Complex64]) -> f64 {
        self.evaluate_polarized(z, z).re
    }

    /// Pointwise scaling by a scalar.
    pub fn scale(&self, w: &S) -> Self {
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            let v = c.mul(w);
            if !v.is_zero() {
                terms.insert(k.clone(), v);
            }
        }
        HermitianBihomPoly {
            n: self.n,
            d: self.d,
            terms,
        }
    }

    pub fn add_poly(&self, other: &Self) -> Result<Self, PolyError> {
        if self.n != other.n {
            return Err(PolyError::DimensionMismatch(self.n, other.n));
        }
        assert_eq!(self.d, other.d, "bidegree mismatch in add");
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            match terms.get_mut(k) {
                Some(v) => *v = v.add(c),
                None => {
                    terms.insert(k.clone(), c.clone());
                }
            }
        }
        terms.retain(|_, v| !v.is_zero());
        Ok(HermitianBihomPoly {
            n: self.n,
            d: self.d,
            terms,
        })
    }

    pub fn sub_poly(&self, other: &Self) -> Result<Self, PolyError> {
        self.add_poly(&other.scale(&S::one().neg()))
    }

    /// Largest coefficient modulus (in `f64`).
    pub fn max_coeff_modulus(&self) -> f64 {
        self.terms
            .values()
            .map(|c| c.to_c64().norm())
            .fold(0.0, f64::max)
    }
}

impl HermitianBihomPoly<CRat> {
    /// The standard form `r = |Z_0|^2 + ... + |Z_n|^2`.
    pub fn make_r(n: usize) -> Self {
        assert!(n >= 1, "make_r requires n >= 1");
        let mut terms = BTreeMap::new();
        for i in 0..=n {
            let e = MultiIndex::unit(n + 1, i);
            terms.insert((e.clone(), e), CRat::from_int(1));
        }
        HermitianBihomPoly { n, d: 1, terms }
    }

    /// Floating-coefficient copy for the numeric paths.
    pub fn to_float(&self) -> HermitianBihomPoly<Complex64> {
        HermitianBihomPoly {
            n: self.n,
            d: self.d,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), c.to_c64()))
                .collect(),
        }
    }
}

pub(crate) fn monomial_value(idx: &MultiIndex, point: &[Complex64]) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    for (e, z) in idx.entries().iter().zip(point) {
        if *e > 0 {
            acc *= z.powi(*e as i32);
        }
    }
    acc
}

/// Holomorphic polynomial of degree `k`: a sparse map from length-`k`
/// multiindices to coefficients.
#[derive(Clone, PartialEq, Debug)]
pub struct HoloPoly<S: Coeff = Complex64> {
    n: usize,
    k: u32,
    terms: BTreeMap<MultiIndex, S>,
}

impl<S: Coeff> HoloPoly<S> {
    pub fn from_terms(
        n: usize,
        k: u32,
        terms: impl IntoIterator<Item = (MultiIndex, S)>,
    ) -> Self {
        let mut map = BTreeMap::new();
        for (idx, c) in terms {
            assert_eq!(idx.length(), k, "holomorphic term of wrong degree");
            assert_eq!(idx.nvars(), n + 1);
            if !c.is_zero() {
                map.insert(idx, c);
            }
        }
        HoloPoly { n, k, terms: map }
    }

    /// The monomial `Z^idx`.
    pub fn monomial(n: usize, idx: MultiIndex) -> Self {
        HoloPoly::from_terms(n, idx.length(), [(idx, S::one())])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &S)> {
        self.terms.iter()
    }

    pub fn coeff(&self, idx: &MultiIndex) -> S {
        self.terms.get(idx).cloned().unwrap_or_else(S::zero)
    }

    pub fn scale(&self, w: &S) -> Self {
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            let v = c.mul(w);
            if !v.is_zero() {
                terms.insert(k.clone(), v);
            }
        }
        HoloPoly {
            n: self.n,
            k: self.k,
            terms,
        }
    }

    pub fn add_poly(&self, other: &Self) -> Self {
        assert_eq!(self.k, other.k);
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            match terms.get_mut(k) {
                Some(v) => *v = v.add(c),
                None => {
                    terms.insert(k.clone(), c.clone());
                }
            }
        }
        terms.retain(|_, v| !v.is_zero());
        HoloPoly {
            n: self.n,
            k: self.k,
            terms,
        }
    }

    pub fn evaluate(&self, z: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (idx, c) in &self.terms {
            acc += c.to_c64() * monomial_value(idx, z);
        }
        acc
    }

    /// `|s|^2 = s * conj(s)` as a Hermitian bihomogeneous polynomial.
    pub fn herm_square(&self) -> HermitianBihomPoly<S> {
        let mut map: BTreeMap<(MultiIndex, MultiIndex), S> = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &self.terms {
                let key = (a.clone(), b.clone());
                let add = ca.mul(&cb.conj());
                match map.get_mut(&key) {
                    Some(v) => *v = v.add(&add),
                    None => {
                        map.insert(key, add);
                    }
                }
            }
        }
        map.retain(|_, v| !v.is_zero());
        HermitianBihomPoly {
            n: self.n,
            d: self.k,
            terms: map,
        }
    }
}

/// Draws `samples` uniform points of the unit sphere `S^{2n+1}` and returns
/// the minimum of `p(z, conj(z))`. A nonpositive value certifies that `p` is
/// not strictly positive on the sphere; a positive value is only evidence.
pub fn sphere_min_estimate<S: Coeff>(
    p: &HermitianBihomPoly<S>,
    samples: usize,
    seed: u64,
) -> f64 {
    assert!(samples >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = p.n() + 1;
    let mut min = f64::INFINITY;
    for _ in 0..samples {
        let z = random_unit_vector(&mut rng, dim);
        min = min.min(p.evaluate(&z));
    }
    min
}

/// Uniform point of the unit sphere of `C^dim` via normalized Gaussians.
pub(crate) fn random_unit_vector(rng: &mut impl Rng, dim: usize) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..dim)
            .map(|_| Complex64::new(standard_normal(rng), standard_normal(rng)))
            .collect();
        let norm = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            return v.into_iter().map(|c| c / norm).collect();
        }
    }
}

/// Box-Muller standard normal.
pub(crate) fn standard_normal(rng: &mut impl Rng) -> f64 {
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}
