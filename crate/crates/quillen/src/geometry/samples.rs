use std::io::{Read, Write};

use num::complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::point::ProjectivePoint;
use crate::polyalg::sampling_support::random_unit_vector;

/// Empirical realization of the normalized Fubini-Study volume form: `N`
/// i.i.d. points with weights summing to 1, deterministic per seed.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FsSampleSet {
    n: usize,
    points: Vec<ProjectivePoint>,
    weights: Vec<f64>,
    seed: u64,
}

impl FsSampleSet {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[ProjectivePoint] {
        &self.points
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Weighted estimate of `int f dOmega`.
    pub fn estimate(&self, mut f: impl FnMut(&ProjectivePoint) -> f64) -> f64 {
        self.points
            .iter()
            .zip(&self.weights)
            .map(|(p, w)| w * f(p))
            .sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("sample set serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Compact binary layout: header (n, count, seed), then per point the
    /// `2(n+1)` coordinate floats followed by the weight, little endian.
    pub fn write_binary(&self, mut w: impl Write) -> std::io::Result<()> {
        w.write_all(&(self.n as u64).to_le_bytes())?;
        w.write_all(&(self.points.len() as u64).to_le_bytes())?;
        w.write_all(&self.seed.to_le_bytes())?;
        for (p, weight) in self.points.iter().zip(&self.weights) {
            for c in p.coords() {
                w.write_all(&c.re.to_le_bytes())?;
                w.write_all(&c.im.to_le_bytes())?;
            }
            w.write_all(&weight.to_le_bytes())?;
        }
        Ok(())
    }

    pub fn read_binary(mut r: impl Read) -> std::io::Result<Self> {
        let mut u64buf = [0u8; 8];
        let mut read_u64 = |r: &mut dyn Read| -> std::io::Result<u64> {
            r.read_exact(&mut u64buf)?;
            Ok(u64::from_le_bytes(u64buf))
        };
        let n = read_u64(&mut r)? as usize;
        let count = read_u64(&mut r)? as usize;
        let seed = read_u64(&mut r)?;
        let mut f64buf = [0u8; 8];
        let mut read_f64 = |r: &mut dyn Read| -> std::io::Result<f64> {
            r.read_exact(&mut f64buf)?;
            Ok(f64::from_le_bytes(f64buf))
        };
        let mut points = Vec::with_capacity(count);
        let mut weights = Vec::with_capacity(count);
        for _ in 0..count {
            let coords: Vec<Complex64> = (0..=n)
                .map(|_| -> std::io::Result<Complex64> {
                    let re = read_f64(&mut r)?;
                    let im = read_f64(&mut r)?;
                    Ok(Complex64::new(re, im))
                })
                .collect::<Result<_, _>>()?;
            points.push(ProjectivePoint::from_canonical(coords));
            weights.push(read_f64(&mut r)?);
        }
        Ok(FsSampleSet {
            n,
            points,
            weights,
            seed,
        })
    }
}

/// Draws `count` i.i.d. Fubini-Study points of `CP^n`: uniform points of the
/// unit sphere `S^{2n+1}`, projectivized. Deterministic given `seed`.
pub fn fs_samples(n: usize, count: usize, seed: u64) -> FsSampleSet {
    assert!(count >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<ProjectivePoint> = (0..count)
        .map(|_| ProjectivePoint::new(&random_unit_vector(&mut rng, n + 1)))
        .collect();
    let w = 1.0 / count as f64;
    FsSampleSet {
        n,
        points,
        weights: vec![w; count],
        seed,
    }
}

/// Mixes a base seed with a named sub-stream tag and an index (FNV-1a), so
/// every module and shard draws from its own deterministic stream.
pub fn derive_seed(base: u64, tag: &str, index: u64) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in base
        .to_le_bytes()
        .iter()
        .chain(tag.as_bytes())
        .chain(index.to_le_bytes().iter())
    {
        h ^= *b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::integrals::kernel_power_exact;
    use crate::geometry::point::diastasis;
    use crate::polyalg::scalar_support::rat_to_f64;

    #[test]
    fn weights_sum_to_one() {
        let s = fs_samples(2, 1000, 7);
        let total: f64 = s.weights().iter().sum();
        assert!((total - 1.0).abs() < 1e-12);
        assert!((s.estimate(|_| 1.0) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn deterministic_per_seed() {
        let a = fs_samples(1, 50, 3);
        let b = fs_samples(1, 50, 3);
        let c = fs_samples(1, 50, 4);
        assert_eq!(a.to_json(), b.to_json());
        assert_ne!(a.to_json(), c.to_json());
    }

    #[test]
    fn monomial_moment() {
        // int |Z_0|^2 / r dOmega = 1/2 for n = 1 (closed-form oracle
        // alpha! n!/(|alpha|+n)!), within 3 sigma.
        let s = fs_samples(1, 40_000, 11);
        let est = s.estimate(|p| p.coords()[0].norm_sqr());
        let sigma = 0.5 / (s.len() as f64).sqrt(); // crude bound on se
        assert!((est - 0.5).abs() < 3.0 * sigma);
    }

    #[test]
    fn kernel_moment_matches_closed_form() {
        // Fix x = basepoint; E[(1+d^2)^-1] = kernel_power_integral(1,1) = 1/2.
        let x = ProjectivePoint::basepoint(1);
        let s = fs_samples(1, 40_000, 13);
        let est = s.estimate(|p| {
            let d = diastasis(&x, p);
            if d.is_infinite() {
                0.0
            } else {
                (1.0 + d * d).recip()
            }
        });
        let expect = rat_to_f64(&kernel_power_exact(1, 1));
        assert!((est - expect).abs() < 3.0 * 0.3 / (s.len() as f64).sqrt());
    }

    #[test]
    fn binary_round_trip() {
        let s = fs_samples(2, 25, 99);
        let mut buf = Vec::new();
        s.write_binary(&mut buf).unwrap();
        let back = FsSampleSet::read_binary(buf.as_slice()).unwrap();
        assert_eq!(s.to_json(), back.to_json());
    }

    #[test]
    fn seed_derivation_separates_streams() {
        assert_ne!(derive_seed(1, "x", 0), derive_seed(1, "y", 0));
        assert_ne!(derive_seed(1, "x", 0), derive_seed(1, "x", 1));
        assert_eq!(derive_seed(1, "x", 0), derive_seed(1, "x", 0));
    }
}
