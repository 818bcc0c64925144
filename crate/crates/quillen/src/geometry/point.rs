use num::complex::Complex64;
use serde::{Deserialize, Serialize};

/// Point of `CP^n`, stored as its canonical unit-sphere representative: the
/// coordinates are normalized to unit Euclidean norm and the first coordinate
/// of modulus above `1e-9` is rotated to be real positive, so equal points
/// have comparable coordinates.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct ProjectivePoint {
    coords: Vec<Complex64>,
}

impl ProjectivePoint {
    /// Canonicalizes arbitrary nonzero homogeneous coordinates.
    pub fn new(raw: &[Complex64]) -> Self {
        let norm = raw.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        assert!(norm > 0.0, "projective point needs nonzero coordinates");
        let mut coords: Vec<Complex64> = raw.iter().map(|c| c / norm).collect();
        if let Some(lead) = coords.iter().find(|c| c.norm() > 1e-9) {
            let phase = lead / lead.norm();
            let rot = phase.conj();
            for c in &mut coords {
                *c *= rot;
            }
        }
        ProjectivePoint { coords }
    }

    /// Rebuilds a point from coordinates that are already canonical (e.g.
    /// read back from serialized form), bit for bit.
    pub(crate) fn from_canonical(coords: Vec<Complex64>) -> Self {
        ProjectivePoint { coords }
    }

    /// The base point `[1 : 0 : ... : 0]` of `CP^n`.
    pub fn basepoint(n: usize) -> Self {
        let mut coords = vec![Complex64::new(0.0, 0.0); n + 1];
        coords[0] = Complex64::new(1.0, 0.0);
        ProjectivePoint { coords }
    }

    /// Unit-norm representative on `S^{2n+1}`.
    pub fn coords(&self) -> &[Complex64] {
        &self.coords
    }

    /// Ambient projective dimension `n`.
    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    /// Hermitian pairing `r(x, conj(y)) = sum_i x_i conj(y_i)` of the
    /// unit representatives.
    pub fn pairing(&self, other: &Self) -> Complex64 {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a * b.conj())
            .sum()
    }
}

/// The diastasis `sqrt(r(x,x) r(y,y) / |r(x,y)|^2 - 1)`, with
/// `f64::INFINITY` at orthogonal pairs (where `r(x, conj(y)) = 0`).
pub fn diastasis(x: &ProjectivePoint, y: &ProjectivePoint) -> f64 {
    let c = x.pairing(y).norm_sqr();
    if c == 0.0 {
        return f64::INFINITY;
    }
    // Unit representatives make the numerator 1; clamp float round-off.
    ((1.0 / c) - 1.0).max(0.0).sqrt()
}
