use nalgebra::{Complex, DMatrix, DVector};
use num::complex::Complex64;

use super::point::ProjectivePoint;

/// Canonical coordinate chart centered at a point `x` of `CP^n`: the map
/// `z in C^n -> U * (1, z)` projectivized, where `U` is a unitary whose
/// first column is `x`. The diastasis from `x` to the image of `z` is
/// exactly `|z|`.
pub struct CanonicalChart {
    unitary: DMatrix<Complex<f64>>,
}

impl CanonicalChart {
    pub fn new(x: &ProjectivePoint) -> Self {
        let dim = x.coords().len();
        // Gram-Schmidt on (x, e_0, e_1, ...), dropping the dependent vector.
        let mut cols: Vec<DVector<Complex<f64>>> =
            vec![DVector::from_column_slice(x.coords())];
        for i in 0..dim {
            if cols.len() == dim {
                break;
            }
            let mut v = DVector::zeros(dim);
            v[i] = Complex::new(1.0, 0.0);
            for c in &cols {
                let proj = c.dotc(&v);
                v -= c * proj;
            }
            let norm = v.norm();
            if norm > 1e-8 {
                v /= Complex::new(norm, 0.0);
                cols.push(v);
            }
        }
        assert_eq!(cols.len(), dim, "failed to complete unitary frame");
        CanonicalChart {
            unitary: DMatrix::from_columns(&cols),
        }
    }

    /// The point with chart coordinate `z` (length `n`).
    pub fn point(&self, z: &[Complex64]) -> ProjectivePoint {
        let dim = self.unitary.nrows();
        assert_eq!(z.len(), dim - 1);
        let mut v = DVector::zeros(dim);
        v[0] = Complex::new(1.0, 0.0);
        for (i, c) in z.iter().enumerate() {
            v[i + 1] = *c;
        }
        let w = &self.unitary * v;
        ProjectivePoint::new(w.as_slice())
    }

    /// Chart coordinate of `y`; `None` when `y` lies on the hyperplane at
    /// infinity of the chart (infinite diastasis from the center).
    pub fn coords(&self, y: &ProjectivePoint) -> Option<Vec<Complex64>> {
        let w = self.unitary.adjoint() * DVector::from_column_slice(y.coords());
        let w0 = w[0];
        if w0.norm() < 1e-12 {
            return None;
        }
        Some((1..w.len()).map(|i| w[i] / w0).collect())
    }
}
