use nalgebra::{Complex, DMatrix};

use super::matrix::CoefficientMatrix;
use super::CertError;

/// Result of diagonalizing a Hermitian matrix: `M = P diag(values) P*` with
/// `P` unitary, eigenvalues real and ascending, deterministic ordering and
/// eigenvector phases.
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    /// Column `j` is the eigenvector of `values[j]`.
    pub vectors: DMatrix<Complex<f64>>,
}

/// Eigendecomposition of a (floating) Hermitian matrix, with the certifier's
/// determinism and accuracy contract: reconstruction and unitarity residuals
/// below `1e-10 * max|M|`, ties broken by the leading-entry pivot, each
/// eigenvector's first significant entry rotated real positive.
pub fn hermitian_eigen(mat: &DMatrix<Complex<f64>>) -> Result<EigenDecomposition, CertError> {
    let dim = mat.nrows();
    if dim == 0 {
        return Ok(EigenDecomposition {
            values: vec![],
            vectors: DMatrix::zeros(0, 0),
        });
    }
    let se = nalgebra::SymmetricEigen::new(mat.clone());

    let pivot_row = |col: usize| -> usize {
        let v = se.eigenvectors.column(col);
        (0..dim)
            .find(|&i| v[i].norm() > 1e-8)
            .unwrap_or(0)
    };
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| {
        se.eigenvalues[a]
            .total_cmp(&se.eigenvalues[b])
            .then_with(|| pivot_row(a).cmp(&pivot_row(b)))
    });

    let values: Vec<f64> = order.iter().map(|&j| se.eigenvalues[j]).collect();
    let mut vectors = DMatrix::zeros(dim, dim);
    for (new_j, &old_j) in order.iter().enumerate() {
        let col = se.eigenvectors.column(old_j);
        let lead = col[pivot_row(old_j)];
        let rot = if lead.norm() > 0.0 {
            lead.conj() / lead.norm()
        } else {
            Complex::new(1.0, 0.0)
        };
        for i in 0..dim {
            vectors[(i, new_j)] = col[i] * rot;
        }
    }

    let scale = mat.iter().map(|c| c.norm()).fold(0.0, f64::max).max(1e-300);
    let tol = 1e-10 * scale;
    let recon = &vectors
        * DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
            dim,
            values.iter().map(|&v| Complex::new(v, 0.0)),
        ))
        * vectors.adjoint();
    let recon_err = (recon - mat).iter().map(|c| c.norm()).fold(0.0, f64::max);
    let unit_err = (vectors.adjoint() * &vectors - DMatrix::identity(dim, dim))
        .iter()
        .map(|c| c.norm())
        .fold(0.0, f64::max);
    if recon_err > tol || unit_err > 1e-10 {
        return Err(CertError::Numeric(format!(
            "reconstruction error {recon_err:.3e} (tol {tol:.3e}), unitarity error {unit_err:.3e}"
        )));
    }
    Ok(EigenDecomposition { values, vectors })
}

/// Diagonalizes a coefficient matrix (rational entries are converted to
/// floating point).
pub fn eigendecompose(m: &CoefficientMatrix) -> Result<EigenDecomposition, CertError> {
    hermitian_eigen(&m.to_float())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certifier::assemble_matrix;
    use crate::presets;

    #[test]
    fn diag_eigenvalues_sorted() {
        let m = assemble_matrix(&presets::p_dangelo());
        let e = eigendecompose(&m).unwrap();
        assert_eq!(e.values.len(), 3);
        assert!((e.values[0] + 2.0).abs() < 1e-12);
        assert!((e.values[1] - 1.0).abs() < 1e-12);
        assert!((e.values[2] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn r1_dangelo_spectrum() {
        // Diagonal binomial oracle: entries C(1,a-2) - 2C(1,a-1) + C(1,a)
        // give (1, -1, -1, 1); eigenvalues ascending (-1, -1, 1, 1).
        let q = presets::p_dangelo().r_power_times(1);
        let e = eigendecompose(&assemble_matrix(&q)).unwrap();
        let expect = [-1.0, -1.0, 1.0, 1.0];
        for (v, x) in e.values.iter().zip(expect) {
            assert!((v - x).abs() < 1e-12);
        }
    }

    #[test]
    fn identity_any_unitary_accepted() {
        let q = crate::polyalg::HermitianBihomPoly::make_r(2);
        let e = eigendecompose(&assemble_matrix(&q)).unwrap();
        for v in &e.values {
            assert!((v - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn deterministic_output() {
        let q = presets::p_eps_int(1).r_power_times(4);
        let a = eigendecompose(&assemble_matrix(&q)).unwrap();
        let b = eigendecompose(&assemble_matrix(&q)).unwrap();
        assert_eq!(a.values, b.values);
        assert_eq!(a.vectors, b.vectors);
    }
}
