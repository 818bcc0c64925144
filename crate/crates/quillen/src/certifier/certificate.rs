use num::complex::Complex64;
use num::rational::BigRational;
use serde::{Deserialize, Serialize};

use super::eigen::eigendecompose;
use super::ldlt::{ldlt_pivoted, ExactLdlt, LdltOutcome};
use super::matrix::assemble_matrix;
use super::{CertError, DIMENSION_GUARD};
use crate::polyalg::{CRat, HermitianBihomPoly, HoloPoly, MultiIndex};

/// A constructive witness that `r^m p` is a sum of Hermitian squares:
/// sections `s_eta = sqrt(lambda_eta) f_eta` with `sum |s_eta|^2 = r^m p`.
///
/// When the input is rational the certificate also carries the exact
/// `L D L*` decomposition, whose reconstruction is an identity in rational
/// arithmetic rather than a floating approximation.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub m: u32,
    /// Positive eigenvalues of the coefficient matrix, ascending.
    pub eigenvalues: Vec<f64>,
    /// `sqrt(lambda_eta) f_eta`, floating coefficients.
    pub sections: Vec<HoloPoly<Complex64>>,
    /// Max coefficient error of `sum |s_eta|^2 - r^m p` on the floating path.
    pub residual: f64,
    /// Confirmed positive definite by the exact rational factorization.
    pub exact_psd: bool,
    /// Exact weighted-squares decomposition, when available.
    pub exact: Option<ExactSos>,
}

/// Exact decomposition `r^m p = sum_j w_j |l_j|^2` with rational weights and
/// rational section polynomials (from the pivoted LDL* factor).
#[derive(Clone, Debug)]
pub struct ExactSos {
    pub weights: Vec<BigRational>,
    pub polys: Vec<HoloPoly<CRat>>,
}

#[derive(Serialize, Deserialize)]
struct SectionTermJson {
    alpha: Vec<u32>,
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize)]
struct SectionJson {
    n: usize,
    k: u32,
    terms: Vec<SectionTermJson>,
}

#[derive(Serialize, Deserialize)]
struct CertificateJson {
    m: u32,
    eigenvalues: Vec<f64>,
    sections: Vec<SectionJson>,
    residual: f64,
    exact_psd: bool,
}

impl Certificate {
    pub fn to_json(&self) -> String {
        let doc = CertificateJson {
            m: self.m,
            eigenvalues: self.eigenvalues.clone(),
            sections: self.sections.iter().map(section_to_json).collect(),
            residual: self.residual,
            exact_psd: self.exact_psd,
        };
        serde_json::to_string_pretty(&doc).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        let doc: CertificateJson = serde_json::from_str(text)?;
        Ok(Certificate {
            m: doc.m,
            eigenvalues: doc.eigenvalues,
            sections: doc.sections.iter().map(section_from_json).collect(),
            residual: doc.residual,
            exact_psd: doc.exact_psd,
            exact: None,
        })
    }
}

fn section_to_json(s: &HoloPoly<Complex64>) -> SectionJson {
    SectionJson {
        n: s.n(),
        k: s.degree(),
        terms: s
            .terms()
            .map(|(idx, c)| SectionTermJson {
                alpha: idx.entries().to_vec(),
                re: c.re,
                im: c.im,
            })
            .collect(),
    }
}

fn section_from_json(s: &SectionJson) -> HoloPoly<Complex64> {
    HoloPoly::from_terms(
        s.n,
        s.k,
        s.terms
            .iter()
            .map(|t| (MultiIndex::new(t.alpha.clone()), Complex64::new(t.re, t.im))),
    )
}

/// Extracts the certificate of `r^m p`, or reports why none exists at this
/// `m`. Fails unless both the exact rational test and the floating
/// eigendecomposition agree the coefficient matrix is positive definite
/// (eigenvalues above `tol` relative to the largest).
pub fn extract_certificate(
    p: &HermitianBihomPoly<CRat>,
    m: u32,
    tol: f64,
) -> Result<Certificate, CertError> {
    extract_certificate_with(p, m, tol, false)
}

/// As [`extract_certificate`], with an override for the dimension guard.
pub fn extract_certificate_with(
    p: &HermitianBihomPoly<CRat>,
    m: u32,
    tol: f64,
    allow_large: bool,
) -> Result<Certificate, CertError> {
    if !(tol > 0.0 && tol < 1.0) {
        return Err(CertError::BadTolerance(tol));
    }
    let q = p.r_power_times(m);
    let matrix = assemble_matrix(&q);
    if matrix.dim() > DIMENSION_GUARD && !allow_large {
        return Err(CertError::DimensionGuard {
            dim: matrix.dim(),
            guard: DIMENSION_GUARD,
        });
    }

    let outcome = ldlt_pivoted(&matrix);
    let eig = eigendecompose(&matrix)?;
    let min_eig = eig.values.first().copied().unwrap_or(0.0);
    let max_eig = eig.values.last().copied().unwrap_or(0.0);
    let exact_pd = matches!(outcome, LdltOutcome::PositiveDefinite(_));
    if !exact_pd || min_eig <= tol * max_eig.max(0.0) {
        return Err(CertError::NotPositiveDefinite {
            m,
            min_eigenvalue: min_eig,
        });
    }

    let n = p.n();
    let basis = matrix.index();
    let dim = matrix.dim();
    let sections: Vec<HoloPoly<Complex64>> = (0..dim)
        .map(|j| {
            let scale = eig.values[j].sqrt();
            HoloPoly::from_terms(
                n,
                matrix.total_degree(),
                (0..dim).map(|i| {
                    (
                        basis[i].clone(),
                        eig.vectors[(i, j)] * Complex64::new(scale, 0.0),
                    )
                }),
            )
        })
        .collect();

    let exact = match outcome {
        LdltOutcome::PositiveDefinite(f) => Some(exact_sos_from_ldlt(&f, basis, n)),
        _ => None,
    };

    let mut cert = Certificate {
        m,
        eigenvalues: eig.values,
        sections,
        residual: 0.0,
        exact_psd: exact_pd,
        exact,
    };
    cert.residual = verify_certificate_float(&cert, p);
    let residual_tol = tol * q.max_coeff_modulus().max(1.0);
    if cert.residual > residual_tol {
        return Err(CertError::ResidualTooLarge {
            residual: cert.residual,
            tol: residual_tol,
        });
    }
    Ok(cert)
}

fn exact_sos_from_ldlt(f: &ExactLdlt, basis: &[MultiIndex], n: usize) -> ExactSos {
    let degree = basis[0].length();
    let polys = (0..f.pivots.len())
        .map(|j| {
            HoloPoly::from_terms(
                n,
                degree,
                f.lower
                    .iter()
                    .enumerate()
                    .map(|(row, l)| (basis[f.perm[row]].clone(), l[j].clone())),
            )
        })
        .collect();
    ExactSos {
        weights: f.pivots.clone(),
        polys,
    }
}

/// Independent check of a certificate: re-expands the sum of squares by
/// convolution and returns the max coefficient modulus of the difference
/// from `r^m p`. Uses the exact rational decomposition when the certificate
/// carries one (where the residual is exact, typically 0), else the
/// floating sections.
pub fn verify_certificate(cert: &Certificate, p: &HermitianBihomPoly<CRat>) -> f64 {
    match &cert.exact {
        Some(sos) => {
            let q = p.r_power_times(cert.m);
            let mut acc: Option<HermitianBihomPoly<CRat>> = None;
            for (w, l) in sos.weights.iter().zip(&sos.polys) {
                let sq = l.herm_square().scale(&CRat::from_real(w.clone()));
                acc = Some(match acc {
                    Some(a) => a.add_poly(&sq).expect("same dimension"),
                    None => sq,
                });
            }
            let total = acc.expect("at least one section");
            total
                .sub_poly(&q)
                .expect("same dimension")
                .max_coeff_modulus()
        }
        None => verify_certificate_float(cert, p),
    }
}

/// Floating-path verification: expands `sum |s_eta|^2` from the emitted
/// sections and compares coefficients against `r^m p`.
pub fn verify_certificate_float(cert: &Certificate, p: &HermitianBihomPoly<CRat>) -> f64 {
    let q = p.r_power_times(cert.m).to_float();
    let mut acc: Option<HermitianBihomPoly<Complex64>> = None;
    for s in &cert.sections {
        let sq = s.herm_square();
        acc = Some(match acc {
            Some(a) => a.add_poly(&sq).expect("same dimension"),
            None => sq,
        });
    }
    match acc {
        Some(total) => total
            .sub_poly(&q)
            .expect("same dimension")
            .max_coeff_modulus(),
        None => q.max_coeff_modulus(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    #[test]
    fn unit_poly_m2_certificate() {
        // r^2 = |Z0^2|^2 + |sqrt(2) Z0 Z1|^2 + |Z1^2|^2.
        let p = HermitianBihomPoly::unit(1);
        let cert = extract_certificate(&p, 2, 1e-9).unwrap();
        assert_eq!(cert.sections.len(), 3);
        let mut eigs = cert.eigenvalues.clone();
        eigs.sort_by(f64::total_cmp);
        assert!((eigs[0] - 1.0).abs() < 1e-12);
        assert!((eigs[1] - 1.0).abs() < 1e-12);
        assert!((eigs[2] - 2.0).abs() < 1e-12);
        assert!(cert.exact_psd);
        assert_eq!(verify_certificate(&cert, &p), 0.0);
        assert!(verify_certificate_float(&cert, &p) < 1e-12);
    }

    #[test]
    fn dangelo_m2_rejected_with_min_eigenvalue() {
        let p = presets::p_dangelo();
        match extract_certificate(&p, 2, 1e-9) {
            Err(CertError::NotPositiveDefinite { min_eigenvalue, .. }) => {
                // Diagonal binomial oracle: C(2,0) - 2 C(2,1) + C(2,2) = -2.
                assert!((min_eigenvalue + 2.0).abs() < 1e-12);
            }
            other => panic!("expected rejection, got {other:?}"),
        }
    }

    #[test]
    fn eps1_m3_certificate_exact() {
        let p = presets::p_eps_int(1);
        let cert = extract_certificate(&p, 3, 1e-9).unwrap();
        assert!(cert.exact_psd);
        assert!(cert.eigenvalues.iter().all(|&l| l > 0.0));
        assert_eq!(cert.sections.len(), 6);
        assert_eq!(verify_certificate(&cert, &p), 0.0);
        assert!(cert.residual <= 1e-12);
    }

    #[test]
    fn tampered_certificate_detected() {
        let p = presets::p_eps_int(1);
        let mut cert = extract_certificate(&p, 3, 1e-9).unwrap();
        cert.exact = None;
        let scale = Complex64::new(1.01, 0.0);
        cert.sections[0] = cert.sections[0].scale(&scale);
        assert!(verify_certificate(&cert, &p) > 1e-3);
    }

    #[test]
    fn certificate_json_round_trip() {
        let p = presets::p_eps_int(1);
        let cert = extract_certificate(&p, 3, 1e-9).unwrap();
        let back = Certificate::from_json(&cert.to_json()).unwrap();
        assert_eq!(back.m, cert.m);
        assert_eq!(back.eigenvalues, cert.eigenvalues);
        assert_eq!(back.sections.len(), cert.sections.len());
        assert!(verify_certificate_float(&back, &p) < 1e-12);
    }

    #[test]
    fn bad_tolerance_rejected() {
        let p = presets::p_eps_int(1);
        assert!(matches!(
            extract_certificate(&p, 3, 0.0),
            Err(CertError::BadTolerance(_))
        ));
    }
}
