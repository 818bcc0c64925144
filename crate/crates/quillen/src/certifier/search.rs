use serde_json::json;

use super::certificate::{extract_certificate_with, Certificate};
use super::ldlt::{ldlt_pivoted, LdltOutcome};
use super::matrix::assemble_matrix;
use super::{CertError, DIMENSION_GUARD};
use crate::polyalg::{poly_to_json, sphere_min_estimate, CRat, HermitianBihomPoly};

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub m_max: u32,
    pub tol: f64,
    /// Seed for the sphere-minimum spot check.
    pub seed: u64,
    /// Sample count for the sphere-minimum spot check; 0 disables it.
    pub min_check_samples: usize,
    pub allow_large: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            m_max: 32,
            tol: 1e-9,
            seed: 0,
            min_check_samples: 4096,
            allow_large: false,
        }
    }
}

/// Outcome of scanning `m = 0, 1, ...` for the minimal power with
/// `r^m p` a sum of Hermitian squares.
#[derive(Clone, Debug)]
pub struct SearchReport {
    /// FNV-1a hash of the canonical JSON form of the input, hex.
    pub p_id: String,
    /// Smallest `m` with a positive definite coefficient matrix, if found
    /// within `m_max`.
    pub minimal_m: Option<u32>,
    /// Smallest `m` with a positive semidefinite matrix (possibly singular).
    pub first_psd_m: Option<u32>,
    /// `(m, min eigenvalue)` for every power tried, starting at 0, no gaps.
    pub trace: Vec<(u32, f64)>,
    pub certificate: Option<Certificate>,
    /// Set when the sphere-minimum spot check found a nonpositive value, in
    /// which case no power can succeed.
    pub warning: Option<String>,
}

impl SearchReport {
    pub fn to_json(&self) -> String {
        let cert = self.certificate.as_ref().map(|c| {
            serde_json::from_str::<serde_json::Value>(&c.to_json()).expect("valid json")
        });
        let doc = json!({
            "p_id": self.p_id,
            "minimal_m": self.minimal_m,
            "first_psd_m": self.first_psd_m,
            "trace": self.trace.iter().map(|(m, e)| json!({"m": m, "min_eigenvalue": e})).collect::<Vec<_>>(),
            "certificate": cert,
            "warning": self.warning,
        });
        serde_json::to_string_pretty(&doc).expect("report serializes")
    }
}

/// Identifier of a polynomial: FNV-1a over its canonical JSON form.
pub fn poly_id(p: &HermitianBihomPoly<CRat>) -> String {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in poly_to_json(p).as_bytes() {
        h ^= *b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    format!("{h:016x}")
}

/// Scans `m = 0 ..= m_max` and returns the first power whose coefficient
/// matrix is positive definite, with its certificate. The trace records the
/// minimum eigenvalue at every power tried.
pub fn minimal_m_search(
    p: &HermitianBihomPoly<CRat>,
    m_max: u32,
    tol: f64,
) -> Result<SearchReport, CertError> {
    minimal_m_search_with(
        p,
        &SearchOptions {
            m_max,
            tol,
            ..SearchOptions::default()
        },
    )
}

pub fn minimal_m_search_with(
    p: &HermitianBihomPoly<CRat>,
    opts: &SearchOptions,
) -> Result<SearchReport, CertError> {
    if !(opts.tol > 0.0 && opts.tol < 1.0) {
        return Err(CertError::BadTolerance(opts.tol));
    }
    let mut report = SearchReport {
        p_id: poly_id(p),
        minimal_m: None,
        first_psd_m: None,
        trace: Vec::new(),
        certificate: None,
        warning: None,
    };
    if opts.min_check_samples > 0 {
        let min = sphere_min_estimate(p, opts.min_check_samples, opts.seed);
        if min <= 0.0 {
            report.warning = Some(format!(
                "sampled sphere minimum {min:.6e} is nonpositive; no power of r can make this a sum of squares"
            ));
        }
    }
    for m in 0..=opts.m_max {
        let q = p.r_power_times(m);
        let matrix = assemble_matrix(&q);
        if matrix.dim() > DIMENSION_GUARD && !opts.allow_large {
            return Err(CertError::DimensionGuard {
                dim: matrix.dim(),
                guard: DIMENSION_GUARD,
            });
        }
        let outcome = ldlt_pivoted(&matrix);
        let eig = super::eigen::eigendecompose(&matrix)?;
        let min_eig = eig.values.first().copied().unwrap_or(0.0);
        report.trace.push((m, min_eig));
        if report.first_psd_m.is_none()
            && !matches!(outcome, LdltOutcome::Indefinite)
        {
            report.first_psd_m = Some(m);
        }
        if matches!(outcome, LdltOutcome::PositiveDefinite(_)) {
            match extract_certificate_with(p, m, opts.tol, opts.allow_large) {
                Ok(cert) => {
                    report.minimal_m = Some(m);
                    report.certificate = Some(cert);
                    return Ok(report);
                }
                // Exact PD but floating eigenvalue below the relative
                // tolerance: keep scanning, later powers are better
                // conditioned.
                Err(CertError::NotPositiveDefinite { .. }) => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(report)
}
