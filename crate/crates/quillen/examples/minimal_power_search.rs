//! Minimal-power search across a family of sphere-positive polynomials.
//!
//! `p_eps = (|Z0|^2 - |Z1|^2)^2 + eps |Z0 Z1|^2` has sphere minimum
//! `eps / 4`: the smaller the positivity margin, the larger the power of
//! `r = |Z0|^2 + |Z1|^2` needed before `r^m p_eps` becomes a sum of
//! Hermitian squares. At `eps = 0` the polynomial vanishes on a real
//! hypersurface and no power ever works.

use num::rational::BigRational;
use quillen::certifier::minimal_m_search;
use quillen::presets::{p_dangelo, p_eps};

fn main() {
    for (label, num, den) in [("2", 2, 1), ("1", 1, 1), ("1/2", 1, 2), ("1/4", 1, 4)] {
        let p = p_eps(BigRational::new(num.into(), den.into()));
        let report = minimal_m_search(&p, 32, 1e-9).expect("search runs");
        println!(
            "eps = {label:>3}: minimal m = {:?}, first PSD m = {:?}",
            report.minimal_m, report.first_psd_m
        );
    }

    let report = minimal_m_search(&p_dangelo(), 8, 1e-9).expect("search runs");
    println!(
        "eps =   0: minimal m = {:?} after scanning m <= 8 (trace of minimum eigenvalues: {:?})",
        report.minimal_m,
        report.trace.iter().map(|(_, e)| *e).collect::<Vec<_>>()
    );
}
