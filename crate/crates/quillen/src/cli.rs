//! Command-line surface: polynomial ingestion, certification, minimal-power
//! search, asymptotics sweeps, and the lemma verification suite.
//!
//! Exit codes: 0 success, 1 parse/validation error, 2 not positive definite,
//! 3 search exhausted, 4 numeric failure.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num::complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::certifier::{extract_certificate, minimal_m_search_with, CertError, SearchOptions};
use crate::geometry::{
    ball_volume, derive_seed, fs_samples, kernel_power_integral, off_diagonal_integral,
    polar_integrate, ProjectivePoint,
};
use crate::operator::{
    abc_decomposition, mean_value_check, verify_schwarz_bound, McConfig, OpError, OperatorReport,
};
use crate::polyalg::scalar_support::rat_to_f64;
use crate::polyalg::{parse_poly_json, CRat, HermitianBihomPoly, HoloPoly, MultiIndex};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_NOT_PD: i32 = 2;
pub const EXIT_EXHAUSTED: i32 = 3;
pub const EXIT_NUMERIC: i32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Parser, Debug)]
#[command(name = "quillen", version, about = "Hermitian sum-of-squares certificates and integral-operator asymptotics on CP^n")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Base seed; every estimator draws from a derived sub-stream.
    #[arg(long, global = true, env = "QUILLEN_SEED", default_value_t = 0)]
    pub seed: u64,

    /// Monte Carlo samples per axis.
    #[arg(long, global = true, env = "QUILLEN_SAMPLES", default_value_t = 100_000)]
    pub samples: usize,

    /// Relative tolerance for eigenvalue/residual gates.
    #[arg(long, global = true, env = "QUILLEN_TOL", default_value_t = 1e-9)]
    pub tol: f64,

    /// Shard count; part of the reproducibility contract.
    #[arg(long, global = true, env = "QUILLEN_SHARDS", default_value_t = 10)]
    pub shards: usize,

    /// Also write the report to this path.
    #[arg(long, global = true, env = "QUILLEN_OUT")]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, env = "QUILLEN_FORMAT", value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Certify that r^m p is a sum of Hermitian squares at a fixed power m.
    Certify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        m: u32,
    },
    /// Find the smallest power m that admits a certificate.
    Search {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, env = "QUILLEN_M_MAX", default_value_t = 16)]
        m_max: u32,
    },
    /// Estimate the normalized operator ratio and its A/B/C split per power.
    Asymptotics {
        #[arg(long)]
        input: PathBuf,
        /// Comma-separated powers, each at least 2. An empty list is an
        /// empty (successful) report.
        #[arg(long, default_value = "")]
        m_list: String,
    },
    /// Run the integral-lemma verification suite.
    Lemmas,
}

/// Validated run settings shared by all subcommands.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub seed: u64,
    pub samples: usize,
    pub tol: f64,
    pub m_max: u32,
    pub shards: usize,
    #[serde(skip)]
    pub output_path: Option<PathBuf>,
}

impl RunConfig {
    fn mc(&self) -> McConfig {
        McConfig {
            seed: self.seed,
            samples: self.samples,
            shards: self.shards,
        }
    }

    /// Counts must be positive and the tolerance must sit in (0, 1). The
    /// lemma suite relaxes the lower end (`allow_zero_tol`) so a zeroed
    /// tolerance can act as a negative control instead of a usage error.
    fn validate(&self, allow_zero_tol: bool) -> Result<(), String> {
        if self.samples == 0 {
            return Err("samples must be positive".into());
        }
        if self.shards < 2 {
            return Err("shards must be at least 2".into());
        }
        if self.samples < self.shards {
            return Err("samples must be at least the shard count".into());
        }
        let tol_ok = if allow_zero_tol {
            self.tol >= 0.0 && self.tol < 1.0
        } else {
            self.tol > 0.0 && self.tol < 1.0
        };
        if !tol_ok {
            return Err(format!("tolerance {} outside (0, 1)", self.tol));
        }
        Ok(())
    }
}

fn version() -> &'static str {
    env!("CARGO_PKG_VERSION")
}

fn emit(text: &str, out: &Option<PathBuf>) -> i32 {
    println!("{text}");
    if let Some(path) = out {
        if let Err(e) = std::fs::write(path, format!("{text}\n")) {
            eprintln!("failed to write {}: {e}", path.display());
            return EXIT_NUMERIC;
        }
    }
    EXIT_OK
}

fn fail(code: i32, message: &str, detail: serde_json::Value) -> i32 {
    eprintln!("{message}");
    let doc = json!({ "error": message, "detail": detail });
    println!("{}", serde_json::to_string_pretty(&doc).expect("serializes"));
    code
}

fn load_poly(path: &PathBuf) -> Result<HermitianBihomPoly<CRat>, (i32, String)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| (EXIT_PARSE, format!("cannot read {}: {e}", path.display())))?;
    parse_poly_json(&text).map_err(|e| (EXIT_PARSE, format!("{}: {e}", path.display())))
}

fn cert_error_code(e: &CertError) -> i32 {
    match e {
        CertError::NotPositiveDefinite { .. } => EXIT_NOT_PD,
        CertError::BadTolerance(_) | CertError::DimensionGuard { .. } => EXIT_PARSE,
        CertError::ResidualTooLarge { .. } | CertError::Numeric(_) => EXIT_NUMERIC,
    }
}

fn op_error_code(e: &OpError) -> i32 {
    match e {
        OpError::NonpositiveDenominator { .. }
        | OpError::DegreeMismatch { .. }
        | OpError::DimensionMismatch(..)
        | OpError::BadConfig(_) => EXIT_PARSE,
        OpError::Numeric(_) => EXIT_NUMERIC,
    }
}

pub fn run(cli: Cli) -> i32 {
    let cfg = RunConfig {
        seed: cli.seed,
        samples: cli.samples,
        tol: cli.tol,
        m_max: match &cli.command {
            Command::Search { m_max, .. } => *m_max,
            _ => 0,
        },
        shards: cli.shards,
        output_path: cli.out.clone(),
    };
    match &cli.command {
        Command::Certify { input, m } => cmd_certify(input, *m, &cfg, cli.format),
        Command::Search { input, m_max } => cmd_search(input, *m_max, &cfg, cli.format),
        Command::Asymptotics { input, m_list } => cmd_asymptotics(input, m_list, &cfg, cli.format),
        Command::Lemmas => cmd_lemmas(&cfg, cli.format),
    }
}

pub fn cmd_certify(input: &PathBuf, m: u32, cfg: &RunConfig, format: Format) -> i32 {
    if let Err(e) = cfg.validate(false) {
        return fail(EXIT_PARSE, &e, json!(null));
    }
    let p = match load_poly(input) {
        Ok(p) => p,
        Err((code, msg)) => return fail(code, &msg, json!(null)),
    };
    match extract_certificate(&p, m, cfg.tol) {
        Ok(cert) => {
            let cert_json: serde_json::Value =
                serde_json::from_str(&cert.to_json()).expect("valid json");
            let doc = json!({
                "version": version(),
                "config": cfg,
                "command": "certify",
                "input": input.display().to_string(),
                "certificate": cert_json,
            });
            let text = match format {
                Format::Json => serde_json::to_string_pretty(&doc).expect("serializes"),
                Format::Table => {
                    let mut t = format!(
                        "m = {}   sections = {}   residual = {:.3e}   exact PD = {}\n",
                        cert.m,
                        cert.sections.len(),
                        cert.residual,
                        cert.exact_psd
                    );
                    t.push_str("eigenvalues:");
                    for v in &cert.eigenvalues {
                        t.push_str(&format!(" {v:.6}"));
                    }
                    t
                }
            };
            emit(&text, &cfg.output_path)
        }
        Err(e) => {
            let detail = match &e {
                CertError::NotPositiveDefinite { m, min_eigenvalue } => {
                    json!({ "m": m, "min_eigenvalue": min_eigenvalue })
                }
                _ => json!(null),
            };
            fail(cert_error_code(&e), &e.to_string(), detail)
        }
    }
}

pub fn cmd_search(input: &PathBuf, m_max: u32, cfg: &RunConfig, format: Format) -> i32 {
    if let Err(e) = cfg.validate(false) {
        return fail(EXIT_PARSE, &e, json!(null));
    }
    let p = match load_poly(input) {
        Ok(p) => p,
        Err((code, msg)) => return fail(code, &msg, json!(null)),
    };
    let opts = SearchOptions {
        m_max,
        tol: cfg.tol,
        seed: cfg.seed,
        min_check_samples: cfg.samples.min(4096),
        allow_large: false,
    };
    match minimal_m_search_with(&p, &opts) {
        Ok(report) => {
            let report_json: serde_json::Value =
                serde_json::from_str(&report.to_json()).expect("valid json");
            let doc = json!({
                "version": version(),
                "config": cfg,
                "command": "search",
                "input": input.display().to_string(),
                "report": report_json,
            });
            let text = match format {
                Format::Json => serde_json::to_string_pretty(&doc).expect("serializes"),
                Format::Table => {
                    let mut t = format!(
                        "p_id = {}   minimal_m = {:?}   first_psd_m = {:?}\n",
                        report.p_id, report.minimal_m, report.first_psd_m
                    );
                    t.push_str("  m   min eigenvalue\n");
                    for (m, e) in &report.trace {
                        t.push_str(&format!("{m:>3}   {e:+.6e}\n"));
                    }
                    if let Some(w) = &report.warning {
                        t.push_str(&format!("warning: {w}\n"));
                    }
                    t.trim_end().to_string()
                }
            };
            let code = emit(&text, &cfg.output_path);
            if code != EXIT_OK {
                return code;
            }
            if report.minimal_m.is_none() {
                EXIT_EXHAUSTED
            } else {
                EXIT_OK
            }
        }
        Err(e) => fail(cert_error_code(&e), &e.to_string(), json!(null)),
    }
}

pub fn cmd_asymptotics(input: &PathBuf, m_spec: &str, cfg: &RunConfig, format: Format) -> i32 {
    if let Err(e) = cfg.validate(false) {
        return fail(EXIT_PARSE, &e, json!(null));
    }
    let m_list: Vec<u32> = match m_spec
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::parse)
        .collect()
    {
        Ok(v) => v,
        Err(e) => return fail(EXIT_PARSE, &format!("bad m-list {m_spec:?}: {e}"), json!(null)),
    };
    if let Some(m) = m_list.iter().find(|&&m| m < 2) {
        return fail(
            EXIT_PARSE,
            &format!("asymptotics needs m >= 2 (the default cutoff log m / sqrt m vanishes), got {m}"),
            json!(null),
        );
    }
    let p = match load_poly(input) {
        Ok(p) => p,
        Err((code, msg)) => return fail(code, &msg, json!(null)),
    };
    let pf = p.to_float();
    let n = pf.n();
    let d = pf.bidegree();
    let mut reports: Vec<OperatorReport> = Vec::new();
    for &m in &m_list {
        // Reference section Z_0^{m+d}; the ratio target is section-free.
        let mut idx = vec![0u32; n + 1];
        idx[0] = m + d;
        let s: HoloPoly<Complex64> = HoloPoly::monomial(n, MultiIndex::new(idx));
        match abc_decomposition(&s, &pf, m, None, &cfg.mc()) {
            Ok(r) => reports.push(r),
            Err(e) => return fail(op_error_code(&e), &e.to_string(), json!({ "m": m })),
        }
    }
    let doc = json!({
        "version": version(),
        "config": cfg,
        "command": "asymptotics",
        "input": input.display().to_string(),
        "reports": reports,
    });
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&doc).expect("serializes"),
        Format::Table => {
            let mut t = String::from(
                "  m      ratio    +-sem          A            B            C        R(m)\n",
            );
            for r in &reports {
                t.push_str(&format!(
                    "{:>3}   {:>8.5}  {:>7.1e}   {:>10.4e}  {:>10.4e}  {:>10.4e}   {:.4}\n",
                    r.m, r.ratio, r.error_bars.ratio, r.a, r.b, r.c, r.r_used
                ));
            }
            t.trim_end().to_string()
        }
    };
    emit(&text, &cfg.output_path)
}

#[derive(Clone, Debug, Serialize)]
struct Gate {
    name: String,
    passed: bool,
    detail: String,
}

fn gate(gates: &mut Vec<Gate>, name: impl Into<String>, passed: bool, detail: String) {
    gates.push(Gate {
        name: name.into(),
        passed,
        detail,
    });
}

/// Runs the quadrature cross-checks and the randomized Schwarz/mean-value
/// batteries. A zero tolerance turns the quadrature gates into guaranteed
/// failures (negative control).
pub fn cmd_lemmas(cfg: &RunConfig, format: Format) -> i32 {
    if let Err(e) = cfg.validate(true) {
        return fail(EXIT_PARSE, &e, json!(null));
    }
    let mut gates: Vec<Gate> = Vec::new();
    let quad_tol = 10.0 * cfg.tol;

    // Kernel integral: quadrature vs n! m! / (m+n)!.
    let mut worst = 0.0f64;
    for n in [1usize, 2] {
        for m in [0u32, 1, 5, 10, 25] {
            let (exact, quad) = kernel_power_integral(m, n);
            let rel = (quad - rat_to_f64(&exact)).abs() / rat_to_f64(&exact);
            worst = worst.max(rel);
        }
    }
    gate(
        &mut gates,
        "kernel_integral",
        worst <= quad_tol,
        format!("worst relative error {worst:.3e} vs gate {quad_tol:.3e}"),
    );

    // Off-diagonal integral against (1 + R^2)^{-m}.
    let mut worst = f64::NEG_INFINITY;
    let mut off_ok = true;
    for m in [5u32, 10, 20] {
        for r in [0.5f64, 1.0] {
            match off_diagonal_integral(m, 1, r) {
                Ok(v) => {
                    let margin = v - (1.0 + r * r).powi(-(m as i32));
                    worst = worst.max(margin);
                }
                Err(_) => off_ok = false,
            }
        }
    }
    gate(
        &mut gates,
        "off_diagonal_bound",
        off_ok && worst <= quad_tol,
        format!("worst bound margin {worst:.3e} vs gate {quad_tol:.3e}"),
    );

    // Ball volume: closed form vs radial quadrature, and the R^{2n} bound.
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(cfg.seed, "lemmas-ball", 0));
    let mut worst_quad = 0.0f64;
    let mut bound_ok = true;
    for _ in 0..50 {
        let r: f64 = rng.gen_range(0.05..3.0);
        let n: usize = rng.gen_range(1..=3);
        let v = ball_volume(r, n);
        if v > r.powi(2 * n as i32) + 1e-12 {
            bound_ok = false;
        }
        let power = -(n as i32 + 1);
        if let Ok(q) = polar_integrate(move |x| (1.0 + x * x).powi(power), n, r) {
            worst_quad = worst_quad.max((q - v).abs());
        } else {
            bound_ok = false;
        }
    }
    gate(
        &mut gates,
        "ball_volume",
        bound_ok && worst_quad <= 1e-10 + quad_tol,
        format!("worst quadrature deviation {worst_quad:.3e}, R^2n bound {}", if bound_ok { "ok" } else { "violated" }),
    );

    // 100 randomized Schwarz trials.
    let trial_samples = cfg.samples.min(20_000).max(cfg.shards);
    let mut failed = 0usize;
    for t in 0..100u64 {
        let seed = derive_seed(cfg.seed, "lemmas-schwarz", t);
        let mut trng = ChaCha8Rng::seed_from_u64(seed);
        let n: usize = trng.gen_range(1..=2);
        let a: f64 = trng.gen_range(0.0..2.0);
        let b: f64 = trng.gen_range(0.0..2.0);
        let k: i32 = trng.gen_range(1..=4);
        let c0: f64 = trng.gen_range(0.0..1.0);
        let c1: f64 = trng.gen_range(0.0..2.0);
        let coord: usize = trng.gen_range(0..=n);
        let r0 = if trng.gen_bool(0.2) {
            f64::INFINITY
        } else {
            trng.gen_range(0.2..2.0)
        };
        let mc = McConfig {
            seed,
            samples: trial_samples,
            shards: cfg.shards,
        };
        let ck = verify_schwarz_bound(
            move |x: &ProjectivePoint, y: &ProjectivePoint| {
                a + b * x.pairing(y).norm_sqr().powi(k)
            },
            move |x: &ProjectivePoint| c0 + c1 * x.coords()[coord].norm_sqr(),
            r0,
            n,
            &mc,
        );
        match ck {
            Ok(ck) if ck.holds => {}
            _ => failed += 1,
        }
    }
    gate(
        &mut gates,
        "schwarz_trials",
        failed == 0,
        format!("{failed} of 100 trials failed"),
    );

    // 20 mean-value trials: h = (1 + r^2)^{-m}, random holomorphic f of
    // degree <= 3 in the chart, random centers.
    let mut failed = 0usize;
    for t in 0..20u64 {
        let seed = derive_seed(cfg.seed, "lemmas-meanvalue", t);
        let mut trng = ChaCha8Rng::seed_from_u64(seed);
        let n: usize = trng.gen_range(1..=2);
        let m: i32 = trng.gen_range(2..=10);
        let r0 = if trng.gen_bool(0.25) {
            f64::INFINITY
        } else {
            trng.gen_range(0.6..1.5)
        };
        let coeffs: Vec<Complex64> = (0..4)
            .map(|_| Complex64::new(trng.gen_range(-1.0..1.0), trng.gen_range(-1.0..1.0)))
            .collect();
        let x = fs_samples(n, 1, derive_seed(seed, "center", 0)).points()[0].clone();
        let mc = McConfig {
            seed,
            samples: trial_samples,
            shards: cfg.shards,
        };
        let f = move |z: &[Complex64]| {
            coeffs[0] + coeffs[1] * z[0] + coeffs[2] * z[0] * z[0]
                + coeffs[3] * z[0] * z[0] * z[0]
        };
        match mean_value_check(move |d| (1.0 + d * d).powi(-m), f, &x, r0, &mc) {
            Ok(e) => {
                if e.value.norm() > 3.0 * e.std_err.max(1e-12) {
                    failed += 1;
                }
            }
            Err(_) => failed += 1,
        }
    }
    gate(
        &mut gates,
        "mean_value_trials",
        failed == 0,
        format!("{failed} of 20 trials failed"),
    );

    let passed = gates.iter().all(|g| g.passed);
    let doc = json!({
        "version": version(),
        "config": cfg,
        "command": "lemmas",
        "gates": gates,
        "passed": passed,
    });
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&doc).expect("serializes"),
        Format::Table => {
            let mut t = String::new();
            for g in &gates {
                t.push_str(&format!(
                    "[{}] {:<18} {}\n",
                    if g.passed { "pass" } else { "FAIL" },
                    g.name,
                    g.detail
                ));
            }
            t.push_str(if passed { "all gates passed" } else { "suite FAILED" });
            t
        }
    };
    let code = emit(&text, &cfg.output_path);
    if code != EXIT_OK {
        return code;
    }
    if passed {
        EXIT_OK
    } else {
        EXIT_NUMERIC
    }
}
