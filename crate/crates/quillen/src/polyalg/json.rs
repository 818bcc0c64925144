use num::rational::BigRational;
use num::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::multiindex::MultiIndex;
use super::poly::HermitianBihomPoly;
use super::scalar::{CRat, Coeff};

/// Interchange schema: `{"n": int, "d": int, "terms": [{"alpha": [...],
/// "beta": [...], "re": "p/q", "im": "p/q"}]}`. Only pairs with
/// `alpha <= beta` in graded lex need be listed; the conjugate-transpose
/// term is implied.
#[derive(Serialize, Deserialize)]
struct PolyJson {
    n: usize,
    d: u32,
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    alpha: Vec<u32>,
    beta: Vec<u32>,
    re: String,
    im: String,
}

#[derive(Debug, Error)]
pub enum PolyJsonError {
    #[error("malformed polynomial JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("term {index}: {message}")]
    Term { index: usize, message: String },
    #[error("terms {first} and {second} violate Hermitian symmetry")]
    HermitianConflict { first: usize, second: usize },
}

/// Parses the polynomial JSON format into an exact-rational polynomial.
pub fn parse_poly_json(text: &str) -> Result<HermitianBihomPoly<CRat>, PolyJsonError> {
    let raw: PolyJson = serde_json::from_str(text)?;
    let mut entries: Vec<((MultiIndex, MultiIndex), CRat, usize)> = Vec::new();
    for (i, t) in raw.terms.iter().enumerate() {
        let term_err = |message: String| PolyJsonError::Term { index: i, message };
        if t.alpha.len() != raw.n + 1 || t.beta.len() != raw.n + 1 {
            return Err(term_err(format!(
                "expected {} exponents, got alpha: {}, beta: {}",
                raw.n + 1,
                t.alpha.len(),
                t.beta.len()
            )));
        }
        let alpha = MultiIndex::new(t.alpha.clone());
        let beta = MultiIndex::new(t.beta.clone());
        if alpha.length() != raw.d || beta.length() != raw.d {
            return Err(term_err(format!(
                "bidegree ({}, {}) does not match d = {}",
                alpha.length(),
                beta.length(),
                raw.d
            )));
        }
        let re = CRat::parse_rational(&t.re).map_err(&term_err)?;
        let im = CRat::parse_rational(&t.im).map_err(&term_err)?;
        if alpha == beta && !im.is_zero() {
            return Err(term_err(
                "diagonal term must have zero imaginary part".into(),
            ));
        }
        entries.push(((alpha, beta), CRat::new(re, im), i));
    }

    // Mirror each listed off-diagonal term; explicit duplicates must agree
    // with the conjugate of their transpose.
    let mut map: std::collections::BTreeMap<(MultiIndex, MultiIndex), (CRat, usize)> =
        std::collections::BTreeMap::new();
    for ((alpha, beta), c, i) in entries {
        for (key, val) in [
            ((alpha.clone(), beta.clone()), c.clone()),
            ((beta, alpha), c.conj()),
        ] {
            if let Some((prev, j)) = map.get(&key) {
                if *prev != val {
                    return Err(PolyJsonError::HermitianConflict {
                        first: *j,
                        second: i,
                    });
                }
            } else {
                map.insert(key, (val, i));
            }
        }
    }

    HermitianBihomPoly::from_terms(raw.n, raw.d, map.into_iter().map(|(k, (c, _))| (k, c)))
        .map_err(|e| PolyJsonError::Term {
            index: 0,
            message: e.to_string(),
        })
}

/// Serializes to the canonical form of the interchange format: terms with
/// `alpha <= beta` only, in graded-lex order.
pub fn poly_to_json(p: &HermitianBihomPoly<CRat>) -> String {
    let terms: Vec<TermJson> = p
        .terms()
        .filter(|((a, b), _)| a <= b)
        .map(|((a, b), c)| TermJson {
            alpha: a.entries().to_vec(),
            beta: b.entries().to_vec(),
            re: rat_string(&c.re),
            im: rat_string(&c.im),
        })
        .collect();
    let doc = PolyJson {
        n: p.n(),
        d: p.bidegree(),
        terms,
    };
    serde_json::to_string_pretty(&doc).expect("serialization cannot fail")
}

fn rat_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    #[test]
    fn round_trip_presets() {
        for p in [
            HermitianBihomPoly::make_r(2),
            presets::p_dangelo(),
            presets::p_eps_int(1),
            HermitianBihomPoly::unit(1),
        ] {
            let text = poly_to_json(&p);
            let back = parse_poly_json(&text).unwrap();
            assert_eq!(back, p);
        }
    }

    #[test]
    fn implied_conjugate_terms() {
        let text = r#"{"n": 1, "d": 1,
            "terms": [{"alpha": [1,0], "beta": [0,1], "re": "1/2", "im": "1/3"},
                      {"alpha": [1,0], "beta": [1,0], "re": "2", "im": "0"}]}"#;
        let p = parse_poly_json(text).unwrap();
        assert_eq!(p.num_terms(), 3);
        assert!(p.is_hermitian());
    }

    #[test]
    fn rejects_hermitian_violation() {
        let text = r#"{"n": 1, "d": 1,
            "terms": [{"alpha": [1,0], "beta": [0,1], "re": "1", "im": "0"},
                      {"alpha": [0,1], "beta": [1,0], "re": "2", "im": "0"}]}"#;
        assert!(matches!(
            parse_poly_json(text),
            Err(PolyJsonError::HermitianConflict { .. })
        ));
    }

    #[test]
    fn rejects_imaginary_diagonal() {
        let text = r#"{"n": 1, "d": 1,
            "terms": [{"alpha": [1,0], "beta": [1,0], "re": "1", "im": "1"}]}"#;
        assert!(matches!(parse_poly_json(text), Err(PolyJsonError::Term { .. })));
    }

    #[test]
    fn rejects_bad_degree() {
        let text = r#"{"n": 1, "d": 2,
            "terms": [{"alpha": [1,0], "beta": [1,0], "re": "1", "im": "0"}]}"#;
        assert!(matches!(parse_poly_json(text), Err(PolyJsonError::Term { .. })));
    }
}
