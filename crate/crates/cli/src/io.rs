//! JSON formats for polynomials and multivectors.
//!
//! ```json
//! {"m": 3, "terms": [{"alpha": [2, 0, 0], "blade": [1, 2], "coeff": "-1/3"}]}
//! ```
//!
//! `blade` lists strictly increasing generator indices (1-based, `[]` for the
//! scalar); `coeff` is always a string `"p"` or `"p/q"`. Multivectors use the
//! same layout without `alpha`.

use std::fs;
use std::io::Read;
use std::path::Path;

use hfischer_core::rational::{format as format_rational, parse as parse_rational};
use hfischer_core::{Blade, CliffordPoly, MultiIndex, Multivector};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub alpha: Vec<u32>,
    pub blade: Vec<usize>,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyJson {
    pub m: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BladeTermJson {
    pub blade: Vec<usize>,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MultivectorJson {
    pub m: usize,
    pub terms: Vec<BladeTermJson>,
}

impl From<&CliffordPoly> for PolyJson {
    fn from(p: &CliffordPoly) -> Self {
        PolyJson {
            m: p.dim(),
            terms: p
                .terms()
                .map(|(key, c)| TermJson {
                    alpha: key.alpha.exponents().iter().map(|&e| e as u32).collect(),
                    blade: key.blade.indices(),
                    coeff: format_rational(c),
                })
                .collect(),
        }
    }
}

impl From<&Multivector> for MultivectorJson {
    fn from(v: &Multivector) -> Self {
        MultivectorJson {
            m: v.dim(),
            terms: v
                .terms()
                .map(|(b, c)| BladeTermJson {
                    blade: b.indices(),
                    coeff: format_rational(c),
                })
                .collect(),
        }
    }
}

fn invalid(source: &str, at: String, message: impl std::fmt::Display) -> CliError {
    CliError::Input {
        input: source.to_string(),
        message: format!("{at}: {message}"),
    }
}

impl PolyJson {
    /// `source` names the input in error messages.
    pub fn to_poly(&self, source: &str) -> Result<CliffordPoly, CliError> {
        let m = self.m;
        let mut terms = Vec::with_capacity(self.terms.len());
        for (i, t) in self.terms.iter().enumerate() {
            if t.alpha.len() != m {
                return Err(invalid(
                    source,
                    format!("terms[{i}].alpha"),
                    format!("expected {m} exponents, found {}", t.alpha.len()),
                ));
            }
            let alpha = MultiIndex::new(&t.alpha).map_err(|e| invalid(source, format!("terms[{i}].alpha"), e))?;
            let blade = Blade::from_indices(&t.blade, m).map_err(|e| invalid(source, format!("terms[{i}].blade"), e))?;
            let coeff = parse_rational(&t.coeff).map_err(|e| invalid(source, format!("terms[{i}].coeff"), e))?;
            terms.push((alpha, blade, coeff));
        }
        CliffordPoly::from_terms(m, terms).map_err(|e| invalid(source, "m".into(), e))
    }
}

impl MultivectorJson {
    pub fn to_multivector(&self, source: &str) -> Result<Multivector, CliError> {
        let m = self.m;
        let mut out = Multivector::zero(m);
        hfischer_core::clifford::check_dim(m).map_err(|e| invalid(source, "m".into(), e))?;
        for (i, t) in self.terms.iter().enumerate() {
            let blade = Blade::from_indices(&t.blade, m).map_err(|e| invalid(source, format!("terms[{i}].blade"), e))?;
            let coeff = parse_rational(&t.coeff).map_err(|e| invalid(source, format!("terms[{i}].coeff"), e))?;
            out = out
                .add(&Multivector::blade(m, blade, coeff))
                .map_err(|e| invalid(source, format!("terms[{i}]"), e))?;
        }
        Ok(out)
    }
}

fn syntax(source: &str, e: serde_json::Error) -> CliError {
    CliError::Json {
        input: source.to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

/// Parses a polynomial from JSON text.
pub fn parse_poly(text: &str, source: &str) -> Result<CliffordPoly, CliError> {
    let json: PolyJson = serde_json::from_str(text).map_err(|e| syntax(source, e))?;
    json.to_poly(source)
}

pub fn parse_multivector(text: &str, source: &str) -> Result<Multivector, CliError> {
    let json: MultivectorJson = serde_json::from_str(text).map_err(|e| syntax(source, e))?;
    json.to_multivector(source)
}

/// Reads `path`, or standard input when `path` is `-`.
pub fn read_input(path: &Path) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text).map_err(|e| CliError::Io {
            path: "-".into(),
            message: e.to_string(),
        })?;
        return Ok(text);
    }
    fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

pub fn read_poly(path: &Path) -> Result<CliffordPoly, CliError> {
    parse_poly(&read_input(path)?, &path.display().to_string())
}

pub fn poly_to_json(p: &CliffordPoly) -> String {
    serde_json::to_string_pretty(&PolyJson::from(p)).expect("plain data serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use hfischer_core::rational::ratio;

    #[test]
    fn round_trip() {
        let text = r#"{"m": 3, "terms": [{"alpha": [2, 0, 0], "blade": [1, 2], "coeff": "-2/6"},
                                         {"alpha": [0, 0, 0], "blade": [], "coeff": "5"}]}"#;
        let p = parse_poly(text, "t").unwrap();
        assert_eq!(p.len(), 2);
        let again = parse_poly(&poly_to_json(&p), "t").unwrap();
        assert_eq!(again, p);
        let json = PolyJson::from(&p);
        assert!(json.terms.iter().any(|t| t.coeff == "-1/3"));
        assert!(json.terms.iter().any(|t| t.coeff == "5"));
    }

    #[test]
    fn multivector_round_trip() {
        let v = Multivector::blade(2, Blade::from_indices(&[1, 2], 2).unwrap(), ratio(3, 4));
        let text = serde_json::to_string(&MultivectorJson::from(&v)).unwrap();
        assert_eq!(parse_multivector(&text, "t").unwrap(), v);
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse_poly("{\"m\": 3,\n \"terms\": [ }", "in.json").unwrap_err();
        match err {
            CliError::Json { line, column, .. } => {
                assert_eq!(line, 2);
                assert!(column > 0);
            }
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn semantic_errors_name_the_term() {
        let bad = [
            (r#"{"m": 2, "terms": [{"alpha": [1], "blade": [], "coeff": "1"}]}"#, "terms[0].alpha"),
            (r#"{"m": 2, "terms": [{"alpha": [1, 0], "blade": [2, 1], "coeff": "1"}]}"#, "terms[0].blade"),
            (r#"{"m": 2, "terms": [{"alpha": [1, 0], "blade": [3], "coeff": "1"}]}"#, "terms[0].blade"),
            (r#"{"m": 2, "terms": [{"alpha": [1, 0], "blade": [], "coeff": "1/0"}]}"#, "terms[0].coeff"),
            (r#"{"m": 2, "terms": [{"alpha": [1, 0], "blade": [], "coeff": 1.5}]}"#, ""),
            (r#"{"m": 9, "terms": []}"#, "m"),
        ];
        for (text, at) in bad {
            let msg = parse_poly(text, "in.json").unwrap_err().to_string();
            assert!(msg.contains(at), "{msg}");
        }
    }
}
