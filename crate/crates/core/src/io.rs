//! Text formats: coefficient lists, polynomial documents and operator specs.
//!
//! Operator specs look like `gauss:alpha=0.5`, `cosstep:alpha=0.3,N=4`,
//! `cosaffine:lambda=0,theta=1.0`, `laguerre:q=0.5`,
//! `exppower:alpha=0.3,p=1.5` or `explicit:1,0.5,0.25`.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::operators::MultiplierSequence;
use crate::poly::{PolyError, RealPolynomial, SectorRootSpec};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IoError {
    #[error("empty coefficient list")]
    Empty,
    #[error("coefficient {index}: cannot parse {token:?} as a finite number")]
    BadNumber { index: usize, token: String },
    #[error("line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("field `{field}`: {message}")]
    Field { field: String, message: String },
    #[error("unknown operator {0:?} (expected gauss, cosstep, cosaffine, laguerre, exppower or explicit)")]
    UnknownOperator(String),
    #[error("operator spec {0:?} must look like name:params")]
    MalformedOperator(String),
    #[error("{op}: missing parameter `{name}`")]
    MissingParameter { op: &'static str, name: &'static str },
    #[error("{op}: unexpected parameter `{name}`")]
    UnexpectedParameter { op: &'static str, name: String },
    #[error("{op}: parameter `{name}` has invalid value {value:?}")]
    BadParameter { op: &'static str, name: String, value: String },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

fn parse_number(token: &str, index: usize) -> Result<f64, IoError> {
    match token.trim().parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(IoError::BadNumber { index, token: token.trim().to_string() }),
    }
}

fn parse_list(s: &str) -> Result<Vec<f64>, IoError> {
    if s.trim().is_empty() {
        return Err(IoError::Empty);
    }
    s.split(',').enumerate().map(|(i, t)| parse_number(t, i)).collect()
}

/// `"c0,c1,…"` in ascending order.
pub fn parse_coefficients(s: &str) -> Result<RealPolynomial, IoError> {
    Ok(RealPolynomial::new(parse_list(s)?)?)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CoeffsDoc {
    coeffs: Vec<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RootsDoc {
    roots: RootsForm,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RootsForm {
    #[serde(default)]
    real: Vec<f64>,
    #[serde(default)]
    pairs: Vec<(f64, f64)>,
    #[serde(default = "one")]
    lead: f64,
}

fn one() -> f64 {
    1.0
}

#[derive(Serialize)]
struct CoeffsOut<'a> {
    coeffs: &'a [f64],
}

fn json_error(e: serde_json::Error) -> IoError {
    IoError::Json { line: e.line(), column: e.column(), message: e.to_string() }
}

fn field_error(field: &str, e: serde_json::Error) -> IoError {
    IoError::Field { field: field.to_string(), message: e.to_string() }
}

/// Reads `{"coeffs": [...]}` or `{"roots": {"real": [...], "pairs": [[a, b], ...], "lead": L}}`.
pub fn parse_poly_document(text: &str) -> Result<RealPolynomial, IoError> {
    let value: Value = serde_json::from_str(text).map_err(json_error)?;
    let Value::Object(map) = &value else {
        return Err(IoError::Field { field: "<root>".into(), message: "expected a JSON object".into() });
    };
    if map.contains_key("coeffs") {
        let doc: CoeffsDoc = serde_json::from_value(value).map_err(|e| field_error("coeffs", e))?;
        if doc.coeffs.is_empty() {
            return Err(IoError::Empty);
        }
        Ok(RealPolynomial::new(doc.coeffs)?)
    } else if map.contains_key("roots") {
        let doc: RootsDoc = serde_json::from_value(value).map_err(|e| field_error("roots", e))?;
        let spec = SectorRootSpec::new(doc.roots.real, doc.roots.pairs)?;
        if spec.degree() == 0 {
            return Err(IoError::Field { field: "roots".into(), message: "no roots given".into() });
        }
        Ok(RealPolynomial::from_sector_roots(&spec, doc.roots.lead)?)
    } else {
        Err(IoError::Field {
            field: "<root>".into(),
            message: "expected a `coeffs` or `roots` field".into(),
        })
    }
}

/// `{"coeffs": [...]}`.
pub fn write_poly_document(p: &RealPolynomial) -> String {
    serde_json::to_string(&CoeffsOut { coeffs: p.coeffs() }).expect("finite coefficients serialize")
}

struct Params<'a> {
    op: &'static str,
    pairs: Vec<(&'a str, &'a str)>,
}

impl<'a> Params<'a> {
    fn parse(op: &'static str, body: &'a str) -> Result<Self, IoError> {
        let mut pairs: Vec<(&str, &str)> = Vec::new();
        for item in body.split(',') {
            let (k, v) = item.split_once('=').ok_or_else(|| IoError::BadParameter {
                op,
                name: item.trim().to_string(),
                value: String::new(),
            })?;
            let k = k.trim();
            if pairs.iter().any(|(seen, _)| *seen == k) {
                return Err(IoError::UnexpectedParameter { op, name: format!("{k} (repeated)") });
            }
            pairs.push((k, v.trim()));
        }
        Ok(Params { op, pairs })
    }

    fn take(&mut self, name: &'static str) -> Result<&'a str, IoError> {
        let pos = self
            .pairs
            .iter()
            .position(|(k, _)| *k == name)
            .ok_or(IoError::MissingParameter { op: self.op, name })?;
        Ok(self.pairs.remove(pos).1)
    }

    fn real(&mut self, name: &'static str) -> Result<f64, IoError> {
        let op = self.op;
        let raw = self.take(name)?;
        match raw.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(v),
            _ => Err(IoError::BadParameter { op, name: name.into(), value: raw.into() }),
        }
    }

    fn positive_int(&mut self, name: &'static str) -> Result<u32, IoError> {
        let op = self.op;
        let raw = self.take(name)?;
        match raw.parse::<u32>() {
            Ok(v) if v > 0 => Ok(v),
            _ => Err(IoError::BadParameter { op, name: name.into(), value: raw.into() }),
        }
    }

    fn finish(self) -> Result<(), IoError> {
        match self.pairs.first() {
            Some((k, _)) => Err(IoError::UnexpectedParameter { op: self.op, name: k.to_string() }),
            None => Ok(()),
        }
    }
}

/// Parses an operator spec. Parameter constraints (such as `-1 < q < 1`)
/// are checked here too, so bad specs fail before any computation.
pub fn parse_operator(spec: &str) -> Result<MultiplierSequence, IoError> {
    let (name, body) = spec
        .trim()
        .split_once(':')
        .ok_or_else(|| IoError::MalformedOperator(spec.to_string()))?;
    let op: &'static str = match name.trim() {
        "gauss" => "gauss",
        "cosstep" => "cosstep",
        "cosaffine" => "cosaffine",
        "laguerre" => "laguerre",
        "exppower" => "exppower",
        "explicit" => "explicit",
        other => return Err(IoError::UnknownOperator(other.to_string())),
    };
    let ms = if op == "explicit" {
        MultiplierSequence::Explicit { values: parse_list(body)? }
    } else {
        let mut p = Params::parse(op, body)?;
        let ms = match op {
            "gauss" => MultiplierSequence::Gauss { alpha: p.real("alpha")? },
            "cosstep" => MultiplierSequence::CosineStep { alpha: p.real("alpha")?, n: p.positive_int("N")? },
            "cosaffine" => MultiplierSequence::CosineAffine { lambda: p.real("lambda")?, theta: p.real("theta")? },
            "laguerre" => MultiplierSequence::LaguerreQ { q: p.real("q")? },
            _ => MultiplierSequence::ExpPower { alpha: p.real("alpha")?, p: p.real("p")? },
        };
        p.finish()?;
        ms
    };
    ms.validate().map_err(|e| IoError::BadParameter { op, name: "<spec>".into(), value: e.to_string() })?;
    Ok(ms)
}

/// Inverse of [`parse_operator`].
pub fn format_operator(ms: &MultiplierSequence) -> String {
    match ms {
        MultiplierSequence::Gauss { alpha } => format!("gauss:alpha={alpha}"),
        MultiplierSequence::CosineStep { alpha, n } => format!("cosstep:alpha={alpha},N={n}"),
        MultiplierSequence::CosineAffine { lambda, theta } => format!("cosaffine:lambda={lambda},theta={theta}"),
        MultiplierSequence::LaguerreQ { q } => format!("laguerre:q={q}"),
        MultiplierSequence::ExpPower { alpha, p } => format!("exppower:alpha={alpha},p={p}"),
        MultiplierSequence::Explicit { values } => {
            let list: Vec<String> = values.iter().map(|v| v.to_string()).collect();
            format!("explicit:{}", list.join(","))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coefficient_lists() {
        assert_eq!(parse_coefficients("2,-2,1").unwrap().coeffs(), &[2.0, -2.0, 1.0]);
        assert_eq!(parse_coefficients(" 1 , 0 , 1 ").unwrap().degree(), 2);
        assert_eq!(parse_coefficients("1,0,0").unwrap().degree(), 0);
        assert_eq!(parse_coefficients(""), Err(IoError::Empty));
        assert_eq!(
            parse_coefficients("1,x,2"),
            Err(IoError::BadNumber { index: 1, token: "x".into() })
        );
        assert!(matches!(parse_coefficients("1,inf"), Err(IoError::BadNumber { index: 1, .. })));
        assert!(matches!(parse_coefficients("0,0"), Err(IoError::Poly(PolyError::ZeroPolynomial))));
    }

    #[test]
    fn documents() {
        let p = parse_poly_document(r#"{"coeffs": [2, -2, 1]}"#).unwrap();
        assert_eq!(p.coeffs(), &[2.0, -2.0, 1.0]);
        assert_eq!(write_poly_document(&p), r#"{"coeffs":[2.0,-2.0,1.0]}"#);
        let q = parse_poly_document(r#"{"roots": {"pairs": [[1, 1]], "lead": 2}}"#).unwrap();
        assert_eq!(q.coeffs(), &[4.0, -4.0, 2.0]);
        let r = parse_poly_document(r#"{"roots": {"real": [1, 2]}}"#).unwrap();
        assert_eq!(r.coeffs(), &[2.0, -3.0, 1.0]);
    }

    #[test]
    fn document_errors() {
        match parse_poly_document("{\n  \"coeffs\": [1,\n  ]\n}") {
            Err(IoError::Json { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_poly_document(r#"{"coeffs": "1,2"}"#), Err(IoError::Field { .. })));
        assert!(matches!(parse_poly_document(r#"{"coeffs": [1], "x": 1}"#), Err(IoError::Field { .. })));
        assert!(matches!(parse_poly_document(r#"{"poly": [1]}"#), Err(IoError::Field { .. })));
        assert!(matches!(parse_poly_document("[1, 2]"), Err(IoError::Field { .. })));
        assert!(matches!(parse_poly_document(r#"{"coeffs": []}"#), Err(IoError::Empty)));
        assert!(matches!(
            parse_poly_document(r#"{"roots": {"pairs": [[-1, 1]]}}"#),
            Err(IoError::Poly(PolyError::NonpositivePair { .. }))
        ));
    }

    #[test]
    fn operator_specs() {
        assert_eq!(parse_operator("gauss:alpha=0.5").unwrap(), MultiplierSequence::Gauss { alpha: 0.5 });
        assert_eq!(
            parse_operator("cosstep:alpha=0.3,N=4").unwrap(),
            MultiplierSequence::CosineStep { alpha: 0.3, n: 4 }
        );
        assert_eq!(
            parse_operator("cosaffine:lambda=0,theta=1.0").unwrap(),
            MultiplierSequence::CosineAffine { lambda: 0.0, theta: 1.0 }
        );
        assert_eq!(parse_operator("laguerre:q=0.5").unwrap(), MultiplierSequence::LaguerreQ { q: 0.5 });
        assert_eq!(
            parse_operator("exppower:alpha=0.3,p=1.5").unwrap(),
            MultiplierSequence::ExpPower { alpha: 0.3, p: 1.5 }
        );
        assert_eq!(
            parse_operator("explicit:1,0.5,0.25").unwrap(),
            MultiplierSequence::Explicit { values: vec![1.0, 0.5, 0.25] }
        );
    }

    #[test]
    fn operator_spec_errors() {
        assert!(matches!(parse_operator("gauss"), Err(IoError::MalformedOperator(_))));
        assert!(matches!(parse_operator("heat:alpha=1"), Err(IoError::UnknownOperator(_))));
        assert!(matches!(parse_operator("gauss:beta=1"), Err(IoError::MissingParameter { name: "alpha", .. })));
        assert!(matches!(parse_operator("gauss:alpha=1,beta=2"), Err(IoError::UnexpectedParameter { .. })));
        assert!(matches!(parse_operator("gauss:alpha=1,alpha=2"), Err(IoError::UnexpectedParameter { .. })));
        assert!(matches!(parse_operator("cosstep:alpha=1,N=0"), Err(IoError::BadParameter { .. })));
        assert!(matches!(parse_operator("laguerre:q=1"), Err(IoError::BadParameter { .. })));
        assert!(matches!(parse_operator("gauss:alpha=nan"), Err(IoError::BadParameter { .. })));
        assert!(matches!(parse_operator("explicit:"), Err(IoError::Empty)));
    }

    #[test]
    fn operator_round_trip() {
        for spec in [
            "gauss:alpha=0.5",
            "cosstep:alpha=0.3,N=4",
            "cosaffine:lambda=0,theta=1",
            "laguerre:q=-0.25",
            "exppower:alpha=0.3,p=1.5",
            "explicit:1,0.5,0.25",
        ] {
            let ms = parse_operator(spec).unwrap();
            assert_eq!(format_operator(&ms), spec);
            assert_eq!(parse_operator(&format_operator(&ms)).unwrap(), ms);
        }
    }
}
