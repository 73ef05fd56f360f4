use serde::Deserialize;

use crate::algebra::{Field, Scalar};
use crate::error::{Error, Result};
use crate::matroid::Representation;

/// On-disk instance: `{"field": "Q" | {"GFp": p}, "n": n, "rows": [[...], ...]}`.
/// Entries are JSON integers or strings holding an integer or a fraction `"a/b"`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub field: FieldSpec,
    pub n: usize,
    pub rows: Vec<Vec<Literal>>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum FieldSpec {
    Named(String),
    Prime {
        #[serde(rename = "GFp")]
        gfp: u64,
    },
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum Literal {
    Int(i64),
    Text(String),
}

impl FieldSpec {
    pub fn to_field(&self) -> Result<Field> {
        match self {
            FieldSpec::Named(s) if s == "Q" => Ok(Field::Rationals),
            FieldSpec::Named(s) => Err(Error::Parse(format!("unknown field {s:?}; expected \"Q\" or {{\"GFp\": p}}"))),
            FieldSpec::Prime { gfp } => Field::prime(*gfp),
        }
    }
}

impl Literal {
    fn to_scalar(&self, field: Field) -> Result<Scalar> {
        match self {
            Literal::Int(v) => Ok(field.from_i64(*v)),
            Literal::Text(s) => field.parse_scalar(s),
        }
    }
}

/// Parses instance JSON into a validated representation. Diagnostics name
/// the offending line or row.
pub fn parse_instance(text: &str) -> Result<Representation> {
    let file: InstanceFile = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))?;
    let field = file.field.to_field()?;
    let mut rows = Vec::with_capacity(file.rows.len());
    for (r, row) in file.rows.iter().enumerate() {
        if row.len() != file.n {
            return Err(Error::RaggedRow {
                row: r + 1,
                expected: file.n,
                found: row.len(),
            });
        }
        let parsed = row
            .iter()
            .enumerate()
            .map(|(c, lit)| {
                lit.to_scalar(field)
                    .map_err(|e| Error::Parse(format!("row {}, entry {}: {e}", r + 1, c + 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(parsed);
    }
    Representation::new(field, file.n, rows)
}

/// Parses a comma-separated vector such as `1,-2,3/4`.
pub fn parse_vector(field: Field, text: &str) -> Result<Vec<Scalar>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(|s| field.parse_scalar(s)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_demo() {
        let rep = parse_instance(r#"{"field": "Q", "n": 2, "rows": [[1, 0], [0, 1], [1, 1]]}"#).unwrap();
        assert_eq!((rep.m(), rep.n(), rep.rank()), (3, 2, 2));
    }

    #[test]
    fn parses_fractions_and_prime_fields() {
        let rep = parse_instance(r#"{"field": "Q", "n": 2, "rows": [["1/2", 1], [0, "-3"]]}"#).unwrap();
        assert_eq!(rep.row(0)[0].to_string(), "1/2");
        let rep = parse_instance(r#"{"field": {"GFp": 5}, "n": 1, "rows": [["1/2"]]}"#).unwrap();
        assert_eq!(rep.row(0)[0].to_string(), "3");
    }

    #[test]
    fn diagnostics() {
        let zero = parse_instance(r#"{"field": "Q", "n": 2, "rows": [[1, 0], [0, 0]]}"#).unwrap_err();
        assert_eq!(zero, Error::ZeroRow(2));
        let bad = parse_instance(r#"{"field": "Q", "n": 2, "rows": [[1, 0], [0, "x"]]}"#).unwrap_err();
        assert!(bad.to_string().contains("row 2, entry 2"), "{bad}");
        let ragged = parse_instance(r#"{"field": "Q", "n": 2, "rows": [[1]]}"#).unwrap_err();
        assert!(matches!(ragged, Error::RaggedRow { row: 1, .. }));
        let syntax = parse_instance("{\"field\": \"Q\",\n \"n\": }").unwrap_err();
        assert!(syntax.to_string().contains("line 2"), "{syntax}");
        let composite = parse_instance(r#"{"field": {"GFp": 4}, "n": 1, "rows": []}"#).unwrap_err();
        assert_eq!(composite, Error::NotPrime(4));
        assert!(parse_instance(r#"{"field": "R", "n": 1, "rows": []}"#).is_err());
    }

    #[test]
    fn vectors() {
        let v = parse_vector(Field::Rationals, "1, -2,3/4").unwrap();
        assert_eq!(v.iter().map(ToString::to_string).collect::<Vec<_>>(), ["1", "-2", "3/4"]);
        assert!(parse_vector(Field::Rationals, "1,,2").is_err());
    }
}
