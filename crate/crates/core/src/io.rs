//! Text formats shared by the library and the command-line tool.
//!
//! Matrices are written as CSV (one row per line, comma-separated decimal
//! integers, rationals as `p/q`) or as JSON `{"d"|"n": int, "rows": [[...]]}`.
//! Integers are emitted as exact JSON numbers of any size; rationals that are
//! not integers are emitted as `"p/q"` strings.

use std::str::FromStr;

use serde_json::{Number, Value};

use crate::error::{Error, Result};
use crate::exactnum::{format_rational, parse_rational, Integer, Rational};
use crate::tnn::ExactMatrix;

pub fn integer_rows_to_csv(rows: &[Vec<Integer>]) -> String {
    let mut out = String::new();
    for row in rows {
        let line: Vec<String> = row.iter().map(Integer::to_string).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

pub fn integer_json(v: &Integer) -> Value {
    Value::Number(Number::from_str(&v.to_string()).expect("decimal integer is a JSON number"))
}

/// Integers become JSON numbers, other rationals `"p/q"` strings.
pub fn rational_json(q: &Rational) -> Value {
    if q.is_integer() {
        integer_json(q.numer())
    } else {
        Value::String(format_rational(q))
    }
}

pub fn matrix_json(key: &str, size: usize, rows: &[Vec<Integer>]) -> Value {
    let rows = rows
        .iter()
        .map(|row| Value::Array(row.iter().map(integer_json).collect()))
        .collect();
    let mut obj = serde_json::Map::new();
    obj.insert(key.to_string(), Value::from(size));
    obj.insert("rows".to_string(), Value::Array(rows));
    Value::Object(obj)
}

pub fn integers_to_csv(values: &[Integer]) -> String {
    values.iter().map(Integer::to_string).collect::<Vec<_>>().join(",")
}

/// Parses `1,2,-3` into integers. Whitespace around entries is ignored.
pub fn parse_integer_list(s: &str) -> Result<Vec<Integer>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<Integer>()
                .map_err(|_| Error::Parse(format!("not an integer: {:?}", t.trim())))
        })
        .collect()
}

/// Parses a CSV matrix. Blank lines are skipped.
pub fn parse_matrix_csv(text: &str) -> Result<ExactMatrix> {
    let rows = text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.split(',').map(parse_rational).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    ExactMatrix::new(rows)
}

/// Parses a JSON matrix of the form `{"rows": [[...], ...]}`; extra keys
/// such as `d` or `n` are ignored. Entries may be numbers or `"p/q"` strings.
pub fn parse_matrix_json(text: &str) -> Result<ExactMatrix> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let rows = value
        .get("rows")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("expected an object with a \"rows\" array".into()))?;
    let rows = rows
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| Error::Parse("each row must be an array".into()))?
                .iter()
                .map(|entry| match entry {
                    Value::Number(n) => parse_rational(&n.to_string()),
                    Value::String(s) => parse_rational(s),
                    other => Err(Error::Parse(format!("unsupported matrix entry {other}"))),
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    ExactMatrix::new(rows)
}

/// JSON if the first non-blank character is `{`, CSV otherwise.
pub fn parse_matrix(text: &str) -> Result<ExactMatrix> {
    if text.trim_start().starts_with('{') {
        parse_matrix_json(text)
    } else {
        parse_matrix_csv(text)
    }
}
