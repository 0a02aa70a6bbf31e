//! JSON matrix files.
//!
//! `{"n": 2, "entries": [e00, e01, e10, e11]}` with entries row-major. The
//! entry list may also be nested by rows. Each entry is one of
//! - `[[re_num, re_den], [im_num, im_den]]`
//! - `[re, im]` with integers or `"p/q"` strings
//! - a bare integer or `"p/q"` string (real entry).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};

use super::{split, GaussianRationalMatrix, HermitianPencil};
use crate::error::{Error, Result};
use crate::exactpoly::GaussianRational;

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(format!("matrix file: {}", msg.into()))
}

fn int(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| bad(format!("expected an integer, found {n}"))),
        Value::String(s) => s.trim().parse().map_err(|_| bad(format!("expected an integer, found \"{s}\""))),
        other => Err(bad(format!("expected an integer, found {other}"))),
    }
}

fn ratio(num: BigInt, den: BigInt) -> Result<BigRational> {
    if den.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(BigRational::new(num, den))
}

/// A scalar rational: integer, `"p/q"` string, or `[p, q]` pair.
fn scalar(v: &Value) -> Result<BigRational> {
    match v {
        Value::String(s) if s.contains('/') => {
            let (a, b) = s.split_once('/').expect("checked");
            let num = a.trim().parse().map_err(|_| bad(format!("bad rational \"{s}\"")))?;
            let den = b.trim().parse().map_err(|_| bad(format!("bad rational \"{s}\"")))?;
            ratio(num, den)
        }
        Value::Array(pair) if pair.len() == 2 => ratio(int(&pair[0])?, int(&pair[1])?),
        other => Ok(BigRational::from_integer(int(other)?)),
    }
}

fn entry(v: &Value) -> Result<GaussianRational> {
    match v {
        Value::Array(parts) if parts.len() == 2 => Ok(GaussianRational::new(scalar(&parts[0])?, scalar(&parts[1])?)),
        Value::Array(parts) => Err(bad(format!("entry must have 2 parts, found {}", parts.len()))),
        other => Ok(GaussianRational::real(scalar(other)?)),
    }
}

fn parse_root(src: &str) -> Result<Value> {
    serde_json::from_str(src).map_err(|e| Error::Parse { line: e.line(), column: e.column(), msg: e.to_string() })
}

/// Parses a matrix file. Syntax errors carry the JSON line and column.
pub fn matrix_from_json(src: &str) -> Result<GaussianRationalMatrix> {
    matrix_from_value(&parse_root(src)?)
}

/// A matrix file gives `A` and its Hermitian splitting; a pair file
/// `{"a1": {..}, "a2": {..}}` gives the two Hermitian parts directly.
pub fn pencil_from_json(src: &str) -> Result<HermitianPencil> {
    let root = parse_root(src)?;
    match (root.get("a1"), root.get("a2")) {
        (Some(a1), Some(a2)) => HermitianPencil::new(matrix_from_value(a1)?, matrix_from_value(a2)?),
        (None, None) => Ok(split(&matrix_from_value(&root)?)),
        _ => Err(bad("a pair file needs both \"a1\" and \"a2\"")),
    }
}

fn matrix_from_value(root: &Value) -> Result<GaussianRationalMatrix> {
    let n = root
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("missing positive integer field \"n\""))? as usize;
    let entries = root
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing array field \"entries\""))?;
    let nested = entries.len() == n
        && entries.iter().all(|r| r.as_array().is_some_and(|r| r.len() == n))
        && (n > 1 || entries[0].as_array().is_some_and(|r| r.len() == 1));
    let flat: Vec<&Value> = if nested {
        entries.iter().flat_map(|r| r.as_array().expect("checked")).collect()
    } else {
        entries.iter().collect()
    };
    if flat.len() != n * n {
        return Err(bad(format!("expected {} entries for n = {n}, found {}", n * n, flat.len())));
    }
    let parsed = flat.into_iter().map(entry).collect::<Result<Vec<_>>>()?;
    GaussianRationalMatrix::new(n, parsed)
}

fn int_value(i: &BigInt) -> Value {
    match i.to_i64() {
        Some(v) => json!(v),
        None => json!(i.to_string()),
    }
}

fn rat_value(r: &BigRational) -> Value {
    json!([int_value(r.numer()), int_value(r.denom())])
}

/// Canonical form: flat row-major list of `[[re_num, re_den], [im_num, im_den]]`.
pub fn matrix_to_json(m: &GaussianRationalMatrix) -> String {
    let entries: Vec<Value> = m.entries().iter().map(|e| json!([rat_value(&e.re), rat_value(&e.im)])).collect();
    serde_json::to_string_pretty(&json!({ "n": m.n(), "entries": entries })).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::rat;

    #[test]
    fn full_and_shorthand_forms() {
        let full = r#"{"n": 2, "entries": [[[0,1],[0,1]], [[1,2],[0,1]], [[0,1],[-3,4]], [[2,1],[0,1]]]}"#;
        let short = r#"{"n": 2, "entries": [[0, 0], ["1/2", 0], [0, "-3/4"], 2]}"#;
        let rows = r#"{"n": 2, "entries": [[0, "1/2"], [[0, "-3/4"], [2, 0]]]}"#;
        let a = matrix_from_json(full).unwrap();
        assert_eq!(a, matrix_from_json(short).unwrap());
        assert_eq!(a, matrix_from_json(rows).unwrap());
        assert_eq!(a.get(1, 0), &GaussianRational::new(rat(0, 1), rat(-3, 4)));
    }

    #[test]
    fn round_trip() {
        let a = crate::fixtures::cross_star().matrix;
        assert_eq!(matrix_from_json(&matrix_to_json(&a)).unwrap(), a);
    }

    #[test]
    fn syntax_error_position() {
        match matrix_from_json("{\"n\": 2,\n  \"entries\": [1, 2,, 3]}") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn pair_files() {
        let p = pencil_from_json(r#"{"a1": {"n": 2, "entries": [1, 0, 0, 0]}, "a2": {"n": 2, "entries": [0, 0, 0, 1]}}"#)
            .unwrap();
        assert_eq!(p.a1().get(0, 0), &GaussianRational::from_ints(1, 0));
        assert_eq!(p.a2().get(1, 1), &GaussianRational::from_ints(1, 0));
        let single = pencil_from_json(r#"{"n": 2, "entries": [1, 0, 0, [0, 1]]}"#).unwrap();
        assert_eq!(single, p);
        assert!(pencil_from_json(r#"{"a1": {"n": 1, "entries": [1]}}"#).is_err());
        let not_hermitian = r#"{"a1": {"n": 2, "entries": [0, 1, 0, 0]}, "a2": {"n": 2, "entries": [0, 0, 0, 0]}}"#;
        assert!(matches!(pencil_from_json(not_hermitian), Err(Error::NotHermitian)));
    }

    #[test]
    fn structural_errors() {
        assert!(matrix_from_json(r#"{"n": 2, "entries": [1, 2, 3]}"#).is_err());
        assert!(matrix_from_json(r#"{"entries": [1]}"#).is_err());
        assert!(matrix_from_json(r#"{"n": 1, "entries": [[[1, 0], [0, 1]]]}"#).is_err());
    }
}
