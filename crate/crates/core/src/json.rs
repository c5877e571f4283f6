//! Canonical JSON codecs. `serde_json::Value` objects keep keys sorted, and
//! no floats are ever produced, so serialization is canonical.

use serde_json::Value;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar};

pub fn matrix_to_json<S: Scalar>(m: &Matrix<S>) -> Value {
    Value::Array((0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(Scalar::to_json).collect())).collect())
}

/// Parses a list of rows and checks it against the expected shape. An empty
/// list is accepted for any shape with no rows.
pub fn matrix_from_json<S: Scalar>(v: &Value, rows: usize, cols: usize, path: &str) -> Result<Matrix<S>> {
    let arr = v.as_array().ok_or_else(|| Error::schema(path, "expected an array of rows"))?;
    if arr.len() != rows {
        return Err(Error::schema(path, format!("expected {rows} rows, found {}", arr.len())));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for (i, r) in arr.iter().enumerate() {
        let r = r.as_array().ok_or_else(|| Error::schema(format!("{path}[{i}]"), "expected a row array"))?;
        if r.len() != cols {
            return Err(Error::schema(format!("{path}[{i}]"), format!("expected {cols} entries, found {}", r.len())));
        }
        for (j, x) in r.iter().enumerate() {
            data.push(S::from_json(x).map_err(|e| Error::schema(format!("{path}[{i}][{j}]"), e.to_string()))?);
        }
    }
    Ok(Matrix::from_vec(rows, cols, data))
}

/// Parses a list of rows of unknown shape; `cols_hint` is used when there are no rows.
pub fn matrix_from_json_any<S: Scalar>(v: &Value, cols_hint: usize, path: &str) -> Result<Matrix<S>> {
    let arr = v.as_array().ok_or_else(|| Error::schema(path, "expected an array of rows"))?;
    let cols = match arr.first() {
        None => cols_hint,
        Some(r) => r.as_array().map(Vec::len).ok_or_else(|| Error::schema(format!("{path}[0]"), "expected a row array"))?,
    };
    matrix_from_json(v, arr.len(), cols, path)
}

pub fn get<'a>(v: &'a Value, key: &str, path: &str) -> Result<&'a Value> {
    v.as_object()
        .ok_or_else(|| Error::schema(path, "expected an object"))?
        .get(key)
        .ok_or_else(|| Error::schema(format!("{path}.{key}"), "missing field"))
}

pub fn get_usize(v: &Value, key: &str, path: &str) -> Result<usize> {
    get(v, key, path)?
        .as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| Error::schema(format!("{path}.{key}"), "expected a non-negative integer"))
}

pub fn get_i64(v: &Value, key: &str, path: &str) -> Result<i64> {
    get(v, key, path)?.as_i64().ok_or_else(|| Error::schema(format!("{path}.{key}"), "expected an integer"))
}

/// Newline-terminated compact rendering.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("values always serialize");
    s.push('\n');
    s
}
