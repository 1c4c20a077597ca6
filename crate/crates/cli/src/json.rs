//! Conversions between core types and JSON. Rationals travel as strings.

use std::fs;

use serde_json::{json, Value};
use slinv_core::exactlin::parse_scalar;
use slinv_core::weylhecke::{TorusExponent, WeylElement};
use slinv_core::{EigenMonomial, Error, Scalar, Subspace};

use crate::CliError;

pub fn scalar(x: &Scalar) -> Value {
    Value::String(x.to_string())
}

pub fn scalars(xs: &[Scalar]) -> Value {
    Value::Array(xs.iter().map(scalar).collect())
}

/// `{"symbol": "exponent", ...}`; the empty object is `1`.
pub fn monomial(m: &EigenMonomial) -> Value {
    Value::Object(
        m.exponents()
            .iter()
            .map(|(s, e)| (s.clone(), scalar(e)))
            .collect(),
    )
}

pub fn subspace(s: &Subspace) -> Value {
    json!({
        "dim": s.dim(),
        "basis": s.basis().iter().map(|row| scalars(row)).collect::<Vec<_>>(),
    })
}

pub fn weyl(w: &WeylElement) -> Value {
    json!({ "nu": w.nu_one_based(), "eps": w.eps() })
}

/// Inline JSON if the argument looks like JSON, otherwise a file path.
pub fn load(arg: &str) -> Result<Value, CliError> {
    let trimmed = arg.trim_start();
    let text = if trimmed.starts_with(['{', '[']) {
        arg.to_string()
    } else {
        fs::read_to_string(arg).map_err(|e| CliError::io(format!("cannot read {arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| CliError::parse(format!("malformed JSON: {e}")))
}

pub fn get<'a>(v: &'a Value, key: &str) -> Result<&'a Value, CliError> {
    v.get(key)
        .ok_or_else(|| CliError::parse(format!("missing field {key:?}")))
}

pub fn to_scalar(v: &Value) -> Result<Scalar, CliError> {
    match v {
        Value::String(s) => Ok(parse_scalar(s)?),
        Value::Number(n) if n.is_i64() => Ok(parse_scalar(&n.to_string())?),
        _ => Err(CliError::parse(format!(
            "expected a rational as string or integer, got {v}"
        ))),
    }
}

pub fn to_scalars(v: &Value) -> Result<Vec<Scalar>, CliError> {
    v.as_array()
        .ok_or_else(|| CliError::parse(format!("expected an array, got {v}")))?
        .iter()
        .map(to_scalar)
        .collect()
}

pub fn to_i64(v: &Value) -> Result<i64, CliError> {
    match v {
        Value::Number(n) => n.as_i64(),
        Value::String(s) => s.trim().parse().ok(),
        _ => None,
    }
    .ok_or_else(|| CliError::parse(format!("expected an integer, got {v}")))
}

pub fn to_monomial(v: &Value) -> Result<EigenMonomial, CliError> {
    let obj = v
        .as_object()
        .ok_or_else(|| CliError::parse(format!("expected a monomial object, got {v}")))?;
    let exps = obj
        .iter()
        .map(|(s, e)| Ok((s.clone(), to_scalar(e)?)))
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(EigenMonomial::from_exponents(exps))
}

pub fn to_weyl(v: &Value) -> Result<WeylElement, CliError> {
    let nu = get(v, "nu")?
        .as_array()
        .ok_or_else(|| CliError::parse("\"nu\" must be an array".into()))?
        .iter()
        .map(|x| {
            to_i64(x).and_then(|i| {
                usize::try_from(i).map_err(|_| CliError::parse(format!("bad index {i}")))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let eps = get(v, "eps")?
        .as_array()
        .ok_or_else(|| CliError::parse("\"eps\" must be an array".into()))?
        .iter()
        .map(|x| to_i64(x).map(|e| e.clamp(-2, 2) as i8))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(WeylElement::from_one_based(&nu, eps)?)
}

/// `"a_1,...,a_g;a_0"`.
pub fn parse_torus(s: &str) -> Result<TorusExponent, CliError> {
    let (a, a0) = s.split_once(';').ok_or_else(|| {
        CliError::parse(format!("torus exponents {s:?} must look like a1,...,ag;a0"))
    })?;
    let a = a
        .split(',')
        .filter(|x| !x.trim().is_empty())
        .map(parse_scalar)
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(TorusExponent::new(a, parse_scalar(a0)?))
}
