//! JSON function files: `{"level": m, "values": [...]}`.
//!
//! Each value is either a bare scalar (real) or a `[re, im]` pair. Scalars are
//! rational strings like `"-3/2"` or JSON numbers. Exact reading accepts
//! integers and strings only; float reading accepts anything numeric.

use num::{Complex, FromPrimitive};
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::error::Error;
use crate::harmonic::{FourierCoeffs, LevelFunction};
use crate::scalar::{
    exact, format_rational, parse_rational, rational_to_f64, Complex64, ExactComplex, Rational,
};
use crate::supernatural::Scale;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed function file: {0}")]
    Malformed(String),
    #[error(transparent)]
    Domain(#[from] Error),
}

fn malformed(msg: impl Into<String>) -> FormatError {
    FormatError::Malformed(msg.into())
}

fn split_file(doc: &Value) -> Result<(usize, &Vec<Value>), FormatError> {
    let level = doc
        .get("level")
        .and_then(Value::as_u64)
        .ok_or_else(|| malformed("missing nonnegative integer \"level\""))?;
    let values = doc
        .get("values")
        .and_then(Value::as_array)
        .ok_or_else(|| malformed("missing array \"values\""))?;
    Ok((level as usize, values))
}

fn exact_scalar(v: &Value) -> Result<Rational, FormatError> {
    match v {
        Value::String(s) => parse_rational(s).ok_or_else(|| malformed(format!("bad rational {s:?}"))),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rational::from_integer(i.into()))
            } else if let Some(u) = n.as_u64() {
                Ok(Rational::from_integer(u.into()))
            } else {
                let f = n.as_f64().unwrap_or(f64::NAN);
                if f.fract() == 0.0 {
                    Rational::from_f64(f).ok_or_else(|| malformed(format!("bad number {n}")))
                } else {
                    Err(malformed(format!(
                        "non-integer number {n} in exact mode; write it as a \"p/q\" string"
                    )))
                }
            }
        }
        other => Err(malformed(format!("expected a number or string, got {other}"))),
    }
}

fn float_scalar(v: &Value) -> Result<f64, FormatError> {
    match v {
        Value::Number(n) => n.as_f64().ok_or_else(|| malformed(format!("bad number {n}"))),
        Value::String(s) => parse_rational(s)
            .map(|r| rational_to_f64(&r))
            .or_else(|| s.trim().parse::<f64>().ok())
            .ok_or_else(|| malformed(format!("bad number {s:?}"))),
        other => Err(malformed(format!("expected a number or string, got {other}"))),
    }
}

fn entry<S>(
    v: &Value,
    scalar: impl Fn(&Value) -> Result<S, FormatError>,
    zero: impl Fn() -> S,
) -> Result<(S, S), FormatError> {
    match v {
        Value::Array(pair) if pair.len() == 2 => Ok((scalar(&pair[0])?, scalar(&pair[1])?)),
        Value::Array(_) => Err(malformed("complex values must be [re, im] pairs")),
        other => Ok((scalar(other)?, zero())),
    }
}

pub fn read_exact_function(doc: &Value, scale: &Scale) -> Result<LevelFunction<ExactComplex>, FormatError> {
    let (level, raw) = split_file(doc)?;
    let values = raw
        .iter()
        .map(|v| entry(v, exact_scalar, || Rational::from_integer(0.into())).map(|(re, im)| exact(re, im)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(LevelFunction::new(scale, level, values)?)
}

pub fn read_float_function(doc: &Value, scale: &Scale) -> Result<LevelFunction<Complex64>, FormatError> {
    let (level, raw) = split_file(doc)?;
    let values = raw
        .iter()
        .map(|v| entry(v, float_scalar, || 0.0).map(|(re, im)| Complex::new(re, im)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(LevelFunction::new(scale, level, values)?)
}

fn file(level: usize, values: Vec<Value>) -> Value {
    json!({ "level": level, "values": values })
}

/// Real functions are written as bare rational strings, others as pairs.
pub fn write_exact_function(f: &LevelFunction<ExactComplex>) -> Value {
    let real = f.values().iter().all(|v| v.im == Rational::from_integer(0.into()));
    let values = f
        .values()
        .iter()
        .map(|v| {
            if real {
                Value::String(format_rational(&v.re))
            } else {
                json!([format_rational(&v.re), format_rational(&v.im)])
            }
        })
        .collect();
    file(f.level(), values)
}

fn float_value(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

pub fn write_float_function(f: &LevelFunction<Complex64>) -> Value {
    let real = f.values().iter().all(|v| v.im == 0.0);
    let values = f
        .values()
        .iter()
        .map(|v| {
            if real {
                float_value(v.re)
            } else {
                json!([float_value(v.re), float_value(v.im)])
            }
        })
        .collect();
    file(f.level(), values)
}

pub fn write_integer_function(f: &LevelFunction<i64>) -> Value {
    file(f.level(), f.values().iter().map(|&v| Value::from(v)).collect())
}

/// A list of `{"k", "s", "re", "im"}` in canonical order.
pub fn write_fourier(c: &FourierCoeffs) -> Value {
    Value::Array(
        c.iter()
            .map(|(z, v)| {
                let mut m = Map::new();
                m.insert("k".into(), Value::from(z.numerator()));
                m.insert("s".into(), Value::from(z.order()));
                m.insert("re".into(), float_value(v.re));
                m.insert("im".into(), float_value(v.im));
                Value::Object(m)
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{exact_real, rational};

    #[test]
    fn exact_round_trip() {
        let s = Scale::dyadic(3);
        let doc = json!({"level": 2, "values": [3, "-1", ["1/2", 0], "-5/2"]});
        let f = read_exact_function(&doc, &s).unwrap();
        assert_eq!(f.values()[2], exact_real(rational(1, 2)));
        let out = write_exact_function(&f);
        assert_eq!(out, json!({"level": 2, "values": ["3", "-1", "1/2", "-5/2"]}));
        assert_eq!(read_exact_function(&out, &s).unwrap(), f);
    }

    #[test]
    fn exact_rejects_fractional_numbers() {
        let s = Scale::dyadic(3);
        let doc = json!({"level": 1, "values": [0.5, 1]});
        assert!(matches!(read_exact_function(&doc, &s), Err(FormatError::Malformed(_))));
        let doc = json!({"level": 1, "values": [2.0, 1]});
        assert!(read_exact_function(&doc, &s).is_ok());
    }

    #[test]
    fn float_reading() {
        let s = Scale::dyadic(3);
        let doc = json!({"level": 1, "values": [[0.5, -1], "1/4"]});
        let f = read_float_function(&doc, &s).unwrap();
        assert_eq!(f.values(), &[Complex::new(0.5, -1.0), Complex::new(0.25, 0.0)]);
        let out = write_float_function(&f);
        assert_eq!(out["values"][0], json!([0.5, -1.0]));
    }

    #[test]
    fn size_errors_are_domain_errors() {
        let s = Scale::dyadic(3);
        let doc = json!({"level": 2, "values": [1, 2]});
        assert!(matches!(
            read_exact_function(&doc, &s),
            Err(FormatError::Domain(Error::LevelSizeMismatch { .. }))
        ));
        assert!(matches!(
            read_float_function(&json!({"values": []}), &s),
            Err(FormatError::Malformed(_))
        ));
    }
}
