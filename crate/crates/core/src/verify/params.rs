//! Named parameter blocks shared by `check`, `eval` and suite files.
//!
//! Values are JSON: numbers, `{"re": .., "im": ..}` objects, arrays of those
//! (vectors) and arrays of arrays (lists of vectors). The command line form
//! `key=v1,v2;w1,w2` parses into the same shapes.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cpoint::CPoint;
use crate::error::{Error, Result};
use crate::multi_index::MultiIndex;

/// A complex number as it appears in reports.
pub fn complex_json(z: Complex64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

pub fn point_json(p: &CPoint) -> Value {
    Value::Array(p.iter().map(|&z| complex_json(z)).collect())
}

pub fn points_json(ps: &[CPoint]) -> Value {
    Value::Array(ps.iter().map(point_json).collect())
}

pub fn complexes_json(zs: &[Complex64]) -> Value {
    Value::Array(zs.iter().map(|&z| complex_json(z)).collect())
}

/// Parses `1.5`, `-2`, `0.3+0.1i`, `-i`, `2e-3-4i`.
pub fn parse_complex(text: &str) -> Result<Complex64> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::Domain(format!("cannot parse `{text}` as a number"));
    if s.is_empty() {
        return Err(bad());
    }
    let Some(body) = s.strip_suffix('i') else {
        return s.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| bad());
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&j| (bytes[j] == b'+' || bytes[j] == b'-') && !matches!(bytes[j - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(j) => (&body[..j], &body[j..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => other.parse::<f64>().map_err(|_| bad())?,
    };
    Ok(Complex64::new(re.parse::<f64>().map_err(|_| bad())?, im))
}

fn scalar_value(text: &str) -> Result<Value> {
    let z = parse_complex(text)?;
    if z.im != 0.0 {
        return Ok(complex_json(z));
    }
    if let Ok(n) = text.trim().parse::<u64>() {
        return Ok(json!(n));
    }
    Ok(json!(z.re))
}

/// `a;b` is a list of vectors, `a,b` a vector, anything else a scalar.
pub fn parse_value(text: &str) -> Result<Value> {
    if text.contains(';') {
        let parts: Result<Vec<Value>> = text
            .split(';')
            .map(|part| Ok(Value::Array(part.split(',').map(scalar_value).collect::<Result<_>>()?)))
            .collect();
        return Ok(Value::Array(parts?));
    }
    if text.contains(',') {
        return Ok(Value::Array(text.split(',').map(scalar_value).collect::<Result<_>>()?));
    }
    scalar_value(text)
}

/// A named parameter block.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Params(pub BTreeMap<String, Value>);

impl Params {
    pub fn new() -> Self {
        Params::default()
    }

    /// Parses `key=value` words from the command line.
    pub fn from_args<S: AsRef<str>>(args: &[S]) -> Result<Self> {
        let mut p = Params::new();
        for arg in args {
            let arg = arg.as_ref();
            let (key, value) = arg
                .split_once('=')
                .ok_or_else(|| Error::Domain(format!("expected key=value, got `{arg}`")))?;
            p.0.insert(key.trim().to_string(), parse_value(value.trim())?);
        }
        Ok(p)
    }

    pub fn has(&self, name: &str) -> bool {
        self.0.contains_key(name)
    }

    pub fn set(&mut self, name: &str, value: Value) {
        self.0.insert(name.to_string(), value);
    }

    /// Fills every key of `defaults` that is missing here.
    pub fn fill_from(&mut self, defaults: Params) {
        for (k, v) in defaults.0 {
            self.0.entry(k).or_insert(v);
        }
    }

    fn get(&self, name: &str) -> Result<&Value> {
        self.0.get(name).ok_or_else(|| Error::Domain(format!("missing parameter `{name}`")))
    }

    /// Rejects keys outside `allowed`.
    pub fn only(&self, allowed: &[&str]) -> Result<()> {
        for key in self.0.keys() {
            if !allowed.contains(&key.as_str()) {
                return Err(Error::Domain(format!("unknown parameter `{key}` (expected one of {})", allowed.join(", "))));
            }
        }
        Ok(())
    }

    pub fn complex(&self, name: &str) -> Result<Complex64> {
        value_complex(name, self.get(name)?)
    }

    pub fn real(&self, name: &str) -> Result<f64> {
        let z = self.complex(name)?;
        if z.im != 0.0 {
            return Err(Error::Domain(format!("parameter `{name}` must be real, got {z}")));
        }
        Ok(z.re)
    }

    pub fn uint(&self, name: &str) -> Result<usize> {
        value_uint(name, self.get(name)?)
    }

    pub fn uint_or(&self, name: &str, default: usize) -> Result<usize> {
        if self.has(name) {
            self.uint(name)
        } else {
            Ok(default)
        }
    }

    /// A vector; a scalar is read as a point of dimension one.
    pub fn point(&self, name: &str) -> Result<CPoint> {
        value_point(name, self.get(name)?)
    }

    /// A list of vectors; a flat list of scalars is read as one-dimensional points.
    pub fn points(&self, name: &str) -> Result<Vec<CPoint>> {
        match self.get(name)? {
            Value::Array(items) if !items.is_empty() => items.iter().map(|v| value_point(name, v)).collect(),
            _ => Err(Error::Domain(format!("parameter `{name}` must be a non-empty list of vectors"))),
        }
    }

    /// A list of complex numbers; a scalar is a list of one.
    pub fn complexes(&self, name: &str) -> Result<Vec<Complex64>> {
        match self.get(name)? {
            Value::Array(items) if !items.is_empty() => items.iter().map(|v| value_complex(name, v)).collect(),
            Value::Array(_) => Err(Error::Domain(format!("parameter `{name}` must not be empty"))),
            v => Ok(vec![value_complex(name, v)?]),
        }
    }

    /// A multi-index; a scalar is a one-component index.
    pub fn index(&self, name: &str) -> Result<MultiIndex> {
        let entries = match self.get(name)? {
            Value::Array(items) => items.iter().map(|v| value_uint(name, v)).collect::<Result<Vec<_>>>()?,
            v => vec![value_uint(name, v)?],
        };
        MultiIndex::new(entries)
    }
}

fn value_complex(name: &str, v: &Value) -> Result<Complex64> {
    let bad = || Error::Domain(format!("parameter `{name}` must be a number or {{\"re\", \"im\"}}, got {v}"));
    let z = match v {
        Value::Number(n) => Complex64::new(n.as_f64().ok_or_else(bad)?, 0.0),
        Value::Object(map) => {
            if map.keys().any(|k| k != "re" && k != "im") {
                return Err(bad());
            }
            let part = |key: &str| match map.get(key) {
                None => Ok(0.0),
                Some(x) => x.as_f64().ok_or_else(bad),
            };
            Complex64::new(part("re")?, part("im")?)
        }
        Value::String(s) => parse_complex(s).map_err(|_| bad())?,
        _ => return Err(bad()),
    };
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(bad());
    }
    Ok(z)
}

fn value_uint(name: &str, v: &Value) -> Result<usize> {
    v.as_u64()
        .and_then(|n| usize::try_from(n).ok())
        .ok_or_else(|| Error::Domain(format!("parameter `{name}` must be a nonnegative integer, got {v}")))
}

fn value_point(name: &str, v: &Value) -> Result<CPoint> {
    match v {
        Value::Array(items) => CPoint::new(items.iter().map(|x| value_complex(name, x)).collect::<Result<_>>()?)
            .map_err(|_| Error::Domain(format!("parameter `{name}` must not be an empty vector"))),
        other => Ok(CPoint::splat(1, value_complex(name, other)?)),
    }
}
