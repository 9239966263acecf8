//! Structured-text (JSON) schemas for matrices, G-modules and lattice files.
//!
//! Integers are JSON numbers of arbitrary length; a matrix written inline is a
//! list of rows. Sublattices in lattice files are lists of generating vectors
//! in ambient coordinates.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Serialize, Serializer};
use serde_json::{json, Map, Number, Value};

use crate::error::{Error, Result};
use crate::linalg::IntegerMatrix;

pub fn big_to_number(x: &BigInt) -> Number {
    Number::from_str(&x.to_string()).expect("decimal integer is a valid JSON number")
}

/// `serialize_with` helper for big integers in report structs.
pub fn ser_big<S: Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    big_to_number(x).serialize(s)
}

pub fn ser_opt_big<S: Serializer>(x: &Option<BigInt>, s: S) -> std::result::Result<S::Ok, S::Error> {
    x.as_ref().map(big_to_number).serialize(s)
}

pub fn ser_big_vec<S: Serializer>(x: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    x.iter().map(big_to_number).collect::<Vec<_>>().serialize(s)
}

pub fn parse_int(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => {
            BigInt::from_str(&n.to_string()).map_err(|_| Error::Parse(format!("not an integer: {}", n)))
        }
        other => Err(Error::Parse(format!("expected an integer, found {}", other))),
    }
}

fn parse_vector(v: &Value) -> Result<Vec<BigInt>> {
    v.as_array()
        .ok_or_else(|| Error::Parse(format!("expected a list of integers, found {}", v)))?
        .iter()
        .map(parse_int)
        .collect()
}

/// A list of equal-length integer lists. `width` is used when the list is empty.
pub fn parse_rows(v: &Value, width: usize) -> Result<IntegerMatrix> {
    let rows = v
        .as_array()
        .ok_or_else(|| Error::Parse(format!("expected a list of rows, found {}", v)))?
        .iter()
        .map(parse_vector)
        .collect::<Result<Vec<_>>>()?;
    IntegerMatrix::from_rows(rows, width).map_err(|e| Error::Parse(e.to_string()))
}

pub fn rows_value(m: &IntegerMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(|x| Value::Number(big_to_number(x))).collect()))
            .collect(),
    )
}

/// `{"rows": r, "cols": c, "entries": [[...], ...]}`
pub fn matrix_value(m: &IntegerMatrix) -> Value {
    json!({ "rows": m.rows(), "cols": m.cols(), "entries": rows_value(m) })
}

pub fn parse_matrix(v: &Value) -> Result<IntegerMatrix> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("matrix must be an object".into()))?;
    let dim = |key: &str| -> Result<usize> {
        obj.get(key)
            .and_then(Value::as_u64)
            .map(|x| x as usize)
            .ok_or_else(|| Error::Parse(format!("matrix is missing a non-negative \"{}\"", key)))
    };
    let (r, c) = (dim("rows")?, dim("cols")?);
    let m = parse_rows(
        obj.get("entries")
            .ok_or_else(|| Error::Parse("matrix is missing \"entries\"".into()))?,
        c,
    )?;
    if m.rows() != r || m.cols() != c {
        return Err(Error::Parse(format!(
            "declared {}x{} but entries are {}x{}",
            r,
            c,
            m.rows(),
            m.cols()
        )));
    }
    Ok(m)
}

impl Serialize for IntegerMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        matrix_value(self).serialize(s)
    }
}

/// Parsed `{"rank": n, "sigma": [[...]]}`.
pub fn parse_gmodule(text: &str) -> Result<IntegerMatrix> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let sigma = parse_rows(
        v.get("sigma").ok_or_else(|| Error::Parse("missing \"sigma\"".into()))?,
        0,
    )?;
    if let Some(r) = v.get("rank") {
        let r = r
            .as_u64()
            .ok_or_else(|| Error::Parse("\"rank\" must be a count".into()))? as usize;
        if sigma.rows() != r || sigma.cols() != r {
            return Err(Error::Parse(format!(
                "rank {} does not match a {}x{} sigma",
                r,
                sigma.rows(),
                sigma.cols()
            )));
        }
    }
    Ok(sigma)
}

pub fn gmodule_value(sigma: &IntegerMatrix) -> Value {
    json!({ "rank": sigma.rows(), "sigma": rows_value(sigma) })
}

/// Contents of a lattice file. `sigma` defaults to the identity when absent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeFile {
    pub gram: IntegerMatrix,
    pub sigma: IntegerMatrix,
    /// Named sublattices, each stored with generators as columns.
    pub sublattices: BTreeMap<String, IntegerMatrix>,
    /// Any further top-level fields, kept verbatim.
    pub extra: Map<String, Value>,
}

impl LatticeFile {
    pub fn new(gram: IntegerMatrix, sigma: IntegerMatrix) -> Self {
        LatticeFile {
            gram,
            sigma,
            sublattices: BTreeMap::new(),
            extra: Map::new(),
        }
    }

    pub fn with_sublattice(mut self, name: &str, columns: IntegerMatrix) -> Self {
        self.sublattices.insert(name.to_string(), columns);
        self
    }

    pub fn parse(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_value(&v)
    }

    pub fn from_value(v: &Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("lattice file must be an object".into()))?;
        let gram = parse_rows(
            obj.get("gram").ok_or_else(|| Error::Parse("missing \"gram\"".into()))?,
            0,
        )?;
        let n = gram.rows();
        if gram.cols() != n {
            return Err(Error::Parse(format!("gram is {}x{}", n, gram.cols())));
        }
        let sigma = match obj.get("sigma") {
            Some(s) => parse_rows(s, n)?,
            None => IntegerMatrix::identity(n),
        };
        let mut sublattices = BTreeMap::new();
        if let Some(subs) = obj.get("sublattices") {
            let subs = subs
                .as_object()
                .ok_or_else(|| Error::Parse("\"sublattices\" must be an object".into()))?;
            for (name, gens) in subs {
                let rows = parse_rows(gens, n)?;
                if rows.cols() != n {
                    return Err(Error::Parse(format!(
                        "sublattice {} has vectors of length {}, expected {}",
                        name,
                        rows.cols(),
                        n
                    )));
                }
                sublattices.insert(name.clone(), rows.transpose_with_rows(n));
            }
        }
        let extra = obj
            .iter()
            .filter(|(k, _)| !matches!(k.as_str(), "gram" | "sigma" | "sublattices"))
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        Ok(LatticeFile {
            gram,
            sigma,
            sublattices,
            extra,
        })
    }

    pub fn to_value(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("gram".into(), rows_value(&self.gram));
        obj.insert("sigma".into(), rows_value(&self.sigma));
        if !self.sublattices.is_empty() {
            let subs: Map<String, Value> = self
                .sublattices
                .iter()
                .map(|(k, m)| (k.clone(), rows_value(&m.transpose())))
                .collect();
            obj.insert("sublattices".into(), Value::Object(subs));
        }
        for (k, v) in &self.extra {
            obj.insert(k.clone(), v.clone());
        }
        Value::Object(obj)
    }

    pub fn sublattice(&self, name: &str) -> Option<&IntegerMatrix> {
        self.sublattices.get(name)
    }
}
