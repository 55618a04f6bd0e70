//! JSON reading and writing, and the algebra context an expression is
//! evaluated in.
//!
//! Rationals are written as strings (`"-3/2"`); on input plain JSON
//! integers are accepted too. Square operators on `∧V` carry a `"blades"`
//! header naming the row/column order.

use serde_json::{json, Map, Value};

use crate::blade::{self, Blade};
use crate::error::{QcaError, Result};
use crate::hopf::{Endo, LinForm};
use crate::linalg::Matrix;
use crate::multivector::Multivector;
use crate::pairing::VectorForm;
use crate::qft::Hamiltonian;
use crate::renorm::{GeneralPairing, OrderingForm};
use crate::scalar::{fmt_scalar, parse_scalar, Scalar};
use crate::tensor::TensorPoly;

fn cfg_err(msg: impl Into<String>) -> QcaError {
    QcaError::Config(msg.into())
}

pub fn scalar_to_json(s: &Scalar) -> Value {
    Value::String(fmt_scalar(s))
}

pub fn scalar_from_json(v: &Value) -> Result<Scalar> {
    match v {
        Value::String(s) => parse_scalar(s).map_err(|_| cfg_err(format!("bad rational {s:?}"))),
        Value::Number(n) if n.is_i64() => Ok(crate::scalar::int(n.as_i64().expect("i64"))),
        other => Err(cfg_err(format!("expected a rational string, got {other}"))),
    }
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    Value::Array(m.iter().map(|r| Value::Array(r.iter().map(scalar_to_json).collect())).collect())
}

pub fn matrix_from_json(v: &Value) -> Result<Matrix> {
    let v = v.get("matrix").unwrap_or(v);
    let rows = v.as_array().ok_or_else(|| cfg_err("matrix must be an array of rows"))?;
    let m: Matrix = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| cfg_err("matrix row must be an array"))?
                .iter()
                .map(scalar_from_json)
                .collect()
        })
        .collect::<Result<_>>()?;
    if let Some(r) = m.first() {
        if m.iter().any(|x| x.len() != r.len()) {
            return Err(cfg_err("ragged matrix"));
        }
    }
    Ok(m)
}

fn check_header(v: &Value, dim: usize) -> Result<()> {
    if let Some(h) = v.get("blades") {
        let want = blade_header(dim);
        if *h != want {
            return Err(cfg_err("blade order header does not match graded-lexicographic order"));
        }
    }
    Ok(())
}

fn blade_header(dim: usize) -> Value {
    Value::Array(blade::basis(dim).into_iter().map(|b| Value::String(b.name())).collect())
}

pub fn form_from_json(v: &Value, dim: usize) -> Result<VectorForm> {
    let f = VectorForm::new(matrix_from_json(v)?).map_err(|e| cfg_err(e.to_string()))?;
    if f.dim() != dim {
        return Err(cfg_err(format!("form is {0}x{0}, expected {dim}x{dim}", f.dim())));
    }
    Ok(f)
}

pub fn endo_to_json(e: &Endo) -> Value {
    json!({ "blades": blade_header(e.dim()), "matrix": matrix_to_json(&e.matrix()) })
}

pub fn endo_from_json(v: &Value, dim: usize) -> Result<Endo> {
    check_header(v, dim)?;
    Endo::from_matrix(dim, &matrix_from_json(v)?).map_err(|e| cfg_err(e.to_string()))
}

pub fn general_pairing_to_json(g: &GeneralPairing) -> Value {
    json!({ "blades": blade_header(g.dim()), "matrix": matrix_to_json(g.matrix()) })
}

pub fn general_pairing_from_json(v: &Value, dim: usize) -> Result<GeneralPairing> {
    check_header(v, dim)?;
    GeneralPairing::new(dim, matrix_from_json(v)?).map_err(|e| cfg_err(e.to_string()))
}

pub fn linform_to_json(l: &LinForm) -> Value {
    Value::Array(l.coeffs().iter().map(scalar_to_json).collect())
}

pub fn linform_from_json(v: &Value, dim: usize) -> Result<LinForm> {
    let arr = v.as_array().ok_or_else(|| cfg_err("linear form must be an array"))?;
    let coeffs = arr.iter().map(scalar_from_json).collect::<Result<Vec<_>>>()?;
    LinForm::new(dim, coeffs).map_err(|e| cfg_err(e.to_string()))
}

fn blade_from_json(v: &Value, dim: usize) -> Result<Blade> {
    let s = v.as_str().ok_or_else(|| cfg_err("blade must be a string"))?;
    let b = Blade::parse(s).map_err(|e| cfg_err(e.to_string()))?;
    if b.max_index() > dim {
        return Err(QcaError::IndexOutOfRange { index: b.max_index(), dim });
    }
    Ok(b)
}

pub fn multivector_to_json(u: &Multivector) -> Value {
    json!({
        "dim": u.dim(),
        "terms": u.terms().map(|(b, c)| json!({"coeff": fmt_scalar(c), "blade": b.name()})).collect::<Vec<_>>(),
    })
}

pub fn multivector_from_json(v: &Value) -> Result<Multivector> {
    let dim = v["dim"].as_u64().ok_or_else(|| cfg_err("missing dim"))? as usize;
    let terms = v["terms"].as_array().ok_or_else(|| cfg_err("missing terms"))?;
    let mut m = Multivector::zero(dim);
    for t in terms {
        m.add_term(blade_from_json(&t["blade"], dim)?, scalar_from_json(&t["coeff"])?);
    }
    Ok(m)
}

pub fn tensor_to_json(t: &TensorPoly) -> Value {
    json!({
        "dim": t.dim(),
        "rank": t.rank(),
        "terms": t.terms().map(|(l, c)| json!({
            "coeff": fmt_scalar(c),
            "blades": l.iter().map(|b| b.name()).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

pub fn tensor_from_json(v: &Value) -> Result<TensorPoly> {
    let dim = v["dim"].as_u64().ok_or_else(|| cfg_err("missing dim"))? as usize;
    let rank = v["rank"].as_u64().ok_or_else(|| cfg_err("missing rank"))? as usize;
    let mut t = TensorPoly::zero(dim, rank);
    for term in v["terms"].as_array().ok_or_else(|| cfg_err("missing terms"))? {
        let legs = term["blades"]
            .as_array()
            .ok_or_else(|| cfg_err("tensor term needs a blades array"))?
            .iter()
            .map(|b| blade_from_json(b, dim))
            .collect::<Result<Vec<_>>>()?;
        if legs.len() != rank {
            return Err(cfg_err(format!("tensor term has {} legs, rank is {rank}", legs.len())));
        }
        t.add_term(legs, scalar_from_json(&term["coeff"])?);
    }
    Ok(t)
}

/// Reads `[{"degree": k, "coeffs": <k-fold nested dim×…×dim array>}, …]`.
pub fn hamiltonian_from_json(v: &Value, dim: usize) -> Result<Hamiltonian> {
    let mut h = Hamiltonian::new(dim)?;
    for term in v.as_array().ok_or_else(|| cfg_err("Hamiltonian must be a list of terms"))? {
        let degree = term["degree"].as_u64().ok_or_else(|| cfg_err("term needs a degree"))? as usize;
        let mut flat = Vec::new();
        flatten(&term["coeffs"], degree, dim, &mut flat)?;
        h.add_dense(degree, &flat)?;
    }
    Ok(h)
}

fn flatten(v: &Value, depth: usize, dim: usize, out: &mut Vec<Scalar>) -> Result<()> {
    if depth == 0 {
        out.push(scalar_from_json(v)?);
        return Ok(());
    }
    let arr = v.as_array().ok_or_else(|| cfg_err("coefficient tensor nested too shallow"))?;
    if arr.len() != dim {
        return Err(cfg_err(format!("index range has {} entries, expected {dim}", arr.len())));
    }
    arr.iter().try_for_each(|x| flatten(x, depth - 1, dim, out))
}

/// Dimension plus whichever forms an expression may reference.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AlgebraConfig {
    pub dim: usize,
    pub b: Option<VectorForm>,
    pub c: Option<VectorForm>,
    pub f: Option<VectorForm>,
    pub bf: Option<GeneralPairing>,
    pub z: Option<OrderingForm>,
}

impl AlgebraConfig {
    pub fn new(dim: usize) -> Result<Self> {
        if dim == 0 || dim > crate::MAX_DIM {
            return Err(cfg_err(format!("dim {dim} outside 1..=9")));
        }
        Ok(AlgebraConfig {
            dim,
            ..Default::default()
        })
    }

    /// Parses `{"dim": n, "B": …, "C": …, "F": …, "BF": …, "Z": […]}`.
    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| cfg_err("config must be a JSON object"))?;
        for k in obj.keys() {
            if !["dim", "B", "C", "F", "BF", "Z"].contains(&k.as_str()) {
                return Err(cfg_err(format!("unknown config key {k:?}")));
            }
        }
        let dim = obj.get("dim").and_then(Value::as_u64).ok_or_else(|| cfg_err("config needs an integer dim"))?;
        let mut cfg = AlgebraConfig::new(dim as usize)?;
        for (k, v) in obj {
            if k != "dim" {
                cfg.set(k, v)?;
            }
        }
        Ok(cfg)
    }

    /// Sets one of `B`, `C`, `F`, `BF`, `Z` from JSON.
    pub fn set(&mut self, key: &str, v: &Value) -> Result<()> {
        let dim = self.dim;
        match key {
            "B" => self.b = Some(form_from_json(v, dim)?),
            "C" => self.c = Some(form_from_json(v, dim)?),
            "F" => {
                let f = form_from_json(v, dim)?;
                if !f.is_antisymmetric() {
                    return Err(cfg_err("F must be antisymmetric"));
                }
                self.f = Some(f);
            }
            "BF" => self.bf = Some(general_pairing_from_json(v, dim)?),
            "Z" => {
                let z = linform_from_json(v, dim)?;
                let even = blade::basis(dim)
                    .into_iter()
                    .all(|b| b.grade() % 2 == 0 || num::Zero::is_zero(&z.value(b)));
                self.z = Some(OrderingForm::new(z, even).map_err(|e| cfg_err(e.to_string()))?);
            }
            _ => return Err(cfg_err(format!("unknown form {key:?}"))),
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("dim".into(), json!(self.dim));
        if let Some(b) = &self.b {
            m.insert("B".into(), matrix_to_json(b.matrix()));
        }
        if let Some(c) = &self.c {
            m.insert("C".into(), matrix_to_json(c.matrix()));
        }
        if let Some(f) = &self.f {
            m.insert("F".into(), matrix_to_json(f.matrix()));
        }
        if let Some(bf) = &self.bf {
            m.insert("BF".into(), general_pairing_to_json(bf));
        }
        if let Some(z) = &self.z {
            m.insert("Z".into(), linform_to_json(z.form()));
        }
        Value::Object(m)
    }
}
