//! Browser bindings. Every export takes and returns plain strings so the
//! page needs no generated TypeScript types; errors come back as the
//! rejected value.

use qca::blade;
use qca::config::{multivector_to_json, scalar_from_json, AlgebraConfig};
use qca::expr::{eval_str, table, BinOp};
use qca::qft::{self, U2Params};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn config(src: &str) -> Result<AlgebraConfig, String> {
    let v: Value = serde_json::from_str(src).map_err(|e| format!("config: {e}"))?;
    AlgebraConfig::from_json(&v).map_err(|e| e.to_string())
}

/// Evaluates `expr` under a config such as `{"dim": 2, "B": [[1,0],[0,1]]}`.
#[wasm_bindgen]
pub fn evaluate(config_json: &str, expr: &str) -> Result<String, String> {
    let cfg = config(config_json)?;
    eval_str(expr, &cfg).map(|v| v.to_string()).map_err(|e| e.to_string())
}

/// `{"blades": [...], "cells": [[text, ...], ...]}` for one of
/// `wedge`, `cmul`, `rmul`, `vee`, `dot`.
#[wasm_bindgen]
pub fn product_table(config_json: &str, product: &str) -> Result<String, String> {
    let cfg = config(config_json)?;
    let op = match product {
        "wedge" => BinOp::Wedge,
        "cmul" => BinOp::Cmul,
        "rmul" => BinOp::Rmul,
        "vee" => BinOp::Vee,
        "dot" => BinOp::Dot,
        other => return Err(format!("unknown product {other:?}")),
    };
    let rows = table(op, &cfg).map_err(|e| e.to_string())?;
    let names: Vec<String> = blade::basis(cfg.dim).iter().map(|b| b.name()).collect();
    let cells: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(|m| m.to_string()).collect()).collect();
    let json_cells: Vec<Vec<Value>> = rows.iter().map(|r| r.iter().map(multivector_to_json).collect()).collect();
    Ok(json!({ "blades": names, "cells": cells, "terms": json_cells }).to_string())
}

/// Analyses the U(2)-invariant state with `r = s`; the parameters are
/// rational strings.
#[wasm_bindgen]
pub fn u2_state(r: &str, q: &str, t: &str, u: &str, m: &str) -> Result<String, String> {
    let p = |s: &str| scalar_from_json(&json!(s.trim())).map_err(|e| e.to_string());
    let params = U2Params { r: p(r)?, s: p(r)?, q: p(q)?, t: p(t)?, u: p(u)?, m: p(m)? };
    let a = qft::u2_analysis(&params).map_err(|e| e.to_string())?;
    let prop: Vec<Vec<String>> = a.propagator.matrix().iter().map(|row| row.iter().map(|x| x.to_string()).collect()).collect();
    Ok(json!({
        "nu": a.nu.to_string(),
        "w": a.w.to_string(),
        "propagator": prop,
        "positive": a.positive,
        "interior": a.interior,
        "quasifree": a.quasifree,
    })
    .to_string())
}
