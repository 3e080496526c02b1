//! JSON ingestion and CSV emission.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;

use crate::error::{invalid, Result};
use crate::geom::{Polytope, PolytopeJson};
use crate::tube::{LkVector, PlSet, PlSetJson};

/// Relative `--out` paths are resolved against this directory when set.
pub const OUT_DIR_VAR: &str = "LKINV_OUT_DIR";

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

/// A single polytope `{dim, vertices, facets}` or a union `{dim, pieces}`.
pub fn load_set(path: &Path) -> Result<PlSet> {
    let v: serde_json::Value = read_json(path)?;
    if v.get("pieces").is_some() {
        PlSet::from_json(&serde_json::from_value::<PlSetJson>(v)?)
    } else {
        Ok(PlSet::single(Polytope::from_json(&serde_json::from_value::<PolytopeJson>(v)?)?))
    }
}

pub fn output_path(out: &Path) -> PathBuf {
    match std::env::var_os(OUT_DIR_VAR) {
        Some(dir) if out.is_relative() => Path::new(&dir).join(out),
        _ => out.to_path_buf(),
    }
}

/// `x` with 12 significant digits, in plain notation when that stays short.
pub fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let e = x.abs().log10().floor() as i32;
    let s = if (-5..12).contains(&e) { format!("{:.*}", (11 - e) as usize, x) } else { format!("{x:.11e}") };
    trim_zeros(&s)
}

fn trim_zeros(s: &str) -> String {
    let (mant, exp) = match s.find('e') {
        Some(k) => (&s[..k], &s[k..]),
        None => (s, ""),
    };
    let mant = if mant.contains('.') { mant.trim_end_matches('0').trim_end_matches('.') } else { mant };
    format!("{mant}{exp}")
}

/// Two-column CSV `epsilon,value`.
pub fn emit_plotdata(series: &[(f64, f64)]) -> Result<String> {
    if series.is_empty() {
        return invalid("plot data needs at least one point");
    }
    let mut s = String::from("epsilon,value\n");
    for &(e, v) in series {
        writeln!(s, "{},{}", sig12(e), sig12(v)).unwrap();
    }
    Ok(s)
}

/// Rows `shape_id,i,lambda,method,stderr`.
pub fn lk_csv(shape_id: &str, lk: &LkVector) -> String {
    let mut s = String::from("shape_id,i,lambda,method,stderr\n");
    for (i, (v, e)) in lk.values.iter().zip(&lk.stderr).enumerate() {
        writeln!(s, "{shape_id},{i},{},{},{}", sig12(*v), lk.method, sig12(*e)).unwrap();
    }
    s
}
