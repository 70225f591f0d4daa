use std::path::PathBuf;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::seqspace::TruncatedVector;
use crate::shiftops::ShiftOperator;
use crate::spectral::eigenvector;

/// A vector named in a config file.
///
/// * `zero`
/// * `basis(m)`: `e_m`
/// * `eigen(re, im, len)`: `k_ω` truncated to `len` coordinates
/// * `[[re, im], …]`: inline coordinates
/// * `file:path`: a `.csv` (`index,re,im`) or JSON file
#[derive(Clone, Debug, PartialEq)]
pub enum VectorSpec {
    Zero,
    Basis(usize),
    Eigen { omega: Complex64, len: usize },
    Inline(TruncatedVector),
    File(PathBuf),
}

fn call_args<'a>(s: &'a str, name: &str) -> Option<&'a str> {
    s.strip_prefix(name)?.trim_start().strip_prefix('(')?.strip_suffix(')')
}

fn bad(s: &str, reason: &str) -> Error {
    Error::VectorFormat(format!("{s:?}: {reason}"))
}

impl FromStr for VectorSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "zero" {
            return Ok(VectorSpec::Zero);
        }
        if let Some(arg) = call_args(s, "basis") {
            let m = arg.trim().parse().map_err(|_| bad(s, "basis index must be a nonnegative integer"))?;
            return Ok(VectorSpec::Basis(m));
        }
        if let Some(args) = call_args(s, "eigen") {
            let parts: Vec<&str> = args.split(',').map(str::trim).collect();
            let [re, im, len] = parts[..] else {
                return Err(bad(s, "expected eigen(re, im, len)"));
            };
            let num = |t: &str| t.parse::<f64>().map_err(|_| bad(s, "omega parts must be numbers"));
            let len = len.parse().map_err(|_| bad(s, "length must be a positive integer"))?;
            if len == 0 {
                return Err(bad(s, "length must be a positive integer"));
            }
            return Ok(VectorSpec::Eigen { omega: Complex64::new(num(re)?, num(im)?), len });
        }
        if s.starts_with('[') {
            let value: serde_json::Value = serde_json::from_str(s).map_err(|e| bad(s, &e.to_string()))?;
            return Ok(VectorSpec::Inline(TruncatedVector::from_json(&value)?));
        }
        if let Some(path) = s.strip_prefix("file:") {
            return Ok(VectorSpec::File(PathBuf::from(path.trim())));
        }
        Err(bad(s, "expected zero, basis(m), eigen(re, im, len), [[re, im], …] or file:path"))
    }
}

impl VectorSpec {
    pub fn resolve(&self, op: &ShiftOperator) -> Result<TruncatedVector> {
        match self {
            VectorSpec::Zero => Ok(TruncatedVector::zero()),
            VectorSpec::Basis(m) => Ok(TruncatedVector::basis(*m)),
            VectorSpec::Eigen { omega, len } => Ok(eigenvector(op, *omega, *len)?.vector),
            VectorSpec::Inline(v) => Ok(v.clone()),
            VectorSpec::File(path) => {
                let text = std::fs::read_to_string(path)?;
                if path.extension().is_some_and(|e| e == "csv") {
                    TruncatedVector::read_csv(&text)
                } else {
                    TruncatedVector::from_json(&serde_json::from_str(&text)?)
                }
            }
        }
    }
}
