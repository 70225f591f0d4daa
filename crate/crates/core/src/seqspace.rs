//! Finitely supported complex sequences with ℓ² geometry.
//!
//! A [`TruncatedVector`] stands for an element of ℓ² whose coordinates past
//! `support_len()` are zero. Trailing zeros are trimmed eagerly, so two
//! vectors with the same nonzero coordinates always have the same layout.

use std::io::Write;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ext::{ExtComplex, ExtReal};

/// Default absolute tolerance for vector equality.
pub const DEFAULT_ATOL: f64 = 1e-12;

#[derive(Clone, Debug, Default)]
pub struct TruncatedVector {
    coords: Vec<ExtComplex>,
}

impl TruncatedVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_ext(coords: Vec<ExtComplex>) -> Self {
        let mut v = TruncatedVector { coords };
        v.trim();
        v
    }

    pub fn from_complex(coords: &[Complex64]) -> Self {
        Self::from_ext(coords.iter().map(|&z| z.into()).collect())
    }

    pub fn from_real(coords: &[f64]) -> Self {
        Self::from_ext(coords.iter().map(|&x| x.into()).collect())
    }

    /// Standard basis vector `e_m`.
    pub fn basis(m: usize) -> Self {
        let mut coords = vec![ExtComplex::ZERO; m + 1];
        coords[m] = ExtComplex::ONE;
        TruncatedVector { coords }
    }

    fn trim(&mut self) {
        while self.coords.last().is_some_and(|c| c.is_zero()) {
            self.coords.pop();
        }
    }

    pub fn support_len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[ExtComplex] {
        &self.coords
    }

    /// Coordinate `n`, zero past the support.
    pub fn coord(&self, n: usize) -> ExtComplex {
        self.coords.get(n).copied().unwrap_or(ExtComplex::ZERO)
    }

    /// Coordinates as `Complex64`, padded or cut to `len`; out-of-range values saturate.
    pub fn to_complex_vec(&self, len: usize) -> Vec<Complex64> {
        (0..len).map(|n| self.coord(n).to_complex64()).collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coords.len().max(other.coords.len());
        Self::from_ext((0..len).map(|n| self.coord(n) + other.coord(n)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let len = self.coords.len().max(other.coords.len());
        Self::from_ext((0..len).map(|n| self.coord(n) - other.coord(n)).collect())
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::from_ext(self.coords.iter().map(|z| z.scale_c(c)).collect())
    }

    pub fn scale_ext(&self, c: ExtReal) -> Self {
        Self::from_ext(self.coords.iter().map(|z| z.scale(c)).collect())
    }

    /// `self + c * other`
    pub fn axpy(&self, c: Complex64, other: &Self) -> Self {
        self.add(&other.scale(c))
    }

    pub fn norm_sqr_ext(&self) -> ExtReal {
        self.coords.iter().map(ExtComplex::norm_sqr).sum()
    }

    /// Euclidean norm at extended range.
    pub fn norm_ext(&self) -> ExtReal {
        self.norm_sqr_ext().sqrt()
    }

    /// Euclidean norm, saturating to `inf` / `0` outside the `f64` range.
    pub fn norm(&self) -> f64 {
        self.norm_ext().to_f64()
    }

    /// Norm of the coordinates with index `>= from`.
    pub fn tail_norm(&self, from: usize) -> ExtReal {
        self.coords.iter().skip(from).map(ExtComplex::norm_sqr).sum::<ExtReal>().sqrt()
    }

    /// Positive real multiple of `self` with norm `target`.
    pub fn rescale_to(&self, target: impl Into<ExtReal>) -> Result<Self> {
        let target = target.into();
        if target.is_sign_negative() || target.is_zero() || !target.mantissa().is_finite() {
            return Err(Error::BadRescaleTarget(target.to_f64()));
        }
        let n = self.norm_ext();
        if n.is_zero() {
            return Err(Error::ZeroVector);
        }
        Ok(self.scale_ext(target / n))
    }

    /// Vectors are equal when `norm(a - b) <= atol`.
    pub fn approx_eq(&self, other: &Self, atol: f64) -> bool {
        self.sub(other).norm_ext() <= atol
    }

    /// Keeps only the first `len` coordinates.
    pub fn truncated(&self, len: usize) -> Self {
        Self::from_ext(self.coords.iter().take(len).copied().collect())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("vector serialization is infallible")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        Self::deserialize(value).map_err(|e| Error::VectorFormat(e.to_string()))
    }

    /// Writes `index,re,im` rows, one per retained coordinate.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "index,re,im")?;
        for (n, z) in self.coords.iter().enumerate() {
            writeln!(out, "{n},{},{}", z.re(), z.im())?;
        }
        Ok(())
    }

    pub fn read_csv(text: &str) -> Result<Self> {
        let mut coords: Vec<ExtComplex> = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || (lineno == 0 && line.starts_with("index")) {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 3 {
                return Err(Error::VectorFormat(format!("line {}: expected index,re,im", lineno + 1)));
            }
            let bad = |what: &str| Error::VectorFormat(format!("line {}: bad {what}", lineno + 1));
            let index: usize = fields[0].trim().parse().map_err(|_| bad("index"))?;
            let re: ExtReal = fields[1].parse().map_err(|_| bad("re"))?;
            let im: ExtReal = fields[2].parse().map_err(|_| bad("im"))?;
            if coords.len() <= index {
                coords.resize(index + 1, ExtComplex::ZERO);
            }
            coords[index] = ExtComplex::from_real(re) + ExtComplex::from_real(im) * ExtComplex::new(0.0, 1.0);
        }
        Ok(Self::from_ext(coords))
    }
}

impl PartialEq for TruncatedVector {
    fn eq(&self, other: &Self) -> bool {
        self.approx_eq(other, DEFAULT_ATOL)
    }
}

impl Serialize for TruncatedVector {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(Some(self.coords.len()))?;
        for z in &self.coords {
            seq.serialize_element(&[z.re(), z.im()])?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for TruncatedVector {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let pairs: Vec<[ExtReal; 2]> = Vec::deserialize(deserializer)?;
        Ok(Self::from_ext(
            pairs
                .into_iter()
                .map(|[re, im]| ExtComplex::from_real(re) + ExtComplex::from_real(im) * ExtComplex::new(0.0, 1.0))
                .collect(),
        ))
    }
}
