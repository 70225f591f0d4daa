use serde::Serialize;

use super::construction::ScrambleConstruction;
use crate::error::{Error, Result};
use crate::seqspace::TruncatedVector;

/// A point of `{0,1}^ℕ`: explicit bits for `k = 1..=len`, then a repeating tail.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymbolSequence {
    bits: Vec<u8>,
    /// Repeats from `k = len + 1`; empty means all zeros.
    tail: Vec<u8>,
}

impl SymbolSequence {
    pub fn new(bits: Vec<u8>, tail: Vec<u8>) -> Result<Self> {
        if bits.iter().chain(&tail).any(|&b| b > 1) {
            return Err(Error::param("symbols", "bits must be 0 or 1"));
        }
        Ok(SymbolSequence { bits, tail })
    }

    /// Explicit bits with a zero tail.
    pub fn finite(bits: Vec<u8>) -> Result<Self> {
        Self::new(bits, Vec::new())
    }

    /// Ones exactly at the listed indices (1-based), zero elsewhere.
    pub fn indicator(ones: &[usize], len: usize) -> Result<Self> {
        let mut bits = vec![0u8; len];
        for &k in ones {
            if k == 0 || k > len {
                return Err(Error::param("symbols", format!("index {k} outside 1..={len}")));
            }
            bits[k - 1] = 1;
        }
        Self::finite(bits)
    }

    /// `ξ_k`, 1-based.
    pub fn bit(&self, k: usize) -> u8 {
        assert!(k >= 1, "symbol indices start at 1");
        if k <= self.bits.len() {
            self.bits[k - 1]
        } else if self.tail.is_empty() {
            0
        } else {
            self.tail[(k - self.bits.len() - 1) % self.tail.len()]
        }
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn tail(&self) -> &[u8] {
        &self.tail
    }

    /// `ξ_1..=ξ_depth`
    pub fn prefix(&self, depth: usize) -> Vec<u8> {
        (1..=depth).map(|k| self.bit(k)).collect()
    }
}

/// `θ_k = ξ_k - ξ'_k` for `k = 1..=depth`.
pub fn theta(xi: &SymbolSequence, xi_prime: &SymbolSequence, depth: usize) -> Vec<i8> {
    (1..=depth).map(|k| xi.bit(k) as i8 - xi_prime.bit(k) as i8).collect()
}

/// `f(ξ) = Σ_{k<=K} ξ_k x_k`
pub fn symbol_map_f(c: &ScrambleConstruction, xi: &SymbolSequence) -> TruncatedVector {
    c.stages.iter().filter(|s| xi.bit(s.k) == 1).fold(TruncatedVector::zero(), |acc, s| acc.add(&s.point))
}

/// `Σ_{k<=K} θ_k x_k`
pub fn signed_combination(c: &ScrambleConstruction, theta: &[i8]) -> TruncatedVector {
    c.stages.iter().zip(theta).fold(TruncatedVector::zero(), |acc, (s, &t)| match t {
        0 => acc,
        1 => acc.add(&s.point),
        _ => acc.sub(&s.point),
    })
}

/// `count` sequences of which every pair differs infinitely often and agrees infinitely often.
///
/// Blocks have length `2P`. Odd `k` carry 0. At `k = 2s` within a block,
/// sequence `a` carries 1 unless `s = a + 1`. Two members therefore differ at
/// exactly two positions per block and agree at the remaining `2P - 2`.
pub fn pair_family(depth: usize, count: usize) -> Result<Vec<SymbolSequence>> {
    if count < 2 {
        return Err(Error::param("pairs", format!("need at least 2 sequences, got {count}")));
    }
    let period = 2 * count;
    let block = |a: usize| -> Vec<u8> { (1..=period).map(|pos| u8::from(pos % 2 == 0 && pos / 2 != a + 1)).collect() };
    (0..count)
        .map(|a| {
            let pattern = block(a);
            let bits = (0..depth).map(|i| pattern[i % period]).collect();
            let phase = depth % period;
            let tail = pattern[phase..].iter().chain(&pattern[..phase]).copied().collect();
            SymbolSequence::new(bits, tail)
        })
        .collect()
}
