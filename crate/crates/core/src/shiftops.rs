//! Weighted backward shifts `(Tv)_j = w_{j+1} v_{j+1}` and the operator contract
//! the verification code is written against.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ext::ExtReal;
use crate::seqspace::TruncatedVector;

/// What the chaos checks need from an operator: its action and an upper bound on `‖T‖`.
pub trait LinearOperator {
    fn apply(&self, v: &TruncatedVector) -> TruncatedVector;

    /// Any `R >= ‖T‖`.
    fn norm_bound(&self) -> f64;

    fn power_apply(&self, k: usize, v: &TruncatedVector) -> TruncatedVector {
        let mut out = v.clone();
        for _ in 0..k {
            if out.is_zero() {
                break;
            }
            out = self.apply(&out);
        }
        out
    }

    /// `‖Tⁱv‖` for `i = 0..=n_max`.
    fn orbit_norms(&self, v: &TruncatedVector, n_max: usize) -> Vec<ExtReal> {
        generic_orbit_norms(self, v, n_max)
    }
}

/// Closed-form or listed weight rules, 1-based.
#[derive(Clone, Debug, PartialEq)]
pub enum WeightForm {
    /// `w_n = c`
    Constant(f64),
    /// `w_n = (n+1)/n`
    RatioPlusOne,
    /// `w_n = c (n+1)/n`
    ScaledRatio(f64),
    /// `w_1..w_k` listed, then `w_n = tail` for `n > k`.
    List { values: Vec<f64>, tail: f64 },
}

impl WeightForm {
    pub fn weight(&self, n: usize) -> f64 {
        assert!(n >= 1, "weights are 1-based");
        match self {
            WeightForm::Constant(c) => *c,
            WeightForm::RatioPlusOne => (n as f64 + 1.0) / n as f64,
            WeightForm::ScaledRatio(c) => c * (n as f64 + 1.0) / n as f64,
            WeightForm::List { values, tail } => values.get(n - 1).copied().unwrap_or(*tail),
        }
    }

    /// `sup_n w_n`, exact for every supported form.
    pub fn sup(&self) -> f64 {
        match self {
            WeightForm::Constant(c) => *c,
            WeightForm::RatioPlusOne => 2.0,
            WeightForm::ScaledRatio(c) => 2.0 * c,
            WeightForm::List { values, tail } => values.iter().copied().fold(*tail, f64::max),
        }
    }

    fn min_param(&self) -> f64 {
        match self {
            WeightForm::Constant(c) | WeightForm::ScaledRatio(c) => *c,
            WeightForm::RatioPlusOne => 1.0,
            WeightForm::List { values, tail } => values.iter().copied().fold(*tail, f64::min),
        }
    }

    /// A lower bound for `w_n` over all `n >= from` (the infimum for every supported form).
    pub fn tail_inf(&self, from: usize) -> f64 {
        match self {
            WeightForm::Constant(c) | WeightForm::ScaledRatio(c) => *c,
            WeightForm::RatioPlusOne => 1.0,
            WeightForm::List { values, tail } => {
                values.iter().skip(from.saturating_sub(1)).copied().fold(*tail, f64::min)
            }
        }
    }

    /// The common value when every weight is the same.
    pub fn constant_value(&self) -> Option<f64> {
        match self {
            WeightForm::Constant(c) => Some(*c),
            WeightForm::List { values, tail } if values.iter().all(|v| v == tail) => Some(*tail),
            _ => None,
        }
    }
}

impl fmt::Display for WeightForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightForm::Constant(c) => write!(f, "constant({c})"),
            WeightForm::RatioPlusOne => write!(f, "ratio_plus_one"),
            WeightForm::ScaledRatio(c) => write!(f, "scaled_ratio({c})"),
            WeightForm::List { values, tail } => {
                let items: Vec<String> = values.iter().map(|v| v.to_string()).collect();
                write!(f, "list([{}], tail=constant({tail}))", items.join(", "))
            }
        }
    }
}

fn call_arg<'a>(s: &'a str, name: &str) -> Option<&'a str> {
    s.strip_prefix(name)?.trim_start().strip_prefix('(')?.strip_suffix(')')
}

impl FromStr for WeightForm {
    type Err = Error;

    fn from_str(spec: &str) -> Result<Self> {
        let s = spec.trim();
        let bad = |reason: &str| Error::WeightSpec { spec: spec.to_string(), reason: reason.to_string() };
        let num = |t: &str| t.trim().parse::<f64>().map_err(|_| bad(&format!("not a number: {:?}", t.trim())));
        if s == "ratio_plus_one" {
            return Ok(WeightForm::RatioPlusOne);
        }
        if let Some(arg) = call_arg(s, "constant") {
            return Ok(WeightForm::Constant(num(arg)?));
        }
        if let Some(arg) = call_arg(s, "scaled_ratio") {
            return Ok(WeightForm::ScaledRatio(num(arg)?));
        }
        if let Some(arg) = call_arg(s, "list") {
            let arg = arg.trim();
            let open = arg.strip_prefix('[').ok_or_else(|| bad("list must start with '['"))?;
            let close = open.find(']').ok_or_else(|| bad("unterminated list"))?;
            let values =
                open[..close].split(',').filter(|t| !t.trim().is_empty()).map(num).collect::<Result<Vec<f64>>>()?;
            let rest = open[close + 1..].trim().strip_prefix(',').ok_or_else(|| bad("missing tail rule"))?;
            let tail_rule = rest.trim().strip_prefix("tail").ok_or_else(|| bad("missing tail rule"))?;
            let tail_rule = tail_rule.trim_start().strip_prefix('=').ok_or_else(|| bad("missing '=' after tail"))?;
            let tail = call_arg(tail_rule.trim(), "constant").ok_or_else(|| bad("tail must be constant(c)"))?;
            return Ok(WeightForm::List { values, tail: num(tail)? });
        }
        Err(bad("expected constant(c), ratio_plus_one, scaled_ratio(c) or list([...], tail=constant(c))"))
    }
}

/// A weight rule together with the trusted bound `declared_sup >= sup_n w_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightSequence {
    form: WeightForm,
    declared_sup: f64,
}

impl WeightSequence {
    pub fn new(form: WeightForm, declared_sup: f64) -> Result<Self> {
        if !(declared_sup.is_finite() && declared_sup > 0.0) {
            return Err(Error::param("declared_sup", format!("must be positive and finite, got {declared_sup}")));
        }
        let min = form.min_param();
        if !(min.is_finite() && min > 0.0) || !form.sup().is_finite() {
            return Err(Error::WeightSpec {
                spec: form.to_string(),
                reason: "weights must be positive and finite".into(),
            });
        }
        // every supported form has a closed-form sup, so the lazy per-query check reduces to this
        let sup = form.sup();
        if sup > declared_sup {
            let index = (1..).find(|&n| form.weight(n) > declared_sup).expect("sup is attained");
            return Err(Error::WeightExceedsSup { index, value: form.weight(index), declared_sup });
        }
        Ok(WeightSequence { form, declared_sup })
    }

    /// Uses the exact sup of the rule as the declared bound.
    pub fn tight(form: WeightForm) -> Result<Self> {
        let sup = form.sup();
        Self::new(form, sup)
    }

    pub fn form(&self) -> &WeightForm {
        &self.form
    }

    pub fn declared_sup(&self) -> f64 {
        self.declared_sup
    }

    pub fn weight(&self, n: usize) -> f64 {
        self.form.weight(n)
    }

    /// `P_n = w_1 ⋯ w_n` for `n = 0..=n_max`, with `P_0 = 1`.
    pub fn prefix_products(&self, n_max: usize) -> Vec<ExtReal> {
        let mut out = Vec::with_capacity(n_max + 1);
        let mut acc = ExtReal::ONE;
        out.push(acc);
        for n in 1..=n_max {
            acc = acc * self.weight(n);
            out.push(acc);
        }
        out
    }

    /// `ln P_n` for `n = 0..=n_max`.
    pub fn log_prefix_products(&self, n_max: usize) -> Vec<f64> {
        let mut out = Vec::with_capacity(n_max + 1);
        let mut acc = 0.0;
        out.push(acc);
        for n in 1..=n_max {
            acc += self.weight(n).ln();
            out.push(acc);
        }
        out
    }
}

/// Weighted backward shift; immutable after construction.
#[derive(Clone, Debug, PartialEq)]
pub struct ShiftOperator {
    weights: WeightSequence,
}

impl ShiftOperator {
    pub fn new(weights: WeightSequence) -> Self {
        ShiftOperator { weights }
    }

    /// Shift with `declared_sup` set to the exact sup of `form`.
    pub fn from_form(form: WeightForm) -> Result<Self> {
        Ok(Self::new(WeightSequence::tight(form)?))
    }

    pub fn constant(c: f64) -> Result<Self> {
        Self::from_form(WeightForm::Constant(c))
    }

    pub fn weights(&self) -> &WeightSequence {
        &self.weights
    }

    pub fn weight(&self, n: usize) -> f64 {
        self.weights.weight(n)
    }
}

impl LinearOperator for ShiftOperator {
    fn apply(&self, v: &TruncatedVector) -> TruncatedVector {
        let coords = v.coords();
        TruncatedVector::from_ext((1..coords.len()).map(|n| coords[n].scale(ExtReal::new(self.weight(n)))).collect())
    }

    fn norm_bound(&self) -> f64 {
        self.weights.declared_sup()
    }

    /// One pass with `(Tᵏv)_j = (P_{j+k} / P_j) v_{j+k}`.
    fn power_apply(&self, k: usize, v: &TruncatedVector) -> TruncatedVector {
        let len = v.support_len();
        if k == 0 {
            return v.clone();
        }
        if k >= len {
            return TruncatedVector::zero();
        }
        let coords = v.coords();
        if let Some(c) = self.weights.form().constant_value() {
            let factor = ExtReal::new(c).powi(k as i64);
            return TruncatedVector::from_ext(coords[k..].iter().map(|z| z.scale(factor)).collect());
        }
        let prefix = self.weights.prefix_products(len - 1);
        TruncatedVector::from_ext((0..len - k).map(|j| coords[j + k].scale(prefix[j + k] / prefix[j])).collect())
    }

    /// Constant weights reduce to suffix sums: `‖Tⁱv‖² = c^{2i} Σ_{n≥i} |v_n|²`.
    fn orbit_norms(&self, v: &TruncatedVector, n_max: usize) -> Vec<ExtReal> {
        let Some(c) = self.weights.form().constant_value() else {
            return generic_orbit_norms(self, v, n_max);
        };
        let len = v.support_len();
        let mut suffix = vec![ExtReal::ZERO; len + 1];
        for n in (0..len).rev() {
            suffix[n] = suffix[n + 1] + v.coords()[n].norm_sqr();
        }
        let c = ExtReal::new(c);
        let mut growth = ExtReal::ONE;
        let mut norms: Vec<ExtReal> = (0..=n_max)
            .map(|i| {
                let out = if i < len { growth * suffix[i].sqrt() } else { ExtReal::ZERO };
                growth = growth * c;
                out
            })
            .collect();
        // entry 0 is bit-identical to `norm_ext`, whatever the summation order above
        norms[0] = v.norm_ext();
        norms
    }
}

/// Orbit norms by repeated application, valid for any operator.
pub fn generic_orbit_norms<T: LinearOperator + ?Sized>(op: &T, v: &TruncatedVector, n_max: usize) -> Vec<ExtReal> {
    let mut norms = Vec::with_capacity(n_max + 1);
    let mut cur = v.clone();
    for _ in 0..=n_max {
        norms.push(cur.norm_ext());
        if !cur.is_zero() {
            cur = op.apply(&cur);
        }
    }
    norms
}

/// `(T - ω)v`
pub fn apply_shifted<T: LinearOperator + ?Sized>(
    op: &T,
    omega: num_complex::Complex64,
    v: &TruncatedVector,
) -> TruncatedVector {
    op.apply(v).sub(&v.scale(omega))
}

/// Serialized description of a weight rule, e.g. in configs: `{"weights": "constant(2)", "declared_sup": 2}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightConfig {
    pub weights: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub declared_sup: Option<f64>,
}

impl WeightConfig {
    pub fn build(&self) -> Result<ShiftOperator> {
        let form: WeightForm = self.weights.parse()?;
        let sup = self.declared_sup.unwrap_or_else(|| form.sup());
        Ok(ShiftOperator::new(WeightSequence::new(form, sup)?))
    }
}
