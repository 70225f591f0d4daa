//! Extended-range scalars.
//!
//! Orbits of weighted shifts grow and shrink geometrically, and the scrambled
//! set construction chains those rates over many stages. A plain `f64`
//! saturates around 2^±1024, which the construction passes after a few
//! stages. [`ExtReal`] and [`ExtComplex`] keep a double-precision mantissa and
//! carry the binary exponent separately in an `i64`, so products and sums keep
//! full relative precision across any realistic range.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Exponent gap beyond which the smaller addend cannot affect a 53-bit mantissa.
const ALIGN_CUTOFF: i64 = 64;

/// Splits a finite nonzero `x` into `(m, e)` with `x = m * 2^e` and `0.5 <= |m| < 1`.
fn frexp(x: f64) -> (f64, i64) {
    if x == 0.0 || !x.is_finite() {
        return (x, 0);
    }
    let bits = x.to_bits();
    let raw = ((bits >> 52) & 0x7ff) as i64;
    if raw == 0 {
        // subnormal: lift into the normal range first
        let (m, e) = frexp(x * f64::from_bits(0x4350_0000_0000_0000)); // 2^54
        return (m, e - 54);
    }
    let m = f64::from_bits((bits & !(0x7ff << 52)) | (1022 << 52));
    (m, raw - 1022)
}

/// Exact power of two for exponents inside the normal range.
fn pow2(k: i64) -> f64 {
    debug_assert!((-1022..=1023).contains(&k));
    f64::from_bits(((k + 1023) as u64) << 52)
}

/// `x * 2^k` with saturation to zero / infinity outside the `f64` range.
fn ldexp(mut x: f64, mut k: i64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    if k > 2100 {
        return x * f64::INFINITY;
    }
    if k < -2200 {
        return x * 0.0;
    }
    while k > 1000 {
        x *= pow2(1000);
        k -= 1000;
    }
    while k < -1000 {
        x *= pow2(-1000);
        k += 1000;
    }
    x * pow2(k)
}

/// Real number `mant * 2^exp` with `0.5 <= |mant| < 1`, or exactly zero.
#[derive(Clone, Copy, Debug, Default)]
pub struct ExtReal {
    mant: f64,
    exp: i64,
}

impl ExtReal {
    pub const ZERO: ExtReal = ExtReal { mant: 0.0, exp: 0 };
    pub const ONE: ExtReal = ExtReal { mant: 0.5, exp: 1 };

    fn from_parts(mant: f64, exp: i64) -> Self {
        if mant == 0.0 {
            return Self::ZERO;
        }
        assert!(mant.is_finite(), "non-finite mantissa in ExtReal");
        let (m, e) = frexp(mant);
        ExtReal { mant: m, exp: exp + e }
    }

    pub fn new(x: f64) -> Self {
        Self::from_parts(x, 0)
    }

    /// `2^k` exactly.
    pub fn pow2(k: i64) -> Self {
        ExtReal { mant: 0.5, exp: k + 1 }
    }

    pub fn is_zero(&self) -> bool {
        self.mant == 0.0
    }

    pub fn is_sign_negative(&self) -> bool {
        self.mant < 0.0
    }

    pub fn mantissa(&self) -> f64 {
        self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    /// Nearest `f64`; saturates to `±inf` or `±0` outside the representable range.
    pub fn to_f64(&self) -> f64 {
        ldexp(self.mant, self.exp)
    }

    pub fn abs(self) -> Self {
        ExtReal { mant: self.mant.abs(), exp: self.exp }
    }

    /// `log2(|x|)`; `-inf` for zero.
    pub fn log2(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        self.exp as f64 + self.mant.abs().log2()
    }

    pub fn ln(&self) -> f64 {
        self.log2() * std::f64::consts::LN_2
    }

    /// `2^x` for an arbitrary finite real exponent.
    pub fn exp2(x: f64) -> Self {
        let whole = x.floor();
        Self::from_parts((x - whole).exp2(), whole as i64)
    }

    pub fn sqrt(self) -> Self {
        assert!(!self.is_sign_negative(), "sqrt of negative ExtReal");
        if self.is_zero() {
            return self;
        }
        // make the exponent even so it halves exactly
        let (m, e) = if self.exp % 2 == 0 { (self.mant, self.exp) } else { (self.mant * 2.0, self.exp - 1) };
        Self::from_parts(m.sqrt(), e / 2)
    }

    /// `self^k` by repeated squaring; `k` may be negative.
    pub fn powi(self, k: i64) -> Self {
        if k < 0 {
            return Self::ONE / self.powi(-k);
        }
        let mut base = self;
        let mut acc = Self::ONE;
        let mut k = k as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            k >>= 1;
        }
        acc
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    pub fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    /// Relative difference `|a - b| / max(|a|, |b|)`, zero when both vanish.
    pub fn rel_diff(self, other: Self) -> f64 {
        let scale = self.abs().max(other.abs());
        if scale.is_zero() {
            return 0.0;
        }
        ((self - other).abs() / scale).to_f64()
    }
}

impl From<f64> for ExtReal {
    fn from(x: f64) -> Self {
        ExtReal::new(x)
    }
}

impl PartialEq for ExtReal {
    fn eq(&self, other: &Self) -> bool {
        self.partial_cmp(other) == Some(Ordering::Equal)
    }
}

impl PartialOrd for ExtReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        let (a, b) = (self.mant, other.mant);
        if a.is_nan() || b.is_nan() {
            return None;
        }
        let sa = a.partial_cmp(&0.0)?;
        let sb = b.partial_cmp(&0.0)?;
        if sa != sb {
            return sa.partial_cmp(&sb);
        }
        if sa == Ordering::Equal {
            return Some(Ordering::Equal);
        }
        let by_magnitude = match self.exp.cmp(&other.exp) {
            Ordering::Equal => a.abs().partial_cmp(&b.abs())?,
            ord => ord,
        };
        Some(if sa == Ordering::Less { by_magnitude.reverse() } else { by_magnitude })
    }
}

impl PartialEq<f64> for ExtReal {
    fn eq(&self, other: &f64) -> bool {
        *self == ExtReal::new(*other)
    }
}

impl PartialOrd<f64> for ExtReal {
    fn partial_cmp(&self, other: &f64) -> Option<Ordering> {
        self.partial_cmp(&ExtReal::new(*other))
    }
}

impl Neg for ExtReal {
    type Output = ExtReal;
    fn neg(self) -> Self {
        ExtReal { mant: -self.mant, exp: self.exp }
    }
}

impl Add for ExtReal {
    type Output = ExtReal;
    fn add(self, rhs: Self) -> Self {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        let (hi, lo) = if self.exp >= rhs.exp { (self, rhs) } else { (rhs, self) };
        let gap = lo.exp - hi.exp;
        if gap < -ALIGN_CUTOFF {
            return hi;
        }
        Self::from_parts(hi.mant + ldexp(lo.mant, gap), hi.exp)
    }
}

impl Sub for ExtReal {
    type Output = ExtReal;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for ExtReal {
    type Output = ExtReal;
    fn mul(self, rhs: Self) -> Self {
        Self::from_parts(self.mant * rhs.mant, self.exp + rhs.exp)
    }
}

impl Mul<f64> for ExtReal {
    type Output = ExtReal;
    fn mul(self, rhs: f64) -> Self {
        self * ExtReal::new(rhs)
    }
}

impl Div for ExtReal {
    type Output = ExtReal;
    fn div(self, rhs: Self) -> Self {
        assert!(!rhs.is_zero(), "division of ExtReal by zero");
        Self::from_parts(self.mant / rhs.mant, self.exp - rhs.exp)
    }
}

impl std::iter::Sum for ExtReal {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(ExtReal::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for ExtReal {
    /// Scientific notation with 17 significant digits, valid far outside the `f64` range.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let x = self.to_f64();
        if self.is_zero() || (x.is_normal() && x.abs() > 1e-300 && x.abs() < 1e300) {
            return write!(f, "{:.16e}", x);
        }
        let sign = if self.is_sign_negative() { "-" } else { "" };
        let mut dec_exp = (self.log2() * std::f64::consts::LOG10_2).floor() as i64;
        let mut digits = (self.abs() / ExtReal::new(10.0).powi(dec_exp)).to_f64();
        if digits >= 10.0 {
            digits /= 10.0;
            dec_exp += 1;
        } else if digits < 1.0 {
            digits *= 10.0;
            dec_exp -= 1;
        }
        write!(f, "{sign}{digits:.16}e{dec_exp}")
    }
}

impl std::str::FromStr for ExtReal {
    type Err = String;

    /// Parses plain floats and decimal scientific strings with arbitrarily large exponents.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Ok(x) = s.parse::<f64>() {
            if x.is_normal() {
                return Ok(ExtReal::new(x));
            }
        }
        let (body, exp10) = match s.find(['e', 'E']) {
            Some(i) => (&s[..i], s[i + 1..].parse::<i64>().map_err(|e| format!("bad exponent in {s:?}: {e}"))?),
            None => (s, 0),
        };
        let m: f64 = body.parse().map_err(|e| format!("bad mantissa in {s:?}: {e}"))?;
        if !m.is_finite() {
            return Err(format!("non-finite value {s:?}"));
        }
        if m == 0.0 {
            return Ok(ExtReal::ZERO);
        }
        Ok(ExtReal::new(m) * ExtReal::new(10.0).powi(exp10))
    }
}

impl Serialize for ExtReal {
    /// In-range values serialize as JSON numbers, the rest as decimal strings.
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let x = self.to_f64();
        if self.is_zero() || x.is_normal() {
            serializer.serialize_f64(x)
        } else {
            serializer.serialize_str(&self.to_string())
        }
    }
}

impl<'de> Deserialize<'de> for ExtReal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(f64),
            Text(String),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Num(x) => Ok(ExtReal::new(x)),
            Repr::Text(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// Complex number `(re + i·im) * 2^exp` with `max(|re|, |im|)` in `[0.5, 1)`, or zero.
#[derive(Clone, Copy, Debug, Default)]
pub struct ExtComplex {
    re: f64,
    im: f64,
    exp: i64,
}

impl ExtComplex {
    pub const ZERO: ExtComplex = ExtComplex { re: 0.0, im: 0.0, exp: 0 };
    pub const ONE: ExtComplex = ExtComplex { re: 0.5, im: 0.0, exp: 1 };

    fn from_parts(re: f64, im: f64, exp: i64) -> Self {
        let top = re.abs().max(im.abs());
        if top == 0.0 {
            return Self::ZERO;
        }
        assert!(top.is_finite(), "non-finite mantissa in ExtComplex");
        let (_, k) = frexp(top);
        ExtComplex { re: ldexp(re, -k), im: ldexp(im, -k), exp: exp + k }
    }

    pub fn new(re: f64, im: f64) -> Self {
        Self::from_parts(re, im, 0)
    }

    pub fn from_real(x: ExtReal) -> Self {
        Self::from_parts(x.mant, 0.0, x.exp)
    }

    pub fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }

    /// Nearest `Complex64`, saturating outside the `f64` range.
    pub fn to_complex64(&self) -> Complex64 {
        Complex64::new(ldexp(self.re, self.exp), ldexp(self.im, self.exp))
    }

    pub fn re(&self) -> ExtReal {
        ExtReal::from_parts(self.re, self.exp)
    }

    pub fn im(&self) -> ExtReal {
        ExtReal::from_parts(self.im, self.exp)
    }

    pub fn norm_sqr(&self) -> ExtReal {
        ExtReal::from_parts(self.re * self.re + self.im * self.im, 2 * self.exp)
    }

    pub fn abs(&self) -> ExtReal {
        ExtReal::from_parts(self.re.hypot(self.im), self.exp)
    }

    pub fn conj(self) -> Self {
        ExtComplex { re: self.re, im: -self.im, exp: self.exp }
    }

    pub fn scale(self, c: ExtReal) -> Self {
        Self::from_parts(self.re * c.mant, self.im * c.mant, self.exp + c.exp)
    }

    pub fn scale_c(self, c: Complex64) -> Self {
        let z = Complex64::new(self.re, self.im) * c;
        Self::from_parts(z.re, z.im, self.exp)
    }
}

impl From<Complex64> for ExtComplex {
    fn from(z: Complex64) -> Self {
        ExtComplex::new(z.re, z.im)
    }
}

impl From<f64> for ExtComplex {
    fn from(x: f64) -> Self {
        ExtComplex::new(x, 0.0)
    }
}

impl From<ExtReal> for ExtComplex {
    fn from(x: ExtReal) -> Self {
        ExtComplex::from_real(x)
    }
}

impl PartialEq for ExtComplex {
    fn eq(&self, other: &Self) -> bool {
        (*self - *other).is_zero()
    }
}

impl Neg for ExtComplex {
    type Output = ExtComplex;
    fn neg(self) -> Self {
        ExtComplex { re: -self.re, im: -self.im, exp: self.exp }
    }
}

impl Add for ExtComplex {
    type Output = ExtComplex;
    fn add(self, rhs: Self) -> Self {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        let (hi, lo) = if self.exp >= rhs.exp { (self, rhs) } else { (rhs, self) };
        let gap = lo.exp - hi.exp;
        if gap < -ALIGN_CUTOFF {
            return hi;
        }
        Self::from_parts(hi.re + ldexp(lo.re, gap), hi.im + ldexp(lo.im, gap), hi.exp)
    }
}

impl Sub for ExtComplex {
    type Output = ExtComplex;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for ExtComplex {
    type Output = ExtComplex;
    fn mul(self, rhs: Self) -> Self {
        let z = Complex64::new(self.re, self.im) * Complex64::new(rhs.re, rhs.im);
        Self::from_parts(z.re, z.im, self.exp + rhs.exp)
    }
}

impl Div for ExtComplex {
    type Output = ExtComplex;
    fn div(self, rhs: Self) -> Self {
        assert!(!rhs.is_zero(), "division of ExtComplex by zero");
        let z = Complex64::new(self.re, self.im) / Complex64::new(rhs.re, rhs.im);
        Self::from_parts(z.re, z.im, self.exp - rhs.exp)
    }
}
