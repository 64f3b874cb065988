//! Sample-size bound `N(λ, δ) = ⌈ln(1/δ) / (2λ²)⌉` and its inverse
//! `δ(Ñ, λ) = exp(−2Ñλ²)`.
//!
//! The ceiling is computed in exact rational arithmetic: `ln` is enclosed
//! between a partial sum of the `atanh` series and that sum plus a bound on
//! the tail, and terms are added until both ends of the enclosure have the
//! same ceiling.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::HaltError;

/// Parses `0.0005`, `5e-4`, `1/2000` or an integer into an exact rational.
pub fn parse_rational(text: &str) -> Result<BigRational, HaltError> {
    let bad = || HaltError::BadNumber(text.to_string());
    let t = text.trim();
    if let Some((num, den)) = t.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(num, den));
    }
    let (mantissa, exp) = match t.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
    let scale = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut r = if scale >= 0 {
        BigRational::from_integer(digits * ten.pow(scale as u32))
    } else {
        BigRational::new(digits, ten.pow((-scale) as u32))
    };
    if neg {
        r = -r;
    }
    Ok(r)
}

/// Decision error `ε`, precision `λ` and confidence complement `δ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EstimationParams {
    #[serde(with = "rational_text")]
    pub epsilon: BigRational,
    #[serde(with = "rational_text")]
    pub lambda: BigRational,
    #[serde(with = "rational_text")]
    pub delta: BigRational,
}

impl EstimationParams {
    /// Checks `0 < λ < ε < 1` and `0 < δ < 1`.
    pub fn new(epsilon: BigRational, lambda: BigRational, delta: BigRational) -> Result<Self, HaltError> {
        let zero = BigRational::zero();
        let one = BigRational::one();
        if !(zero < lambda && lambda < epsilon && epsilon < one) {
            return Err(HaltError::Domain(format!("need 0 < λ < ε < 1, got λ = {lambda}, ε = {epsilon}")));
        }
        if !(zero < delta && delta < one) {
            return Err(HaltError::Domain(format!("need 0 < δ < 1, got δ = {delta}")));
        }
        Ok(EstimationParams { epsilon, lambda, delta })
    }

    pub fn parse(epsilon: &str, lambda: &str, delta: &str) -> Result<Self, HaltError> {
        Self::new(parse_rational(epsilon)?, parse_rational(lambda)?, parse_rational(delta)?)
    }

    pub fn sample_size(&self) -> Result<u64, HaltError> {
        sample_size(&self.lambda, &self.delta)
    }
}

pub(crate) mod rational_text {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let text = String::deserialize(d)?;
        super::parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

/// Enclosure `[lo, hi]` of `atanh(y)` for rational `0 ≤ y < 1` using `terms`
/// terms of `Σ y^(2i+1)/(2i+1)`.
fn atanh_bounds(y: &BigRational, terms: u32) -> (BigRational, BigRational) {
    let y2 = y * y;
    let mut power = y.clone();
    let mut sum = BigRational::zero();
    for i in 0..terms {
        sum += &power / BigRational::from_integer(BigInt::from(2 * i + 1));
        power *= &y2;
    }
    // Remaining terms are at most y^(2n+1)/(2n+1) · 1/(1 − y²).
    let n = BigRational::from_integer(BigInt::from(2 * terms + 1));
    let tail = &power / (n * (BigRational::one() - y2));
    (sum.clone(), sum + tail)
}

/// Enclosure of `ln x` for rational `x ≥ 1`.
fn ln_bounds(x: &BigRational, terms: u32) -> (BigRational, BigRational) {
    assert!(*x >= BigRational::one());
    // x = 2^k · m with 1 ≤ m < 2
    let mut k = x.numer().bits() as i64 - x.denom().bits() as i64;
    let two = BigRational::from_integer(BigInt::from(2));
    let scale = |k: i64| {
        if k >= 0 {
            BigRational::from_integer(BigInt::one() << k as usize)
        } else {
            BigRational::new(BigInt::one(), BigInt::one() << (-k) as usize)
        }
    };
    let mut m = x / scale(k);
    while m >= two {
        m /= &two;
        k += 1;
    }
    while m < BigRational::one() {
        m *= &two;
        k -= 1;
    }
    let one = BigRational::one();
    let y = (&m - &one) / (&m + &one);
    let (m_lo, m_hi) = atanh_bounds(&y, terms);
    let third = BigRational::new(BigInt::one(), BigInt::from(3));
    let (l2_lo, l2_hi) = atanh_bounds(&third, terms);
    let k = BigRational::from_integer(BigInt::from(k));
    (&two * (&k * l2_lo + m_lo), &two * (k * l2_hi + m_hi))
}

fn ceil_rational(r: &BigRational) -> BigInt {
    r.ceil().to_integer()
}

/// `⌈ln(1/δ) / (2λ²)⌉`, certified exact.
pub fn sample_size(lambda: &BigRational, delta: &BigRational) -> Result<u64, HaltError> {
    let zero = BigRational::zero();
    let one = BigRational::one();
    if !(zero < *lambda && *lambda < one) {
        return Err(HaltError::Domain(format!("λ must lie in (0, 1), got {lambda}")));
    }
    if !(zero < *delta && *delta < one) {
        return Err(HaltError::Domain(format!("δ must lie in (0, 1), got {delta}")));
    }
    let inv_delta = delta.recip();
    let factor = (lambda * lambda * BigRational::from_integer(BigInt::from(2))).recip();
    let mut terms = 16;
    loop {
        let (lo, hi) = ln_bounds(&inv_delta, terms);
        let (lo, hi) = (ceil_rational(&(lo * &factor)), ceil_rational(&(hi * &factor)));
        if lo == hi {
            return lo.to_u64().ok_or(HaltError::Overflow);
        }
        if terms > 4096 {
            return Err(HaltError::Uncertified);
        }
        terms *= 2;
    }
}

/// `exp(−2Ñλ²)`: the confidence complement an affordable sample size buys.
pub fn confidence_from_sample(n: u64, lambda: &BigRational) -> Result<f64, HaltError> {
    if n == 0 {
        return Err(HaltError::Domain("sample size must be at least 1".into()));
    }
    if !(lambda.is_positive() && *lambda < BigRational::one()) {
        return Err(HaltError::Domain(format!("λ must lie in (0, 1), got {lambda}")));
    }
    let l = lambda.to_f64().unwrap_or(0.0);
    Ok((-2.0 * n as f64 * l * l).exp())
}

/// Exact rational for an `f64`, used to feed a computed δ back into
/// [`sample_size`].
pub fn rational_from_f64(x: f64) -> Option<BigRational> {
    BigRational::from_float(x)
}

/// `⌈(1 − ε)·n⌉`, clamped to `[1, n]`: the rank of the `(1−ε)`-quantile.
pub(crate) fn quantile_rank(epsilon: &BigRational, n: usize) -> usize {
    let q = (BigRational::one() - epsilon) * BigRational::from_integer(BigInt::from(n));
    q.ceil().to_integer().to_usize().unwrap_or(n).clamp(1, n.max(1))
}
