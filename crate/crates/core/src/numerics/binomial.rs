use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};

/// Largest `n` for which [`log_binomial`] goes through the exact big-integer
/// binomial.
pub const EXACT_BINOMIAL_MAX_N: u64 = 64;

/// Below this `min(i, n-i)` the float path sums `log((n-m+k)/k)` directly
/// instead of differencing log-gamma values.
const DIRECT_SUM_MAX_TERMS: u64 = 32;

/// `C(n, i)` as an exact integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigBinomial {
    pub n: u64,
    pub i: u64,
    pub value: BigUint,
}

impl BigBinomial {
    pub fn new(n: u64, i: u64) -> Result<Self> {
        if i > n {
            return Err(Error::domain(format!(
                "binomial index i = {i} exceeds n = {n}"
            )));
        }
        let m = i.min(n - i);
        let mut value = BigUint::one();
        for k in 1..=m {
            // exact at every step: value = C(n - m + k, k)
            value = value * BigUint::from(n - m + k) / BigUint::from(k);
        }
        Ok(BigBinomial { n, i, value })
    }

    pub fn ln(&self) -> f64 {
        big_ln(&self.value)
    }
}

pub(crate) fn big_ln(v: &BigUint) -> f64 {
    let bits = v.bits();
    if bits <= 1000 {
        return v.to_f64().expect("fits in f64").ln();
    }
    let shift = bits - 64;
    let top = (v >> shift).to_f64().expect("64-bit prefix");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Natural log of `C(n, i)`.
///
/// Exact big-integer binomial for `n ≤ 64`; above that a direct sum of
/// logs when `min(i, n-i)` is small and a log-gamma difference otherwise.
pub fn log_binomial(n: u64, i: u64) -> Result<f64> {
    if i > n {
        return Err(Error::domain(format!(
            "binomial index i = {i} exceeds n = {n}"
        )));
    }
    if n <= EXACT_BINOMIAL_MAX_N {
        return Ok(BigBinomial::new(n, i)?.ln());
    }
    let m = i.min(n - i);
    if m <= DIRECT_SUM_MAX_TERMS {
        let base = (n - m) as f64;
        return Ok((1..=m).map(|k| (base / k as f64).ln_1p()).sum());
    }
    log_binomial_lgamma(n, i)
}

/// `lnΓ(n+1) - lnΓ(i+1) - lnΓ(n-i+1)`, without the exact or direct-sum
/// shortcuts.
pub fn log_binomial_lgamma(n: u64, i: u64) -> Result<f64> {
    if i > n {
        return Err(Error::domain(format!(
            "binomial index i = {i} exceeds n = {n}"
        )));
    }
    let lg = |k: u64| libm::lgamma(k as f64 + 1.0);
    Ok(lg(n) - lg(i) - lg(n - i))
}

/// Log-volume of the Euclidean unit ball in `R^m`.
pub fn log_ball_volume(m: u64) -> Result<f64> {
    if m == 0 {
        return Err(Error::domain("ball dimension must be at least 1"));
    }
    let half = m as f64 / 2.0;
    Ok(half * std::f64::consts::PI.ln() - libm::lgamma(half + 1.0))
}
