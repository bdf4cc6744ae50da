use super::Tolerance;
use crate::error::{Error, Result};

/// Final bracket `[lo, hi]` around a sign change of `f`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootBracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
    pub iterations: usize,
}

impl RootBracket {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    /// The bracket endpoint with the smaller residual.
    pub fn estimate(&self) -> f64 {
        if self.f_lo.abs() <= self.f_hi.abs() {
            self.lo
        } else {
            self.hi
        }
    }
}

/// Shrinks `[lo, hi]` around a sign change of `f` until the width is at most
/// `tol.abs_tol` or no floating point number lies strictly between the ends.
///
/// Steps are secant (regula falsi) proposals; whenever a step fails to halve
/// the bracket the next one is a plain bisection, so the width at least
/// halves every two iterations.
pub fn bracket_root<F>(f: F, lo: f64, hi: f64, tol: Tolerance) -> Result<RootBracket>
where
    F: Fn(f64) -> f64,
{
    if !(lo.is_finite() && hi.is_finite()) || lo > hi {
        return Err(Error::domain(format!("invalid bracket [{lo}, {hi}]")));
    }
    let eval = |x: f64| {
        let v = f(x);
        if v.is_nan() {
            Err(Error::domain(format!("f({x}) is NaN")))
        } else {
            Ok(v)
        }
    };
    let (mut lo, mut hi) = (lo, hi);
    let mut f_lo = eval(lo)?;
    let mut f_hi = eval(hi)?;
    if f_lo == 0.0 {
        return Ok(RootBracket {
            lo,
            hi: lo,
            f_lo,
            f_hi: f_lo,
            iterations: 0,
        });
    }
    if f_hi == 0.0 {
        return Ok(RootBracket {
            lo: hi,
            hi,
            f_lo: f_hi,
            f_hi,
            iterations: 0,
        });
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::Bracket { lo, hi, f_lo, f_hi });
    }

    let mut bisect_next = false;
    for iter in 0..tol.max_iter {
        let width = hi - lo;
        let mid = lo + 0.5 * width;
        if width <= tol.abs_tol || mid <= lo || mid >= hi {
            return Ok(RootBracket {
                lo,
                hi,
                f_lo,
                f_hi,
                iterations: iter,
            });
        }
        let mut x = mid;
        if !bisect_next && f_lo.is_finite() && f_hi.is_finite() {
            let secant = lo - f_lo * width / (f_hi - f_lo);
            if secant > lo && secant < hi {
                x = secant;
            }
        }
        let fx = eval(x)?;
        if fx == 0.0 {
            return Ok(RootBracket {
                lo: x,
                hi: x,
                f_lo: fx,
                f_hi: fx,
                iterations: iter + 1,
            });
        }
        if fx.signum() == f_lo.signum() {
            lo = x;
            f_lo = fx;
        } else {
            hi = x;
            f_hi = fx;
        }
        bisect_next = hi - lo > 0.5 * width;
    }
    Err(Error::Convergence {
        iterations: tol.max_iter,
        context: format!("root bracket still [{lo}, {hi}]"),
    })
}

/// Root of a continuous function that changes sign on `[lo, hi]`.
pub fn find_root_monotone<F>(f: F, lo: f64, hi: f64, tol: Tolerance) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    bracket_root(f, lo, hi, tol).map(|b| b.estimate())
}
