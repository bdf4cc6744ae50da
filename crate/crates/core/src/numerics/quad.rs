use super::Tolerance;
use crate::error::{Error, Result};

const INITIAL_PANELS: usize = 16;
const MAX_DEPTH: u32 = 64;
const MAX_EVALUATIONS: usize = 20_000_000;

/// Offset used to step off the logarithmic endpoint singularities of
/// `log(1/t - 1)`; the skipped pieces are added back analytically.
pub const LOG_ODDS_ENDPOINT_OFFSET: f64 = 1e-15;

struct Simpson<'a, F> {
    f: &'a F,
    evaluations: usize,
}

impl<F: Fn(f64) -> f64> Simpson<'_, F> {
    fn eval(&mut self, x: f64) -> Result<f64> {
        self.evaluations += 1;
        if self.evaluations > MAX_EVALUATIONS {
            return Err(Error::Convergence {
                iterations: MAX_EVALUATIONS,
                context: "adaptive Simpson evaluation budget exhausted".into(),
            });
        }
        let v = (self.f)(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::domain(format!(
                "integrand is not finite at x = {x}: {v}"
            )))
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn refine(
        &mut self,
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_mid: f64,
        f_hi: f64,
        whole: f64,
        eps: f64,
        depth: u32,
    ) -> Result<f64> {
        let mid = 0.5 * (lo + hi);
        let lm = 0.5 * (lo + mid);
        let rm = 0.5 * (mid + hi);
        let f_lm = self.eval(lm)?;
        let f_rm = self.eval(rm)?;
        let h = (hi - lo) / 12.0;
        let left = h * (f_lo + 4.0 * f_lm + f_mid);
        let right = h * (f_mid + 4.0 * f_rm + f_hi);
        let delta = left + right - whole;
        // error from rounding the node positions and the integrand values
        let roundoff = 32.0
            * f64::EPSILON
            * (lo.abs().max(hi.abs()) * ((f_hi - f_mid).abs() + (f_mid - f_lo).abs())
                + (hi - lo) * (f_lo.abs() + f_mid.abs() + f_hi.abs()));
        if depth >= MAX_DEPTH || delta.abs() <= (15.0 * eps).max(roundoff) || lm <= lo || rm >= hi {
            return Ok(left + right + delta / 15.0);
        }
        let a = self.refine(lo, mid, f_lo, f_lm, f_mid, left, 0.5 * eps, depth + 1)?;
        let b = self.refine(mid, hi, f_mid, f_rm, f_hi, right, 0.5 * eps, depth + 1)?;
        Ok(a + b)
    }
}

/// Adaptive Simpson quadrature of `f` over `[lo, hi]`.
///
/// The interval is first cut into 16 equal panels; a composite Simpson pass
/// over them fixes the target error `max(abs_tol, rel_tol·|estimate|)`, which
/// is then shared among panels in proportion to their width. Every
/// evaluation, endpoints included, must be finite.
pub fn integrate_adaptive<F>(f: F, lo: f64, hi: f64, tol: Tolerance) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if !(lo.is_finite() && hi.is_finite()) {
        return Err(Error::domain(format!(
            "integration bounds must be finite: [{lo}, {hi}]"
        )));
    }
    if lo == hi {
        return Ok(0.0);
    }
    if lo > hi {
        return integrate_adaptive(f, hi, lo, tol).map(|v| -v);
    }
    let mut s = Simpson {
        f: &f,
        evaluations: 0,
    };
    let width = (hi - lo) / INITIAL_PANELS as f64;
    let nodes: Vec<f64> = (0..=2 * INITIAL_PANELS)
        .map(|k| {
            if k == 2 * INITIAL_PANELS {
                hi
            } else {
                lo + 0.5 * width * k as f64
            }
        })
        .collect();
    let values = nodes
        .iter()
        .map(|&x| s.eval(x))
        .collect::<Result<Vec<_>>>()?;
    let panels: Vec<f64> = (0..INITIAL_PANELS)
        .map(|p| {
            let (a, m, b) = (2 * p, 2 * p + 1, 2 * p + 2);
            (nodes[b] - nodes[a]) / 6.0 * (values[a] + 4.0 * values[m] + values[b])
        })
        .collect();
    let estimate: f64 = panels.iter().sum();
    let eps = tol.abs_tol.max(tol.rel_tol * estimate.abs()) / INITIAL_PANELS as f64;
    let mut total = 0.0;
    for (p, &whole) in panels.iter().enumerate() {
        let (a, m, b) = (2 * p, 2 * p + 1, 2 * p + 2);
        total += s.refine(
            nodes[a], nodes[b], values[a], values[m], values[b], whole, eps, 0,
        )?;
    }
    Ok(total)
}

// ∫ -log t dt = t - t log t
fn neg_log_antiderivative(t: f64) -> f64 {
    if t == 0.0 {
        0.0
    } else {
        t - t * t.ln()
    }
}

/// `∫_lo^hi log(1/t - 1) dt` for `0 ≤ lo ≤ hi ≤ 1` by adaptive quadrature.
///
/// Within [`LOG_ODDS_ENDPOINT_OFFSET`] of 0 (resp. 1) the integrand is
/// replaced by its leading term `-log t` (resp. `log(1-t)`), whose integral
/// is closed form; the neglected part is `O(ε²)`.
pub fn integrate_log_odds(lo: f64, hi: f64, tol: Tolerance) -> Result<f64> {
    if !(0.0..=1.0).contains(&lo) || !(0.0..=1.0).contains(&hi) || lo > hi {
        return Err(Error::domain(format!(
            "need 0 <= lo <= hi <= 1, got [{lo}, {hi}]"
        )));
    }
    let eps = LOG_ODDS_ENDPOINT_OFFSET;
    let mut tail = 0.0;
    let mut a = lo;
    let mut b = hi;
    if a < eps {
        let top = b.min(eps);
        tail += neg_log_antiderivative(top) - neg_log_antiderivative(a);
        a = top;
    }
    if b > 1.0 - eps {
        let bottom = a.max(1.0 - eps);
        // ∫ log(1-t) dt over [bottom, b] = -∫ -log u du over u ∈ [1-b, 1-bottom]
        tail -= neg_log_antiderivative(1.0 - bottom) - neg_log_antiderivative(1.0 - b);
        b = bottom;
    }
    if a >= b {
        return Ok(tail);
    }
    let body = integrate_adaptive(|t: f64| (-t).ln_1p() - t.ln(), a, b, tol)?;
    Ok(body + tail)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tight() -> Tolerance {
        Tolerance::new(1e-300, 1e-12, 200).unwrap()
    }

    #[test]
    fn constant() {
        let v = integrate_adaptive(|_| 1.0, 0.0, 1.0, Tolerance::default()).unwrap();
        assert!((v - 1.0).abs() < 1e-15);
    }

    #[test]
    fn reversed_and_empty_intervals() {
        let t = Tolerance::default();
        assert_eq!(integrate_adaptive(|x| x, 2.0, 2.0, t).unwrap(), 0.0);
        let v = integrate_adaptive(|x| x, 1.0, 0.0, t).unwrap();
        assert!((v + 0.5).abs() < 1e-14);
    }

    #[test]
    fn natural_entropy_integrates_to_one_half() {
        let h = |x: f64| {
            let a = if x > 0.0 { -x * x.ln() } else { 0.0 };
            let b = if x < 1.0 {
                -(1.0 - x) * (1.0 - x).ln()
            } else {
                0.0
            };
            a + b
        };
        let v = integrate_adaptive(h, 0.0, 1.0, tight()).unwrap();
        assert!((v - 0.5).abs() < 1e-11, "{v}");
    }

    #[test]
    fn peaked_integrand_meets_relative_tolerance() {
        // ∫₀¹ u^20 (1-u)^5 du = B(21, 6) = 20! 5! / 26!
        let exact = 1.0 / (26.0 * 25.0 * 24.0 * 23.0 * 22.0 * 21.0) * 120.0;
        let v =
            integrate_adaptive(|u: f64| u.powi(20) * (1.0 - u).powi(5), 0.0, 1.0, tight()).unwrap();
        assert!(((v - exact) / exact).abs() < 1e-10);
    }

    #[test]
    fn non_finite_values_are_domain_errors() {
        // 0.5 is one of the initial nodes.
        let err = integrate_adaptive(|x: f64| 1.0 / (x - 0.5), 0.0, 1.0, Tolerance::default())
            .unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
    }

    #[test]
    fn log_odds_integral_matches_entropy_antiderivative() {
        // ∫_lo^hi log(1/t - 1) dt = h(hi) - h(lo), h(t) = -t log t - (1-t) log(1-t)
        let h = |t: f64| {
            let a = if t > 0.0 { -t * t.ln() } else { 0.0 };
            let b = if t < 1.0 {
                -(1.0 - t) * (1.0 - t).ln()
            } else {
                0.0
            };
            a + b
        };
        for &(lo, hi) in &[
            (0.0, 0.25),
            (0.0, 1.0),
            (0.1, 0.9),
            (0.3, 1.0),
            (0.0, 0.0),
            (1.0, 1.0),
        ] {
            let v = integrate_log_odds(lo, hi, tight()).unwrap();
            assert!((v - (h(hi) - h(lo))).abs() < 1e-11, "[{lo},{hi}]: {v}");
        }
        assert!(integrate_log_odds(0.5, 0.2, tight()).is_err());
        assert!(integrate_log_odds(-0.1, 0.2, tight()).is_err());
    }
}
