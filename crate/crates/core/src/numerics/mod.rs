//! Shared numeric kernel: bracketing root finder, adaptive Simpson
//! quadrature, exact and log-space binomials, unit-ball volumes and a
//! grid-plus-refinement maximizer on rectangles.

mod binomial;
mod maximize;
mod quad;
mod root;

pub use binomial::{
    log_ball_volume, log_binomial, log_binomial_lgamma, BigBinomial, EXACT_BINOMIAL_MAX_N,
};
pub use maximize::{maximize_2d, Domain2d, Maximum2d};
pub use quad::{integrate_adaptive, integrate_log_odds, LOG_ODDS_ENDPOINT_OFFSET};
pub use root::{bracket_root, find_root_monotone, RootBracket};

use crate::error::{Error, Result};

/// Stopping rules shared by the root finder and the quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_iter: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            abs_tol: 1e-12,
            rel_tol: 1e-10,
            max_iter: 200,
        }
    }
}

impl Tolerance {
    pub fn new(abs_tol: f64, rel_tol: f64, max_iter: usize) -> Result<Self> {
        let ok = |v: f64| v.is_finite() && v > 0.0;
        if !ok(abs_tol) || !ok(rel_tol) || max_iter == 0 {
            return Err(Error::domain(format!(
                "tolerances must be positive and finite with max_iter >= 1 \
                 (abs_tol = {abs_tol}, rel_tol = {rel_tol}, max_iter = {max_iter})"
            )));
        }
        Ok(Tolerance {
            abs_tol,
            rel_tol,
            max_iter,
        })
    }

    /// Same tolerance with both `abs_tol` and `rel_tol` set to `tol`.
    pub fn uniform(tol: f64) -> Result<Self> {
        Tolerance::new(tol, tol, Tolerance::default().max_iter)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_nonpositive_tolerances() {
        assert!(Tolerance::new(0.0, 1e-10, 10).is_err());
        assert!(Tolerance::new(1e-12, -1.0, 10).is_err());
        assert!(Tolerance::new(1e-12, 1e-10, 0).is_err());
        assert!(Tolerance::new(f64::NAN, 1e-10, 10).is_err());
        assert_eq!(
            Tolerance::new(1e-12, 1e-10, 200).unwrap(),
            Tolerance::default()
        );
    }
}
