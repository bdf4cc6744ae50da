//! The ellipsoid `K_n = {x : Σ_{i ∈ nΘ∩Z} x_i²/R_i ≤ 1}` and Minkowski-type
//! bounds on `#(K_n ∩ Z^m)`.

use num_rational::BigRational;

use super::enumerate::{count_ellipsoid, SectionCount};
use super::{h0_monomial_span, log_semi_axis_sq, semi_axis_sq_exact, EXACT_NORM_MAX_N};
use crate::charfun::{Params, ThetaInterval};
use crate::error::Result;
use crate::numerics::log_ball_volume;

#[derive(Debug, Clone, PartialEq)]
pub struct EllipsoidSpec {
    pub n: u32,
    /// `[ϑ_n, θ_n]`, the extreme integers of `nΘ ∩ Z`.
    pub range: (u32, u32),
    /// `log R_i` for `i` in `range`.
    pub log_semi_axes_sq: Vec<f64>,
    /// Exact `R_i` for rational parameters and `n ≤ 64`.
    pub semi_axes_sq_exact: Option<Vec<BigRational>>,
}

impl EllipsoidSpec {
    /// Dimension `m = θ_n − ϑ_n + 1`.
    pub fn dim(&self) -> usize {
        self.log_semi_axes_sq.len()
    }

    pub fn semi_axes_sq(&self) -> Vec<f64> {
        self.log_semi_axes_sq.iter().map(|l| l.exp()).collect()
    }
}

pub fn ellipsoid_spec(p: &Params, n: u32, theta: &ThetaInterval) -> Result<EllipsoidSpec> {
    let span = h0_monomial_span(p, n, theta)?;
    let (lo, hi) = (span[0], *span.last().expect("nonempty span"));
    let log_semi_axes_sq = (lo..=hi)
        .map(|i| log_semi_axis_sq(p, n, i))
        .collect::<Result<Vec<_>>>()?;
    let semi_axes_sq_exact = if n <= EXACT_NORM_MAX_N {
        (lo..=hi)
            .map(|i| semi_axis_sq_exact(p, n, i))
            .collect::<Option<Vec<_>>>()
    } else {
        None
    };
    Ok(EllipsoidSpec {
        n,
        range: (lo, hi),
        log_semi_axes_sq,
        semi_axes_sq_exact,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeBounds {
    pub log_lower: f64,
    pub log_upper: f64,
    pub dim: usize,
}

/// `log vol(K_n) − m log 2 ≤ log #(K_n ∩ Z^m) ≤ Σ log(2√R_i + 1)`.
///
/// The lower bound is Minkowski's: a symmetric convex body of volume
/// `2^m·N` contains at least `N` nonzero lattice point pairs. The upper
/// bound counts the enclosing box.
pub fn lattice_count_bounds(spec: &EllipsoidSpec) -> LatticeBounds {
    let m = spec.dim();
    let half_sum: f64 = spec.log_semi_axes_sq.iter().map(|l| 0.5 * l).sum();
    let log_lower = half_sum + log_ball_volume(m as u64).expect("dimension is valid")
        - m as f64 * std::f64::consts::LN_2;
    // log(2√R + 1) = log 2 + h + log(1 + e^{-h}/2), h = ½ log R
    let log_upper = spec
        .log_semi_axes_sq
        .iter()
        .map(|l| {
            let h = 0.5 * l;
            std::f64::consts::LN_2 + h + (0.5 * (-h).exp()).ln_1p()
        })
        .sum();
    LatticeBounds {
        log_lower,
        log_upper,
        dim: m,
    }
}

/// `#(K_n ∩ Z^m)` by exhaustive counting; exact for rational parameters.
pub fn ellipsoid_lattice_count(spec: &EllipsoidSpec) -> Result<SectionCount> {
    let mut c = count_ellipsoid(spec.semi_axes_sq_exact.clone(), &spec.log_semi_axes_sq)?;
    c.n = spec.n;
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charfun::theta_interval;
    use crate::numerics::Tolerance;

    #[test]
    fn specs() {
        let p = Params::from_ratios(1, 1, 1, 1).unwrap();
        let th = theta_interval(&p, Tolerance::default()).unwrap();
        let s = ellipsoid_spec(&p, 2, &th).unwrap();
        assert_eq!(s.range, (0, 2));
        let r = s.semi_axes_sq();
        for (x, want) in r.iter().zip([3.0, 6.0, 3.0]) {
            assert!((x - want).abs() < 1e-13);
        }
        let half = Params::from_ratios(1, 2, 1, 2).unwrap();
        let th = theta_interval(&half, Tolerance::default()).unwrap();
        let s = ellipsoid_spec(&half, 2, &th).unwrap();
        assert_eq!(s.range, (1, 1));
        assert_eq!(
            s.semi_axes_sq_exact.as_ref().unwrap()[0],
            BigRational::new(3.into(), 2.into())
        );
        assert!(ellipsoid_spec(&half, 3, &th).is_err());
    }

    #[test]
    fn one_dimensional_bounds() {
        let half = Params::from_ratios(1, 2, 1, 2).unwrap();
        let th = theta_interval(&half, Tolerance::default()).unwrap();
        let b = lattice_count_bounds(&ellipsoid_spec(&half, 2, &th).unwrap());
        assert!((b.log_lower - 0.5 * 1.5f64.ln()).abs() < 1e-14);
        assert!((b.log_upper - (2.0 * 1.5f64.sqrt() + 1.0).ln()).abs() < 1e-14);
    }

    #[test]
    fn count_inside_bounds() {
        let p = Params::from_ratios(1, 1, 1, 1).unwrap();
        let th = theta_interval(&p, Tolerance::default()).unwrap();
        let s = ellipsoid_spec(&p, 2, &th).unwrap();
        let c = ellipsoid_lattice_count(&s).unwrap();
        // x0²/3 + x1²/6 + x2²/3 ≤ 1 over the box |x0|,|x2| ≤ 1, |x1| ≤ 2
        let mut want = 0;
        for x0 in -1i64..=1 {
            for x1 in -2i64..=2 {
                for x2 in -1i64..=1 {
                    if 2 * x0 * x0 + x1 * x1 + 2 * x2 * x2 <= 6 {
                        want += 1;
                    }
                }
            }
        }
        assert_eq!(c.count, want);
        let b = lattice_count_bounds(&s);
        let lc = (c.count as f64).ln();
        assert!(b.log_lower <= lc && lc <= b.log_upper);
    }
}
