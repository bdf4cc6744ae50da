use crate::error::{Error, Result};

/// Rectangle `[x.0, x.1] × [y.0, y.1]`; with `periodic_y` the second
/// coordinate wraps around with period `y.1 - y.0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Domain2d {
    pub x: (f64, f64),
    pub y: (f64, f64),
    pub periodic_y: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Maximum2d {
    pub location: (f64, f64),
    pub value: f64,
    /// Step size at which the local refinement stopped, per coordinate.
    pub final_step: (f64, f64),
    pub evaluations: usize,
}

const REFINED_CANDIDATES: usize = 4;

/// Maximum of `f` over `domain`: a `grid × grid` scan, then compass-search
/// refinement from the best few grid points.
///
/// The reported value is always an actual evaluation of `f`, so it can only
/// undershoot the true maximum (up to round-off in `f`).
pub fn maximize_2d<F>(f: F, domain: Domain2d, grid: usize, refine_iters: usize) -> Result<Maximum2d>
where
    F: Fn(f64, f64) -> f64,
{
    if grid < 16 {
        return Err(Error::domain(format!(
            "maximize_2d needs grid >= 16, got {grid}"
        )));
    }
    let (x0, x1) = domain.x;
    let (y0, y1) = domain.y;
    if !(x0.is_finite() && x1.is_finite() && y0.is_finite() && y1.is_finite()) || x0 > x1 || y0 > y1
    {
        return Err(Error::domain(format!("invalid rectangle {domain:?}")));
    }
    let mut evaluations = 0usize;
    let mut eval = |x: f64, y: f64| -> Result<f64> {
        evaluations += 1;
        let v = f(x, y);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::domain(format!(
                "objective is not finite at ({x}, {y}): {v}"
            )))
        }
    };

    let dx = (x1 - x0) / (grid - 1) as f64;
    let dy = if domain.periodic_y {
        (y1 - y0) / grid as f64
    } else {
        (y1 - y0) / (grid - 1) as f64
    };
    let mut samples = Vec::with_capacity(grid * grid);
    for ix in 0..grid {
        let x = if ix == grid - 1 {
            x1
        } else {
            x0 + dx * ix as f64
        };
        for iy in 0..grid {
            let y = if !domain.periodic_y && iy == grid - 1 {
                y1
            } else {
                y0 + dy * iy as f64
            };
            samples.push((eval(x, y)?, x, y));
        }
    }
    samples.sort_by(|a, b| b.0.total_cmp(&a.0));

    let clamp_x = |x: f64| x.clamp(x0, x1);
    let wrap_y = |y: f64| {
        if domain.periodic_y {
            let period = y1 - y0;
            if period > 0.0 {
                y0 + (y - y0).rem_euclid(period)
            } else {
                y0
            }
        } else {
            y.clamp(y0, y1)
        }
    };

    let mut best: Option<Maximum2d> = None;
    for &(v0, sx, sy) in samples.iter().take(REFINED_CANDIDATES) {
        let (mut x, mut y, mut v) = (sx, sy, v0);
        let (mut hx, mut hy) = (dx, dy);
        for _ in 0..refine_iters {
            let moves = [(hx, 0.0), (-hx, 0.0), (0.0, hy), (0.0, -hy)];
            let mut improved = false;
            for (mx, my) in moves {
                let (cx, cy) = (clamp_x(x + mx), wrap_y(y + my));
                if cx == x && cy == y {
                    continue;
                }
                let cv = eval(cx, cy)?;
                if cv > v {
                    x = cx;
                    y = cy;
                    v = cv;
                    improved = true;
                    break;
                }
            }
            if !improved {
                hx *= 0.5;
                hy *= 0.5;
                if hx <= f64::EPSILON * x.abs().max(1.0) && hy <= f64::EPSILON * y.abs().max(1.0) {
                    break;
                }
            }
        }
        if best.is_none_or(|b| v > b.value) {
            best = Some(Maximum2d {
                location: (x, y),
                value: v,
                final_step: (hx, hy),
                evaluations: 0,
            });
        }
    }
    let mut best = best.expect("grid has at least one sample");
    best.evaluations = evaluations;
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square(lo: f64, hi: f64) -> Domain2d {
        Domain2d {
            x: (lo, hi),
            y: (lo, hi),
            periodic_y: false,
        }
    }

    #[test]
    fn constant() {
        let m = maximize_2d(|_, _| 3.0, square(0.0, 1.0), 16, 50).unwrap();
        assert_eq!(m.value, 3.0);
    }

    #[test]
    fn quadratic_peak() {
        let f = |r: f64, t: f64| -(r - 1.0).powi(2) - (t - 2.0).powi(2);
        let m = maximize_2d(f, square(0.0, 3.0), 16, 200).unwrap();
        assert!(m.value <= 0.0 && m.value > -1e-20);
        assert!((m.location.0 - 1.0).abs() < 1e-9 && (m.location.1 - 2.0).abs() < 1e-9);
    }

    #[test]
    fn peak_across_the_periodic_seam() {
        use std::f64::consts::PI;
        let f = |_x: f64, t: f64| (t - 0.01).cos();
        let d = Domain2d {
            x: (0.0, 1.0),
            y: (0.0, 2.0 * PI),
            periodic_y: true,
        };
        let m = maximize_2d(f, d, 16, 200).unwrap();
        assert!((m.value - 1.0).abs() < 1e-14);
    }

    #[test]
    fn monomial_sup_at_infinity_in_compact_coordinates() {
        // |z|^{2n}/(a|z|^2+b)^n = x^n / a^n with x = a|z|^2/(a|z|^2+b) ∈ [0,1].
        let (a, n) = (0.7f64, 5);
        let d = Domain2d {
            x: (0.0, 1.0),
            y: (0.0, 1.0),
            periodic_y: true,
        };
        let m = maximize_2d(|x, _| x.powi(n) / a.powi(n), d, 16, 100).unwrap();
        assert!((m.value - a.powi(-n)).abs() < 1e-12);
    }

    #[test]
    fn errors() {
        assert!(maximize_2d(|_, _| 0.0, square(0.0, 1.0), 8, 10).is_err());
        assert!(maximize_2d(|x, _| 1.0 / (x - 0.0), square(0.0, 1.0), 16, 10).is_err());
    }
}
