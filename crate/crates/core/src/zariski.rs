//! Zariski decomposition `D_{a,b} = P_{a,b} + N_{a,b}` for `a + b ≥ 1`.
//!
//! With `Θ = [ϑ, θ]` the positive part is `P = θC₀ − ϑC∞` with the radial
//! Green function
//!
//! ```text
//! p(z) = −θ log|z|²                      for |z| ≤ r_in  = √(b(1−θ)/(aθ))
//!        −log|z|² + log(a|z|² + b)       for r_in < |z| < r_out
//!        −ϑ log|z|²                      for |z| ≥ r_out = √(b(1−ϑ)/(aϑ))
//! ```
//!
//! with `r_in = 0` when `θ = 1` and `r_out = ∞` when `ϑ = 0`, so that `p = g`
//! for nef divisors. At `a + b = 1` both radii are 1 and `p = −b log|z|²`.

use std::cmp::Ordering;
use std::f64::consts::PI;

use num_complex::Complex64;

use crate::charfun::{
    phi_unchecked, theta_interval, Params, SpherePoint, ThetaInterval, ThetaKind,
};
use crate::error::{Error, Result};
use crate::numerics::Tolerance;

/// Angular samples for discrete circle means.
pub const CIRCLE_SAMPLES: usize = 720;
/// Circle radius as a fraction of the centre's modulus.
pub const CIRCLE_EPS_FRACTION: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RadialFormula {
    /// `−κ log|z|²`.
    PureLog(f64),
    /// `−log|z|² + log(a|z|² + b)`.
    FullGreen { a: f64, b: f64 },
}

impl RadialFormula {
    /// Value at `x = |z|²`, extended to `x ∈ {0, ∞}`.
    pub fn eval_sq(&self, x: f64) -> f64 {
        match *self {
            RadialFormula::PureLog(k) => {
                if k == 0.0 {
                    0.0
                } else {
                    -k * x.ln()
                }
            }
            RadialFormula::FullGreen { a, b } => full_green(a, b, x),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            RadialFormula::PureLog(_) => "PureLog",
            RadialFormula::FullGreen { .. } => "FullGreen",
        }
    }
}

fn full_green(a: f64, b: f64, x: f64) -> f64 {
    if x == 0.0 {
        f64::INFINITY
    } else if x.is_infinite() {
        a.ln()
    } else if a * x <= b {
        b.ln() - x.ln() + (a * x / b).ln_1p()
    } else {
        a.ln() + (b / (a * x)).ln_1p()
    }
}

/// One radial piece on `r_lo ≤ |z| ≤ r_hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialPiece {
    pub r_lo: f64,
    pub r_hi: f64,
    pub formula: RadialFormula,
}

/// Piecewise-radial Green function; the pieces tile `[0, ∞]` in order.
#[derive(Debug, Clone, PartialEq)]
pub struct GreenProfile {
    pieces: Vec<RadialPiece>,
}

impl GreenProfile {
    /// Drops empty pieces and merges neighbours with the same formula.
    pub fn new(pieces: Vec<RadialPiece>) -> Result<Self> {
        let mut out: Vec<RadialPiece> = Vec::new();
        for piece in pieces.into_iter().filter(|q| q.r_hi > q.r_lo) {
            match out.last_mut() {
                Some(last) if last.formula == piece.formula && last.r_hi == piece.r_lo => {
                    last.r_hi = piece.r_hi
                }
                Some(last) if last.r_hi != piece.r_lo => {
                    return Err(Error::domain(format!(
                        "pieces do not tile: gap at {} / {}",
                        last.r_hi, piece.r_lo
                    )))
                }
                _ => out.push(piece),
            }
        }
        match (out.first(), out.last()) {
            (Some(f), Some(l)) if f.r_lo == 0.0 && l.r_hi == f64::INFINITY => {
                Ok(GreenProfile { pieces: out })
            }
            _ => Err(Error::domain("profile must cover [0, ∞]")),
        }
    }

    pub fn pieces(&self) -> &[RadialPiece] {
        &self.pieces
    }

    /// Radii where adjacent pieces meet.
    pub fn breakpoints(&self) -> Vec<f64> {
        self.pieces.windows(2).map(|w| w[0].r_hi).collect()
    }

    fn piece_at(&self, r: f64) -> &RadialPiece {
        self.pieces
            .iter()
            .find(|q| r <= q.r_hi)
            .unwrap_or_else(|| self.pieces.last().expect("nonempty profile"))
    }

    /// Value at `|z| = r`, `r ∈ [0, ∞]`.
    pub fn eval_radius(&self, r: f64) -> f64 {
        self.piece_at(r).formula.eval_sq(r * r)
    }

    /// `|left − right|` at each breakpoint.
    pub fn continuity_residuals(&self) -> Vec<(f64, f64)> {
        self.pieces
            .windows(2)
            .map(|w| {
                let x = w[0].r_hi * w[0].r_hi;
                (
                    w[0].r_hi,
                    (w[0].formula.eval_sq(x) - w[1].formula.eval_sq(x)).abs(),
                )
            })
            .collect()
    }
}

/// An arithmetic R-divisor `c0·C₀ + cinf·C∞` with a radial Green function.
#[derive(Debug, Clone, PartialEq)]
pub struct ArithRDivisor {
    pub c0: f64,
    pub cinf: f64,
    pub green: GreenProfile,
}

impl ArithRDivisor {
    /// `lim_{z→0} p(z) + c0·log|z|²`.
    pub fn regularized_at_zero(&self) -> f64 {
        match self.green.pieces[0].formula {
            RadialFormula::PureLog(k) if k == self.c0 => 0.0,
            RadialFormula::PureLog(_) => f64::NAN,
            RadialFormula::FullGreen { b, .. } if self.c0 == 1.0 => b.ln(),
            RadialFormula::FullGreen { .. } => f64::NAN,
        }
    }

    /// `lim_{z→∞} p(z) − cinf·log|z|²`.
    pub fn regularized_at_infinity(&self) -> f64 {
        match self.green.pieces.last().expect("nonempty profile").formula {
            RadialFormula::PureLog(k) if k == -self.cinf => 0.0,
            RadialFormula::PureLog(_) => f64::NAN,
            RadialFormula::FullGreen { a, .. } if self.cinf == 0.0 => a.ln(),
            RadialFormula::FullGreen { .. } => f64::NAN,
        }
    }
}

/// `a + b ≥ 1`: exact for rational parameters, within `1e-14` otherwise.
pub fn zariski_exists(p: &Params) -> bool {
    p.sum_cmp_one() != Ordering::Less
}

fn require_exists(p: &Params) -> Result<()> {
    if zariski_exists(p) {
        Ok(())
    } else {
        Err(Error::NoDecomposition { sum: p.a() + p.b() })
    }
}

fn theta_bounds(theta: &ThetaInterval, p: &Params) -> Result<(f64, f64)> {
    theta
        .bounds()
        .ok_or(Error::NoDecomposition { sum: p.a() + p.b() })
}

fn radius_for(p: &Params, x: f64) -> f64 {
    if x >= 1.0 {
        0.0
    } else if x <= 0.0 {
        f64::INFINITY
    } else {
        (p.b() * (1.0 - x) / (p.a() * x)).sqrt()
    }
}

/// `(r_in, r_out)`.
pub fn breakpoint_radii(p: &Params, theta: &ThetaInterval) -> Result<(f64, f64)> {
    let (lo, hi) = theta_bounds(theta, p)?;
    if theta.kind == ThetaKind::Point {
        return Ok((1.0, 1.0));
    }
    Ok((radius_for(p, hi), radius_for(p, lo)))
}

/// `P_{a,b} = (θC₀ − ϑC∞, p_{a,b})`.
pub fn positive_part(p: &Params, theta: &ThetaInterval) -> Result<ArithRDivisor> {
    require_exists(p)?;
    let (lo, hi) = theta_bounds(theta, p)?;
    let (r_in, r_out) = breakpoint_radii(p, theta)?;
    let (c0, cinf) = if theta.kind == ThetaKind::Point {
        (hi, -hi)
    } else {
        (hi, -lo)
    };
    let green = GreenProfile::new(vec![
        RadialPiece {
            r_lo: 0.0,
            r_hi: r_in,
            formula: RadialFormula::PureLog(c0),
        },
        RadialPiece {
            r_lo: r_in,
            r_hi: r_out,
            formula: RadialFormula::FullGreen { a: p.a(), b: p.b() },
        },
        RadialPiece {
            r_lo: r_out,
            r_hi: f64::INFINITY,
            formula: RadialFormula::PureLog(-cinf),
        },
    ])?;
    Ok(ArithRDivisor { c0, cinf, green })
}

/// `p(z)`; `+∞` at 0 when `c0 > 0`, `−∞` at ∞ when `cinf < 0`.
pub fn eval_positive_green(d: &ArithRDivisor, z: SpherePoint) -> f64 {
    match z {
        SpherePoint::Infinity => d.green.eval_radius(f64::INFINITY),
        SpherePoint::Finite(w) => d.green.eval_radius(w.norm()),
    }
}

/// `r₁ = p + θ log|z|²` on `|z| < r_out`: 0 inside `r_in`, then
/// `−(1−θ) log|z|² + log(a|z|² + b)`. At `z = 0` the limit is returned.
pub fn eval_r1(p: &Params, theta: &ThetaInterval, z: SpherePoint) -> Result<f64> {
    require_exists(p)?;
    let (_, hi) = theta_bounds(theta, p)?;
    let (r_in, r_out) = breakpoint_radii(p, theta)?;
    let r = match z {
        SpherePoint::Infinity => f64::INFINITY,
        SpherePoint::Finite(w) => w.norm(),
    };
    if r >= r_out {
        return Err(Error::domain(format!(
            "r1 is defined for |z| < {r_out}, got {r}"
        )));
    }
    if r <= r_in && r_in > 0.0 {
        return Ok(0.0);
    }
    if r == 0.0 {
        return Ok(p.b().ln());
    }
    let x = r * r;
    Ok(full_green(p.a(), p.b(), x) + hi * x.ln())
}

/// `r₂ = p + ϑ log|z|²` on `|z| > r_in`: 0 outside `r_out`, then
/// `−(1−ϑ) log|z|² + log(a|z|² + b)`. At `z = ∞` the limit is returned.
pub fn eval_r2(p: &Params, theta: &ThetaInterval, z: SpherePoint) -> Result<f64> {
    require_exists(p)?;
    let (lo, _) = theta_bounds(theta, p)?;
    let (r_in, r_out) = breakpoint_radii(p, theta)?;
    let r = match z {
        SpherePoint::Infinity => f64::INFINITY,
        SpherePoint::Finite(w) => w.norm(),
    };
    if r <= r_in {
        return Err(Error::domain(format!(
            "r2 is defined for |z| > {r_in}, got {r}"
        )));
    }
    if r >= r_out && r_out.is_finite() {
        return Ok(0.0);
    }
    if r.is_infinite() {
        return Ok(p.a().ln());
    }
    let x = r * r;
    Ok(full_green(p.a(), p.b(), x) + lo * x.ln())
}

/// `g_{a,b} − p` at `z`; `+∞` at 0 when `θ < 1` and at ∞ when `ϑ > 0`
/// (see [`negative_green_regularized`] for the finite limits).
pub fn negative_green(p: &Params, d: &ArithRDivisor, z: SpherePoint) -> Result<f64> {
    require_exists(p)?;
    let r = match z {
        SpherePoint::Infinity => f64::INFINITY,
        SpherePoint::Finite(w) => w.norm(),
    };
    let x = r * r;
    let g = full_green(p.a(), p.b(), x);
    let piece = d.green.piece_at(r).formula;
    if let RadialFormula::FullGreen { .. } = piece {
        return Ok(0.0);
    }
    let pv = piece.eval_sq(x);
    if g.is_infinite() && pv.is_infinite() && g.signum() == pv.signum() {
        // Both poles of the same sign: the difference is the pole of N.
        let k = if r == 0.0 { 1.0 - d.c0 } else { -d.cinf };
        return Ok(if k > 0.0 { f64::INFINITY } else { 0.0 });
    }
    Ok(g - pv)
}

/// Limits of `g − p + (1−θ) log|z|²` at 0 and `g − p − ϑ log|z|²` at ∞.
pub fn negative_green_regularized(p: &Params, d: &ArithRDivisor) -> Result<(f64, f64)> {
    require_exists(p)?;
    Ok((
        p.b().ln() - d.regularized_at_zero(),
        p.a().ln() - d.regularized_at_infinity(),
    ))
}

/// `D = P + N` with `N = (1−θ)C₀ + ϑC∞` and Green function `g − p`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZariskiDecomposition {
    pub params: Params,
    pub theta: ThetaInterval,
    pub radii: (f64, f64),
    pub positive: ArithRDivisor,
    /// Coefficients of `C₀` and `C∞` in `N`.
    pub negative_c0: f64,
    pub negative_cinf: f64,
}

impl ZariskiDecomposition {
    pub fn negative_green(&self, z: SpherePoint) -> f64 {
        negative_green(&self.params, &self.positive, z).expect("decomposition exists")
    }
}

pub fn zariski_decomposition(p: &Params, tol: Tolerance) -> Result<ZariskiDecomposition> {
    require_exists(p)?;
    let theta = theta_interval(p, tol)?;
    let positive = positive_part(p, &theta)?;
    let radii = breakpoint_radii(p, &theta)?;
    Ok(ZariskiDecomposition {
        params: p.clone(),
        theta,
        radii,
        negative_c0: 1.0 - positive.c0,
        negative_cinf: -positive.cinf,
        positive,
    })
}

/// `(1/N) Σ_k f(z₀ + ε e^{2πik/N})` for a radial `f`.
pub fn circle_mean(profile: &GreenProfile, center: f64, eps: f64, samples: usize) -> f64 {
    let c = Complex64::new(center, 0.0);
    (0..samples)
        .map(|k| {
            let t = 2.0 * PI * k as f64 / samples as f64;
            profile.eval_radius((c + Complex64::from_polar(eps, t)).norm())
        })
        .sum::<f64>()
        / samples as f64
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubMeanCheck {
    pub radius: f64,
    pub center_value: f64,
    pub circle_mean: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NefWitness {
    /// Regularized degree of `P` on `C₀`, `lim p + θ log|z|²`.
    pub degree_c0: f64,
    /// Regularized degree of `P` on `C∞`, `lim p + ϑ log|z|²`.
    pub degree_cinf: f64,
    /// Degrees are `≥ −1e-9` and vanish (within `1e-9`) whenever the
    /// corresponding breakpoint radius is finite and positive.
    pub degrees_ok: bool,
    /// `min (p + θ log|z|²)` over the samples.
    pub effectivity_min: f64,
    pub effectivity_ok: bool,
    pub sub_mean: Vec<SubMeanCheck>,
    pub passed: bool,
}

/// Runtime checks that `P` is nef: degrees on the fibres `C₀`, `C∞`,
/// effectivity of `P − θ·(z)` and sub-mean-value inequalities at the
/// breakpoint circles.
pub fn nef_witness(p: &Params, d: &ArithRDivisor, samples: usize) -> Result<NefWitness> {
    require_exists(p)?;
    if samples < 2 {
        return Err(Error::domain("need at least 2 samples"));
    }
    let (degree_c0, degree_cinf) = (d.regularized_at_zero(), d.regularized_at_infinity());
    let bps = d.green.breakpoints();
    let inner_cut = d.green.pieces[0].formula != full(p);
    let outer_cut = d.green.pieces.last().expect("nonempty profile").formula != full(p);
    let deg_ok = |v: f64, cut: bool| v >= -1e-9 && (!cut || v.abs() <= 1e-9);
    let degrees_ok = deg_ok(degree_c0, inner_cut) && deg_ok(degree_cinf, outer_cut);

    let theta = d.c0;
    let mut effectivity_min = f64::INFINITY;
    for k in 0..samples {
        let s = -12.0 + 24.0 * k as f64 / (samples - 1) as f64;
        let r = 10f64.powf(s);
        let v = d.green.eval_radius(r) + theta * (r * r).ln();
        effectivity_min = effectivity_min.min(v);
    }
    for &r in &bps {
        effectivity_min = effectivity_min.min(d.green.eval_radius(r) + theta * (r * r).ln());
    }
    let effectivity_ok = effectivity_min >= -1e-12;

    let sub_mean: Vec<SubMeanCheck> = bps
        .iter()
        .filter(|r| r.is_finite() && **r > 0.0)
        .map(|&r| {
            let center_value = d.green.eval_radius(r);
            let mean = circle_mean(&d.green, r, CIRCLE_EPS_FRACTION * r, CIRCLE_SAMPLES);
            SubMeanCheck {
                radius: r,
                center_value,
                circle_mean: mean,
                passed: center_value <= mean + 1e-9,
            }
        })
        .collect();
    let passed = degrees_ok && effectivity_ok && sub_mean.iter().all(|c| c.passed);
    Ok(NefWitness {
        degree_c0,
        degree_cinf,
        degrees_ok,
        effectivity_min,
        effectivity_ok,
        sub_mean,
        passed,
    })
}

fn full(p: &Params) -> RadialFormula {
    RadialFormula::FullGreen { a: p.a(), b: p.b() }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitEntry {
    pub t: f64,
    pub theta_distance: f64,
    pub vartheta_distance: f64,
    /// `sup |p_{ta,tb} + b log|z|²|` over the annulus.
    pub sup_distance: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LimitReport {
    pub annulus: (f64, f64),
    pub entries: Vec<LimitEntry>,
    /// Each of the three distances strictly decreases along the sequence.
    pub monotone: bool,
}

/// Radii sampled on the annulus by [`limit_positive_parts`].
pub const LIMIT_SAMPLES: usize = 2001;

/// Positive parts of `D_{ta,tb}` for `t → 1⁺` at a point with `a + b = 1`,
/// compared with `b·(z) = (bC₀ − bC∞, −b log|z|²)` on `rmin ≤ |z| ≤ rmax`.
pub fn limit_positive_parts(
    p: &Params,
    ts: &[f64],
    annulus: (f64, f64),
    tol: Tolerance,
) -> Result<LimitReport> {
    if p.sum_cmp_one() != Ordering::Equal {
        return Err(Error::domain(format!(
            "limit needs a + b = 1, got {}",
            p.a() + p.b()
        )));
    }
    let (rmin, rmax) = annulus;
    if !(rmin > 0.0 && rmax > rmin && rmax.is_finite()) {
        return Err(Error::domain(format!("bad annulus [{rmin}, {rmax}]")));
    }
    if ts.iter().any(|&t| t.is_nan() || t <= 1.0) {
        return Err(Error::domain("scaling factors must exceed 1"));
    }
    let b = p.b();
    let mut entries = Vec::with_capacity(ts.len());
    for &t in ts {
        let q = p.scaled(t)?;
        let theta = theta_interval(&q, tol)?;
        let (lo, hi) = theta_bounds(&theta, &q)?;
        let d = positive_part(&q, &theta)?;
        let mut radii: Vec<f64> = (0..LIMIT_SAMPLES)
            .map(|k| rmin * (rmax / rmin).powf(k as f64 / (LIMIT_SAMPLES - 1) as f64))
            .collect();
        radii.extend(
            d.green
                .breakpoints()
                .into_iter()
                .filter(|r| (rmin..=rmax).contains(r)),
        );
        let sup_distance = radii
            .iter()
            .map(|&r| (d.green.eval_radius(r) + b * (r * r).ln()).abs())
            .fold(0.0, f64::max);
        entries.push(LimitEntry {
            t,
            theta_distance: (hi - b).abs(),
            vartheta_distance: (lo - b).abs(),
            sup_distance,
        });
    }
    let monotone = entries.windows(2).all(|w| {
        w[1].theta_distance < w[0].theta_distance
            && w[1].vartheta_distance < w[0].vartheta_distance
            && w[1].sup_distance < w[0].sup_distance
    });
    Ok(LimitReport {
        annulus,
        entries,
        monotone,
    })
}

/// `φ(θ)` and `φ(ϑ)`: the regularized degrees expected from the formula.
pub fn expected_degrees(p: &Params, theta: &ThetaInterval) -> Option<(f64, f64)> {
    theta
        .bounds()
        .map(|(lo, hi)| (phi_unchecked(p, hi), phi_unchecked(p, lo)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charfun::green_g;

    fn p(a: f64, b: f64) -> Params {
        Params::new(a, b).unwrap()
    }

    fn th(q: &Params) -> ThetaInterval {
        theta_interval(q, Tolerance::default()).unwrap()
    }

    #[test]
    fn existence() {
        assert!(zariski_exists(&p(0.5, 0.5)));
        assert!(!zariski_exists(&p(0.3, 0.3)));
        assert!(zariski_exists(&p(2.0, 2.0)));
        assert!(matches!(
            zariski_decomposition(&p(0.3, 0.3), Tolerance::default()),
            Err(Error::NoDecomposition { .. })
        ));
    }

    #[test]
    fn radii() {
        assert_eq!(
            breakpoint_radii(&p(1.0, 1.0), &th(&p(1.0, 1.0))).unwrap(),
            (0.0, f64::INFINITY)
        );
        assert_eq!(
            breakpoint_radii(&p(0.5, 0.5), &th(&p(0.5, 0.5))).unwrap(),
            (1.0, 1.0)
        );
        let q = p(0.6, 0.6);
        let (ri, ro) = breakpoint_radii(&q, &th(&q)).unwrap();
        assert!(0.0 < ri && ri < 1.0 && 1.0 < ro && ro.is_finite());
    }

    #[test]
    fn positive_parts() {
        let half = p(0.5, 0.5);
        let d = positive_part(&half, &th(&half)).unwrap();
        assert_eq!((d.c0, d.cinf), (0.5, -0.5));
        assert_eq!(d.green.pieces().len(), 1);
        assert_eq!(d.green.pieces()[0].formula, RadialFormula::PureLog(0.5));
        assert_eq!(eval_positive_green(&d, SpherePoint::real(1.0)), 0.0);

        let one = p(1.0, 1.0);
        let d = positive_part(&one, &th(&one)).unwrap();
        assert_eq!((d.c0, d.cinf), (1.0, 0.0));
        assert_eq!(d.green.pieces().len(), 1);
        assert!((eval_positive_green(&d, SpherePoint::real(1.0)) - 2f64.ln()).abs() < 1e-15);

        let q = p(0.6, 0.6);
        let d = positive_part(&q, &th(&q)).unwrap();
        assert_eq!(d.green.pieces().len(), 3);
        assert!(d
            .green
            .continuity_residuals()
            .iter()
            .all(|&(_, e)| e < 1e-9));
    }

    #[test]
    fn r1_r2() {
        let q = p(0.6, 0.6);
        let theta = th(&q);
        let (ri, ro) = breakpoint_radii(&q, &theta).unwrap();
        assert_eq!(eval_r1(&q, &theta, SpherePoint::real(0.0)).unwrap(), 0.0);
        assert!(
            eval_r1(&q, &theta, SpherePoint::real(ri * 1.000001))
                .unwrap()
                .abs()
                < 1e-9
        );
        assert_eq!(eval_r2(&q, &theta, SpherePoint::Infinity).unwrap(), 0.0);
        assert!(eval_r1(&q, &theta, SpherePoint::real(ro)).is_err());
        assert!(eval_r2(&q, &theta, SpherePoint::real(ri)).is_err());
        for k in 1..200 {
            let r = ri + (ro - ri) * k as f64 / 200.0;
            assert!(eval_r1(&q, &theta, SpherePoint::real(r)).unwrap() >= -1e-12);
            assert!(eval_r2(&q, &theta, SpherePoint::real(r)).unwrap() >= -1e-12);
        }
    }

    #[test]
    fn negative_part() {
        let one = p(1.0, 1.0);
        let d = positive_part(&one, &th(&one)).unwrap();
        for &r in &[1e-3, 0.5, 1.0, 7.0] {
            assert_eq!(negative_green(&one, &d, SpherePoint::real(r)).unwrap(), 0.0);
        }
        let half = p(0.5, 0.5);
        let d = positive_part(&half, &th(&half)).unwrap();
        assert!(
            negative_green(&half, &d, SpherePoint::real(1.0))
                .unwrap()
                .abs()
                < 1e-15
        );
        let (z0, zi) = negative_green_regularized(&half, &d).unwrap();
        assert!((z0 - 0.5f64.ln()).abs() < 1e-15 && (zi - 0.5f64.ln()).abs() < 1e-15);
        // numeric limit of (g − p) + (1 − θ) log|z|² along |z| = 10^{-k}
        for k in 1..=6 {
            let r = 10f64.powi(-k);
            let v = negative_green(&half, &d, SpherePoint::real(r)).unwrap() + 0.5 * (r * r).ln();
            assert!((v - 0.5f64.ln()).abs() < 2.0 * r * r);
        }
        let q = p(0.6, 1.3);
        let d = positive_part(&q, &th(&q)).unwrap();
        for k in 0..400 {
            let r = 10f64.powf(-4.0 + 8.0 * k as f64 / 399.0);
            let z = SpherePoint::real(r);
            let n = negative_green(&q, &d, z).unwrap();
            assert!(n >= -1e-12);
            assert!((green_g(&q, z) - eval_positive_green(&d, z) - n).abs() < 1e-12);
        }
    }

    #[test]
    fn witnesses() {
        for &(a, b) in &[(1.0, 1.0), (0.6, 0.6), (0.5, 0.5), (0.3, 2.0), (4.0, 0.2)] {
            let q = p(a, b);
            let d = positive_part(&q, &th(&q)).unwrap();
            let w = nef_witness(&q, &d, 500).unwrap();
            assert!(w.passed, "({a},{b}) {w:?}");
        }
    }

    #[test]
    fn limits() {
        let half = p(0.5, 0.5);
        let r = limit_positive_parts(&half, &[1.1, 1.01, 1.001], (0.5, 2.0), Tolerance::default())
            .unwrap();
        assert!(r.monotone);
        assert!(r.entries[2].theta_distance < 0.03);
        assert!(
            limit_positive_parts(&p(0.6, 0.6), &[1.1], (0.5, 2.0), Tolerance::default()).is_err()
        );
    }
}
