//! Arithmetic volume `vol(D_{a,b}) = ∫_Θ φ`, the self-intersection
//! `deg(D_{a,b}²) = ∫₀¹ φ`, lattice-count estimates of the volume, and
//! rational parameters for big divisors without small sections.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::charfun::{phi_unchecked, theta_interval, Params, ThetaInterval, ThetaKind};
use crate::error::{Error, Result};
use crate::numerics::{integrate_adaptive, Tolerance};
use crate::sections::{ellipsoid_spec, h0_nonzero, lattice_count_bounds};

// Levels scanned when looking for the smallest n with nΘ ∩ Z ≠ ∅.
const SUGGEST_SCAN_LIMIT: u64 = 1_000_000;

fn xlogx(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

/// An antiderivative of `φ_{a,b}`:
/// `F(x) = log a·(x − x²/2) + log b·x²/2 − x² log x/2 + x²/4
///        + (1−x)² log(1−x)/2 − (1−x)²/4`.
pub fn phi_antiderivative(p: &Params, x: f64) -> f64 {
    let (la, lb) = (p.a().ln(), p.b().ln());
    let y = 1.0 - x;
    la * (x - 0.5 * x * x) + 0.5 * lb * x * x - 0.5 * x * xlogx(x)
        + 0.25 * x * x
        + 0.5 * y * xlogx(y)
        - 0.25 * y * y
}

/// `F(θ) − F(ϑ)`; 0 when `Θ` is empty or a point.
pub fn volume_closed(p: &Params, theta: &ThetaInterval) -> f64 {
    match (theta.kind, theta.bounds()) {
        (ThetaKind::Interval, Some((lo, hi))) => {
            (phi_antiderivative(p, hi) - phi_antiderivative(p, lo)).max(0.0)
        }
        _ => 0.0,
    }
}

/// Adaptive quadrature of `φ` over `Θ`.
pub fn volume_quadrature(p: &Params, theta: &ThetaInterval, tol: Tolerance) -> Result<f64> {
    match (theta.kind, theta.bounds()) {
        (ThetaKind::Interval, Some((lo, hi))) => {
            integrate_adaptive(|x| phi_unchecked(p, x), lo, hi, tol)
        }
        _ => Ok(0.0),
    }
}

/// `(log(ab) + 1)/2`.
pub fn selfint_degree(p: &Params) -> f64 {
    0.5 * ((p.a() * p.b()).ln() + 1.0)
}

/// `∫₀¹ φ` by quadrature, the independent route to [`selfint_degree`].
pub fn selfint_quadrature(p: &Params, tol: Tolerance) -> Result<f64> {
    integrate_adaptive(|x| phi_unchecked(p, x), 0.0, 1.0, tol)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeEstimate {
    /// `2·log_lower/(n+1)²`.
    pub lower: f64,
    /// `2·log_upper/(n+1)²`.
    pub upper: f64,
    pub n: u32,
    pub dim: usize,
}

/// Normalized Minkowski bounds at level `n`; both tend to the volume.
pub fn volume_lattice_estimate(
    p: &Params,
    n: u32,
    theta: &ThetaInterval,
) -> Result<LatticeEstimate> {
    if n == 0 {
        return Err(Error::domain("level must be at least 1"));
    }
    let spec = match ellipsoid_spec(p, n, theta) {
        Ok(s) => s,
        Err(Error::Empty(_)) => {
            return Err(Error::EmptyRange {
                n,
                suggested_n: smallest_valid_level(p, theta),
            })
        }
        Err(e) => return Err(e),
    };
    let b = lattice_count_bounds(&spec);
    let norm = 2.0 / (n as f64 + 1.0).powi(2);
    Ok(LatticeEstimate {
        lower: norm * b.log_lower,
        upper: norm * b.log_upper,
        n,
        dim: b.dim,
    })
}

/// Smallest `n ≥ 1` with `nΘ ∩ Z ≠ ∅`, if one is found.
pub fn smallest_valid_level(p: &Params, theta: &ThetaInterval) -> Option<u32> {
    if theta.is_empty() {
        return None;
    }
    // Every level beyond 1/|Θ| works; scan below that.
    let len = theta.length();
    let guaranteed = if len > 0.0 {
        (1.0 / len).ceil() as u64 + 1
    } else {
        SUGGEST_SCAN_LIMIT
    };
    let limit = guaranteed.min(SUGGEST_SCAN_LIMIT).min(u32::MAX as u64) as u32;
    (1..=limit)
        .find(|&n| h0_nonzero(p, n, theta))
        .or_else(|| (len > 0.0 && guaranteed <= u32::MAX as u64).then_some(guaranteed as u32))
}

#[derive(Debug, Clone, PartialEq)]
pub struct VolumeReport {
    pub closed: f64,
    pub quadrature: f64,
    pub lattice_lower: f64,
    pub lattice_upper: f64,
    pub n_used: u32,
}

/// All three volume computations; the lattice level is `n` or, when `nΘ ∩ Z`
/// is empty, the smallest valid level.
pub fn volume_report(p: &Params, n: u32, tol: Tolerance) -> Result<VolumeReport> {
    let theta = theta_interval(p, tol)?;
    let closed = volume_closed(p, &theta);
    let quadrature = volume_quadrature(p, &theta, tol)?;
    let est = match volume_lattice_estimate(p, n, &theta) {
        Err(Error::EmptyRange {
            suggested_n: Some(m),
            ..
        }) if m > n => volume_lattice_estimate(p, m, &theta)?,
        other => other?,
    };
    Ok(VolumeReport {
        closed,
        quadrature,
        lattice_lower: est.lower,
        lattice_upper: est.upper,
        n_used: est.n,
    })
}

/// Rational `(a, b)` with `0 < a, b < 1 < a + b` and `Ĥ⁰(lD) = {0}` for
/// `l = 1..=n`, together with how it was found.
#[derive(Debug, Clone, PartialEq)]
pub struct GapParams {
    pub params: Params,
    pub a: BigRational,
    pub b: BigRational,
    /// Base point `(a', b') = (n/(n+1), 1/(n+1))` on `a + b = 1`.
    pub base: (BigRational, BigRational),
    /// `λ = 1 + 2^{-k}`.
    pub lambda: BigRational,
    pub k: u32,
    /// `h0_nonzero(l)` for `l = 1..=n`; all false.
    pub h0_nonzero: Vec<bool>,
}

/// Scales the base point `(n/(n+1), 1/(n+1))` by `λ_k = 1 + 2^{-k}`, taking
/// the first `k` with `λa' < 1`, `λb' < 1` and `φ_{a',b'}(1/n) + log λ < 0`.
/// The last condition is tested exactly in the form
/// `λ^n·(n a'/(n−1))^{n−1}·n b' < 1` (`λ b' < 1` when `n = 1`).
///
/// Then `φ_{a,b}(0) < 0`, `φ_{a,b}(1/n) < 0` and the maximum of `φ_{a,b}` sits
/// at `b' < 1/n`, so `Θ_{a,b} ⊂ (0, 1/n)` and no `k/l` with `l ≤ n` lies in
/// it.
pub fn construct_gap_params(n: u32) -> Result<GapParams> {
    if n == 0 {
        return Err(Error::domain("n must be at least 1"));
    }
    let one = BigRational::one();
    let np1 = BigRational::from_integer(BigInt::from(n + 1));
    let a0 = BigRational::from_integer(BigInt::from(n)) / &np1;
    let b0 = one.clone() / &np1;
    let margin = if n == 1 {
        b0.clone()
    } else {
        let nn = BigRational::from_integer(BigInt::from(n));
        let base = &nn * &a0 / BigRational::from_integer(BigInt::from(n - 1));
        num_traits::pow(base, (n - 1) as usize) * (&nn * &b0)
    };
    let mut k = 0u32;
    let lambda = loop {
        k += 1;
        let lambda = &one + BigRational::new(BigInt::one(), BigInt::from(2u8).pow(k));
        let ok = (&lambda * &a0) < one
            && (&lambda * &b0) < one
            && num_traits::pow(lambda.clone(), n as usize) * &margin < one;
        if ok {
            break lambda;
        }
        if k > 4096 {
            return Err(Error::Convergence {
                iterations: k as usize,
                context: "λ search".into(),
            });
        }
    };
    let a = &lambda * &a0;
    let b = &lambda * &b0;
    let params = Params::from_rationals(a.clone(), b.clone())?;
    let theta = theta_interval(&params, Tolerance::default())?;
    let h0 = (1..=n).map(|l| h0_nonzero(&params, l, &theta)).collect();
    debug_assert_eq!(params.sum_cmp_one(), Ordering::Greater);
    debug_assert!(a < one && b < one && !a.is_zero());
    Ok(GapParams {
        params,
        a,
        b,
        base: (a0, b0),
        lambda,
        k,
        h0_nonzero: h0,
    })
}
