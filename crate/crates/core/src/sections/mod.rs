//! Hermitian lattice data of `H⁰(P¹_Z, nC₀) = ⊕_{0≤i≤n} Z·z^{-i}` for the
//! metric `n·g_{a,b}` and the volume form `Φ_{a,b}`.
//!
//! A section `Σ c_i z^{-i}` has pointwise norm
//! `|Σ c_i z^{n-i}|² / (a|z|² + b)^n`. Writing `x = a|z|²/(a|z|² + b)`
//! (a compactified log-radius, `x ∈ [0, 1]` covers `0 ≤ |z| ≤ ∞`) the
//! monomial `z^{-i}` contributes `x^{n-i}(1-x)^i / (a^{n-i} b^i)`, which is
//! the form used by the sup-norm maximizer and the enumeration prunes.

mod ellipsoid;
mod enumerate;

pub use ellipsoid::{
    ellipsoid_lattice_count, ellipsoid_spec, lattice_count_bounds, EllipsoidSpec, LatticeBounds,
};
pub use enumerate::{
    h0_count_l2, h0_enumerate, h0_enumerate_with, EnumerateOptions, EnumeratedSection, Enumeration,
    SectionCount, SectionNorm, DEFAULT_ENUMERATION_CAP, DEFAULT_MAX_CANDIDATES,
};

use std::cmp::Ordering;
use std::f64::consts::PI;

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::charfun::{
    n_phi_at, phi_sign_at_ratio_exact, Params, SpherePoint, ThetaInterval, ThetaKind,
};
use crate::error::{Error, Result};
use crate::numerics::{
    integrate_adaptive, log_binomial, maximize_2d, BigBinomial, Domain2d, Tolerance,
};

/// Levels up to which `nΘ ∩ Z` membership is decided in exact rational
/// arithmetic when the parameters are rational.
pub const EXACT_MEMBERSHIP_MAX_N: u32 = 256;

/// Levels up to which exact rational norms are produced.
pub const EXACT_NORM_MAX_N: u32 = 64;

/// The monomial `z^{-i}` in `H⁰(nC₀)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MonomialBasisElement {
    pub n: u32,
    pub i: u32,
}

impl MonomialBasisElement {
    pub fn new(n: u32, i: u32) -> Result<Self> {
        if n == 0 || i > n {
            return Err(Error::domain(format!(
                "monomial needs n >= 1 and 0 <= i <= n (n = {n}, i = {i})"
            )));
        }
        Ok(MonomialBasisElement { n, i })
    }
}

/// `Σ_{i=0}^{n} c_i z^{-i}` with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntegerSection {
    n: u32,
    coeffs: Vec<i64>,
}

impl IntegerSection {
    pub fn new(n: u32, coeffs: Vec<i64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("section level must be at least 1"));
        }
        if coeffs.len() != n as usize + 1 {
            return Err(Error::domain(format!(
                "level {n} section needs {} coefficients, got {}",
                n + 1,
                coeffs.len()
            )));
        }
        Ok(IntegerSection { n, coeffs })
    }

    pub fn zero(n: u32) -> Result<Self> {
        IntegerSection::new(n, vec![0; n as usize + 1])
    }

    pub fn monomial(n: u32, i: u32, c: i64) -> Result<Self> {
        let mut s = IntegerSection::zero(n)?;
        if i > n {
            return Err(Error::domain(format!(
                "monomial index {i} exceeds level {n}"
            )));
        }
        s.coeffs[i as usize] = c;
        Ok(s)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Indices with nonzero coefficient.
    pub fn support(&self) -> Vec<u32> {
        (0..=self.n)
            .filter(|&i| self.coeffs[i as usize] != 0)
            .collect()
    }

    /// `(i, c_i)` when exactly one coefficient is nonzero.
    pub fn as_monomial(&self) -> Option<(u32, i64)> {
        match self.support().as_slice() {
            [i] => Some((*i, self.coeffs[*i as usize])),
            _ => None,
        }
    }

    /// The product `s·s`, a section of level `2n`.
    pub fn square(&self) -> IntegerSection {
        let n = self.n as usize;
        let mut out = vec![0i64; 2 * n + 1];
        for (i, &ci) in self.coeffs.iter().enumerate() {
            for (j, &cj) in self.coeffs.iter().enumerate() {
                out[i + j] += ci * cj;
            }
        }
        IntegerSection {
            n: 2 * self.n,
            coeffs: out,
        }
    }
}

/// `‖z^{-i}‖²_sup = exp(-n·φ(i/n))`.
pub fn monomial_sup_norm_sq(p: &Params, m: MonomialBasisElement) -> f64 {
    (-n_phi_at(p, m.n as u64, m.i as u64)).exp()
}

/// `log R_i` with `R_i = (n+1)·C(n,i)·a^{n-i}·b^i`, the reciprocal of the
/// squared L² norm of `z^{-i}`.
pub fn log_semi_axis_sq(p: &Params, n: u32, i: u32) -> Result<f64> {
    if i > n {
        return Err(Error::domain(format!("index {i} exceeds level {n}")));
    }
    Ok((n as f64 + 1.0).ln()
        + log_binomial(n as u64, i as u64)?
        + (n - i) as f64 * p.a().ln()
        + i as f64 * p.b().ln())
}

/// `R_i` exactly, for rational parameters.
pub fn semi_axis_sq_exact(p: &Params, n: u32, i: u32) -> Option<BigRational> {
    let e = p.exact()?;
    if i > n {
        return None;
    }
    let binom = BigBinomial::new(n as u64, i as u64).ok()?.value;
    let factor = BigRational::from_integer(BigInt::from(binom) * BigInt::from(n + 1));
    Some(
        factor
            * num_traits::pow(e.a.clone(), (n - i) as usize)
            * num_traits::pow(e.b.clone(), i as usize),
    )
}

/// `⟨z^{-i}, z^{-i}⟩ = 1 / ((n+1)·C(n,i)·a^{n-i}·b^i)`.
pub fn monomial_l2_norm_sq(p: &Params, m: MonomialBasisElement) -> f64 {
    if m.n <= EXACT_NORM_MAX_N {
        let binom = BigBinomial::new(m.n as u64, m.i as u64)
            .expect("valid monomial")
            .ln()
            .exp();
        let denom =
            (m.n as f64 + 1.0) * binom * p.a().powi((m.n - m.i) as i32) * p.b().powi(m.i as i32);
        if denom.is_finite() && denom > 0.0 {
            return 1.0 / denom;
        }
    }
    (-log_semi_axis_sq(p, m.n, m.i).expect("valid monomial")).exp()
}

/// Exact `⟨z^{-i}, z^{-i}⟩` for rational parameters and `n ≤ 64`.
pub fn monomial_l2_norm_sq_exact(p: &Params, m: MonomialBasisElement) -> Option<BigRational> {
    if m.n > EXACT_NORM_MAX_N {
        return None;
    }
    semi_axis_sq_exact(p, m.n, m.i).map(|r| r.recip())
}

/// `I(k, l) = ab ∫₀^∞ r^{l-k} / (ar + b)^{l+2} dr` by the recurrence
/// `I(k, l) = (l-k)/(a(l+1))·I(k, l-1)` from `I(k, k) = 1/((k+1)b^k)`.
pub fn radial_integral(p: &Params, k: u32, l: u32) -> Result<f64> {
    if k > l {
        return Err(Error::domain(format!(
            "radial integral needs k <= l (k = {k}, l = {l})"
        )));
    }
    let mut v = 1.0 / ((k as f64 + 1.0) * p.b().powi(k as i32));
    for m in (k + 1)..=l {
        v *= (m - k) as f64 / (p.a() * (m as f64 + 1.0));
    }
    Ok(v)
}

/// `I(k, l)` by adaptive quadrature after `r = u/(1-u)`:
/// `ab ∫₀¹ u^{l-k} (1-u)^k / (au + b(1-u))^{l+2} du`.
pub fn radial_integral_quadrature(p: &Params, k: u32, l: u32, tol: Tolerance) -> Result<f64> {
    if k > l {
        return Err(Error::domain(format!(
            "radial integral needs k <= l (k = {k}, l = {l})"
        )));
    }
    let (a, b) = (p.a(), p.b());
    let m = (l - k) as i32;
    let f = move |u: f64| {
        let w = 1.0 - u;
        u.powi(m) * w.powi(k as i32) / (a * u + b * w).powi(l as i32 + 2)
    };
    Ok(a * b * integrate_adaptive(f, 0.0, 1.0, tol)?)
}

/// `⟨z^{-i}, z^{-j}⟩_{n g}`: zero off the diagonal.
pub fn inner_product(
    p: &Params,
    m1: MonomialBasisElement,
    m2: MonomialBasisElement,
) -> Result<f64> {
    if m1.n != m2.n {
        return Err(Error::domain(format!(
            "level mismatch: {} vs {}",
            m1.n, m2.n
        )));
    }
    if m1.i != m2.i {
        return Ok(0.0);
    }
    Ok(monomial_l2_norm_sq(p, m1))
}

pub fn section_l2_norm_sq(p: &Params, s: &IntegerSection) -> f64 {
    s.coeffs
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| {
            let m = MonomialBasisElement {
                n: s.n,
                i: i as u32,
            };
            (c as f64).powi(2) * monomial_l2_norm_sq(p, m)
        })
        .sum()
}

pub fn section_l2_norm_sq_exact(p: &Params, s: &IntegerSection) -> Option<BigRational> {
    let mut total = BigRational::zero();
    for (i, &c) in s.coeffs.iter().enumerate() {
        if c != 0 {
            let m = MonomialBasisElement {
                n: s.n,
                i: i as u32,
            };
            let c2 = BigRational::from_integer(BigInt::from(c) * BigInt::from(c));
            total += c2 * monomial_l2_norm_sq_exact(p, m)?;
        }
    }
    Some(total)
}

/// `|z|²` at compact radial coordinate `x`: `b x / (a (1 - x))`.
pub fn radius_sq_from_compact(p: &Params, x: f64) -> f64 {
    if x >= 1.0 {
        f64::INFINITY
    } else {
        p.b() * x / (p.a() * (1.0 - x))
    }
}

/// `|s|²_{n g}` at compact radial coordinate `x ∈ [0,1]` and angle `t`.
pub fn section_pointwise_sq_compact(p: &Params, s: &IntegerSection, x: f64, t: f64) -> f64 {
    let n = s.n as i32;
    let u = (x / p.a()).sqrt();
    let v = ((1.0 - x) / p.b()).sqrt();
    let mut acc = Complex64::zero();
    for (i, &c) in s.coeffs.iter().enumerate() {
        if c != 0 {
            let i = i as i32;
            let amp = c as f64 * u.powi(n - i) * v.powi(i);
            acc += Complex64::from_polar(amp, (n - i) as f64 * t);
        }
    }
    acc.norm_sqr()
}

/// `|s|²_{n g}(z) = |Σ c_i z^{n-i}|² / (a|z|² + b)^n`.
pub fn section_pointwise_sq(p: &Params, s: &IntegerSection, z: SpherePoint) -> f64 {
    let n = s.n as i32;
    match z {
        SpherePoint::Infinity => (s.coeffs[0] as f64).powi(2) / p.a().powi(n),
        SpherePoint::Finite(z) => {
            let mut acc = Complex64::zero();
            for (i, &c) in s.coeffs.iter().enumerate() {
                acc += c as f64 * z.powi(n - i as i32);
            }
            acc.norm_sqr() / (p.a() * z.norm_sqr() + p.b()).powi(n)
        }
    }
}

/// Numerically maximized `‖s‖²_sup`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupNorm {
    pub value: f64,
    /// Relative band: the largest relative change of the objective over a
    /// `1e-6` neighbourhood of the maximizer, floored at `1e-12`.
    pub rel_uncertainty: f64,
    /// Maximizer as `(|z|, arg z)`.
    pub location: (f64, f64),
}

pub fn section_sup_norm_sq(p: &Params, s: &IntegerSection, tol: Tolerance) -> Result<SupNorm> {
    if s.is_zero() {
        return Err(Error::domain("sup norm of the zero section"));
    }
    let f = |x: f64, t: f64| section_pointwise_sq_compact(p, s, x, t);
    let domain = Domain2d {
        x: (0.0, 1.0),
        y: (0.0, 2.0 * PI),
        periodic_y: true,
    };
    let grid = (8 * (s.n as usize + 1)).max(32);
    let m = maximize_2d(f, domain, grid, tol.max_iter)?;
    let (x, t) = m.location;
    let d = 1e-6;
    let neighbours = [
        ((x + d).min(1.0), t),
        ((x - d).max(0.0), t),
        (x, t + d),
        (x, t - d),
    ];
    let spread = neighbours
        .iter()
        .map(|&(xx, tt)| (f(xx, tt) - m.value).abs())
        .fold(0.0, f64::max);
    Ok(SupNorm {
        value: m.value,
        rel_uncertainty: (spread / m.value).max(1e-12),
        location: (radius_sq_from_compact(p, x).sqrt(), t),
    })
}

/// Whether `i/n ∈ Θ`: exact for rational parameters and `n ≤ 256`,
/// otherwise `φ(i/n) ≥ -solver_tol` (or `|i - nθ| ≤ n·solver_tol` when `Θ`
/// is a point).
pub fn theta_contains_ratio(p: &Params, theta: &ThetaInterval, n: u32, i: u32) -> bool {
    if theta.is_empty() || i > n || n == 0 {
        return false;
    }
    if let Some(e) = p.exact() {
        if n <= EXACT_MEMBERSHIP_MAX_N {
            return phi_sign_at_ratio_exact(e, n as u64, i as u64)
                .map(|o| o != Ordering::Less)
                .unwrap_or(false);
        }
    }
    match theta.kind {
        ThetaKind::Point => {
            let c = theta.lower.expect("point has a value");
            (i as f64 - n as f64 * c).abs() <= n as f64 * theta.solver_tol
        }
        _ => n_phi_at(p, n as u64, i as u64) / n as f64 >= -theta.solver_tol,
    }
}

/// The exponents `i` with `i/n ∈ Θ`; `Ĥ⁰(nD)` spans `⊕ Z z^{-i}` over them.
pub fn h0_monomial_span(p: &Params, n: u32, theta: &ThetaInterval) -> Result<Vec<u32>> {
    if n == 0 {
        return Err(Error::domain("level must be at least 1"));
    }
    let span = candidate_range(theta, n)
        .map(|(lo, hi)| {
            (lo..=hi)
                .filter(|&i| theta_contains_ratio(p, theta, n, i))
                .collect::<Vec<_>>()
        })
        .unwrap_or_default();
    if span.is_empty() {
        return Err(Error::Empty(format!("nΘ ∩ Z is empty for n = {n} at {p}")));
    }
    Ok(span)
}

/// `Ĥ⁰(nD) ≠ {0}`, i.e. `nΘ ∩ Z ≠ ∅`.
pub fn h0_nonzero(p: &Params, n: u32, theta: &ThetaInterval) -> bool {
    n > 0 && h0_monomial_span(p, n, theta).is_ok()
}

// Integer window that can contain nΘ ∩ Z, padded by one on each side so the
// exact test has the final word.
fn candidate_range(theta: &ThetaInterval, n: u32) -> Option<(u32, u32)> {
    let (lo, hi) = theta.bounds()?;
    let nf = n as f64;
    let w = nf * theta.solver_tol + 1.0;
    let a = (nf * lo - w).floor().max(0.0) as u32;
    let b = ((nf * hi + w).ceil().min(nf)) as u32;
    (a <= b).then_some((a, b))
}

pub(crate) fn isqrt_floor_ratio(r: &BigRational) -> BigUint {
    let fl = r.floor().to_integer();
    if fl <= BigInt::zero() {
        return BigUint::zero();
    }
    fl.to_biguint().expect("positive").sqrt()
}

pub(crate) fn lcm_of_denominators(rs: &[BigRational]) -> BigInt {
    use num_integer::Integer;
    rs.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}
