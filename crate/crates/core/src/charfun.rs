//! The characteristic function `φ_{a,b}`, the set `Θ_{a,b}` where it is
//! nonnegative, the Green function `g_{a,b}` and the geography of `D_{a,b}`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::numerics::{bracket_root, Tolerance};

/// Float tolerance for deciding `a + b = 1` when no exact value is known.
pub const BOUNDARY_TOL: f64 = 1e-14;

/// Exact rational values of `(a, b)`, when the caller supplied them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactParams {
    pub a: BigRational,
    pub b: BigRational,
}

/// The pair `(a, b)` of positive reals defining `D_{a,b}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Params {
    a: f64,
    b: f64,
    exact: Option<ExactParams>,
}

impl Params {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && a > 0.0 && b > 0.0) {
            return Err(Error::domain(format!(
                "a and b must be positive and finite, got ({a}, {b})"
            )));
        }
        Ok(Params { a, b, exact: None })
    }

    pub fn from_rationals(a: BigRational, b: BigRational) -> Result<Self> {
        if !a.is_positive() || !b.is_positive() {
            return Err(Error::domain(format!(
                "a and b must be positive, got ({a}, {b})"
            )));
        }
        let af = ratio_to_f64(&a);
        let bf = ratio_to_f64(&b);
        let mut p = Params::new(af, bf)?;
        p.exact = Some(ExactParams { a, b });
        Ok(p)
    }

    /// Shorthand for small rationals `an/ad`, `bn/bd`.
    pub fn from_ratios(an: i64, ad: i64, bn: i64, bd: i64) -> Result<Self> {
        if ad == 0 || bd == 0 {
            return Err(Error::domain("zero denominator"));
        }
        Params::from_rationals(
            BigRational::new(an.into(), ad.into()),
            BigRational::new(bn.into(), bd.into()),
        )
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn exact(&self) -> Option<&ExactParams> {
        self.exact.as_ref()
    }

    /// `(t·a, t·b)`; exactness is kept only for rational `t`, see
    /// [`Params::scaled_exact`].
    pub fn scaled(&self, t: f64) -> Result<Params> {
        Params::new(t * self.a, t * self.b)
    }

    pub fn scaled_exact(&self, t: &BigRational) -> Result<Params> {
        match &self.exact {
            Some(e) => Params::from_rationals(&e.a * t, &e.b * t),
            None => self.scaled(ratio_to_f64(t)),
        }
    }

    /// Position of `a + b` relative to 1: exact for rational parameters,
    /// otherwise within [`BOUNDARY_TOL`].
    pub fn sum_cmp_one(&self) -> Ordering {
        if let Some(e) = &self.exact {
            return (&e.a + &e.b).cmp(&BigRational::one());
        }
        let d = self.a + self.b - 1.0;
        if d.abs() <= BOUNDARY_TOL {
            Ordering::Equal
        } else if d < 0.0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }

    fn a_cmp_one(&self) -> Ordering {
        match &self.exact {
            Some(e) => e.a.cmp(&BigRational::one()),
            None => self.a.total_cmp(&1.0),
        }
    }

    fn b_cmp_one(&self) -> Ordering {
        match &self.exact {
            Some(e) => e.b.cmp(&BigRational::one()),
            None => self.b.total_cmp(&1.0),
        }
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.exact {
            Some(e) => write!(f, "({}, {})", e.a, e.b),
            None => write!(f, "({}, {})", self.a, self.b),
        }
    }
}

pub(crate) fn ratio_to_f64(r: &BigRational) -> f64 {
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    // large numerator/denominator: shift both into range
    let nb = r.numer().bits() as i64;
    let db = r.denom().bits() as i64;
    let shift_n = (nb - 900).max(0) as usize;
    let shift_d = (db - 900).max(0) as usize;
    let n = (r.numer() >> shift_n).to_f64().unwrap_or(f64::NAN);
    let d = (r.denom() >> shift_d).to_f64().unwrap_or(f64::NAN);
    n / d * 2f64.powi((shift_n as i64 - shift_d as i64) as i32)
}

/// A point of the Riemann sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpherePoint {
    Finite(Complex64),
    Infinity,
}

impl SpherePoint {
    pub fn real(r: f64) -> Self {
        SpherePoint::Finite(Complex64::new(r, 0.0))
    }

    pub fn polar(r: f64, angle: f64) -> Self {
        SpherePoint::Finite(Complex64::from_polar(r, angle))
    }

    /// `|z|²`, or `None` at infinity.
    pub fn modulus_sq(&self) -> Option<f64> {
        match self {
            SpherePoint::Finite(z) => Some(z.norm_sqr()),
            SpherePoint::Infinity => None,
        }
    }
}

fn xlogx(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

/// `φ_{a,b}(x) = (1-x)log a + x log b - x log x - (1-x)log(1-x)` on `[0, 1]`,
/// with `0·log 0 = 0`.
pub fn phi(p: &Params, x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::domain(format!(
            "φ is defined on [0, 1], got x = {x}"
        )));
    }
    Ok(phi_unchecked(p, x))
}

pub(crate) fn phi_unchecked(p: &Params, x: f64) -> f64 {
    if x == 0.0 {
        return p.a.ln();
    }
    if x == 1.0 {
        return p.b.ln();
    }
    let y = 1.0 - x;
    y * p.a.ln() + x * p.b.ln() - xlogx(x) - xlogx(y)
}

/// `n·φ(i/n)`, computed without forming `i/n`.
pub(crate) fn n_phi_at(p: &Params, n: u64, i: u64) -> f64 {
    let (nf, fi, fj) = (n as f64, i as f64, (n - i) as f64);
    let mut v = fj * p.a.ln() + fi * p.b.ln();
    if i > 0 {
        v -= fi * (fi / nf).ln();
    }
    if i < n {
        v -= fj * (fj / nf).ln();
    }
    v
}

/// Compares `exp(n·φ(i/n)) = a^{n-i} b^i n^n / (i^i (n-i)^{n-i})` with the
/// integer `k`, exactly.
pub fn exp_n_phi_cmp_exact(e: &ExactParams, n: u64, i: u64, k: &BigUint) -> Result<Ordering> {
    if i > n || n == 0 {
        return Err(Error::domain(format!(
            "need 0 <= i <= n, n >= 1 (n = {n}, i = {i})"
        )));
    }
    let j = n - i;
    let pow = |r: &BigRational, k: u64| -> BigRational {
        let k = usize::try_from(k).expect("exponent fits usize");
        num_traits::pow(r.clone(), k)
    };
    let upow = |base: u64, k: u64| -> BigInt {
        let k = usize::try_from(k).expect("exponent fits usize");
        BigInt::from(num_traits::pow(BigUint::from(base), k))
    };
    let lhs = pow(&e.a, j) * pow(&e.b, i) * BigRational::from_integer(upow(n, n));
    let rhs = BigRational::from_integer(upow(i, i) * upow(j, j) * BigInt::from(k.clone()));
    Ok(lhs.cmp(&rhs))
}

/// Exact sign of `φ(i/n)` for rational parameters.
pub fn phi_sign_at_ratio_exact(e: &ExactParams, n: u64, i: u64) -> Result<Ordering> {
    exp_n_phi_cmp_exact(e, n, i, &BigUint::one())
}

/// `(b/(a+b), log(a+b))`: location and value of the maximum of `φ`.
pub fn phi_max(p: &Params) -> (f64, f64) {
    (p.b / (p.a + p.b), (p.a + p.b).ln())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThetaKind {
    Empty,
    Point,
    Interval,
}

/// `Θ_{a,b} = {x ∈ [0,1] : φ(x) ≥ 0}` as `[lower, upper]`.
///
/// Endpoints found by root finding are the inner ends of the final bracket,
/// so `φ ≥ 0` holds at them as evaluated and `φ < 0` just outside
/// `[lower - solver_tol, upper + solver_tol]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaInterval {
    pub kind: ThetaKind,
    pub lower: Option<f64>,
    pub upper: Option<f64>,
    pub solver_tol: f64,
}

impl ThetaInterval {
    pub fn empty(solver_tol: f64) -> Self {
        ThetaInterval {
            kind: ThetaKind::Empty,
            lower: None,
            upper: None,
            solver_tol,
        }
    }

    pub fn bounds(&self) -> Option<(f64, f64)> {
        self.lower.zip(self.upper)
    }

    pub fn is_empty(&self) -> bool {
        self.kind == ThetaKind::Empty
    }

    pub fn length(&self) -> f64 {
        self.bounds().map_or(0.0, |(lo, hi)| hi - lo)
    }

    /// Membership widened by `solver_tol` on both sides.
    pub fn contains(&self, x: f64) -> bool {
        self.bounds()
            .is_some_and(|(lo, hi)| x >= lo - self.solver_tol && x <= hi + self.solver_tol)
    }
}

/// Computes `Θ_{a,b}` using the monotonicity of `φ` on either side of its
/// maximum `b/(a+b)`.
pub fn theta_interval(p: &Params, tol: Tolerance) -> Result<ThetaInterval> {
    let stol = tol.abs_tol;
    match p.sum_cmp_one() {
        Ordering::Less => return Ok(ThetaInterval::empty(stol)),
        Ordering::Equal => {
            let m = phi_max(p).0;
            return Ok(ThetaInterval {
                kind: ThetaKind::Point,
                lower: Some(m),
                upper: Some(m),
                solver_tol: stol,
            });
        }
        Ordering::Greater => {}
    }
    let peak = phi_max(p).0;
    let f = |x: f64| phi_unchecked(p, x);
    let lower = if p.a_cmp_one() != Ordering::Less {
        0.0
    } else {
        // φ(0) < 0 < φ(peak); keep the end with φ ≥ 0
        bracket_root(f, 0.0, peak, tol)?.hi
    };
    let upper = if p.b_cmp_one() != Ordering::Less {
        1.0
    } else {
        bracket_root(f, peak, 1.0, tol)?.lo
    };
    Ok(ThetaInterval {
        kind: ThetaKind::Interval,
        lower: Some(lower),
        upper: Some(upper),
        solver_tol: stol,
    })
}

/// Positivity class of `D_{a,b}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GeographyClass {
    Ample,
    NefNotAmple,
    BigNotNef,
    PseudoEffectiveBoundary,
    NotPseudoEffective,
}

impl GeographyClass {
    pub fn name(&self) -> &'static str {
        match self {
            GeographyClass::Ample => "Ample",
            GeographyClass::NefNotAmple => "NefNotAmple",
            GeographyClass::BigNotNef => "BigNotNef",
            GeographyClass::PseudoEffectiveBoundary => "PseudoEffectiveBoundary",
            GeographyClass::NotPseudoEffective => "NotPseudoEffective",
        }
    }

    pub fn is_nef(&self) -> bool {
        matches!(self, GeographyClass::Ample | GeographyClass::NefNotAmple)
    }

    pub fn is_big(&self) -> bool {
        matches!(
            self,
            GeographyClass::Ample | GeographyClass::NefNotAmple | GeographyClass::BigNotNef
        )
    }
}

impl fmt::Display for GeographyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn classify(p: &Params) -> GeographyClass {
    use Ordering::*;
    match p.sum_cmp_one() {
        Less => return GeographyClass::NotPseudoEffective,
        Equal => return GeographyClass::PseudoEffectiveBoundary,
        Greater => {}
    }
    match (p.a_cmp_one(), p.b_cmp_one()) {
        (Greater, Greater) => GeographyClass::Ample,
        (Less, _) | (_, Less) => GeographyClass::BigNotNef,
        _ => GeographyClass::NefNotAmple,
    }
}

/// `g_{a,b}(z) = -log|z|² + log(a|z|² + b)`: `+∞` at 0, `log a` at ∞.
pub fn green_g(p: &Params, z: SpherePoint) -> f64 {
    match z.modulus_sq() {
        None => p.a.ln(),
        Some(x) => green_g_radial(p, x),
    }
}

/// `g_{a,b}` as a function of `x = |z|²`.
pub fn green_g_radial(p: &Params, x: f64) -> f64 {
    if x == 0.0 {
        f64::INFINITY
    } else if x.is_infinite() {
        p.a.ln()
    } else if x >= 1.0 {
        (p.a + p.b / x).ln()
    } else {
        (p.a * x + p.b).ln() - x.ln()
    }
}

/// `lim_{z→0} g_{a,b}(z) + log|z|² = log b`.
pub fn green_g_regularized_at_zero(p: &Params) -> f64 {
    p.b.ln()
}

/// Multiplier `c = (t^α s^β)^{1/(α+β)}` with
/// `α·D_{ta,tb} + β·D_{sa,sb} = (α+β)·D_{ca,cb}`; returns `(ca, cb)`.
pub fn scaling_combine(alpha: f64, t: f64, beta: f64, s: f64, p: &Params) -> Result<Params> {
    let sum = alpha + beta;
    if sum == 0.0 || !sum.is_finite() {
        return Err(Error::domain(format!("α + β must be nonzero, got {sum}")));
    }
    if !(t > 0.0 && s > 0.0 && t.is_finite() && s.is_finite()) {
        return Err(Error::domain(format!(
            "t and s must be positive, got ({t}, {s})"
        )));
    }
    let log_c = (alpha * t.ln() + beta * s.ln()) / sum;
    p.scaled(log_c.exp())
}

/// Makes an exact rational from a float (exact binary value).
pub fn rational_from_f64(x: f64) -> Option<BigRational> {
    BigRational::from_float(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(a: f64, b: f64) -> Params {
        Params::new(a, b).unwrap()
    }

    #[test]
    fn phi_reference_values() {
        let ln2 = 2f64.ln();
        assert!((phi(&p(1.0, 1.0), 0.5).unwrap() - ln2).abs() < 1e-15);
        assert_eq!(phi(&p(3.0, 0.2), 0.0).unwrap(), 3f64.ln());
        assert_eq!(phi(&p(3.0, 0.2), 1.0).unwrap(), 0.2f64.ln());
        // (1/2)log(2/9) + log 2
        let v = phi(&p(2.0 / 3.0, 1.0 / 3.0), 0.5).unwrap();
        assert!((v - (-0.058891517828191)).abs() < 1e-12, "{v}");
        assert!(phi(&p(1.0, 1.0), 1.5).is_err());
        assert!(phi(&p(1.0, 1.0), -0.0).is_ok());
    }

    #[test]
    fn phi_max_values() {
        assert_eq!(phi_max(&p(1.0, 1.0)), (0.5, 2f64.ln()));
        assert_eq!(phi_max(&p(0.5, 0.5)), (0.5, 0.0));
        assert_eq!(phi_max(&p(2.0, 6.0)), (0.75, 8f64.ln()));
    }

    #[test]
    fn n_phi_matches_phi() {
        let q = p(0.7, 1.9);
        for n in 1..30u64 {
            for i in 0..=n {
                let direct = n as f64 * phi(&q, i as f64 / n as f64).unwrap();
                assert!((n_phi_at(&q, n, i) - direct).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn exact_sign_of_phi() {
        let half = Params::from_ratios(1, 2, 1, 2).unwrap();
        let e = half.exact().unwrap();
        assert_eq!(phi_sign_at_ratio_exact(e, 2, 1).unwrap(), Ordering::Equal);
        assert_eq!(phi_sign_at_ratio_exact(e, 3, 1).unwrap(), Ordering::Less);
        let one = Params::from_ratios(1, 1, 1, 1).unwrap();
        assert_eq!(
            phi_sign_at_ratio_exact(one.exact().unwrap(), 5, 0).unwrap(),
            Ordering::Equal
        );
        assert_eq!(
            phi_sign_at_ratio_exact(one.exact().unwrap(), 5, 2).unwrap(),
            Ordering::Greater
        );
    }

    #[test]
    fn theta_examples() {
        let t = Tolerance::default();
        let th = theta_interval(&p(1.0, 1.0), t).unwrap();
        assert_eq!(
            (th.kind, th.bounds()),
            (ThetaKind::Interval, Some((0.0, 1.0)))
        );
        let th = theta_interval(&p(0.5, 0.5), t).unwrap();
        assert_eq!((th.kind, th.bounds()), (ThetaKind::Point, Some((0.5, 0.5))));
        let th = theta_interval(&p(0.3, 0.3), t).unwrap();
        assert_eq!(th.kind, ThetaKind::Empty);
        assert!(!th.contains(0.5));
    }

    #[test]
    fn theta_endpoints_are_roots() {
        let q = p(0.6, 0.6);
        let th = theta_interval(&q, Tolerance::default()).unwrap();
        let (lo, hi) = th.bounds().unwrap();
        assert!(phi(&q, lo).unwrap() >= 0.0 && phi(&q, hi).unwrap() >= 0.0);
        assert!(phi(&q, lo - 2e-12).unwrap() < 0.0 && phi(&q, hi + 2e-12).unwrap() < 0.0);
        assert!((lo + hi - 1.0).abs() < 1e-11);
    }

    #[test]
    fn classification_probes() {
        assert_eq!(classify(&p(2.0, 2.0)), GeographyClass::Ample);
        assert_eq!(classify(&p(1.0, 1.0)), GeographyClass::NefNotAmple);
        assert_eq!(classify(&p(1.0, 7.0)), GeographyClass::NefNotAmple);
        assert_eq!(classify(&p(0.6, 0.6)), GeographyClass::BigNotNef);
        assert_eq!(classify(&p(3.0, 0.2)), GeographyClass::BigNotNef);
        assert_eq!(
            classify(&p(0.5, 0.5)),
            GeographyClass::PseudoEffectiveBoundary
        );
        assert_eq!(classify(&p(0.3, 0.3)), GeographyClass::NotPseudoEffective);
        let third = Params::from_ratios(1, 3, 2, 3).unwrap();
        assert_eq!(classify(&third), GeographyClass::PseudoEffectiveBoundary);
        let off = Params::from_ratios(1, 3, 2000000001, 3000000000).unwrap();
        assert_eq!(classify(&off), GeographyClass::BigNotNef);
    }

    #[test]
    fn green_function_values() {
        let q = p(2.0, 3.0);
        assert!((green_g(&q, SpherePoint::polar(1.0, 0.7)) - 5f64.ln()).abs() < 1e-15);
        assert_eq!(green_g(&q, SpherePoint::Infinity), 2f64.ln());
        assert_eq!(green_g(&q, SpherePoint::real(0.0)), f64::INFINITY);
        assert_eq!(green_g_regularized_at_zero(&q), 3f64.ln());
        let r = 1e-8;
        let reg = green_g(&q, SpherePoint::real(r)) + (r * r).ln();
        assert!((reg - 3f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn scaling_multiplier() {
        let q = p(1.0, 1.0);
        let c = scaling_combine(1.0, 4.0, 1.0, 1.0, &q).unwrap();
        assert!((c.a() - 2.0).abs() < 1e-15);
        let c = scaling_combine(1.0, 3.0, 0.0, 9.0, &q).unwrap();
        assert!((c.a() - 3.0).abs() < 1e-15);
        let c = scaling_combine(1.0, 5.0, 1e-3, 5.0, &q).unwrap();
        assert!((c.a() - 5.0).abs() < 1e-13);
        assert!(scaling_combine(1.0, 2.0, -1.0, 3.0, &q).is_err());
    }

    #[test]
    fn exact_params_round_trip() {
        let q = Params::from_ratios(2, 3, 1, 3).unwrap();
        assert!((q.a() - 2.0 / 3.0).abs() < 1e-16);
        assert_eq!(q.sum_cmp_one(), Ordering::Equal);
        assert!(Params::from_ratios(-1, 2, 1, 2).is_err());
        assert!(Params::new(0.0, 1.0).is_err());
        assert!(Params::new(f64::INFINITY, 1.0).is_err());
    }
}
