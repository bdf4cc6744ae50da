//! Runtime invariant suites behind `p1z verify`.
//!
//! Every suite is deterministic (fixed seeds) and returns one [`Check`] per
//! property; a check that errors counts as failed with the error in its
//! detail.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::charfun::{
    classify, green_g, phi, scaling_combine, theta_interval, GeographyClass, Params, SpherePoint,
    ThetaKind,
};
use crate::error::{Error, Result};
use crate::numerics::{
    find_root_monotone, integrate_adaptive, integrate_log_odds, log_ball_volume, log_binomial,
    log_binomial_lgamma, BigBinomial, Tolerance,
};
use crate::sections::{
    ellipsoid_lattice_count, ellipsoid_spec, h0_enumerate_with, h0_monomial_span,
    lattice_count_bounds, monomial_l2_norm_sq, monomial_sup_norm_sq, radial_integral_quadrature,
    section_l2_norm_sq, section_sup_norm_sq, EnumerateOptions, IntegerSection,
    MonomialBasisElement, SectionNorm,
};
use crate::volume::{
    construct_gap_params, phi_antiderivative, selfint_degree, volume_closed,
    volume_lattice_estimate, volume_quadrature,
};
use crate::zariski::{
    eval_r1, eval_r2, limit_positive_parts, nef_witness, positive_part, RadialFormula,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Numerics,
    Charfun,
    Sections,
    Volume,
    Zariski,
    All,
}

impl Suite {
    pub fn name(&self) -> &'static str {
        match self {
            Suite::Numerics => "numerics",
            Suite::Charfun => "charfun",
            Suite::Sections => "sections",
            Suite::Volume => "volume",
            Suite::Zariski => "zariski",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "numerics" => Suite::Numerics,
            "charfun" => Suite::Charfun,
            "sections" => Suite::Sections,
            "volume" => Suite::Volume,
            "zariski" => Suite::Zariski,
            "all" => Suite::All,
            other => return Err(Error::domain(format!("unknown suite {other:?}"))),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub suite: &'static str,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

pub fn run_suite(suite: Suite) -> VerifyReport {
    let mut r = Runner {
        suite: "",
        checks: Vec::new(),
    };
    let all = suite == Suite::All;
    if all || suite == Suite::Numerics {
        numerics_suite(&mut r);
    }
    if all || suite == Suite::Charfun {
        charfun_suite(&mut r);
    }
    if all || suite == Suite::Sections {
        sections_suite(&mut r);
    }
    if all || suite == Suite::Volume {
        volume_suite(&mut r);
    }
    if all || suite == Suite::Zariski {
        zariski_suite(&mut r);
    }
    VerifyReport { checks: r.checks }
}

struct Runner {
    suite: &'static str,
    checks: Vec<Check>,
}

impl Runner {
    // `f` returns (passed, detail).
    fn check(&mut self, name: &'static str, f: impl FnOnce() -> Result<(bool, String)>) {
        let (passed, detail) = match f() {
            Ok(v) => v,
            Err(e) => (false, format!("error: {e}")),
        };
        self.checks.push(Check {
            suite: self.suite,
            name,
            passed,
            detail,
        });
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn tight() -> Tolerance {
    Tolerance {
        abs_tol: 1e-300,
        rel_tol: 1e-12,
        max_iter: 200,
    }
}

fn rel_err(x: f64, want: f64) -> f64 {
    (x - want).abs() / want.abs().max(f64::MIN_POSITIVE)
}

fn log_uniform(r: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    (r.gen_range(lo.ln()..hi.ln())).exp()
}

/// Random `(a, b)` with `a + b > 1`, both in `[0.05, 5]`.
fn random_big(r: &mut ChaCha8Rng) -> Params {
    loop {
        let (a, b) = (log_uniform(r, 0.05, 5.0), log_uniform(r, 0.05, 5.0));
        if a + b > 1.0 + 1e-6 {
            return Params::new(a, b).expect("positive");
        }
    }
}

fn numerics_suite(r: &mut Runner) {
    r.suite = "numerics";
    r.check("root_is_bracketed", || {
        let one = Params::new(1.0, 1.0)?;
        let tol = Tolerance::default();
        let f = |x: f64| phi(&one, x).expect("in range") - 0.5 * std::f64::consts::LN_2;
        let x = find_root_monotone(f, 0.0, 0.5, tol)?;
        let (lo, hi) = ((x - tol.abs_tol).max(0.0), (x + tol.abs_tol).min(0.5));
        Ok((f(lo) * f(hi) <= 0.0, format!("root {x}")))
    });
    r.check("quadrature_is_linear", || {
        let t = Tolerance::default();
        let f = |x: f64| x.sin();
        let g = |x: f64| (-x * x).exp();
        let lhs = integrate_adaptive(|x| 2.0 * f(x) - 3.0 * g(x), 0.0, 2.0, t)?;
        let rhs =
            2.0 * integrate_adaptive(f, 0.0, 2.0, t)? - 3.0 * integrate_adaptive(g, 0.0, 2.0, t)?;
        let err = (lhs - rhs).abs();
        Ok((
            err <= 2.0 * t.abs_tol.max(t.rel_tol * lhs.abs()) * 5.0,
            format!("|difference| {err:.3e}"),
        ))
    });
    r.check("entropy_integral", || {
        let v = integrate_adaptive(
            |x: f64| {
                let h = |y: f64| if y == 0.0 { 0.0 } else { -y * y.ln() };
                h(x) + h(1.0 - x)
            },
            0.0,
            1.0,
            tight(),
        )?;
        Ok(((v - 0.5).abs() < 1e-10, format!("{v}")))
    });
    r.check("binomial_symmetry_exact", || {
        for n in 0..=64u64 {
            for i in 0..=n {
                if log_binomial(n, i)? != log_binomial(n, n - i)? {
                    return Ok((false, format!("n = {n}, i = {i}")));
                }
            }
        }
        Ok((true, "n ≤ 64".into()))
    });
    r.check("binomial_paths_agree", || {
        let mut worst = 0.0f64;
        for n in 1..=64u64 {
            for i in 0..=n {
                let exact = BigBinomial::new(n, i)?.ln();
                let lg = log_binomial_lgamma(n, i)?;
                if exact > 0.0 {
                    worst = worst.max(rel_err(lg, exact));
                }
            }
        }
        Ok((
            worst <= 1e-12,
            format!("max relative difference {worst:.3e}"),
        ))
    });
    r.check("binomial_integral_sandwich", || {
        let mut rr = rng(11);
        let t = Tolerance {
            abs_tol: 1e-9,
            rel_tol: 1e-9,
            max_iter: 200,
        };
        for _ in 0..200 {
            let n: u64 = rr.gen_range(1..=500);
            let i: u64 = rr.gen_range(0..=n);
            let (lo, hi) = binomial_sandwich(n, i, t)?;
            let v = log_binomial(n, i)? / (n + 1) as f64;
            if !(lo <= v + 1e-9 && v <= hi + 1e-9) {
                return Ok((false, format!("n = {n}, i = {i}: {lo} ≤ {v} ≤ {hi} fails")));
            }
        }
        Ok((true, "200 random (n, i), n ≤ 500".into()))
    });
    r.check("ball_volumes", || {
        let pi = std::f64::consts::PI;
        let want = [2f64.ln(), pi.ln(), (4.0 * pi / 3.0).ln()];
        let err = (1..=3)
            .map(|m| (log_ball_volume(m).unwrap() - want[m as usize - 1]).abs())
            .fold(0.0, f64::max);
        Ok((err < 1e-14, format!("max error {err:.3e}")))
    });
}

/// The two sides of `∫_{1/(n+1)}^{(i+1)/(n+1)} ℓ ≤ log C(n,i)/(n+1) ≤ ∫_0^{i/(n+1)} ℓ`
/// with `ℓ(t) = log(1/t − 1)`.
pub fn binomial_sandwich(n: u64, i: u64, tol: Tolerance) -> Result<(f64, f64)> {
    let m = (n + 1) as f64;
    let lo = integrate_log_odds(1.0 / m, (i + 1) as f64 / m, tol)?;
    let hi = integrate_log_odds(0.0, i as f64 / m, tol)?;
    Ok((lo, hi))
}

fn charfun_suite(r: &mut Runner) {
    r.suite = "charfun";
    r.check("probe_classification", || {
        let probes = [
            (2.0, 2.0, GeographyClass::Ample),
            (1.0, 1.0, GeographyClass::NefNotAmple),
            (0.6, 0.6, GeographyClass::BigNotNef),
            (0.5, 0.5, GeographyClass::PseudoEffectiveBoundary),
            (0.3, 0.3, GeographyClass::NotPseudoEffective),
        ];
        for (a, b, want) in probes {
            let got = classify(&Params::new(a, b)?);
            if got != want {
                return Ok((false, format!("({a}, {b}) → {got}, expected {want}")));
            }
        }
        Ok((true, "5 probes".into()))
    });
    r.check("phi_scaling", || {
        let mut rr = rng(21);
        let mut worst = 0.0f64;
        for _ in 0..500 {
            let p = Params::new(
                log_uniform(&mut rr, 0.05, 5.0),
                log_uniform(&mut rr, 0.05, 5.0),
            )?;
            let t = log_uniform(&mut rr, 0.1, 10.0);
            let x: f64 = rr.gen_range(0.0..=1.0);
            let d = phi(&p.scaled(t)?, x)? - phi(&p, x)? - t.ln();
            worst = worst.max(d.abs());
        }
        Ok((worst <= 1e-13, format!("max residual {worst:.3e}")))
    });
    r.check("phi_symmetry", || {
        let mut rr = rng(22);
        let mut worst = 0.0f64;
        for _ in 0..500 {
            let (a, b) = (
                log_uniform(&mut rr, 0.05, 5.0),
                log_uniform(&mut rr, 0.05, 5.0),
            );
            let x: f64 = rr.gen_range(0.0..=1.0);
            let d = phi(&Params::new(a, b)?, x)? - phi(&Params::new(b, a)?, 1.0 - x)?;
            worst = worst.max(d.abs());
        }
        Ok((worst <= 1e-14, format!("max residual {worst:.3e}")))
    });
    r.check("theta_consistency", || {
        let mut rr = rng(23);
        let tol = Tolerance::default();
        for _ in 0..1000 {
            let p = random_big(&mut rr);
            let th = theta_interval(&p, tol)?;
            let (lo, hi) = th.bounds().expect("big");
            let below = lo == 0.0 || phi(&p, (lo - 10.0 * th.solver_tol).max(0.0))? < 0.0;
            let above = hi == 1.0 || phi(&p, (hi + 10.0 * th.solver_tol).min(1.0))? < 0.0;
            let mid = phi(&p, 0.5 * (lo + hi))? > 0.0;
            if !(below && above && mid) {
                return Ok((false, format!("{p}: Θ = [{lo}, {hi}]")));
            }
        }
        Ok((true, "1000 random big (a, b)".into()))
    });
    r.check("classify_matches_theta", || {
        let mut rr = rng(24);
        let tol = Tolerance::default();
        let mut cases: Vec<Params> = (0..500)
            .map(|_| {
                Params::new(
                    log_uniform(&mut rr, 0.05, 3.0),
                    log_uniform(&mut rr, 0.05, 3.0),
                )
                .unwrap()
            })
            .collect();
        cases.push(Params::from_ratios(1, 3, 2, 3)?);
        cases.push(Params::new(0.25, 0.75)?);
        for p in cases {
            let kind = theta_interval(&p, tol)?.kind;
            let ok = match classify(&p) {
                GeographyClass::NotPseudoEffective => kind == ThetaKind::Empty,
                GeographyClass::PseudoEffectiveBoundary => kind == ThetaKind::Point,
                _ => kind == ThetaKind::Interval,
            };
            if !ok {
                return Ok((false, format!("{p}: {} vs {kind:?}", classify(&p))));
            }
        }
        Ok((true, "502 parameter pairs".into()))
    });
    r.check("green_scaling_identity", || {
        let worst = green_scaling_residual(100, 25)?;
        Ok((worst <= 1e-12, format!("max residual {worst:.3e}")))
    });
}

/// Largest `|α g_{ta,tb}(z) + β g_{sa,sb}(z) − (α+β) g_{ca,cb}(z)|` over
/// `samples` random tuples.
pub fn green_scaling_residual(samples: usize, seed: u64) -> Result<f64> {
    let mut rr = rng(seed);
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let p = Params::new(
            log_uniform(&mut rr, 0.1, 4.0),
            log_uniform(&mut rr, 0.1, 4.0),
        )?;
        let alpha: f64 = rr.gen_range(-2.0..2.0);
        let mut beta: f64 = rr.gen_range(-2.0..2.0);
        if (alpha + beta).abs() < 0.1 {
            beta += 0.5;
        }
        let (t, s) = (
            log_uniform(&mut rr, 0.2, 5.0),
            log_uniform(&mut rr, 0.2, 5.0),
        );
        let z = SpherePoint::polar(
            log_uniform(&mut rr, 0.01, 100.0),
            rr.gen_range(0.0..std::f64::consts::TAU),
        );
        let c = scaling_combine(alpha, t, beta, s, &p)?;
        let lhs = alpha * green_g(&p.scaled(t)?, z) + beta * green_g(&p.scaled(s)?, z);
        let rhs = (alpha + beta) * green_g(&c, z);
        worst = worst.max((lhs - rhs).abs());
    }
    Ok(worst)
}

fn sections_suite(r: &mut Runner) {
    r.suite = "sections";
    let grid = [0.5, 1.0, 2.0];
    r.check("l2_norm_quadrature_oracle", || {
        let mut worst = 0.0f64;
        let t = Tolerance {
            abs_tol: 1e-300,
            rel_tol: 1e-10,
            max_iter: 200,
        };
        for &a in &grid {
            for &b in &grid {
                let p = Params::new(a, b)?;
                for n in 1..=25u32 {
                    for i in 0..=n {
                        let closed = monomial_l2_norm_sq(&p, MonomialBasisElement::new(n, i)?);
                        let quad = radial_integral_quadrature(&p, i, n, t)?;
                        worst = worst.max(rel_err(quad, closed));
                    }
                }
            }
        }
        Ok((
            worst <= 1e-8,
            format!("max relative difference {worst:.3e}"),
        ))
    });
    r.check("angular_orthogonality", || {
        let p = Params::new(0.8, 1.3)?;
        let mut worst = 0.0f64;
        for n in 1..=10u32 {
            for i in 0..=n {
                for j in (i + 1)..=n {
                    let off = off_diagonal_inner_product(&p, n, i, j)?;
                    let di = monomial_l2_norm_sq(&p, MonomialBasisElement::new(n, i)?);
                    let dj = monomial_l2_norm_sq(&p, MonomialBasisElement::new(n, j)?);
                    worst = worst.max(off / (di * dj).sqrt());
                }
            }
        }
        Ok((
            worst <= 1e-10,
            format!("max |⟨z^-i, z^-j⟩| / √(‖z^-i‖²‖z^-j‖²) = {worst:.3e}"),
        ))
    });
    r.check("l2_below_sup", || {
        let mut rr = rng(31);
        for _ in 0..500 {
            let p = Params::new(
                log_uniform(&mut rr, 0.3, 3.0),
                log_uniform(&mut rr, 0.3, 3.0),
            )?;
            let n: u32 = rr.gen_range(1..=4);
            let coeffs: Vec<i64> = (0..=n).map(|_| rr.gen_range(-3..=3)).collect();
            let s = IntegerSection::new(n, coeffs)?;
            if s.is_zero() {
                continue;
            }
            let l2 = section_l2_norm_sq(&p, &s);
            let sup = section_sup_norm_sq(&p, &s, Tolerance::default())?;
            if l2 > sup.value * (1.0 + 1e-9) {
                return Ok((
                    false,
                    format!("{p}, {:?}: L² {l2} > sup {}", s.coeffs(), sup.value),
                ));
            }
        }
        Ok((true, "500 random sections".into()))
    });
    r.check("monomial_sup_matches_maximizer", || {
        let mut worst = 0.0f64;
        for &(a, b) in &[(0.5, 2.0), (1.0, 1.0), (1.7, 0.6)] {
            let p = Params::new(a, b)?;
            for n in 1..=20u32 {
                for i in 0..=n {
                    let s = IntegerSection::monomial(n, i, 1)?;
                    let num = section_sup_norm_sq(&p, &s, Tolerance::default())?.value;
                    worst = worst.max(rel_err(
                        num,
                        monomial_sup_norm_sq(&p, MonomialBasisElement::new(n, i)?),
                    ));
                }
            }
        }
        Ok((
            worst <= 1e-8,
            format!("max relative difference {worst:.3e}"),
        ))
    });
    r.check("enumeration_monomials_match_span", || {
        for &(an, ad, bn, bd) in &[
            (1, 1, 1, 1),
            (2, 1, 2, 1),
            (3, 5, 3, 5),
            (1, 2, 1, 2),
            (3, 2, 1, 4),
        ] {
            let p = Params::from_ratios(an, ad, bn, bd)?;
            let th = theta_interval(&p, Tolerance::default())?;
            for n in 1..=4 {
                let opts = EnumerateOptions {
                    monomials_only: true,
                    ..Default::default()
                };
                let e = h0_enumerate_with(&p, n, SectionNorm::Sup, Tolerance::default(), opts)?;
                let span = h0_monomial_span(&p, n, &th).unwrap_or_default();
                if let Err(msg) = monomials_match_span(&e.monomials(), &span) {
                    return Ok((false, format!("{p}, n = {n}: {msg}")));
                }
            }
        }
        Ok((true, "5 rational parameter pairs, n ≤ 4".into()))
    });
    r.check("sup_sections_are_l2_sections", || {
        for &(an, ad, bn, bd) in &[(3, 2, 6, 5), (1, 1, 1, 1), (3, 5, 3, 5)] {
            let p = Params::from_ratios(an, ad, bn, bd)?;
            for n in 1..=2 {
                let opts = EnumerateOptions::default();
                let sup = h0_enumerate_with(&p, n, SectionNorm::Sup, Tolerance::default(), opts)?
                    .sections();
                let l2 = h0_enumerate_with(&p, n, SectionNorm::L2, Tolerance::default(), opts)?
                    .sections();
                if let Some(s) = sup.iter().find(|s| !l2.contains(s)) {
                    return Ok((
                        false,
                        format!("{p}: {:?} missing from the L² set", s.coeffs()),
                    ));
                }
            }
        }
        Ok((true, "3 rational parameter pairs, n ≤ 2".into()))
    });
    r.check("power_stability", || {
        let p = Params::from_ratios(3, 2, 6, 5)?;
        let tol = Tolerance::default();
        let e = h0_enumerate_with(&p, 2, SectionNorm::Sup, tol, EnumerateOptions::default())?;
        let mut worst = 0.0f64;
        for m in e
            .sections
            .iter()
            .filter(|m| !m.section.is_zero() && !m.boundary_uncertain)
        {
            let sq = m.section.square();
            worst = worst.max(section_sup_norm_sq(&p, &sq, tol)?.value);
        }
        Ok((
            worst <= 1.0 + 1e-9,
            format!("{} sections, max ‖s²‖² = {worst}", e.sections.len()),
        ))
    });
    r.check("semi_axes_dominate_exp_n_phi", || {
        for &(a, b) in &[(0.6, 0.6), (1.0, 1.0), (0.3, 2.0), (2.0, 2.0)] {
            let p = Params::new(a, b)?;
            let th = theta_interval(&p, Tolerance::default())?;
            for n in [5u32, 17, 60, 300] {
                let Ok(spec) = ellipsoid_spec(&p, n, &th) else {
                    continue;
                };
                for (k, l) in spec.log_semi_axes_sq.iter().enumerate() {
                    let i = spec.range.0 + k as u32;
                    let nphi = n as f64 * phi(&p, i as f64 / n as f64)?;
                    if *l < nphi - 1e-9 * nphi.abs().max(1.0) || *l < -1e-12 {
                        return Ok((
                            false,
                            format!("{p}, n = {n}, i = {i}: log R = {l}, nφ = {nphi}"),
                        ));
                    }
                }
            }
        }
        Ok((true, "log R_i ≥ nφ(i/n) ≥ 0".into()))
    });
    r.check("lattice_count_within_bounds", || {
        for &(a, b) in &[(1, 1), (2, 2)] {
            let p = Params::from_ratios(a, 1, b, 1)?;
            let th = theta_interval(&p, Tolerance::default())?;
            for n in 1..=4 {
                let spec = ellipsoid_spec(&p, n, &th)?;
                let c = ellipsoid_lattice_count(&spec)?;
                let bd = lattice_count_bounds(&spec);
                let lc = (c.count as f64).ln();
                if !(bd.log_lower <= lc && lc <= bd.log_upper) {
                    return Ok((false, format!("{p}, n = {n}: {} not in bounds", c.count)));
                }
            }
        }
        Ok((true, "(1,1), (2,2), n ≤ 4".into()))
    });
}

/// Compares the monomial members `c·z^{-i}` of a sup-norm enumeration with
/// the span: `±z^{-i}` is a member exactly for `i` in the span, and no
/// multiple of `z^{-i}` is a member for `i` outside it. Larger multiples
/// `c·z^{-i}` with `c² ≤ exp(nφ(i/n))` are members too and are not compared.
pub fn monomials_match_span(
    monomials: &[(u32, i64)],
    span: &[u32],
) -> std::result::Result<(), String> {
    let mut units: Vec<(u32, i64)> = monomials
        .iter()
        .copied()
        .filter(|&(_, c)| c.abs() == 1)
        .collect();
    units.sort();
    let want: Vec<(u32, i64)> = span.iter().flat_map(|&i| [(i, -1), (i, 1)]).collect();
    if units != want {
        return Err(format!("unit monomials {units:?}, expected {want:?}"));
    }
    if let Some(m) = monomials.iter().find(|(i, _)| !span.contains(i)) {
        return Err(format!("member {m:?} outside the span {span:?}"));
    }
    Ok(())
}

/// `|⟨z^{-i}, z^{-j}⟩|` by a radial quadrature times an angular
/// trapezoid sum (64 angles) for `i ≠ j`.
pub fn off_diagonal_inner_product(p: &Params, n: u32, i: u32, j: u32) -> Result<f64> {
    const ANGLES: usize = 64;
    let (a, b) = (p.a(), p.b());
    let mut phase_sum = Complex64::new(0.0, 0.0);
    for k in 0..ANGLES {
        let t = std::f64::consts::TAU * k as f64 / ANGLES as f64;
        phase_sum += Complex64::from_polar(1.0, (j as f64 - i as f64) * t);
    }
    let angular = phase_sum / ANGLES as f64;
    // radial factor ab ∫ r^{n-(i+j)/2} / (ar+b)^{n+2} dr after r = u/(1-u)
    let e = n as f64 - 0.5 * (i + j) as f64;
    let radial = a
        * b
        * integrate_adaptive(
            |u: f64| {
                if u >= 1.0 {
                    return 0.0;
                }
                let w = 1.0 - u;
                u.powf(e) * w.powf(n as f64 - e) / (a * u + b * w).powi(n as i32 + 2)
            },
            0.0,
            1.0,
            Tolerance::default(),
        )?;
    Ok((angular * radial).norm())
}

fn volume_suite(r: &mut Runner) {
    r.suite = "volume";
    let tol = Tolerance::default();
    let grid: Vec<f64> = (0..20).map(|k| 0.1 * 40f64.powf(k as f64 / 19.0)).collect();
    r.check("antiderivative_derivative", || {
        let mut worst = 0.0f64;
        for &(a, b) in &[(0.3, 2.0), (1.0, 1.0), (0.7, 0.6), (3.0, 0.1)] {
            let p = Params::new(a, b)?;
            for k in 1..=100 {
                let x = k as f64 / 101.0;
                let h = 1e-4;
                let f = |t: f64| phi_antiderivative(&p, t);
                let d = (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h))
                    / (12.0 * h);
                worst = worst.max((d - phi(&p, x)?).abs());
            }
        }
        Ok((worst <= 1e-9, format!("max |F' − φ| {worst:.3e}")))
    });
    r.check("closed_matches_quadrature", || {
        let mut worst = 0.0f64;
        for &a in &grid {
            for &b in &grid {
                let p = Params::new(a, b)?;
                let th = theta_interval(&p, tol)?;
                let d = (volume_closed(&p, &th) - volume_quadrature(&p, &th, tight())?).abs();
                worst = worst.max(d);
            }
        }
        Ok((
            worst <= 1e-9,
            format!("max difference {worst:.3e} on a 20×20 grid"),
        ))
    });
    r.check("selfint_below_volume", || {
        // φ < 0 off Θ, so ∫₀¹ φ ≤ ∫_Θ φ, with equality iff Θ = [0, 1]
        for &a in &grid {
            for &b in &grid {
                let p = Params::new(a, b)?;
                let v = volume_closed(&p, &theta_interval(&p, tol)?);
                let s = selfint_degree(&p);
                let eq = (v - s).abs() <= 1e-10;
                if s > v + 1e-10 || eq != classify(&p).is_nef() {
                    return Ok((false, format!("{p}: vol {v}, deg {s}")));
                }
            }
        }
        Ok((true, "equality exactly on nef grid points".into()))
    });
    r.check("volume_monotone", || {
        let mut rr = rng(41);
        for _ in 0..500 {
            let (a, b) = (
                log_uniform(&mut rr, 0.1, 4.0),
                log_uniform(&mut rr, 0.1, 4.0),
            );
            let (a2, b2) = (
                a * log_uniform(&mut rr, 1.0, 2.0),
                b * log_uniform(&mut rr, 1.0, 2.0),
            );
            let (p, q) = (Params::new(a, b)?, Params::new(a2, b2)?);
            let (v, w) = (
                volume_closed(&p, &theta_interval(&p, tol)?),
                volume_closed(&q, &theta_interval(&q, tol)?),
            );
            if w < v - 1e-12 {
                return Ok((false, format!("{p} → {v}, {q} → {w}")));
            }
        }
        Ok((true, "500 comparable pairs".into()))
    });
    r.check("boundary_continuity", || {
        for &(a, b) in &[(0.5, 0.5), (0.25, 0.75), (0.9, 0.1)] {
            let p = Params::new(a, b)?;
            let mut prev = f64::INFINITY;
            for k in 1..=6 {
                let q = p.scaled(1.0 + 10f64.powi(-k))?;
                let v = volume_closed(&q, &theta_interval(&q, tol)?);
                if v.is_nan() || v >= prev {
                    return Ok((false, format!("({a}, {b}) t = 1 + 1e-{k}: {v} ≥ {prev}")));
                }
                prev = v;
            }
            if prev > 1e-8 {
                return Ok((false, format!("({a}, {b}): volume {prev} at t = 1 + 1e-6")));
            }
        }
        Ok((true, "3 boundary sequences".into()))
    });
    r.check("lattice_sandwich", || {
        for &(a, b) in &[(2.0, 2.0), (1.0, 1.0), (0.6, 0.9), (3.0, 0.5)] {
            let p = Params::new(a, b)?;
            let th = theta_interval(&p, tol)?;
            let v = volume_closed(&p, &th);
            for n in [50u32, 100, 400, 1000] {
                let e = volume_lattice_estimate(&p, n, &th)?;
                if !(e.lower <= v && v <= e.upper) {
                    return Ok((
                        false,
                        format!("{p}, n = {n}: [{}, {}] misses {v}", e.lower, e.upper),
                    ));
                }
            }
        }
        Ok((true, "n ∈ {50, 100, 400, 1000}".into()))
    });
    r.check("gap_params", || {
        for n in 1..=8 {
            let g = construct_gap_params(n)?;
            let (lo, hi) = theta_interval(&g.params, tol)?.bounds().expect("big");
            let ok = classify(&g.params) == GeographyClass::BigNotNef
                && g.h0_nonzero.iter().all(|h| !h)
                && lo > 0.0
                && hi < 1.0 / n as f64;
            if !ok {
                return Ok((false, format!("n = {n}: ({}, {})", g.a, g.b)));
            }
        }
        Ok((true, "n = 1..8".into()))
    });
}

fn zariski_suite(r: &mut Runner) {
    r.suite = "zariski";
    let tol = Tolerance::default();
    r.check("profile_continuity", || {
        let mut rr = rng(51);
        let mut worst = 0.0f64;
        for _ in 0..1000 {
            let p = random_big(&mut rr);
            let d = positive_part(&p, &theta_interval(&p, tol)?)?;
            for (_, e) in d.green.continuity_residuals() {
                worst = worst.max(e);
            }
        }
        Ok((worst <= 1e-9, format!("max jump {worst:.3e}")))
    });
    r.check("positive_part_below_green", || {
        let mut rr = rng(52);
        let mut worst = f64::INFINITY;
        for _ in 0..20 {
            let p = random_big(&mut rr);
            let d = positive_part(&p, &theta_interval(&p, tol)?)?;
            for k in 0..10_000 {
                let rad = 10f64.powf(-6.0 + 12.0 * k as f64 / 9999.0);
                let z = SpherePoint::real(rad);
                worst = worst.min(green_g(&p, z) - d.green.eval_radius(rad));
            }
        }
        Ok((worst >= -1e-12, format!("min (g − p) {worst:.3e}")))
    });
    r.check("r1_r2_nonnegative", || {
        let mut rr = rng(53);
        for _ in 0..100 {
            let p = random_big(&mut rr);
            let th = theta_interval(&p, tol)?;
            let d = positive_part(&p, &th)?;
            let (ri, ro) = crate::zariski::breakpoint_radii(&p, &th)?;
            for k in 0..200 {
                let rad = 10f64.powf(-4.0 + 8.0 * k as f64 / 199.0);
                let z = SpherePoint::real(rad);
                if rad < ro && eval_r1(&p, &th, z)? < -1e-12
                    || rad > ri && eval_r2(&p, &th, z)? < -1e-12
                {
                    return Ok((false, format!("{p} at |z| = {rad}")));
                }
            }
            let _ = d;
        }
        Ok((true, "100 random big (a, b)".into()))
    });
    r.check("nef_witness", || {
        let mut rr = rng(54);
        for _ in 0..100 {
            let p = random_big(&mut rr);
            let d = positive_part(&p, &theta_interval(&p, tol)?)?;
            let w = nef_witness(&p, &d, 1000)?;
            if !w.passed {
                return Ok((false, format!("{p}: {w:?}")));
            }
        }
        Ok((true, "100 random big (a, b)".into()))
    });
    r.check("nef_positive_part_is_whole", || {
        for &(a, b) in &[(1.0, 1.0), (2.0, 1.5), (1.0, 7.0)] {
            let p = Params::new(a, b)?;
            let d = positive_part(&p, &theta_interval(&p, tol)?)?;
            let whole = d.c0 == 1.0
                && d.cinf == 0.0
                && d.green.pieces().len() == 1
                && matches!(d.green.pieces()[0].formula, RadialFormula::FullGreen { .. });
            if !whole {
                return Ok((false, format!("{p}: {d:?}")));
            }
        }
        Ok((true, "3 nef parameter pairs".into()))
    });
    r.check("positive_parts_increase_with_scaling", || {
        let p = Params::new(0.5, 0.5)?;
        let ts = [1.001, 1.01, 1.1, 1.5];
        for w in ts.windows(2) {
            let (q, q2) = (p.scaled(w[0])?, p.scaled(w[1])?);
            let d = positive_part(&q, &theta_interval(&q, tol)?)?;
            let d2 = positive_part(&q2, &theta_interval(&q2, tol)?)?;
            for k in 0..1000 {
                let rad = 0.5 * 4f64.powf(k as f64 / 999.0);
                if d.green.eval_radius(rad) > d2.green.eval_radius(rad) + 1e-12 {
                    return Ok((false, format!("t = {} vs {} at |z| = {rad}", w[0], w[1])));
                }
            }
        }
        Ok((true, "(0.5, 0.5), t ∈ {1.001, 1.01, 1.1, 1.5}".into()))
    });
    r.check("boundary_limit_monotone", || {
        let rep = limit_positive_parts(
            &Params::new(0.5, 0.5)?,
            &[1.1, 1.01, 1.001],
            (0.5, 2.0),
            tol,
        )?;
        let last = rep.entries.last().expect("three entries");
        Ok((
            rep.monotone,
            format!("final sup-distance {:.4e}", last.sup_distance),
        ))
    });
}
