//! Exhaustive listing and counting of small sections at tiny levels.
//!
//! Every candidate lies in the box `|c_i| ≤ ⌊√R_i⌋` cut out by the L²
//! condition `Σ c_i²/R_i ≤ 1`; since `Φ_{a,b}` has total mass 1 the L² norm
//! is at most the sup norm, so the same box serves both norms. Inside the
//! box the search prunes on the L² partial sum and on circle means
//! `Σ c_i² w_i(x) ≤ ‖s‖²_sup` at a few radii, and each surviving leaf is
//! decided exactly when the parameters are rational and the section is a
//! monomial (or in L² mode), numerically otherwise.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::{
    lcm_of_denominators, log_semi_axis_sq, section_sup_norm_sq, semi_axis_sq_exact, IntegerSection,
    EXACT_NORM_MAX_N,
};
use crate::charfun::{exp_n_phi_cmp_exact, n_phi_at, Params};
use crate::error::{Error, Result};
use crate::numerics::Tolerance;

pub const DEFAULT_ENUMERATION_CAP: u32 = 6;
pub const DEFAULT_MAX_CANDIDATES: u64 = 5_000_000;

// Largest common denominator for which counting runs as a dynamic program
// over integer budgets.
const DP_BUDGET_LIMIT: u64 = 1 << 24;
// Slack on float prunes; leaves are always re-decided.
const PRUNE_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SectionNorm {
    Sup,
    L2,
}

impl SectionNorm {
    pub fn name(&self) -> &'static str {
        match self {
            SectionNorm::Sup => "sup",
            SectionNorm::L2 => "l2",
        }
    }
}

impl fmt::Display for SectionNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SectionNorm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sup" => Ok(SectionNorm::Sup),
            "l2" | "L2" => Ok(SectionNorm::L2),
            other => Err(Error::domain(format!(
                "unknown norm {other:?}, expected sup or l2"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerateOptions {
    /// Largest level accepted.
    pub cap: u32,
    /// Only list `c·z^{-i}` (and 0).
    pub monomials_only: bool,
    /// Leaves visited before giving up.
    pub max_candidates: u64,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions {
            cap: DEFAULT_ENUMERATION_CAP,
            monomials_only: false,
            max_candidates: DEFAULT_MAX_CANDIDATES,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnumeratedSection {
    pub section: IntegerSection,
    /// Squared norm in the requested norm (float, even when decided exactly).
    pub norm_sq: f64,
    /// The norm is within tolerance of 1 and the decision was numeric.
    pub boundary_uncertain: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Enumeration {
    pub n: u32,
    pub norm: SectionNorm,
    /// Sorted by coefficient vector; boundary-uncertain members included.
    pub sections: Vec<EnumeratedSection>,
    pub candidates: u64,
    /// Every membership decision was made in exact arithmetic.
    pub exact: bool,
}

impl Enumeration {
    pub fn sections(&self) -> Vec<IntegerSection> {
        self.sections.iter().map(|e| e.section.clone()).collect()
    }

    /// Nonzero monomial members as `(i, c)`.
    pub fn monomials(&self) -> Vec<(u32, i64)> {
        self.sections
            .iter()
            .filter_map(|e| e.section.as_monomial())
            .collect()
    }

    pub fn boundary_count(&self) -> usize {
        self.sections
            .iter()
            .filter(|e| e.boundary_uncertain)
            .count()
    }
}

/// `#Ĥ⁰_{L²}(nD)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SectionCount {
    pub n: u32,
    pub count: u128,
    /// Points whose membership was within float tolerance of the boundary
    /// (included in `count`); always 0 on the exact path.
    pub boundary_uncertain: u128,
    pub exact: bool,
}

/// The sections with norm at most 1, decided as described in the module
/// docs. Boundary-uncertain sections are included.
pub fn h0_enumerate(
    p: &Params,
    n: u32,
    norm: SectionNorm,
    tol: Tolerance,
) -> Result<Vec<IntegerSection>> {
    Ok(h0_enumerate_with(p, n, norm, tol, EnumerateOptions::default())?.sections())
}

pub fn h0_enumerate_with(
    p: &Params,
    n: u32,
    norm: SectionNorm,
    tol: Tolerance,
    opts: EnumerateOptions,
) -> Result<Enumeration> {
    if n == 0 {
        return Err(Error::domain("level must be at least 1"));
    }
    if n > opts.cap {
        return Err(Error::Cap { n, cap: opts.cap });
    }
    let weights = Weights::new(p, n)?;
    let bounds: Vec<i64> = (0..=n as usize).map(|i| weights.coeff_bound(i)).collect();
    let mut search = Search {
        p,
        n,
        norm,
        tol,
        weights: &weights,
        probes: circle_probes(p, n),
        max_candidates: opts.max_candidates,
        candidates: 0,
        exact: true,
        out: Vec::new(),
    };
    if opts.monomials_only {
        search.visit(&vec![0; n as usize + 1])?;
        for i in 0..=n as usize {
            for c in (-bounds[i]..=bounds[i]).filter(|&c| c != 0) {
                let mut coeffs = vec![0; n as usize + 1];
                coeffs[i] = c;
                search.visit(&coeffs)?;
            }
        }
    } else {
        let mut coeffs = vec![0; n as usize + 1];
        let probe_acc = vec![0.0; search.probes.len()];
        search.dfs(0, &bounds, &mut coeffs, 0.0, &probe_acc)?;
    }
    let Search {
        mut out,
        candidates,
        exact,
        ..
    } = search;
    out.sort_by(|x, y| x.section.cmp(&y.section));
    Ok(Enumeration {
        n,
        norm,
        sections: out,
        candidates,
        exact,
    })
}

/// Counts `{c ∈ Z^{n+1} : Σ c_i²/R_i ≤ 1}` without listing it.
pub fn h0_count_l2(p: &Params, n: u32) -> Result<SectionCount> {
    if n == 0 {
        return Err(Error::domain("level must be at least 1"));
    }
    let weights = Weights::new(p, n)?;
    let (count, boundary_uncertain, exact) = weights.count_ball()?;
    Ok(SectionCount {
        n,
        count,
        boundary_uncertain,
        exact,
    })
}

/// Weights of `c_i²` in the L² norm, `1/R_i`.
pub(crate) enum Weights {
    /// `Σ c_i² w_i ≤ budget` with integers, for rational parameters with a
    /// manageable common denominator.
    Int {
        w: Vec<u128>,
        budget: u128,
    },
    /// Exact rationals.
    Rational(Vec<BigRational>),
    Float(Vec<f64>),
}

impl Weights {
    pub(crate) fn new(p: &Params, n: u32) -> Result<Self> {
        if n <= EXACT_NORM_MAX_N && p.exact().is_some() {
            let rs: Vec<BigRational> = (0..=n)
                .map(|i| {
                    semi_axis_sq_exact(p, n, i)
                        .expect("exact parameters")
                        .recip()
                })
                .collect();
            return Ok(Weights::from_rationals(rs));
        }
        let w = (0..=n)
            .map(|i| log_semi_axis_sq(p, n, i).map(|l| (-l).exp()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Weights::Float(w))
    }

    pub(crate) fn from_rationals(rs: Vec<BigRational>) -> Self {
        let d = lcm_of_denominators(&rs);
        if let Some(budget) = d.to_u128().filter(|&v| v <= u64::MAX as u128) {
            let w = rs
                .iter()
                .map(|r| {
                    (r * BigRational::from_integer(d.clone()))
                        .to_integer()
                        .to_u128()
                })
                .collect::<Option<Vec<_>>>();
            if let Some(w) = w {
                return Weights::Int { w, budget };
            }
        }
        Weights::Rational(rs)
    }

    pub(crate) fn len(&self) -> usize {
        match self {
            Weights::Int { w, .. } => w.len(),
            Weights::Rational(w) => w.len(),
            Weights::Float(w) => w.len(),
        }
    }

    pub(crate) fn float(&self, i: usize) -> f64 {
        match self {
            Weights::Int { w, budget } => w[i] as f64 / *budget as f64,
            Weights::Rational(w) => crate::charfun::ratio_to_f64(&w[i]),
            Weights::Float(w) => w[i],
        }
    }

    /// `⌊√R_i⌋`, the largest `|c|` with `c² w_i ≤ 1`.
    pub(crate) fn coeff_bound(&self, i: usize) -> i64 {
        let b = match self {
            Weights::Int { w, budget } => (budget / w[i]).isqrt(),
            Weights::Rational(w) => {
                let r = w[i].recip();
                super::isqrt_floor_ratio(&r).to_u128().expect("box fits")
            }
            Weights::Float(w) => {
                let r = 1.0 / w[i];
                let mut c = r.sqrt().floor();
                // Float R_i: keep any c with c² ≤ R_i up to rounding so the
                // leaf test can flag it.
                if (c + 1.0).powi(2) <= r * (1.0 + 1e-12) {
                    c += 1.0;
                }
                c as u128
            }
        };
        i64::try_from(b).expect("coefficient box fits i64")
    }

    /// Exact when possible: `Some(ordering of Σ c_i² w_i against 1)`.
    fn cmp_one(&self, coeffs: &[i64]) -> Option<std::cmp::Ordering> {
        match self {
            Weights::Int { w, budget } => {
                let s: u128 = coeffs
                    .iter()
                    .zip(w)
                    .map(|(&c, &wi)| (c.unsigned_abs() as u128).pow(2) * wi)
                    .sum();
                Some(s.cmp(budget))
            }
            Weights::Rational(w) => {
                let s: BigRational = coeffs
                    .iter()
                    .zip(w)
                    .filter(|(&c, _)| c != 0)
                    .map(|(&c, wi)| {
                        wi * BigRational::from_integer(BigInt::from(c) * BigInt::from(c))
                    })
                    .sum();
                Some(s.cmp(&BigRational::from_integer(1.into())))
            }
            Weights::Float(_) => None,
        }
    }

    fn l2(&self, coeffs: &[i64]) -> f64 {
        coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| (c as f64).powi(2) * self.float(i))
            .sum()
    }

    /// `(count, boundary-uncertain, exact)` for the ellipsoid `Σ c_i² w_i ≤ 1`.
    pub(crate) fn count_ball(&self) -> Result<(u128, u128, bool)> {
        match self {
            Weights::Int { w, budget } if *budget <= DP_BUDGET_LIMIT as u128 => {
                Ok((count_int_dp(w, *budget as usize), 0, true))
            }
            _ => {
                let mut order: Vec<usize> = (0..self.len()).collect();
                // Widest coordinate last: it is counted in closed form.
                order.sort_by(|&i, &j| self.float(j).total_cmp(&self.float(i)));
                let ws: Vec<f64> = order.iter().map(|&i| self.float(i)).collect();
                let (count, flagged) = count_float(&ws, 1.0);
                Ok((count, flagged, false))
            }
        }
    }
}

// counts[v] = #{partial vectors with Σ w_i c_i² = v}; O(budget · box) per axis.
fn count_int_dp(w: &[u128], budget: usize) -> u128 {
    let mut counts = vec![0u128; budget + 1];
    counts[0] = 1;
    for &wi in w {
        let wi = wi as usize;
        let mut next = counts.clone();
        if wi <= budget {
            let mut c = 1usize;
            while wi * c * c <= budget {
                let step = wi * c * c;
                for v in step..=budget {
                    next[v] += 2 * counts[v - step];
                }
                c += 1;
            }
        }
        counts = next;
    }
    counts.iter().sum()
}

// Recursive float count; the last axis is counted in closed form and points
// within 1e-12 (relative) of the boundary are tallied separately.
fn count_float(ws: &[f64], budget: f64) -> (u128, u128) {
    let (&last, rest) = ws.split_last().expect("at least one axis");
    if rest.is_empty() {
        let r = (budget / last).max(0.0);
        let c = r.sqrt().floor();
        let near = |k: f64| k > 0.0 && ((k * k) / r - 1.0).abs() <= 1e-12;
        let (mut count, mut flagged) = (2 * c as u128 + 1, 0);
        if near(c) {
            flagged += 2;
        }
        if near(c + 1.0) {
            count += 2;
            flagged += 2;
        }
        return (count, flagged);
    }
    let (w0, tail) = ws.split_first().expect("nonempty");
    let bound = (budget / w0).sqrt().floor() as i64 + 1;
    let (mut count, mut flagged) = (0u128, 0u128);
    for c in -bound..=bound {
        let rem = budget - w0 * (c as f64).powi(2);
        if rem < -1e-12 * budget {
            continue;
        }
        let (k, f) = count_float(tail, rem.max(0.0));
        count += k;
        flagged += f;
    }
    (count, flagged)
}

// Radii (compact coordinate) for the circle-mean prune: each monomial's
// maximizer `x = (n-i)/n`, so every coordinate is constrained somewhere.
fn circle_probes(p: &Params, n: u32) -> Vec<Vec<f64>> {
    (0..=n)
        .map(|k| {
            let x = (n - k) as f64 / n as f64;
            (0..=n).map(|i| monomial_weight(p, n, i, x)).collect()
        })
        .collect()
}

// w_i(x) = x^{n-i}(1-x)^i / (a^{n-i} b^i), the circle mean of |z^{-i}|².
fn monomial_weight(p: &Params, n: u32, i: u32, x: f64) -> f64 {
    let (j, i) = ((n - i) as i32, i as i32);
    (x / p.a()).powi(j) * ((1.0 - x) / p.b()).powi(i)
}

struct Search<'a> {
    p: &'a Params,
    n: u32,
    norm: SectionNorm,
    tol: Tolerance,
    weights: &'a Weights,
    probes: Vec<Vec<f64>>,
    max_candidates: u64,
    candidates: u64,
    exact: bool,
    out: Vec<EnumeratedSection>,
}

impl Search<'_> {
    fn dfs(
        &mut self,
        i: usize,
        bounds: &[i64],
        coeffs: &mut Vec<i64>,
        l2: f64,
        probe_acc: &[f64],
    ) -> Result<()> {
        if i == coeffs.len() {
            return self.visit(coeffs);
        }
        let wi = self.weights.float(i);
        for c in -bounds[i]..=bounds[i] {
            let c2 = (c as f64).powi(2);
            let l2_next = l2 + c2 * wi;
            if l2_next > 1.0 + PRUNE_SLACK {
                continue;
            }
            let acc: Vec<f64> = if self.norm == SectionNorm::Sup {
                let acc: Vec<f64> = probe_acc
                    .iter()
                    .zip(&self.probes)
                    .map(|(s, w)| s + c2 * w[i])
                    .collect();
                if acc.iter().any(|&s| s > 1.0 + PRUNE_SLACK) {
                    continue;
                }
                acc
            } else {
                probe_acc.to_vec()
            };
            coeffs[i] = c;
            self.dfs(i + 1, bounds, coeffs, l2_next, &acc)?;
        }
        coeffs[i] = 0;
        Ok(())
    }

    fn visit(&mut self, coeffs: &[i64]) -> Result<()> {
        self.candidates += 1;
        if self.candidates > self.max_candidates {
            return Err(Error::TooManyCandidates {
                limit: self.max_candidates,
            });
        }
        let section = IntegerSection::new(self.n, coeffs.to_vec())?;
        if let Some((norm_sq, boundary_uncertain)) = self.decide(&section)? {
            self.out.push(EnumeratedSection {
                section,
                norm_sq,
                boundary_uncertain,
            });
        }
        Ok(())
    }

    // Some((norm², flagged)) when the section belongs to the set.
    fn decide(&mut self, s: &IntegerSection) -> Result<Option<(f64, bool)>> {
        if s.is_zero() {
            return Ok(Some((0.0, false)));
        }
        let l2 = self.weights.l2(s.coeffs());
        // The L² test is necessary in both modes.
        let l2_verdict = match self.weights.cmp_one(s.coeffs()) {
            Some(o) => Verdict::Exact(o != std::cmp::Ordering::Greater),
            None => self.float_verdict(l2),
        };
        if l2_verdict == Verdict::Exact(false) {
            return Ok(None);
        }
        if self.norm == SectionNorm::L2 {
            return Ok(self.finish(l2, l2_verdict));
        }
        if let Some((i, c)) = s.as_monomial() {
            let value = (c as f64).powi(2) * (-n_phi_at(self.p, self.n as u64, i as u64)).exp();
            if let Some(e) = self.p.exact() {
                let k = BigUint::from(c.unsigned_abs()).pow(2);
                let o = exp_n_phi_cmp_exact(e, self.n as u64, i as u64, &k)?;
                return Ok(self.finish(value, Verdict::Exact(o != std::cmp::Ordering::Less)));
            }
            let v = self.float_verdict(value);
            return Ok(self.finish(value, v));
        }
        let sup = section_sup_norm_sq(self.p, s, self.tol)?;
        let band = self.tol.rel_tol.max(4.0 * sup.rel_uncertainty);
        let v = if (sup.value - 1.0).abs() <= band {
            Verdict::Uncertain
        } else {
            Verdict::Exact(sup.value < 1.0)
        };
        self.exact = false;
        Ok(self.finish(sup.value, v))
    }

    fn float_verdict(&mut self, value: f64) -> Verdict {
        self.exact = false;
        if (value - 1.0).abs() <= self.tol.rel_tol {
            Verdict::Uncertain
        } else {
            Verdict::Exact(value < 1.0)
        }
    }

    fn finish(&self, value: f64, v: Verdict) -> Option<(f64, bool)> {
        match v {
            Verdict::Exact(true) => Some((value, false)),
            Verdict::Exact(false) => None,
            Verdict::Uncertain => Some((value, true)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Verdict {
    Exact(bool),
    Uncertain,
}

/// `#{x ∈ Z^m : Σ x_i²/R_i ≤ 1}` for explicit semi-axes, exact when the
/// `R_i` are rational.
pub(crate) fn count_ellipsoid(
    r_exact: Option<Vec<BigRational>>,
    log_r: &[f64],
) -> Result<SectionCount> {
    let weights = match r_exact {
        Some(rs) if rs.iter().all(|r| !r.is_zero()) => {
            Weights::from_rationals(rs.into_iter().map(|r| r.recip()).collect())
        }
        _ => Weights::Float(log_r.iter().map(|l| (-l).exp()).collect()),
    };
    let (count, boundary_uncertain, exact) = weights.count_ball()?;
    Ok(SectionCount {
        n: log_r.len() as u32,
        count,
        boundary_uncertain,
        exact,
    })
}
