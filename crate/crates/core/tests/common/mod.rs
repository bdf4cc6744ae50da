//! Independent reference computations used by the integration tests. Nothing
//! here calls into the library; formulas are written out directly.

#![allow(dead_code)]

use num_bigint::BigUint;

pub fn phi(a: f64, b: f64, x: f64) -> f64 {
    let xlx = |t: f64| if t == 0.0 { 0.0 } else { t * t.ln() };
    (1.0 - x) * a.ln() + x * b.ln() - xlx(x) - xlx(1.0 - x)
}

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let flo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if (f(mid) >= 0.0) == (flo >= 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `(ϑ, θ)` for `a + b > 1` by plain bisection on each side of the maximum.
pub fn theta(a: f64, b: f64) -> (f64, f64) {
    let m = b / (a + b);
    let f = |x| phi(a, b, x);
    let lo = if f(0.0) >= 0.0 {
        0.0
    } else {
        bisect(f, 0.0, m)
    };
    let hi = if f(1.0) >= 0.0 {
        1.0
    } else {
        bisect(f, m, 1.0)
    };
    (lo, hi)
}

/// `g_{a,b}` at `x = |z|²`.
pub fn green(a: f64, b: f64, x: f64) -> f64 {
    (a * x + b).ln() - x.ln()
}

/// The positive part as a Legendre transform,
/// `p(x) = max_{κ ∈ [lo, hi]} φ(κ) − κ log x`, by ternary search on the
/// concave objective.
pub fn positive_green(a: f64, b: f64, lo: f64, hi: f64, x: f64) -> f64 {
    let f = |k: f64| phi(a, b, k) - k * x.ln();
    let (mut l, mut h) = (lo, hi);
    for _ in 0..300 {
        let m1 = l + (h - l) / 3.0;
        let m2 = h - (h - l) / 3.0;
        if f(m1) < f(m2) {
            l = m1;
        } else {
            h = m2;
        }
    }
    f(lo).max(f(hi)).max(f(0.5 * (l + h)))
}

/// `log C(n, i)` as a sum of logs.
pub fn log_binomial(n: u64, i: u64) -> f64 {
    let i = i.min(n - i);
    (1..=i).map(|k| ((n - i + k) as f64 / k as f64).ln()).sum()
}

pub fn binomial(n: u64, i: u64) -> BigUint {
    let mut c = BigUint::from(1u32);
    for k in 0..i {
        c = c * BigUint::from(n - k) / BigUint::from(k + 1);
    }
    c
}

/// Binary entropy `H(t) = −t log t − (1−t) log(1−t)`, an antiderivative of
/// `log(1/t − 1)`.
pub fn entropy(t: f64) -> f64 {
    let xlx = |t: f64| if t <= 0.0 { 0.0 } else { t * t.ln() };
    -xlx(t) - xlx(1.0 - t)
}

/// `R_i = (n+1) C(n,i) a^{n−i} b^i` for integer `a, b`.
pub fn semi_axes_int(a: u64, b: u64, n: u64) -> Vec<BigUint> {
    (0..=n)
        .map(|i| {
            BigUint::from(n + 1)
                * binomial(n, i)
                * BigUint::from(a).pow((n - i) as u32)
                * BigUint::from(b).pow(i as u32)
        })
        .collect()
}

/// `#{c ∈ Z^m : Σ c_i²/R_i ≤ 1}` for integer `R_i`, exactly.
pub fn lattice_count(r: &[BigUint]) -> u128 {
    let l = r.iter().fold(BigUint::from(1u32), |acc, x| {
        num_integer::lcm(acc, x.clone())
    });
    let w: Vec<u128> = r.iter().map(|x| u128::try_from(&l / x).unwrap()).collect();
    let budget = u128::try_from(&l).unwrap();
    fn go(w: &[u128], budget: u128) -> u128 {
        let (w0, rest) = (w[0], &w[1..]);
        if rest.is_empty() {
            // 2⌊√(budget/w0)⌋ + 1
            let q = budget / w0;
            let mut s = (q as f64).sqrt() as u128;
            while s * s > q {
                s -= 1;
            }
            while (s + 1) * (s + 1) <= q {
                s += 1;
            }
            return 2 * s + 1;
        }
        let mut total = go(rest, budget);
        let mut c = 1u128;
        while c * c * w0 <= budget {
            total += 2 * go(rest, budget - c * c * w0);
            c += 1;
        }
        total
    }
    go(&w, budget)
}

/// `c·z^{−i}` has sup norm at most 1 at level `n` for integer `a, b`:
/// `c²·i^i·(n−i)^{n−i} ≤ n^n·a^{n−i}·b^i`.
pub fn monomial_is_small(a: u64, b: u64, n: u64, i: u64, c: u64) -> bool {
    let pw = |x: u64, e: u64| BigUint::from(x).pow(e as u32);
    let lhs = BigUint::from(c) * BigUint::from(c) * pw(i, i) * pw(n - i, n - i);
    let rhs = pw(n, n) * pw(a, n - i) * pw(b, i);
    lhs <= rhs
}

/// Composite Simpson rule with `2k` panels.
pub fn simpson(f: impl Fn(f64) -> f64, lo: f64, hi: f64, k: usize) -> f64 {
    let m = 2 * k;
    let h = (hi - lo) / m as f64;
    let mut s = f(lo) + f(hi);
    for j in 1..m {
        s += f(lo + j as f64 * h) * if j % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}
