//! Reference computations that share no code path with the library.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_complex::Complex64;
use qwalk::{CoinOperator, PositionDistribution};

/// Mixed-coin position law after `n` steps by summing amplitudes over all
/// `2^n` chirality sequences.
pub fn path_sum_distribution(coin: &CoinOperator, n: u32) -> BTreeMap<i64, f64> {
    let h = [[coin.a(), coin.b()], [coin.c(), coin.d()]];
    let mut law = BTreeMap::new();
    for start in 0..2usize {
        // (position, final chirality) -> amplitude
        let mut amps: BTreeMap<(i64, usize), Complex64> = BTreeMap::new();
        for path in 0..(1u64 << n) {
            let mut chir = start;
            let mut x = 0i64;
            let mut amp = Complex64::new(1.0, 0.0);
            for s in 0..n {
                let next = ((path >> s) & 1) as usize;
                amp *= h[next][chir];
                x += if next == 0 { -1 } else { 1 };
                chir = next;
            }
            *amps.entry((x, chir)).or_default() += amp;
        }
        for ((x, _), amp) in amps {
            *law.entry(x).or_insert(0.0) += 0.5 * amp.norm_sqr();
        }
    }
    law
}

/// `binomial(n, 1/2)` law of `2k − n`.
pub fn binomial_walk(n: u64) -> BTreeMap<i64, f64> {
    let mut law = BTreeMap::new();
    let mut coeff: u128 = 1;
    let denom = 2f64.powi(n as i32);
    for k in 0..=n {
        law.insert(2 * k as i64 - n as i64, coeff as f64 / denom);
        coeff = coeff * (n - k) as u128 / (k + 1) as u128;
    }
    law
}

pub fn max_abs_diff(p: &PositionDistribution, law: &BTreeMap<i64, f64>) -> f64 {
    let lo = p.start().min(*law.keys().next().unwrap());
    let hi = p.end().max(*law.keys().last().unwrap());
    (lo..=hi)
        .map(|x| (p.prob(x) - law.get(&x).copied().unwrap_or(0.0)).abs())
        .fold(0.0, f64::max)
}

/// Direct double-sum convolution through a map, applied `m − 1` times.
pub fn iterated_convolution(p: &PositionDistribution, m: u64) -> BTreeMap<i64, f64> {
    let base: Vec<(i64, f64)> = p.iter().filter(|&(_, v)| v != 0.0).collect();
    let mut acc: BTreeMap<i64, f64> = base.iter().copied().collect();
    for _ in 1..m {
        let mut next = BTreeMap::new();
        for (&x, &px) in &acc {
            for &(y, py) in &base {
                *next.entry(x + y).or_insert(0.0) += px * py;
            }
        }
        acc = next;
    }
    acc
}

pub fn total_variation(p: &PositionDistribution, law: &BTreeMap<i64, f64>) -> f64 {
    let lo = p.start().min(*law.keys().next().unwrap());
    let hi = p.end().max(*law.keys().last().unwrap());
    0.5 * (lo..=hi)
        .map(|x| (p.prob(x) - law.get(&x).copied().unwrap_or(0.0)).abs())
        .sum::<f64>()
}

/// Adaptive Simpson quadrature on `[a, b]`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
        let m = 0.5 * (a + b);
        let fm = f(m);
        (m, fm, (b - a) / 6.0 * (fa + 4.0 * fm + fb))
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        m: f64,
        fm: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let (lm, flm, left) = simpson(f, a, fa, m, fm);
        let (rm, frm, right) = simpson(f, m, fm, b, fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        recurse(f, a, fa, m, fm, lm, flm, left, tol / 2.0, depth - 1)
            + recurse(f, m, fm, b, fb, rm, frm, right, tol / 2.0, depth - 1)
    }
    let (fa, fb) = (f(a), f(b));
    let (m, fm, whole) = simpson(f, a, fa, b, fb);
    recurse(f, a, fa, b, fb, m, fm, whole, tol, 50)
}

/// `∫_{-r}^{x} g(u) f(u; r) du` for the Konno density, after `u = r sin θ`.
pub fn konno_integral<G: Fn(f64) -> f64>(g: G, x: f64, r: f64) -> f64 {
    let s = (1.0 - r * r).sqrt();
    let upper = (x / r).clamp(-1.0, 1.0).asin();
    let integrand = |theta: f64| {
        let u = r * theta.sin();
        g(u) * s / (std::f64::consts::PI * (1.0 - u * u))
    };
    adaptive_simpson(&integrand, -std::f64::consts::FRAC_PI_2, upper, 1e-14)
}

/// Dvoretzky–Kiefer–Wolfowitz band half-width for `n` samples at level `alpha`.
pub fn dkw_epsilon(n: usize, alpha: f64) -> f64 {
    ((2.0 / alpha).ln() / (2.0 * n as f64)).sqrt()
}

/// `sup_x |F_n(x) − F(x)|` over the lattice, with `F` the CDF of `exact`.
pub fn empirical_sup_distance(samples: &[i64], exact: &PositionDistribution) -> f64 {
    let mut sorted = samples.to_vec();
    sorted.sort_unstable();
    let n = sorted.len() as f64;
    let lo = exact.start().min(sorted[0]);
    let hi = exact.end().max(*sorted.last().unwrap());
    let mut cdf = 0.0;
    let mut idx = 0usize;
    let mut worst = 0.0_f64;
    for x in lo..=hi {
        cdf += exact.prob(x);
        while idx < sorted.len() && sorted[idx] <= x {
            idx += 1;
        }
        worst = worst.max((idx as f64 / n - cdf).abs());
    }
    worst
}

/// Pseudo-random coins from a fixed linear congruential stream.
pub fn test_coins(count: usize, mut state: u64) -> Vec<qwalk::CoinParams> {
    let mut next = || {
        state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        (state >> 11) as f64 / (1u64 << 53) as f64
    };
    (0..count)
        .map(|_| qwalk::CoinParams {
            r: 0.05 + 0.9 * next(),
            phi: std::f64::consts::TAU * next() - std::f64::consts::PI,
            psi: std::f64::consts::TAU * next() - std::f64::consts::PI,
            delta: std::f64::consts::TAU * next() - std::f64::consts::PI,
        })
        .collect()
}
