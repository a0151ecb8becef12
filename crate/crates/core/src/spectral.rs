//! Momentum-space description of a walk step.
//!
//! With `ψ̂(k) = Σ_x ψ(x) e^{ikx}`, one step acts as the 2×2 matrix
//! `Ĥ(k) = diag(e^{−ik}, e^{ik}) H`. The characteristic function of a `d`-step
//! block started from the maximally mixed coin is
//! `∫ ½ Tr[Ĥ^d(k+ξ) Ĥ^{−d}(k)] dk/2π`.
//!
//! Eigenphases are parametrized the other way round: [`eigenphases`] at `k`
//! diagonalizes `H(r, φ+k, ψ+k, δ) = Ĥ(−k)`, whose characteristic polynomial
//! is `z² − 2r e^{iδ/2} cos(δ'+k) z + e^{iδ}` with `δ' = φ − δ/2`. The two
//! conventions differ by `k ↦ −k`, which leaves every full-period average
//! unchanged.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::coin::{CoinOperator, Mat2};
use crate::distribution::PositionDistribution;
use crate::error::{Error, Result};
use crate::ppm::block_distribution;
use crate::quadrature::periodic_mean;

/// Default k-grid size for the spectral quadratures.
pub const DEFAULT_QUAD_POINTS: usize = 1024;

/// Smallest grid accepted by [`sigma_squared_quadrature`].
pub const MIN_SIGMA_POINTS: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FourierCoin {
    pub k: f64,
    pub matrix: Mat2,
}

pub fn fourier_coin(coin: &CoinOperator, k: f64) -> FourierCoin {
    let down = Complex64::from_polar(1.0, -k);
    let up = Complex64::from_polar(1.0, k);
    let m = coin.matrix().0;
    FourierCoin {
        k,
        matrix: Mat2([
            [down * m[0][0], down * m[0][1]],
            [up * m[1][0], up * m[1][1]],
        ]),
    }
}

/// Eigenphases of `H(r, φ+k, ψ+k, δ)`.
///
/// `δ` is taken as `arg det H` in `[0, 2π)`. `phi_plus` is the root whose
/// phase lies in `[δ/2, δ/2 + π)`; it equals `δ/2 + arccos(r cos(δ'+k))` and
/// is therefore smooth in `k`. `phi_minus` lies in `(δ/2 − π, δ/2)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EigenphasePair {
    pub k: f64,
    pub delta: f64,
    pub phi_plus: f64,
    pub phi_minus: f64,
}

impl EigenphasePair {
    /// `(e^{iφ₊}, e^{iφ₋})`.
    pub fn roots(&self) -> (Complex64, Complex64) {
        (
            Complex64::from_polar(1.0, self.phi_plus),
            Complex64::from_polar(1.0, self.phi_minus),
        )
    }
}

fn det_phase(coin: &CoinOperator) -> f64 {
    let delta = coin.matrix().det().arg().rem_euclid(2.0 * PI);
    if delta >= 2.0 * PI {
        0.0
    } else {
        delta
    }
}

pub fn eigenphases(coin: &CoinOperator, k: f64) -> Result<EigenphasePair> {
    let coin = coin.require_nontrivial()?;
    let delta = det_phase(&coin);
    let m = fourier_coin(&coin, -k).matrix;
    let (tr, det) = (m.trace(), m.det());
    let disc = (tr * tr - 4.0 * det).sqrt();
    let z1 = 0.5 * (tr + disc);
    let z2 = 0.5 * (tr - disc);
    let half = Complex64::from_polar(1.0, -delta / 2.0);
    let (rel1, rel2) = ((z1 * half).arg(), (z2 * half).arg());
    let (plus, minus) = if (0.0..PI).contains(&rel1) {
        (rel1, rel2)
    } else {
        (rel2, rel1)
    };
    Ok(EigenphasePair {
        k,
        delta,
        phi_plus: delta / 2.0 + plus,
        phi_minus: delta / 2.0 + minus,
    })
}

/// `h(k)² = r² sin²(δ'+k) / (1 − r² cos²(δ'+k))`, the squared derivative of
/// the `φ₊` branch.
pub fn group_velocity_sq(coin: &CoinOperator, k: f64) -> Result<f64> {
    let coin = coin.require_nontrivial()?;
    let r = coin.a_mag();
    let delta_prime = coin.a().arg() - det_phase(&coin) / 2.0;
    let (s, c) = (delta_prime + k).sin_cos();
    Ok(r * r * s * s / (1.0 - r * r * c * c))
}

/// `σ² = ∫₀^{2π} h(k)² dk/2π` on an `n_points` periodic trapezoidal grid.
pub fn sigma_squared_quadrature(coin: &CoinOperator, n_points: usize) -> Result<f64> {
    let coin = coin.require_nontrivial()?;
    if n_points < MIN_SIGMA_POINTS {
        return Err(Error::TooFewPoints {
            min: MIN_SIGMA_POINTS,
            got: n_points,
        });
    }
    Ok(periodic_mean(n_points, |k| {
        group_velocity_sq(&coin, k).expect("coin checked non-trivial")
    }))
}

/// Characteristic function of one `d`-step block, `E e^{iξY}`.
///
/// The integrand is a trigonometric polynomial of degree at most `2d` in `k`,
/// so the quadrature is exact (up to rounding) once `n_points > 2d`.
pub fn block_char_fn(coin: &CoinOperator, d: u64, xi: f64, n_points: usize) -> Result<Complex64> {
    if d == 0 {
        return Err(Error::Zero("d"));
    }
    if n_points == 0 {
        return Err(Error::TooFewPoints { min: 1, got: 0 });
    }
    Ok(periodic_mean(n_points, |k| {
        let shifted = fourier_coin(coin, k + xi).matrix.pow(d);
        let base = fourier_coin(coin, k).matrix.pow(d);
        // ½ Tr[A B†] = ½ Σ_ij A_ij conj(B_ij)
        let mut tr = Complex64::new(0.0, 0.0);
        for i in 0..2 {
            for j in 0..2 {
                tr += shifted.0[i][j] * base.0[i][j].conj();
            }
        }
        0.5 * tr
    }))
}

/// `Σ_x p(x) e^{iξx}`.
pub fn char_fn_from_distribution(p: &PositionDistribution, xi: f64) -> Complex64 {
    p.iter()
        .filter(|&(_, m)| m != 0.0)
        .map(|(x, m)| Complex64::from_polar(m, xi * x as f64))
        .sum()
}

/// `n` equally spaced points covering `[−π, π]` inclusive.
pub fn xi_grid(n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![0.0],
        _ => (0..n)
            .map(|j| -PI + 2.0 * PI * j as f64 / (n - 1) as f64)
            .collect(),
    }
}

/// Largest `|block_char_fn − char_fn_from_distribution(block law)|` over the
/// `n_xi`-point grid of [`xi_grid`].
pub fn char_fn_residual(coin: &CoinOperator, d: u64, n_xi: usize, n_points: usize) -> Result<f64> {
    let block = block_distribution(coin, d)?;
    xi_grid(n_xi).into_iter().try_fold(0.0_f64, |worst, xi| {
        let spectral = block_char_fn(coin, d, xi, n_points)?;
        Ok(worst.max((spectral - char_fn_from_distribution(&block, xi)).norm()))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4};

    #[test]
    fn fourier_coin_examples() {
        let h = CoinOperator::hadamard();
        assert_eq!(fourier_coin(&h, 0.0).matrix, *h.matrix());
        let m = fourier_coin(&h, FRAC_PI_2).matrix;
        let want = Complex64::from_polar(FRAC_1_SQRT_2, -FRAC_PI_2);
        assert!((m.0[0][0] - want).norm() < 1e-15);
        assert!((m.0[0][1] - want).norm() < 1e-15);
        for k in [0.3, 1.7, 4.0] {
            let m = fourier_coin(&h, k).matrix;
            assert!((m.det().norm() - 1.0).abs() < 1e-14);
            assert!(m.unitarity_defect() < 1e-12);
        }
    }

    #[test]
    fn hadamard_eigenphases_at_quarter_turn() {
        let p = eigenphases(&CoinOperator::hadamard(), FRAC_PI_2).unwrap();
        assert!((p.delta - PI).abs() < 1e-15);
        assert!((p.phi_plus - 3.0 * FRAC_PI_4).abs() < 1e-12);
        assert!((p.phi_minus - FRAC_PI_4).abs() < 1e-12);
        let (zp, zm) = p.roots();
        assert!((zp - Complex64::new(-FRAC_1_SQRT_2, FRAC_1_SQRT_2)).norm() < 1e-12);
        assert!((zm - Complex64::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2)).norm() < 1e-12);
        // roots of z² − √2 i z − 1
        for z in [zp, zm] {
            let q = z * z - Complex64::new(0.0, 2f64.sqrt()) * z - 1.0;
            assert!(q.norm() < 1e-12);
        }
    }

    #[test]
    fn trivial_coin_refused() {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let id = CoinOperator::from_entries(one, zero, zero, one).unwrap();
        assert_eq!(eigenphases(&id, 0.1), Err(Error::TrivialCoin));
        assert_eq!(group_velocity_sq(&id, 0.1), Err(Error::TrivialCoin));
        assert_eq!(sigma_squared_quadrature(&id, 64), Err(Error::TrivialCoin));
    }

    #[test]
    fn group_velocity_examples() {
        let h = CoinOperator::hadamard();
        assert!(group_velocity_sq(&h, FRAC_PI_2).unwrap().abs() < 1e-15);
        assert!((group_velocity_sq(&h, 0.0).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn sigma_quadrature_small_grid_refused() {
        assert_eq!(
            sigma_squared_quadrature(&CoinOperator::hadamard(), 8),
            Err(Error::TooFewPoints { min: 16, got: 8 })
        );
    }

    #[test]
    fn char_fn_basics() {
        let flip = PositionDistribution::from_pairs(&[(-1, 0.5), (1, 0.5)]).unwrap();
        for xi in [0.0, 0.4, 2.0, -3.0] {
            let z = char_fn_from_distribution(&flip, xi);
            assert!((z - Complex64::new(xi.cos(), 0.0)).norm() < 1e-15);
            let b = block_char_fn(&CoinOperator::hadamard(), 1, xi, 64).unwrap();
            assert!((b - Complex64::new(xi.cos(), 0.0)).norm() < 1e-10);
        }
        let at_zero = block_char_fn(&CoinOperator::hadamard(), 5, 0.0, 64).unwrap();
        assert!((at_zero - 1.0).norm() < 1e-14);
    }

    #[test]
    fn xi_grid_endpoints() {
        let g = xi_grid(64);
        assert_eq!(g.len(), 64);
        assert_eq!(g[0], -PI);
        assert!((g[63] - PI).abs() < 1e-15);
    }
}
