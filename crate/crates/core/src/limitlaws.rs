//! Limit laws of `X_t / t^θ` and goodness-of-fit against finite-time laws.
//!
//! With measurement period `d ~ t^β` and `θ = (1 + β)/2`, the scaled position
//! converges to `N(0, 1)` for `β = 0`, to `N(0, 1 − √(1 − |a|²))` for
//! `0 < β < 1`, and to the Konno law `K(|a|)` for `β = 1`.

use std::f64::consts::{PI, SQRT_2};

use libm::erfc;
use serde::{Deserialize, Serialize};

use crate::distribution::PositionDistribution;
use crate::error::{check_range, Error, Result};
use crate::quadrature::periodic_mean;

/// Default node count for the Konno moment quadrature.
pub const KONNO_QUAD_POINTS: usize = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "law_tag")]
pub enum LimitLaw {
    #[serde(rename = "STANDARD_NORMAL")]
    StandardNormal,
    #[serde(rename = "NORMAL_SIGMA2")]
    Normal { sigma2: f64 },
    #[serde(rename = "KONNO")]
    Konno { r: f64 },
}

impl LimitLaw {
    pub fn tag(&self) -> &'static str {
        match self {
            LimitLaw::StandardNormal => "STANDARD_NORMAL",
            LimitLaw::Normal { .. } => "NORMAL_SIGMA2",
            LimitLaw::Konno { .. } => "KONNO",
        }
    }

    pub fn cdf(&self, x: f64) -> f64 {
        match *self {
            LimitLaw::StandardNormal => std_normal_cdf(x),
            LimitLaw::Normal { sigma2 } => std_normal_cdf(x / sigma2.sqrt()),
            LimitLaw::Konno { r } => konno_cdf(x, r),
        }
    }

    pub fn density(&self, x: f64) -> f64 {
        match *self {
            LimitLaw::StandardNormal => std_normal_density(x),
            LimitLaw::Normal { sigma2 } => {
                let s = sigma2.sqrt();
                std_normal_density(x / s) / s
            }
            LimitLaw::Konno { r } => konno_density(x, r),
        }
    }

    /// Second moment of the law. For `K(r)` this is `1 − √(1 − r²)`.
    pub fn variance(&self) -> f64 {
        match *self {
            LimitLaw::StandardNormal => 1.0,
            LimitLaw::Normal { sigma2 } => sigma2,
            LimitLaw::Konno { r } => sigma2_closed(r),
        }
    }
}

/// `θ = (1 + β)/2`, the exponent under which `X_t / t^θ` has a limit.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalingExponent {
    pub beta: f64,
    pub theta: f64,
}

impl ScalingExponent {
    pub fn new(beta: f64) -> Result<Self> {
        check_beta(beta)?;
        Ok(ScalingExponent {
            beta,
            theta: (1.0 + beta) / 2.0,
        })
    }
}

fn check_beta(beta: f64) -> Result<()> {
    check_range("beta", beta, "[0, 1]", (0.0..=1.0).contains(&beta))
}

fn check_open_unit(name: &'static str, v: f64) -> Result<()> {
    check_range(name, v, "(0, 1)", v > 0.0 && v < 1.0)
}

pub fn limit_law_for(beta: f64, a_mag: f64) -> Result<LimitLaw> {
    check_beta(beta)?;
    check_open_unit("|a|", a_mag)?;
    Ok(if beta == 0.0 {
        LimitLaw::StandardNormal
    } else if beta == 1.0 {
        LimitLaw::Konno { r: a_mag }
    } else {
        LimitLaw::Normal {
            sigma2: sigma2_closed(a_mag),
        }
    })
}

// 1 − √(1 − a²) without cancellation for small a.
fn sigma2_closed(a: f64) -> f64 {
    let a2 = a * a;
    a2 / (1.0 + (1.0 - a2).sqrt())
}

/// `σ(a)² = 1 − √(1 − |a|²)`.
pub fn sigma_squared(a_mag: f64) -> Result<f64> {
    check_open_unit("|a|", a_mag)?;
    Ok(sigma2_closed(a_mag))
}

/// Density of `K(r)`: `√(1−r²) / (π (1−x²) √(r²−x²))` on `|x| < r`, zero elsewhere
/// (including the endpoints).
pub fn konno_density(x: f64, r: f64) -> f64 {
    if x.is_nan() || x.abs() >= r {
        return 0.0;
    }
    (1.0 - r * r).sqrt() / (PI * (1.0 - x * x) * (r * r - x * x).sqrt())
}

/// Closed-form CDF of `K(r)`: `1/2 + arctan(√(1−r²) x / √(r²−x²)) / π` inside the support.
pub fn konno_cdf(x: f64, r: f64) -> f64 {
    if x <= -r {
        0.0
    } else if x >= r {
        1.0
    } else {
        0.5 + ((1.0 - r * r).sqrt() * x).atan2((r * r - x * x).sqrt()) / PI
    }
}

/// `∫ x^order f(x; r) dx` by the substitution `x = r sin θ`, which removes the
/// edge singularities and leaves a smooth periodic integrand.
pub fn konno_moment(r: f64, order: u32, n_points: usize) -> Result<f64> {
    check_open_unit("r", r)?;
    if n_points < 2 {
        return Err(Error::TooFewPoints {
            min: 2,
            got: n_points,
        });
    }
    let s = (1.0 - r * r).sqrt();
    // Over a full period in θ the support is traversed twice.
    let mean = periodic_mean(n_points, |theta: f64| {
        let x = r * theta.sin();
        x.powi(order as i32) * s / (PI * (1.0 - x * x))
    });
    Ok(PI * mean)
}

pub fn konno_second_moment(r: f64) -> Result<f64> {
    konno_moment(r, 2, KONNO_QUAD_POINTS)
}

fn std_normal_cdf(z: f64) -> f64 {
    0.5 * erfc(-z / SQRT_2)
}

fn std_normal_density(z: f64) -> f64 {
    (-0.5 * z * z).exp() / (2.0 * PI).sqrt()
}

fn check_variance(variance: f64) -> Result<()> {
    check_range("variance", variance, "(0, inf)", variance > 0.0)
}

pub fn normal_density(x: f64, mean: f64, variance: f64) -> Result<f64> {
    check_variance(variance)?;
    let s = variance.sqrt();
    Ok(std_normal_density((x - mean) / s) / s)
}

/// Normal CDF through `erfc`, which is accurate to a few ulps.
pub fn normal_cdf(x: f64, mean: f64, variance: f64) -> Result<f64> {
    check_variance(variance)?;
    Ok(std_normal_cdf((x - mean) / variance.sqrt()))
}

/// Right-continuous step CDF of a finitely supported law on the real line.
#[derive(Clone, Debug, PartialEq)]
pub struct StepCdf {
    /// Jump locations, strictly increasing.
    points: Vec<f64>,
    /// `F` just after each jump.
    after: Vec<f64>,
}

impl StepCdf {
    /// CDF of `x ↦ x / scale` pushed forward through `p`. Sites with zero mass
    /// are not jumps and are dropped.
    pub fn from_distribution(p: &PositionDistribution, scale: f64) -> Self {
        assert!(scale > 0.0, "scale must be positive");
        let mut points = Vec::new();
        let mut after = Vec::new();
        let mut acc = 0.0;
        for (x, m) in p.iter().filter(|&(_, m)| m > 0.0) {
            acc += m;
            points.push(x as f64 / scale);
            after.push(acc);
        }
        StepCdf { points, after }
    }

    pub fn jump_points(&self) -> &[f64] {
        &self.points
    }

    pub fn eval(&self, x: f64) -> f64 {
        let n = self.points.partition_point(|&p| p <= x);
        if n == 0 {
            0.0
        } else {
            self.after[n - 1]
        }
    }

    /// Left limit `F(x⁻)`.
    pub fn eval_left(&self, x: f64) -> f64 {
        let n = self.points.partition_point(|&p| p < x);
        if n == 0 {
            0.0
        } else {
            self.after[n - 1]
        }
    }

    /// `sup_x |F(x) − G(x)|` for a continuous CDF `G`, attained at a one-sided
    /// limit of some jump.
    pub fn ks_distance_to<G: Fn(f64) -> f64>(&self, cdf: G) -> f64 {
        let mut before = 0.0;
        let mut worst = 0.0_f64;
        for (&x, &f) in self.points.iter().zip(&self.after) {
            let g = cdf(x);
            worst = worst.max((before - g).abs()).max((f - g).abs());
            before = f;
        }
        worst
    }

    pub fn ks_distance(&self, law: &LimitLaw) -> f64 {
        self.ks_distance_to(|x| law.cdf(x))
    }

    /// `sup_x |F(x) − G(x)|` between two step CDFs, over the union of jumps.
    pub fn ks_distance_step(&self, other: &StepCdf) -> f64 {
        self.points
            .iter()
            .chain(&other.points)
            .map(|&x| {
                let right = (self.eval(x) - other.eval(x)).abs();
                let left = (self.eval_left(x) - other.eval_left(x)).abs();
                right.max(left)
            })
            .fold(0.0, f64::max)
    }
}

/// CDF of `X_t / t^θ` where `X_t` has law `p`.
pub fn scaled_empirical_cdf(p: &PositionDistribution, t: u64, theta: f64) -> StepCdf {
    StepCdf::from_distribution(p, (t as f64).powf(theta))
}

pub fn ks_distance(empirical: &StepCdf, law: &LimitLaw) -> f64 {
    empirical.ks_distance(law)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn law_selection() {
        assert_eq!(
            limit_law_for(0.0, FRAC_1_SQRT_2).unwrap(),
            LimitLaw::StandardNormal
        );
        match limit_law_for(0.5, FRAC_1_SQRT_2).unwrap() {
            LimitLaw::Normal { sigma2 } => assert!((sigma2 - (1.0 - FRAC_1_SQRT_2)).abs() < 1e-15),
            other => panic!("{other:?}"),
        }
        assert_eq!(
            limit_law_for(1.0, FRAC_1_SQRT_2).unwrap(),
            LimitLaw::Konno { r: FRAC_1_SQRT_2 }
        );
        assert!(limit_law_for(1.1, 0.5).is_err());
        assert!(limit_law_for(0.5, 1.0).is_err());
        assert!(limit_law_for(0.5, 0.0).is_err());
    }

    #[test]
    fn theta() {
        for (beta, theta) in [(0.0, 0.5), (0.5, 0.75), (1.0, 1.0)] {
            assert_eq!(ScalingExponent::new(beta).unwrap().theta, theta);
        }
        assert!(ScalingExponent::new(-0.01).is_err());
    }

    #[test]
    fn sigma_squared_values() {
        assert!((sigma_squared(FRAC_1_SQRT_2).unwrap() - 0.292_893_218_813_452_5).abs() < 1e-15);
        assert!((sigma_squared(1.0 - 1e-15).unwrap() - 1.0).abs() < 1e-7);
        assert!(sigma_squared(1e-9).unwrap() < 1e-17);
        assert!(sigma_squared(1e-9).unwrap() > 0.0);
        assert!(sigma_squared(1.0).is_err());
        assert!(sigma_squared(0.0).is_err());
    }

    #[test]
    fn konno_density_values() {
        let r = FRAC_1_SQRT_2;
        assert!((konno_density(0.0, r) - 1.0 / PI).abs() < 1e-15);
        assert_eq!(konno_density(r, r), 0.0);
        assert_eq!(konno_density(-r, r), 0.0);
        assert_eq!(konno_density(0.9, r), 0.0);
        for x in [0.1, 0.3, 0.6, 0.7] {
            assert_eq!(konno_density(x, r), konno_density(-x, r));
        }
    }

    #[test]
    fn konno_cdf_edges() {
        let r = 0.6;
        assert_eq!(konno_cdf(0.0, r), 0.5);
        assert_eq!(konno_cdf(-r, r), 0.0);
        assert_eq!(konno_cdf(r, r), 1.0);
        assert_eq!(konno_cdf(-3.0, r), 0.0);
        let mut last = 0.0;
        for i in -100..=100 {
            let x = r * i as f64 / 100.0;
            let f = konno_cdf(x, r);
            assert!(f >= last);
            assert!((konno_cdf(-x, r) - (1.0 - f)).abs() < 1e-15);
            last = f;
        }
        // continuity at the edges
        assert!(konno_cdf(r - 1e-12, r) > 1.0 - 1e-5);
    }

    #[test]
    fn normal_values() {
        assert_eq!(normal_cdf(0.0, 0.0, 1.0).unwrap(), 0.5);
        assert!((normal_density(0.0, 0.0, 1.0).unwrap() - 1.0 / (2.0 * PI).sqrt()).abs() < 1e-16);
        // tabulated Φ(1.96)
        assert!((normal_cdf(1.96, 0.0, 1.0).unwrap() - 0.975_002_104_851_780).abs() < 1e-12);
        assert!((normal_cdf(3.0, 1.0, 4.0).unwrap() - 0.841_344_746_068_542_9).abs() < 1e-12);
        assert!(normal_cdf(0.0, 0.0, 0.0).is_err());
        assert!(normal_density(0.0, 0.0, -1.0).is_err());
    }

    #[test]
    fn step_cdf_basics() {
        let delta = PositionDistribution::delta(0);
        let f = scaled_empirical_cdf(&delta, 1, 1.0);
        assert_eq!(f.eval(-1e-9), 0.0);
        assert_eq!(f.eval(0.0), 1.0);
        assert_eq!(f.eval_left(0.0), 0.0);
        assert!((ks_distance(&f, &LimitLaw::StandardNormal) - 0.5).abs() < 1e-15);

        let flip = PositionDistribution::from_pairs(&[(-1, 0.5), (1, 0.5)]).unwrap();
        let f = scaled_empirical_cdf(&flip, 1, 1.0);
        assert_eq!(f.jump_points(), &[-1.0, 1.0]);
        assert_eq!(f.eval(-1.0), 0.5);
        assert_eq!(f.eval(0.3), 0.5);
        assert_eq!(f.eval(1.0), 1.0);
        assert_eq!(f.ks_distance_step(&f), 0.0);

        let law = LimitLaw::Normal { sigma2: 0.3 };
        let same = f.ks_distance_to(|x| law.cdf(x));
        assert_eq!(same, f.ks_distance(&law));
    }

    #[test]
    fn step_cdf_scaling() {
        let flip = PositionDistribution::from_pairs(&[(-4, 0.5), (4, 0.5)]).unwrap();
        let f = scaled_empirical_cdf(&flip, 16, 0.5);
        assert_eq!(f.jump_points(), &[-1.0, 1.0]);
    }
}
