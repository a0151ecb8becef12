//! Experiment orchestration behind the `qwalk` binary.

pub mod config;
pub mod report;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::Context;
use qwalk::limitlaws::{
    limit_law_for, normal_cdf, scaled_empirical_cdf, sigma_squared, ScalingExponent,
};
use qwalk::ppm::{ppm_distribution, schedule_from, PpmSampler, SAMPLER_ALGORITHM};
use qwalk::spectral::{char_fn_residual, sigma_squared_quadrature};
use qwalk::walk::mixed_coin_distribution;
use qwalk::{CoinOperator, LimitLaw, PositionDistribution};

use config::{ExperimentConfig, Mode};
use report::*;

/// Tolerance on total mass of every emitted distribution.
pub const MASS_TOL: f64 = 1e-10;
/// Largest accepted gap between the quadrature and closed-form `σ²`.
pub const SIGMA2_TOL: f64 = 1e-9;
/// Largest accepted block characteristic-function residual.
pub const CHARFN_TOL: f64 = 1e-8;
/// Block length used for the characteristic-function residual.
pub const CHARFN_BLOCK_STEPS: u64 = 8;
/// Size of the `ξ` grid for the characteristic-function residual.
pub const CHARFN_XI_POINTS: usize = 64;

#[derive(Debug)]
pub enum Failure {
    Config(anyhow::Error),
    /// Outputs were written but a numerical check failed.
    Numeric(String),
    Io(anyhow::Error),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Config(_) => 2,
            Failure::Numeric(_) => 3,
            Failure::Io(_) => 4,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Config(e) => write!(f, "config error: {e:#}"),
            Failure::Numeric(e) => write!(f, "numeric check failed: {e}"),
            Failure::Io(e) => write!(f, "I/O error: {e:#}"),
        }
    }
}

fn config_err(e: impl std::fmt::Display) -> Failure {
    Failure::Config(anyhow::anyhow!("{e}"))
}

/// Writes via a temporary file in the same directory, then renames.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), Failure> {
    let dir = path
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    fs::create_dir_all(dir)
        .with_context(|| format!("creating {}", dir.display()))
        .map_err(Failure::Io)?;
    let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("out");
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    let write = || -> std::io::Result<()> {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents.as_bytes())?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    };
    write()
        .with_context(|| format!("writing {}", path.display()))
        .map_err(|e| {
            let _ = fs::remove_file(&tmp);
            Failure::Io(e)
        })
}

fn write_json<T: serde::Serialize>(path: &Path, value: &T) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
    text.push('\n');
    write_atomic(path, &text)
}

fn mass_defect(p: &PositionDistribution) -> f64 {
    (p.total_mass() - 1.0).abs()
}

fn check_mass(p: &PositionDistribution, what: &str) -> Result<(), Failure> {
    let defect = mass_defect(p);
    if defect > MASS_TOL {
        Err(Failure::Numeric(format!(
            "{what}: total mass off by {defect:e}"
        )))
    } else {
        Ok(())
    }
}

/// Paths written and a one-line human summary.
#[derive(Debug)]
pub struct RunOutput {
    pub files: Vec<PathBuf>,
    pub summary: String,
}

pub fn run(cfg: &ExperimentConfig) -> Result<RunOutput, Failure> {
    cfg.validate().map_err(config_err)?;
    let coin = cfg.coin.build().map_err(config_err)?;
    match cfg.mode.expect("validated") {
        Mode::Walk => run_walk(cfg, &coin),
        Mode::Ppm => run_ppm(cfg, &coin),
        Mode::Limit => run_limit(cfg, &coin),
        Mode::Spectral => run_spectral(cfg, &coin),
        Mode::Figure2 => run_figure2(cfg, &coin),
    }
}

pub fn run_walk(cfg: &ExperimentConfig, coin: &CoinOperator) -> Result<RunOutput, Failure> {
    let p = mixed_coin_distribution(coin, cfg.t_target);
    let csv = cfg.out_dir.join("walk.csv");
    let json = cfg.out_dir.join("walk.json");
    write_atomic(&csv, &p.to_csv())?;
    let stats = WalkReport {
        schema: SCHEMA,
        mode: "walk",
        t: cfg.t_target,
        mean: p.mean(),
        variance: p.variance(),
        norm_defect: mass_defect(&p),
        config: cfg.clone(),
    };
    write_json(&json, &stats)?;
    check_mass(&p, "walk distribution")?;
    Ok(RunOutput {
        files: vec![csv, json],
        summary: format!(
            "t = {}: mean = {:.17e}, variance = {:.17e}, norm defect = {:.3e}",
            stats.t, stats.mean, stats.variance, stats.norm_defect
        ),
    })
}

pub fn run_ppm(cfg: &ExperimentConfig, coin: &CoinOperator) -> Result<RunOutput, Failure> {
    let schedule = schedule_from(cfg.t_target, cfg.beta).map_err(config_err)?;
    let p = ppm_distribution(coin, &schedule).map_err(config_err)?;
    let variance = p.variance();
    let monte_carlo = match cfg.seed {
        Some(seed) => {
            let sampler = PpmSampler::new(coin, &schedule).map_err(config_err)?;
            let draws = sampler.sample_many(seed, cfg.samples);
            let n = draws.len() as f64;
            let mean = draws.iter().map(|&x| x as f64).sum::<f64>() / n;
            let var = draws
                .iter()
                .map(|&x| (x as f64 - mean).powi(2))
                .sum::<f64>()
                / n;
            let empirical = PositionDistribution::from_pairs(
                &draws.iter().map(|&x| (x, 1.0 / n)).collect::<Vec<_>>(),
            )
            .map_err(|e| Failure::Numeric(e.to_string()))?;
            let ks = scaled_empirical_cdf(&empirical, 1, 1.0)
                .ks_distance_step(&scaled_empirical_cdf(&p, 1, 1.0));
            Some(MonteCarloReport {
                algorithm: SAMPLER_ALGORITHM,
                seed,
                samples: cfg.samples,
                mean,
                variance: var,
                ks_to_exact: ks,
                dkw_band_99: ((2.0f64 / 0.01).ln() / (2.0 * n)).sqrt(),
            })
        }
        None => None,
    };
    let stats = PpmReport {
        schema: SCHEMA,
        mode: "ppm",
        t_target: cfg.t_target,
        beta: cfg.beta,
        d: schedule.d,
        m: schedule.m,
        realized_t: schedule.t,
        mean: p.mean(),
        variance,
        variance_ratio: variance / (schedule.t as f64).powf(1.0 + cfg.beta),
        monte_carlo,
        config: cfg.clone(),
    };
    let csv = cfg.out_dir.join("ppm.csv");
    let json = cfg.out_dir.join("ppm_stats.json");
    write_atomic(&csv, &p.to_csv())?;
    write_json(&json, &stats)?;
    check_mass(&p, "ppm distribution")?;
    Ok(RunOutput {
        files: vec![csv, json],
        summary: format!(
            "d = {}, M = {}, t = {}: variance = {:.6}, variance / t^(1+beta) = {:.6}",
            stats.d, stats.m, stats.realized_t, stats.variance, stats.variance_ratio
        ),
    })
}

pub fn run_limit(cfg: &ExperimentConfig, coin: &CoinOperator) -> Result<RunOutput, Failure> {
    let law = limit_law_for(cfg.beta, coin.a_mag()).map_err(config_err)?;
    let scaling = ScalingExponent::new(cfg.beta).map_err(config_err)?;
    let schedule = schedule_from(cfg.t_target, cfg.beta).map_err(config_err)?;
    let p = ppm_distribution(coin, &schedule).map_err(config_err)?;
    let ks = scaled_empirical_cdf(&p, schedule.t, scaling.theta).ks_distance(&law);
    let (sigma2, r) = match law {
        LimitLaw::StandardNormal => (Some(1.0), None),
        LimitLaw::Normal { sigma2 } => (Some(sigma2), None),
        LimitLaw::Konno { r } => (None, Some(r)),
    };
    let fit = LimitReport {
        schema: SCHEMA,
        mode: "limit",
        beta: cfg.beta,
        theta: scaling.theta,
        t: schedule.t,
        t_target: cfg.t_target,
        d: schedule.d,
        m: schedule.m,
        law_tag: law.tag(),
        sigma2,
        r,
        predicted_variance: law.variance(),
        ks_distance: ks,
        variance_ratio: p.variance() / (schedule.t as f64).powf(1.0 + cfg.beta),
        config: cfg.clone(),
    };
    let json = cfg.out_dir.join("limit.json");
    write_json(&json, &fit)?;
    check_mass(&p, "ppm distribution")?;
    Ok(RunOutput {
        files: vec![json],
        summary: format!(
            "{} (theta = {}): KS = {:.6}, variance ratio = {:.6} vs {:.6}",
            fit.law_tag, fit.theta, fit.ks_distance, fit.variance_ratio, fit.predicted_variance
        ),
    })
}

pub fn run_spectral(cfg: &ExperimentConfig, coin: &CoinOperator) -> Result<RunOutput, Failure> {
    let params = coin.params().map_err(config_err)?;
    let closed = sigma_squared(params.r).map_err(config_err)?;
    let quad = sigma_squared_quadrature(coin, cfg.quad_points).map_err(config_err)?;
    let residual = char_fn_residual(coin, CHARFN_BLOCK_STEPS, CHARFN_XI_POINTS, cfg.quad_points)
        .map_err(config_err)?;
    let rep = SpectralReport {
        schema: SCHEMA,
        mode: "spectral",
        coin_params: params,
        quad_points: cfg.quad_points,
        sigma2_closed: closed,
        sigma2_quadrature: quad,
        sigma2_difference: (quad - closed).abs(),
        charfn_block_steps: CHARFN_BLOCK_STEPS,
        max_charfn_residual: residual,
        config: cfg.clone(),
    };
    let json = cfg.out_dir.join("spectral.json");
    write_json(&json, &rep)?;
    if rep.sigma2_difference > SIGMA2_TOL {
        return Err(Failure::Numeric(format!(
            "sigma^2 quadrature differs from closed form by {:e}",
            rep.sigma2_difference
        )));
    }
    if residual > CHARFN_TOL {
        return Err(Failure::Numeric(format!(
            "characteristic-function residual {residual:e}"
        )));
    }
    Ok(RunOutput {
        files: vec![json],
        summary: format!(
            "sigma^2 closed = {:.15}, quadrature = {:.15}, charfn residual = {:.3e}",
            closed, quad, residual
        ),
    })
}

/// The three scale exponents compared at fixed `t`.
pub const FIGURE2_BETAS: [f64; 3] = [0.0, 0.5, 1.0];

pub fn run_figure2(cfg: &ExperimentConfig, coin: &CoinOperator) -> Result<RunOutput, Failure> {
    let mut files = Vec::new();
    let mut curves = Vec::new();
    let mut dists = Vec::new();
    for beta in FIGURE2_BETAS {
        let schedule = schedule_from(cfg.t_target, beta).map_err(config_err)?;
        let p = ppm_distribution(coin, &schedule).map_err(config_err)?;
        let name = format!("figure2_beta{beta}.csv");
        let path = cfg.out_dir.join(&name);
        write_atomic(&path, &p.to_csv())?;
        files.push(path);
        curves.push(Figure2Curve {
            beta,
            d: schedule.d,
            m: schedule.m,
            realized_t: schedule.t,
            mean: p.mean(),
            variance: p.variance(),
            file: name,
        });
        dists.push(p);
    }
    let ordered =
        curves[0].variance < curves[1].variance && curves[1].variance < curves[2].variance;
    let peak = dists[2]
        .iter()
        .fold((0i64, f64::NEG_INFINITY), |best, (x, m)| {
            if m > best.1 {
                (x, m)
            } else {
                best
            }
        })
        .0;
    let mid = &dists[1];
    let (mean, var) = (mid.mean(), mid.variance());
    let ks = scaled_empirical_cdf(mid, 1, 1.0)
        .ks_distance_to(|x| normal_cdf(x, mean, var).unwrap_or(f64::NAN));
    let summary = Figure2Summary {
        schema: SCHEMA,
        mode: "figure2",
        t_target: cfg.t_target,
        curves,
        variance_ordering_holds: ordered,
        coherent_peak_abs_x: peak.abs(),
        crossover_ks_to_fitted_normal: ks,
        config: cfg.clone(),
    };
    let json = cfg.out_dir.join("figure2_summary.json");
    write_json(&json, &summary)?;
    files.push(json);
    for p in &dists {
        check_mass(p, "figure2 distribution")?;
    }
    if !ordered {
        return Err(Failure::Numeric(
            "variance ordering beta=0 < 0.5 < 1 does not hold".into(),
        ));
    }
    Ok(RunOutput {
        files,
        summary: format!(
            "variances {:.3} < {:.3} < {:.3}; coherent peak at |x| = {}; crossover KS to normal = {:.4}",
            summary.curves[0].variance,
            summary.curves[1].variance,
            summary.curves[2].variance,
            summary.coherent_peak_abs_x,
            ks
        ),
    })
}
