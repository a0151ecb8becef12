//! JSON report shapes. Every report carries `"schema": "qwalk_ppm_report_v1"`
//! and the resolved config it was produced from.

use qwalk::CoinParams;
use serde::Serialize;

use crate::config::ExperimentConfig;

pub const SCHEMA: &str = "qwalk_ppm_report_v1";

#[derive(Debug, Serialize)]
pub struct WalkReport {
    pub schema: &'static str,
    pub mode: &'static str,
    pub t: u64,
    pub mean: f64,
    pub variance: f64,
    pub norm_defect: f64,
    pub config: ExperimentConfig,
}

#[derive(Debug, Serialize)]
pub struct MonteCarloReport {
    pub algorithm: &'static str,
    pub seed: u64,
    pub samples: usize,
    pub mean: f64,
    pub variance: f64,
    /// Sup distance between the sample CDF and the exact CDF.
    pub ks_to_exact: f64,
    pub dkw_band_99: f64,
}

#[derive(Debug, Serialize)]
pub struct PpmReport {
    pub schema: &'static str,
    pub mode: &'static str,
    pub t_target: u64,
    pub beta: f64,
    pub d: u64,
    #[serde(rename = "M")]
    pub m: u64,
    pub realized_t: u64,
    pub mean: f64,
    pub variance: f64,
    /// `variance / t^(1+beta)`.
    pub variance_ratio: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub monte_carlo: Option<MonteCarloReport>,
    pub config: ExperimentConfig,
}

#[derive(Debug, Serialize)]
pub struct LimitReport {
    pub schema: &'static str,
    pub mode: &'static str,
    pub beta: f64,
    pub theta: f64,
    pub t: u64,
    pub t_target: u64,
    pub d: u64,
    #[serde(rename = "M")]
    pub m: u64,
    pub law_tag: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
    pub predicted_variance: f64,
    pub ks_distance: f64,
    pub variance_ratio: f64,
    pub config: ExperimentConfig,
}

#[derive(Debug, Serialize)]
pub struct SpectralReport {
    pub schema: &'static str,
    pub mode: &'static str,
    pub coin_params: CoinParams,
    pub quad_points: usize,
    pub sigma2_closed: f64,
    pub sigma2_quadrature: f64,
    pub sigma2_difference: f64,
    pub charfn_block_steps: u64,
    pub max_charfn_residual: f64,
    pub config: ExperimentConfig,
}

#[derive(Debug, Serialize)]
pub struct Figure2Curve {
    pub beta: f64,
    pub d: u64,
    #[serde(rename = "M")]
    pub m: u64,
    pub realized_t: u64,
    pub mean: f64,
    pub variance: f64,
    pub file: String,
}

#[derive(Debug, Serialize)]
pub struct Figure2Summary {
    pub schema: &'static str,
    pub mode: &'static str,
    pub t_target: u64,
    pub curves: Vec<Figure2Curve>,
    pub variance_ordering_holds: bool,
    pub coherent_peak_abs_x: i64,
    pub crossover_ks_to_fitted_normal: f64,
    pub config: ExperimentConfig,
}
