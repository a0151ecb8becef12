use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use num_complex::Complex64;
use qwalk::{make_coin, CoinOperator, CoinParams};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Walk,
    Ppm,
    Limit,
    Spectral,
    Figure2,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Mode::Walk => "walk",
            Mode::Ppm => "ppm",
            Mode::Limit => "limit",
            Mode::Spectral => "spectral",
            Mode::Figure2 => "figure2",
        };
        f.write_str(s)
    }
}

/// How a coin is written in a config file or on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum CoinSpec {
    Hadamard,
    Dirac {
        epsilon: f64,
    },
    /// Entries as `[re, im]` pairs.
    Entries {
        a: [f64; 2],
        b: [f64; 2],
        c: [f64; 2],
        d: [f64; 2],
    },
    Params {
        r: f64,
        phi: f64,
        psi: f64,
        delta: f64,
    },
}

impl CoinSpec {
    /// Builds the coin, rejecting non-unitary and trivial ones.
    pub fn build(&self) -> qwalk::Result<CoinOperator> {
        let z = |p: [f64; 2]| Complex64::new(p[0], p[1]);
        match *self {
            CoinSpec::Hadamard => Ok(CoinOperator::hadamard()),
            CoinSpec::Dirac { epsilon } => CoinOperator::dirac(epsilon),
            CoinSpec::Entries { a, b, c, d } => make_coin(z(a), z(b), z(c), z(d)),
            CoinSpec::Params { r, phi, psi, delta } => CoinParams { r, phi, psi, delta }.to_coin(),
        }
    }
}

/// Parses `hadamard`, `dirac:EPS`, `params:R,PHI,PSI,DELTA` or
/// `entries:ARE,AIM,BRE,BIM,CRE,CIM,DRE,DIM`.
impl FromStr for CoinSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (kind, rest) = s.split_once(':').unwrap_or((s, ""));
        let nums = || -> Result<Vec<f64>, String> {
            rest.split(',')
                .map(|v| {
                    v.trim()
                        .parse::<f64>()
                        .map_err(|e| format!("bad number {v:?} in coin spec: {e}"))
                })
                .collect()
        };
        let want = |n: usize| -> Result<Vec<f64>, String> {
            let v = nums()?;
            if v.len() == n {
                Ok(v)
            } else {
                Err(format!(
                    "coin spec {kind:?} takes {n} numbers, got {}",
                    v.len()
                ))
            }
        };
        match kind.trim().to_ascii_lowercase().as_str() {
            "hadamard" if rest.is_empty() => Ok(CoinSpec::Hadamard),
            "dirac" => Ok(CoinSpec::Dirac { epsilon: want(1)?[0] }),
            "params" => {
                let v = want(4)?;
                Ok(CoinSpec::Params {
                    r: v[0],
                    phi: v[1],
                    psi: v[2],
                    delta: v[3],
                })
            }
            "entries" => {
                let v = want(8)?;
                Ok(CoinSpec::Entries {
                    a: [v[0], v[1]],
                    b: [v[2], v[3]],
                    c: [v[4], v[5]],
                    d: [v[6], v[7]],
                })
            }
            _ => Err(format!(
                "unknown coin spec {s:?}; expected hadamard, dirac:EPS, params:R,PHI,PSI,DELTA or entries:..."
            )),
        }
    }
}

fn default_coin() -> CoinSpec {
    CoinSpec::Hadamard
}
fn default_t() -> u64 {
    100
}
fn default_beta() -> f64 {
    0.5
}
fn default_out() -> PathBuf {
    PathBuf::from(".")
}
fn default_quad() -> usize {
    qwalk::spectral::DEFAULT_QUAD_POINTS
}
fn default_samples() -> usize {
    10_000
}

/// A complete experiment description. Missing fields take their defaults.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub mode: Option<Mode>,
    #[serde(default = "default_coin")]
    pub coin: CoinSpec,
    #[serde(default = "default_t")]
    pub t_target: u64,
    #[serde(default = "default_beta")]
    pub beta: f64,
    #[serde(default = "default_out")]
    pub out_dir: PathBuf,
    #[serde(default = "default_quad")]
    pub quad_points: usize,
    #[serde(default)]
    pub seed: Option<u64>,
    /// Monte Carlo trajectories drawn by `ppm` when a seed is given.
    #[serde(default = "default_samples")]
    pub samples: usize,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            mode: None,
            coin: default_coin(),
            t_target: default_t(),
            beta: default_beta(),
            out_dir: default_out(),
            quad_points: default_quad(),
            seed: None,
            samples: default_samples(),
        }
    }
}

/// Command-line values that override the file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub t: Option<u64>,
    pub beta: Option<f64>,
    pub coin: Option<CoinSpec>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub quad_points: Option<usize>,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self, String> {
        serde_json::from_str(text).map_err(|e| format!("config: {e}"))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn apply(&mut self, mode: Mode, o: &Overrides) {
        self.mode = Some(mode);
        if let Some(t) = o.t {
            self.t_target = t;
        }
        if let Some(beta) = o.beta {
            self.beta = beta;
        }
        if let Some(coin) = o.coin {
            self.coin = coin;
        }
        if o.seed.is_some() {
            self.seed = o.seed;
        }
        if let Some(out) = &o.out {
            self.out_dir = out.clone();
        }
        if let Some(q) = o.quad_points {
            self.quad_points = q;
        }
    }

    /// Checks the fields the selected mode reads.
    pub fn validate(&self) -> Result<(), String> {
        let mode = self.mode.ok_or("config has no mode")?;
        let needs_t = matches!(mode, Mode::Walk | Mode::Ppm | Mode::Limit | Mode::Figure2);
        if needs_t && self.t_target == 0 {
            return Err("t_target must be at least 1".into());
        }
        if matches!(mode, Mode::Ppm | Mode::Limit) && !(0.0..=1.0).contains(&self.beta) {
            return Err(format!("beta = {} is outside [0, 1]", self.beta));
        }
        if mode == Mode::Spectral && self.quad_points < qwalk::spectral::MIN_SIGMA_POINTS {
            return Err(format!(
                "quad_points = {} is below {}",
                self.quad_points,
                qwalk::spectral::MIN_SIGMA_POINTS
            ));
        }
        if mode == Mode::Ppm && self.seed.is_some() && self.samples == 0 {
            return Err("samples must be at least 1".into());
        }
        Ok(())
    }
}
