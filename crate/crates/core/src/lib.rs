//! Discrete-time quantum walks on the integer lattice with periodic position
//! measurement.
//!
//! The walker evolves coherently for `d` steps under `U = S (I ⊗ H)`, its
//! position is measured, the coin is reset to `(|L⟩⟨L| + |R⟩⟨R|)/2`, and the
//! cycle repeats `M` times. This crate computes the exact law of the final
//! position, the limit laws it approaches when `d ~ t^β`, and the
//! momentum-space quantities (eigenphases, group velocity, block
//! characteristic function) behind those limits.
//!
//! ```
//! use qwalk::{limitlaws, ppm, CoinOperator, PpmSchedule};
//!
//! let coin = CoinOperator::hadamard();
//! let s = PpmSchedule::from_target(10_000, 0.5)?;
//! assert_eq!((s.d, s.m), (100, 100));
//! let p = ppm::ppm_distribution(&coin, &s)?;
//! let law = limitlaws::limit_law_for(0.5, coin.a_mag())?;
//! let theta = limitlaws::ScalingExponent::new(0.5)?.theta;
//! let ks = limitlaws::scaled_empirical_cdf(&p, s.t, theta).ks_distance(&law);
//! assert!(ks < 0.05);
//! # Ok::<(), qwalk::Error>(())
//! ```

pub mod coin;
pub mod distribution;
pub mod error;
pub mod limitlaws;
pub mod ppm;
pub mod quadrature;
pub mod spectral;
pub mod walk;

pub use coin::{coin_from_params, make_coin, CoinOperator, CoinParams, Mat2};
pub use distribution::PositionDistribution;
pub use error::{Error, Result};
pub use limitlaws::{LimitLaw, ScalingExponent, StepCdf};
pub use ppm::{PpmSampler, PpmSchedule};
pub use spectral::{EigenphasePair, FourierCoin};
pub use walk::{mixed_coin_distribution, Chirality, WalkerState};
