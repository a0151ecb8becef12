use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("coin entries must be finite")]
    NonFinite,

    /// One of the unitarity conditions failed; `defect` is the offending residual.
    #[error("coin is not unitary: {condition} off by {defect:e}")]
    NonUnitary {
        condition: &'static str,
        defect: f64,
    },

    #[error("coin is trivial (abcd = 0); the walk does not spread")]
    TrivialCoin,

    #[error("{name} = {value} is outside {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("{0} must be at least 1")]
    Zero(&'static str),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),

    #[error("quadrature needs at least {min} points, got {got}")]
    TooFewPoints { min: usize, got: usize },
}

pub(crate) fn check_range(
    name: &'static str,
    value: f64,
    range: &'static str,
    ok: bool,
) -> Result<()> {
    if ok && value.is_finite() {
        Ok(())
    } else {
        Err(Error::OutOfRange { name, value, range })
    }
}
