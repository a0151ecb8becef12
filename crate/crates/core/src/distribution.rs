use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Tolerance on total mass for a distribution to count as normalized.
pub const MASS_TOL: f64 = 1e-10;

/// A finitely supported probability mass function on the integers.
///
/// Stored densely from `start` upward; sites of the wrong parity simply hold 0.
#[derive(Clone, Debug, PartialEq)]
pub struct PositionDistribution {
    start: i64,
    mass: Vec<f64>,
}

impl PositionDistribution {
    /// Builds a distribution from masses on `start, start + 1, ...`.
    ///
    /// Rejects negative or non-finite masses and totals further than
    /// [`MASS_TOL`] from 1.
    pub fn new(start: i64, mass: Vec<f64>) -> Result<Self> {
        if mass.is_empty() {
            return Err(Error::InvalidDistribution("empty support".into()));
        }
        if let Some((i, m)) = mass
            .iter()
            .enumerate()
            .find(|(_, m)| !m.is_finite() || **m < 0.0)
        {
            return Err(Error::InvalidDistribution(format!(
                "mass {m} at x = {}",
                start + i as i64
            )));
        }
        let total: f64 = mass.iter().sum();
        if (total - 1.0).abs() > MASS_TOL {
            return Err(Error::InvalidDistribution(format!("total mass {total}")));
        }
        Ok(PositionDistribution { start, mass })
    }

    pub(crate) fn from_raw(start: i64, mass: Vec<f64>) -> Self {
        debug_assert!(!mass.is_empty());
        PositionDistribution { start, mass }
    }

    /// Point mass at `x`.
    pub fn delta(x: i64) -> Self {
        PositionDistribution {
            start: x,
            mass: vec![1.0],
        }
    }

    /// Builds a distribution from `(x, p)` pairs; repeated sites accumulate.
    pub fn from_pairs(pairs: &[(i64, f64)]) -> Result<Self> {
        let lo = pairs.iter().map(|p| p.0).min();
        let hi = pairs.iter().map(|p| p.0).max();
        let (Some(lo), Some(hi)) = (lo, hi) else {
            return Err(Error::InvalidDistribution("empty support".into()));
        };
        let mut mass = vec![0.0; (hi - lo + 1) as usize];
        for &(x, p) in pairs {
            mass[(x - lo) as usize] += p;
        }
        Self::new(lo, mass)
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    pub fn end(&self) -> i64 {
        self.start + self.mass.len() as i64 - 1
    }

    pub fn masses(&self) -> &[f64] {
        &self.mass
    }

    /// Probability of `x`; zero outside the stored window.
    pub fn prob(&self, x: i64) -> f64 {
        if x < self.start {
            return 0.0;
        }
        self.mass
            .get((x - self.start) as usize)
            .copied()
            .unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.mass
            .iter()
            .enumerate()
            .map(move |(i, &p)| (self.start + i as i64, p))
    }

    pub fn total_mass(&self) -> f64 {
        self.mass.iter().sum()
    }

    /// `Σ x^order p(x)`.
    pub fn moment(&self, order: u32) -> f64 {
        self.iter()
            .filter(|&(_, p)| p != 0.0)
            .map(|(x, p)| (x as f64).powi(order as i32) * p)
            .sum()
    }

    pub fn mean(&self) -> f64 {
        self.moment(1)
    }

    pub fn variance(&self) -> f64 {
        let m = self.mean();
        self.iter().map(|(x, p)| (x as f64 - m).powi(2) * p).sum()
    }

    /// `½ Σ |p(x) − q(x)|` over the union of supports.
    pub fn total_variation(&self, other: &PositionDistribution) -> f64 {
        let lo = self.start.min(other.start);
        let hi = self.end().max(other.end());
        0.5 * (lo..=hi)
            .map(|x| (self.prob(x) - other.prob(x)).abs())
            .sum::<f64>()
    }

    /// CSV with header `x,probability` and 17 significant digits. Sites with
    /// zero mass (the wrong-parity half of a walk) are omitted.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(32 * self.mass.len() + 16);
        out.push_str("x,probability\n");
        for (x, p) in self.iter().filter(|&(_, p)| p != 0.0) {
            writeln!(out, "{x},{p:.16e}").expect("writing to a String cannot fail");
        }
        out
    }

    /// Parses the format produced by [`PositionDistribution::to_csv`].
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        match lines.next().map(str::trim) {
            Some("x,probability") => {}
            other => {
                return Err(Error::InvalidDistribution(format!(
                    "bad CSV header {other:?}"
                )));
            }
        }
        let mut pairs = Vec::new();
        for line in lines.filter(|l| !l.trim().is_empty()) {
            let bad = || Error::InvalidDistribution(format!("bad CSV row {line:?}"));
            let (x, p) = line.split_once(',').ok_or_else(bad)?;
            let x: i64 = x.trim().parse().map_err(|_| bad())?;
            let p: f64 = p.trim().parse().map_err(|_| bad())?;
            pairs.push((x, p));
        }
        Self::from_pairs(&pairs)
    }
}
