//! 2×2 unitary coin operators.
//!
//! A coin acts on the chirality basis `|L⟩ = (1, 0)ᵀ`, `|R⟩ = (0, 1)ᵀ` as
//!
//! ```text
//! H = | a  b |
//!     | c  d |
//! ```
//!
//! Every coin with `0 < |a| < 1` can also be written in the four-parameter
//! form `H(r, φ, ψ, δ)` where `r = |a|` and `e^{iδ} = det H`.

use std::f64::consts::{FRAC_1_SQRT_2, PI, TAU};
use std::ops::Mul;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{check_range, Error, Result};

/// Absolute tolerance applied to each unitarity condition.
pub const UNITARITY_TOL: f64 = 1e-12;

/// A dense 2×2 complex matrix, row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat2(pub [[Complex64; 2]; 2]);

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2([
        [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
    ]);

    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        Mat2([[a, b], [c, d]])
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn det(&self) -> Complex64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let m = &self.0;
        Mat2([
            [m[0][0].conj(), m[1][0].conj()],
            [m[0][1].conj(), m[1][1].conj()],
        ])
    }

    /// `self^n` by repeated squaring.
    pub fn pow(&self, mut n: u64) -> Self {
        let mut base = *self;
        let mut acc = Mat2::IDENTITY;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base;
            }
            n >>= 1;
            if n > 0 {
                base = base * base;
            }
        }
        acc
    }

    /// Largest entrywise modulus of `M†M − I`.
    pub fn unitarity_defect(&self) -> f64 {
        let p = self.adjoint() * *self;
        let mut worst = 0.0_f64;
        for i in 0..2 {
            for j in 0..2 {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((p.0[i][j] - target).norm());
            }
        }
        worst
    }
}

impl Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: Mat2) -> Mat2 {
        let (l, r) = (&self.0, &rhs.0);
        let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = l[i][0] * r[0][j] + l[i][1] * r[1][j];
            }
        }
        Mat2(out)
    }
}

/// A validated 2×2 unitary coin.
///
/// Construction only checks unitarity. Whether all four entries are non-zero
/// is recorded in [`CoinOperator::is_trivial`]; the limit laws and the
/// eigenphase machinery refuse trivial coins.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoinOperator {
    matrix: Mat2,
    trivial: bool,
}

impl CoinOperator {
    /// Validates unitarity of the entries. Trivial coins are accepted and flagged.
    pub fn from_entries(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self> {
        if ![a, b, c, d]
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
        {
            return Err(Error::NonFinite);
        }
        let column = (a.norm_sqr() + c.norm_sqr() - 1.0).abs();
        if column > UNITARITY_TOL {
            return Err(Error::NonUnitary {
                condition: "|a|^2 + |c|^2 = 1",
                defect: column,
            });
        }
        let orth = (a * b.conj() + c * d.conj()).norm();
        if orth > UNITARITY_TOL {
            return Err(Error::NonUnitary {
                condition: "a conj(b) + c conj(d) = 0",
                defect: orth,
            });
        }
        let det = ((a * d - b * c).norm() - 1.0).abs();
        if det > UNITARITY_TOL {
            return Err(Error::NonUnitary {
                condition: "|ad - bc| = 1",
                defect: det,
            });
        }
        let trivial = [a, b, c, d].iter().any(|z| z.norm_sqr() == 0.0);
        Ok(CoinOperator {
            matrix: Mat2::new(a, b, c, d),
            trivial,
        })
    }

    pub fn hadamard() -> Self {
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        CoinOperator {
            matrix: Mat2::new(h, h, h, -h),
            trivial: false,
        }
    }

    /// The coin `[[cos ε, −i sin ε], [−i sin ε, cos ε]]`, for `0 < ε < π/2`.
    pub fn dirac(epsilon: f64) -> Result<Self> {
        check_range(
            "epsilon",
            epsilon,
            "(0, pi/2)",
            epsilon > 0.0 && epsilon < PI / 2.0,
        )?;
        let (s, c) = epsilon.sin_cos();
        let diag = Complex64::new(c, 0.0);
        let off = Complex64::new(0.0, -s);
        CoinOperator::from_entries(diag, off, off, diag)
    }

    pub fn a(&self) -> Complex64 {
        self.matrix.0[0][0]
    }

    pub fn b(&self) -> Complex64 {
        self.matrix.0[0][1]
    }

    pub fn c(&self) -> Complex64 {
        self.matrix.0[1][0]
    }

    pub fn d(&self) -> Complex64 {
        self.matrix.0[1][1]
    }

    pub fn entries(&self) -> [Complex64; 4] {
        [self.a(), self.b(), self.c(), self.d()]
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.matrix
    }

    /// `true` when at least one of a, b, c, d vanishes.
    pub fn is_trivial(&self) -> bool {
        self.trivial
    }

    pub fn require_nontrivial(self) -> Result<Self> {
        if self.trivial {
            Err(Error::TrivialCoin)
        } else {
            Ok(self)
        }
    }

    /// `|a|`, the parameter every limit law depends on.
    pub fn a_mag(&self) -> f64 {
        self.a().norm()
    }

    /// Recovers `(r, φ, ψ, δ)`. φ and ψ lie in `(−π, π]`; δ is `arg det H`
    /// taken in `[0, 2π)`.
    pub fn params(&self) -> Result<CoinParams> {
        let p = CoinParams {
            r: self.a_mag(),
            phi: self.a().arg(),
            psi: self.b().arg(),
            delta: self.matrix.det().arg().rem_euclid(TAU),
        };
        p.validate()?;
        Ok(p)
    }
}

/// Validates entries and rejects trivial coins.
pub fn make_coin(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<CoinOperator> {
    CoinOperator::from_entries(a, b, c, d)?.require_nontrivial()
}

/// Four-parameter form of a non-trivial coin.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoinParams {
    pub r: f64,
    pub phi: f64,
    pub psi: f64,
    pub delta: f64,
}

impl CoinParams {
    pub fn validate(&self) -> Result<()> {
        check_range("r", self.r, "(0, 1)", self.r > 0.0 && self.r < 1.0)?;
        for (name, v) in [("phi", self.phi), ("psi", self.psi), ("delta", self.delta)] {
            check_range(name, v, "finite reals", true)?;
        }
        Ok(())
    }

    /// `δ' = φ − δ/2`, the phase offset in the eigenvalue quadratic.
    pub fn delta_prime(&self) -> f64 {
        self.phi - self.delta / 2.0
    }

    pub fn to_coin(&self) -> Result<CoinOperator> {
        self.validate()?;
        let s = (1.0 - self.r * self.r).sqrt();
        let a = Complex64::from_polar(self.r, self.phi);
        let b = Complex64::from_polar(s, self.psi);
        let c = -Complex64::from_polar(s, -(self.psi - self.delta));
        let d = Complex64::from_polar(self.r, -(self.phi - self.delta));
        CoinOperator::from_entries(a, b, c, d)
    }
}

pub fn coin_from_params(p: CoinParams) -> Result<CoinOperator> {
    p.to_coin()
}
