//! Exact pure-state evolution of the walk `U = S (I ⊗ H)` and Born-rule
//! position distributions.

use num_complex::Complex64;

use crate::coin::CoinOperator;
use crate::distribution::PositionDistribution;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Chirality {
    Left,
    Right,
}

/// Chirality amplitudes on the window `[-n, n]`.
///
/// Index `i` of either array holds site `x = i - n`. The window grows by one
/// site per side every step, so after `t` steps from a localized start it is
/// exactly `[-t, t]`.
#[derive(Clone, Debug, PartialEq)]
pub struct WalkerState {
    half_width: usize,
    left: Vec<Complex64>,
    right: Vec<Complex64>,
    steps: u64,
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

impl WalkerState {
    /// Walker at the origin with the given chirality.
    pub fn initial(chirality: Chirality) -> Self {
        let (left, right) = match chirality {
            Chirality::Left => (vec![ONE], vec![ZERO]),
            Chirality::Right => (vec![ZERO], vec![ONE]),
        };
        WalkerState {
            half_width: 0,
            left,
            right,
            steps: 0,
        }
    }

    pub fn half_width(&self) -> usize {
        self.half_width
    }

    pub fn step_count(&self) -> u64 {
        self.steps
    }

    pub fn amp_left(&self, x: i64) -> Complex64 {
        self.index(x).map_or(ZERO, |i| self.left[i])
    }

    pub fn amp_right(&self, x: i64) -> Complex64 {
        self.index(x).map_or(ZERO, |i| self.right[i])
    }

    fn index(&self, x: i64) -> Option<usize> {
        let i = x + self.half_width as i64;
        (0..self.left.len() as i64)
            .contains(&i)
            .then_some(i as usize)
    }

    /// `Σ_x |ψ_L(x)|² + |ψ_R(x)|²`.
    pub fn norm_sqr(&self) -> f64 {
        self.left
            .iter()
            .zip(&self.right)
            .map(|(l, r)| l.norm_sqr() + r.norm_sqr())
            .sum()
    }

    /// One application of `S (I ⊗ H)`.
    pub fn step(&self, coin: &CoinOperator) -> WalkerState {
        let mut next = self.clone();
        let mut scratch = (Vec::new(), Vec::new());
        next.advance(coin, &mut scratch);
        next
    }

    /// `n` applications of [`WalkerState::step`].
    pub fn evolve(&self, coin: &CoinOperator, n: u64) -> WalkerState {
        let mut state = self.clone();
        let mut scratch = (Vec::new(), Vec::new());
        for _ in 0..n {
            state.advance(coin, &mut scratch);
        }
        state
    }

    // Site x of the old window sits at index i; x - 1 in the new window is
    // again index i and x + 1 is index i + 2.
    fn advance(&mut self, coin: &CoinOperator, scratch: &mut (Vec<Complex64>, Vec<Complex64>)) {
        let [a, b, c, d] = coin.entries();
        let width = self.left.len() + 2;
        let (new_left, new_right) = scratch;
        new_left.clear();
        new_left.resize(width, ZERO);
        new_right.clear();
        new_right.resize(width, ZERO);
        for (i, (&l, &r)) in self.left.iter().zip(&self.right).enumerate() {
            if l == ZERO && r == ZERO {
                continue;
            }
            new_left[i] = a * l + b * r;
            new_right[i + 2] = c * l + d * r;
        }
        std::mem::swap(&mut self.left, new_left);
        std::mem::swap(&mut self.right, new_right);
        self.half_width += 1;
        self.steps += 1;
    }

    /// Born-rule position distribution, tracing out the coin.
    pub fn measure_position(&self) -> PositionDistribution {
        let mass = self
            .left
            .iter()
            .zip(&self.right)
            .map(|(l, r)| l.norm_sqr() + r.norm_sqr())
            .collect();
        PositionDistribution::from_raw(-(self.half_width as i64), mass)
    }
}

pub fn initial_pure(chirality: Chirality) -> WalkerState {
    WalkerState::initial(chirality)
}

pub fn step(state: &WalkerState, coin: &CoinOperator) -> WalkerState {
    state.step(coin)
}

pub fn evolve(state: &WalkerState, coin: &CoinOperator, n: u64) -> WalkerState {
    state.evolve(coin, n)
}

pub fn measure_position(state: &WalkerState) -> PositionDistribution {
    state.measure_position()
}

/// Distribution after `n` steps from the origin with coin state `(|L⟩⟨L| + |R⟩⟨R|)/2`.
///
/// Computed as the equal-weight average of the two pure-start runs, which
/// run in parallel.
pub fn mixed_coin_distribution(coin: &CoinOperator, n: u64) -> PositionDistribution {
    let run = |ch| WalkerState::initial(ch).evolve(coin, n).measure_position();
    let (pl, pr) = rayon::join(|| run(Chirality::Left), || run(Chirality::Right));
    debug_assert_eq!(pl.start(), pr.start());
    let mass = pl
        .masses()
        .iter()
        .zip(pr.masses())
        .map(|(l, r)| 0.5 * (l + r))
        .collect();
    PositionDistribution::from_raw(pl.start(), mass)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-15
    }

    #[test]
    fn initial_states() {
        let l = initial_pure(Chirality::Left);
        assert_eq!(l.amp_left(0), ONE);
        assert_eq!(l.amp_right(0), ZERO);
        assert_eq!(l.norm_sqr(), 1.0);
        let r = initial_pure(Chirality::Right);
        assert_eq!(r.amp_right(0), ONE);
        assert_eq!(r.amp_left(0), ZERO);
        assert_eq!(r.step_count(), 0);
        assert_eq!(measure_position(&l).prob(0), 1.0);
    }

    #[test]
    fn one_hadamard_step() {
        let s = step(&initial_pure(Chirality::Left), &CoinOperator::hadamard());
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        assert!(close(s.amp_left(-1), h));
        assert!(close(s.amp_right(1), h));
        assert_eq!(s.amp_left(1), ZERO);
        assert_eq!(s.amp_right(-1), ZERO);
        assert_eq!(s.half_width(), 1);
        let p = s.measure_position();
        assert!((p.prob(-1) - 0.5).abs() < 1e-15);
        assert!((p.prob(1) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn two_hadamard_steps() {
        let p =
            evolve(&initial_pure(Chirality::Left), &CoinOperator::hadamard(), 2).measure_position();
        assert!((p.prob(-2) - 0.25).abs() < 1e-15);
        assert!((p.prob(0) - 0.5).abs() < 1e-15);
        assert!((p.prob(2) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn evolve_zero_and_one() {
        let coin = CoinOperator::hadamard();
        let s = initial_pure(Chirality::Right).evolve(&coin, 5);
        assert_eq!(s.evolve(&coin, 0), s);
        assert_eq!(s.evolve(&coin, 1), s.step(&coin));
    }

    #[test]
    fn mixed_small_n() {
        let coin = CoinOperator::hadamard();
        let p1 = mixed_coin_distribution(&coin, 1);
        assert!((p1.prob(-1) - 0.5).abs() < 1e-15 && (p1.prob(1) - 0.5).abs() < 1e-15);
        let p2 = mixed_coin_distribution(&coin, 2);
        assert!((p2.prob(-2) - 0.25).abs() < 1e-15);
        assert!((p2.prob(0) - 0.5).abs() < 1e-15);
        assert!((p2.prob(2) - 0.25).abs() < 1e-15);
        assert!((p2.moment(2) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn support_and_parity() {
        let coin = CoinOperator::dirac(0.4).unwrap();
        let s = initial_pure(Chirality::Left).evolve(&coin, 9);
        for x in -12i64..=12 {
            if x.abs() > 9 || (x - 9).rem_euclid(2) != 0 {
                assert_eq!(s.amp_left(x), ZERO, "x = {x}");
                assert_eq!(s.amp_right(x), ZERO, "x = {x}");
            }
        }
    }
}
