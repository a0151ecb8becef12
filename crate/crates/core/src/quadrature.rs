use std::f64::consts::PI;
use std::ops::{AddAssign, Div};

/// Mean of a `2π`-periodic function over one period, by the `n`-point
/// trapezoidal rule on `k_j = 2πj/n`.
///
/// Exact for trigonometric polynomials of degree below `n` and geometrically
/// convergent for functions analytic in a strip around the real axis.
pub fn periodic_mean<T, F>(n: usize, f: F) -> T
where
    T: Default + AddAssign + Div<f64, Output = T>,
    F: Fn(f64) -> T,
{
    assert!(n > 0, "periodic_mean needs at least one node");
    let h = 2.0 * PI / n as f64;
    let mut acc = T::default();
    for j in 0..n {
        acc += f(h * j as f64);
    }
    acc / n as f64
}
