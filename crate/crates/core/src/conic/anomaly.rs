//! Kepler's equation and the safeguarded Newton iteration behind it.

use std::f64::consts::PI;

use crate::error::{KeplerError, Result};

pub const MAX_ITERATIONS: usize = 80;
pub const TOLERANCE: f64 = 1e-13;

/// Newton iteration on a bracketed monotone function, falling back to
/// bisection whenever the Newton step leaves the bracket.
///
/// `g` returns `(value, derivative)`; the bracket must satisfy
/// `g(lo) <= 0 <= g(hi)`.
pub fn newton_bisect<G>(solver: &'static str, g: G, mut lo: f64, mut hi: f64, guess: f64) -> Result<f64>
where
    G: Fn(f64) -> (f64, f64),
{
    let mut x = guess.clamp(lo, hi);
    for _ in 0..MAX_ITERATIONS {
        let (value, slope) = g(x);
        if value == 0.0 {
            return Ok(x);
        }
        if value < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let newton = x - value / slope;
        let next = if slope != 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if (next - x).abs() <= TOLERANCE * x.abs().max(1.0) || hi - lo <= TOLERANCE * x.abs().max(1.0) {
            return Ok(next);
        }
        x = next;
    }
    Err(KeplerError::NonConvergence {
        solver,
        iterations: MAX_ITERATIONS,
    })
}

/// Solves `M = E − e sin E` for the eccentric anomaly, `0 <= e < 1`.
pub fn eccentric_from_mean(mean: f64, e: f64) -> Result<f64> {
    // reduce to [−π, π) and restore the revolution count afterwards
    let turns = ((mean + PI) / (2.0 * PI)).floor();
    let m = mean - 2.0 * PI * turns;
    let guess = if e < 0.8 { m } else { PI.copysign(m) };
    let ecc = newton_bisect(
        "elliptic Kepler equation",
        |x| (x - e * x.sin() - m, 1.0 - e * x.cos()),
        m - e,
        m + e,
        guess,
    )?;
    Ok(ecc + 2.0 * PI * turns)
}

/// Solves `M = e sinh H − H` for the hyperbolic anomaly, `e > 1`.
pub fn hyperbolic_from_mean(mean: f64, e: f64) -> Result<f64> {
    let bound = (mean.abs() / (e - 1.0)).asinh();
    let (lo, hi) = if mean >= 0.0 { (0.0, bound) } else { (-bound, 0.0) };
    let guess = (mean / e).asinh();
    newton_bisect(
        "hyperbolic Kepler equation",
        |h| (e * h.sinh() - h - mean, e * h.cosh() - 1.0),
        lo,
        hi,
        guess,
    )
}

pub fn mean_from_eccentric(ecc: f64, e: f64) -> f64 {
    ecc - e * ecc.sin()
}

pub fn mean_from_hyperbolic(h: f64, e: f64) -> f64 {
    e * h.sinh() - h
}

/// Eccentric anomaly of the true anomaly `f ∈ [−π, π]`.
pub fn eccentric_from_true(f: f64, e: f64) -> f64 {
    let half = 0.5 * f;
    2.0 * ((1.0 - e).sqrt() * half.sin()).atan2((1.0 + e).sqrt() * half.cos())
}

pub fn true_from_eccentric(ecc: f64, e: f64) -> f64 {
    let half = 0.5 * ecc;
    2.0 * ((1.0 + e).sqrt() * half.sin()).atan2((1.0 - e).sqrt() * half.cos())
}

pub fn hyperbolic_from_true(f: f64, e: f64) -> f64 {
    2.0 * (((e - 1.0) / (e + 1.0)).sqrt() * (0.5 * f).tan()).atanh()
}

pub fn true_from_hyperbolic(h: f64, e: f64) -> f64 {
    2.0 * (((e + 1.0) / (e - 1.0)).sqrt() * (0.5 * h).tanh()).atan()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn known_eccentric_anomaly() {
        // E − 0.5 sin E = 1 has root 1.4987011335178482 (mpmath findroot)
        let ecc = eccentric_from_mean(1.0, 0.5).unwrap();
        assert!((ecc - 1.498_701_133_517_848_2).abs() < 1e-13);
        assert_eq!(eccentric_from_mean(0.0, 0.7).unwrap(), 0.0);
    }

    #[test]
    fn anomaly_maps_invert() {
        for &e in &[0.0, 0.3, 0.9] {
            for &f in &[-3.0, -1.0, 0.0, 0.5, 2.5, PI] {
                let back = true_from_eccentric(eccentric_from_true(f, e), e);
                assert!((back - f).abs() < 1e-12, "e={e} f={f} back={back}");
            }
        }
        for &f in &[-1.5, 0.0, 0.7, 1.9] {
            let back = true_from_hyperbolic(hyperbolic_from_true(f, 2.0), 2.0);
            assert!((back - f).abs() < 1e-12);
        }
    }

    proptest! {
        #[test]
        fn elliptic_residual(m in -20.0..20.0f64, e in 0.0..0.99f64) {
            let ecc = eccentric_from_mean(m, e).unwrap();
            prop_assert!((mean_from_eccentric(ecc, e) - m).abs() < 1e-12);
        }

        #[test]
        fn hyperbolic_residual(m in -50.0..50.0f64, e in 1.001..5.0f64) {
            let h = hyperbolic_from_mean(m, e).unwrap();
            let back = mean_from_hyperbolic(h, e);
            prop_assert!((back - m).abs() < 1e-11 * m.abs().max(1.0));
        }
    }
}
