//! High-precision reals for evaluating forms on the imaginary axis.

use rug::float::Constant;
use rug::Float;

use crate::Rational;

pub type Real = Float;

/// Working precision in bits (about 96 decimal digits).
pub const REAL_PREC: u32 = 320;

pub fn real(x: f64) -> Real {
    Float::with_val(REAL_PREC, x)
}

pub fn from_rational(r: &Rational) -> Real {
    Float::with_val(REAL_PREC, r)
}

pub fn pi() -> Real {
    Float::with_val(REAL_PREC, Constant::Pi)
}

/// Gamma(1/4), computed by MPFR.
pub fn gamma_quarter() -> Real {
    Float::with_val(REAL_PREC, 0.25).gamma()
}

/// `n` log-spaced points covering `[lo, hi]` inclusive.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<Real> {
    assert!(lo > 0.0 && hi > lo && n >= 2);
    let (a, b) = (real(lo).ln(), real(hi).ln());
    (0..n)
        .map(|i| {
            let frac = Float::with_val(REAL_PREC, i) / (n as u32 - 1);
            let x = Float::with_val(REAL_PREC, &a + Float::with_val(REAL_PREC, &b - &a) * frac);
            x.exp()
        })
        .collect()
}

/// `n` log-spaced points strictly inside `(lo, hi)`.
pub fn open_log_grid(lo: &Real, hi: &Real, n: usize) -> Vec<Real> {
    let (a, b) = (Float::with_val(REAL_PREC, lo.ln_ref()), Float::with_val(REAL_PREC, hi.ln_ref()));
    (1..=n)
        .map(|i| {
            let frac = Float::with_val(REAL_PREC, i) / (n as u32 + 1);
            let x = Float::with_val(REAL_PREC, &a + Float::with_val(REAL_PREC, &b - &a) * frac);
            x.exp()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_endpoints() {
        let g = log_grid(0.05, 10.0, 128);
        assert_eq!(g.len(), 128);
        assert!((g[0].to_f64() - 0.05).abs() < 1e-15);
        assert!((g[127].to_f64() - 10.0).abs() < 1e-13);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn open_grid_excludes_endpoints() {
        let g = open_log_grid(&real(0.01), &real(1.0), 10);
        assert!(g[0] > 0.01 && g[9] < 1.0);
    }

    #[test]
    fn gamma_quarter_value() {
        assert!((gamma_quarter().to_f64() - 3.625_609_908_221_908).abs() < 1e-14);
    }
}
