//! Quasimodular form rings of level SL2(Z) and Gamma(2), exact q-expansions,
//! the extension ring with 1/pi and i/z adjoined, extremal quasimodular forms,
//! and a certificate engine for the positivity and monotonicity arguments
//! behind the 8- and 24-dimensional sphere packing inequalities.
//!
//! Layering, bottom-up:
//! - [`poly`]: sparse polynomials in three variables with exact rational coefficients
//! - [`qseries`]: truncated power series in q^(1/2) and their numeric evaluation
//! - [`qm1`], [`qm2`]: the rings Q[E2, E4, E6] and Q[H2, H4, E2]
//! - [`rqm`]: the extension ring with P = 1/pi and T = i/z
//! - [`extremal`]: normalized extremal forms of depth 1 and 2
//! - [`certify`]: identity, positivity, vanishing order, monotonicity and numeric certificates
//! - [`expr`]: the expression mini-language used by the command line tool

pub mod certify;
pub mod error;
pub mod expr;
pub mod extremal;
pub mod numeric;
pub mod poly;
pub mod qm1;
pub mod qm2;
pub mod qseries;
pub mod rqm;

pub use error::{Error, Result};
pub use rug::{Integer, Rational};

/// Default working precision (series index, i.e. exponents below q^120).
pub const DEFAULT_PREC: i64 = 240;

/// Environment variable that overrides [`DEFAULT_PREC`] in the command line tool.
pub const PREC_ENV: &str = "QMCERT_PREC";

/// Shorthand for the exact rational `num/den`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::from((num, den))
}
