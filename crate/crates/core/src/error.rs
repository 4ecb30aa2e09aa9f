use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unsupported Eisenstein weight {0} (expected 2, 4 or 6)")]
    EisensteinWeight(i64),
    #[error("unsupported thetanull index {0} (expected 2, 3 or 4)")]
    ThetaIndex(i64),
    #[error("negative precision {0}")]
    NegativePrecision(i64),
    #[error("negative power needs an invertible leading unit (order 0, nonzero constant term)")]
    NotInvertible,
    #[error("weight of the zero polynomial is undefined")]
    ZeroPolynomial,
    #[error("element is not weight-homogeneous")]
    Inhomogeneous,
    #[error("slash action on a depth {0} element leaves the ring; use the extension ring")]
    PositiveDepth(u32),
    #[error("odd weight {0} has no rational flip sign")]
    OddWeight(i64),
    #[error("series truncated at index {prec} cannot reach tolerance {tol:e} at t = {t} (tail estimate {tail:e})")]
    Truncation { prec: i64, t: f64, tol: f64, tail: f64 },
    #[error("evaluation point must be positive, got {0}")]
    NonPositivePoint(f64),
    #[error("extremal form of weight {weight} and depth {depth} is not available: {reason}")]
    Extremal { weight: i64, depth: i64, reason: &'static str },
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("unknown identifier `{name}` at byte {offset}")]
    UnknownIdentifier { name: String, offset: usize },
    #[error("{0}")]
    Elaboration(String),
    #[error("invalid series text: {0}")]
    SeriesText(String),
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
