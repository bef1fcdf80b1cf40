use thiserror::Error;

/// Errors produced by the signal, mixing, embedding, persistence and
/// estimation stages.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("instantaneous frequency {freq_hz} Hz outside the open band (0, {nyquist_hz}) Hz")]
    NyquistViolation { freq_hz: f64, nyquist_hz: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    #[error("signal too short: {len} samples, need at least {min}")]
    SignalTooShort { len: usize, min: usize },

    #[error("trim fraction {0} outside [0, 0.5)")]
    InvalidFraction(f64),

    #[error("operation left no usable samples")]
    ResultEmpty,

    #[error("signal has zero power, cannot scale noise against it")]
    ZeroPowerSignal,

    #[error("invalid magnitude range [{lo}, {hi}]: need 0 < lo <= hi")]
    InvalidRange { lo: f64, hi: f64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("decimation stride must be >= 1")]
    InvalidStride,

    #[error("requested {requested} landmarks from a cloud of {available} points")]
    TooManyLandmarks { requested: usize, available: usize },

    #[error("filtration is not monotone: {0}")]
    NonmonotoneFiltration(String),

    #[error("need at least {min} snapshots, got {got}")]
    TooFewSnapshots { got: usize, min: usize },

    #[error("eigenvalue spectrum is degenerate (no positive eigenvalues)")]
    DegenerateSpectrum,

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
