use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid mode {mode}: {reason}")]
    InvalidMode { mode: String, reason: &'static str },

    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    #[error("geometry has no exact rational lengths; use floating-point evaluation")]
    InexactGeometry,

    #[error("square root of {0} is not a surd monomial")]
    NotASurd(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("harmonic {0} exceeds the supported bound of {max}", max = crate::trig_algebra::MAX_HARMONIC)]
    HarmonicOverflow(u32),

    #[error("quadrature needs at least {required} points per axis, got {given}")]
    InsufficientQuadrature { required: usize, given: usize },

    #[error("external state has {0} legs; the quartic vertex needs exactly 4")]
    LegCount(usize),

    #[error("invalid external state: {0}")]
    InvalidState(String),

    #[error("incompatible modes: {0}")]
    IncompatibleModes(String),

    #[error("momentum is not conserved (mismatch {0:.3e})")]
    MomentumNotConserved(f64),

    #[error("process is off resonance (2ω mismatch {0:.3e}); solve for the resonant aspect ratio first")]
    OffResonance(f64),

    #[error("unknown unit `{0}`")]
    UnknownUnit(String),

    #[error("incompatible units: {0} -> {1}")]
    IncompatibleUnits(String, String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("parse error: {0}")]
    Parse(String),
}
