use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Failures raised anywhere in the pipeline. Each message names the module
/// that produced it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("numeric-kernel: precision of {0} mantissa bits is below the 53-bit floor")]
    InvalidPrecision(u32),

    #[error("numeric-kernel: singular matrix (pivot {pivot:.3e} relative to largest entry at column {column})")]
    SingularMatrix { column: usize, pivot: f64 },

    #[error("numeric-kernel: dimension mismatch ({0})")]
    Dimension(String),

    #[error("numeric-kernel: root not bracketed, f(lo) and f(hi) share a sign")]
    NoBracket,

    #[error("potential-model: syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("potential-model: unknown symbol `{name}` at byte {offset} (only `r` is allowed)")]
    UnknownSymbol { name: String, offset: usize },

    #[error("potential-model: singular point (denominator vanishes at r = {at})")]
    SingularPoint { at: String },

    #[error("leading-order: invalid quantum state: {0}")]
    InvalidState(String),

    #[error("leading-order: no binding, q^3 V'(q) never crosses the shifted angular momentum in (0, 1e9)")]
    NoBinding,

    #[error("leading-order: complex oscillator frequency, w^2 = {w2} <= 0 at q0 = {q0}")]
    ComplexFrequency { q0: String, w2: String },

    #[error("pslet-series: jet holds {have} derivatives, {need} required")]
    InsufficientJet { need: usize, have: usize },

    #[error("pslet-series: moment index {index} exceeds the configured bound {bound}")]
    OrderOverflow { index: usize, bound: usize },

    #[error("pslet-series: moment <x^{index}> at order {order} requested before it was computed")]
    UncomputedMoment { index: usize, order: usize },

    #[error("pslet-series: series order must be at least {min}, got {got}")]
    OrderTooLow { min: usize, got: usize },

    #[error("resummation: degenerate Pade [{n},{m}]")]
    DegeneratePade { n: usize, m: usize },

    #[error("resummation: need {need} coefficients for this approximant, have {have}")]
    TooFewCoefficients { need: usize, have: usize },

    #[error("oracle-eigensolver: eigenvector has {found} nodes, expected {expected} (grid too small?)")]
    NodeMismatch { expected: usize, found: usize },

    #[error("oracle-eigensolver: only {found} eigenvalues below V(r_max) = {edge:.6e}, need {need}")]
    NoBoundState { need: usize, found: usize, edge: f64 },

    #[error("oracle-eigensolver: invalid grid: {0}")]
    InvalidGrid(String),
}

impl Error {
    /// True for malformed user input (as opposed to numerical failure).
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidPrecision(_)
                | Error::Syntax { .. }
                | Error::UnknownSymbol { .. }
                | Error::InvalidState(_)
                | Error::InvalidGrid(_)
        )
    }
}
