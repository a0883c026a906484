use thiserror::Error;

use crate::graph6::Graph6Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("graph is disconnected: no path between vertices {0} and {1}")]
    Disconnected(usize, usize),

    #[error("power iteration stopped after {iterations} iterations with residual {residual:e} (tolerance {tolerance:e})")]
    NoConvergence {
        iterations: usize,
        residual: f64,
        tolerance: f64,
    },

    #[error("largest eigenvalue {0} is below 2")]
    LambdaBelowTwo(f64),

    #[error("zero vector has no Rayleigh quotient")]
    ZeroVector,

    #[error("vector has {found} entries, graph has {expected} vertices")]
    LengthMismatch { expected: usize, found: usize },

    #[error("lambda1 = {lambda1} of kite (r={r}, s={s}) lies outside ({low}, {high})")]
    OutsideKiteBounds {
        r: usize,
        s: usize,
        lambda1: f64,
        low: f64,
        high: f64,
    },

    #[error("spectral data does not certify this graph: residual {residual:e} exceeds {tolerance:e}")]
    StaleSpectrum { residual: f64, tolerance: f64 },

    #[error("edge ({0}, {1}) is already present")]
    EdgePresent(usize, usize),

    #[error("edge ({0}, {1}) is not present")]
    EdgeAbsent(usize, usize),

    #[error("sigma series order {0} is unsupported (expected 1, 2 or 3)")]
    UnsupportedOrder(u32),

    #[error("graph source produced no connected graphs")]
    EmptySource,

    #[error("{0} eigenpair computations failed during the scan")]
    ScanFailures(u64),

    #[error(transparent)]
    Graph6(#[from] Graph6Error),

    #[error("edge list line {line}: {message}")]
    EdgeList { line: usize, message: String },

    #[error("family spec {spec:?}: {message}")]
    FamilySpec { spec: String, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
