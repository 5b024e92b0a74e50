use thiserror::Error;

/// Unified error type for the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{what}: expected length {expected}, got {got}")]
    Dimension {
        what: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("removal count x = {x} is out of range for {edges} edges")]
    XOutOfRange { x: usize, edges: usize },

    #[error("configuration removes {got} edges, expected {expected}")]
    Cardinality { expected: usize, got: usize },

    #[error("instance needs {required} qubits, exceeding the cap of {cap}")]
    QubitCap { required: usize, cap: usize },

    #[error("matrix is not unitary (deviation {deviation:.3e} exceeds {tol:.3e})")]
    NotUnitary { deviation: f64, tol: f64 },

    #[error("postselection pattern has zero probability")]
    ZeroProbability,

    #[error("register layouts are incompatible: {0}")]
    LayoutMismatch(String),

    #[error("qubit index {index} out of range for {total} qubits")]
    QubitIndex { index: usize, total: usize },

    #[error("statevector has zero norm")]
    ZeroNorm,

    #[error("unsupported value for {what}: {got}")]
    Unsupported { what: &'static str, got: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
