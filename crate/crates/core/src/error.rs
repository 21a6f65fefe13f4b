use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("circuit needs at least one register")]
    NoRegisters,
    #[error("duplicate register name `{0}`")]
    DuplicateRegister(String),
    #[error("register `{0}` has zero size")]
    EmptyRegister(String),
    #[error("invalid register name `{0}`")]
    BadRegisterName(String),
    #[error("unknown register `{0}`")]
    UnknownRegister(String),
    #[error("qubit {qubit} out of range (circuit has {width})")]
    QubitOutOfRange { qubit: usize, width: usize },
    #[error("qubit {0} used twice by one gate")]
    Overlap(usize),
    #[error("gate `{kind}` expects {targets} target(s) and {controls} control(s)")]
    Arity { kind: String, targets: usize, controls: usize },
    #[error("cannot invert a measurement")]
    NotInvertible,
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    Invalid(String),
    #[error("simulation needs {needed} qubits, cap is {cap}")]
    TooManyQubits { needed: usize, cap: usize },
    #[error("fragment leaks out of the extracted subspace on column {column}")]
    Leakage { column: usize },
    #[error("extracted operator is not unitary (deviation {0:e})")]
    NotUnitary(f64),
    #[error("numerical domain error: {0}")]
    Domain(String),
    #[error("config line {line}: {msg}")]
    Config { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Invalid(msg.into()))
}
