use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid construction: {0}")]
    Construction(String),
    #[error("unknown graph name `{0}`")]
    UnknownName(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("capability exceeded: {0}")]
    Capability(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("certificate rejected at step {step}: {reason}")]
    CertificateRejected { step: usize, reason: String },
    #[error("polynomial parse error: {0}")]
    PolyParse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
