use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("bad group spec `{0}`")]
    BadSpec(String),

    #[error("invalid multiplication table: {0}")]
    BadTable(String),

    #[error("{0} must not be empty")]
    Empty(&'static str),

    #[error("{0} requires a connected graph")]
    Disconnected(&'static str),

    #[error("trace step {step} references edge ({u},{v}) which is no longer live")]
    DeadEdge { step: usize, u: usize, v: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{what} exceeds cap ({limit})")]
    CapExceeded { what: &'static str, limit: u64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
