use std::time::Duration;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid hypergraph: {0}")]
    InvalidHypergraph(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{what} = {value} exceeds the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        value: usize,
        cap: usize,
    },

    #[error("hypergraph is not Veblen (some vertex degree is not divisible by k)")]
    NotVeblen,

    #[error("hypergraph is not connected")]
    Disconnected,

    #[error("expected a {expected}-uniform hypergraph, got k = {got}")]
    WrongUniformity { expected: usize, got: usize },

    #[error("host must be a simple hypergraph (all multiplicities 1)")]
    NotSimple,

    #[error("digraph is not Eulerian")]
    NotEulerian,

    #[error("codegree {d} is out of range for a polynomial of degree {degree}")]
    OutOfRange { d: usize, degree: usize },

    #[error("time budget of {0:?} exhausted")]
    BudgetExhausted(Duration),

    #[error("class budget of {0} classes exhausted")]
    ClassBudgetExhausted(usize),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}
