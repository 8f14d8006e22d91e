use thiserror::Error;

use crate::degree::Degree;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot parse degree `{0}`")]
    ParseDegree(String),
    #[error("degree {0} lies outside [0,1]")]
    OutOfRange(String),
    #[error("duplicate point label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown point `{0}`")]
    UnknownPoint(String),
    #[error("operands do not share a carrier")]
    CarrierMismatch,
    #[error("{op} supports at most {cap} points, got {n}")]
    CapExceeded {
        op: &'static str,
        n: usize,
        cap: usize,
    },
    #[error("subspace on the empty set")]
    EmptySubspace,
    #[error("not a topology: {0}")]
    NotATopology(String),
    #[error("invalid space: {0}")]
    InvalidSpace(String),
    #[error("family exceeds the pre-open degree at {set}: {family} > {preopen}")]
    NotBelowPreopen {
        set: String,
        family: Degree,
        preopen: Degree,
    },
    #[error("family is not a pre-base (degree {0})")]
    NotAPrebase(Degree),
    #[error("net: {0}")]
    Net(String),
    #[error("map: {0}")]
    Map(String),
    #[error("{line}:{col}: {msg}")]
    Syntax {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("{line}:{col}: unbound identifier `{name}`")]
    Unbound {
        line: usize,
        col: usize,
        name: String,
    },
    #[error("type error: {0}")]
    Type(String),
    #[error("cost guard: {0}")]
    CostGuard(String),
    #[error("exact scale overflow while discretizing family values")]
    ScaleOverflow,
    #[error("unknown theorem id `{0}`")]
    UnknownTheorem(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
