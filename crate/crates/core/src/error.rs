use thiserror::Error;

/// Errors raised by the solvers, builders and parsers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("weights too large: squared total weight overflows 64-bit arithmetic")]
    WeightOverflow,
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("no finite cut separates the given terminals")]
    NoFiniteCut,
    #[error("component {index} does not induce a connected subgraph")]
    DisconnectedComponent { index: usize },
    #[error("instance too large for {what}: {size} exceeds limit {limit}")]
    InstanceTooLarge {
        what: &'static str,
        size: u128,
        limit: u128,
    },
    #[error("graph is not planar")]
    NotPlanar,
    #[error("perturbed weights exceed the arithmetic bound")]
    ArithmeticBoundExceeded,
    #[error("instance is infeasible")]
    Infeasible,
    #[error("linear program is infeasible")]
    LpInfeasible,
    #[error("linear program is unbounded")]
    LpUnbounded,
    #[error("simplex iteration limit of {0} reached")]
    IterationLimit(usize),
    #[error("gadget cost scale {m_cost} must exceed total base edge weight {total}")]
    ScaleTooSmall { m_cost: u64, total: u64 },
    #[error("graph has odd order {0}")]
    OddOrder(usize),
    #[error("size bound exceeded: {size} > {limit}")]
    SizeBoundExceeded { size: usize, limit: usize },
    #[error("parse error at line {line}, column {column}: {msg}")]
    Parse {
        line: usize,
        column: usize,
        msg: String,
    },
    #[error("schema error at {path}: {msg}")]
    Schema { path: String, msg: String },
    #[error("bounds error at {path}: {msg}")]
    Bounds { path: String, msg: String },
    #[error("invalid generator parameters: {0}")]
    InvalidParams(String),
    #[error("{0}")]
    Other(String),
}

pub type Result<T> = std::result::Result<T, Error>;
