use thiserror::Error;

use crate::hypergraph::VertexSet;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("vertex {vertex} outside ground set 1..={n}")]
    VertexOutOfRange { vertex: u32, n: u32 },
    #[error("vertex {0} listed twice")]
    DuplicateVertex(u32),
    #[error("set of size {size} exceeds uniformity {k}")]
    SetTooLarge { size: usize, k: usize },
    #[error("edge {edge} has {got} vertices, expected {expected}")]
    WrongEdgeSize {
        edge: VertexSet,
        expected: usize,
        got: usize,
    },
    #[error("duplicate edge {0}")]
    DuplicateEdge(VertexSet),
    #[error("degree order d={d} outside 1..={k}")]
    DegreeOrder { d: usize, k: usize },
    #[error("uniformity {k} exceeds vertex count {n}")]
    UniformityTooLarge { k: usize, n: u32 },
    #[error("a + b = {sum} but k = {k}")]
    SplitMismatch { sum: usize, k: usize },
    #[error("block sizes must be positive (a={a}, b={b})")]
    ZeroBlock { a: usize, b: usize },
    #[error("{n} is not divisible by {k}")]
    NotDivisible { n: usize, k: usize },
    #[error("need at least 2 block pairs, got t={0}")]
    TooFewBlocks(usize),
    #[error("alpha must lie strictly between 0 and 1, got {0}")]
    AlphaOutOfRange(f64),
    #[error("probability must lie in [0, 1], got {0}")]
    ProbabilityOutOfRange(f64),
    #[error("binomial C({n}, {k}) undefined")]
    BinomialDomain { n: i64, k: i64 },
    #[error("binomial C({n}, {k}) overflows 128 bits")]
    BinomialOverflow { n: u64, k: u64 },
    #[error("requires a <= b (a={a}, b={b})")]
    NeedAAtMostB { a: usize, b: usize },
    #[error("a matching of {t} blocks of size {l} does not fit in {m} points")]
    MatchingTooLarge { m: usize, l: usize, t: usize },
    #[error("part counts differ: n1/a = {left}, n2/b = {right}")]
    PartCountMismatch { left: usize, right: usize },
    #[error("edge {edge} meets V1 in {in_v1} vertices, expected {a}")]
    NotInProduct {
        edge: VertexSet,
        in_v1: usize,
        a: usize,
    },
    #[error("bipartite part size {0} is below 2")]
    PartTooSmall(usize),
    #[error("gamma must be non-negative, got {0}")]
    NegativeGamma(f64),
    #[error("partition does not match the host: {0}")]
    PartitionMismatch(String),
    #[error("certificate is not valid: {0}")]
    InvalidCertificate(String),
    #[error("ground set too large for this operation ({n} > {limit})")]
    GroundSetTooLarge { n: usize, limit: usize },
    #[error("need at least one trial")]
    NoTrials,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
