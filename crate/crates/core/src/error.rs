use thiserror::Error;

/// Errors raised while reading a graph file. Every variant names the
/// 1-based line it was detected on.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: missing header \"n q\"")]
    MissingHeader { line: usize },
    #[error("line {line}: duplicate header")]
    DuplicateHeader { line: usize },
    #[error("line {line}: malformed line: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("line {line}: color {color} out of range [1, {q}]")]
    ColorOutOfRange { line: usize, color: i64, q: usize },
    #[error("line {line}: self-loop at vertex {label:?}")]
    SelfLoop { line: usize, label: String },
    #[error("line {line}: weight {weight} is not positive")]
    NonPositiveWeight { line: usize, weight: i64 },
    #[error("line {line}: more than {n} distinct vertex labels")]
    TooManyVertices { line: usize, n: usize },
    #[error("line {line}: weighted and unweighted edge lines are mixed")]
    MixedWeights { line: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("vertex index {index} out of range for {n} vertices")]
    VertexOutOfRange { index: usize, n: usize },
    #[error("unknown vertex label {0:?}")]
    UnknownLabel(String),
    #[error("unknown edge id {0}")]
    UnknownEdge(usize),
    #[error("color constraint has {got} entries, expected {expected}")]
    AlphaLength { expected: usize, got: usize },
    #[error("graph is not weighted")]
    Unweighted,
    #[error("duplicate parallel edge ({tail}, {head}, color {color}); deduplicate before weighted use")]
    DuplicateEdge { tail: usize, head: usize, color: u32 },
    #[error("matrix entry ({row}, {col}) has degree above one in some variable")]
    EntryDegree { row: usize, col: usize },
    #[error("matrix dimension mismatch: {0}")]
    Shape(String),
    #[error("index {index} out of range for matrix of order {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("modulus {modulus} must exceed the number of evaluation points {points}")]
    ModulusTooSmall { modulus: u64, points: usize },
    #[error("evaluation points for variable {var} are not distinct mod {modulus}")]
    RepeatedPoint { var: usize, modulus: u64 },
    #[error("duplicate modulus {0} in CRT input")]
    DuplicateModulus(u64),
    #[error("ran out of single-precision primes above {lower_bound} before exceeding the coefficient bound")]
    PrimesExhausted { lower_bound: u64 },
    #[error("coefficient bound needs {needed} primes, budget is {budget}")]
    PrimeBudget { needed: usize, budget: usize },
    #[error("valuation of zero is undefined")]
    ZeroValuation,
    #[error("worker count must be at least 1")]
    Workers,
    #[error("brute-force size cap exceeded: {n} vertices > cap {cap}")]
    CapExceeded { n: usize, cap: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
