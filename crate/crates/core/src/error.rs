use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Reasons a graph file line is rejected.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseErrorKind {
    #[error("malformed record: {0}")]
    Malformed(String),
    #[error("missing `n <count>` header before edges")]
    MissingHeader,
    #[error("duplicate `n` header")]
    DuplicateHeader,
    #[error("vertex count must be at least 2, got {0}")]
    TooFewVertices(usize),
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("edge weight must be positive and finite, got {0}")]
    NonPositiveWeight(f64),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("line {line}: {kind}")]
    Parse { line: usize, kind: ParseErrorKind },
    #[error("graph file is empty (no `n <count>` record)")]
    EmptyInput,
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is not a path in vertex order")]
    NotAPath,
    #[error("path weights are not mirror-symmetric")]
    NotSymmetric,
    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    NotSymmetricMatrix(f64),
    #[error("Fiedler value is degenerate (gap {gap:e} below threshold {threshold:e})")]
    DegenerateFiedler { gap: f64, threshold: f64 },
    #[error("{what}: parameter {value} outside open domain ({lo}, {hi})")]
    OutOfDomain {
        what: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },
    #[error("eigensolver did not converge after {0} sweeps")]
    NoConvergence(usize),
    #[error("singular linear system (pivot {0:e})")]
    Singular(f64),
    #[error("automorphism search limited to n <= {max}, got {n}")]
    TooManyVertices { n: usize, max: usize },
    #[error("optimization result does not match graph: {0}")]
    Mismatch(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn parse(line: usize, kind: ParseErrorKind) -> Self {
        Error::Parse { line, kind }
    }

    /// True for failures of the numerical machinery rather than of the input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NoConvergence(_)
                | Error::Singular(_)
                | Error::DegenerateFiedler { .. }
                | Error::Internal(_)
        )
    }
}
