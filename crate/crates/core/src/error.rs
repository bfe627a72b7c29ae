use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("syntax error at line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("self-loop on vertex `{vertex}`{}", line.map(|l| format!(" at line {l}")).unwrap_or_default())]
    SelfLoop { vertex: String, line: Option<usize> },
    #[error("duplicate vertex label `{0}`")]
    DuplicateVertex(String),
    #[error("unknown vertex label `{0}`")]
    UnknownVertex(String),
    #[error("vertex index {0} out of range")]
    UnknownIndex(usize),
    #[error("{count} vertices exceeds the cap of {max}")]
    TooManyVertices { count: usize, max: usize },
    #[error("join test needs at least two vertices, got {0}")]
    JoinTooSmall(usize),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("unknown vertex label `{0}`")]
    UnknownLabel(String),
    #[error("letter {0} is not a vertex of the graph")]
    LetterOutOfRange(usize),
    #[error("the graph is a join, so no complete word exists")]
    Join,
    #[error("a complete word needs at least two vertices")]
    TooFewVertices,
    #[error("the word must be nonempty")]
    EmptyWord,
    #[error("power {power} of the label is not reduced")]
    NotGeodesic { power: u64 },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CayleyError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("state budget of {budget} exhausted; distances are exact up to radius {reached}")]
    BudgetExhausted { budget: usize, reached: usize },
    #[error("endpoint lies at distance {distance} from the basepoint, inside the forbidden radius {radius}")]
    EndpointInsideBall { distance: usize, radius: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("illegal {op} at step {step}, position {pos}: {reason}")]
    IllegalEvent {
        step: usize,
        op: &'static str,
        pos: usize,
        reason: String,
    },
    #[error("malformed diagram document: {0}")]
    Malformed(String),
    #[error("unknown arc `{0}`")]
    UnknownArc(String),
    #[error("arc hypothesis violated: {0}")]
    ArcHypothesis(String),
    #[error("path is not reduced")]
    NotReduced,
    #[error("curve {0} does not intersect the fence")]
    CurveMissesFence(usize),
    #[error("spoke {0:?} does not intersect the path")]
    SpokeMissesPath((usize, usize)),
    #[error("{count} spokes exceeds the exhaustive-search cap of {max}")]
    TooManySpokes { count: usize, max: usize },
}

#[derive(Debug, Error)]
pub enum BatchError {
    #[error("invalid batch spec: {0}")]
    InvalidSpec(String),
    #[error("cannot write batch output: {0}")]
    Output(#[from] csv::Error),
    #[error("cannot write batch output: {0}")]
    Io(#[from] std::io::Error),
}
