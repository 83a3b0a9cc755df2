use thiserror::Error;

/// Errors produced by the tracklab library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("not simplicial: {0}")]
    NotSimplicial(String),
    #[error("not a closed surface: {0}")]
    NotClosed(String),
    #[error("complex is not connected")]
    NotConnected,
    #[error("not a 2-sphere: {0}")]
    NotASphere(String),
    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),

    #[error("invalid pattern: {0}")]
    InvalidPattern(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("unknown edge {0}")]
    UnknownEdge(String),
    #[error("pattern or curve system does not belong to this triangulation")]
    MismatchedTriangulation,

    #[error("invalid curve system: {0}")]
    InvalidCurveSystem(String),
    #[error("curve system is not normal (returning arcs present)")]
    NotNormal,
    #[error("pattern kinds are only defined on the boundary of a tetrahedron")]
    UnsupportedTriangulation,

    #[error("chord is not a returning arc")]
    NotReturning,
    #[error("returning arc is not innermost")]
    NotInnermost,
    #[error("no adjacent crossing pair at edge {edge} position {pos}")]
    NoAdjacentPair { edge: String, pos: usize },
    #[error("band move would break embeddedness: {0}")]
    NotEmbeddable(String),

    #[error("unknown region {0}")]
    UnknownRegion(usize),
    #[error("dual graph is not a tree: {0}")]
    NotATree(String),
    #[error("pattern has parallel tracks ({0} and {1})")]
    ParallelTracksPresent(usize, usize),

    #[error("no candidate move adds a track, but region {region} fails the profile")]
    InternalNoProgress { region: usize },
    #[error("oracle enumeration of {requested} vectors exceeds cap {cap}")]
    BoundTooLarge { requested: u128, cap: u128 },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
