use thiserror::Error;

/// Errors raised by group construction and group-level operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("generated group exceeds the order cap of {cap}")]
    OrderCapExceeded { cap: usize },
    #[error("malformed multiplication table: {0}")]
    MalformedTable(String),
    #[error("multiplication is not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("subgroup is not normal: conjugate of {member} by {by} leaves it")]
    NotNormal { member: usize, by: usize },
    #[error("element set is not a subgroup")]
    NotASubgroup,
    #[error("unknown catalog group {order}:{index}")]
    UnknownCatalogId { order: usize, index: usize },
    #[error("catalog parse error on line {line}: {message}")]
    CatalogParse { line: usize, message: String },
}

/// Errors raised by crossed-module validation and constructions.
///
/// Every axiom failure carries a concrete witness that re-fails the axiom.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum XModError {
    #[error("malformed crossed module data: {0}")]
    Malformed(String),
    #[error("boundary is not a homomorphism at ({0}, {1})")]
    BoundaryNotHomomorphic(usize, usize),
    #[error("action of {g0} is not an automorphism (witness {x}, {y})")]
    ActionNotAutomorphic { g0: usize, x: usize, y: usize },
    #[error("action is not a homomorphism: act[{x}*{y}] differs from act[{x}]∘act[{y}] at {g1}")]
    ActionNotHomomorphic { x: usize, y: usize, g1: usize },
    #[error("equivariance fails: d(^{g0} {g1}) != {g0} d({g1}) {g0}^-1")]
    Cm1Violated { g0: usize, g1: usize },
    #[error("Peiffer identity fails: ^d({g1}) {h1} != {g1} {h1} {g1}^-1")]
    Cm2Violated { g1: usize, h1: usize },
    #[error("boundary image of the level-1 subgroup leaves the level-0 subgroup")]
    BoundaryLeavesSubgroup,
    #[error("level-1 subgroup is not closed under the level-0 action")]
    NotActionClosed,
    #[error("subcrossed module is not normal")]
    NotNormal,
    #[error("module crossed module needs an abelian source")]
    SourceNotAbelian,
    #[error("subcrossed modules belong to different parents")]
    ParentMismatch,
    #[error("order cap of {cap} exceeded")]
    CapExceeded { cap: usize },
    #[error("commutator pairing depends on the coset representative at ({0}, {1})")]
    PairingNotWellDefined(usize, usize),
    #[error("hypothesis fails: {0}")]
    HypothesisFails(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Errors from the census pipeline and persistence layer.
#[derive(Debug, Error)]
pub enum CensusError {
    #[error("catalog has no groups of order {0}")]
    UnsupportedOrder(usize),
    #[error(transparent)]
    XMod(#[from] XModError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("bad record: {0}")]
    BadRecord(String),
    #[error("family {family}: invariants of member {member} differ from the leader")]
    FamilyInvariantMismatch { family: usize, member: usize },
    #[error("thread pool: {0}")]
    ThreadPool(String),
}
