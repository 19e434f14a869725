use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown generator `{name}` at byte {pos}")]
    UnknownGenerator { name: String, pos: usize },
    #[error("presentation has no generators")]
    EmptyGeneratorList,
    #[error("generator `{0}` declared twice")]
    DuplicateGenerator(String),
    #[error("operation needs a nonempty word")]
    EmptyWord,
    #[error("generator index {index} out of range for {count} generators")]
    InvalidGenerator { index: usize, count: usize },

    #[error("coset enumeration exceeded {limit} cosets")]
    Overflow { limit: usize },

    #[error("permutations act on different ground sets ({0} vs {1})")]
    DegreeMismatch(usize, usize),
    #[error("group closure exceeded {0} elements")]
    GroupTooLarge(usize),
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),
    #[error("expected {expected} generator images, got {got}")]
    ImageCount { expected: usize, got: usize },
    #[error("relator {index} (`{relator}`) does not map to the identity")]
    RelatorViolation { index: usize, relator: String },
    #[error("source is not a finite group; kernel is not computable")]
    InfiniteSource,
    #[error("subgroup is not normal")]
    NotNormal,

    #[error("group of order {order} exceeds the construction budget of {budget}")]
    SourceTooLarge { order: usize, budget: usize },
    #[error("element {0} is not central")]
    NotCentral(usize),
    #[error("lift-dependent value at pair ({0}, {1})")]
    LiftDependence(usize, usize),
    #[error("extension does not match the tensor square's source: {0}")]
    IncompatibleExtension(String),
    #[error("construction check failed: {0}")]
    ConstructionCheck(String),

    #[error("invalid cocycle: {0}")]
    InvalidCocycle(String),
    #[error("circular-order axiom violated: {0}")]
    AxiomViolation(String),

    #[error("cannot certify that the word is central: {0}")]
    CentralityNotCertified(String),
    #[error("unknown group identifier `{0}`")]
    UnknownIdentifier(String),

    #[error("malformed Gauss code: {0}")]
    GaussCode(String),
    #[error("bundled data is corrupt: {0}")]
    CorruptData(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
