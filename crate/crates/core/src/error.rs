use thiserror::Error;

/// Errors across the engine. Parse errors carry source positions;
/// budget-style errors name the exhausted resource.
#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },

    #[error("unknown generator '{name}' at line {line}, column {col}")]
    UnknownGenerator { name: String, line: usize, col: usize },

    #[error("exponent overflow at line {line}, column {col}")]
    ExponentOverflow { line: usize, col: usize },

    #[error("missing assignment for generator {gen}")]
    MissingAssignment { gen: usize },

    #[error("coset limit exceeded (budget {limit}); presentation may define a larger or infinite group")]
    CosetLimitExceeded { limit: usize },

    #[error("closure mismatch: permutation closure has order {closure}, table has {live} live cosets")]
    ClosureMismatch { closure: usize, live: usize },

    #[error("group of order {order} is not a p-group")]
    NotPGroup { order: usize },

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("subgroup is not central")]
    NotCentral,

    #[error("central subgroups are not isomorphic under the given identification")]
    NotIsomorphicIdentification,

    #[error("budget exceeded: {what}")]
    BudgetExceeded { what: String },

    #[error("order cap exceeded: {order} > {cap}")]
    OrderCapExceeded { order: usize, cap: usize },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("unknown suite '{0}'")]
    UnknownSuite(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
