use thiserror::Error;

/// Errors produced by group construction, analysis and search.
#[derive(Debug, Error)]
pub enum Error {
    #[error("closure exceeds order cap {cap}")]
    ClosureExceedsCap { cap: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("not a group: {0}")]
    NotAGroup(String),

    #[error("generator {index} is singular mod {prime}")]
    SingularGenerator { index: usize, prime: u64 },

    #[error("group order {order} exceeds the cap {cap} for {operation}")]
    OrderCapExceeded {
        order: usize,
        cap: usize,
        operation: &'static str,
    },

    #[error("subset is not a normal subgroup")]
    NotNormal,

    #[error("group is not abelian")]
    NotAbelian,

    #[error("operation undefined on the trivial group")]
    TrivialGroup,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown generator `{name}` at byte {pos}")]
    UnknownGenerator { name: String, pos: usize },

    #[error("a presentation without generators cannot have relators")]
    EmptyGeneratorList,

    #[error("invalid hint `{0}`")]
    InvalidHint(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("search space {size} exceeds budget {budget}")]
    SearchBudgetExceeded { size: u128, budget: u128 },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
