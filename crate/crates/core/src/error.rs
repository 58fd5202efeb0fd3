use thiserror::Error;

/// Errors raised while building, traversing or evaluating games.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("duplicate move `{0}` in node move list")]
    DuplicateMove(String),

    #[error("move `{0}` is not listed at this node")]
    UnlistedMove(String),

    #[error("invalid prefix: {0}")]
    InvalidPrefix(String),

    #[error("invalid path: {0}")]
    InvalidPath(String),

    /// A min/max quantifier or a selection function was applied at a node with no moves.
    #[error("empty domain: no moves to choose from")]
    EmptyDomain,

    #[error("valuation queried at `{0}`, outside its designated move list")]
    OutOfDomainQuery(String),

    #[error("selection function returned `{0}`, which is not one of its moves")]
    SelectionOutsideDomain(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("budget exceeded: {needed} cases needed, limit is {limit}")]
    BudgetExceeded { needed: u128, limit: u128 },

    #[error("tree deeper than the materialization bound {0}")]
    DepthExceeded(usize),

    #[error("unknown quantifier `{0}`")]
    UnknownQuantifier(String),

    #[error("unknown selection function `{0}`")]
    UnknownSelection(String),

    #[error("quantifier `{0}` is not supported here")]
    UnsupportedQuantifier(String),

    #[error("`{name}` is not available for {domain} outcomes")]
    UnsupportedForOutcome { name: String, domain: &'static str },
}

pub type Result<T, E = GameError> = std::result::Result<T, E>;
