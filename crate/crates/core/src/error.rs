use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown symbol {0:?} in word")]
    UnknownSymbol(char),
    #[error("generator {symbol:?} is beyond rank {rank}")]
    GeneratorBeyondRank { symbol: char, rank: usize },
    #[error("invalid rank {0}: must be between 1 and {max}", max = crate::word::MAX_RANK)]
    InvalidRank(usize),
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("word is not reduced")]
    NotReduced,
    #[error("malformed automaton: {0}")]
    MalformedAutomaton(String),
    #[error("word is not a member of the subgroup")]
    NotMember,
    #[error("word is already a member of the subgroup")]
    MemberAlready,
    #[error("operation undefined on the trivial subgroup")]
    TrivialSubgroup,
    #[error("subgroup has infinite index")]
    InfiniteIndex,
    #[error("rational set is not a subgroup")]
    NotASubgroup,
    #[error("size guard exceeded: {what} grew beyond {limit}")]
    GuardExceeded { what: &'static str, limit: usize },
    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("format error: {0}")]
    Format(String),
}

impl Error {
    /// Budget and size-guard failures, as opposed to bad input.
    pub fn is_guard(&self) -> bool {
        matches!(self, Error::GuardExceeded { .. } | Error::BudgetExceeded(_))
    }
}
