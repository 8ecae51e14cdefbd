use thiserror::Error;

/// Everything that can go wrong while building, solving or verifying a game.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid preferences: {0}")]
    InvalidPreferences(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("coalition is empty")]
    EmptyCoalition,
    #[error("graph is not a tree")]
    NotATree,
    #[error("graph is not a forest")]
    NotAForest,
    #[error("graph is not a star")]
    NotAStar,
    #[error("utilities are not symmetric enemy-oriented")]
    NotEnemyOriented,
    #[error("game is not additively separable")]
    NotAdditive,
    #[error("player {player} is not a member of the coalition")]
    PlayerNotMember { player: usize },
    #[error("target coalition is not a block of the partition")]
    TargetNotInPartition,
    #[error("partition has a disconnected block")]
    InfeasiblePartition,
    #[error("start partition is not feasible")]
    InfeasibleStart,
    #[error("enumeration cap of {limit} connected subsets exceeded")]
    CapExceeded { limit: usize },
    #[error("enumeration budget of {limit} exceeded")]
    BudgetExceeded { limit: usize },
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
