use thiserror::Error;

#[derive(Debug, Error)]
pub enum CrystalError {
    #[error("unknown root system type `{0}`")]
    UnknownType(String),

    #[error("rank {rank} out of range for family {family} (need {bound})")]
    RankOutOfRange {
        family: &'static str,
        rank: usize,
        bound: &'static str,
    },

    #[error("color {color} is not in the index set of {ty}")]
    UnknownColor { color: usize, ty: String },

    #[error("level undefined for finite type {0}")]
    LevelUndefined(String),

    #[error("weight {0} is not dominant")]
    NotDominant(String),

    #[error("malformed weight `{0}`")]
    MalformedWeight(String),

    #[error("node {0} is not in the graph")]
    NodeNotInGraph(String),

    #[error("node {0} lies on the truncation frontier; its ancestry may be incomplete")]
    Frontier(String),

    #[error("walk count for node {id} exceeds {limit}")]
    TooManyWalks { id: String, limit: usize },

    #[error("{0} has no cataloged perfect crystal")]
    UnsupportedFamily(String),

    #[error("walk {0} is not a consecutive sequence of arrows")]
    NotConsecutive(String),

    #[error("walk {0} starts with a_(i1,i2) >= 0 and cannot end at a singular node")]
    ExcludedWalk(String),

    #[error("no highest weight node of weight {0} found in the truncated product")]
    NoHighestComponent(String),

    #[error("level of {weight} is {level}, below the perfect crystal level {required}")]
    LevelViolation {
        weight: String,
        level: i64,
        required: i64,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("malformed graph document: {0}")]
    MalformedGraph(String),

    #[error("malformed config: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, CrystalError>;
