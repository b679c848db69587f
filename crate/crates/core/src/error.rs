use thiserror::Error;

/// Errors produced by the library.
///
/// Variants carrying a flag or face index name the first witness found under
/// ascending flag order, then ascending color order.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed adjacency: {0}")]
    MalformedAdjacency(String),
    #[error("color {color} is not an involution (fails at flag {flag})")]
    NotInvolution { color: usize, flag: usize },
    #[error("color {color} fixes flag {flag}")]
    FixedPoint { color: usize, flag: usize },
    #[error("flag graph is disconnected")]
    Disconnected,
    #[error("colors {i} and {j} do not commute at flag {flag}")]
    SquareViolation { i: usize, j: usize, flag: usize },
    #[error("color {color} out of range for rank {rank}")]
    ColorOutOfRange { color: usize, rank: usize },
    #[error("index {index} out of range (size {size})")]
    PointOutOfRange { index: usize, size: usize },
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("diamond condition fails between faces {lower} and {upper} ({count} middle faces)")]
    DiamondViolation { lower: usize, upper: usize, count: usize },
    #[error("face {face} breaks the rank structure")]
    RankGap { face: usize },
    #[error("expected a unique face of rank {rank}, found {count}")]
    MultipleExtrema { rank: i32, count: usize },
    #[error("faces {lower} and {upper} are not comparable")]
    NotComparable { lower: usize, upper: usize },
    #[error("malformed poset: {0}")]
    MalformedPoset(String),

    #[error("not a subgroup")]
    NotSubgroup,
    #[error("group of order {order} exceeds the brute-force bound {bound}")]
    TooLarge { order: String, bound: u64 },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("generator images do not define a homomorphism")]
    NotHomomorphism,

    #[error("no covering: the base assignment conflicts along the word {word}")]
    NoCover { word: crate::flaggraph::ColorWord },

    #[error("expected a two-orbit graph, found {0} orbits")]
    NotTwoOrbit(usize),
    #[error("generators do not form a string group generated by involutions: {0}")]
    NotSggi(String),
    #[error("not an amalgamation: {0}")]
    NotAnAmalgamation(String),

    #[error("degenerate toroid lattice ({b}, {c})")]
    DegenerateLattice { b: i64, c: i64 },
    #[error("parameter {value} is below the minimum {min}")]
    TooSmall { value: usize, min: usize },
    #[error("construction needs {needed} flags, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },

    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

impl Error {
    /// Stable snake_case name of the variant, for machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::MalformedAdjacency(_) => "malformed_adjacency",
            Error::NotInvolution { .. } => "not_involution",
            Error::FixedPoint { .. } => "fixed_point",
            Error::Disconnected => "disconnected",
            Error::SquareViolation { .. } => "square_violation",
            Error::ColorOutOfRange { .. } => "color_out_of_range",
            Error::PointOutOfRange { .. } => "point_out_of_range",
            Error::RankMismatch { .. } => "rank_mismatch",
            Error::DiamondViolation { .. } => "diamond_violation",
            Error::RankGap { .. } => "rank_gap",
            Error::MultipleExtrema { .. } => "multiple_extrema",
            Error::NotComparable { .. } => "not_comparable",
            Error::MalformedPoset(_) => "malformed_poset",
            Error::NotSubgroup => "not_subgroup",
            Error::TooLarge { .. } => "too_large",
            Error::InvalidPermutation(_) => "invalid_permutation",
            Error::NotHomomorphism => "not_homomorphism",
            Error::NoCover { .. } => "no_cover",
            Error::NotTwoOrbit(_) => "not_two_orbit",
            Error::NotSggi(_) => "not_sggi",
            Error::NotAnAmalgamation(_) => "not_an_amalgamation",
            Error::DegenerateLattice { .. } => "degenerate_lattice",
            Error::TooSmall { .. } => "too_small",
            Error::BudgetExceeded { .. } => "budget_exceeded",
            Error::Json(_) => "json",
        }
    }

    /// Whether the failure is a size budget rather than bad input.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. } | Error::TooLarge { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
