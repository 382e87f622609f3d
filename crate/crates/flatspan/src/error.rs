use std::fmt;

/// Everything that can go wrong across the library.
#[derive(Debug)]
pub enum Error {
    /// Coordinate vectors of different ambient dimensions were mixed.
    DimensionMismatch { expected: usize, found: usize },
    /// Ambient dimension below 2 is not supported.
    AmbientTooSmall(usize),
    /// A projective point needs at least one nonzero coordinate.
    ZeroPoint,
    /// A point set may not contain the same canonical point twice.
    DuplicatePoint(usize),
    /// Requested flat dimension outside the valid range for the operation.
    DimOutOfRange { dim: isize, min: isize, max: isize },
    /// The point is not on the flat it was required to lie on.
    PointNotOnFlat,
    /// The point lies on the projection center, where the map is undefined.
    PointOnCenter,
    /// The point is outside the join of center and target.
    PointOutsideJoin,
    /// Two flats were required to be disjoint but are not.
    FlatsNotDisjoint,
    /// The flat is not spanned by the points inside it.
    NotSpanned,
    /// A hyperplane of the ambient space was required.
    NotHyperplane { dim: isize, ambient: usize },
    /// No points outside the reference hyperplane.
    EmptyExterior,
    /// Not enough points for the operation.
    TooFewPoints { needed: usize, found: usize },
    /// Richness threshold k outside [2, n].
    KOutOfRange { k: usize, n: usize },
    /// Threshold configuration fails a range check.
    InvalidThresholds(String),
    /// A collection violates the flat-collection invariants.
    InvalidCollection(String),
    /// The index set does not violate the subset dimension condition,
    /// so merging it would not decrease the dimension sum.
    NotViolating,
    /// Merging this subset would produce the ambient space.
    MergeWouldBeAmbient,
    /// The sub-flat search space exceeds the configured cap.
    SubflatBudgetExceeded { count: usize, cap: usize },
    /// A generator ran out of rejection-sampling attempts.
    RejectionBudgetExhausted(String),
    /// A generator spec fails validation.
    InvalidSpec(String),
    /// The admissible-hyperplane scan ran out of candidates.
    CensusExhausted(String),
    /// The randomized search for a generic projection target failed.
    TrialBudgetExhausted,
    /// A rational literal could not be parsed.
    MalformedRational(String),
    /// Point file problems, with a 1-based line number where known.
    PointFile { line: usize, msg: String },
    /// A verification bound was requested without its required input.
    MissingInput(String),
    /// Unknown bound identifier.
    UnknownBound(String),
    Io(std::io::Error),
    Json(serde_json::Error),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => {
                write!(f, "ambient dimension mismatch: expected {expected}, found {found}")
            }
            Error::AmbientTooSmall(d) => write!(f, "ambient dimension {d} too small (need >= 2)"),
            Error::ZeroPoint => write!(f, "homogeneous coordinates must not be all zero"),
            Error::DuplicatePoint(i) => write!(f, "duplicate canonical point at index {i}"),
            Error::DimOutOfRange { dim, min, max } => {
                write!(f, "flat dimension {dim} out of range [{min}, {max}]")
            }
            Error::PointNotOnFlat => write!(f, "point does not lie on the flat"),
            Error::PointOnCenter => write!(f, "point lies on the projection center"),
            Error::PointOutsideJoin => write!(f, "point outside the join of center and target"),
            Error::FlatsNotDisjoint => write!(f, "flats are required to be disjoint"),
            Error::NotSpanned => write!(f, "flat is not spanned by the points on it"),
            Error::NotHyperplane { dim, ambient } => {
                write!(f, "expected a hyperplane (dimension {}), got dimension {dim}", ambient - 1)
            }
            Error::EmptyExterior => write!(f, "no points outside the reference hyperplane"),
            Error::TooFewPoints { needed, found } => {
                write!(f, "need at least {needed} points, found {found}")
            }
            Error::KOutOfRange { k, n } => {
                write!(f, "richness threshold {k} out of range [2, {n}]")
            }
            Error::InvalidThresholds(msg) => write!(f, "invalid thresholds: {msg}"),
            Error::InvalidCollection(msg) => write!(f, "invalid flat collection: {msg}"),
            Error::NotViolating => {
                write!(f, "index set does not violate the subset dimension condition")
            }
            Error::MergeWouldBeAmbient => {
                write!(f, "merging this subset would produce the ambient space")
            }
            Error::SubflatBudgetExceeded { count, cap } => {
                write!(f, "sub-flat census has {count} entries, above the cap of {cap}")
            }
            Error::RejectionBudgetExhausted(what) => {
                write!(f, "rejection sampling budget exhausted while generating {what}")
            }
            Error::InvalidSpec(msg) => write!(f, "invalid generator spec: {msg}"),
            Error::CensusExhausted(stage) => {
                write!(f, "no admissible candidate left in the census at {stage}")
            }
            Error::TrialBudgetExhausted => {
                write!(f, "could not find a generic projection target within the trial budget")
            }
            Error::MalformedRational(s) => write!(f, "malformed rational literal: {s:?}"),
            Error::PointFile { line, msg } => write!(f, "point file, line {line}: {msg}"),
            Error::MissingInput(msg) => write!(f, "missing input: {msg}"),
            Error::UnknownBound(id) => write!(f, "unknown bound identifier: {id:?}"),
            Error::Io(e) => write!(f, "io error: {e}"),
            Error::Json(e) => write!(f, "json error: {e}"),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Io(e) => Some(e),
            Error::Json(e) => Some(e),
            _ => None,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e)
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
