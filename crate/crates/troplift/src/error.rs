use thiserror::Error;

/// Everything that can go wrong on valid-but-unlucky input. Caller bugs
/// (mixed coefficient domains, malformed ring contexts) panic instead.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("the zero polynomial has no factorisation")]
    ZeroPolynomial,
    #[error("degree {0} exceeds the univariate factorisation cap of 32")]
    DegreeCap(usize),
    #[error("extension tower unsupported: a second algebraic adjunction would be required")]
    ExtensionTower,
    #[error("minimal polynomial must be monic and irreducible over Q")]
    BadMinPoly,
    #[error("not in shape position: {0}")]
    NotShapePosition(String),
    #[error("no torus zero: every zero has a vanishing coordinate")]
    NoTorusZero,
    #[error("omega is not in the tropical variety")]
    OmegaNotInTrop,
    #[error("no negative ray of the tropical variety extends the current approximation")]
    NoRay,
    #[error("zero eliminant for coordinate {0}: the projection is not a space curve")]
    NotCurveType(String),
    #[error("random linear reduction failed after {0} attempts")]
    RdzAttempts(u32),
    #[error("gamma transform requires non-positive weights")]
    PositiveGammaWeight,
    #[error("branch index {0} out of range ({1} branches available)")]
    BranchOutOfRange(usize, usize),
    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
