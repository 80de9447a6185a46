use thiserror::Error;

/// Errors produced by the exterior calculus and geometry layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("incompatible frames: dimension {0} vs {1}")]
    DimensionMismatch(u8, u8),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(u8, u8),
    #[error("frame index {index} out of range 1..={dim}")]
    IndexOutOfRange { index: u8, dim: u8 },
    #[error("invalid frame: d(d e{index}) has a nonzero term {term}")]
    JacobiFailure { index: u8, term: String },
    #[error("structure not admissible: {condition}")]
    NotAdmissible { condition: String },
    #[error("no differential available for {what} on this model space")]
    MissingDifferential { what: String },
    #[error(
        "curvature lacks pair symmetry at ({i},{j},{k},{l}); \
         the torsion-flip decomposition requires R(X,Y,Z,V) = R(Z,V,X,Y)"
    )]
    PairSymmetryViolation { i: u8, j: u8, k: u8, l: u8 },
    #[error("internal consistency failure: {0}")]
    Inconsistency(String),
    #[error("unsupported operation: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, GeomError>;
