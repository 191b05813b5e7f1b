use thiserror::Error;

/// Errors shared by all operator-algebra modules.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("validity band {band} is not smaller than component dimension {dim}")]
    BandTooLarge { band: usize, dim: usize },
    #[error("matrix is not Hermitian (defect {0:.3e})")]
    NotHermitian(f64),
    #[error("degenerate point: |p| = 0")]
    DegeneratePoint,
    #[error("point lies on the {0} Dirac string")]
    DiracString(&'static str),
    #[error("transition function undefined on the z-axis")]
    OnAxis,
    #[error("point outside the domain D+")]
    OutsideDomain,
    #[error("chart normalizer vanishes on the ground state (theta = {theta})")]
    GroundSingularity { theta: f64 },
    #[error("detuning must be nonzero")]
    ThetaZero,
    #[error("no admissible subspace: requires theta > 1")]
    NoSubspace,
    #[error("column depth {depth} exceeds admissible level {level}")]
    DepthExceedsDomain { depth: usize, level: usize },
    #[error("Gram block is numerically singular")]
    SingularGram,
    #[error("matrix is not in the required group (defect {0:.3e})")]
    NotInGroup(f64),
    #[error("quadrature budget exceeded (requested tol {tol:.3e})")]
    QuadratureBudgetExceeded { tol: f64 },
    #[error("polynomial degree {deg} too high for spin 2j = {two_j}")]
    DegreeTooHigh { deg: usize, two_j: u32 },
    #[error("zero vector has no associated projector")]
    ZeroVector,
    #[error("vector is not pseudo-normalized (v^dag J v = {0})")]
    NotPseudoNormalized(f64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
