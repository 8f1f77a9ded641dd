use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} outside the supported range [11, 2^31)")]
    ModulusOutOfRange(u64),
    #[error("zero polynomial")]
    ZeroPolynomial,

    #[error("f is not squarefree: gcd(f, f') has degree {0}")]
    NotSquarefree(usize),
    #[error("f has even degree {0}; only odd-degree models are supported")]
    EvenDegree(usize),
    #[error("f is not monic")]
    NotMonic,
    #[error("genus {0} is below 2")]
    GenusTooSmall(usize),
    #[error("objects belong to different curves")]
    CurveMismatch,
    #[error("invalid place: {0}")]
    InvalidPlace(String),

    #[error("zero function element has no divisor")]
    ZeroElement,
    #[error("expansion precision must be at least 1")]
    PrecisionTooSmall,
    #[error("valuation undecided after raising precision to {0}")]
    PrecisionEscalationFailed(usize),

    #[error("Riemann-Roch identity failed for degree {degree}: h0={h0}, h1={h1}, genus {genus}")]
    RiemannRochMismatch {
        degree: i64,
        h0: usize,
        h1: usize,
        genus: usize,
    },

    #[error("only {available} rational places, need {needed}")]
    TooFewPoints { needed: usize, available: usize },
    #[error("no good divisor after {0} tries; try a larger prime")]
    ExhaustedTries(usize),
    #[error("divisor condition failed: {0}")]
    ConditionFailed(String),

    #[error("element does not lie in the target graded piece: {0}")]
    GradingViolation(String),
    #[error("Hilbert function mismatch at degree {degree}: expected {expected}, found {found}")]
    HilbertMismatch {
        degree: usize,
        expected: i64,
        found: i64,
    },
    #[error("not standard graded: {0}")]
    NotStandardGraded(String),
    #[error("exact sequence failure: {0}")]
    SequenceFailure(String),

    #[error("degree-1 syzygy space has dimension {0}, expected 2")]
    WrongSyzygyDimension(usize),
    #[error("syzygy matrix does not square to zero")]
    NotSquareZero,
    #[error("syzygy matrix has nonzero determinant")]
    NonzeroDeterminant,
    #[error("complex not exact in internal degree {0}")]
    ExactnessFailure(usize),
    #[error("duality check failed in degree {0}")]
    DualityFailure(i64),
    #[error("Ext^{i}(M,R) nonzero in internal degree {degree} (defect {defect})")]
    ExtNonzero { i: usize, degree: i64, defect: i64 },
    #[error("canonical module type mismatch: expected {expected}, found {found}")]
    TypeMismatch { expected: usize, found: usize },
    #[error("canonical module not generated in degree 0: fails at n = {0}")]
    GenerationFailure(usize),
    #[error("Betti number mismatch: {0:?}")]
    BettiMismatch(Vec<usize>),

    #[error("artinian complex not exact: {0}")]
    ArtinianExactnessFailure(String),
    #[error("reduced module is free")]
    FreenessDetected,
    #[error("socle mismatch: {0}")]
    SocleMismatch(String),

    #[error("config error: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
