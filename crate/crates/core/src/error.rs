use thiserror::Error;

/// Errors raised by the algebra engine and the deformation pipeline.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum LagError {
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("the zero polynomial has no weighted degree")]
    ZeroPolynomial,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("operation needs gaussian coefficients but the ring is rational")]
    NeedsGaussian,
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("invalid symplectic structure: {0}")]
    InvalidSymplectic(String),
    #[error("variable `{0}` is not paired in the symplectic form")]
    UnpairedVariable(String),
    #[error("symplectic form is not weighted-homogeneous: pair weight sums {0:?}")]
    InhomogeneousForm(Vec<i64>),
    #[error("ideal is not weighted-homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("ideal is not involutive: {{f{i},f{j}}} has nonzero normal form {remainder}")]
    NotInvolutive { i: usize, j: usize, remainder: String },
    #[error("polynomial is not in the ideal (remainder {0})")]
    NotInIdeal(String),
    #[error("degree {0} is outside the computed range")]
    DegreeOutOfRange(i64),
    #[error("cochain violates the module relations: {0}")]
    ConstraintViolation(String),
    #[error("cochain is not a cocycle")]
    NotCocycle,
    #[error("no admissible finite coordinate t; candidates tried: {0:?}")]
    NoFiniteCoordinate(Vec<String>),
    #[error("connection is not affine in the layer index: {0}")]
    NotAffine(String),
    #[error("non-square connection layers: {0}")]
    NonSquare(String),
    #[error("torsion/free block structure violated: {0}")]
    BlockStructure(String),
    #[error("singularity is not isolated")]
    NonIsolated,
    #[error("condition P fails: {0}")]
    ConditionP(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("resonance identity violated: {0}")]
    NotResonant(String),
    #[error("manifest errors: {}", .0.join("; "))]
    Manifest(Vec<String>),
    #[error("unknown output format `{0}`")]
    UnknownFormat(String),
    #[error("resource bound exceeded: {0}")]
    ResourceBound(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, LagError>;
