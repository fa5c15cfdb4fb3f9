use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse scalar `{0}`")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("expected a univariate function in `{0}`")]
    NotUnivariate(String),
    #[error("not generically a square: square-free part depends on the split variables")]
    NotGenericallySquare,
    #[error("unknown curve name `{0}`")]
    UnknownName(String),
    #[error("jacobian is rank deficient at every probe point")]
    RankDeficient,
    #[error("map denominator vanishes identically along the curve")]
    PoleOnCurve,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("quadratic form is not positive definite")]
    NotPositiveDefinite,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("span vectors are linearly dependent")]
    DependentSpan,
    #[error("nonzero residue: hermite remainder {0}")]
    NonzeroResidue(String),
    #[error("pole {0} has order greater than one")]
    HigherOrderPole(usize),
    #[error("pole index {0} out of range")]
    NoSuchPole(usize),
    #[error("residue system is singular with infinitely many solutions")]
    SingularSystem,
    #[error("pole locations must be pairwise distinct")]
    DuplicatePole,
    #[error("invalid moebius factor: {0}")]
    InvalidMoebius(String),
    #[error("composition is undefined as a rational identity")]
    PoleCollapse,
    #[error("map is not conformal with square dilation")]
    NotConformal,
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("undeclared variable `{0}`")]
    UndeclaredVariable(String),
    #[error("imaginary unit used in a real context")]
    ImaginaryInRealContext,
    #[error("malformed input: {0}")]
    Format(String),
    #[error("every sample was skipped; nothing to plot")]
    EmptyPlot,
    #[error("invalid plot specification: {0}")]
    InvalidPlot(String),
}

pub type Result<T> = std::result::Result<T, Error>;
