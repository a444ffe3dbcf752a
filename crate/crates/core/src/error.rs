use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // field construction and arithmetic
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("modulus must be monic of degree {expected}, got {got:?}")]
    DegreeMismatch { expected: u32, got: Vec<u32> },
    #[error("modulus {0:?} is reducible over the prime field")]
    ReducibleModulus(Vec<u32>),
    #[error("field of order {0} exceeds the supported table size")]
    FieldTooLarge(u64),
    #[error("operands belong to different fields")]
    SpecMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("value {value} is not an element of a field with {q} elements")]
    NotAnElementOfField { value: u64, q: u32 },

    // matrices and linear codes
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("generator matrix has rank {rank} but {rows} rows")]
    RankDeficient { rank: usize, rows: usize },
    #[error("code of dimension {k} and length {n} is not a proper nonzero subspace")]
    TrivialCode { k: usize, n: usize },
    #[error("enumeration of {needed} items exceeds budget {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("perfect-code test needs an odd distance, got {0}")]
    EvenDistance(usize),
    #[error("dimension {k} outside 1..={q}")]
    DimensionOutOfRange { k: usize, q: u32 },
    #[error("cannot inject {e} errors into words of length {n}")]
    ErrorWeightTooLarge { e: usize, n: usize },
    #[error("malformed matrix text: {0}")]
    MatrixFormat(String),

    // numerical semigroups
    #[error("semigroup needs at least one generator")]
    EmptyGenerators,
    #[error("generators must be positive")]
    NonPositiveGenerator,
    #[error("generators have gcd {0} > 1, so the gap set is infinite")]
    InfiniteGaps(u64),
    #[error("{0} and {1} are not coprime")]
    NotCoprime(u64, u64),
    #[error("{0} is not an element of the semigroup")]
    NotAnElement(u64),

    // curves and evaluation codes
    #[error("tail polynomial has total degree {degree}, must be below {bound}")]
    TailTooBig { degree: u32, bound: u32 },
    #[error("family B needs odd characteristic")]
    EvenCharacteristic,
    #[error("g(x) has degree {0}, family B needs an odd degree")]
    EvenDegree(u32),
    #[error("curve parameter out of range: {0}")]
    InvalidCurve(String),
    #[error("element, point set or code belong to different curves")]
    CurveMismatch,
    #[error("the curve has no affine rational points")]
    NoPoints,
    #[error("point set is empty")]
    EmptyPoints,
    #[error("index {index} out of range 0..{len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("degree {degree} must satisfy {lower} < degree < {upper}")]
    DegreeOutOfRange { degree: u64, lower: u64, upper: u64 },
    #[error("point ({0}, {1}) appears twice")]
    DuplicatePoint(u32, u32),
    #[error("{0} is not a weight of the curve's semigroup")]
    NotInSemigroup(u64),
    #[error("operation needs a family {0} curve")]
    UnsupportedFamily(&'static str),
    #[error("designed parameters disagree: {0}")]
    ParameterMismatch(String),

    // order bound
    #[error("horizon {horizon} too small, need at least {needed}")]
    HorizonTooSmall { horizon: usize, needed: usize },

    // bezout codes
    #[error("Bezout hypothesis n > l*m violated: n = {n}, l*m = {lm}")]
    BezoutHypothesisViolated { n: usize, lm: usize },
    #[error("point ({0}, {1}) is not on the curve")]
    PointOffCurve(u32, u32),

    // spec files
    #[error("parse error: {0}")]
    Parse(String),
    #[error("inconsistent spec: {0}")]
    InconsistentSpec(String),
}
