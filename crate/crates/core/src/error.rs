use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrimeP(u64),
    #[error("field of order {p}^{d} exceeds the size cap {cap}")]
    DegreeCapExceeded { p: u64, d: u64, cap: u64 },
    #[error("invalid field parameters: {0}")]
    InvalidParams(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("empty tuple")]
    EmptyTuple,
    #[error("tuple too short: need at least {need}, got {got}")]
    TupleTooShort { need: usize, got: usize },
    #[error("basis is not F_q-independent")]
    DependentBasis,
    #[error("functional is zero")]
    ZeroFunctional,
    #[error("polynomial is not reduced (zero X coefficient)")]
    NotReduced,
    #[error("polynomial does not have full degree")]
    NotFullDegree,
    #[error("not right divisible")]
    NotRightDivisible,
    #[error("kernel of the reversed polynomial is not rational over this field")]
    KernelNotRational,
    #[error("point is not a pole")]
    NotAPole,
    #[error("pole is not simple")]
    NotSimplePole,
    #[error("factorization mismatch: {0}")]
    FactorizationMismatch(String),
    #[error("element is not in the kernel")]
    NotInKernel,
    #[error("value is not in F_q")]
    ValueNotInFq,
    #[error("decomposition failed: element not in the dual space")]
    DecompositionFailed,
    #[error("variable count mismatch: {0} vs {1}")]
    VarMismatch(usize, usize),
    #[error("term budget of {0} exceeded")]
    BudgetExceeded(usize),
    #[error("input tuple is F_p-dependent")]
    DependentInput,
    #[error("internal mismatch: {0}")]
    InternalMismatch(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("element is not in Z")]
    NotInZ,
    #[error("precondition violated: {0}")]
    Precondition(String),
}

impl Error {
    /// Parse errors are user input problems; everything else that is not a
    /// bug signal counts as a violated precondition.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
