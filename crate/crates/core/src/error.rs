use thiserror::Error;

/// Why a `(Γ, β)` datum does not describe a sudoku flag with latin radix subsquares.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlagDataDefect {
    /// The upper-right entry `b` of Γ is zero.
    BZero,
    /// `β` is zero.
    BetaZero,
    /// Γ is singular.
    SingularGamma,
}

impl std::fmt::Display for FlagDataDefect {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FlagDataDefect::BZero => write!(f, "b = 0"),
            FlagDataDefect::BetaZero => write!(f, "beta = 0"),
            FlagDataDefect::SingularGamma => write!(f, "det(Gamma) = 0"),
        }
    }
}

/// Which hypothesis of the closed-form composite datum failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompositeHypothesis {
    /// `β_i = β_j`.
    EqualBetas,
    /// `b_i(d_j − β_j) − b_j(d_i − β_i) = 0`.
    ZeroDenominator,
}

/// Which membership rule a candidate parameter set breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetRule {
    ContainsZero,
    SumIsZero,
    ProductIsMinusOne,
    Duplicate,
}

impl std::fmt::Display for SetRule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SetRule::ContainsZero => write!(f, "0 is not allowed"),
            SetRule::SumIsZero => write!(f, "i + j = 0"),
            SetRule::ProductIsMinusOne => write!(f, "i * j = -1"),
            SetRule::Duplicate => write!(f, "repeated element"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field order {0} exceeds the supported maximum of 65536")]
    FieldTooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("element index {index} out of range for GF({q})")]
    ElementOutOfRange { index: u64, q: u32 },
    #[error("determinant is only supported for 2x2 and 3x3 matrices, got {rows}x{cols}")]
    SizeUnsupported { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("expected a subspace of dimension {expected}, got {actual}")]
    DimensionError { expected: usize, actual: usize },
    #[error("invalid flag: {0}")]
    InvalidFlag(String),
    #[error("invalid flag data: {0}")]
    InvalidFlagData(FlagDataDefect),
    #[error("not a sudoku flag")]
    NotSudokuFlag,
    #[error("subspace does not generate a sudoku solution")]
    NotSudokuSubspace,
    #[error("closed-form composite datum undefined: {0:?}")]
    HypothesisViolated(CompositeHypothesis),
    #[error("grid {0} is not a sudoku solution")]
    NotSudoku(usize),
    #[error("members {0} and {1} are not orthogonal")]
    NotMutuallyOrthogonal(usize, usize),
    #[error("invalid parameter set: {rule} for elements {i} and {j}")]
    InvalidS { i: u32, j: u32, rule: SetRule },
    #[error("s = {s} is out of range for q = {q}: {reason}")]
    SOutOfRange { q: u32, s: usize, reason: String },
    #[error("no grids given")]
    GridCountZero,
    #[error("malformed array: {0}")]
    MalformedArray(String),
    #[error("row set is not top-justified")]
    NotTopJustified,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
