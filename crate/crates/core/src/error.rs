use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("index out of range: {0}")]
    IndexRange(String),
    #[error("line {line}: power relations are not supported (torsion-free presentations only)")]
    PowerRelation { line: usize },
    #[error("parameter out of range: {0}")]
    Parameter(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("collection did not terminate within {0} steps")]
    CollectionLimit(u64),
    #[error("exponent overflow during collection")]
    Overflow,
    #[error("the zero polynomial has no leading monomial")]
    ZeroPolynomial,
    #[error("degree cap {cap} exceeded while interpolating generator {generator}")]
    DegreeCap { generator: usize, cap: u32 },
    #[error("interpolated polynomials disagree with collection: {0}")]
    Verification(String),
    #[error("module closure diverged: orbit exceeded {0} iterations")]
    ClosureDiverged(usize),
    #[error("basis is not closed under the group action: {0}")]
    NotClosed(String),
    #[error("polynomial is not in the span of the basis")]
    NotInSpan,
    #[error("matrix is singular")]
    Singular,
}
