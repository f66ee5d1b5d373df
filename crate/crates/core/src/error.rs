use crate::numeric::Int;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("continued fraction must have at least one coefficient")]
    EmptyContinuedFraction,

    #[error("continued fraction coefficient {index} is zero; coefficients must be nonzero")]
    ZeroCoefficient { index: usize },

    #[error("continued fraction evaluates to infinity (q_n = 0)")]
    InfiniteValue,

    #[error("continued fraction has even length {len}; normalize to odd length first")]
    EvenLength { len: usize },

    #[error("determinant {det} is even: this is a 2-component link, not a knot")]
    NotAKnot { det: Int },

    #[error("denominator must be positive, got {q}")]
    NonPositiveDenominator { q: Int },

    #[error("denominator must be nonzero")]
    ZeroDenominator,

    #[error("{p}/{q} is not in lowest terms (gcd = {gcd})")]
    NotCoprime { p: Int, q: Int, gcd: Int },

    #[error("remainder formula requires p > 0 odd and 0 < q < p, got {p}/{q}")]
    OracleDomain { p: Int, q: Int },

    #[error("remainder formula is O(p); p = {p} is too large")]
    OracleTooLarge { p: Int },

    #[error("diagram would have {crossings} crossings, above the limit of {limit}")]
    DiagramTooLarge { crossings: Int, limit: usize },

    #[error("matrix basis would have size {size}, above the limit of {limit}")]
    MatrixTooLarge { size: Int, limit: usize },

    #[error("closed-form diagonal degenerates: lambda_{index} = 0 (prefix convergent numerator vanishes)")]
    DegenerateLambda { index: usize },

    #[error("matrix dimensions do not match: {0}")]
    Dimension(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal cross-check failed: {0}")]
    CrossCheck(String),
}
