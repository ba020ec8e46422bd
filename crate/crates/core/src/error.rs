use thiserror::Error;

/// Every failure the library can report.
///
/// Variant names double as the machine-readable error names printed by the
/// command-line front end, so they are part of the external contract.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("the zero polynomial has no factorization")]
    ZeroPolynomial,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("A*A is not zero (violates a^2 = 0)")]
    NotSquareZeroA,
    #[error("B*B is not zero (violates b^2 = 0)")]
    NotSquareZeroB,
    #[error("A*B differs from B*A (violates ab = ba)")]
    NotCommuting,
    #[error("invalid label: {0}")]
    InvalidLabel(String),
    #[error("module has a free summand (A*B is not zero)")]
    NotProjectiveFree,
    #[error("pencil is not square: {d1} columns, {d2} rows")]
    NotSquare { d1: usize, d2: usize },
    #[error("kernel vector coefficients are dependent; the vector is not of minimal degree")]
    NotMinimal,
    #[error("no intertwining retraction exists: the submodule is not a direct summand")]
    NotASummand,
    #[error("map is not an intertwiner out of the syzygy of the right-hand term")]
    NotACocycle,
    #[error("module is not indecomposable ({0} summands)")]
    NotIndecomposable(usize),
    #[error("module cannot be drawn as a zig-zag diagram: {0}")]
    NotDiagrammable(String),
    #[error("isomorphism search inconclusive: hom space of dimension {hom_dim} exceeds the exhaustion bound")]
    Inconclusive { hom_dim: usize },
    #[error("cocycle search exhausted without finding the expected middle term")]
    SearchExhausted,
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Stable identifier of the variant, e.g. `"NotSquareZeroA"`.
    pub fn name(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::InvalidField(_) => "InvalidField",
            Error::FieldMismatch => "FieldMismatch",
            Error::ShapeMismatch(_) => "ShapeMismatch",
            Error::NotSquareZeroA => "NotSquareZeroA",
            Error::NotSquareZeroB => "NotSquareZeroB",
            Error::NotCommuting => "NotCommuting",
            Error::InvalidLabel(_) => "InvalidLabel",
            Error::NotProjectiveFree => "NotProjectiveFree",
            Error::NotSquare { .. } => "NotSquare",
            Error::NotMinimal => "NotMinimal",
            Error::NotASummand => "NotASummand",
            Error::NotACocycle => "NotACocycle",
            Error::NotIndecomposable(_) => "NotIndecomposable",
            Error::NotDiagrammable(_) => "NotDiagrammable",
            Error::Inconclusive { .. } => "Inconclusive",
            Error::SearchExhausted => "SearchExhausted",
            Error::OutOfRange(_) => "OutOfRange",
            Error::Parse(_) => "Parse",
            Error::Internal(_) => "Internal",
        }
    }

    /// True for failures that indicate a broken contract inside the library
    /// rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::Inconclusive { .. } | Error::SearchExhausted | Error::Internal(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
