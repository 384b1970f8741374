//! Crate-wide error type. Variants are grouped by the layer that raises
//! them; everything implements `std::error::Error` via `thiserror`.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    // expression layer
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("variable sets differ: {0}")]
    VarMismatch(String),
    #[error("division is not exact: {0}")]
    NonExactDivision(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquareMatrix { rows: usize, cols: usize },
    #[error("substitution images missing or malformed: {0}")]
    BadSubstitution(String),

    // presentation layer
    #[error("relation {upper}*{lower}: {msg}")]
    BadRelation {
        upper: String,
        lower: String,
        msg: String,
    },
    #[error("presentation is not confluent: overlap {overlap} resolves to `{nf1}` and `{nf2}`")]
    NotConfluent {
        overlap: String,
        nf1: String,
        nf2: String,
    },
    #[error("elements belong to different presentations: {0}")]
    PresentationMismatch(String),
    #[error("operation requires a graded presentation: {0}")]
    NotGraded(String),

    // actions and monoids
    #[error("map is not a homomorphism: relation {relation} has nonzero residual {residual}")]
    NotHomomorphism { relation: String, residual: String },
    #[error("map is not invertible: {0}")]
    NotInvertible(String),
    #[error("monoid data invalid: {0}")]
    BadMonoid(String),
    #[error("no coset basis: {0}")]
    NoCosetBasis(String),

    // free-module layer
    #[error("element is not central: [{witness}] does not vanish against {generator}")]
    NotCentral { generator: String, witness: String },
    #[error("element cannot be expressed in the basis: {0}")]
    NoSolution(String),
    #[error("expression is not unique; syzygy witness: {0}")]
    AmbiguousSolution(String),
    #[error("dimension count mismatch at degree {degree}: ambient {ambient}, module {module}")]
    DimensionMismatch {
        degree: u64,
        ambient: usize,
        module: usize,
    },

    // discriminant layer
    #[error("map does not fix the central subalgebra: {0}")]
    DoesNotFixBase(String),
    #[error("basis-change determinant is not a unit: {0}")]
    NotAUnit(String),
    #[error("map is not a reflection: {0}")]
    NotReflection(String),

    // resource guards
    #[error("cap exceeded: {0}")]
    CapExceeded(String),

    #[error("{0}")]
    Invalid(String),
}
