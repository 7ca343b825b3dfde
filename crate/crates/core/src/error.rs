use thiserror::Error;

use crate::group::Elem;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("group order {order} exceeds the configured cap {cap}")]
    OrderCap { order: usize, cap: usize },

    #[error("multiplication table is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NonAssociative { a: Elem, b: Elem, c: Elem },

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("map is not a homomorphism: f({a}*{b}) != f({a})*f({b})")]
    NotHomomorphism { a: Elem, b: Elem },

    #[error("homomorphism is not surjective")]
    NotSurjective,

    #[error("invalid automorphism: {0}")]
    InvalidAutomorphism(String),

    #[error("surface relator violated: product of commutators is {value} (expected identity)")]
    RelatorViolation { value: String },

    #[error("chosen lift {lift} of generator {generator} does not map to its image")]
    LiftNotInCoset { generator: usize, lift: Elem },

    #[error("extension datum is inconsistent: {0}")]
    Compatibility(String),

    #[error("cocycle identity fails at ({a}, {b}, {c})")]
    CocycleIdentity { a: Elem, b: Elem, c: Elem },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not Hermitian (relative defect {defect:e})")]
    NotHermitian { defect: f64 },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("representation invariant violated: {0}")]
    RepInvariant(String),

    #[error("no intertwiner exists for generator {generator}: the class is not stabilized")]
    MissingIntertwiner { generator: usize },

    #[error("expected a scalar matrix: {0}")]
    NotScalar(String),

    #[error("count {value} is not within {tolerance:e} of an integer (residual {residual:e})")]
    Residual { value: String, residual: f64, tolerance: f64 },

    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),

    #[error("no finite threshold: {0}")]
    NoFiniteThreshold(String),

    #[error("kernel is not abelian")]
    NotAbelian,

    #[error("enumeration needs {needed} relator evaluations, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
}
