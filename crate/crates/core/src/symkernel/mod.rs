//! Exact arithmetic: rationals, Laurent polynomials, linear systems and spans.

mod linsys;
mod poly;
mod span;

pub use linsys::{invert_matrix, primitive_integer_vector, AffineSolution, LinearSystem};
pub use poly::{poly_arith, Bindings, Monomial, PolyExpr, PolyOp, Symbol};
pub use span::{in_span, span_basis, span_equal, SpanWitness};

/// Arbitrary precision rational, always reduced with positive denominator.
pub type Rational = num::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KernelError {
    #[error("symbol `{0}` used with conflicting invertibility flags")]
    Context(String),
    #[error("negative exponent on non-invertible symbol `{0}`")]
    NegativeExponent(String),
    #[error("not a unit: {0}")]
    NotAUnit(String),
    #[error("expression is not linear in the unknowns: {0}")]
    NonLinear(String),
    #[error("unbound symbol `{0}`")]
    Unbound(String),
}

/// Rational from an integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Rational `n/d`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}
