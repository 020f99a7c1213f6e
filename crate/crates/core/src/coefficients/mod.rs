//! Exact scalars: rationals, cyclotomic numbers, Laurent polynomials in `q`
//! over either, and rational functions in `q`.

mod cyclotomic;
mod field;
mod laurent;
pub(crate) mod poly;
mod ratfunc;
mod scalar;

pub use cyclotomic::{cyc_mul, cyclotomic_field, Cyclotomic, CyclotomicField};
pub use field::{rat, rat_int, Field, Rational};
pub use laurent::{lp_eval, lp_mul, LaurentPoly};
pub use ratfunc::RatFunc;
pub use scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoefficientError {
    #[error("cyclotomic fields of orders {left} and {right} do not mix")]
    FieldMismatch { left: u32, right: u32 },
    #[error("cannot evaluate a Laurent polynomial at q = 0")]
    ZeroEvaluationPoint,
}
