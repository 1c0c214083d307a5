//! Exact arithmetic foundation: rationals, polynomials, linear algebra.

pub mod binary;
pub mod linalg;
mod parse;
pub mod poly;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, ToPrimitive};

pub use binary::{binary_form_squarefree, binary_rational_roots, SquarefreeReport, UniPoly};
pub use linalg::{determinant, null_space, poly_determinant, rank, solve_linear, LinSolveResult};
pub use poly::{monomials_of_degree, Monomial, MultiPoly, PolyOp};

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

pub fn scalar_to_f64(x: &Scalar) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Exact rational value of a finite float.
pub fn scalar_from_f64(x: f64) -> Option<Scalar> {
    Scalar::from_f64(x)
}
