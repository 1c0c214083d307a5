//! Exact Feigin–Odesskii Poisson brackets on P³.
//!
//! A pencil of quadrics `Q1 = Q2 = 0` in four variables determines the
//! quadratic bivector `{l1, l2} = dl1 ∧ dl2 ∧ dQ1 ∧ dQ2 / vol`. This crate
//! builds those bivectors, takes Schouten brackets of polynomial multivector
//! fields, and checks the resulting identities with exact rational
//! arithmetic:
//!
//! * [`fo::verify_quartic_identity`]: the quartic of `[Π(Q1,Q2), Π(Q3,Q4)]`
//!   equals `4 · det[∂_j Q_i]`;
//! * [`pencil::classify_collection`]: compatibility of a family of brackets
//!   from the geometry of the pencils as lines in the space of quadrics;
//! * [`polar`]: polar lines and the quartic surface where two polar lines
//!   meet, plus a floating-point check of the harmonic-conjugate description.

pub mod algebra;
pub mod error;
pub mod fixtures;
pub mod fo;
pub mod multivector;
pub mod pencil;
pub mod polar;
pub mod rng;
pub mod selftest;

pub use algebra::{MultiPoly, Scalar};
pub use error::{Error, Result};
pub use multivector::Multivector;
