//! Exact computation of the intermediate fields of a unirational field
//! extension ℚ(f₁,…,f_m) ⊂ ℚ(x₁,…,x_n) that are algebraic over the bottom
//! field, together with the supporting toolkit: field membership with
//! rewriting witnesses, transcendence degrees, minimal polynomials,
//! primitive elements, factorization over algebraic function fields and
//! Lüroth closures.
//!
//! The polynomial kernel and the Gröbner engine are generic over an exact
//! [`Scalar`] field. Everything above them works over ℚ through the aliases
//! [`Rational`] and [`Poly`].

pub mod error;
pub mod expr;
pub mod factor;
pub mod fieldops;
pub mod gcd;
pub mod groebner;
pub mod linalg;
pub mod monomial;
pub mod pipeline;
pub mod poly;
pub mod ratfn;
pub mod scalar;
pub mod subfields;

#[cfg(test)]
mod testutil;

pub use error::{Error, Result};
pub use monomial::{Monomial, MonomialOrder};
pub use poly::MultiPoly;
pub use ratfn::RatFn;
pub use scalar::{PrimeField, Scalar};

/// Arbitrary-precision rationals, the ground field of every computation.
pub type Rational = num_rational::BigRational;

/// Multivariate polynomials over ℚ.
pub type Poly = MultiPoly<Rational>;
