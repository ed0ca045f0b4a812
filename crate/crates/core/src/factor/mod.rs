//! Polynomial factorization over ℚ and over simple algebraic extensions of
//! rational function fields.

pub mod dense;
pub mod extension;
pub mod modular;
pub mod multivariate;
pub mod trager;
pub mod univariate;

use crate::{Poly, Rational};

pub use extension::{ext_invert, AlgExtension, ExtElement, ExtPoly};
pub use multivariate::factor_multivariate_q;
pub use trager::{norm, trager_factor};
pub use univariate::factor_univariate_q;

/// `constant · ∏ factor^multiplicity`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub constant: Rational,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    /// Multiplies everything back together.
    pub fn expand(&self) -> Poly {
        let nvars = self.factors.first().map(|(g, _)| g.nvars()).unwrap_or(0);
        self.factors
            .iter()
            .fold(Poly::constant(nvars, self.constant.clone()), |acc, (g, e)| &acc * &g.pow(*e))
    }

    /// Factors of positive degree in `var`.
    pub fn factors_in(&self, var: usize) -> impl Iterator<Item = &(Poly, u32)> {
        self.factors.iter().filter(move |(g, _)| g.degree_in(var) > 0)
    }
}
