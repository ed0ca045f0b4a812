//! Helpers shared by unit tests.

use num_bigint::BigInt;
use proptest::prelude::*;

use crate::expr::parse_ratfn;
use crate::monomial::Monomial;
use crate::ratfn::RatFn;
use crate::{Poly, Rational};

/// Parses polynomial expressions; panics on non-polynomials.
pub fn p(srcs: &[&str], vars: &[&str]) -> Vec<Poly> {
    srcs.iter()
        .map(|s| {
            let f = parse_ratfn(s, vars).unwrap();
            assert!(f.is_polynomial(), "{} is not a polynomial", s);
            f.num().clone()
        })
        .collect()
}

pub fn r(src: &str, vars: &[&str]) -> RatFn {
    parse_ratfn(src, vars).unwrap()
}

/// Random polynomials with small integer (occasionally halved) coefficients.
pub fn arb_poly(nvars: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(
        (prop::collection::vec(0..=max_deg, nvars), -5i64..=5, any::<bool>()),
        0..=max_terms,
    )
    .prop_map(move |terms| {
        Poly::from_terms(
            nvars,
            terms.into_iter().map(|(e, c, half)| {
                let d = if half { 2 } else { 1 };
                (Monomial::from_exponents(&e), Rational::new(BigInt::from(c), BigInt::from(d)))
            }),
        )
    })
}
