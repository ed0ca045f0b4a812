//! Exact coefficient fields.
//!
//! Polynomials and Gröbner bases are generic over [`Scalar`]. Only exact
//! fields qualify: every algorithm here relies on exact zero tests, so
//! floating-point types are deliberately not implemented.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An exact field usable as a polynomial coefficient.
pub trait Scalar:
    Clone
    + Eq
    + Hash
    + Debug
    + Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_i64(v: i64) -> Self;

    /// A nonzero scalar `c` such that `coeffs / c` is a "small" normalized
    /// representative of the same projective point. Over a general field this
    /// is the first coefficient; over ℚ it is the signed rational content.
    fn primitive_scale(coeffs: &[Self]) -> Self {
        coeffs
            .iter()
            .find(|c| !c.is_zero())
            .cloned()
            .unwrap_or_else(Self::one)
    }

    /// Whether the value prints with a leading minus sign.
    fn is_negative_display(&self) -> bool {
        false
    }

    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }
}

impl Scalar for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn primitive_scale(coeffs: &[Self]) -> Self {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        let mut sign_neg = None;
        for c in coeffs.iter().filter(|c| !c.is_zero()) {
            if sign_neg.is_none() {
                sign_neg = Some(c.is_negative());
            }
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            return BigRational::one();
        }
        let content = BigRational::new(num, den);
        if sign_neg == Some(true) {
            -content
        } else {
            content
        }
    }

    fn is_negative_display(&self) -> bool {
        self.is_negative()
    }
}

/// The prime field 𝔽_P for a prime `P < 2^31`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct PrimeField<const P: u64>(u64);

impl<const P: u64> PrimeField<P> {
    pub fn new(v: i64) -> Self {
        Self(v.rem_euclid(P as i64) as u64)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self.0;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % P;
            }
            base = base * base % P;
            e >>= 1;
        }
        Self(acc)
    }
}

impl<const P: u64> Debug for PrimeField<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.0, P)
    }
}

impl<const P: u64> Display for PrimeField<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Zero for PrimeField<P> {
    fn zero() -> Self {
        Self(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for PrimeField<P> {
    fn one() -> Self {
        Self(1)
    }
}

impl<const P: u64> Add for PrimeField<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self((self.0 + rhs.0) % P)
    }
}

impl<const P: u64> Sub for PrimeField<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self((self.0 + P - rhs.0) % P)
    }
}

impl<const P: u64> Mul for PrimeField<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self(self.0 * rhs.0 % P)
    }
}

impl<const P: u64> Neg for PrimeField<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Self((P - self.0) % P)
    }
}

impl<const P: u64> Div for PrimeField<P> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        assert!(rhs.0 != 0, "division by zero in prime field");
        self * rhs.pow(P - 2)
    }
}

impl<const P: u64> Scalar for PrimeField<P> {
    fn from_i64(v: i64) -> Self {
        Self::new(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rational_content_keeps_leading_sign() {
        let c = BigRational::primitive_scale(&[q(-4, 3), q(2, 9), q(0, 1)]);
        assert_eq!(c, q(-2, 9));
        let scaled: Vec<_> = [q(-4, 3), q(2, 9)].iter().map(|v| v / &c).collect();
        assert_eq!(scaled, vec![q(6, 1), q(-1, 1)]);
    }

    #[test]
    fn prime_field_inverse() {
        type F = PrimeField<32003>;
        for v in 1..50 {
            let a = F::new(v);
            assert_eq!(a * a.inv(), F::one());
        }
        assert_eq!(F::new(-1).value(), 32002);
    }
}
