//! Rational functions over ℚ in canonical form.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::gcd::mpoly_gcd;
use crate::{Poly, Rational};

/// A quotient `num / den` with `gcd(num, den) = 1` and the grevlex-leading
/// coefficient of `den` equal to one. Equal functions have equal fields.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

impl RatFn {
    /// Canonical representative of `num / den`.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: Poly, den: Poly) -> Self {
        let n = num.nvars();
        if num.is_zero() {
            return Self::zero(n);
        }
        if let Some(c) = den.constant_value() {
            return RatFn { num: num.div_scalar(&c), den: Poly::one(n) };
        }
        let g = mpoly_gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        let lc = den.leading_coeff();
        if lc.is_one() {
            RatFn { num, den }
        } else {
            RatFn { num: num.div_scalar(&lc), den: den.div_scalar(&lc) }
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        let n = p.nvars();
        RatFn { num: p, den: Poly::one(n) }
    }

    pub fn zero(nvars: usize) -> Self {
        RatFn { num: Poly::zero(nvars), den: Poly::one(nvars) }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::from_poly(Poly::constant(nvars, c))
    }

    pub fn from_i64(nvars: usize, c: i64) -> Self {
        Self::from_poly(Poly::from_i64(nvars, c))
    }

    pub fn var(nvars: usize, var: usize) -> Self {
        Self::from_poly(Poly::var(nvars, var))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn into_parts(self) -> (Poly, Poly) {
        (self.num, self.den)
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.num.uses_var(var) || self.den.uses_var(var)
    }

    /// Degree as a rational function of `var`: max of numerator and
    /// denominator degrees.
    pub fn degree_in(&self, var: usize) -> u32 {
        self.num.degree_in(var).max(self.den.degree_in(var))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars());
        }
        RatFn { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let lc = self.num.leading_coeff();
        Ok(RatFn { num: self.den.div_scalar(&lc), den: self.num.div_scalar(&lc) })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let e = e as u32;
        Ok(RatFn { num: self.num.pow(e), den: self.den.pow(e) })
    }

    pub fn derivative(&self, var: usize) -> Self {
        let num = &(&self.num.derivative(var) * &self.den) - &(&self.num * &self.den.derivative(var));
        Self::normalize(num, &self.den * &self.den)
    }

    /// Substitutes `images[i]` for variable `i`. Fails when the denominator
    /// vanishes identically after substitution.
    pub fn compose(&self, images: &[RatFn]) -> Result<Self> {
        assert_eq!(images.len(), self.nvars());
        let target = images.first().map(|r| r.nvars()).unwrap_or(0);
        let degs: Vec<u32> = (0..self.nvars()).map(|v| self.degree_in(v)).collect();
        let num = homogenized_substitute(&self.num, images, &degs, target);
        let den = homogenized_substitute(&self.den, images, &degs, target);
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    /// Value at a rational point, `None` if the denominator vanishes there.
    pub fn eval(&self, point: &[Rational]) -> Option<Rational> {
        let d = self.den.eval(point);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(point) / d)
        }
    }

    pub fn remap(&self, nvars: usize, map: &[usize]) -> Self {
        RatFn { num: self.num.remap(nvars, map), den: self.den.remap(nvars, map) }
    }

    pub fn extend_vars(&self, nvars: usize) -> Self {
        RatFn { num: self.num.extend_vars(nvars), den: self.den.extend_vars(nvars) }
    }

    fn add_impl(&self, other: &Self, negate: bool) -> Self {
        let on = if negate { -&other.num } else { other.num.clone() };
        if self.den == other.den {
            if self.den.is_one() {
                return RatFn { num: &self.num + &on, den: self.den.clone() };
            }
            return Self::normalize(&self.num + &on, self.den.clone());
        }
        if other.den.is_one() {
            return RatFn { num: &self.num + &(&on * &self.den), den: self.den.clone() };
        }
        if self.den.is_one() {
            return RatFn { num: &(&self.num * &other.den) + &on, den: other.den.clone() };
        }
        let num = &(&self.num * &other.den) + &(&on * &self.den);
        Self::normalize(num, &self.den * &other.den)
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.nvars());
        }
        if self.den.is_one() && other.den.is_one() {
            return RatFn { num: &self.num * &other.num, den: self.den.clone() };
        }
        let g1 = mpoly_gcd(&self.num, &other.den);
        let g2 = mpoly_gcd(&other.num, &self.den);
        let a = self.num.div_exact(&g1).expect("gcd divides");
        let d = other.den.div_exact(&g1).expect("gcd divides");
        let c = other.num.div_exact(&g2).expect("gcd divides");
        let b = self.den.div_exact(&g2).expect("gcd divides");
        let num = &a * &c;
        let den = &b * &d;
        let lc = den.leading_coeff();
        RatFn { num: num.div_scalar(&lc), den: den.div_scalar(&lc) }
    }
}

/// `p(images) * prod den_i^degs[i]`, a polynomial in the target ring.
fn homogenized_substitute(p: &Poly, images: &[RatFn], degs: &[u32], target: usize) -> Poly {
    let mut num_pows: Vec<Vec<Poly>> = images.iter().map(|r| vec![Poly::one(target), r.num.clone()]).collect();
    let mut den_pows: Vec<Vec<Poly>> = images.iter().map(|r| vec![Poly::one(target), r.den.clone()]).collect();
    let power = |cache: &mut Vec<Vec<Poly>>, v: usize, e: usize| -> Poly {
        while cache[v].len() <= e {
            let next = &cache[v][cache[v].len() - 1] * &cache[v][1];
            cache[v].push(next);
        }
        cache[v][e].clone()
    };
    let mut acc = Poly::zero(target);
    for (m, c) in p.terms() {
        let mut t = Poly::constant(target, c.clone());
        for (v, &e) in m.exponents().iter().enumerate() {
            if degs[v] == 0 {
                continue;
            }
            if e > 0 {
                t = &t * &power(&mut num_pows, v, e as usize);
            }
            if degs[v] > e {
                t = &t * &power(&mut den_pows, v, (degs[v] - e) as usize);
            }
        }
        acc = &acc + &t;
    }
    acc
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{:?}", self.num)
        } else {
            write!(f, "({:?})/({:?})", self.num, self.den)
        }
    }
}

impl<'a> Add<&'a RatFn> for &'a RatFn {
    type Output = RatFn;
    fn add(self, rhs: &RatFn) -> RatFn {
        self.add_impl(rhs, false)
    }
}

impl<'a> Sub<&'a RatFn> for &'a RatFn {
    type Output = RatFn;
    fn sub(self, rhs: &RatFn) -> RatFn {
        self.add_impl(rhs, true)
    }
}

impl<'a> Mul<&'a RatFn> for &'a RatFn {
    type Output = RatFn;
    fn mul(self, rhs: &RatFn) -> RatFn {
        self.mul_impl(rhs)
    }
}

/// Panics on division by zero; use [`RatFn::checked_div`] otherwise.
impl<'a> Div<&'a RatFn> for &'a RatFn {
    type Output = RatFn;
    fn div(self, rhs: &RatFn) -> RatFn {
        self.checked_div(rhs).expect("division by the zero rational function")
    }
}

impl Neg for &RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        RatFn { num: -&self.num, den: self.den.clone() }
    }
}

impl Add for RatFn {
    type Output = RatFn;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl Sub for RatFn {
    type Output = RatFn;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl Mul for RatFn {
    type Output = RatFn;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl Neg for RatFn {
    type Output = RatFn;
    fn neg(self) -> Self {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{arb_poly, p, r};
    use proptest::prelude::*;

    #[test]
    fn normalize_examples() {
        let v = p(&["2*x^2", "4*x", "x", "x^2 - 1", "x - 1", "x + 1"], &["x"]);
        let a = RatFn::new(v[0].clone(), v[1].clone()).unwrap();
        assert_eq!(a.num(), &v[2].scale(&Rational::new(1.into(), 2.into())));
        assert!(a.den().is_one());
        let b = RatFn::new(v[3].clone(), v[4].clone()).unwrap();
        assert_eq!(b, RatFn::from_poly(v[5].clone()));
        let w = p(&["(x1+x2)*x1", "(x1+x2)*x2", "x1", "x2"], &["x1", "x2"]);
        let c = RatFn::new(w[0].clone(), w[1].clone()).unwrap();
        assert_eq!((c.num(), c.den()), (&w[2], &w[3]));
    }

    #[test]
    fn zero_denominator_is_an_error() {
        let v = p(&["x"], &["x"]);
        assert!(matches!(RatFn::new(v[0].clone(), Poly::zero(1)), Err(Error::ZeroDenominator)));
    }

    #[test]
    fn compose_rational_functions() {
        let f = r("x^2 + 1/x", &["x"]);
        let g = r("(x+1)/(x-1)", &["x"]);
        let expected = r("((x+1)/(x-1))^2 + (x-1)/(x+1)", &["x"]);
        assert_eq!(f.compose(&[g]).unwrap(), expected);
    }

    #[test]
    fn derivative_quotient_rule() {
        let f = r("x1/(x1 + x2)", &["x1", "x2"]);
        assert_eq!(f.derivative(0), r("x2/(x1+x2)^2", &["x1", "x2"]));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn normalize_is_class_invariant(a in arb_poly(2, 3, 3), b in arb_poly(2, 3, 3), c in arb_poly(2, 2, 3)) {
            prop_assume!(!b.is_zero() && !c.is_zero());
            let x = RatFn::new(a.clone(), b.clone()).unwrap();
            let y = RatFn::new(&a * &c, &b * &c).unwrap();
            prop_assert_eq!(&x, &y);
            let again = RatFn::new(x.num().clone(), x.den().clone()).unwrap();
            prop_assert_eq!(&again, &x);
        }

        #[test]
        fn equality_matches_cross_multiplication(a in arb_poly(2, 2, 3), b in arb_poly(2, 2, 3),
                                                  c in arb_poly(2, 2, 3), d in arb_poly(2, 2, 3)) {
            prop_assume!(!b.is_zero() && !d.is_zero());
            let x = RatFn::new(a.clone(), b.clone()).unwrap();
            let y = RatFn::new(c.clone(), d.clone()).unwrap();
            prop_assert_eq!(x == y, (&a * &d) == (&c * &b));
        }

        #[test]
        fn field_arithmetic(a in arb_poly(2, 2, 3), b in arb_poly(2, 2, 3), c in arb_poly(2, 2, 3)) {
            prop_assume!(!b.is_zero() && !c.is_zero());
            let x = RatFn::new(a, b).unwrap();
            let y = RatFn::new(c.clone(), Poly::one(2)).unwrap();
            prop_assert_eq!(&(&x / &y) * &y, x.clone());
            prop_assert_eq!(&(&x + &y) - &y, x);
        }
    }
}
