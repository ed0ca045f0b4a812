//! Arithmetic in a simple algebraic extension E[α] of a rational function
//! field E = ℚ(t₁,…,t_k), and dense polynomials over it.

use std::fmt;

use super::factor_multivariate_q;
use crate::error::{Error, Result};
use crate::expr::format_ratfn;
use crate::ratfn::RatFn;
use crate::Poly;

/// `E[α] = E[z]/(p_α)` with `p_α` monic and irreducible over `E`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgExtension {
    base_vars: Vec<String>,
    min_poly: Vec<RatFn>,
}

impl AlgExtension {
    /// Makes `p` monic and certifies irreducibility by factoring its
    /// denominator-cleared form over ℚ.
    pub fn new(base_vars: Vec<String>, min_poly: Vec<RatFn>) -> Result<Self> {
        let ext = Self::new_unchecked(base_vars, min_poly)?;
        if !ext.certify_irreducible()? {
            return Err(Error::Reducible);
        }
        Ok(ext)
    }

    /// Like [`AlgExtension::new`] without the irreducibility certificate,
    /// for polynomials known to be minimal polynomials.
    pub fn new_unchecked(base_vars: Vec<String>, mut min_poly: Vec<RatFn>) -> Result<Self> {
        while min_poly.last().is_some_and(|c| c.is_zero()) {
            min_poly.pop();
        }
        if min_poly.len() < 2 {
            return Err(Error::ConstantInput);
        }
        let k = base_vars.len();
        assert!(min_poly.iter().all(|c| c.nvars() == k), "coefficients outside the base field");
        let lc = min_poly.last().expect("nonempty").clone();
        if !lc.is_one() {
            min_poly = min_poly.iter().map(|c| c.checked_div(&lc).expect("nonzero leading coefficient")).collect();
        }
        Ok(AlgExtension { base_vars, min_poly })
    }

    fn certify_irreducible(&self) -> Result<bool> {
        let cleared = self.cleared_min_poly();
        let a = self.nbase();
        let fac = factor_multivariate_q(&cleared)?;
        let mut positive = fac.factors_in(a);
        Ok(match (positive.next(), positive.next()) {
            (Some((g, 1)), None) => g.degree_in(a) as usize == self.degree(),
            _ => false,
        })
    }

    pub fn base_vars(&self) -> &[String] {
        &self.base_vars
    }

    pub fn nbase(&self) -> usize {
        self.base_vars.len()
    }

    pub fn degree(&self) -> usize {
        self.min_poly.len() - 1
    }

    /// Coefficients of `p_α`, low to high; the last one is 1.
    pub fn min_poly(&self) -> &[RatFn] {
        &self.min_poly
    }

    /// `p_α` with denominators cleared, as a polynomial in `t₁…t_k, a`.
    pub fn cleared_min_poly(&self) -> Poly {
        let k = self.nbase();
        let a = RatFn::var(k + 1, k);
        let mut acc = RatFn::zero(k + 1);
        for c in self.min_poly.iter().rev() {
            acc = &(&acc * &a) + &c.extend_vars(k + 1);
        }
        acc.num().clone()
    }

    /// `p_α` as an [`ExtPoly`] with base-field coefficients.
    pub fn min_poly_ext(&self) -> ExtPoly {
        ExtPoly::from_base(self, &self.min_poly)
    }

    fn reduce(&self, mut v: Vec<RatFn>) -> Vec<RatFn> {
        let d = self.degree();
        let k = self.nbase();
        for i in (d..v.len()).rev() {
            let c = std::mem::replace(&mut v[i], RatFn::zero(k));
            if c.is_zero() {
                continue;
            }
            for j in 0..d {
                if !self.min_poly[j].is_zero() {
                    v[i - d + j] = &v[i - d + j] - &(&c * &self.min_poly[j]);
                }
            }
        }
        v.resize(d, RatFn::zero(k));
        v
    }
}

/// `Σ coeffs[j]·α^j` with exactly `deg p_α` coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtElement {
    coeffs: Vec<RatFn>,
}

impl ExtElement {
    /// Reduces an arbitrary polynomial in `α` modulo `p_α`.
    pub fn from_coeffs(ext: &AlgExtension, coeffs: Vec<RatFn>) -> Self {
        ExtElement { coeffs: ext.reduce(coeffs) }
    }

    pub fn zero(ext: &AlgExtension) -> Self {
        Self::from_coeffs(ext, Vec::new())
    }

    pub fn one(ext: &AlgExtension) -> Self {
        Self::from_base(ext, RatFn::one(ext.nbase()))
    }

    pub fn from_base(ext: &AlgExtension, c: RatFn) -> Self {
        Self::from_coeffs(ext, vec![c])
    }

    pub fn from_i64(ext: &AlgExtension, c: i64) -> Self {
        Self::from_base(ext, RatFn::from_i64(ext.nbase(), c))
    }

    pub fn alpha(ext: &AlgExtension) -> Self {
        let k = ext.nbase();
        Self::from_coeffs(ext, vec![RatFn::zero(k), RatFn::one(k)])
    }

    pub fn coeffs(&self) -> &[RatFn] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The element as a base-field value when it has no `α` part.
    pub fn as_base(&self) -> Option<&RatFn> {
        self.coeffs[1..].iter().all(|c| c.is_zero()).then_some(&self.coeffs[0])
    }

    pub fn add(&self, other: &Self) -> Self {
        ExtElement { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        ExtElement { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect() }
    }

    pub fn neg(&self) -> Self {
        ExtElement { coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, c: &RatFn) -> Self {
        ExtElement { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn mul(&self, other: &Self, ext: &AlgExtension) -> Self {
        let k = ext.nbase();
        let d = ext.degree();
        let mut out = vec![RatFn::zero(k); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        Self::from_coeffs(ext, out)
    }

    /// Multiplication by `α`.
    pub fn mul_alpha(&self, ext: &AlgExtension) -> Self {
        let mut v = Vec::with_capacity(self.coeffs.len() + 1);
        v.push(RatFn::zero(ext.nbase()));
        v.extend(self.coeffs.iter().cloned());
        Self::from_coeffs(ext, v)
    }

    pub fn pow(&self, mut e: u32, ext: &AlgExtension) -> Self {
        let mut acc = Self::one(ext);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b, ext);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b, ext);
            }
        }
        acc
    }

    /// As a rational function in `t₁…t_k, a` (α at index `k`).
    pub fn to_ratfn(&self) -> RatFn {
        let k = self.coeffs[0].nvars();
        let a = RatFn::var(k + 1, k);
        self.coeffs.iter().rev().fold(RatFn::zero(k + 1), |acc, c| &(&acc * &a) + &c.extend_vars(k + 1))
    }

    pub fn display(&self, ext: &AlgExtension, alpha: &str) -> String {
        let mut names: Vec<&str> = ext.base_vars().iter().map(|s| s.as_str()).collect();
        names.push(alpha);
        format_ratfn(&self.to_ratfn(), &names)
    }
}

/// Inverse in `E[α]` by the extended Euclidean algorithm against `p_α`.
pub fn ext_invert(e: &ExtElement, ext: &AlgExtension) -> Result<ExtElement> {
    if e.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if let Some(c) = e.as_base() {
        return Ok(ExtElement::from_base(ext, c.inv()?));
    }
    let k = ext.nbase();
    let one = vec![RatFn::one(k)];
    let (mut r0, mut r1) = (ext.min_poly.clone(), trimmed(e.coeffs.clone()));
    let (mut s0, mut s1): (Vec<RatFn>, Vec<RatFn>) = (Vec::new(), one);
    while r1.len() > 1 {
        let (q, r) = rf_div_rem(&r0, &r1);
        let s = rf_sub(&s0, &rf_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    // r1 is a nonzero constant because p_α is irreducible
    if r1.is_empty() {
        return Err(Error::Invariant("element shares a factor with the minimal polynomial".into()));
    }
    let inv = r1[0].inv()?;
    Ok(ExtElement::from_coeffs(ext, s1.iter().map(|c| c * &inv).collect()))
}

fn trimmed(mut v: Vec<RatFn>) -> Vec<RatFn> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn rf_sub(a: &[RatFn], b: &[RatFn]) -> Vec<RatFn> {
    let k = a.first().or(b.first()).map(|c| c.nvars()).unwrap_or(0);
    let zero = RatFn::zero(k);
    trimmed((0..a.len().max(b.len())).map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero)).collect())
}

fn rf_mul(a: &[RatFn], b: &[RatFn]) -> Vec<RatFn> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let k = a[0].nvars();
    let mut out = vec![RatFn::zero(k); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    trimmed(out)
}

fn rf_div_rem(a: &[RatFn], b: &[RatFn]) -> (Vec<RatFn>, Vec<RatFn>) {
    let mut r = trimmed(a.to_vec());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let k = b[0].nvars();
    let db = b.len() - 1;
    let inv = b[db].inv().expect("nonzero leading coefficient");
    let mut q = vec![RatFn::zero(k); r.len() - db];
    for i in (0..q.len()).rev() {
        let c = &r[i + db] * &inv;
        if c.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            r[i + j] = &r[i + j] - &(&c * y);
        }
        q[i] = c;
    }
    (trimmed(q), trimmed(r))
}

/// Dense polynomial in `z` over `E[α]`, coefficients low to high, no
/// trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExtPoly {
    coeffs: Vec<ExtElement>,
}

impl ExtPoly {
    pub fn new(mut coeffs: Vec<ExtElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ExtPoly { coeffs }
    }

    pub fn zero() -> Self {
        ExtPoly { coeffs: Vec::new() }
    }

    pub fn one(ext: &AlgExtension) -> Self {
        ExtPoly { coeffs: vec![ExtElement::one(ext)] }
    }

    /// A polynomial with coefficients in the base field.
    pub fn from_base(ext: &AlgExtension, coeffs: &[RatFn]) -> Self {
        Self::new(coeffs.iter().map(|c| ExtElement::from_base(ext, c.clone())).collect())
    }

    /// `z − e`.
    pub fn linear(ext: &AlgExtension, root: &ExtElement) -> Self {
        Self::new(vec![root.neg(), ExtElement::one(ext)])
    }

    /// Reads a rational function in `t₁…t_k, a, z` whose denominator
    /// involves only the `t`.
    pub fn from_ratfn(ext: &AlgExtension, f: &RatFn) -> Result<Self> {
        let k = ext.nbase();
        assert_eq!(f.nvars(), k + 2);
        if f.den().uses_var(k) || f.den().uses_var(k + 1) {
            return Err(Error::Invariant("denominator involves the algebraic or main variable".into()));
        }
        let drop: Vec<usize> = (0..k + 2).map(|v| if v < k { v } else { 0 }).collect();
        let den = f.den().remap(k, &drop);
        let coeffs = f
            .num()
            .to_univariate(k + 1)
            .into_iter()
            .map(|cz| {
                let parts = cz
                    .to_univariate(k)
                    .into_iter()
                    .map(|c| RatFn::new(c.remap(k, &drop), den.clone()).expect("nonzero denominator"))
                    .collect();
                ExtElement::from_coeffs(ext, parts)
            })
            .collect();
        Ok(Self::new(coeffs))
    }

    /// As a rational function in `t₁…t_k, a, z`.
    pub fn to_ratfn(&self, ext: &AlgExtension) -> RatFn {
        let k = ext.nbase();
        let z = RatFn::var(k + 2, k + 1);
        self.coeffs
            .iter()
            .rev()
            .fold(RatFn::zero(k + 2), |acc, c| &(&acc * &z) + &c.to_ratfn().extend_vars(k + 2))
    }

    pub fn coeffs(&self) -> &[ExtElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; zero for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&ExtElement> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(|c| c.is_one())
    }

    pub fn add(&self, other: &Self, ext: &AlgExtension) -> Self {
        let zero = ExtElement::zero(ext);
        Self::new(
            (0..self.coeffs.len().max(other.coeffs.len()))
                .map(|i| self.coeffs.get(i).unwrap_or(&zero).add(other.coeffs.get(i).unwrap_or(&zero)))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self, ext: &AlgExtension) -> Self {
        let zero = ExtElement::zero(ext);
        Self::new(
            (0..self.coeffs.len().max(other.coeffs.len()))
                .map(|i| self.coeffs.get(i).unwrap_or(&zero).sub(other.coeffs.get(i).unwrap_or(&zero)))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self, ext: &AlgExtension) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![ExtElement::zero(ext); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b, ext));
                }
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &ExtElement, ext: &AlgExtension) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.mul(c, ext)).collect())
    }

    pub fn monic(&self, ext: &AlgExtension) -> Result<Self> {
        let lc = self.leading_coeff().ok_or(Error::ZeroPolynomial)?;
        if lc.is_one() {
            return Ok(self.clone());
        }
        Ok(self.scale(&ext_invert(lc, ext)?, ext))
    }

    pub fn div_rem(&self, d: &Self, ext: &AlgExtension) -> Result<(Self, Self)> {
        let lc = d.leading_coeff().ok_or(Error::DivisionByZero)?;
        let inv = ext_invert(lc, ext)?;
        let mut r = self.coeffs.clone();
        if r.len() < d.coeffs.len() {
            return Ok((Self::zero(), self.clone()));
        }
        let dd = d.coeffs.len() - 1;
        let mut q = vec![ExtElement::zero(ext); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = r[i + dd].mul(&inv, ext);
            if c.is_zero() {
                continue;
            }
            for (j, y) in d.coeffs.iter().enumerate() {
                r[i + j] = r[i + j].sub(&c.mul(y, ext));
            }
            q[i] = c;
        }
        Ok((Self::new(q), Self::new(r)))
    }

    pub fn rem(&self, d: &Self, ext: &AlgExtension) -> Result<Self> {
        Ok(self.div_rem(d, ext)?.1)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self, ext: &AlgExtension) -> Result<Self> {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b, ext)?;
            a = b;
            b = r;
        }
        if a.is_zero() {
            Ok(a)
        } else {
            a.monic(ext)
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, c)| c.scale(&RatFn::from_i64(c.coeffs()[0].nvars(), j as i64)))
                .collect(),
        )
    }

    pub fn is_squarefree(&self, ext: &AlgExtension) -> Result<bool> {
        Ok(self.gcd(&self.derivative(), ext)?.degree() == 0)
    }

    pub fn eval(&self, x: &ExtElement, ext: &AlgExtension) -> ExtElement {
        self.coeffs.iter().rev().fold(ExtElement::zero(ext), |acc, c| acc.mul(x, ext).add(c))
    }

    /// `f(z + c)`.
    pub fn shift(&self, c: &ExtElement, ext: &AlgExtension) -> Self {
        let lin = Self::new(vec![c.clone(), ExtElement::one(ext)]);
        self.coeffs.iter().rev().fold(Self::zero(), |acc, a| acc.mul(&lin, ext).add(&Self::new(vec![a.clone()]), ext))
    }

    /// Printed with `z` ordered before `α`.
    pub fn display(&self, ext: &AlgExtension, alpha: &str, z: &str) -> String {
        let k = ext.nbase();
        let mut names: Vec<&str> = ext.base_vars().iter().map(|s| s.as_str()).collect();
        names.push(z);
        names.push(alpha);
        let swap: Vec<usize> = (0..k + 2).map(|v| if v < k { v } else { 2 * k + 1 - v }).collect();
        format_ratfn(&self.to_ratfn(ext).remap(k + 2, &swap), &names)
    }
}

impl fmt::Debug for ExtPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter().map(|c| c.coeffs())).finish()
    }
}
