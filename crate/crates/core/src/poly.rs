//! Sparse multivariate polynomials over an exact [`Scalar`] field.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::monomial::{canonical_cmp, Monomial};
use crate::scalar::Scalar;

/// A polynomial in a fixed number of variables.
///
/// Terms are kept sorted by descending graded reverse lexicographic order
/// with no zero coefficients, so structural equality is mathematical
/// equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly<S> {
    nvars: usize,
    terms: Vec<(Monomial, S)>,
}

impl<S: Scalar> MultiPoly<S> {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: Vec::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, S::one())
    }

    pub fn constant(nvars: usize, c: S) -> Self {
        Self::monomial(Monomial::one(nvars), c)
    }

    pub fn from_i64(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, S::from_i64(c))
    }

    pub fn var(nvars: usize, var: usize) -> Self {
        Self::monomial(Monomial::var(nvars, var, 1), S::one())
    }

    pub fn monomial(m: Monomial, c: S) -> Self {
        let nvars = m.nvars();
        if c.is_zero() {
            Self::zero(nvars)
        } else {
            MultiPoly { nvars, terms: vec![(m, c)] }
        }
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, S)>>(nvars: usize, terms: I) -> Self {
        let mut acc: HashMap<Monomial, S> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), nvars);
            if c.is_zero() {
                continue;
            }
            match acc.get_mut(&m) {
                Some(v) => *v = v.clone() + c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Self::from_map(nvars, acc)
    }

    fn from_map(nvars: usize, acc: HashMap<Monomial, S>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| canonical_cmp(&b.0, &a.0));
        MultiPoly { nvars, terms }
    }

    /// Terms already sorted in canonical descending order without zeros.
    pub(crate) fn from_sorted(nvars: usize, terms: Vec<(Monomial, S)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| canonical_cmp(&w[0].0, &w[1].0).is_gt()));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        MultiPoly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, S)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, S)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    /// The value of a constant polynomial.
    pub fn constant_value(&self) -> Option<S> {
        match self.terms.as_slice() {
            [] => Some(S::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Leading term under the canonical (grevlex) order.
    pub fn leading_term(&self) -> Option<&(Monomial, S)> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> S {
        self.terms.first().map(|t| t.1.clone()).unwrap_or_else(S::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.total_degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exponent(var)).max().unwrap_or(0)
    }

    pub fn min_degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exponent(var)).min().unwrap_or(0)
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exponent(var) > 0)
    }

    pub fn used_vars(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&v| self.uses_var(v)).collect()
    }

    pub fn coefficient(&self, m: &Monomial) -> S {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(S::zero)
    }

    pub fn coeffs(&self) -> impl Iterator<Item = &S> {
        self.terms.iter().map(|(_, c)| c)
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.clone() * c.clone())).collect(),
        }
    }

    pub fn div_scalar(&self, c: &S) -> Self {
        self.scale(&c.inv())
    }

    /// Multiplies by the term `c * m`.
    pub fn mul_term(&self, m: &Monomial, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(t, a)| (t.mul(m), a.clone() * c.clone()))
                .collect(),
        }
    }

    /// Scales so that the leading coefficient is one (zero stays zero).
    pub fn monic(&self) -> Self {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.div_scalar(c),
        }
    }

    /// Divides out [`Scalar::primitive_scale`] of the coefficients.
    pub fn primitive_scaled(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let coeffs: Vec<S> = self.coeffs().cloned().collect();
        let c = S::primitive_scale(&coeffs);
        if c.is_one() {
            self.clone()
        } else {
            self.div_scalar(&c)
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> Self {
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let e = m.exponent(var);
            if e == 0 {
                return None;
            }
            let mut m = m.clone();
            m.set_exponent(var, e - 1);
            Some((m, c.clone() * S::from_i64(e as i64)))
        });
        Self::from_terms(self.nvars, terms)
    }

    /// Coefficients with respect to `var`: entry `k` is the coefficient of
    /// `var^k`, as a polynomial in the same ring not involving `var`.
    pub fn to_univariate(&self, var: usize) -> Vec<Self> {
        let d = self.degree_in(var) as usize;
        let mut buckets: Vec<Vec<(Monomial, S)>> = vec![Vec::new(); d + 1];
        for (m, c) in &self.terms {
            let e = m.exponent(var) as usize;
            let mut m = m.clone();
            m.set_exponent(var, 0);
            buckets[e].push((m, c.clone()));
        }
        if self.is_zero() {
            return Vec::new();
        }
        buckets
            .into_iter()
            .map(|terms| {
                // removing one variable from a sorted list can reorder it
                let mut terms = terms;
                terms.sort_unstable_by(|a, b| canonical_cmp(&b.0, &a.0));
                MultiPoly { nvars: self.nvars, terms }
            })
            .collect()
    }

    pub fn from_univariate(var: usize, nvars: usize, coeffs: &[Self]) -> Self {
        let terms = coeffs.iter().enumerate().flat_map(|(k, c)| {
            c.terms.iter().map(move |(m, a)| {
                let mut m = m.clone();
                m.set_exponent(var, m.exponent(var) + k as u32);
                (m, a.clone())
            })
        });
        Self::from_terms(nvars, terms)
    }

    /// Leading coefficient with respect to `var`.
    pub fn leading_coeff_in(&self, var: usize) -> Self {
        let d = self.degree_in(var);
        let terms = self.terms.iter().filter(|(m, _)| m.exponent(var) == d).map(|(m, c)| {
            let mut m = m.clone();
            m.set_exponent(var, 0);
            (m, c.clone())
        });
        Self::from_terms(self.nvars, terms)
    }

    /// Substitutes the constant `value` for `var`.
    pub fn eval_var(&self, var: usize, value: &S) -> Self {
        let d = self.degree_in(var) as usize;
        let mut powers = Vec::with_capacity(d + 1);
        powers.push(S::one());
        for k in 1..=d {
            powers.push(powers[k - 1].clone() * value.clone());
        }
        let terms = self.terms.iter().map(|(m, c)| {
            let e = m.exponent(var) as usize;
            let mut m = m.clone();
            m.set_exponent(var, 0);
            (m, c.clone() * powers[e].clone())
        });
        Self::from_terms(self.nvars, terms)
    }

    /// Evaluates at a full point.
    pub fn eval(&self, point: &[S]) -> S {
        debug_assert_eq!(point.len(), self.nvars);
        let mut acc = S::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    t = t * point[v].clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Substitutes `images[i]` for variable `i`; all images share a ring.
    pub fn substitute(&self, images: &[Self]) -> Self {
        assert_eq!(images.len(), self.nvars);
        let target = images.first().map(|p| p.nvars).unwrap_or(0);
        let mut cache: Vec<Vec<Self>> = images.iter().map(|p| vec![Self::one(p.nvars), p.clone()]).collect();
        let mut acc = Self::zero(target);
        for (m, c) in &self.terms {
            let mut t = Self::constant(target, c.clone());
            for (v, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let e = e as usize;
                while cache[v].len() <= e {
                    let next = &cache[v][cache[v].len() - 1] * &images[v];
                    cache[v].push(next);
                }
                t = &t * &cache[v][e];
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Moves variable `i` to `map[i]` in a ring with `nvars` variables.
    pub fn remap(&self, nvars: usize, map: &[usize]) -> Self {
        Self::from_terms(nvars, self.terms.iter().map(|(m, c)| (m.remap(nvars, map), c.clone())))
    }

    /// Embeds into a larger ring, keeping variable indices.
    pub fn extend_vars(&self, nvars: usize) -> Self {
        assert!(nvars >= self.nvars);
        let map: Vec<usize> = (0..self.nvars).collect();
        self.remap(nvars, &map)
    }

    pub fn map_coeffs<F: Fn(&S) -> S>(&self, f: F) -> Self {
        Self::from_terms(self.nvars, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Self::zero(self.nvars));
        }
        if let Some(c) = d.constant_value() {
            return Some(self.div_scalar(&c));
        }
        if d.is_monomial() {
            let (dm, dc) = &d.terms[0];
            let inv = dc.inv();
            let mut terms = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                terms.push((dm.div_of(m)?, c.clone() * inv.clone()));
            }
            return Some(Self::from_sorted(self.nvars, terms));
        }
        for v in 0..self.nvars {
            if d.degree_in(v) > self.degree_in(v) {
                return None;
            }
        }
        let (dm, dc) = &d.terms[0];
        let inv = dc.inv();
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.terms.first() {
            let qm = dm.div_of(m)?;
            let qc = c.clone() * inv.clone();
            rem = &rem - &d.mul_term(&qm, &qc);
            quot.push((qm, qc));
        }
        Some(Self::from_terms(self.nvars, quot))
    }

    /// Division with remainder by a polynomial monic in `var`, treating both
    /// as univariate in `var`.
    pub fn div_rem_monic_in(&self, d: &Self, var: usize) -> (Self, Self) {
        let dd = d.degree_in(var);
        let lc = d.leading_coeff_in(var);
        assert!(lc.is_one(), "divisor must be monic in the main variable");
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars);
        loop {
            let rd = rem.degree_in(var);
            if rem.is_zero() || rd < dd {
                break;
            }
            let shift = Monomial::var(self.nvars, var, rd - dd);
            let q = &rem.leading_coeff_in(var) * &Self::monomial(shift, S::one());
            rem = &rem - &(&q * d);
            quot = &quot + &q;
        }
        (quot, rem)
    }

    /// Keeps only terms whose total degree in `vars` is at most `max`.
    pub fn truncate_degree(&self, vars: &[usize], max: u32) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| vars.iter().map(|&v| m.exponent(v)).sum::<u32>() <= max)
            .cloned()
            .collect();
        MultiPoly { nvars: self.nvars, terms }
    }

    fn add_impl(&self, other: &Self, negate: bool) -> Self {
        assert_eq!(self.nvars, other.nvars, "polynomials from different rings");
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        let sign = |c: &S| if negate { -c.clone() } else { c.clone() };
        while i < a.len() && j < b.len() {
            match canonical_cmp(&a[i].0, &b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((b[j].0.clone(), sign(&b[j].1)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = a[i].1.clone() + sign(&b[j].1);
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), sign(c))));
        MultiPoly { nvars: self.nvars, terms: out }
    }

    fn mul_impl(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "polynomials from different rings");
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.nvars);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_term(m, c);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(m, c);
        }
        let mut acc: HashMap<Monomial, S> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca.clone() * cb.clone();
                match acc.get_mut(&m) {
                    Some(v) => *v = v.clone() + c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Self::from_map(self.nvars, acc)
    }
}

impl<S: Scalar> fmt::Debug for MultiPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({})", c)?;
            for (v, &e) in m.exponents().iter().enumerate() {
                if e == 1 {
                    write!(f, "*x{}", v)?;
                } else if e > 1 {
                    write!(f, "*x{}^{}", v, e)?;
                }
            }
        }
        Ok(())
    }
}

impl<'a, S: Scalar> Add<&'a MultiPoly<S>> for &'a MultiPoly<S> {
    type Output = MultiPoly<S>;
    fn add(self, rhs: &MultiPoly<S>) -> MultiPoly<S> {
        self.add_impl(rhs, false)
    }
}

impl<'a, S: Scalar> Sub<&'a MultiPoly<S>> for &'a MultiPoly<S> {
    type Output = MultiPoly<S>;
    fn sub(self, rhs: &MultiPoly<S>) -> MultiPoly<S> {
        self.add_impl(rhs, true)
    }
}

impl<'a, S: Scalar> Mul<&'a MultiPoly<S>> for &'a MultiPoly<S> {
    type Output = MultiPoly<S>;
    fn mul(self, rhs: &MultiPoly<S>) -> MultiPoly<S> {
        self.mul_impl(rhs)
    }
}

impl<S: Scalar> Neg for &MultiPoly<S> {
    type Output = MultiPoly<S>;
    fn neg(self) -> MultiPoly<S> {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl<S: Scalar> Add for MultiPoly<S> {
    type Output = MultiPoly<S>;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<S: Scalar> Sub for MultiPoly<S> {
    type Output = MultiPoly<S>;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl<S: Scalar> Mul for MultiPoly<S> {
    type Output = MultiPoly<S>;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<S: Scalar> Neg for MultiPoly<S> {
    type Output = MultiPoly<S>;
    fn neg(self) -> Self {
        -&self
    }
}
