//! Dense univariate polynomials over ℚ and ℤ, coefficients low to high.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::monomial::Monomial;
use crate::{Poly, Rational};

pub type QPoly = Vec<Rational>;
pub type ZPoly = Vec<BigInt>;

pub fn trim<T: Zero>(p: &mut Vec<T>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn degree<T>(p: &[T]) -> usize {
    p.len().saturating_sub(1)
}

pub fn from_poly(p: &Poly, var: usize) -> QPoly {
    let mut out = vec![Rational::zero(); p.degree_in(var) as usize + 1];
    for (m, c) in p.terms() {
        out[m.exponent(var) as usize] = c.clone();
    }
    trim(&mut out);
    out
}

pub fn to_poly(p: &[Rational], var: usize, nvars: usize) -> Poly {
    Poly::from_terms(
        nvars,
        p.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (Monomial::var(nvars, var, k as u32), c.clone())),
    )
}

pub fn add(a: &[Rational], b: &[Rational]) -> QPoly {
    let mut out: QPoly = (0..a.len().max(b.len()))
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => x + y,
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        })
        .collect();
    trim(&mut out);
    out
}

pub fn sub(a: &[Rational], b: &[Rational]) -> QPoly {
    let nb: QPoly = b.iter().map(|c| -c).collect();
    add(a, &nb)
}

pub fn mul(a: &[Rational], b: &[Rational]) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

pub fn scale(a: &[Rational], c: &Rational) -> QPoly {
    let mut out: QPoly = a.iter().map(|x| x * c).collect();
    trim(&mut out);
    out
}

pub fn monic(a: &[Rational]) -> QPoly {
    match a.last() {
        Some(lc) => scale(a, &lc.recip()),
        None => Vec::new(),
    }
}

pub fn derivative(a: &[Rational]) -> QPoly {
    let mut out: QPoly = a.iter().enumerate().skip(1).map(|(k, c)| c * Rational::from_integer(k.into())).collect();
    trim(&mut out);
    out
}

pub fn div_rem(a: &[Rational], b: &[Rational]) -> (QPoly, QPoly) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let db = b.len() - 1;
    let inv = b[db].recip();
    let mut q = vec![Rational::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = &r[k + db] * &inv;
        if c.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            r[k + j] -= &c * y;
        }
        q[k] = c;
    }
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

pub fn rem(a: &[Rational], b: &[Rational]) -> QPoly {
    div_rem(a, b).1
}

/// Monic gcd.
pub fn gcd(a: &[Rational], b: &[Rational]) -> QPoly {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(&a, &b);
        a = b;
        b = r;
    }
    monic(&a)
}

/// `(g, s, t)` with `s·a + t·b = g`, `g` monic.
pub fn ext_gcd(a: &[Rational], b: &[Rational]) -> (QPoly, QPoly, QPoly) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    trim(&mut r0);
    trim(&mut r1);
    let one = vec![Rational::one()];
    let (mut s0, mut s1): (QPoly, QPoly) = (one.clone(), Vec::new());
    let (mut t0, mut t1): (QPoly, QPoly) = (Vec::new(), one);
    while !r1.is_empty() {
        let (q, r) = div_rem(&r0, &r1);
        let s = sub(&s0, &mul(&q, &s1));
        let t = sub(&t0, &mul(&q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    match r0.last().cloned() {
        Some(lc) => {
            let inv = lc.recip();
            (scale(&r0, &inv), scale(&s0, &inv), scale(&t0, &inv))
        }
        None => (r0, s0, t0),
    }
}

pub fn is_squarefree(a: &[Rational]) -> bool {
    degree(&gcd(a, &derivative(a))) == 0
}

/// Yun's squarefree decomposition of a nonconstant polynomial: monic
/// pairwise coprime `(a_i, i)` with `a = lc · ∏ a_i^i`.
pub fn squarefree_decomposition(a: &[Rational]) -> Vec<(QPoly, u32)> {
    let mut out = Vec::new();
    let f = monic(a);
    let d = derivative(&f);
    let g = gcd(&f, &d);
    let mut c = div_rem(&f, &g).0;
    let mut w = sub(&div_rem(&d, &g).0, &derivative(&c));
    let mut i = 1;
    while degree(&c) > 0 {
        let h = gcd(&c, &w);
        c = div_rem(&c, &h).0;
        w = sub(&div_rem(&w, &h).0, &derivative(&c));
        if degree(&h) > 0 {
            out.push((h, i));
        }
        i += 1;
    }
    out
}

/// Clears denominators and divides by the content; the result has a
/// positive leading coefficient.
pub fn primitive_z(a: &[Rational]) -> ZPoly {
    let den = a.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut out: ZPoly = a.iter().map(|c| (c * Rational::from_integer(den.clone())).to_integer()).collect();
    let g = out.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let sign = out.last().is_some_and(|c| c.is_negative());
    for c in out.iter_mut() {
        *c = &*c / &g;
        if sign {
            *c = -&*c;
        }
    }
    out
}

pub fn z_to_q(a: &[BigInt]) -> QPoly {
    a.iter().map(|c| Rational::from_integer(c.clone())).collect()
}

pub fn z_mul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

/// Exact division over ℤ, `None` when `b ∤ a`.
pub fn z_div_exact(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    let mut r = a.to_vec();
    trim(&mut r);
    if r.is_empty() {
        return Some(Vec::new());
    }
    if r.len() < b.len() {
        return None;
    }
    let db = b.len() - 1;
    let lc = &b[db];
    let mut q = vec![BigInt::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let (c, rest) = r[k + db].div_rem(lc);
        if !rest.is_zero() {
            return None;
        }
        if c.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            r[k + j] -= &c * y;
        }
        q[k] = c;
    }
    r.iter().all(|c| c.is_zero()).then_some(q)
}

/// Symmetric residue in `(-m/2, m/2]`.
pub fn sym_mod(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}
