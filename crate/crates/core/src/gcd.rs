//! Multivariate gcd over ℚ by content recursion and subresultant
//! polynomial remainder sequences.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::monomial::Monomial;
use crate::{Poly, Rational};

/// Positive rational content: gcd of numerators over lcm of denominators.
pub fn integer_content(p: &Poly) -> Rational {
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for c in p.coeffs() {
        num = num.gcd(c.numer());
        den = den.lcm(c.denom());
    }
    if num.is_zero() {
        Rational::one()
    } else {
        Rational::new(num, den)
    }
}

/// Integer-coefficient primitive part with positive leading coefficient.
pub fn primitive_integer(p: &Poly) -> Poly {
    if p.is_zero() {
        return p.clone();
    }
    let mut c = integer_content(p);
    if p.leading_coeff().is_negative() {
        c = -c;
    }
    if c.is_one() {
        p.clone()
    } else {
        p.div_scalar(&c)
    }
}

/// Greatest common divisor normalized to leading coefficient one;
/// `gcd(0, 0) = 0`.
pub fn mpoly_gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    gcd_rec(a, b).monic()
}

pub fn mpoly_lcm(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() || b.is_zero() {
        return Poly::zero(a.nvars());
    }
    let g = mpoly_gcd(a, b);
    (a * &b.div_exact(&g).expect("gcd divides")).monic()
}

/// gcd of the coefficients of `p` viewed as a polynomial in `var`.
pub fn content_in(p: &Poly, var: usize) -> Poly {
    let mut coeffs: Vec<Poly> = p.to_univariate(var).into_iter().filter(|c| !c.is_zero()).collect();
    coeffs.sort_by_key(|c| (c.total_degree(), c.len()));
    let mut g = match coeffs.first() {
        Some(c) => primitive_integer(c),
        None => return Poly::zero(p.nvars()),
    };
    for c in &coeffs[1..] {
        if g.is_constant() {
            return Poly::one(p.nvars());
        }
        g = gcd_rec(&g, c);
    }
    g
}

/// Primitive part of `p` with respect to `var`.
pub fn primitive_part_in(p: &Poly, var: usize) -> Poly {
    let c = content_in(p, var);
    primitive_integer(&p.div_exact(&c).expect("content divides"))
}

fn min_exponents(p: &Poly) -> Monomial {
    let mut it = p.terms().iter();
    let first = it.next().expect("nonzero").0.clone();
    it.fold(first, |acc, (m, _)| acc.gcd(m))
}

/// gcd up to a nonzero rational factor; returned integer-primitive.
fn gcd_rec(a: &Poly, b: &Poly) -> Poly {
    let n = a.nvars();
    if a.is_zero() {
        return primitive_integer(b);
    }
    if b.is_zero() {
        return primitive_integer(a);
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one(n);
    }
    let ma = min_exponents(a);
    let mb = min_exponents(b);
    if a.is_monomial() || b.is_monomial() {
        return Poly::monomial(ma.gcd(&mb), Rational::one());
    }
    let mg = ma.gcd(&mb);
    if !ma.is_one() || !mb.is_one() {
        let a1 = a.div_exact(&Poly::monomial(ma, Rational::one())).expect("monomial divides");
        let b1 = b.div_exact(&Poly::monomial(mb, Rational::one())).expect("monomial divides");
        let g = gcd_rec(&a1, &b1);
        return &g * &Poly::monomial(mg, Rational::one());
    }
    let pa = primitive_integer(a);
    let pb = primitive_integer(b);
    if pa == pb {
        return pa;
    }
    // variables occurring in only one argument can be split off as content
    for v in 0..n {
        let (ua, ub) = (pa.uses_var(v), pb.uses_var(v));
        if ua && !ub {
            return gcd_rec(&content_in(&pa, v), &pb);
        }
        if ub && !ua {
            return gcd_rec(&pa, &content_in(&pb, v));
        }
    }
    let (small, large) = if (pa.total_degree(), pa.len()) <= (pb.total_degree(), pb.len()) {
        (&pa, &pb)
    } else {
        (&pb, &pa)
    };
    if large.div_exact(small).is_some() {
        return small.clone();
    }
    let var = (0..n)
        .filter(|&v| pa.uses_var(v))
        .min_by_key(|&v| (pa.degree_in(v).max(pb.degree_in(v)), v))
        .expect("nonconstant polynomials use a variable");
    let ca = content_in(&pa, var);
    let cb = content_in(&pb, var);
    let c = gcd_rec(&ca, &cb);
    let ppa = pa.div_exact(&ca).expect("content divides");
    let ppb = pb.div_exact(&cb).expect("content divides");
    let g = subresultant_gcd(&ppa, &ppb, var);
    primitive_integer(&(&c * &g))
}

type UPoly = Vec<Poly>;

fn trim(p: &mut UPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn deg(p: &UPoly) -> usize {
    p.len() - 1
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
fn prem(a: &UPoly, b: &UPoly) -> UPoly {
    let db = deg(b);
    let lcb = &b[db];
    let mut r = a.clone();
    let mut e = deg(a) as i64 - db as i64 + 1;
    while !r.is_empty() && deg(&r) >= db {
        let dr = deg(&r);
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c = &*c * lcb;
        }
        for (k, bc) in b.iter().enumerate() {
            let idx = dr - db + k;
            r[idx] = &r[idx] - &(&lr * bc);
        }
        trim(&mut r);
        e -= 1;
    }
    if e > 0 {
        let f = lcb.pow(e as u32);
        for c in r.iter_mut() {
            *c = &*c * &f;
        }
    }
    r
}

fn subresultant_gcd(a: &Poly, b: &Poly, var: usize) -> Poly {
    let n = a.nvars();
    let mut ua = a.to_univariate(var);
    let mut ub = b.to_univariate(var);
    if deg(&ua) < deg(&ub) {
        std::mem::swap(&mut ua, &mut ub);
    }
    let mut g = Poly::one(n);
    let mut h = Poly::one(n);
    loop {
        let delta = (deg(&ua) - deg(&ub)) as u32;
        let r = prem(&ua, &ub);
        if r.is_empty() {
            let res = Poly::from_univariate(var, n, &ub);
            return primitive_part_in(&res, var);
        }
        if deg(&r) == 0 {
            return Poly::one(n);
        }
        let divisor = &g * &h.pow(delta);
        ua = ub;
        ub = r
            .iter()
            .map(|c| c.div_exact(&divisor).expect("subresultant division is exact"))
            .collect();
        g = ua[deg(&ua)].clone();
        h = if delta == 0 {
            h
        } else {
            let num = g.pow(delta);
            num.div_exact(&h.pow(delta - 1)).expect("subresultant division is exact")
        };
    }
}
