//! Multivariate factorization over ℚ by evaluation, univariate factoring
//! and multivariate Hensel lifting.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::dense::{self, QPoly};
use super::univariate::{combinations, factor_dense};
use super::Factorization;
use crate::error::{Error, Result};
use crate::gcd::{content_in, mpoly_gcd, primitive_integer, primitive_part_in};
use crate::monomial::Monomial;
use crate::{Poly, Rational};

/// Good evaluation points compared before committing to one.
const CANDIDATE_POINTS: usize = 3;

/// Factors `f` into irreducibles over ℚ. Factors are primitive with integer
/// coefficients and positive leading coefficient; the rational content goes
/// into the constant.
pub fn factor_multivariate_q(f: &Poly) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let prim = primitive_integer(f);
    let mut raw = Vec::new();
    factor_primitive(&prim, 1, &mut raw);
    let mut merged: Vec<(Poly, u32)> = Vec::new();
    for (g, e) in raw {
        let g = primitive_integer(&g);
        match merged.iter_mut().find(|(h, _)| *h == g) {
            Some((_, k)) => *k += e,
            None => merged.push((g, e)),
        }
    }
    merged.sort_by(|(a, ea), (b, eb)| sort_key(a).cmp(&sort_key(b)).then(ea.cmp(eb)));
    let expanded = merged.iter().fold(Poly::one(f.nvars()), |acc, (g, e)| &acc * &g.pow(*e));
    let constant = f.leading_coeff() / expanded.leading_coeff();
    debug_assert_eq!(&expanded.scale(&constant), f);
    Ok(Factorization { constant, factors: merged })
}

fn sort_key(p: &Poly) -> (u32, Vec<(Vec<u32>, Rational)>) {
    let terms = p.terms().iter().map(|(m, c)| (m.exponents().to_vec(), c.clone())).collect();
    (p.total_degree(), terms)
}

fn factor_primitive(f: &Poly, mult: u32, out: &mut Vec<(Poly, u32)>) {
    let n = f.nvars();
    let mut f = f.clone();
    for v in f.used_vars() {
        let e = f.min_degree_in(v);
        if e > 0 {
            out.push((Poly::var(n, v), e * mult));
            f = f.div_exact(&Poly::monomial(Monomial::var(n, v, e), Rational::one())).expect("monomial divides");
        }
    }
    if f.is_constant() {
        return;
    }
    let used = f.used_vars();
    if used.len() == 1 {
        let var = used[0];
        for (g, e) in factor_dense(&dense::from_poly(&f, var)) {
            out.push((dense::to_poly(&g, var, n), e * mult));
        }
        return;
    }
    let z = choose_main_var(&f);
    let c = content_in(&f, z);
    if !c.is_constant() {
        factor_primitive(&primitive_integer(&c), mult, out);
        f = f.div_exact(&c).expect("content divides");
    }
    for (g, k) in squarefree_in(&f, z) {
        for h in factor_squarefree_in(&g, z) {
            out.push((h, k * mult));
        }
    }
}

/// Prefers a variable in which `f` is monic, then the smallest degree.
fn choose_main_var(f: &Poly) -> usize {
    f.used_vars()
        .into_iter()
        .min_by_key(|&v| (!f.leading_coeff_in(v).is_constant(), f.degree_in(v), v))
        .expect("nonconstant polynomial")
}

/// Yun's algorithm in `z` for `f` primitive in `z`.
pub fn squarefree_in(f: &Poly, z: usize) -> Vec<(Poly, u32)> {
    let d = f.derivative(z);
    let g = mpoly_gcd(f, &d);
    if g.degree_in(z) == 0 {
        return vec![(f.clone(), 1)];
    }
    let mut out = Vec::new();
    let mut c = f.div_exact(&g).expect("gcd divides");
    let mut w = &d.div_exact(&g).expect("gcd divides") - &c.derivative(z);
    let mut i = 1;
    while c.degree_in(z) > 0 {
        let h = mpoly_gcd(&c, &w);
        c = c.div_exact(&h).expect("gcd divides");
        w = &w.div_exact(&h).expect("gcd divides") - &c.derivative(z);
        if h.degree_in(z) > 0 {
            out.push((h, i));
        }
        i += 1;
    }
    out
}

/// Integer points by increasing max-norm, coordinates from `0, 1, −1, 2, …`.
fn grid_points(len: usize) -> impl Iterator<Item = Vec<i64>> {
    let decode = |k: usize| -> i64 {
        if k % 2 == 1 {
            k.div_ceil(2) as i64
        } else {
            -((k / 2) as i64)
        }
    };
    std::iter::once(vec![0; len]).chain((1usize..).flat_map(move |bound| {
        let width = 2 * bound + 1;
        (0..width.pow(len as u32)).filter_map(move |mut code| {
            let mut v = vec![0i64; len];
            for slot in v.iter_mut().rev() {
                *slot = decode(code % width);
                code /= width;
            }
            (v.iter().map(|c| c.unsigned_abs()).max() == Some(bound as u64)).then_some(v)
        })
    }))
}

/// Irreducible factors of `g`, squarefree and primitive in `z`.
fn factor_squarefree_in(g: &Poly, z: usize) -> Vec<Poly> {
    let n = g.nvars();
    let d = g.degree_in(z);
    if d == 1 {
        return vec![g.clone()];
    }
    let svars: Vec<usize> = g.used_vars().into_iter().filter(|&v| v != z).collect();
    if svars.is_empty() {
        return factor_dense(&dense::from_poly(g, z)).into_iter().map(|(h, _)| dense::to_poly(&h, z, n)).collect();
    }

    // monic transform ℓ^{d−1}·g(z/ℓ)
    let lc = g.leading_coeff_in(z);
    let (f, ell) = match lc.constant_value() {
        Some(c) => (g.div_scalar(&c), None),
        None => {
            let coeffs = g.to_univariate(z);
            let mut powers = vec![Poly::one(n)];
            for k in 1..d as usize {
                powers.push(&powers[k - 1] * &lc);
            }
            let mut scaled: Vec<Poly> = coeffs[..d as usize]
                .iter()
                .enumerate()
                .map(|(k, c)| c * &powers[d as usize - 1 - k])
                .collect();
            scaled.push(Poly::one(n));
            (Poly::from_univariate(z, n, &scaled), Some(lc))
        }
    };

    let (point, images) = choose_point(&f, z, &svars);
    if images.len() == 1 {
        return vec![g.clone()];
    }

    let shift: Vec<Poly> = (0..n)
        .map(|v| match svars.iter().position(|&s| s == v) {
            Some(i) => &Poly::var(n, v) + &Poly::from_i64(n, point[i]),
            None => Poly::var(n, v),
        })
        .collect();
    let unshift: Vec<Poly> = (0..n)
        .map(|v| match svars.iter().position(|&s| s == v) {
            Some(i) => &Poly::var(n, v) - &Poly::from_i64(n, point[i]),
            None => Poly::var(n, v),
        })
        .collect();
    let shifted = f.substitute(&shift);
    let lifted = hensel_lift(&shifted, z, &svars, &images);
    recombine(&shifted, lifted)
        .into_iter()
        .map(|h| {
            let h = h.substitute(&unshift);
            let h = match &ell {
                Some(l) => {
                    let coeffs = h.to_univariate(z);
                    let mut pw = Poly::one(n);
                    let mut scaled = Vec::with_capacity(coeffs.len());
                    for c in coeffs {
                        scaled.push(&c * &pw);
                        pw = &pw * l;
                    }
                    primitive_part_in(&Poly::from_univariate(z, n, &scaled), z)
                }
                None => h,
            };
            primitive_integer(&h)
        })
        .collect()
}

fn eval_others(f: &Poly, z: usize, svars: &[usize], point: &[i64]) -> QPoly {
    let mut img = f.clone();
    for (&v, &a) in svars.iter().zip(point) {
        img = img.eval_var(v, &Rational::from_integer(a.into()));
    }
    dense::from_poly(&img, z)
}

/// Picks the squarefree image with the fewest univariate factors among the
/// first few good points; returns the point and the monic factors.
fn choose_point(f: &Poly, z: usize, svars: &[usize]) -> (Vec<i64>, Vec<QPoly>) {
    let mut best: Option<(Vec<i64>, Vec<QPoly>)> = None;
    let mut good = 0;
    for point in grid_points(svars.len()) {
        let img = eval_others(f, z, svars, &point);
        if !dense::is_squarefree(&img) {
            continue;
        }
        let factors: Vec<QPoly> = factor_dense(&img).into_iter().map(|(h, _)| h).collect();
        let done = factors.len() == 1;
        if best.as_ref().is_none_or(|(_, b)| factors.len() < b.len()) {
            best = Some((point, factors));
        }
        good += 1;
        if done || good == CANDIDATE_POINTS {
            break;
        }
    }
    best.expect("a squarefree polynomial has squarefree images")
}

fn s_degree(m: &Monomial, svars: &[usize]) -> usize {
    svars.iter().map(|&v| m.exponent(v) as usize).sum()
}

/// Homogeneous components in the `svars`, indexed by degree.
fn components(f: &Poly, svars: &[usize], max: usize) -> Vec<Poly> {
    let n = f.nvars();
    let mut buckets: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); max + 1];
    for (m, c) in f.terms() {
        let k = s_degree(m, svars);
        if k <= max {
            buckets[k].push((m.clone(), c.clone()));
        }
    }
    buckets.into_iter().map(|t| Poly::from_terms(n, t)).collect()
}

/// Product of component vectors truncated at degree `max`.
fn mul_components(a: &[Poly], b: &[Poly], max: usize) -> Vec<Poly> {
    let n = a[0].nvars();
    (0..=max)
        .map(|k| {
            (0..=k).fold(Poly::zero(n), |acc, i| match (a.get(i), b.get(k - i)) {
                (Some(x), Some(y)) if !x.is_zero() && !y.is_zero() => &acc + &(x * y),
                _ => acc,
            })
        })
        .collect()
}

/// Lifts `F(z, 0) = ∏ u_i` to `F ≡ ∏ G_i (mod ⟨s⟩^{D+1})`, with `D` the
/// total degree of `F` in the `svars`. Each factor is returned as its
/// homogeneous components.
fn hensel_lift(f: &Poly, z: usize, svars: &[usize], u: &[QPoly]) -> Vec<Vec<Poly>> {
    let n = f.nvars();
    let r = u.len();
    let top = f.terms().iter().map(|(m, _)| s_degree(m, svars)).max().unwrap_or(0);
    let fc = components(f, svars, top);
    let bezout: Vec<QPoly> = (0..r)
        .map(|i| {
            let others = (0..r).filter(|&j| j != i).fold(vec![Rational::one()], |acc, j| dense::rem(&dense::mul(&acc, &u[j]), &u[i]));
            let (g, s, _) = dense::ext_gcd(&others, &u[i]);
            debug_assert_eq!(g.len(), 1);
            s
        })
        .collect();
    let mut g: Vec<Vec<Poly>> = u
        .iter()
        .map(|ui| {
            let mut comps = vec![Poly::zero(n); top + 1];
            comps[0] = dense::to_poly(ui, z, n);
            comps
        })
        .collect();
    // prefix[i][k] = component k of G_0⋯G_i
    let mut prefix: Vec<Vec<Poly>> = vec![vec![Poly::zero(n); top + 1]; r];
    let prefix_comp = |prefix: &Vec<Vec<Poly>>, g: &Vec<Vec<Poly>>, i: usize, k: usize| -> Poly {
        if i == 0 {
            return g[0][k].clone();
        }
        (0..=k).fold(Poly::zero(n), |acc, j| {
            let (a, b) = (&prefix[i - 1][j], &g[i][k - j]);
            if a.is_zero() || b.is_zero() {
                acc
            } else {
                &acc + &(a * b)
            }
        })
    };
    for i in 0..r {
        prefix[i][0] = prefix_comp(&prefix, &g, i, 0);
    }
    debug_assert_eq!(prefix[r - 1][0], fc[0]);
    for k in 1..=top {
        for i in 0..r {
            prefix[i][k] = prefix_comp(&prefix, &g, i, k);
        }
        let err = &fc[k] - &prefix[r - 1][k];
        if err.is_zero() {
            continue;
        }
        let mut groups: BTreeMap<Vec<u32>, QPoly> = BTreeMap::new();
        for (m, c) in err.terms() {
            let mut key = m.clone();
            let e = key.exponent(z) as usize;
            key.set_exponent(z, 0);
            let entry = groups.entry(key.exponents().to_vec()).or_default();
            if entry.len() <= e {
                entry.resize(e + 1, Rational::zero());
            }
            entry[e] = c.clone();
        }
        for (key, ez) in groups {
            let mono = Monomial::from_exponents(&key);
            for i in 0..r {
                let delta = dense::rem(&dense::mul(&ez, &bezout[i]), &u[i]);
                if delta.is_empty() {
                    continue;
                }
                let term = dense::to_poly(&delta, z, n).mul_term(&mono, &Rational::one());
                g[i][k] = &g[i][k] + &term;
            }
        }
        for i in 0..r {
            prefix[i][k] = prefix_comp(&prefix, &g, i, k);
        }
        debug_assert_eq!(prefix[r - 1][k], fc[k]);
    }
    g
}

fn sum_components(c: &[Poly]) -> Poly {
    c.iter().fold(Poly::zero(c[0].nvars()), |acc, p| &acc + p)
}

/// Combines lifted factors into true factors of the monic `f`.
fn recombine(f: &Poly, mut lifted: Vec<Vec<Poly>>) -> Vec<Poly> {
    let top = lifted[0].len() - 1;
    let mut out = Vec::new();
    let mut cur = f.clone();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut found = None;
        for subset in combinations(lifted.len(), size) {
            let mut prod = lifted[subset[0]].clone();
            for &i in &subset[1..] {
                prod = mul_components(&prod, &lifted[i], top);
            }
            let cand = sum_components(&prod);
            if let Some(q) = cur.div_exact(&cand) {
                found = Some((subset, cand, q));
                break;
            }
        }
        match found {
            Some((subset, cand, q)) => {
                out.push(cand);
                cur = q;
                for &i in subset.iter().rev() {
                    lifted.remove(i);
                }
            }
            None => size += 1,
        }
    }
    if !cur.is_constant() {
        out.push(cur);
    }
    out
}
