//! Lüroth generators from near-separated polynomials: the closure of a
//! transcendence-degree-one field and univariate decomposition.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::factor::factor_multivariate_q;
use crate::fieldops::{field_equal, transcendence_degree, FieldPresentation, TagSystem};
use crate::{Monomial, Poly, RatFn, Rational};

use super::normalize_generator;

/// `f = outer(inner)`, `outer` in one variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub outer: RatFn,
    pub inner: RatFn,
}

/// `num(f)(x)·den(f)(y) − num(f)(y)·den(f)(x)` with `x` the first `n` and
/// `y` the last `n` of `2n` variables.
pub fn near_separated(f: &RatFn) -> Poly {
    let n = f.nvars();
    let xs: Vec<usize> = (0..n).collect();
    let ys: Vec<usize> = (n..2 * n).collect();
    let (num, den) = (f.num(), f.den());
    &(&num.remap(2 * n, &xs) * &den.remap(2 * n, &ys)) - &(&num.remap(2 * n, &ys) * &den.remap(2 * n, &xs))
}

/// Products of subsets of the distinct irreducible factors of `f`,
/// smallest total degree first.
fn factor_products(f: &Poly) -> Result<Vec<Poly>> {
    let fs: Vec<Poly> = factor_multivariate_q(f)?.factors.into_iter().map(|(g, _)| g).collect();
    if fs.len() > 20 {
        return Err(Error::Invariant("too many factors in a near-separated polynomial".into()));
    }
    let mut out: Vec<Poly> = (1u32..(1 << fs.len()))
        .map(|mask| {
            fs.iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .fold(Poly::one(f.nvars()), |acc, (_, g)| &acc * g)
        })
        .collect();
    out.sort_by_key(|g| g.total_degree());
    Ok(out)
}

fn vanishes_on_diagonal(g: &Poly, n: usize) -> bool {
    let images: Vec<Poly> = (0..2 * n).map(|i| Poly::var(2 * n, i % n)).collect();
    g.substitute(&images).is_zero()
}

/// Reduced row echelon form; returns the nonzero rows.
fn rref(mut rows: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = Rational::one() / &rows[rank][c];
        for x in rows[rank].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && !row[c].is_zero() {
                let k = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = &*x - &(&k * y);
                }
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
    rows
}

/// When `g = c·(A(x)B(y) − A(y)B(x))`, the `y`-coefficients of `g` span
/// `⟨A, B⟩` and `A/B` is recovered; a polynomial representative is chosen
/// when the span contains the constants.
fn separated_generator(g: &Poly, n: usize) -> Option<RatFn> {
    let mut by_y: BTreeMap<Vec<u32>, Vec<(Monomial, Rational)>> = BTreeMap::new();
    for (m, c) in g.terms() {
        let e = m.exponents();
        by_y.entry(e[n..].to_vec()).or_default().push((Monomial::from_exponents(&e[..n]), c.clone()));
    }
    let mut monos: Vec<Monomial> = by_y.values().flatten().map(|(m, _)| m.clone()).collect();
    monos.sort();
    monos.dedup();
    let rows: Vec<Vec<Rational>> = by_y
        .values()
        .map(|terms| {
            let mut row = vec![Rational::zero(); monos.len()];
            for (m, c) in terms {
                row[monos.binary_search(m).expect("collected")] = c.clone();
            }
            row
        })
        .collect();
    let basis = rref(rows);
    if basis.len() != 2 {
        return None;
    }
    let to_poly = |row: &Vec<Rational>| {
        Poly::from_terms(n, monos.iter().cloned().zip(row.iter().cloned()).filter(|(_, c)| !c.is_zero()))
    };
    let (a, b) = (to_poly(&basis[0]), to_poly(&basis[1]));
    let one = Monomial::one(n);
    let constant_in_span = monos.binary_search(&one).is_ok_and(|i| {
        let unit: Vec<Rational> = (0..monos.len()).map(|j| if j == i { Rational::one() } else { Rational::zero() }).collect();
        rref(vec![basis[0].clone(), basis[1].clone(), unit]).len() == 2
    });
    let h = if constant_in_span {
        let p = if a.is_constant() { b } else { a };
        RatFn::from_poly(p)
    } else {
        RatFn::new(a, b).ok()?
    };
    if h.is_constant() {
        return None;
    }
    Some(normalize_generator(&h))
}

fn rational_degree(h: &RatFn) -> u32 {
    h.num().total_degree().max(h.den().total_degree())
}

/// A generator `h` of the algebraic closure of a transcendence-degree-one
/// field inside `ℚ(x)`. Candidates come from factors of the near-separated
/// polynomial of the first generator, smallest first, so the first `h`
/// containing every generator has no further decomposition.
pub fn luroth_closure(field: &FieldPresentation) -> Result<RatFn> {
    let trdeg = transcendence_degree(field);
    if trdeg != 1 {
        return Err(Error::TrdegNotOne(trdeg));
    }
    let n = field.nvars();
    if n == 1 {
        return Ok(RatFn::var(1, 0));
    }
    let f1 = &field.generators()[0];
    for g in factor_products(&near_separated(f1))? {
        if !vanishes_on_diagonal(&g, n) {
            continue;
        }
        let Some(h) = separated_generator(&g, n) else {
            continue;
        };
        let tags = TagSystem::new(&field.with_generators(vec![h.clone()])?);
        if field.generators().iter().all(|f| tags.is_member(f).0) {
            return Ok(h);
        }
    }
    Err(Error::Invariant("no Lüroth generator found".into()))
}

/// All decompositions `f = u(h)` with `2 ≤ deg h < deg f`, one per field
/// `ℚ(h)`, sorted by `deg u`.
pub fn decompose_univariate(f: &RatFn) -> Result<Vec<Decomposition>> {
    if f.is_constant() {
        return Err(Error::ConstantInput);
    }
    let nvars = f.nvars();
    let used: Vec<usize> = (0..nvars).filter(|&v| f.uses_var(v)).collect();
    if used.len() != 1 {
        return Err(Error::NotUnivariate);
    }
    let v = used[0];
    let f1 = f.remap(1, &vec![0; nvars]);
    let deg = rational_degree(&f1);
    let one_var = vec!["x".to_string()];
    let mut out: Vec<Decomposition> = Vec::new();
    let mut fields: Vec<FieldPresentation> = Vec::new();
    for g in factor_products(&near_separated(&f1))? {
        if !vanishes_on_diagonal(&g, 1) {
            continue;
        }
        let Some(h) = separated_generator(&g, 1) else {
            continue;
        };
        let dh = rational_degree(&h);
        if dh < 2 || dh >= deg || !deg.is_multiple_of(dh) {
            continue;
        }
        let k = FieldPresentation::new(one_var.clone(), vec![h.clone()])?;
        if fields.iter().any(|o| field_equal(o, &k)) {
            continue;
        }
        let (ok, w) = TagSystem::new(&k).is_member(&f1);
        let Some(w) = w.filter(|_| ok) else {
            continue;
        };
        let outer = w.expression;
        if outer.compose(std::slice::from_ref(&h))? != f1 {
            return Err(Error::Invariant("decomposition does not compose back".into()));
        }
        let inner = h.remap(nvars, &[v]);
        fields.push(k);
        out.push(Decomposition { outer, inner });
    }
    out.sort_by_key(|d| rational_degree(&d.outer));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::r;

    fn field(vars: &[&str], gens: &[&str]) -> FieldPresentation {
        let vs: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        FieldPresentation::new(vs, gens.iter().map(|g| r(g, vars)).collect()).unwrap()
    }

    #[test]
    fn closure_examples() {
        let v = ["x1", "x2"];
        assert_eq!(luroth_closure(&field(&v, &["(x1*x2)^2 + x1*x2"])).unwrap(), r("x1*x2", &v));
        assert_eq!(luroth_closure(&field(&v, &["x1 + x2"])).unwrap(), r("x1 + x2", &v));
        assert_eq!(luroth_closure(&field(&v, &["x1^2*x2^2"])).unwrap(), r("x1*x2", &v));
        assert_eq!(luroth_closure(&field(&["x"], &["x^3"])).unwrap(), r("x", &["x"]));
        assert!(matches!(luroth_closure(&field(&v, &["x1", "x2"])), Err(Error::TrdegNotOne(2))));
    }

    #[test]
    fn closure_with_several_generators_and_fractions() {
        let v = ["x1", "x2"];
        let h = luroth_closure(&field(&v, &["(x1/x2)^2", "(x1/x2)^3 + (x1/x2)^2"])).unwrap();
        let k = field(&v, &["x1/x2"]);
        assert!(field_equal(&k, &k.with_generators(vec![h]).unwrap()));
    }

    #[test]
    fn closure_idempotent() {
        let v = ["x1", "x2", "x3"];
        let f = field(&v, &["(x1 + x2*x3)^3 - 2*(x1 + x2*x3)"]);
        let h = luroth_closure(&f).unwrap();
        assert_eq!(h, r("x1 + x2*x3", &v));
        let again = luroth_closure(&f.with_generators(vec![h.clone()]).unwrap()).unwrap();
        assert!(field_equal(&f.with_generators(vec![h]).unwrap(), &f.with_generators(vec![again]).unwrap()));
    }

    fn show(ds: &[Decomposition]) -> Vec<(String, String)> {
        ds.iter()
            .map(|d| (crate::expr::format_ratfn(&d.outer, &["z"]), crate::expr::format_ratfn(&d.inner, &["x"])))
            .collect()
    }

    #[test]
    fn decomposition_examples() {
        let v = ["x"];
        let ds = decompose_univariate(&r("x^4 + 2*x^2", &v)).unwrap();
        assert_eq!(show(&ds), vec![("z^2 + 2*z".into(), "x^2".into())]);
        let ds = decompose_univariate(&r("x^6", &v)).unwrap();
        assert_eq!(show(&ds), vec![("z^2".into(), "x^3".into()), ("z^3".into(), "x^2".into())]);
        assert!(decompose_univariate(&r("x^2 + 1", &v)).unwrap().is_empty());
        assert!(matches!(decompose_univariate(&r("5", &v)), Err(Error::ConstantInput)));
    }

    #[test]
    fn decomposition_round_trip_rational() {
        let v = ["x"];
        let f = r("(x^4 + 1)/x^2", &v);
        let ds = decompose_univariate(&f).unwrap();
        assert!(!ds.is_empty());
        for d in &ds {
            assert_eq!(d.outer.compose(std::slice::from_ref(&d.inner)).unwrap(), f);
        }
        // equivalent decompositions are reported once
        let f = r("(x^2 + 1)^3", &v);
        let ds = decompose_univariate(&f).unwrap();
        assert_eq!(ds.len(), 1);
        assert_eq!(ds[0].inner, r("x^2", &v));
    }
}
