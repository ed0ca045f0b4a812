//! Factorization over `E[α]` by norms: shift until the norm is squarefree,
//! factor the norm over `E`, and pull each factor back with a gcd.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::dense;
use super::extension::{AlgExtension, ExtElement, ExtPoly};
use super::factor_multivariate_q;
use super::modular::{primes_from, Fp};
use crate::error::{Error, Result};
use crate::gcd::integer_content;
use crate::ratfn::RatFn;
use crate::{Poly, Rational};

/// Shifts `0, 1, −1, 2, −2, …`.
fn shifts() -> impl Iterator<Item = i64> {
    (0i64..).map(|k| if k % 2 == 1 { (k + 1) / 2 } else { -(k / 2) })
}

/// Factors a squarefree `f` into monic irreducibles over `E[α]`, sorted by
/// degree and then by printed form.
pub fn trager_factor(f: &ExtPoly, ext: &AlgExtension) -> Result<Vec<ExtPoly>> {
    if f.degree() == 0 {
        return Err(Error::ConstantInput);
    }
    let f = f.monic(ext)?;
    if !f.is_squarefree(ext)? {
        return Err(Error::ExpectedSquarefree);
    }
    if f.degree() == 1 {
        return Ok(vec![f]);
    }
    let k = ext.nbase();
    for s in shifts() {
        let n = cleared_norm(&f, ext, s);
        if !squarefree_in_z(&n, k) {
            continue;
        }
        let shift = ExtElement::alpha(ext).scale(&RatFn::from_i64(k, s));
        let mut out = Vec::new();
        for (g, _) in factor_multivariate_q(&n)?.factors_in(k) {
            let h = shifted_mod(g, k, &shift, &f, ext)?;
            let c = f.gcd(&h, ext)?;
            if c.degree() > 0 {
                out.push(c);
            }
        }
        let prod = out.iter().fold(ExtPoly::one(ext), |acc, g| acc.mul(g, ext));
        if prod != f {
            return Err(Error::Invariant("norm factors do not reassemble the input".into()));
        }
        let alpha = "a";
        out.sort_by_cached_key(|g| (g.degree(), g.display(ext, alpha, "z")));
        return Ok(out);
    }
    unreachable!("the shift enumeration is infinite")
}

/// `g(z + c) mod f`, reading `g ∈ ℚ[t, z]` (z at index `k`) over `E`.
fn shifted_mod(g: &Poly, k: usize, c: &ExtElement, f: &ExtPoly, ext: &AlgExtension) -> Result<ExtPoly> {
    let drop: Vec<usize> = (0..=k).map(|v| if v < k { v } else { 0 }).collect();
    let coeffs: Vec<ExtElement> = g
        .to_univariate(k)
        .into_iter()
        .map(|cz| ExtElement::from_base(ext, RatFn::from_poly(cz.remap(k, &drop))))
        .collect();
    let lin = ExtPoly::new(vec![c.clone(), ExtElement::one(ext)]);
    let mut acc = ExtPoly::zero();
    for a in coeffs.iter().rev() {
        acc = acc.mul(&lin, ext).add(&ExtPoly::new(vec![a.clone()]), ext).rem(f, ext)?;
    }
    Ok(acc)
}

fn squarefree_in_z(n: &Poly, z: usize) -> bool {
    let others: Vec<usize> = n.used_vars().into_iter().filter(|&v| v != z).collect();
    let lc = n.leading_coeff_in(z);
    // a specialization that stays squarefree modulo a prime not dividing its
    // leading coefficient certifies the norm; when several points fail the
    // shift is skipped, which is always safe
    let mut tried = 0;
    for step in 1..=16i64 {
        let point: Vec<Rational> =
            others.iter().enumerate().map(|(i, _)| Rational::from_integer((step * (i as i64 + 2) + 1).into())).collect();
        let mut lcv = lc.clone();
        let mut img = n.clone();
        for (&v, a) in others.iter().zip(&point) {
            lcv = lcv.eval_var(v, a);
            img = img.eval_var(v, a);
        }
        if lcv.is_zero() {
            continue;
        }
        let zimg = dense::primitive_z(&dense::from_poly(&img, z));
        let lead = zimg.last().expect("nonzero").clone();
        let certified = primes_from(1 << 30).filter(|&p| Fp::new(p).reduce(&lead) != 0).take(2).any(|p| {
            let fp = Fp::new(p);
            fp.is_squarefree(&fp.monic(&fp.from_z(&zimg)))
        });
        if certified {
            return true;
        }
        tried += 1;
        if tried == 3 {
            break;
        }
    }
    false
}

/// `Res_a(P̃(a), F̃(z, a))` with denominators cleared, where `F̃` is
/// `f(z − s·α)` with `α ↦ a`. Variables: `t₁…t_k, z`.
fn cleared_norm(f: &ExtPoly, ext: &AlgExtension, s: i64) -> Poly {
    let (p, fz) = lifted_pair(f, ext, s);
    let k = ext.nbase();
    resultant_in(&p, &fz, k).remap(k + 1, &(0..k + 2).map(|v| if v <= k { v } else { k }).collect::<Vec<_>>())
}

/// `P̃(t, a)` and `F̃(t, a, z)` in the ring `t₁…t_k, a, z`.
fn lifted_pair(f: &ExtPoly, ext: &AlgExtension, s: i64) -> (Poly, Poly) {
    let p = ext.cleared_min_poly().extend_vars(ext.nbase() + 2);
    (p, shifted_rational(f, ext, s).num().clone())
}

/// `f(z − s·a)` as a rational function in `t₁…t_k, a, z`.
fn shifted_rational(f: &ExtPoly, ext: &AlgExtension, s: i64) -> RatFn {
    let k = ext.nbase();
    let n = k + 2;
    let a = RatFn::var(n, k);
    let z = RatFn::var(n, k + 1);
    let lin = &z - &a.scale(&Rational::from_integer(s.into()));
    let mut acc = RatFn::zero(n);
    for c in f.coeffs().iter().rev() {
        acc = &(&acc * &lin) + &c.to_ratfn().extend_vars(n);
    }
    acc
}

/// Exact norm `∏_σ σ(f)(z − s·σ(α))` as a polynomial in `z` over `E`,
/// coefficients low to high.
pub fn norm(f: &ExtPoly, ext: &AlgExtension, s: i64) -> Vec<RatFn> {
    let k = ext.nbase();
    let n = k + 2;
    let d = ext.degree();
    let p = ext.cleared_min_poly().extend_vars(n);
    let a = RatFn::var(n, k);
    let acc = shifted_rational(f, ext, s);
    // P̃ = c1·p_α and F̃ = c2·F, so Res(P̃, F̃) = c1^{deg F̃}·c2^{d}·Norm
    let pr = {
        let mut r = RatFn::zero(n);
        for c in ext.min_poly().iter().rev() {
            r = &(&r * &a) + &c.extend_vars(n);
        }
        r
    };
    let c1 = RatFn::new(p.clone(), Poly::one(n)).unwrap().checked_div(&pr).unwrap();
    let (num, den) = acc.into_parts();
    let c2 = RatFn::from_poly(den);
    let m = num.degree_in(k) as i32;
    let res = resultant_in(&p, &num, k);
    let scale = (&c1.pow(m).unwrap() * &c2.pow(d as i32).unwrap()).inv().expect("nonzero");
    let drop: Vec<usize> = (0..n).map(|v| if v < k { v } else { 0 }).collect();
    let scale = scale.remap(k, &drop);
    res.to_univariate(k + 1)
        .into_iter()
        .map(|c| &RatFn::from_poly(c.remap(k, &drop)) * &scale)
        .collect()
}

/// Resultant with respect to `var`, by evaluation at integer points and
/// Newton interpolation in the remaining variables. Formal degrees are the
/// degrees of `p` and `q` in `var`.
pub fn resultant_in(p: &Poly, q: &Poly, var: usize) -> Poly {
    let nvars = p.nvars();
    let (cp, ip) = integer_form(p);
    let (cq, iq) = integer_form(q);
    let dp = p.degree_in(var);
    let dq = q.degree_in(var);
    let others: Vec<usize> = (0..nvars).filter(|&v| v != var && (p.uses_var(v) || q.uses_var(v))).collect();
    let axes: Vec<(usize, Vec<i64>)> = others
        .iter()
        .map(|&v| {
            let bound = dq * p.degree_in(v) + dp * q.degree_in(v);
            (v, shifts().take(bound as usize + 1).collect())
        })
        .collect();
    let eval = |point: &[i64]| -> BigInt {
        let mut a = ip.clone();
        let mut b = iq.clone();
        for (&(v, _), &x) in axes.iter().zip(point) {
            let x = Rational::from_integer(x.into());
            a = a.eval_var(v, &x);
            b = b.eval_var(v, &x);
        }
        let a = coefficient_vector(&a, var, dp as usize);
        let b = coefficient_vector(&b, var, dq as usize);
        sylvester_det(&a, &b)
    };
    let r = interpolate(nvars, &axes, &mut Vec::new(), &eval);
    r.scale(&(cp.pow(dq as i32) * cq.pow(dp as i32)))
}

/// `p = c·P` with `P` integral and primitive.
fn integer_form(p: &Poly) -> (Rational, Poly) {
    let c = integer_content(p);
    (c.clone(), p.div_scalar(&c))
}

/// Integer coefficients of a univariate image, high to low, padded to
/// the formal degree.
fn coefficient_vector(p: &Poly, var: usize, formal: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); formal + 1];
    for (m, c) in p.terms() {
        debug_assert!(c.is_integer());
        out[formal - m.exponent(var) as usize] = c.to_integer();
    }
    out
}

fn sylvester_det(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let (m, n) = (a.len() - 1, b.len() - 1);
    let size = m + n;
    if size == 0 {
        return BigInt::one();
    }
    let mut rows = vec![vec![BigInt::zero(); size]; size];
    for i in 0..n {
        for (j, c) in a.iter().enumerate() {
            rows[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in b.iter().enumerate() {
            rows[n + i][i + j] = c.clone();
        }
    }
    det_bareiss(rows)
}

/// Fraction-free determinant.
pub fn det_bareiss(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut sign = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(piv) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return BigInt::zero();
        };
        if piv != k {
            a.swap(piv, k);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = v.div_floor(&prev);
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// Tensor-product Newton interpolation of integer values on a grid.
fn interpolate(nvars: usize, axes: &[(usize, Vec<i64>)], prefix: &mut Vec<i64>, eval: &dyn Fn(&[i64]) -> BigInt) -> Poly {
    let Some(((v, pts), rest)) = axes.split_first() else {
        return Poly::constant(nvars, Rational::from_integer(eval(prefix)));
    };
    let mut c: Vec<Poly> = pts
        .iter()
        .map(|&x| {
            prefix.push(x);
            let sub = interpolate(nvars, rest, prefix, eval);
            prefix.pop();
            sub
        })
        .collect();
    for j in 1..pts.len() {
        for i in (j..pts.len()).rev() {
            let diff = &c[i] - &c[i - 1];
            c[i] = diff.div_scalar(&Rational::from_integer((pts[i] - pts[i - j]).into()));
        }
    }
    let x = Poly::var(nvars, *v);
    let mut acc = c[pts.len() - 1].clone();
    for i in (0..pts.len() - 1).rev() {
        acc = &(&acc * &(&x - &Poly::from_i64(nvars, pts[i]))) + &c[i];
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{p, r};

    fn ext(vars: &[&str], coeffs: &[&str]) -> AlgExtension {
        AlgExtension::new(vars.iter().map(|s| s.to_string()).collect(), coeffs.iter().map(|c| r(c, vars)).collect())
            .unwrap()
    }

    fn show(fs: &[ExtPoly], e: &AlgExtension) -> Vec<String> {
        fs.iter().map(|g| g.display(e, "a", "z")).collect()
    }

    #[test]
    fn resultant_matches_known_values() {
        let v = ["x", "y"];
        let a = p(&["x^2 + y^2 - 1", "x - y"], &v);
        // Res_x(x² + y² − 1, x − y) = 2y² − 1
        assert_eq!(resultant_in(&a[0], &a[1], 0), p(&["2*y^2 - 1"], &v)[0]);
        let b = p(&["2*x^2 - 3", "x^3 - x + 5"], &["x"]);
        // Res(2x² − 3, x³ − x + 5) = 2³·∏ (r³ − r + 5) over r = ±√(3/2)
        assert_eq!(resultant_in(&b[0], &b[1], 0), p(&["197"], &["x"])[0]);
    }

    #[test]
    fn determinant_examples() {
        let m = |rows: &[&[i64]]| rows.iter().map(|r| r.iter().map(|&c| BigInt::from(c)).collect()).collect();
        assert_eq!(det_bareiss(m(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(det_bareiss(m(&[&[2, 3, 1], &[4, 1, -1], &[0, 5, 2]])), BigInt::from(10));
        assert_eq!(det_bareiss(m(&[&[1, 2], &[2, 4]])), BigInt::zero());
    }

    #[test]
    fn spec_examples() {
        let e = ext(&["t"], &["-t", "0", "1"]);
        let fs = trager_factor(&e.min_poly_ext(), &e).unwrap();
        assert_eq!(show(&fs, &e), vec!["z + a", "z - a"]);

        let q = ext(&[], &["-2", "0", "1"]);
        let fs = trager_factor(&q.min_poly_ext(), &q).unwrap();
        assert_eq!(show(&fs, &q), vec!["z + a", "z - a"]);

        let c = ext(&["t"], &["-t", "0", "0", "1"]);
        let fs = trager_factor(&c.min_poly_ext(), &c).unwrap();
        assert_eq!(show(&fs, &c), vec!["z - a", "z^2 + z*a + a^2"]);
    }

    #[test]
    fn linear_factor_counts() {
        for (coeffs, linear) in [
            (vec!["-t", "0", "1"], 2),
            (vec!["-t", "0", "0", "1"], 1),
            (vec!["-t", "0", "0", "0", "1"], 2),
            (vec!["1", "0", "-t", "0", "1"], 4),
        ] {
            let e = ext(&["t"], &coeffs);
            let f = e.min_poly_ext();
            let fs = trager_factor(&f, &e).unwrap();
            assert_eq!(fs.iter().filter(|g| g.degree() == 1).count(), linear);
            let prod = fs.iter().fold(ExtPoly::one(&e), |acc, g| acc.mul(g, &e));
            assert_eq!(prod, f);
            for g in fs.iter().filter(|g| g.degree() == 1) {
                let root = g.coeffs()[0].neg();
                assert!(f.eval(&root, &e).is_zero());
            }
        }
    }

    #[test]
    fn eighth_root_splitting() {
        let e = ext(&["t"], &["-t", "0", "0", "0", "0", "0", "0", "0", "1"]);
        let fs = trager_factor(&e.min_poly_ext(), &e).unwrap();
        let degs: Vec<usize> = fs.iter().map(|g| g.degree()).collect();
        assert_eq!(degs, vec![1, 1, 2, 4]);
    }

    #[test]
    fn non_squarefree_is_rejected() {
        let e = ext(&["t"], &["-t", "0", "1"]);
        let f = ExtPoly::from_ratfn(&e, &r("(z - a)^2", &["t", "a", "z"])).unwrap();
        assert_eq!(trager_factor(&f, &e), Err(Error::ExpectedSquarefree));
    }

    #[test]
    fn norm_of_linear_and_multiplicativity() {
        let e = ext(&["t"], &["-t", "0", "1"]);
        let v = ["t", "a", "z"];
        let lin = ExtPoly::from_ratfn(&e, &r("z - a", &v)).unwrap();
        assert_eq!(norm(&lin, &e, 0), vec![r("-t", &["t"]), RatFn::zero(1), RatFn::one(1)]);
        let f = ExtPoly::from_ratfn(&e, &r("z^2 + a*z/t + 1", &v)).unwrap();
        let g = ExtPoly::from_ratfn(&e, &r("3*z - a + t", &v)).unwrap();
        let nf = norm(&f, &e, 0);
        let ng = norm(&g, &e, 0);
        let nfg = norm(&f.mul(&g, &e), &e, 0);
        let prod = ExtPoly::from_base(&e, &nf).mul(&ExtPoly::from_base(&e, &ng), &e);
        assert_eq!(ExtPoly::from_base(&e, &nfg), prod);
    }

    #[test]
    fn rational_coefficient_extension() {
        // α = x + 1/x over t = x² + 1/x²: p = z² − t − 2 has roots ±α
        let e = ext(&["t"], &["-t - 2", "0", "1"]);
        let fs = trager_factor(&e.min_poly_ext(), &e).unwrap();
        assert_eq!(fs.len(), 2);
        let f = ExtPoly::from_ratfn(&e, &r("z^2 - 1/t", &["t", "a", "z"])).unwrap();
        assert_eq!(trager_factor(&f, &e).unwrap().len(), 1);
    }
}
