//! Univariate factorization over ℚ: squarefree decomposition, factoring
//! modulo a good prime, multifactor Hensel lifting and subset recombination.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::dense::{self, QPoly, ZPoly};
use super::modular::{primes_from, Fp, FpPoly};
use super::Factorization;
use crate::error::{Error, Result};
use crate::{Poly, Rational};

const PRIME_START: u64 = 1 << 30;
const PRIMES_TRIED: usize = 5;

/// Factors a polynomial in at most one variable into monic irreducibles
/// over ℚ times a constant.
pub fn factor_univariate_q(f: &Poly) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let used = f.used_vars();
    if used.len() > 1 {
        return Err(Error::NotUnivariate);
    }
    let nvars = f.nvars();
    let Some(&var) = used.first() else {
        return Ok(Factorization { constant: f.leading_coeff(), factors: Vec::new() });
    };
    let q = dense::from_poly(f, var);
    let factors: Vec<(Poly, u32)> = factor_dense(&q)
        .into_iter()
        .map(|(g, e)| (dense::to_poly(&g, var, nvars), e))
        .collect();
    Ok(Factorization { constant: q.last().expect("nonzero").clone(), factors })
}

/// Monic irreducible factors with multiplicities of a nonzero dense
/// polynomial, sorted by degree and then coefficients.
pub fn factor_dense(f: &[Rational]) -> Vec<(QPoly, u32)> {
    if dense::degree(f) == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (part, e) in dense::squarefree_decomposition(f) {
        for g in factor_squarefree_z(&dense::primitive_z(&part)) {
            out.push((dense::monic(&dense::z_to_q(&g)), e));
        }
    }
    out.sort_by(|(a, ea), (b, eb)| a.len().cmp(&b.len()).then_with(|| a.cmp(b)).then(ea.cmp(eb)));
    out
}

/// Irreducible factors of a primitive squarefree integer polynomial with
/// positive leading coefficient; each factor is primitive with positive
/// leading coefficient.
pub fn factor_squarefree_z(f: &[BigInt]) -> Vec<ZPoly> {
    let d = dense::degree(f);
    if d <= 1 {
        return vec![f.to_vec()];
    }
    // a factor x is split off so the trailing-coefficient test applies
    if f[0].is_zero() {
        let mut rest = factor_squarefree_z(&f[1..]);
        rest.push(vec![BigInt::zero(), BigInt::one()]);
        return rest;
    }
    let lc = f[d].clone();
    let mut best: Option<(usize, Fp)> = None;
    let mut good = 0;
    for p in primes_from(PRIME_START) {
        let fp = Fp::new(p);
        if fp.reduce(&lc) == 0 {
            continue;
        }
        let image = fp.monic(&fp.from_z(f));
        if !fp.is_squarefree(&image) {
            continue;
        }
        let count = fp.factor_count(&image);
        if count == 1 {
            return vec![f.to_vec()];
        }
        if best.is_none_or(|(c, _)| count < c) {
            best = Some((count, fp));
        }
        good += 1;
        if good == PRIMES_TRIED {
            break;
        }
    }
    let (_, fp) = best.expect("some prime is good");
    let mut rng = ChaCha8Rng::seed_from_u64(fp.p ^ (d as u64));
    let modular = fp.factor_squarefree(&fp.monic(&fp.from_z(f)), &mut rng);
    let bound = coefficient_bound(f);
    let (lifted, modulus) = hensel_lift(f, &modular, fp, &bound);
    recombine(f, lifted, &modulus)
}

/// `2·|lc|·2^d·‖f‖₂ + 1`: lifting past this recovers every factor of
/// `lc·f` from its symmetric residues.
fn coefficient_bound(f: &[BigInt]) -> BigInt {
    let d = dense::degree(f);
    let norm_sq: BigInt = f.iter().map(|c| c * c).sum();
    let norm = norm_sq.sqrt() + BigInt::one();
    BigInt::from(2) * f[d].abs() * (BigInt::one() << d) * norm + BigInt::one()
}

/// Multifactor linear Hensel lifting of `f ≡ lc·∏ g_i (mod p)` to a modulus
/// `p^k > bound`; returned factors are monic modulo `p^k`.
fn hensel_lift(f: &[BigInt], factors: &[FpPoly], fp: Fp, bound: &BigInt) -> (Vec<ZPoly>, BigInt) {
    let p = BigInt::from(fp.p);
    let r = factors.len();
    let lc = &f[dense::degree(f)];
    let lc_inv = fp.inv(fp.reduce(lc));
    // Σ s_i ∏_{j≠i} g_j ≡ 1 with s_i = (∏_{j≠i} g_j)^{-1} mod g_i
    let bezout: Vec<FpPoly> = (0..r)
        .map(|i| {
            let others = (0..r).filter(|&j| j != i).fold(vec![1u64], |acc, j| fp.rem(&fp.mul_poly(&acc, &factors[j]), &factors[i]));
            let (g, s, _) = fp.ext_gcd(&others, &factors[i]);
            debug_assert_eq!(g, vec![1]);
            fp.scale(&s, lc_inv)
        })
        .collect();
    let mut lifted: Vec<ZPoly> = factors.iter().map(|g| g.iter().map(|&c| BigInt::from(c)).collect()).collect();
    let mut m = p.clone();
    while &m <= bound {
        let prod = lifted.iter().fold(vec![lc.clone()], |acc, g| dense::z_mul(&acc, g));
        let mut err: ZPoly = (0..f.len().max(prod.len()))
            .map(|i| f.get(i).cloned().unwrap_or_default() - prod.get(i).cloned().unwrap_or_default())
            .collect();
        dense::trim(&mut err);
        for c in err.iter_mut() {
            debug_assert!((&*c % &m).is_zero());
            *c = &*c / &m;
        }
        let e = fp.from_z(&err);
        for (g, (s, gp)) in lifted.iter_mut().zip(bezout.iter().zip(factors)) {
            let delta = fp.rem(&fp.mul_poly(&e, s), gp);
            for (k, c) in delta.into_iter().enumerate() {
                g[k] += &m * BigInt::from(c);
            }
        }
        m *= &p;
    }
    (lifted, m)
}

pub(crate) fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut idx: Vec<usize> = (0..k).collect();
    let mut first = true;
    std::iter::from_fn(move || {
        if k > n {
            return None;
        }
        if first {
            first = false;
            return Some(idx.clone());
        }
        let mut i = k;
        while i > 0 {
            i -= 1;
            if idx[i] != i + n - k {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                return Some(idx.clone());
            }
        }
        None
    })
}

/// Subset recombination, smallest subsets first, with a trailing
/// coefficient pre-test.
fn recombine(f: &[BigInt], mut lifted: Vec<ZPoly>, m: &BigInt) -> Vec<ZPoly> {
    let mut out = Vec::new();
    let mut cur = f.to_vec();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let lc = cur[dense::degree(&cur)].clone();
        let tail = &lc * &cur[0];
        let mut found = None;
        for subset in combinations(lifted.len(), size) {
            let t0 = subset.iter().fold(lc.clone(), |acc, &i| dense::sym_mod(&(acc * &lifted[i][0]), m));
            if t0.is_zero() || !(&tail % &t0).is_zero() {
                continue;
            }
            let prod = subset.iter().fold(vec![lc.clone()], |acc, &i| {
                dense::z_mul(&acc, &lifted[i]).iter().map(|c| dense::sym_mod(c, m)).collect()
            });
            let g = dense::primitive_z(&dense::z_to_q(&prod));
            if let Some(q) = dense::z_div_exact(&cur, &g) {
                found = Some((subset, g, q));
                break;
            }
        }
        match found {
            Some((subset, g, q)) => {
                out.push(g);
                cur = q;
                for &i in subset.iter().rev() {
                    lifted.remove(i);
                }
            }
            None => size += 1,
        }
    }
    if dense::degree(&cur) > 0 {
        out.push(dense::primitive_z(&dense::z_to_q(&cur)));
    }
    out
}

/// Irreducibility certificate used by callers that only need a yes/no.
pub fn is_irreducible_q(f: &[Rational]) -> bool {
    let fs = factor_dense(f);
    fs.len() == 1 && fs[0].1 == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::p;

    fn fac(src: &str) -> Factorization {
        factor_univariate_q(&p(&[src], &["x"])[0]).unwrap()
    }

    fn show(f: &Factorization) -> Vec<(String, u32)> {
        f.factors.iter().map(|(g, e)| (crate::expr::format_poly(g, &["x"]), *e)).collect()
    }

    #[test]
    fn spec_examples() {
        let f = fac("x^4 - 4");
        assert_eq!(show(&f), vec![("x^2 - 2".to_string(), 1), ("x^2 + 2".to_string(), 1)]);
        assert_eq!(f.constant, Rational::one());
        let f = fac("x^2 + 1");
        assert_eq!(show(&f), vec![("x^2 + 1".to_string(), 1)]);
        let f = fac("6*x^2 - 6");
        assert_eq!(show(&f), vec![("x - 1".to_string(), 1), ("x + 1".to_string(), 1)]);
        assert_eq!(f.constant, Rational::from_integer(6.into()));
    }

    #[test]
    fn multiplicities_and_constants() {
        let src = "-3*(x - 1)^3*(2*x + 1)^2*x";
        let f = fac(src);
        assert_eq!(
            show(&f),
            vec![("x - 1".to_string(), 3), ("x".to_string(), 1), ("x + 1/2".to_string(), 2)]
        );
        assert_eq!(f.expand(), p(&[src], &["x"])[0]);
        assert!(matches!(factor_univariate_q(&Poly::zero(1)), Err(Error::ZeroPolynomial)));
        assert!(matches!(factor_univariate_q(&p(&["x*y"], &["x", "y"])[0]), Err(Error::NotUnivariate)));
    }

    #[test]
    fn swinnerton_dyer_style_recombination() {
        // minimal polynomial of √2 + √3: irreducible over ℚ, splits into
        // quadratics or linears modulo every prime
        let f = fac("x^4 - 10*x^2 + 1");
        assert_eq!(f.factors.len(), 1);
        let f = fac("(x^4 - 10*x^2 + 1)*(x^4 - 10*x^2 + 1 + x)");
        assert_eq!(f.factors.len(), 2);
    }

    #[test]
    fn cyclotomic_splitting() {
        let f = fac("x^12 - 1");
        let degs: Vec<usize> = f.factors.iter().map(|(g, _)| g.total_degree() as usize).collect();
        assert_eq!(degs, vec![1, 1, 2, 2, 2, 4]);
        assert_eq!(f.expand(), p(&["x^12 - 1"], &["x"])[0]);
    }

    #[test]
    fn large_degree_with_big_coefficients() {
        let src = "(x^5 + 1234567*x^2 - 89)*(x^7 - 3*x^6 + 99999*x + 5)*(x^3 - 2)";
        let f = fac(src);
        assert_eq!(f.factors.len(), 3);
        assert_eq!(f.expand(), p(&[src], &["x"])[0]);
    }
}
