//! Dense polynomials over 𝔽_p for word-size primes, with distinct-degree
//! and equal-degree (Cantor–Zassenhaus) factorization.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type FpPoly = Vec<u64>;

#[derive(Clone, Copy, Debug)]
pub struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        Fp { p }
    }

    pub fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn inv(self, a: u64) -> u64 {
        assert!(a != 0, "inverse of zero mod p");
        self.pow(a, self.p - 2)
    }

    pub fn reduce(self, c: &BigInt) -> u64 {
        c.mod_floor(&BigInt::from(self.p)).to_u64().expect("residue fits")
    }

    pub fn from_z(self, a: &[BigInt]) -> FpPoly {
        let mut out: FpPoly = a.iter().map(|c| self.reduce(c)).collect();
        trim(&mut out);
        out
    }

    pub fn scale(self, a: &[u64], c: u64) -> FpPoly {
        let mut out: FpPoly = a.iter().map(|&x| self.mul(x, c)).collect();
        trim(&mut out);
        out
    }

    pub fn monic(self, a: &[u64]) -> FpPoly {
        match a.last() {
            Some(&lc) => self.scale(a, self.inv(lc)),
            None => Vec::new(),
        }
    }

    pub fn add_poly(self, a: &[u64], b: &[u64]) -> FpPoly {
        let mut out: FpPoly = (0..a.len().max(b.len()))
            .map(|i| self.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        trim(&mut out);
        out
    }

    pub fn sub_poly(self, a: &[u64], b: &[u64]) -> FpPoly {
        let mut out: FpPoly = (0..a.len().max(b.len()))
            .map(|i| self.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        trim(&mut out);
        out
    }

    pub fn mul_poly(self, a: &[u64], b: &[u64]) -> FpPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let p = self.p as u128;
        let mut acc = vec![0u128; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                acc[i + j] = (acc[i + j] + x as u128 * y as u128) % p;
            }
        }
        let mut out: FpPoly = acc.into_iter().map(|c| c as u64).collect();
        trim(&mut out);
        out
    }

    pub fn div_rem(self, a: &[u64], b: &[u64]) -> (FpPoly, FpPoly) {
        assert!(!b.is_empty(), "division by zero polynomial mod p");
        let mut r = a.to_vec();
        trim(&mut r);
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let db = b.len() - 1;
        let inv = self.inv(b[db]);
        let mut q = vec![0u64; r.len() - db];
        for k in (0..q.len()).rev() {
            let c = self.mul(r[k + db], inv);
            if c == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                r[k + j] = self.sub(r[k + j], self.mul(c, y));
            }
            q[k] = c;
        }
        trim(&mut r);
        trim(&mut q);
        (q, r)
    }

    pub fn rem(self, a: &[u64], b: &[u64]) -> FpPoly {
        self.div_rem(a, b).1
    }

    pub fn gcd(self, a: &[u64], b: &[u64]) -> FpPoly {
        let (mut a, mut b) = (a.to_vec(), b.to_vec());
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// `(g, s, t)` with `s·a + t·b = g` monic.
    pub fn ext_gcd(self, a: &[u64], b: &[u64]) -> (FpPoly, FpPoly, FpPoly) {
        let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
        trim(&mut r0);
        trim(&mut r1);
        let (mut s0, mut s1): (FpPoly, FpPoly) = (vec![1], Vec::new());
        let (mut t0, mut t1): (FpPoly, FpPoly) = (Vec::new(), vec![1]);
        while !r1.is_empty() {
            let (q, r) = self.div_rem(&r0, &r1);
            let s = self.sub_poly(&s0, &self.mul_poly(&q, &s1));
            let t = self.sub_poly(&t0, &self.mul_poly(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        let inv = self.inv(*r0.last().expect("nonzero gcd"));
        (self.scale(&r0, inv), self.scale(&s0, inv), self.scale(&t0, inv))
    }

    pub fn derivative(self, a: &[u64]) -> FpPoly {
        let mut out: FpPoly = a.iter().enumerate().skip(1).map(|(k, &c)| self.mul(c, k as u64 % self.p)).collect();
        trim(&mut out);
        out
    }

    pub fn is_squarefree(self, a: &[u64]) -> bool {
        self.gcd(a, &self.derivative(a)).len() == 1
    }

    pub fn pow_mod(self, base: &[u64], mut e: u128, modulus: &[u64]) -> FpPoly {
        let mut acc: FpPoly = vec![1];
        let mut b = self.rem(base, modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.rem(&self.mul_poly(&acc, &b), modulus);
            }
            e >>= 1;
            if e > 0 {
                b = self.rem(&self.mul_poly(&b, &b), modulus);
            }
        }
        acc
    }

    /// Distinct-degree factorization of a monic squarefree polynomial:
    /// pairs `(g_d, d)` where `g_d` is the product of all irreducible factors
    /// of degree `d`.
    pub fn distinct_degree(self, f: &[u64]) -> Vec<(FpPoly, usize)> {
        let mut out = Vec::new();
        let mut f = f.to_vec();
        let x: FpPoly = vec![0, 1];
        let mut h = x.clone();
        let mut d = 0;
        while f.len() > 1 {
            d += 1;
            if 2 * d > f.len() - 1 {
                let deg = f.len() - 1;
                out.push((f, deg));
                break;
            }
            h = self.pow_mod(&h, self.p as u128, &f);
            let g = self.gcd(&f, &self.sub_poly(&h, &x));
            if g.len() > 1 {
                f = self.div_rem(&f, &g).0;
                h = self.rem(&h, &f);
                out.push((g, d));
            }
        }
        out
    }

    /// Number of irreducible factors of a monic squarefree polynomial.
    pub fn factor_count(self, f: &[u64]) -> usize {
        self.distinct_degree(f).iter().map(|(g, d)| (g.len() - 1) / d).sum()
    }

    /// Splits a product of irreducibles all of degree `d` (odd `p`).
    pub fn equal_degree(self, f: &[u64], d: usize, rng: &mut ChaCha8Rng) -> Vec<FpPoly> {
        let n = f.len() - 1;
        if n == d {
            return vec![f.to_vec()];
        }
        loop {
            let a: FpPoly = {
                let mut a: FpPoly = (0..n).map(|_| rng.gen_range(0..self.p)).collect();
                trim(&mut a);
                a
            };
            if a.len() <= 1 {
                continue;
            }
            // a^((p^d−1)/2) = (a · a^p · … · a^(p^(d−1)))^((p−1)/2)
            let mut frob = self.rem(&a, f);
            let mut norm = frob.clone();
            for _ in 1..d {
                frob = self.pow_mod(&frob, self.p as u128, f);
                norm = self.rem(&self.mul_poly(&norm, &frob), f);
            }
            let b = self.sub_poly(&self.pow_mod(&norm, (self.p as u128 - 1) / 2, f), &[1]);
            let g = self.gcd(f, &b);
            if g.len() > 1 && g.len() < f.len() {
                let h = self.div_rem(f, &g).0;
                let mut out = self.equal_degree(&g, d, rng);
                out.extend(self.equal_degree(&h, d, rng));
                return out;
            }
        }
    }

    /// Complete factorization of a monic squarefree polynomial into monic
    /// irreducibles, sorted by degree then coefficients.
    pub fn factor_squarefree(self, f: &[u64], rng: &mut ChaCha8Rng) -> Vec<FpPoly> {
        let mut out = Vec::new();
        for (g, d) in self.distinct_degree(f) {
            out.extend(self.equal_degree(&g, d, rng));
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }
}

pub fn trim(p: &mut FpPoly) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

/// Deterministic Miller–Rabin, exact for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let f = Fp::new(n);
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = f.pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = f.mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes in increasing order starting at `from`.
pub fn primes_from(from: u64) -> impl Iterator<Item = u64> {
    (from..).filter(|&n| is_prime(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(is_prime(2_147_483_647));
        assert!(!is_prime(2_147_483_649));
    }

    #[test]
    fn factors_mod_seven() {
        let f = Fp::new(7);
        // x^4 - 1 = (x-1)(x+1)(x^2+1) over F_7
        let poly: FpPoly = vec![6, 0, 0, 0, 1];
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let fs = f.factor_squarefree(&poly, &mut rng);
        assert_eq!(fs, vec![vec![1, 1], vec![6, 1], vec![1, 0, 1]]);
        assert_eq!(f.factor_count(&poly), 3);
        let prod = fs.iter().fold(vec![1], |acc, g| f.mul_poly(&acc, g));
        assert_eq!(prod, poly);
    }

    #[test]
    fn distinct_degree_of_irreducible() {
        let f = Fp::new(5);
        // x^2 + 2 is irreducible mod 5 (−2 = 3 is a non-residue)
        assert_eq!(f.distinct_degree(&[2, 0, 1]), vec![(vec![2, 0, 1], 2)]);
    }
}
