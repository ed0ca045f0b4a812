//! Exact linear algebra over rational function fields.

use crate::gcd::mpoly_lcm;
use crate::ratfn::RatFn;
use crate::Poly;

/// Rank of a matrix of rational functions over ℚ(x), by fraction-free
/// (Bareiss) elimination on the row-wise denominator-cleared matrix.
pub fn rank_fraction_free(m: &[Vec<RatFn>]) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut a: Vec<Vec<Poly>> = m
        .iter()
        .map(|row| {
            assert_eq!(row.len(), cols, "ragged matrix");
            let nv = row.first().map(|r| r.nvars()).unwrap_or(0);
            let l = row.iter().fold(Poly::one(nv), |acc, r| mpoly_lcm(&acc, r.den()));
            row.iter()
                .map(|r| &r.num().clone() * &l.div_exact(r.den()).expect("lcm is a multiple"))
                .collect()
        })
        .collect();
    bareiss_rank(&mut a)
}

/// Rank of a polynomial matrix by Bareiss elimination; `a` is consumed as
/// scratch space.
pub fn bareiss_rank(a: &mut [Vec<Poly>]) -> usize {
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let nv = a.iter().flatten().next().map(|p| p.nvars()).unwrap_or(0);
    let mut prev = Poly::one(nv);
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, piv);
        for i in rank + 1..rows {
            for j in col + 1..cols {
                let v = &(&a[rank][col] * &a[i][j]) - &(&a[i][col] * &a[rank][j]);
                a[i][j] = v.div_exact(&prev).expect("Bareiss division is exact");
            }
            a[i][col] = Poly::zero(nv);
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{arb_poly, r};
    use proptest::prelude::*;

    fn mat(rows: &[&[&str]], vars: &[&str]) -> Vec<Vec<RatFn>> {
        rows.iter().map(|row| row.iter().map(|s| r(s, vars)).collect()).collect()
    }

    #[test]
    fn rank_examples() {
        let v = ["x1", "x2"];
        assert_eq!(rank_fraction_free(&mat(&[&["2*x1", "0"], &["x2", "x1"]], &v)), 2);
        assert_eq!(rank_fraction_free(&mat(&[&["1", "1"], &["2*(x1+x2)", "2*(x1+x2)"]], &v)), 1);
        assert_eq!(rank_fraction_free(&mat(&[&["0", "0"], &["0", "0"]], &v)), 0);
        assert_eq!(rank_fraction_free(&mat(&[&["1/x1", "1/x2"], &["x2", "x1"]], &v)), 1);
    }

    /// Independent rank oracle: the largest k with a nonzero k×k minor,
    /// minors expanded by cofactors.
    fn det(m: &[Vec<RatFn>]) -> RatFn {
        let n = m.len();
        let nv = m[0][0].nvars();
        if n == 1 {
            return m[0][0].clone();
        }
        let mut acc = RatFn::zero(nv);
        for j in 0..n {
            let minor: Vec<Vec<RatFn>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, v)| v.clone()).collect())
                .collect();
            let t = &m[0][j] * &det(&minor);
            acc = if j % 2 == 0 { &acc + &t } else { &acc - &t };
        }
        acc
    }

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        (0u32..1 << n)
            .filter(|s| s.count_ones() as usize == k)
            .map(|s| (0..n).filter(|i| s & (1 << i) != 0).collect())
            .collect()
    }

    fn brute_rank(m: &[Vec<RatFn>]) -> usize {
        let (r, c) = (m.len(), m[0].len());
        for k in (1..=r.min(c)).rev() {
            for rs in subsets(r, k) {
                for cs in subsets(c, k) {
                    let sub: Vec<Vec<RatFn>> =
                        rs.iter().map(|&i| cs.iter().map(|&j| m[i][j].clone()).collect()).collect();
                    if !det(&sub).is_zero() {
                        return k;
                    }
                }
            }
        }
        0
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn rank_agrees_with_minors(entries in prop::collection::vec(arb_poly(2, 1, 2), 16),
                                   rows in 1usize..5, cols in 1usize..5, dup in any::<bool>()) {
            let mut m: Vec<Vec<RatFn>> = (0..rows)
                .map(|i| (0..cols).map(|j| RatFn::from_poly(entries[i * 4 + j].clone())).collect())
                .collect();
            if dup && rows > 1 {
                // force a dependency: last row = first row + second-to-last row
                let last: Vec<RatFn> = (0..cols).map(|j| &m[0][j] + &m[rows - 2][j]).collect();
                m[rows - 1] = last;
            }
            prop_assert_eq!(rank_fraction_free(&m), brute_rank(&m));
        }
    }
}
