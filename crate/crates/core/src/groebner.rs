//! Buchberger's algorithm over an exact field, with block orders for
//! elimination.
//!
//! Pairs are chosen by the normal strategy (smallest lcm of leading
//! monomials first) and pruned with the Gebauer–Möller installation of
//! Buchberger's two criteria. Every returned basis is reduced and monic, so
//! it is unique for the ideal and order.

use std::cmp::Ordering;

use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::MultiPoly;
use crate::scalar::Scalar;

/// An ideal given by generators in a ring with a fixed order.
#[derive(Clone, Debug)]
pub struct Ideal<S: Scalar> {
    nvars: usize,
    order: MonomialOrder,
    generators: Vec<MultiPoly<S>>,
}

impl<S: Scalar> Ideal<S> {
    pub fn new(nvars: usize, order: MonomialOrder, generators: Vec<MultiPoly<S>>) -> Self {
        assert!(generators.iter().all(|g| g.nvars() == nvars), "generator outside the ring");
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal { nvars, order, generators }
    }

    pub fn generators(&self) -> &[MultiPoly<S>] {
        &self.generators
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }
}

/// A Gröbner basis together with its order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis<S: Scalar> {
    nvars: usize,
    order: MonomialOrder,
    elements: Vec<MultiPoly<S>>,
    reduced: bool,
}

/// Terms sorted descending under a given order.
type OPoly<S> = Vec<(Monomial, S)>;

fn to_ordered<S: Scalar>(p: &MultiPoly<S>, order: &MonomialOrder) -> OPoly<S> {
    let mut t = p.terms().to_vec();
    t.sort_unstable_by(|a, b| order.cmp(&b.0, &a.0));
    t
}

fn from_ordered<S: Scalar>(nvars: usize, p: OPoly<S>) -> MultiPoly<S> {
    MultiPoly::from_terms(nvars, p)
}

/// `a - c * m * b`, both operands sorted under `order`.
fn sub_scaled<S: Scalar>(a: &[(Monomial, S)], c: &S, m: &Monomial, b: &[(Monomial, S)], order: &MonomialOrder) -> OPoly<S> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let shifted = |k: usize| (b[k].0.mul(m), b[k].1.clone() * c.clone());
    while i < a.len() && j < b.len() {
        let (bm, bc) = shifted(j);
        match order.cmp(&a[i].0, &bm) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((bm, -bc));
                j += 1;
            }
            Ordering::Equal => {
                let v = a[i].1.clone() - bc;
                if !v.is_zero() {
                    out.push((bm, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    while j < b.len() {
        let (bm, bc) = shifted(j);
        out.push((bm, -bc));
        j += 1;
    }
    out
}

fn make_monic<S: Scalar>(p: &mut OPoly<S>) {
    if let Some((_, c)) = p.first() {
        if !c.is_one() {
            let inv = c.inv();
            for t in p.iter_mut() {
                t.1 = t.1.clone() * inv.clone();
            }
        }
    }
}

/// Full reduction of `f` by monic polynomials `basis`.
fn reduce_full<S: Scalar>(f: OPoly<S>, basis: &[&OPoly<S>], order: &MonomialOrder) -> OPoly<S> {
    let mut p = f;
    let mut rem: OPoly<S> = Vec::new();
    while let Some((lm, lc)) = p.first().cloned() {
        let divisor = basis.iter().find_map(|g| g[0].0.div_of(&lm).map(|q| (g, q)));
        match divisor {
            Some((g, q)) => {
                p = sub_scaled(&p[1..], &lc, &q, &g[1..], order);
            }
            None => {
                rem.push((lm, lc));
                p.remove(0);
            }
        }
    }
    rem
}

fn spoly<S: Scalar>(f: &OPoly<S>, g: &OPoly<S>, order: &MonomialOrder) -> OPoly<S> {
    let l = f[0].0.lcm(&g[0].0);
    let mf = f[0].0.div_of(&l).expect("lcm");
    let mg = g[0].0.div_of(&l).expect("lcm");
    let a: OPoly<S> = f[1..].iter().map(|(m, c)| (m.mul(&mf), c.clone())).collect();
    sub_scaled(&a, &S::one(), &mg, &g[1..], order)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct Engine<S> {
    order: MonomialOrder,
    polys: Vec<OPoly<S>>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl<S: Scalar> Engine<S> {
    fn lm(&self, i: usize) -> &Monomial {
        &self.polys[i][0].0
    }

    fn active_refs(&self) -> Vec<&OPoly<S>> {
        self.polys.iter().zip(&self.active).filter(|(_, &a)| a).map(|(p, _)| p).collect()
    }

    /// Gebauer–Möller update after adding a new monic polynomial.
    fn insert(&mut self, h: OPoly<S>) {
        let hi = self.polys.len();
        self.polys.push(h);
        self.active.push(true);
        let lh = self.lm(hi).clone();
        let lcm_with = |e: &Self, g: usize| lh.lcm(e.lm(g));

        let mut c: Vec<usize> = (0..hi).filter(|&g| self.active[g]).collect();
        let mut d: Vec<usize> = Vec::new();
        while let Some(g1) = c.pop() {
            let l1 = lcm_with(self, g1);
            let coprime = lh.is_coprime(self.lm(g1));
            let dominated = c.iter().chain(d.iter()).any(|&g2| lcm_with(self, g2).divides(&l1));
            if coprime || !dominated {
                d.push(g1);
            }
        }
        let new_pairs: Vec<Pair> = d
            .into_iter()
            .filter(|&g| !lh.is_coprime(self.lm(g)))
            .map(|g| Pair { i: g, j: hi, lcm: lcm_with(self, g) })
            .collect();

        let old = std::mem::take(&mut self.pairs);
        self.pairs = old
            .into_iter()
            .filter(|p| {
                !(lh.divides(&p.lcm)
                    && lh.lcm(self.lm(p.i)) != p.lcm
                    && lh.lcm(self.lm(p.j)) != p.lcm)
            })
            .collect();
        self.pairs.extend(new_pairs);

        for g in 0..hi {
            if self.active[g] && lh.divides(self.lm(g)) {
                self.active[g] = false;
            }
        }
    }

    fn next_pair(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let order = &self.order;
        let best = (0..self.pairs.len())
            .min_by(|&a, &b| {
                let (pa, pb) = (&self.pairs[a], &self.pairs[b]);
                order.cmp(&pa.lcm, &pb.lcm).then((pa.j, pa.i).cmp(&(pb.j, pb.i)))
            })
            .expect("nonempty");
        Some(self.pairs.swap_remove(best))
    }

    /// Reduces `f` by the current basis and inserts it if nonzero. Returns
    /// `true` when the ideal became the unit ideal.
    fn add(&mut self, f: OPoly<S>) -> bool {
        let mut h = {
            let basis = self.active_refs();
            reduce_full(f, &basis, &self.order)
        };
        if h.is_empty() {
            return false;
        }
        make_monic(&mut h);
        let unit = h[0].0.is_one();
        self.insert(h);
        unit
    }

    fn run(&mut self) -> bool {
        while let Some(p) = self.next_pair() {
            let s = spoly(&self.polys[p.i], &self.polys[p.j], &self.order);
            if self.add(s) {
                return true;
            }
        }
        false
    }

    /// Minimal, interreduced, monic basis sorted by descending leading
    /// monomial.
    fn finish(self, nvars: usize) -> Vec<MultiPoly<S>> {
        let order = self.order;
        let mut min: Vec<OPoly<S>> = Vec::new();
        let mut cands: Vec<OPoly<S>> = self.polys.into_iter().zip(self.active).filter(|(_, a)| *a).map(|(p, _)| p).collect();
        cands.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0));
        for p in cands {
            if !min.iter().any(|q| q[0].0.divides(&p[0].0)) {
                min.push(p);
            }
        }
        let mut out = Vec::with_capacity(min.len());
        for i in 0..min.len() {
            let head = min[i][0].clone();
            let others: Vec<&OPoly<S>> = min.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, q)| q).collect();
            let mut tail = reduce_full(min[i][1..].to_vec(), &others, &order);
            tail.insert(0, head);
            make_monic(&mut tail);
            out.push(tail);
        }
        out.sort_by(|a, b| order.cmp(&b[0].0, &a[0].0));
        out.into_iter().map(|p| from_ordered(nvars, p)).collect()
    }
}

/// Reduced Gröbner basis of an ideal.
pub fn buchberger<S: Scalar>(ideal: &Ideal<S>) -> GroebnerBasis<S> {
    let mut inputs: Vec<OPoly<S>> = ideal.generators.iter().map(|g| to_ordered(g, &ideal.order)).collect();
    inputs.sort_by(|a, b| ideal.order.cmp(&a[0].0, &b[0].0));
    run_engine(ideal.nvars, ideal.order.clone(), Vec::new(), inputs)
}

fn run_engine<S: Scalar>(nvars: usize, order: MonomialOrder, seed: Vec<OPoly<S>>, inputs: Vec<OPoly<S>>) -> GroebnerBasis<S> {
    let mut engine = Engine { order: order.clone(), polys: Vec::new(), active: Vec::new(), pairs: Vec::new() };
    for g in seed {
        engine.polys.push(g);
        engine.active.push(true);
    }
    let mut unit = false;
    for f in inputs {
        if engine.add(f) {
            unit = true;
            break;
        }
    }
    if !unit {
        unit = engine.run();
    }
    let elements = if unit {
        vec![MultiPoly::one(nvars)]
    } else {
        engine.finish(nvars)
    };
    GroebnerBasis { nvars, order, elements, reduced: true }
}

impl<S: Scalar> GroebnerBasis<S> {
    pub fn elements(&self) -> &[MultiPoly<S>] {
        &self.elements
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn is_unit(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_one()
    }

    /// Leading term of an element under the basis order.
    pub fn leading_monomial(&self, i: usize) -> Monomial {
        to_ordered(&self.elements[i], &self.order)[0].0.clone()
    }

    /// Reduced basis of the ideal generated by `self` and `extra`. Pairs
    /// among the existing elements are known to reduce to zero and are not
    /// revisited.
    pub fn extend(&self, extra: &[MultiPoly<S>]) -> GroebnerBasis<S> {
        let seed: Vec<OPoly<S>> = self.elements.iter().map(|g| to_ordered(g, &self.order)).collect();
        let inputs: Vec<OPoly<S>> = extra.iter().filter(|g| !g.is_zero()).map(|g| to_ordered(g, &self.order)).collect();
        run_engine(self.nvars, self.order.clone(), seed, inputs)
    }

    /// Every S-polynomial of every pair reduces to zero.
    pub fn verify_s_pairs(&self) -> bool {
        let polys: Vec<OPoly<S>> = self.elements.iter().map(|g| {
            let mut p = to_ordered(g, &self.order);
            make_monic(&mut p);
            p
        }).collect();
        let refs: Vec<&OPoly<S>> = polys.iter().collect();
        for i in 0..polys.len() {
            for j in i + 1..polys.len() {
                let s = spoly(&polys[i], &polys[j], &self.order);
                if !reduce_full(s, &refs, &self.order).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    /// Checks the reducedness conditions: monic, and no term of any element
    /// divisible by the leading monomial of another.
    pub fn verify_reduced(&self) -> bool {
        let polys: Vec<OPoly<S>> = self.elements.iter().map(|g| to_ordered(g, &self.order)).collect();
        polys.iter().enumerate().all(|(i, p)| {
            p[0].1.is_one()
                && polys.iter().enumerate().all(|(j, q)| {
                    i == j || p.iter().all(|(m, _)| !q[0].0.divides(m))
                })
        })
    }
}

/// The unique remainder of `f` modulo the basis.
pub fn normal_form<S: Scalar>(f: &MultiPoly<S>, g: &GroebnerBasis<S>) -> MultiPoly<S> {
    let polys: Vec<OPoly<S>> = g.elements.iter().map(|e| {
        let mut p = to_ordered(e, &g.order);
        make_monic(&mut p);
        p
    }).collect();
    let refs: Vec<&OPoly<S>> = polys.iter().collect();
    from_ordered(g.nvars, reduce_full(to_ordered(f, &g.order), &refs, &g.order))
}

/// Generators of `ideal ∩ k[keep]`, expressed in the original ring.
pub fn eliminate<S: Scalar>(ideal: &Ideal<S>, keep: &[usize]) -> Vec<MultiPoly<S>> {
    let n = ideal.nvars;
    let elim: Vec<usize> = (0..n).filter(|v| !keep.contains(v)).collect();
    let kept: Vec<usize> = (0..n).filter(|v| keep.contains(v)).collect();
    // new position of each old variable: eliminated block first
    let mut to_new = vec![0; n];
    for (pos, &v) in elim.iter().chain(kept.iter()).enumerate() {
        to_new[v] = pos;
    }
    let mut to_old = vec![0; n];
    for (v, &pos) in to_new.iter().enumerate() {
        to_old[pos] = v;
    }
    let gens = ideal.generators.iter().map(|g| g.remap(n, &to_new)).collect();
    let gb = buchberger(&Ideal::new(n, MonomialOrder::BlockElimination(elim.len()), gens));
    gb.elements
        .iter()
        .filter(|p| (0..elim.len()).all(|v| !p.uses_var(v)))
        .map(|p| p.remap(n, &to_old))
        .collect()
}
