//! Operations on unirational fields ℚ(f₁,…,f_m) ⊆ ℚ(x₁,…,x_n).
//!
//! Algebraic relations are found with a *tag system*: fresh variables
//! y₁…y_m stand for the generators, an inverter `w` saturates away the
//! zeros of the denominators, and eliminating `x` and `w` leaves the ideal
//! of relations. A query element `g` gets its own tag `z`; the smallest
//! positive `z`-degree in the relation ideal is the degree of `g` over the
//! field, and a degree-one relation is a membership witness.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::groebner::{buchberger, GroebnerBasis, Ideal};
use crate::linalg::rank_fraction_free;
use crate::monomial::MonomialOrder;
use crate::ratfn::RatFn;
use crate::{Poly, Rational};

/// A unirational field given by generators over named ambient variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldPresentation {
    vars: Vec<String>,
    generators: Vec<RatFn>,
}

impl FieldPresentation {
    /// Drops constant generators; fails if none remain.
    pub fn new(vars: Vec<String>, generators: Vec<RatFn>) -> Result<Self> {
        assert!(generators.iter().all(|g| g.nvars() == vars.len()), "generator outside the ambient ring");
        let generators: Vec<RatFn> = generators.into_iter().filter(|g| !g.is_constant()).collect();
        if generators.is_empty() {
            return Err(Error::EmptyPresentation("all generators are constant"));
        }
        Ok(FieldPresentation { vars, generators })
    }

    /// The ambient field ℚ(x₁,…,x_n) itself.
    pub fn ambient(vars: Vec<String>) -> Self {
        let n = vars.len();
        let generators = (0..n).map(|i| RatFn::var(n, i)).collect();
        FieldPresentation { vars, generators }
    }

    /// Same ambient variables, different generators.
    pub fn with_generators(&self, generators: Vec<RatFn>) -> Result<Self> {
        Self::new(self.vars.clone(), generators)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_names(&self) -> Vec<&str> {
        self.vars.iter().map(|s| s.as_str()).collect()
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn generators(&self) -> &[RatFn] {
        &self.generators
    }

    pub fn ngens(&self) -> usize {
        self.generators.len()
    }
}

/// A rational expression in the tags y₁…y_m of a presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipWitness {
    pub expression: RatFn,
}

impl MembershipWitness {
    /// Substitutes the generators for the tags.
    pub fn evaluate(&self, field: &FieldPresentation) -> Result<RatFn> {
        self.expression.compose(field.generators())
    }
}

/// Monic polynomial in `z` whose coefficients are rational functions in the
/// tags y₁…y_m of a presentation; `coeffs[k]` multiplies `z^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalPolynomial {
    pub coeffs: Vec<RatFn>,
}

impl MinimalPolynomial {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficients with the generators substituted for the tags.
    pub fn coefficients_in(&self, field: &FieldPresentation) -> Result<Vec<RatFn>> {
        self.coeffs.iter().map(|c| c.compose(field.generators())).collect()
    }

    /// `p(g)` after substituting the generators; zero for the element the
    /// polynomial was computed for.
    pub fn evaluate_at(&self, g: &RatFn, field: &FieldPresentation) -> Result<RatFn> {
        let coeffs = self.coefficients_in(field)?;
        let mut acc = RatFn::zero(g.nvars());
        for c in coeffs.iter().rev() {
            acc = &(&acc * g) + c;
        }
        Ok(acc)
    }
}

/// Cached relation ideal for one presentation.
///
/// Ring layout: `x₁…x_n, w, w', z, y₁…y_m`, ordered by a block order that
/// eliminates `x, w, w'`. The relations are the generator relations and
/// `w·∏den_i − 1`; each query adds its own and runs from scratch, which is
/// far cheaper than extending the relation basis when `x` becomes `z`.
pub struct TagSystem {
    field: FieldPresentation,
    relations: Vec<Poly>,
    basis: OnceLock<GroebnerBasis<Rational>>,
    cache: Mutex<HashMap<RatFn, std::result::Result<MinimalPolynomial, Error>>>,
}

impl TagSystem {
    pub fn new(field: &FieldPresentation) -> Self {
        let n = field.nvars();
        let m = field.ngens();
        let total = n + 3 + m;
        let xmap: Vec<usize> = (0..n).collect();
        let mut gens = Vec::with_capacity(m + 1);
        let mut den_product = Poly::one(total);
        for (i, f) in field.generators().iter().enumerate() {
            let num = f.num().remap(total, &xmap);
            let den = f.den().remap(total, &xmap);
            let y = Poly::var(total, n + 3 + i);
            gens.push(&num - &(&y * &den));
            den_product = &den_product * &den;
        }
        if !den_product.is_constant() {
            gens.push(&(&Poly::var(total, n) * &den_product) - &Poly::one(total));
        }
        TagSystem { field: field.clone(), relations: gens, basis: OnceLock::new(), cache: Mutex::new(HashMap::new()) }
    }

    pub fn field(&self) -> &FieldPresentation {
        &self.field
    }

    fn order(&self) -> MonomialOrder {
        MonomialOrder::BlockElimination(self.field.nvars() + 2)
    }

    /// Gröbner basis of the relation ideal alone.
    pub fn basis(&self) -> &GroebnerBasis<Rational> {
        self.basis.get_or_init(|| {
            let total = self.field.nvars() + 3 + self.field.ngens();
            buchberger(&Ideal::new(total, self.order(), self.relations.clone()))
        })
    }

    /// Minimal polynomial of `g` over the field, or
    /// [`Error::Transcendental`].
    pub fn minimal_polynomial(&self, g: &RatFn) -> Result<MinimalPolynomial> {
        if let Some(hit) = self.cache.lock().expect("cache lock").get(g) {
            return hit.clone();
        }
        let res = self.compute_minimal_polynomial(g);
        self.cache.lock().expect("cache lock").insert(g.clone(), res.clone());
        res
    }

    fn compute_minimal_polynomial(&self, g: &RatFn) -> Result<MinimalPolynomial> {
        let n = self.field.nvars();
        let m = self.field.ngens();
        assert_eq!(g.nvars(), n, "element outside the ambient ring");
        if let Some(c) = g.constant_value() {
            return Ok(MinimalPolynomial { coeffs: vec![RatFn::constant(m, -c), RatFn::one(m)] });
        }
        if let Some(i) = self.field.generators().iter().position(|f| f == g) {
            return Ok(MinimalPolynomial { coeffs: vec![-&RatFn::var(m, i), RatFn::one(m)] });
        }
        let total = n + 3 + m;
        let xmap: Vec<usize> = (0..n).collect();
        let num = g.num().remap(total, &xmap);
        let den = g.den().remap(total, &xmap);
        let z = Poly::var(total, n + 2);
        let mut extra = vec![&(&z * &den) - &num];
        if !den.is_constant() {
            extra.push(&(&Poly::var(total, n + 1) * &den) - &Poly::one(total));
        }
        extra.extend(self.relations.iter().cloned());
        let ext = buchberger(&Ideal::new(total, self.order(), extra));

        // relations among z, y in the ring (z, y₁…y_m)
        let to_small: Vec<usize> = (0..total).map(|v| v.saturating_sub(n + 2)).collect();
        let relations: Vec<Poly> = ext
            .elements()
            .iter()
            .filter(|p| (0..n + 2).all(|v| !p.uses_var(v)))
            .map(|p| p.remap(m + 1, &to_small))
            .collect();
        let zgb = buchberger(&Ideal::new(m + 1, MonomialOrder::BlockElimination(1), relations));
        let best = zgb
            .elements()
            .iter()
            .filter(|p| p.degree_in(0) > 0)
            .min_by_key(|p| (p.degree_in(0), p.len()))
            .ok_or(Error::Transcendental)?;

        // coefficients in the tag ring y₁…y_m
        let ymap: Vec<usize> = std::iter::once(0).chain(0..m).collect();
        let parts: Vec<Poly> = best.to_univariate(0).into_iter().map(|c| c.remap(m, &ymap)).collect();
        let lead = parts.last().expect("positive degree").clone();
        let coeffs = parts
            .into_iter()
            .map(|c| RatFn::new(c, lead.clone()).expect("leading coefficient is nonzero"))
            .collect();
        Ok(MinimalPolynomial { coeffs })
    }

    /// Membership with a witness: `g` is in the field exactly when its
    /// minimal polynomial is linear.
    pub fn is_member(&self, g: &RatFn) -> (bool, Option<MembershipWitness>) {
        let m = self.field.ngens();
        if let Some(c) = g.constant_value() {
            return (true, Some(MembershipWitness { expression: RatFn::constant(m, c) }));
        }
        match self.minimal_polynomial(g) {
            Ok(p) if p.degree() == 1 => (true, Some(MembershipWitness { expression: -&p.coeffs[0] })),
            _ => (false, None),
        }
    }

    /// Degree of `g` over the field, `None` when transcendental.
    pub fn degree_of(&self, g: &RatFn) -> Option<usize> {
        self.minimal_polynomial(g).ok().map(|p| p.degree())
    }
}

/// Decides `f ∈ F`; on success the witness rewrites `f` in the generators.
pub fn is_member(f: &RatFn, field: &FieldPresentation) -> (bool, Option<MembershipWitness>) {
    TagSystem::new(field).is_member(f)
}

pub fn minimal_polynomial(g: &RatFn, field: &FieldPresentation) -> Result<MinimalPolynomial> {
    TagSystem::new(field).minimal_polynomial(g)
}

/// The Jacobian matrix `(∂f_i/∂x_j)` of a list of rational functions.
pub fn jacobian(gens: &[RatFn]) -> Vec<Vec<RatFn>> {
    gens.iter()
        .map(|f| (0..f.nvars()).map(|j| f.derivative(j)).collect())
        .collect()
}

/// Transcendence degree over ℚ: the rank of the Jacobian (characteristic 0).
pub fn transcendence_degree(field: &FieldPresentation) -> usize {
    rank_fraction_free(&jacobian(field.generators()))
}

/// Greedy maximal algebraically independent subset of the generators,
/// keeping `f_i` exactly when it raises the Jacobian rank.
pub fn select_transcendence_basis(field: &FieldPresentation) -> Vec<usize> {
    select_independent(field.generators())
}

pub fn select_independent(gens: &[RatFn]) -> Vec<usize> {
    let jac = jacobian(gens);
    let mut kept: Vec<usize> = Vec::new();
    let mut rows: Vec<Vec<RatFn>> = Vec::new();
    for (i, row) in jac.into_iter().enumerate() {
        rows.push(row);
        if rank_fraction_free(&rows) > kept.len() {
            kept.push(i);
        } else {
            rows.pop();
        }
    }
    kept
}

/// `F ⊆ G`: every generator of `F` is a member of `G`.
pub fn field_contains(f: &FieldPresentation, g: &FieldPresentation) -> bool {
    let tags = TagSystem::new(g);
    f.generators().iter().all(|h| tags.is_member(h).0)
}

pub fn field_equal(f: &FieldPresentation, g: &FieldPresentation) -> bool {
    field_contains(f, g) && field_contains(g, f)
}

/// Deterministic enumeration of nonzero integer vectors by increasing
/// max-norm, coordinates drawn from `0, 1, −1, 2, −2, …`, skipping vectors
/// whose first nonzero entry is negative (they give the same fields).
pub fn small_integer_vectors(len: usize) -> impl Iterator<Item = Vec<i64>> {
    let decode = |k: usize| -> i64 {
        if k == 0 {
            0
        } else if k % 2 == 1 {
            k.div_ceil(2) as i64
        } else {
            -((k / 2) as i64)
        }
    };
    (1usize..).flat_map(move |bound| {
        let width = 2 * bound + 1;
        let count = width.pow(len as u32);
        (0..count).filter_map(move |mut code| {
            let mut v = vec![0i64; len];
            for slot in v.iter_mut().rev() {
                *slot = decode(code % width);
                code /= width;
            }
            let max = v.iter().map(|c| c.unsigned_abs()).max().unwrap_or(0);
            let first = v.iter().find(|&&c| c != 0).copied().unwrap_or(0);
            (max as usize == bound && first > 0).then_some(v)
        })
    })
}

/// `[E(a₁,…,a_k) : E]` for `E = ℚ(base)`, as the product of the degrees of
/// each `a_i` over `E(a₁,…,a_{i−1})`.
pub fn tower_degree(vars: &[String], base: &[RatFn], elements: &[RatFn]) -> Result<usize> {
    let mut gens = base.to_vec();
    let mut degree = 1;
    for a in elements {
        let field = FieldPresentation::new(vars.to_vec(), gens.clone())?;
        degree *= TagSystem::new(&field).minimal_polynomial(a)?.degree();
        gens.push(a.clone());
    }
    Ok(degree)
}

/// A primitive element `β = Σ c_j a_j` and its minimal polynomial over `E`.
#[derive(Clone, Debug)]
pub struct PrimitiveElement {
    pub beta: RatFn,
    pub coefficients: Vec<i64>,
    pub minimal_polynomial: MinimalPolynomial,
    pub degree: usize,
}

/// Finds `β` with `E(β) = E(algebraics)` where `E = ℚ(e_basis)`, certified
/// by `deg minpoly(β) = [E(algebraics) : E]`.
pub fn primitive_element(vars: &[String], e_basis: &[RatFn], algebraics: &[RatFn]) -> Result<PrimitiveElement> {
    let base = FieldPresentation::new(vars.to_vec(), e_basis.to_vec())?;
    if select_independent(e_basis).len() != base.ngens() {
        return Err(Error::Invariant("primitive element base is not algebraically independent".into()));
    }
    let tags = TagSystem::new(&base);
    let n = base.nvars();
    let target = tower_degree(vars, base.generators(), algebraics)?;
    if algebraics.len() == 1 {
        let p = tags.minimal_polynomial(&algebraics[0])?;
        return Ok(PrimitiveElement { beta: algebraics[0].clone(), coefficients: vec![1], degree: p.degree(), minimal_polynomial: p });
    }
    for c in small_integer_vectors(algebraics.len()) {
        let beta = c
            .iter()
            .zip(algebraics)
            .fold(RatFn::zero(n), |acc, (&k, a)| &acc + &a.scale(&Rational::from_integer(k.into())));
        let p = tags.minimal_polynomial(&beta)?;
        if p.degree() == target {
            return Ok(PrimitiveElement { beta, coefficients: c, degree: target, minimal_polynomial: p });
        }
    }
    unreachable!("the enumeration is infinite")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::r;

    fn field(vars: &[&str], gens: &[&str]) -> FieldPresentation {
        let vs: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        FieldPresentation::new(vs, gens.iter().map(|g| r(g, vars)).collect()).unwrap()
    }

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn membership_examples() {
        let f = field(&["x"], &["x^2 + x", "x^2 - x"]);
        let x = r("x", &["x"]);
        let (ok, w) = is_member(&x, &f);
        assert!(ok);
        let w = w.unwrap();
        assert_eq!(w.expression, r("(y1 - y2)/2", &["y1", "y2"]));
        assert_eq!(w.evaluate(&f).unwrap(), x);

        let g = field(&["x"], &["x^2"]);
        assert!(!is_member(&x, &g).0);

        let (ok, w) = is_member(&f.generators()[0], &f);
        assert!(ok);
        assert_eq!(w.unwrap().expression, r("y1", &["y1", "y2"]));
    }

    #[test]
    fn membership_of_rational_expressions() {
        let f = field(&["x1", "x2"], &["x1 + x2", "x1*x2"]);
        let g = r("(x1^2 + x2^2)/(x1*x2 + 1)", &["x1", "x2"]);
        let (ok, w) = is_member(&g, &f);
        assert!(ok);
        assert_eq!(w.unwrap().evaluate(&f).unwrap(), g);
        assert!(!is_member(&r("x1", &["x1", "x2"]), &f).0);
    }

    #[test]
    fn transcendence_degree_examples() {
        assert_eq!(transcendence_degree(&field(&["x"], &["x^2"])), 1);
        assert_eq!(transcendence_degree(&field(&["x1", "x2"], &["x1^2", "x1*x2"])), 2);
        assert_eq!(transcendence_degree(&field(&["x1", "x2"], &["x1/x2", "x2/x1"])), 1);
    }

    #[test]
    fn basis_selection_examples() {
        assert_eq!(select_transcendence_basis(&field(&["x"], &["x^2", "x^3"])), vec![0]);
        assert_eq!(select_transcendence_basis(&field(&["x1", "x2"], &["x1^2", "x2^2"])), vec![0, 1]);
        assert_eq!(select_transcendence_basis(&field(&["x"], &["x + 1"])), vec![0]);
    }

    #[test]
    fn minimal_polynomial_examples() {
        let x = r("x", &["x"]);
        let p = minimal_polynomial(&x, &field(&["x"], &["x^2"])).unwrap();
        assert_eq!(p.coeffs, vec![r("-y1", &["y1"]), RatFn::zero(1), RatFn::one(1)]);
        let p = minimal_polynomial(&x, &field(&["x"], &["x^4"])).unwrap();
        assert_eq!(p.degree(), 4);
        assert_eq!(p.coeffs[0], r("-y1", &["y1"]));
        assert!(p.coeffs[1..4].iter().take(3).all(|c| c.is_zero()));
        let f = field(&["x1", "x2"], &["x1 + x2^2", "x2"]);
        let p = minimal_polynomial(&f.generators()[0], &f).unwrap();
        assert_eq!(p.coeffs, vec![r("-y1", &["y1", "y2"]), RatFn::one(2)]);
    }

    #[test]
    fn minimal_polynomial_vanishes_and_detects_transcendence() {
        let f = field(&["x1", "x2"], &["x1^2", "x2^2"]);
        let g = r("x1 + x2", &["x1", "x2"]);
        let p = minimal_polynomial(&g, &f).unwrap();
        assert_eq!(p.degree(), 4);
        assert!(p.evaluate_at(&g, &f).unwrap().is_zero());
        let h = field(&["x1", "x2"], &["x1"]);
        assert_eq!(minimal_polynomial(&g, &h), Err(Error::Transcendental));
    }

    #[test]
    fn rational_generator_minimal_polynomial() {
        let f = field(&["x"], &["x^2 + 1/x^2"]);
        let g = r("x + 1/x", &["x"]);
        let p = minimal_polynomial(&g, &f).unwrap();
        assert_eq!(p.degree(), 2);
        assert!(p.evaluate_at(&g, &f).unwrap().is_zero());
        let x = r("x", &["x"]);
        assert_eq!(minimal_polynomial(&x, &f).unwrap().degree(), 4);
    }

    #[test]
    fn tower_degrees_multiply() {
        let vars = names(&["x"]);
        let x = r("x", &["x"]);
        let x2 = r("x^2", &["x"]);
        let x6 = r("x^6", &["x"]);
        let d6 = tower_degree(&vars, std::slice::from_ref(&x6), std::slice::from_ref(&x)).unwrap();
        let d2 = tower_degree(&vars, std::slice::from_ref(&x2), &[x]).unwrap();
        let d3 = tower_degree(&vars, &[x6], &[x2]).unwrap();
        assert_eq!((d6, d2, d3), (6, 2, 3));
    }

    #[test]
    fn primitive_element_examples() {
        let vars = names(&["x"]);
        let pe = primitive_element(&vars, &[r("x^6", &["x"])], &[r("x^2", &["x"]), r("x^3", &["x"])]).unwrap();
        assert_eq!(pe.beta, r("x^2 + x^3", &["x"]));
        assert_eq!(pe.degree, 6);
        let pe = primitive_element(&vars, &[r("x^2", &["x"])], &[r("x", &["x"])]).unwrap();
        assert_eq!(pe.beta, r("x", &["x"]));
        assert_eq!(pe.minimal_polynomial.coeffs, vec![r("-t1", &["t1"]), RatFn::zero(1), RatFn::one(1)]);
        let v2 = ["x1", "x2"];
        let pe = primitive_element(&names(&v2), &[r("x1^2", &v2), r("x2^2", &v2)], &[r("x1 + x2", &v2)]).unwrap();
        assert_eq!(pe.degree, 4);
        let t = ["t1", "t2"];
        let expected = vec![r("(t1 - t2)^2", &t), RatFn::zero(2), r("-2*(t1 + t2)", &t), RatFn::zero(2), RatFn::one(2)];
        assert_eq!(pe.minimal_polynomial.coeffs, expected);
    }

    #[test]
    fn containment_examples() {
        let x4 = field(&["x"], &["x^4"]);
        let x2 = field(&["x"], &["x^2"]);
        let x3 = field(&["x"], &["x^3"]);
        assert!(field_contains(&x4, &x2));
        assert!(!field_contains(&x2, &x3));
        assert!(field_contains(&x2, &x2));
        assert!(!field_contains(&x2, &x4));
        assert!(field_equal(&field(&["x"], &["x^2 + 3"]), &x2));
    }

    #[test]
    fn integer_vector_enumeration_order() {
        let first: Vec<Vec<i64>> = small_integer_vectors(2).take(5).collect();
        assert_eq!(first, vec![vec![0, 1], vec![1, 0], vec![1, 1], vec![1, -1], vec![0, 2]]);
        assert_eq!(small_integer_vectors(1).take(3).collect::<Vec<_>>(), vec![vec![1], vec![2], vec![3]]);
    }
}
