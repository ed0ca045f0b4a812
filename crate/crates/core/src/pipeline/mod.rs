//! End-to-end intermediate-field search for an algebraic extension
//! `ℚ(f₁,…,f_m) ⊂ ℚ(x₁,…,x_n)`, plus the transcendence-degree-one closure
//! and univariate decomposition.

mod luroth;

pub use luroth::{decompose_univariate, luroth_closure, near_separated, Decomposition};

use crate::error::{Error, Result};
use crate::expr::format_ratfn;
use crate::factor::{ext_invert, factor_multivariate_q, AlgExtension, ExtElement, ExtPoly};
use crate::fieldops::{
    field_contains, primitive_element, select_transcendence_basis, small_integer_vectors, tower_degree,
    transcendence_degree, FieldPresentation, TagSystem,
};
use crate::gcd::mpoly_lcm;
use crate::subfields::{field_span, find_intermediate_fields_from, DEFAULT_BLOCK_CAP};
use crate::{Poly, RatFn, Rational};
use num_traits::One;

/// The extension rewritten as `E ⊆ F ⊆ E[α] = ℚ(x)` with
/// `E = ℚ(t₁,…,t_n)`, `t_j ↦ transc_basis[j]`.
pub struct RewriteResult {
    pub field: FieldPresentation,
    pub transc_indices: Vec<usize>,
    pub transc_basis: Vec<RatFn>,
    /// `β` with `F = E(β)`; `None` when `F = E`.
    pub bottom_primitive: Option<RatFn>,
    pub ambient_primitive: RatFn,
    pub ambient_coefficients: Vec<i64>,
    /// `E[α]` with the minimal polynomial of `α` over `E`.
    pub extension: AlgExtension,
    tags: TagSystem,
}

impl RewriteResult {
    pub fn p_alpha(&self) -> &[RatFn] {
        self.extension.min_poly()
    }

    /// Sends `t_j ↦ transc_basis[j]` and `α ↦ ambient_primitive`.
    pub fn back_substitute(&self, e: &ExtElement) -> Result<RatFn> {
        let mut images = self.transc_basis.clone();
        images.push(self.ambient_primitive.clone());
        e.to_ratfn().compose(&images)
    }

    /// Expresses an element of `ℚ(x)` as a polynomial in `α` over `E`.
    pub fn to_ext(&self, g: &RatFn) -> Result<ExtElement> {
        let (ok, w) = self.tags.is_member(g);
        let w = w.filter(|_| ok).ok_or_else(|| Error::Invariant("element outside E(α)".into()))?;
        let (num, den) = w.expression.into_parts();
        let n = self.transc_basis.len();
        let num = poly_in_ext(&num, n, &self.extension);
        let den = poly_in_ext(&den, n, &self.extension);
        Ok(num.mul(&ext_invert(&den, &self.extension)?, &self.extension))
    }

    pub fn bottom_in_ext(&self) -> Result<Vec<ExtElement>> {
        self.bottom_primitive.iter().map(|b| self.to_ext(b)).collect()
    }

    /// Monic irreducible factors of `p_α` over `E[α]`, computed through
    /// `E[α] = ℚ(x)`: with `t ↦ transc_basis(x)` and denominators cleared,
    /// `p_α` is a polynomial in `ℚ[x, z]` whose factors over `ℚ` are its
    /// factors over `ℚ(x)`.
    pub fn factor_p_alpha(&self) -> Result<Vec<ExtPoly>> {
        let ext = &self.extension;
        let n = self.transc_basis.len();
        let coeffs: Vec<RatFn> = ext.min_poly().iter().map(|c| c.compose(&self.transc_basis)).collect::<Result<_>>()?;
        let l = coeffs.iter().fold(Poly::one(n), |acc, c| mpoly_lcm(&acc, c.den()));
        let lifted: Vec<Poly> = coeffs
            .iter()
            .map(|c| {
                let scale = l.div_exact(c.den()).expect("lcm is a multiple");
                (&scale * c.num()).extend_vars(n + 1)
            })
            .collect();
        let p = Poly::from_univariate(n, n + 1, &lifted);
        let to_x: Vec<usize> = (0..=n).map(|v| v.min(n.saturating_sub(1))).collect();
        let mut out = Vec::new();
        for (g, e) in factor_multivariate_q(&p)?.factors_in(n) {
            if *e != 1 {
                return Err(Error::Invariant("minimal polynomial is not squarefree".into()));
            }
            let parts = g.to_univariate(n);
            let lead = parts.last().expect("positive degree in z").remap(n, &to_x);
            let coeffs = parts
                .iter()
                .map(|c| self.to_ext(&RatFn::new(c.remap(n, &to_x), lead.clone())?))
                .collect::<Result<Vec<_>>>()?;
            out.push(ExtPoly::new(coeffs));
        }
        let prod = out.iter().fold(ExtPoly::one(ext), |acc, g| acc.mul(g, ext));
        if prod != ext.min_poly_ext() {
            return Err(Error::Invariant("factors do not reassemble the minimal polynomial".into()));
        }
        out.sort_by_cached_key(|g| (g.degree(), g.display(ext, "a", "z")));
        Ok(out)
    }
}

/// `p(t₁,…,t_n, a)` read as an element of `E[α]`.
fn poly_in_ext(p: &Poly, n: usize, ext: &AlgExtension) -> ExtElement {
    let map: Vec<usize> = (0..n).chain(std::iter::once(0)).collect();
    let coeffs = p.to_univariate(n).iter().map(|c| RatFn::from_poly(c.remap(n, &map))).collect();
    ExtElement::from_coeffs(ext, coeffs)
}

fn tag_names(n: usize) -> Vec<String> {
    (1..=n).map(|j| format!("t{}", j)).collect()
}

/// Picks a transcendence basis, a primitive element for the bottom field
/// and an integer combination of the variables primitive for `ℚ(x)` over
/// `E`, and computes its minimal polynomial.
pub fn rewrite_to_simple(field: &FieldPresentation) -> Result<RewriteResult> {
    let n = field.nvars();
    let trdeg = transcendence_degree(field);
    if trdeg < n {
        return Err(Error::NotAlgebraic { trdeg, nvars: n });
    }
    let transc_indices = select_transcendence_basis(field);
    let transc_basis: Vec<RatFn> = transc_indices.iter().map(|&i| field.generators()[i].clone()).collect();
    let rest: Vec<RatFn> = (0..field.ngens())
        .filter(|i| !transc_indices.contains(i))
        .map(|i| field.generators()[i].clone())
        .collect();
    let vars = field.vars().to_vec();
    let bottom_primitive = if rest.is_empty() {
        None
    } else {
        let pe = primitive_element(&vars, &transc_basis, &rest)?;
        (pe.degree > 1).then_some(pe.beta)
    };

    let base = FieldPresentation::new(vars.clone(), transc_basis.clone())?;
    let base_tags = TagSystem::new(&base);
    let xs: Vec<RatFn> = (0..n).map(|i| RatFn::var(n, i)).collect();
    let target = tower_degree(&vars, &transc_basis, &xs)?;
    let mut found = None;
    for c in small_integer_vectors(n) {
        let alpha = c
            .iter()
            .zip(&xs)
            .fold(RatFn::zero(n), |acc, (&k, x)| &acc + &x.scale(&Rational::from_integer(k.into())));
        let p = base_tags.minimal_polynomial(&alpha)?;
        if p.degree() == target {
            found = Some((alpha, c, p));
            break;
        }
    }
    let (alpha, coeffs, p) = found.expect("the enumeration is infinite");
    let extension = AlgExtension::new_unchecked(tag_names(n), p.coeffs)?;
    let mut with_alpha = transc_basis.clone();
    with_alpha.push(alpha.clone());
    let tags = TagSystem::new(&FieldPresentation::new(vars, with_alpha)?);
    Ok(RewriteResult {
        field: field.clone(),
        transc_indices,
        transc_basis,
        bottom_primitive,
        ambient_primitive: alpha,
        ambient_coefficients: coeffs,
        extension,
        tags,
    })
}

/// One intermediate field, given by generators in the original variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubfieldAnswer {
    pub generators_x: Vec<RatFn>,
    pub extension_degree_over_bottom: usize,
}

impl SubfieldAnswer {
    pub fn display(&self, vars: &[&str]) -> Vec<String> {
        self.generators_x.iter().map(|g| format_ratfn(g, vars)).collect()
    }
}

#[derive(Clone, Debug)]
pub struct SubfieldReport {
    pub answers: Vec<SubfieldAnswer>,
    /// `[ℚ(x) : ℚ(f)]`.
    pub total_degree: usize,
    pub warnings: Vec<String>,
}

/// Polynomials lose their constant term and become monic; fractions get a
/// monic numerator.
pub fn normalize_generator(g: &RatFn) -> RatFn {
    let n = g.nvars();
    if g.is_polynomial() {
        let p = g.num();
        let c = p.coefficient(&crate::Monomial::one(n));
        let shifted = p - &Poly::constant(n, c);
        if shifted.is_zero() {
            return g.clone();
        }
        return RatFn::from_poly(shifted.monic());
    }
    let lc = g.num().leading_coeff();
    g.scale(&(Rational::one() / lc))
}

/// Drops, front to back, every generator lying in the field of the others.
pub fn prune_generators(vars: &[String], gens: Vec<RatFn>) -> Result<Vec<RatFn>> {
    let mut gens = gens;
    let mut i = 0;
    while i < gens.len() && gens.len() > 1 {
        let others: Vec<RatFn> = gens.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
        let field = FieldPresentation::new(vars.to_vec(), others)?;
        if TagSystem::new(&field).is_member(&gens[i]).0 {
            gens.remove(i);
        } else {
            i += 1;
        }
    }
    Ok(gens)
}

/// Every field strictly between `ℚ(f)` and `ℚ(x)`, sorted by degree over
/// `ℚ(f)` and then by printed generators. Requires `trdeg ℚ(f) = n`.
pub fn algebraic_intermediate_fields(field: &FieldPresentation, cap: usize) -> Result<SubfieldReport> {
    let rw = rewrite_to_simple(field)?;
    let ext = &rw.extension;
    let bottom = rw.bottom_in_ext()?;
    let bottom_dim = field_span(&bottom, ext).dim();
    let total_degree = ext.degree() / bottom_dim;
    if total_degree == 1 {
        return Ok(SubfieldReport { answers: Vec::new(), total_degree, warnings: Vec::new() });
    }
    let search = find_intermediate_fields_from(ext, &bottom, rw.factor_p_alpha()?, cap)?;
    let vars = field.vars().to_vec();
    let ambient = FieldPresentation::ambient(vars.clone());
    let mut answers = Vec::new();
    for cand in &search.fields {
        let mut gens: Vec<RatFn> = field.generators().to_vec();
        for e in cand.coeff_generators.iter().filter(|e| !bottom.contains(e)) {
            let g = normalize_generator(&rw.back_substitute(e)?);
            if !g.is_constant() && !gens.contains(&g) {
                gens.push(g);
            }
        }
        let gens = prune_generators(&vars, gens)?;
        let k = FieldPresentation::new(vars.clone(), gens.clone())?;
        if !field_contains(field, &k) || field_contains(&k, field) || field_contains(&ambient, &k) {
            continue;
        }
        answers.push(SubfieldAnswer { generators_x: gens, extension_degree_over_bottom: cand.degree_over_base / bottom_dim });
    }
    let names = field.var_names();
    answers.sort_by_cached_key(|a| (a.extension_degree_over_bottom, a.display(&names)));
    Ok(SubfieldReport { answers, total_degree, warnings: search.warnings })
}

/// [`algebraic_intermediate_fields`] with the default block cap.
pub fn intermediate_fields(field: &FieldPresentation) -> Result<SubfieldReport> {
    algebraic_intermediate_fields(field, DEFAULT_BLOCK_CAP)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fieldops::{field_equal, minimal_polynomial};
    use crate::testutil::r;

    fn field(vars: &[&str], gens: &[&str]) -> FieldPresentation {
        let vs: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        FieldPresentation::new(vs, gens.iter().map(|g| r(g, vars)).collect()).unwrap()
    }

    fn lattice_matches(vars: &[&str], gens: &[&str], expected: &[&[&str]]) -> SubfieldReport {
        let f = field(vars, gens);
        let rep = intermediate_fields(&f).unwrap();
        assert_eq!(rep.answers.len(), expected.len(), "{:?}", rep.answers.iter().map(|a| a.display(vars)).collect::<Vec<_>>());
        for want in expected {
            let w = field(vars, want);
            assert!(
                rep.answers.iter().any(|a| field_equal(&w, &f.with_generators(a.generators_x.clone()).unwrap())),
                "missing {:?}",
                want
            );
        }
        rep
    }

    #[test]
    fn rewrite_examples() {
        let rw = rewrite_to_simple(&field(&["x"], &["x^4"])).unwrap();
        assert_eq!(rw.transc_basis, vec![r("x^4", &["x"])]);
        assert!(rw.bottom_primitive.is_none());
        assert_eq!(rw.ambient_primitive, r("x", &["x"]));
        let t = ["t1"];
        assert_eq!(rw.p_alpha(), &[r("-t1", &t), r("0", &t), r("0", &t), r("0", &t), r("1", &t)]);

        let rw = rewrite_to_simple(&field(&["x1", "x2"], &["x1^2", "x2^2"])).unwrap();
        assert_eq!(rw.ambient_primitive, r("x1 + x2", &["x1", "x2"]));
        let t = ["t1", "t2"];
        let want = ["(t1 - t2)^2", "0", "-2*t1 - 2*t2", "0", "1"];
        assert_eq!(rw.p_alpha(), want.iter().map(|s| r(s, &t)).collect::<Vec<_>>().as_slice());

        let rw = rewrite_to_simple(&field(&["x"], &["x"])).unwrap();
        assert_eq!(rw.extension.degree(), 1);

        assert!(matches!(
            rewrite_to_simple(&field(&["x1", "x2"], &["x1 + x2"])),
            Err(Error::NotAlgebraic { trdeg: 1, nvars: 2 })
        ));
    }

    #[test]
    fn rewrite_round_trip() {
        let rw = rewrite_to_simple(&field(&["x1", "x2"], &["x1^2", "x2^2"])).unwrap();
        for src in ["x1", "x2", "x1*x2", "x1/(x2 + 1)"] {
            let g = r(src, &["x1", "x2"]);
            assert_eq!(rw.back_substitute(&rw.to_ext(&g).unwrap()).unwrap(), g);
        }
        let p = rw.extension.min_poly_ext();
        let alpha_x = rw.back_substitute(&p.eval(&ExtElement::alpha(&rw.extension), &rw.extension)).unwrap();
        assert!(alpha_x.is_zero());
    }

    #[test]
    fn bottom_primitive_is_used() {
        let f = field(&["x"], &["x^8", "x^12"]);
        let rw = rewrite_to_simple(&f).unwrap();
        assert_eq!(rw.transc_indices, vec![0]);
        assert!(rw.bottom_primitive.is_some());
        let rep = lattice_matches(&["x"], &["x^8", "x^12"], &[&["x^2"]]);
        assert_eq!(rep.total_degree, 4);
        assert_eq!(rep.answers[0].extension_degree_over_bottom, 2);
    }

    #[test]
    fn golden_single_variable_lattices() {
        let rep = lattice_matches(&["x"], &["x^4"], &[&["x^2"]]);
        assert_eq!(rep.answers[0].display(&["x"]), vec!["x^2"]);
        lattice_matches(&["x"], &["x^6"], &[&["x^2"], &["x^3"]]);
        lattice_matches(&["x"], &["x^8"], &[&["x^2"], &["x^4"]]);
        lattice_matches(&["x"], &["x^3"], &[]);
        let rep = lattice_matches(&["x"], &["x^2 + 1/x^2"], &[&["x^2"], &["x + 1/x"], &["x - 1/x"]]);
        assert!(rep.answers.iter().all(|a| a.extension_degree_over_bottom == 2 && a.generators_x.len() == 1));
    }

    #[test]
    fn golden_two_variable_lattice() {
        let vars = ["x1", "x2"];
        let rep = lattice_matches(&vars, &["x1^2", "x2^2"], &[&["x1^2", "x2^2", "x1*x2"], &["x1", "x2^2"], &["x1^2", "x2"]]);
        for a in &rep.answers {
            assert!(a.generators_x.len() <= 3);
        }
    }

    #[test]
    fn degree_accounting() {
        let vars = ["x"];
        let f = field(&vars, &["x^8"]);
        let rep = intermediate_fields(&f).unwrap();
        let x = r("x", &vars);
        for a in &rep.answers {
            let k = f.with_generators(a.generators_x.clone()).unwrap();
            let top = minimal_polynomial(&x, &k).unwrap().degree();
            let bottom: usize = a.generators_x.iter().map(|g| minimal_polynomial(g, &f).unwrap().degree()).max().unwrap();
            assert!(top >= 2 && bottom >= 2);
            assert_eq!(top * bottom, 8);
            assert_eq!(a.extension_degree_over_bottom, bottom);
        }
    }

    #[test]
    fn ambient_factorization_agrees_with_norms() {
        for (vars, gens) in [(vec!["x"], vec!["x^4"]), (vec!["x"], vec!["x^2 + 1/x^2"]), (vec!["x"], vec!["x^3 + x"])] {
            let rw = rewrite_to_simple(&field(&vars, &gens)).unwrap();
            let ext = &rw.extension;
            let norms = crate::factor::trager_factor(&ext.min_poly_ext(), ext).unwrap();
            assert_eq!(rw.factor_p_alpha().unwrap(), norms);
        }
    }

    #[test]
    fn normalization() {
        let v = ["x"];
        assert_eq!(normalize_generator(&r("3*x^2 + 5", &v)), r("x^2", &v));
        assert_eq!(normalize_generator(&r("(2*x^2 + 2)/x", &v)), r("(x^2 + 1)/x", &v));
    }
}
