//! Intermediate fields of a simple algebraic extension `E ⊂ E[α]` read off
//! the factorization of `p_α` over `E[α]`: fixed fields of groups generated
//! by embeddings (linear factors), and coefficient fields of products of
//! factors whose degree divides `deg p_α`.

use crate::error::{Error, Result};
use crate::factor::{trager_factor, AlgExtension, ExtElement, ExtPoly};
use crate::ratfn::RatFn;

pub const DEFAULT_BLOCK_CAP: usize = 4096;

/// `σ: α ↦ image`, an `E`-embedding of `E[α]` into itself.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EmbeddingMap {
    pub image: ExtElement,
}

impl EmbeddingMap {
    pub fn identity(ext: &AlgExtension) -> Self {
        EmbeddingMap { image: ExtElement::alpha(ext) }
    }

    pub fn is_identity(&self, ext: &AlgExtension) -> bool {
        self.image == ExtElement::alpha(ext)
    }

    /// Applies the map to an element: `q(α) ↦ q(σ(α))`.
    pub fn apply(&self, e: &ExtElement, ext: &AlgExtension) -> ExtElement {
        let base: Vec<ExtElement> = e.coeffs().iter().map(|c| ExtElement::from_base(ext, c.clone())).collect();
        ExtPoly::new(base).eval(&self.image, ext)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self, ext: &AlgExtension) -> Self {
        EmbeddingMap { image: self.apply(&other.image, ext) }
    }
}

/// A composition-closed set of embeddings containing the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingGroup {
    pub elements: Vec<EmbeddingMap>,
    /// `table[i][j]` is the index of `elements[i] ∘ elements[j]`.
    table: Vec<Vec<usize>>,
}

impl EmbeddingGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    fn contains(&self, m: &EmbeddingMap) -> bool {
        self.elements.contains(m)
    }

    fn same_set(&self, other: &Self) -> bool {
        self.order() == other.order() && self.elements.iter().all(|m| other.contains(m))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    GroupResolvent,
    BlockProduct,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DefiningData {
    Subgroup(Vec<EmbeddingMap>),
    FactorSubset(Vec<usize>),
}

/// An intermediate field `E(a₀,…,a_u)` and where it came from.
#[derive(Clone, Debug)]
pub struct CandidateField {
    pub coeff_generators: Vec<ExtElement>,
    pub provenance: Provenance,
    pub defining_data: DefiningData,
    /// `[E(generators) : E]`; zero until certified.
    pub degree_over_base: usize,
}

/// One embedding per linear factor `z − p_i(α)`, identity first.
pub fn embeddings_from_factors(factors: &[ExtPoly], ext: &AlgExtension) -> Result<Vec<EmbeddingMap>> {
    let p = ext.min_poly_ext();
    let mut maps = vec![EmbeddingMap::identity(ext)];
    for f in factors.iter().filter(|f| f.degree() == 1) {
        let f = f.monic(ext)?;
        let image = f.coeffs()[0].neg();
        if !p.eval(&image, ext).is_zero() {
            return Err(Error::Invariant("embedding image is not a root of the minimal polynomial".into()));
        }
        let m = EmbeddingMap { image };
        if !maps.contains(&m) {
            maps.push(m);
        }
    }
    Ok(maps)
}

/// Smallest composition-closed set containing `maps` and the identity.
pub fn group_closure(maps: &[EmbeddingMap], ext: &AlgExtension) -> Result<EmbeddingGroup> {
    let mut elements = vec![EmbeddingMap::identity(ext)];
    for m in maps {
        if !elements.contains(m) {
            elements.push(m.clone());
        }
    }
    let mut table: Vec<Vec<Option<usize>>> = Vec::new();
    let mut i = 0;
    while i < elements.len() {
        for j in 0..=i {
            for (a, b) in [(i, j), (j, i)] {
                if table.len() <= a.max(b) {
                    table.resize(a.max(b) + 1, Vec::new());
                }
                if table[a].get(b).is_some_and(|c| c.is_some()) {
                    continue;
                }
                let c = elements[a].compose(&elements[b], ext);
                let k = match elements.iter().position(|e| *e == c) {
                    Some(k) => k,
                    None => {
                        elements.push(c);
                        if elements.len() > ext.degree() {
                            return Err(Error::Invariant("embedding closure exceeds the extension degree".into()));
                        }
                        elements.len() - 1
                    }
                };
                if table[a].len() <= b {
                    table[a].resize(b + 1, None);
                }
                table[a][b] = Some(k);
            }
        }
        i += 1;
    }
    let table = table.into_iter().map(|row| row.into_iter().map(|c| c.expect("every pair composed")).collect()).collect();
    Ok(EmbeddingGroup { elements, table })
}

/// Distinct cyclic subgroups of prime order.
pub fn minimal_subgroups(g: &EmbeddingGroup, ext: &AlgExtension) -> Result<Vec<EmbeddingGroup>> {
    let mut out: Vec<EmbeddingGroup> = Vec::new();
    for m in g.elements.iter().filter(|m| !m.is_identity(ext)) {
        let h = group_closure(std::slice::from_ref(m), ext)?;
        let prime = (2..h.order()).all(|q| h.order() % q != 0);
        if prime && !out.iter().any(|o| o.same_set(&h)) {
            out.push(h);
        }
    }
    Ok(out)
}

fn close_indices(table: &[Vec<usize>], identity: usize, seeds: &[usize]) -> Vec<usize> {
    let mut set = vec![identity];
    let mut i = 0;
    while i < set.len() {
        for &s in seeds {
            let c = table[set[i]][s];
            if !set.contains(&c) {
                set.push(c);
            }
        }
        i += 1;
    }
    set.sort_unstable();
    set
}

/// Every nontrivial subgroup of `g`, built as joins of cyclic subgroups.
pub fn all_subgroups(g: &EmbeddingGroup, ext: &AlgExtension) -> Result<Vec<EmbeddingGroup>> {
    let table = &g.table;
    let identity = g
        .elements
        .iter()
        .position(|m| m.is_identity(ext))
        .ok_or_else(|| Error::Invariant("group without identity".into()))?;
    let mut subs: Vec<Vec<usize>> = Vec::new();
    for m in (0..g.order()).filter(|&m| m != identity) {
        let h = close_indices(table, identity, &[m]);
        if !subs.contains(&h) {
            subs.push(h);
        }
    }
    let mut i = 0;
    while i < subs.len() {
        for j in 0..i {
            let seeds: Vec<usize> = subs[i].iter().chain(&subs[j]).copied().collect();
            let h = close_indices(table, identity, &seeds);
            if !subs.contains(&h) {
                subs.push(h);
            }
        }
        i += 1;
    }
    subs.sort_by_key(|h| h.len());
    Ok(subs
        .into_iter()
        .map(|h| {
            let elements = h.iter().map(|&k| g.elements[k].clone()).collect();
            let table = h.iter().map(|&a| h.iter().map(|&b| h.binary_search(&table[a][b]).expect("subgroup")).collect()).collect();
            EmbeddingGroup { elements, table }
        })
        .collect())
}

/// Coefficients of `h = ∏_{σ ∈ sub} (z − σ(α))`, leading 1 and base-field
/// constants dropped.
pub fn fixed_field_candidate(sub: &EmbeddingGroup, ext: &AlgExtension) -> CandidateField {
    let h = sub
        .elements
        .iter()
        .fold(ExtPoly::one(ext), |acc, m| acc.mul(&ExtPoly::linear(ext, &m.image), ext));
    CandidateField {
        coeff_generators: nonconstant_coefficients(&h),
        provenance: Provenance::GroupResolvent,
        defining_data: DefiningData::Subgroup(sub.elements.clone()),
        degree_over_base: 0,
    }
}

fn nonconstant_coefficients(h: &ExtPoly) -> Vec<ExtElement> {
    let mut out: Vec<ExtElement> = Vec::new();
    for c in &h.coeffs()[..h.degree()] {
        if c.as_base().is_some_and(|b| b.is_constant()) || out.contains(c) {
            continue;
        }
        out.push(c.clone());
    }
    out
}

/// Candidates from subsets `S` of the factors other than `z − α`, enumerated
/// by increasing `1 + Σ deg S` over the proper divisors of `deg p_α`. Returns
/// the candidates and whether the cap cut the enumeration short.
pub fn block_candidates(factors: &[ExtPoly], ext: &AlgExtension, cap: usize) -> (Vec<CandidateField>, bool) {
    let d = ext.degree();
    let own = ExtPoly::linear(ext, &ExtElement::alpha(ext));
    let others: Vec<(usize, &ExtPoly)> = factors.iter().enumerate().filter(|(_, f)| **f != own).collect();
    let mut out = Vec::new();
    let mut examined = 0usize;
    let mut truncated = false;
    for target in (2..d).filter(|b| d.is_multiple_of(*b)) {
        let mut subsets = Vec::new();
        subset_sums(&others, target - 1, 0, &mut Vec::new(), &mut subsets);
        for subset in subsets {
            if examined == cap {
                truncated = true;
                break;
            }
            examined += 1;
            let p = subset.iter().fold(own.clone(), |acc, &i| acc.mul(&factors[i], ext));
            out.push(CandidateField {
                coeff_generators: nonconstant_coefficients(&p),
                provenance: Provenance::BlockProduct,
                defining_data: DefiningData::FactorSubset(subset),
                degree_over_base: 0,
            });
        }
    }
    (out, truncated)
}

/// Index subsets (into the original factor list) whose degrees sum to `rest`.
fn subset_sums(items: &[(usize, &ExtPoly)], rest: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if rest == 0 {
        out.push(cur.clone());
        return;
    }
    for j in from..items.len() {
        let (idx, f) = items[j];
        if f.degree() <= rest {
            cur.push(idx);
            subset_sums(items, rest - f.degree(), j + 1, cur, out);
            cur.pop();
        }
    }
}

/// An `E`-subspace of `E[α]` in echelon form.
#[derive(Clone, Debug)]
pub struct Span {
    rows: Vec<(usize, Vec<RatFn>)>,
}

impl Span {
    pub fn new() -> Self {
        Span { rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[RatFn]) -> Vec<RatFn> {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let c = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = &*x - &(&c * r);
                }
            }
        }
        v
    }

    pub fn contains(&self, e: &ExtElement) -> bool {
        self.reduce(e.coeffs()).iter().all(|c| c.is_zero())
    }

    /// Adds `e`; returns whether the dimension grew.
    pub fn insert(&mut self, e: &ExtElement) -> bool {
        let v = self.reduce(e.coeffs());
        let Some(p) = v.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = v[p].inv().expect("nonzero pivot");
        self.rows.push((p, v.iter().map(|c| c * &inv).collect()));
        true
    }
}

impl Default for Span {
    fn default() -> Self {
        Self::new()
    }
}

/// `E(gens)` as an `E`-subspace: the algebra generated by `gens`, which is a
/// field because every element is algebraic.
pub fn field_span(gens: &[ExtElement], ext: &AlgExtension) -> Span {
    let mut span = Span::new();
    let one = ExtElement::one(ext);
    span.insert(&one);
    let mut queue = vec![one];
    while let Some(b) = queue.pop() {
        for g in gens {
            let prod = b.mul(g, ext);
            if span.insert(&prod) {
                if span.dim() == ext.degree() {
                    return span;
                }
                queue.push(prod);
            }
        }
    }
    span
}

/// Outcome of [`find_intermediate_fields`].
#[derive(Clone, Debug)]
pub struct SubfieldSearch {
    pub fields: Vec<CandidateField>,
    pub factors: Vec<ExtPoly>,
    pub warnings: Vec<String>,
}

/// All certified fields strictly between `F = E(bottom)` and `E[α]`, each
/// presented by its coefficient generators together with `bottom`, sorted
/// by degree and then by printed generators.
pub fn find_intermediate_fields(ext: &AlgExtension, bottom: &[ExtElement], cap: usize) -> Result<SubfieldSearch> {
    if ext.degree() == 1 {
        return Ok(SubfieldSearch { fields: Vec::new(), factors: vec![ext.min_poly_ext()], warnings: Vec::new() });
    }
    let factors = trager_factor(&ext.min_poly_ext(), ext)?;
    find_intermediate_fields_from(ext, bottom, factors, cap)
}

/// [`find_intermediate_fields`] given the monic irreducible factors of
/// `p_α` over `E[α]`.
pub fn find_intermediate_fields_from(
    ext: &AlgExtension,
    bottom: &[ExtElement],
    factors: Vec<ExtPoly>,
    cap: usize,
) -> Result<SubfieldSearch> {
    let d = ext.degree();
    let mut warnings = Vec::new();
    let maps = embeddings_from_factors(&factors, ext)?;
    let group = group_closure(&maps, ext)?;
    let mut candidates: Vec<CandidateField> =
        all_subgroups(&group, ext)?.iter().map(|h| fixed_field_candidate(h, ext)).collect();
    let (blocks, truncated) = block_candidates(&factors, ext, cap);
    if truncated {
        warnings.push(format!("block subset enumeration stopped at the cap of {} subsets; the list may be incomplete", cap));
    }
    candidates.extend(blocks);

    let bottom_span = field_span(bottom, ext);
    let mut accepted: Vec<(CandidateField, Span)> = Vec::new();
    for mut cand in candidates {
        let mut gens = cand.coeff_generators.clone();
        for b in bottom {
            if !gens.contains(b) {
                gens.push(b.clone());
            }
        }
        let span = field_span(&gens, ext);
        if span.dim() <= bottom_span.dim() || span.dim() >= d {
            continue;
        }
        let duplicate = accepted
            .iter()
            .any(|(_, s)| s.dim() == span.dim() && gens.iter().all(|g| s.contains(g)));
        if duplicate {
            continue;
        }
        cand.coeff_generators = gens;
        cand.degree_over_base = span.dim();
        accepted.push((cand, span));
    }
    let mut fields: Vec<CandidateField> = accepted.into_iter().map(|(c, _)| c).collect();
    fields.sort_by_cached_key(|c| {
        (c.degree_over_base, c.coeff_generators.iter().map(|g| g.display(ext, "a")).collect::<Vec<_>>())
    });
    Ok(SubfieldSearch { fields, factors, warnings })
}
