//! Codes over matrix-module alphabets and the extension criterion.
//!
//! A code of length `n` is a tuple of homs `W -> A`, `X ↦ X·G_i`, with
//! `W = M_{m x t}(F_q)` and `A = M_{m x k}(F_q)`. The kernel of `X ↦ XG` is
//! the submodule of matrices whose rows lie in the left kernel of `G`, so a
//! kernel is determined by a subspace of `F_q^t`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::budget::{pow_sat, Budget};
use crate::error::{ModextError, Result};
use crate::linalg::{enumerate_subspaces, row_kernel, FqMatrix, PrimeField, Subspace};

/// `A = M_{m x k}(F_q)` as a left `M_m(F_q)`-module.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Alphabet {
    pub field: PrimeField,
    pub m: usize,
    pub k: usize,
}

impl Alphabet {
    pub fn new(q: u64, m: usize, k: usize) -> Result<Self> {
        if m == 0 || k == 0 {
            return Err(ModextError::Input(format!("alphabet needs m, k >= 1 (got m={m}, k={k})")));
        }
        Ok(Alphabet { field: PrimeField::new(q)?, m, k })
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }
}

/// `W = M_{m x t}(F_q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModuleSpace {
    pub field: PrimeField,
    pub m: usize,
    pub t: usize,
}

impl ModuleSpace {
    pub fn new(field: PrimeField, m: usize, t: usize) -> Self {
        ModuleSpace { field, m, t }
    }

    /// `|W| = q^{m t}`, saturating.
    pub fn cardinality(&self) -> u128 {
        pow_sat(self.field.q() as u64, self.m * self.t)
    }

    /// Every element of `W`.
    pub fn elements(&self, budget: &Budget) -> Result<Vec<FqMatrix>> {
        budget.check_vectors("module elements", self.cardinality())?;
        let q = self.field.q();
        Ok(crate::linalg::Counter::new(q, self.m * self.t)
            .map(|d| FqMatrix::from_residues(self.field, self.m, self.t, d).expect("in range"))
            .collect())
    }

    pub fn full(&self) -> Submodule {
        Submodule { space: *self, support: Subspace::full(self.field, self.t) }
    }

    pub fn zero(&self) -> Submodule {
        Submodule { space: *self, support: Subspace::zero(self.field, self.t) }
    }
}

/// The submodule `{X ∈ W : rowspace(X) ⊆ support}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Submodule {
    pub space: ModuleSpace,
    pub support: Subspace,
}

impl PartialOrd for ModuleSpace {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ModuleSpace {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.field, self.m, self.t).cmp(&(other.field, other.m, other.t))
    }
}

impl Submodule {
    pub fn new(space: ModuleSpace, support: Subspace) -> Result<Self> {
        if support.ambient() != space.t || support.field() != space.field {
            return Err(ModextError::DimensionMismatch(format!(
                "support in F_{}^{} for W = M_{}x{}",
                support.field().q(),
                support.ambient(),
                space.m,
                space.t
            )));
        }
        Ok(Submodule { space, support })
    }

    /// Module dimension, i.e. the dimension of the support.
    pub fn dim(&self) -> usize {
        self.support.dim()
    }

    pub fn cardinality(&self) -> u128 {
        pow_sat(self.space.field.q() as u64, self.space.m * self.dim())
    }

    pub fn contains_element(&self, x: &FqMatrix) -> bool {
        (0..x.rows()).all(|r| self.support.contains_vector(x.row(r)))
    }

    /// Elements `C·B` where `B` is the support basis and `C` ranges over `M_{m x dim}`.
    pub fn elements(&self, budget: &Budget) -> Result<Vec<FqMatrix>> {
        budget.check_vectors("submodule elements", self.cardinality())?;
        let (f, m, d) = (self.space.field, self.space.m, self.dim());
        let basis = self.support.basis();
        Ok(crate::linalg::Counter::new(f.q(), m * d)
            .map(|c| {
                let coeffs = FqMatrix::from_residues(f, m, d, c).expect("in range");
                if d == 0 {
                    FqMatrix::zeros(f, m, self.space.t)
                } else {
                    coeffs.mul(basis).expect("shapes agree")
                }
            })
            .collect())
    }

    pub fn is_cyclic(&self) -> bool {
        is_cyclic_submodule(self)
    }
}

/// A hom `W -> A`, `X ↦ X·G` with `G` a `t x k` matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hom {
    pub source: ModuleSpace,
    pub matrix: FqMatrix,
}

impl Hom {
    pub fn new(source: ModuleSpace, matrix: FqMatrix) -> Result<Self> {
        if matrix.rows() != source.t || matrix.field() != source.field {
            return Err(ModextError::Shape(format!("generator has {} rows, W has t = {}", matrix.rows(), source.t)));
        }
        Ok(Hom { source, matrix })
    }

    pub fn k(&self) -> usize {
        self.matrix.cols()
    }

    pub fn apply(&self, x: &FqMatrix) -> FqMatrix {
        if self.source.t == 0 {
            return FqMatrix::zeros(self.source.field, x.rows(), self.k());
        }
        x.mul(&self.matrix).expect("element shape matches source")
    }

    pub fn kernel(&self) -> Submodule {
        Submodule { space: self.source, support: row_kernel(&self.matrix) }
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }
}

/// A parametrized code `λ = (λ_1, …, λ_n): W -> A^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Code {
    pub alphabet: Alphabet,
    pub space: ModuleSpace,
    pub columns: Vec<Hom>,
}

impl Code {
    pub fn new(alphabet: Alphabet, t: usize, generators: Vec<FqMatrix>) -> Result<Self> {
        if generators.is_empty() {
            return Err(ModextError::Input("a code needs at least one column".into()));
        }
        let space = ModuleSpace::new(alphabet.field, alphabet.m, t);
        let mut columns = Vec::with_capacity(generators.len());
        for g in generators {
            if g.cols() != alphabet.k || g.field() != alphabet.field {
                return Err(ModextError::Shape(format!(
                    "generator is {}x{} over F_{}, expected {}x{} over F_{}",
                    g.rows(),
                    g.cols(),
                    g.field().q(),
                    t,
                    alphabet.k,
                    alphabet.q()
                )));
            }
            columns.push(Hom::new(space, g)?);
        }
        Ok(Code { alphabet, space, columns })
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn generators(&self) -> impl Iterator<Item = &FqMatrix> {
        self.columns.iter().map(|h| &h.matrix)
    }

    /// `λ(X)`, one `m x k` block per coordinate.
    pub fn encode(&self, x: &FqMatrix) -> Vec<FqMatrix> {
        self.columns.iter().map(|h| h.apply(x)).collect()
    }

    /// Hamming weight of `λ(X)` without materializing the word.
    pub fn weight_at(&self, x: &FqMatrix) -> usize {
        self.columns.iter().filter(|h| !h.apply(x).is_zero()).count()
    }

    /// `[G_1 | … | G_n]`, the `t x nk` matrix of the whole parametrization.
    pub fn stacked(&self) -> FqMatrix {
        let mut it = self.generators();
        let first = it.next().expect("nonempty code").clone();
        it.fold(first, |acc, g| acc.hstack(g).expect("same height"))
    }

    fn check_same_source(&self, other: &Code) -> Result<()> {
        if self.space != other.space || self.alphabet != other.alphabet {
            return Err(ModextError::DimensionMismatch(format!(
                "codes over (q={}, m={}, k={}, t={}) and (q={}, m={}, k={}, t={})",
                self.alphabet.q(),
                self.alphabet.m,
                self.alphabet.k,
                self.space.t,
                other.alphabet.q(),
                other.alphabet.m,
                other.alphabet.k,
                other.space.t
            )));
        }
        if self.len() != other.len() {
            return Err(ModextError::DimensionMismatch(format!("code lengths {} and {}", self.len(), other.len())));
        }
        Ok(())
    }
}

/// Number of nonzero blocks in a word.
pub fn hamming_weight(word: &[FqMatrix]) -> Result<usize> {
    if let Some(first) = word.first() {
        if let Some(bad) = word.iter().find(|b| b.rows() != first.rows() || b.cols() != first.cols()) {
            return Err(ModextError::Shape(format!(
                "block {}x{} in a word of {}x{} blocks",
                bad.rows(),
                bad.cols(),
                first.rows(),
                first.cols()
            )));
        }
    }
    Ok(word.iter().filter(|b| !b.is_zero()).count())
}

/// A multiset of submodules of a fixed `W`, keyed by support.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KernelTuple {
    #[serde(skip)]
    pub space: ModuleSpace,
    #[serde(serialize_with = "serialize_multiset")]
    pub counts: BTreeMap<Subspace, usize>,
}

fn serialize_multiset<S: serde::Serializer>(
    counts: &BTreeMap<Subspace, usize>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(counts.len()))?;
    for (sub, &n) in counts {
        seq.serialize_element(&SupportEntry::new(sub, n))?;
    }
    seq.end()
}

/// JSON view of one multiset entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SupportEntry {
    pub dim: usize,
    pub basis: Vec<Vec<u32>>,
    pub multiplicity: usize,
}

impl SupportEntry {
    pub fn new(sub: &Subspace, multiplicity: usize) -> Self {
        SupportEntry { dim: sub.dim(), basis: sub.basis().to_rows(), multiplicity }
    }
}

impl KernelTuple {
    pub fn from_supports(space: ModuleSpace, supports: impl IntoIterator<Item = Subspace>) -> Self {
        let mut counts = BTreeMap::new();
        for s in supports {
            *counts.entry(s).or_insert(0) += 1;
        }
        KernelTuple { space, counts }
    }

    /// Total multiplicity.
    pub fn len(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Number of members (with multiplicity) whose support contains `s`.
    pub fn containing(&self, s: &Subspace) -> usize {
        self.counts.iter().filter(|(sup, _)| sup.contains(s).unwrap_or(false)).map(|(_, &n)| n).sum()
    }

    pub fn multiplicity(&self, s: &Subspace) -> usize {
        self.counts.get(s).copied().unwrap_or(0)
    }

    /// Entries of `self` in excess of `other`, with the excess multiplicity.
    pub fn excess_over(&self, other: &KernelTuple) -> Vec<(Subspace, usize)> {
        self.counts
            .iter()
            .filter_map(|(s, &n)| {
                let o = other.multiplicity(s);
                (n > o).then(|| (s.clone(), n - o))
            })
            .collect()
    }
}

/// Kernel supports of every column, as a multiset.
pub fn kernel_tuple(code: &Code) -> KernelTuple {
    KernelTuple::from_supports(code.space, code.columns.iter().map(|h| h.kernel().support))
}

/// Decides isometry by comparing `wt(λ(X))` and `wt(μ(X))` at every `X ∈ W`.
pub fn is_isometry_bruteforce(lam: &Code, mu: &Code, budget: &Budget) -> Result<bool> {
    if lam.space != mu.space {
        return Err(ModextError::DimensionMismatch("codes on different source spaces".into()));
    }
    for x in lam.space.elements(budget)? {
        if lam.weight_at(&x) != mu.weight_at(&x) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Evaluation points of the isometry equation: all subspaces of `F_q^t`
/// of dimension at most `m` (the possible row spaces of elements of `W`).
pub fn evaluation_points(space: &ModuleSpace, budget: &Budget) -> Result<Vec<Subspace>> {
    let mut pts = Vec::new();
    for d in 0..=space.m.min(space.t) {
        pts.extend(enumerate_subspaces(space.field, space.t, d, budget)?);
    }
    Ok(pts)
}

/// Whether `∑ 1_{V_i} = ∑ 1_{U_i}` holds on `W`, checked by containment counts.
pub fn kernels_satisfy_isometry_equation(v: &KernelTuple, u: &KernelTuple, budget: &Budget) -> Result<bool> {
    if v.space != u.space {
        return Err(ModextError::DimensionMismatch("kernel tuples on different spaces".into()));
    }
    for s in evaluation_points(&v.space, budget)? {
        if v.containing(&s) != u.containing(&s) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Isometry test through the kernel equation, without enumerating `W`.
pub fn is_isometry_criterion(lam: &Code, mu: &Code, budget: &Budget) -> Result<bool> {
    if lam.space != mu.space {
        return Err(ModextError::DimensionMismatch("codes on different source spaces".into()));
    }
    kernels_satisfy_isometry_equation(&kernel_tuple(lam), &kernel_tuple(mu), budget)
}

/// Multiset equality of the two kernel tuples.
pub fn is_trivial_solution(v: &KernelTuple, u: &KernelTuple) -> bool {
    v.len() == u.len() && v.counts == u.counts
}

/// `(a_1, …, a_n) ↦ (a_{π(1)} P_1, …, a_{π(n)} P_n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialMap {
    pub permutation: Vec<usize>,
    pub autos: Vec<FqMatrix>,
}

impl MonomialMap {
    pub fn identity(field: PrimeField, n: usize, k: usize) -> Self {
        MonomialMap { permutation: (0..n).collect(), autos: vec![FqMatrix::identity(field, k); n] }
    }

    pub fn len(&self) -> usize {
        self.permutation.len()
    }

    pub fn is_empty(&self) -> bool {
        self.permutation.is_empty()
    }

    /// Applies the map to a word of `A^n`.
    pub fn apply_word(&self, word: &[FqMatrix]) -> Result<Vec<FqMatrix>> {
        if word.len() != self.len() {
            return Err(ModextError::Shape(format!("word of length {} for a map on {}", word.len(), self.len())));
        }
        self.permutation.iter().zip(&self.autos).map(|(&src, p)| word[src].mul(p)).collect()
    }

    fn validate(&self, n: usize, k: usize) -> Result<()> {
        if self.permutation.len() != n || self.autos.len() != n {
            return Err(ModextError::Shape(format!("monomial map on {} coordinates, code has {n}", self.len())));
        }
        let mut seen = vec![false; n];
        for &p in &self.permutation {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(ModextError::Input(format!("{:?} is not a permutation", self.permutation)));
            }
        }
        for a in &self.autos {
            if a.rows() != k || a.cols() != k {
                return Err(ModextError::Shape(format!("automorphism is {}x{}, expected {k}x{k}", a.rows(), a.cols())));
            }
            if !a.is_invertible() {
                return Err(ModextError::Singular);
            }
        }
        Ok(())
    }
}

/// Column `i` of the result is column `π(i)` of `code` times `P_i`.
pub fn apply_monomial(map: &MonomialMap, code: &Code) -> Result<Code> {
    map.validate(code.len(), code.alphabet.k)?;
    let gens = map
        .permutation
        .iter()
        .zip(&map.autos)
        .map(|(&src, p)| code.columns[src].matrix.mul(p))
        .collect::<Result<Vec<_>>>()?;
    Code::new(code.alphabet, code.space.t, gens)
}

/// Kernel multisets that disagree, from each side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelDiff {
    pub only_lambda: Vec<(Subspace, usize)>,
    pub only_mu: Vec<(Subspace, usize)>,
}

/// Outcome of [`extend_to_monomial`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Extension {
    Extendable(MonomialMap),
    Unextendable(KernelDiff),
}

impl Extension {
    pub fn is_extendable(&self) -> bool {
        matches!(self, Extension::Extendable(_))
    }
}

/// Finds an invertible `P` with `G·P = H`, given that `G` and `H` share a left kernel.
///
/// On a complement `E` of the kernel, `EG` and `EH` are both of full row
/// rank; completing each to a basis of `F_q^k` and composing gives `P`.
pub fn automorphism_between(g: &FqMatrix, h: &FqMatrix) -> Result<FqMatrix> {
    if g.rows() != h.rows() || g.cols() != h.cols() {
        return Err(ModextError::Shape("generators of different shapes".into()));
    }
    let field = g.field();
    let k = g.cols();
    let ker = row_kernel(g);
    if ker != row_kernel(h) {
        return Err(ModextError::Input("generators have different kernels".into()));
    }
    let e = ker.complement_basis();
    let complete = |img: FqMatrix| -> Result<FqMatrix> {
        let comp = Subspace::span(&img).complement_basis();
        img.vstack(&comp)
    };
    let (a, b) = if e.rows() == 0 {
        (FqMatrix::identity(field, k), FqMatrix::identity(field, k))
    } else {
        (complete(e.mul(g)?)?, complete(e.mul(h)?)?)
    };
    let p = a.inverse()?.mul(&b)?;
    debug_assert_eq!(&g.mul(&p)?, h);
    Ok(p)
}

/// Extends the isometry `λ(w) ↦ μ(w)` to a monomial map, or reports why it cannot.
///
/// Columns are matched after sorting each side by (kernel support, index).
pub fn extend_to_monomial(lam: &Code, mu: &Code, budget: &Budget) -> Result<Extension> {
    lam.check_same_source(mu)?;
    if !is_isometry_criterion(lam, mu, budget)? {
        return Err(ModextError::NotAnIsometry);
    }
    let (kv, ku) = (kernel_tuple(lam), kernel_tuple(mu));
    if !is_trivial_solution(&kv, &ku) {
        return Ok(Extension::Unextendable(KernelDiff {
            only_lambda: kv.excess_over(&ku),
            only_mu: ku.excess_over(&kv),
        }));
    }
    let order = |code: &Code| {
        let mut idx: Vec<(Subspace, usize)> =
            code.columns.iter().enumerate().map(|(i, h)| (h.kernel().support, i)).collect();
        idx.sort();
        idx
    };
    let (ol, om) = (order(lam), order(mu));
    let n = lam.len();
    let mut permutation = vec![0; n];
    let mut autos = vec![FqMatrix::identity(lam.alphabet.field, lam.alphabet.k); n];
    for ((_, i), (_, j)) in ol.into_iter().zip(om) {
        permutation[j] = i;
        autos[j] = automorphism_between(&lam.columns[i].matrix, &mu.columns[j].matrix)?;
    }
    Ok(Extension::Extendable(MonomialMap { permutation, autos }))
}

/// `M_{m x k}` over `M_m` has the extension property exactly when `k <= m`.
pub fn alphabet_has_extension_property(alphabet: &Alphabet) -> bool {
    alphabet.k <= alphabet.m
}

/// A submodule is cyclic iff its dimension is at most `m`.
pub fn is_cyclic_submodule(sub: &Submodule) -> bool {
    sub.dim() <= sub.space.m
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Covering {
    Cover(Vec<Submodule>),
    NotCoverable,
}

/// Covers a non-cyclic submodule by the submodules on its hyperplanes.
pub fn covering_by_proper_submodules(sub: &Submodule, budget: &Budget) -> Result<Covering> {
    if is_cyclic_submodule(sub) {
        return Ok(Covering::NotCoverable);
    }
    let d = sub.dim();
    let basis = sub.support.basis();
    let parts = enumerate_subspaces(sub.space.field, d, d - 1, budget)?
        .into_iter()
        .map(|h| Submodule::new(sub.space, Subspace::span(&h.basis().mul(basis)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Covering::Cover(parts))
}

/// Whether every element of `module` lies in one of `parts`, by enumeration.
pub fn covers(module: &Submodule, parts: &[Submodule], budget: &Budget) -> Result<bool> {
    Ok(module.elements(budget)?.iter().all(|x| parts.iter().any(|p| p.contains_element(x))))
}
