//! Nontrivial solutions of the isometry equation `∑ 1_{V_i} = ∑ 1_{U_i}`.
//!
//! Solutions are built three ways: inclusion-exclusion over a covering of a
//! non-cyclic module, the layered minimum-length construction, and a
//! branch-and-bound search for the shortest nonzero integer vector in the
//! kernel of the subspace incidence matrix.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::budget::Budget;
use crate::error::{ModextError, Result};
use crate::linalg::{binom2, enumerate_all_subspaces, gaussian_binomial, q_power, FqMatrix, PrimeField, Subspace};
use crate::modcode::{covers, evaluation_points, Alphabet, Code, Hom, KernelTuple, ModuleSpace, Submodule};

/// Two multisets of submodules of `W` (by support) with positive multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionPair {
    pub space: ModuleSpace,
    pub v: BTreeMap<Subspace, u64>,
    pub u: BTreeMap<Subspace, u64>,
}

fn total(side: &BTreeMap<Subspace, u64>) -> u64 {
    side.values().sum()
}

fn containing(side: &BTreeMap<Subspace, u64>, s: &Subspace) -> u64 {
    side.iter().filter(|(k, _)| k.contains(s).unwrap_or(false)).map(|(_, &n)| n).sum()
}

impl SolutionPair {
    /// Validates both sides against `W` and checks the isometry equation.
    pub fn new(
        space: ModuleSpace,
        v: BTreeMap<Subspace, u64>,
        u: BTreeMap<Subspace, u64>,
        budget: &Budget,
    ) -> Result<Self> {
        for s in v.keys().chain(u.keys()) {
            Submodule::new(space, s.clone())?;
        }
        let v: BTreeMap<_, _> = v.into_iter().filter(|(_, n)| *n > 0).collect();
        let u: BTreeMap<_, _> = u.into_iter().filter(|(_, n)| *n > 0).collect();
        if total(&v) != total(&u) {
            return Err(ModextError::NotASolution(format!("side lengths {} and {} differ", total(&v), total(&u))));
        }
        for s in evaluation_points(&space, budget)? {
            let (a, b) = (containing(&v, &s), containing(&u, &s));
            if a != b {
                return Err(ModextError::NotASolution(format!("at {s:?}: {a} vs {b}")));
            }
        }
        Ok(SolutionPair { space, v, u })
    }

    /// Code length: total multiplicity of one side.
    pub fn length(&self) -> u64 {
        total(&self.v)
    }

    pub fn is_trivial(&self) -> bool {
        self.v == self.u
    }

    /// Removes modules that appear on both sides.
    pub fn cancel(&self) -> SolutionPair {
        let mut v = self.v.clone();
        let mut u = self.u.clone();
        for (s, nv) in v.iter_mut() {
            if let Some(nu) = u.get_mut(s) {
                let common = (*nv).min(*nu);
                *nv -= common;
                *nu -= common;
            }
        }
        v.retain(|_, n| *n > 0);
        u.retain(|_, n| *n > 0);
        SolutionPair { space: self.space, v, u }
    }

    pub fn v_tuple(&self) -> KernelTuple {
        to_kernel_tuple(self.space, &self.v)
    }

    pub fn u_tuple(&self) -> KernelTuple {
        to_kernel_tuple(self.space, &self.u)
    }
}

fn to_kernel_tuple(space: ModuleSpace, side: &BTreeMap<Subspace, u64>) -> KernelTuple {
    KernelTuple { space, counts: side.iter().map(|(s, &n)| (s.clone(), n as usize)).collect() }
}

/// `∑_{|I| even} 1_{M_I} = ∑_{|I| odd} 1_{M_I}` with `M_I = ∩_{i∈I} E_i` and `M_∅ = M`.
///
/// Sides are returned before cancellation, each with `2^{r-1}` terms.
pub fn inclusion_exclusion_solution(
    module: &Submodule,
    covering: &[Submodule],
    budget: &Budget,
) -> Result<SolutionPair> {
    let r = covering.len();
    if r == 0 {
        return Err(ModextError::NotACover("empty covering".into()));
    }
    for e in covering {
        if e.space != module.space {
            return Err(ModextError::DimensionMismatch("covering lives in another space".into()));
        }
        if e.dim() == 0 || !module.support.contains(&e.support)? || e.support == module.support {
            return Err(ModextError::NotACover(format!("{:?} is not a proper nonzero submodule", e.support)));
        }
    }
    if !covers(module, covering, budget)? {
        return Err(ModextError::NotACover("some element lies in no part".into()));
    }
    budget.check_vectors("inclusion-exclusion subsets", 1u128 << r.min(127))?;
    let mut v = BTreeMap::new();
    let mut u = BTreeMap::new();
    for mask in 0u64..(1u64 << r) {
        let mut inter = module.support.clone();
        for (i, e) in covering.iter().enumerate() {
            if mask >> i & 1 == 1 {
                inter = inter.intersect(&e.support)?;
            }
        }
        let side = if mask.count_ones() % 2 == 0 { &mut v } else { &mut u };
        *side.entry(inter).or_insert(0) += 1;
    }
    SolutionPair::new(module.space, v, u, budget)
}

/// A hom `W -> M_{m x k}` whose kernel has support `s`.
///
/// The unit vectors spanning the coordinate complement of `s` go to the
/// first `t - dim s` unit rows of `F_q^k`.
pub fn hom_with_kernel(space: ModuleSpace, s: &Subspace, k: usize) -> Result<Hom> {
    Submodule::new(space, s.clone())?;
    let t = space.t;
    let rank = t - s.dim();
    if rank > k {
        return Err(ModextError::RankInfeasible { ambient: t, kernel_dim: s.dim(), k });
    }
    let f = space.field;
    if t == 0 {
        return Hom::new(space, FqMatrix::zeros(f, 0, k));
    }
    let basis_change = s.basis().vstack(&s.complement_basis())?;
    let mut target = FqMatrix::zeros(f, t, k);
    for i in 0..rank {
        target.set(s.dim() + i, i, 1);
    }
    let g = basis_change.inverse()?.mul(&target)?;
    Hom::new(space, g)
}

/// `N = ∏_{i=1}^{m} (1 + q^i)`.
pub fn minimal_unextendable_length(q: u64, m: usize) -> BigInt {
    (1..=m as u64).fold(BigInt::one(), |acc, i| acc * (q_power(q, i) + 1))
}

/// `K = ∏_{i=1}^{k-1} (1 + q^i)`, the length of the earlier construction over `M_{m x k}`.
pub fn coarse_unextendable_length(q: u64, k: usize) -> BigInt {
    (1..k as u64).fold(BigInt::one(), |acc, i| acc * (q_power(q, i) + 1))
}

/// `½ ∑_{i=0}^{m+1} q^{C(i,2)} [m+1, i]_q`, which equals `N`.
pub fn layered_length(q: u64, m: usize) -> BigInt {
    let t = m as i64 + 1;
    let sum = (0..=t).fold(BigInt::zero(), |acc, i| acc + q_power(q, binom2(i as u64)) * gaussian_binomial(t, i, q));
    sum / 2
}

/// The layered solution in `W = M_{m x (m+1)}`: every subspace of
/// codimension `j` with multiplicity `q^{C(j,2)}`, on the `V` side for even
/// `j` and the `U` side for odd `j`.
pub fn layered_solution(q: u64, m: usize, budget: &Budget) -> Result<SolutionPair> {
    let field = PrimeField::new(q)?;
    let t = m + 1;
    let space = ModuleSpace::new(field, m, t);
    let mut v = BTreeMap::new();
    let mut u = BTreeMap::new();
    for s in enumerate_all_subspaces(field, t, budget)? {
        let j = s.codim() as u64;
        let mult =
            q_power(q, binom2(j)).to_u64().ok_or_else(|| ModextError::Input("multiplicity overflows u64".into()))?;
        if j.is_multiple_of(2) {
            v.insert(s, mult);
        } else {
            u.insert(s, mult);
        }
    }
    SolutionPair::new(space, v, u, budget)
}

/// Unextendable isometry of minimum length over `M_{m x k}`, `k > m`.
///
/// Built over `B = M_{m x (m+1)}` from the layered solution and embedded in
/// `A` by appending zero columns to every generator.
pub fn wood_counterexample(q: u64, m: usize, k: usize, budget: &Budget) -> Result<(Code, Code)> {
    let alphabet = Alphabet::new(q, m, k)?;
    if k <= m {
        return Err(ModextError::ExtensionPropertyHolds { m, k });
    }
    let sol = layered_solution(q, m, budget)?;
    let build = |side: &BTreeMap<Subspace, u64>| -> Result<Code> {
        let mut gens = Vec::new();
        for (s, &n) in side.iter().rev() {
            let g = hom_with_kernel(sol.space, s, m + 1)?.matrix.pad_cols(k - m - 1);
            gens.extend(std::iter::repeat_n(g, n as usize));
        }
        Code::new(alphabet, m + 1, gens)
    };
    Ok((build(&sol.v)?, build(&sol.u)?))
}

/// Codes whose kernel tuples are the two sides of `sol`.
///
/// Columns are listed by descending support dimension on each side.
pub fn solution_to_codes(sol: &SolutionPair, k: usize) -> Result<(Code, Code)> {
    let alphabet = Alphabet::new(sol.space.field.q() as u64, sol.space.m, k)?;
    let build = |side: &BTreeMap<Subspace, u64>| -> Result<Code> {
        let mut gens = Vec::new();
        for (s, &n) in side.iter().rev() {
            let g = hom_with_kernel(sol.space, s, k)?.matrix;
            gens.extend(std::iter::repeat_n(g, n as usize));
        }
        Code::new(alphabet, sol.space.t, gens)
    };
    Ok((build(&sol.v)?, build(&sol.u)?))
}

/// The isometry equation as a linear system `Z·c = 0` over the integers.
///
/// Rows are the evaluation points (subspaces of dimension `<= m`), columns
/// are all subspaces, `Z[S][K] = 1` iff `S ⊆ K`. Positive entries of a kernel
/// vector form the `V` side, negative entries the `U` side.
#[derive(Debug, Clone)]
pub struct IncidenceSystem {
    pub space: ModuleSpace,
    pub rows: Vec<Subspace>,
    pub cols: Vec<Subspace>,
    pub z: Vec<Vec<u8>>,
}

pub fn incidence_matrix(q: u64, m: usize, t: usize, budget: &Budget) -> Result<IncidenceSystem> {
    let field = PrimeField::new(q)?;
    let space = ModuleSpace::new(field, m, t);
    let cols = enumerate_all_subspaces(field, t, budget)?;
    let rows: Vec<Subspace> = cols.iter().filter(|s| s.dim() <= m).cloned().collect();
    budget.check_vectors("incidence entries", rows.len() as u128 * cols.len() as u128)?;
    let z =
        rows.iter().map(|s| cols.iter().map(|k| u8::from(k.contains(s).expect("same ambient"))).collect()).collect();
    Ok(IncidenceSystem { space, rows, cols, z })
}

impl IncidenceSystem {
    /// `Z·c`.
    pub fn apply(&self, c: &[i64]) -> Vec<i64> {
        self.z.iter().map(|row| row.iter().zip(c).map(|(&z, &x)| z as i64 * x).sum()).collect()
    }

    pub fn col_index(&self, s: &Subspace) -> Option<usize> {
        self.cols.binary_search(s).ok()
    }

    pub fn to_vector(&self, sol: &SolutionPair) -> Result<Vec<i64>> {
        let mut c = vec![0i64; self.cols.len()];
        for (side, sign) in [(&sol.v, 1i64), (&sol.u, -1i64)] {
            for (s, &n) in side {
                let i =
                    self.col_index(s).ok_or_else(|| ModextError::DimensionMismatch(format!("{s:?} not a column")))?;
                c[i] += sign * n as i64;
            }
        }
        Ok(c)
    }

    pub fn from_vector(&self, c: &[i64], budget: &Budget) -> Result<SolutionPair> {
        if c.len() != self.cols.len() {
            return Err(ModextError::Shape(format!("{} entries for {} columns", c.len(), self.cols.len())));
        }
        let mut v = BTreeMap::new();
        let mut u = BTreeMap::new();
        for (s, &x) in self.cols.iter().zip(c) {
            if x > 0 {
                v.insert(s.clone(), x as u64);
            } else if x < 0 {
                u.insert(s.clone(), x.unsigned_abs());
            }
        }
        SolutionPair::new(self.space, v, u, budget)
    }

    /// `(-1)^j q^{C(j,2)}` on every column of codimension `j`.
    pub fn layered_vector(&self) -> Vec<i64> {
        let q = self.space.field.q() as i64;
        self.cols
            .iter()
            .map(|s| {
                let j = s.codim() as u64;
                let mag = q.pow(binom2(j) as u32);
                if j.is_multiple_of(2) {
                    mag
                } else {
                    -mag
                }
            })
            .collect()
    }

    /// Rational dimension of `{c : Z·c = 0, c_K = 0 for K not allowed}`.
    pub fn kernel_dimension(&self, allowed: &[bool]) -> usize {
        let cols: Vec<usize> = (0..self.cols.len()).filter(|&i| allowed[i]).collect();
        let mat: Vec<Vec<BigInt>> =
            self.z.iter().map(|row| cols.iter().map(|&i| BigInt::from(row[i])).collect()).collect();
        cols.len() - rational_rank(mat)
    }

    /// Columns of dimension `<= m`, i.e. cyclic submodules.
    pub fn cyclic_columns(&self) -> Vec<bool> {
        self.cols.iter().map(|s| s.dim() <= self.space.m).collect()
    }
}

/// Rank over `Q` by fraction-free (Bareiss) elimination.
pub fn rational_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in (rank + 1)..rows {
            for j in (c + 1)..cols {
                let v = (&a[rank][c] * &a[r][j] - &a[r][c] * &a[rank][j]) / &prev;
                a[r][j] = v;
            }
            a[r][c] = BigInt::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Outcome of the minimum-length search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    /// `½‖c‖₁` of the best kernel vector, if any was found within the bound.
    pub min_length: Option<u64>,
    /// Best kernel vector in the system's column order, first nonzero entry positive.
    pub witness: Option<Vec<i64>>,
    /// The search covered every candidate up to the bound.
    pub exhausted: bool,
    pub nodes: u64,
}

struct Search<'a> {
    cyclic: Vec<usize>,
    free: Vec<usize>,
    free_sup: Vec<Vec<usize>>,
    cyc_sup: Vec<Vec<usize>>,
    ready_at: Vec<usize>,
    allowed: &'a [bool],
    ncols: usize,
    best_l1: i64,
    best: Option<Vec<i64>>,
    nodes: u64,
    node_limit: u64,
    aborted: bool,
}

impl Search<'_> {
    /// Forced values of every cyclic column already determined by the first
    /// `depth` free values, and their L1 mass. `None` if a disallowed column
    /// would be nonzero.
    fn forced(&self, vals: &[i64], depth: usize, out: &mut [i64]) -> Option<i64> {
        let mut mass = 0;
        for (ci, _) in self.cyclic.iter().enumerate() {
            if self.ready_at[ci] > depth {
                continue;
            }
            let mut s: i64 = self.free_sup[ci].iter().map(|&p| vals[p]).sum();
            s += self.cyc_sup[ci].iter().map(|&cj| out[cj]).sum::<i64>();
            out[ci] = -s;
            if s != 0 && !self.allowed[self.cyclic[ci]] {
                return None;
            }
            mass += s.abs();
        }
        Some(mass)
    }

    fn dfs(&mut self, vals: &mut Vec<i64>, depth: usize, free_l1: i64, scratch: &mut Vec<i64>) {
        if self.aborted {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.node_limit {
            self.aborted = true;
            return;
        }
        let Some(mass) = self.forced(vals, depth, scratch) else {
            return;
        };
        let lb = free_l1 + mass;
        if lb > self.best_l1 {
            return;
        }
        if depth == self.free.len() {
            if free_l1 == 0 {
                return;
            }
            let mut c = vec![0i64; self.ncols];
            for (p, &col) in self.free.iter().enumerate() {
                c[col] = vals[p];
            }
            for (ci, &col) in self.cyclic.iter().enumerate() {
                c[col] = scratch[ci];
            }
            if c.iter().position(|&x| x != 0).is_some_and(|i| c[i] < 0) {
                c.iter_mut().for_each(|x| *x = -*x);
            }
            let better = lb < self.best_l1 || self.best.as_ref().is_none_or(|b| c < *b);
            if better {
                self.best_l1 = lb;
                self.best = Some(c);
            }
            return;
        }
        let leading = vals[..depth].iter().all(|&x| x == 0);
        let room = self.best_l1 - lb;
        let mut order = vec![0i64];
        for v in 1..=room {
            order.push(v);
            if !leading {
                order.push(-v);
            }
        }
        for v in order {
            if free_l1 + v.abs() + mass > self.best_l1 && v != 0 {
                continue;
            }
            vals[depth] = v;
            self.dfs(vals, depth + 1, free_l1 + v.abs(), scratch);
            if self.aborted {
                break;
            }
        }
        vals[depth] = 0;
    }
}

/// Shortest nonzero integer kernel vector of `Z`, supported on `allowed`.
///
/// Free columns (dimension `> m`) are fixed in order of descending
/// dimension; each cyclic column is then forced by its own row,
/// `c_S = -∑_{K ⊋ S} c_K`. A cyclic column's value is known as soon as every
/// free column containing it is fixed, which gives the pruning bound.
pub fn search_kernel(sys: &IncidenceSystem, allowed: &[bool], length_bound: u64, budget: &Budget) -> SearchResult {
    let m = sys.space.m;
    let mut free: Vec<usize> = (0..sys.cols.len()).filter(|&i| sys.cols[i].dim() > m && allowed[i]).collect();
    free.sort_by(|&a, &b| sys.cols[b].dim().cmp(&sys.cols[a].dim()).then(a.cmp(&b)));
    let mut cyclic: Vec<usize> = (0..sys.cols.len()).filter(|&i| sys.cols[i].dim() <= m).collect();
    cyclic.sort_by(|&a, &b| sys.cols[b].dim().cmp(&sys.cols[a].dim()).then(a.cmp(&b)));

    let sup = |s: &Subspace, k: &Subspace| k != s && k.contains(s).expect("same ambient");
    let free_sup: Vec<Vec<usize>> =
        cyclic.iter().map(|&c| (0..free.len()).filter(|&p| sup(&sys.cols[c], &sys.cols[free[p]])).collect()).collect();
    let cyc_sup: Vec<Vec<usize>> = cyclic
        .iter()
        .map(|&c| (0..cyclic.len()).filter(|&j| sup(&sys.cols[c], &sys.cols[cyclic[j]])).collect())
        .collect();
    let ready_at = free_sup.iter().map(|fs| fs.iter().map(|&p| p + 1).max().unwrap_or(0)).collect();

    let mut search = Search {
        ncols: sys.cols.len(),
        cyclic,
        free,
        free_sup,
        cyc_sup,
        ready_at,
        allowed,
        best_l1: 2 * length_bound as i64,
        best: None,
        nodes: 0,
        node_limit: budget.vectors,
        aborted: false,
    };
    let mut vals = vec![0i64; search.free.len()];
    let mut scratch = vec![0i64; search.cyclic.len()];
    search.dfs(&mut vals, 0, 0, &mut scratch);

    let min_length = search.best.as_ref().map(|c| c.iter().map(|x| x.unsigned_abs()).sum::<u64>() / 2);
    SearchResult { min_length, witness: search.best, exhausted: !search.aborted, nodes: search.nodes }
}

/// Minimum length of a nontrivial solution living in `W = M_{m x t}`.
pub fn min_nontrivial_length(q: u64, m: usize, t: usize, length_bound: u64, budget: &Budget) -> Result<SearchResult> {
    if t == 0 || length_bound == 0 {
        return Err(ModextError::Input("t and the length bound must be positive".into()));
    }
    let sys = incidence_matrix(q, m, t, budget)?;
    let allowed = vec![true; sys.cols.len()];
    Ok(search_kernel(&sys, &allowed, length_bound, budget))
}

/// The same search with every column of dimension `> m` excluded.
pub fn min_length_cyclic_only(q: u64, m: usize, t: usize, length_bound: u64, budget: &Budget) -> Result<SearchResult> {
    let sys = incidence_matrix(q, m, t, budget)?;
    let allowed = sys.cyclic_columns();
    Ok(search_kernel(&sys, &allowed, length_bound, budget))
}

/// `|c|` summed, halved: the solution length a kernel vector encodes.
pub fn vector_length(c: &[i64]) -> u64 {
    c.iter().map(|x| x.unsigned_abs()).sum::<u64>() / 2
}
