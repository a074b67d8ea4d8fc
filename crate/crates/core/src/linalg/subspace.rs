use std::cmp::Ordering;
use std::fmt;

use num_traits::ToPrimitive;

use crate::budget::{pow_sat, Budget};
use crate::error::{ModextError, Result};

use super::{gaussian_binomial, FqMatrix, PrimeField};

/// A subspace of `F_q^t`, stored by its reduced row-echelon basis.
///
/// The basis is canonical, so structural equality is subspace equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: FqMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    /// Span of the rows of `generators`.
    pub fn span(generators: &FqMatrix) -> Self {
        let red = generators.rref();
        let keep: Vec<usize> = (0..red.rank).collect();
        Subspace { ambient: generators.cols(), basis: red.matrix.select_rows(&keep), pivots: red.pivots }
    }

    pub fn span_rows(field: PrimeField, ambient: usize, rows: &[Vec<i64>]) -> Result<Self> {
        Ok(Self::span(&FqMatrix::from_rows(field, ambient, rows)?))
    }

    pub fn zero(field: PrimeField, ambient: usize) -> Self {
        Subspace { ambient, basis: FqMatrix::zeros(field, 0, ambient), pivots: Vec::new() }
    }

    pub fn full(field: PrimeField, ambient: usize) -> Self {
        Subspace { ambient, basis: FqMatrix::identity(field, ambient), pivots: (0..ambient).collect() }
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.basis.field()
    }

    #[inline]
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    #[inline]
    pub fn codim(&self) -> usize {
        self.ambient - self.dim()
    }

    pub fn basis(&self) -> &FqMatrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient || self.field() != other.field() {
            return Err(ModextError::DimensionMismatch(format!(
                "subspaces of F_{}^{} and F_{}^{}",
                self.field().q(),
                self.ambient,
                other.field().q(),
                other.ambient
            )));
        }
        Ok(())
    }

    /// Whether `v` (length `ambient`) lies in the subspace.
    pub fn contains_vector(&self, v: &[u32]) -> bool {
        debug_assert_eq!(v.len(), self.ambient);
        let f = self.field();
        // Reduce v against the echelon basis; it lies in the span iff it vanishes.
        let mut r = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            let c = r[p];
            if c == 0 {
                continue;
            }
            for (j, x) in r.iter_mut().enumerate() {
                *x = f.sub(*x, f.mul(c, self.basis.get(i, j)));
            }
        }
        r.iter().all(|&x| x == 0)
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(other.dim() <= self.dim() && (0..other.dim()).all(|i| self.contains_vector(other.basis.row(i))))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        Ok(Subspace::span(&self.basis.vstack(&other.basis)?))
    }

    /// Intersection via the kernel of the stacked bases: `aS = -bT` gives `aS ∈ S ∩ T`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let stacked = self.basis.vstack(&other.basis)?;
        let ker = row_kernel(&stacked);
        let d = self.dim();
        let mut rows = Vec::with_capacity(ker.dim());
        for i in 0..ker.dim() {
            let a = &ker.basis.row(i)[..d];
            rows.push(self.basis.vec_mul(a));
        }
        let data: Vec<u32> = rows.concat();
        let gens = FqMatrix::from_residues(self.field(), rows.len(), self.ambient, data)?;
        Ok(Subspace::span(&gens))
    }

    /// Orthogonal complement under the standard dot product.
    pub fn orthogonal(&self) -> Subspace {
        if self.dim() == 0 {
            return Subspace::full(self.field(), self.ambient);
        }
        row_kernel(&self.basis.transpose())
    }

    /// Basis of the coordinate complement: unit vectors at the non-pivot columns.
    pub fn complement_basis(&self) -> FqMatrix {
        let f = self.field();
        let free: Vec<usize> = (0..self.ambient).filter(|c| !self.pivots.contains(c)).collect();
        let mut m = FqMatrix::zeros(f, free.len(), self.ambient);
        for (i, &c) in free.iter().enumerate() {
            m.set(i, c, 1);
        }
        m
    }

    /// All `q^dim` vectors of the subspace.
    pub fn vectors(&self, budget: &Budget) -> Result<Vec<Vec<u32>>> {
        let q = self.field().q();
        budget.check_vectors("subspace vectors", pow_sat(q as u64, self.dim()))?;
        let mut out = Vec::new();
        for coeffs in Counter::new(q, self.dim()) {
            out.push(self.basis.vec_mul(&coeffs));
        }
        Ok(out)
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.field().q(), self.ambient, self.dim(), self.basis.data()).cmp(&(
            other.field().q(),
            other.ambient,
            other.dim(),
            other.basis.data(),
        ))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for r in 0..self.dim() {
            if r > 0 {
                write!(f, ", ")?;
            }
            let row: Vec<String> = self.basis.row(r).iter().map(u32::to_string).collect();
            write!(f, "({})", row.join(","))?;
        }
        write!(f, "> in F_{}^{}", self.field().q(), self.ambient)
    }
}

/// Left kernel `{v : vM = 0}`, with `v` of length `rows(M)`.
pub fn row_kernel(m: &FqMatrix) -> Subspace {
    let f = m.field();
    let n = m.rows();
    let red = m.transpose().rref();
    let free: Vec<usize> = (0..n).filter(|c| !red.pivots.contains(c)).collect();
    let mut basis = FqMatrix::zeros(f, free.len(), n);
    for (i, &fc) in free.iter().enumerate() {
        basis.set(i, fc, 1);
        for (r, &p) in red.pivots.iter().enumerate() {
            basis.set(i, p, f.neg(red.matrix.get(r, fc)));
        }
    }
    Subspace::span(&basis)
}

/// All subspaces of `F_q^t` of dimension `d`, in canonical sorted order.
pub fn enumerate_subspaces(field: PrimeField, t: usize, d: usize, budget: &Budget) -> Result<Vec<Subspace>> {
    if d > t {
        return Err(ModextError::DimensionOutOfRange { dim: d, lo: 0, hi: t });
    }
    let count = gaussian_binomial(t as i64, d as i64, field.q() as u64);
    budget.check_subspaces("subspace enumeration", count.to_u128().unwrap_or(u128::MAX))?;
    let q = field.q();
    let mut out = Vec::with_capacity(count.to_usize().unwrap_or(0));
    for pivots in combinations(t, d) {
        // Free positions: row i, column c > pivot_i that is not itself a pivot.
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| ((p + 1)..t).filter(|c| !pivots.contains(c)).map(move |c| (i, c)))
            .collect();
        for vals in Counter::new(q, free.len()) {
            let mut basis = FqMatrix::zeros(field, d, t);
            for (i, &p) in pivots.iter().enumerate() {
                basis.set(i, p, 1);
            }
            for (&(i, c), &v) in free.iter().zip(&vals) {
                basis.set(i, c, v);
            }
            out.push(Subspace { ambient: t, basis, pivots: pivots.clone() });
        }
    }
    out.sort();
    Ok(out)
}

/// Every subspace of `F_q^t`, ordered by dimension then canonical basis.
pub fn enumerate_all_subspaces(field: PrimeField, t: usize, budget: &Budget) -> Result<Vec<Subspace>> {
    let mut out = Vec::new();
    for d in 0..=t {
        out.extend(enumerate_subspaces(field, t, d, budget)?);
        budget.check_subspaces("subspace enumeration", out.len() as u128)?;
    }
    Ok(out)
}

pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Odometer over `[0, q)^len`, little-endian. Yields one empty vector when `len == 0`.
#[derive(Debug, Clone)]
pub(crate) struct Counter {
    q: u32,
    cur: Vec<u32>,
    done: bool,
}

impl Counter {
    pub(crate) fn new(q: u32, len: usize) -> Self {
        Counter { q, cur: vec![0; len], done: false }
    }
}

impl Iterator for Counter {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        if self.done {
            return None;
        }
        let item = self.cur.clone();
        let mut i = 0;
        loop {
            if i == self.cur.len() {
                self.done = true;
                break;
            }
            self.cur[i] += 1;
            if self.cur[i] < self.q {
                break;
            }
            self.cur[i] = 0;
            i += 1;
        }
        Some(item)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(q: u64) -> PrimeField {
        PrimeField::new(q).unwrap()
    }

    fn all_vectors(q: u32, t: usize) -> Vec<Vec<u32>> {
        Counter::new(q, t).collect()
    }

    #[test]
    fn kernel_of_identity_and_zero() {
        let k = row_kernel(&FqMatrix::identity(f(2), 2));
        assert!(k.is_zero());
        let k = row_kernel(&FqMatrix::zeros(f(2), 2, 2));
        assert_eq!(k, Subspace::full(f(2), 2));
    }

    #[test]
    fn kernel_of_column_ones() {
        let m = FqMatrix::from_rows(f(2), 1, &[vec![1], vec![1]]).unwrap();
        let k = row_kernel(&m);
        // brute force over the 4 vectors of F_2^2
        let expected: Vec<Vec<u32>> = all_vectors(2, 2).into_iter().filter(|v| m.vec_mul(v) == vec![0]).collect();
        assert_eq!(expected.len(), 2);
        assert_eq!(k, Subspace::span_rows(f(2), 2, &[vec![1, 1]]).unwrap());
        for v in expected {
            assert!(k.contains_vector(&v));
        }
    }

    #[test]
    fn sum_of_two_lines() {
        let a = Subspace::span_rows(f(2), 3, &[vec![1, 0, 0]]).unwrap();
        let b = Subspace::span_rows(f(2), 3, &[vec![0, 1, 0]]).unwrap();
        let s = a.sum(&b).unwrap();
        let members: Vec<_> = all_vectors(2, 3).into_iter().filter(|v| s.contains_vector(v)).collect();
        assert_eq!(members.len(), 4);
        assert!(members.iter().all(|v| v[2] == 0));
        assert_eq!(s, Subspace::span_rows(f(2), 3, &[vec![1, 0, 0], vec![0, 1, 0]]).unwrap());
    }

    #[test]
    fn self_dual_line() {
        let l = Subspace::span_rows(f(2), 2, &[vec![1, 1]]).unwrap();
        assert_eq!(l.orthogonal(), l);
    }

    #[test]
    fn intersect_with_full_is_identity() {
        let full = Subspace::full(f(3), 3);
        for s in enumerate_all_subspaces(f(3), 3, &Budget::default()).unwrap() {
            assert_eq!(full.intersect(&s).unwrap(), s);
        }
    }

    #[test]
    fn mismatch_is_error() {
        let a = Subspace::zero(f(2), 2);
        let b = Subspace::zero(f(2), 3);
        assert!(matches!(a.contains(&b), Err(ModextError::DimensionMismatch(_))));
        assert!(a.sum(&b).is_err());
        assert!(a.intersect(&b).is_err());
    }

    #[test]
    fn enumeration_examples() {
        let b = Budget::default();
        assert_eq!(enumerate_subspaces(f(2), 3, 1, &b).unwrap().len(), 7);
        let zero = enumerate_subspaces(f(2), 3, 0, &b).unwrap();
        assert_eq!(zero, vec![Subspace::zero(f(2), 3)]);
        assert_eq!(enumerate_subspaces(f(3), 2, 1, &b).unwrap().len(), 4);
        assert!(enumerate_subspaces(f(2), 2, 3, &b).is_err());
    }

    #[test]
    fn enumeration_budget() {
        let tiny = Budget::new(3, 100);
        assert!(matches!(enumerate_subspaces(f(2), 3, 1, &tiny), Err(ModextError::Budget { .. })));
    }

    #[test]
    fn lines_match_nonzero_vectors() {
        // every nonzero vector lies on exactly one line
        let lines = enumerate_subspaces(f(3), 3, 1, &Budget::default()).unwrap();
        for v in all_vectors(3, 3).into_iter().filter(|v| v.iter().any(|&x| x != 0)) {
            assert_eq!(lines.iter().filter(|l| l.contains_vector(&v)).count(), 1);
        }
    }

    #[test]
    fn counter_enumerates() {
        assert_eq!(Counter::new(3, 2).count(), 9);
        assert_eq!(Counter::new(2, 0).count(), 1);
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
    }
}
