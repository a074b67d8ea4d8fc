//! Additive characters of `W = M_{m x t}(F_q)` and the dual isometry equation.
//!
//! Characters of `W` are identified with `M_{m x t}` through the trace
//! pairing `⟨X, Y⟩ = tr(X·Yᵀ)`: `Y` gives `X ↦ ζ^{⟨X,Y⟩}` for a fixed primitive
//! `q`-th root of unity `ζ`. Character sums are kept as exact histograms of
//! exponents ([`RootVector`]) instead of complex numbers.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::budget::Budget;
use crate::error::{ModextError, Result};
use crate::linalg::{enumerate_subspaces, FqMatrix, Subspace};
use crate::modcode::{evaluation_points, Hom, KernelTuple, ModuleSpace, Submodule};

/// `∑_j counts[j]·ζ^j` for a primitive `q`-th root of unity `ζ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootVector {
    pub counts: Vec<BigInt>,
}

impl RootVector {
    pub fn zero(q: u32) -> Self {
        RootVector { counts: vec![BigInt::zero(); q as usize] }
    }

    /// The integer value when all mass sits on `ζ^0`.
    pub fn as_integer(&self) -> Option<&BigInt> {
        self.counts[1..].iter().all(Zero::is_zero).then(|| &self.counts[0])
    }

    /// Equal counts on every power: the sum vanishes since `1 + ζ + … + ζ^{q-1} = 0`.
    pub fn is_vanishing(&self) -> bool {
        self.counts.windows(2).all(|w| w[0] == w[1])
    }
}

/// `tr(X·Yᵀ) mod q`.
pub fn pairing(x: &FqMatrix, y: &FqMatrix) -> Result<u32> {
    if x.rows() != y.rows() || x.cols() != y.cols() || x.field() != y.field() {
        return Err(ModextError::Shape(format!("pairing of {}x{} with {}x{}", x.rows(), x.cols(), y.rows(), y.cols())));
    }
    let f = x.field();
    Ok(x.data().iter().zip(y.data()).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b))))
}

/// `ℱ(1_S)(Y) = ∑_{X ∈ S} ζ^{⟨X,Y⟩}`, bucketed by exponent.
pub fn fourier_of_indicator(s: &Submodule, y: &FqMatrix, budget: &Budget) -> Result<RootVector> {
    let q = s.space.field.q();
    let mut rv = RootVector::zero(q);
    for x in s.elements(budget)? {
        rv.counts[pairing(&x, y)? as usize] += 1;
    }
    Ok(rv)
}

/// `S^⊥ ⊆ Ŵ ≅ M_{m x t}`, stored by its row support.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DualSubmodule {
    pub space: ModuleSpace,
    pub support: Subspace,
}

impl DualSubmodule {
    pub fn contains_element(&self, y: &FqMatrix) -> bool {
        (0..y.rows()).all(|r| self.support.contains_vector(y.row(r)))
    }

    pub fn cardinality(&self) -> u128 {
        crate::budget::pow_sat(self.space.field.q() as u64, self.space.m * self.support.dim())
    }

    /// The annihilated submodule back in `W`.
    pub fn orthogonal(&self) -> Submodule {
        Submodule { space: self.space, support: self.support.orthogonal() }
    }
}

/// The characters trivial on `S`: row supports orthogonal to `S`'s support.
pub fn orthogonal_submodule(s: &Submodule) -> DualSubmodule {
    DualSubmodule { space: s.space, support: s.support.orthogonal() }
}

/// Checks `∑ |V_i|·1_{V_i^⊥} = ∑ |U_i|·1_{U_i^⊥}` as functions on `Ŵ`.
///
/// Whether `Y ∈ V^⊥` depends only on the row space of `Y`, which has
/// dimension at most `m`; those row spaces are the evaluation points.
pub fn verify_dual_equation(v: &KernelTuple, u: &KernelTuple, budget: &Budget) -> Result<bool> {
    if v.space != u.space {
        return Err(ModextError::DimensionMismatch("kernel tuples on different spaces".into()));
    }
    let space = v.space;
    let weighted = |kt: &KernelTuple, t: &Subspace| -> u128 {
        kt.counts
            .iter()
            .filter(|(sup, _)| sup.orthogonal().contains(t).unwrap_or(false))
            .map(|(sup, &n)| n as u128 * Submodule { space, support: sup.clone() }.cardinality())
            .sum()
    };
    for t in evaluation_points(&space, budget)? {
        if weighted(v, &t) != weighted(u, &t) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Dual weighted sums at every subspace of every dimension, including row
/// spaces no character can have. Diagnostic only.
pub fn dual_counts_all_dims(kt: &KernelTuple, budget: &Budget) -> Result<Vec<(Subspace, u128)>> {
    let space = kt.space;
    let mut out = Vec::new();
    for d in 0..=space.t {
        for t in enumerate_subspaces(space.field, space.t, d, budget)? {
            let w = kt
                .counts
                .iter()
                .filter(|(sup, _)| sup.orthogonal().contains(&t).unwrap_or(false))
                .map(|(sup, &n)| n as u128 * Submodule { space, support: sup.clone() }.cardinality())
                .sum();
            out.push((t, w));
        }
    }
    Ok(out)
}

/// `(Ker σ)^⊥ = Img σ̂` for `σ: X ↦ XG`.
///
/// Under the trace pairing `σ̂(Y') = Y'·Gᵀ`, so the image has row support
/// equal to the column space of `G`. Checked structurally and then by
/// enumerating `σ̂` on all of `M_{m x k}`.
pub fn image_kernel_duality_check(h: &Hom, budget: &Budget) -> Result<bool> {
    let space = h.source;
    let (f, m, k) = (space.field, space.m, h.k());
    let kernel_perp = orthogonal_submodule(&h.kernel());
    let column_space = Subspace::span(&h.matrix.transpose());
    if kernel_perp.support != column_space {
        return Ok(false);
    }
    budget.check_vectors("character module elements", crate::budget::pow_sat(f.q() as u64, m * k))?;
    let gt = h.matrix.transpose();
    let mut images = std::collections::HashSet::new();
    for d in crate::linalg::Counter::new(f.q(), m * k) {
        let y = FqMatrix::from_residues(f, m, k, d)?;
        let img = if space.t == 0 { FqMatrix::zeros(f, m, 0) } else { y.mul(&gt)? };
        if !kernel_perp.contains_element(&img) {
            return Ok(false);
        }
        images.insert(img);
    }
    Ok(images.len() as u128 == kernel_perp.cardinality())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::PrimeField;

    fn f(q: u64) -> PrimeField {
        PrimeField::new(q).unwrap()
    }

    #[test]
    fn pairing_examples() {
        let f2 = f(2);
        let id = FqMatrix::identity(f2, 2);
        assert_eq!(pairing(&id, &id).unwrap(), 0);
        assert_eq!(pairing(&id, &FqMatrix::zeros(f2, 2, 2)).unwrap(), 0);
        assert!(pairing(&id, &FqMatrix::zeros(f2, 1, 2)).is_err());
    }

    #[test]
    fn pairing_is_nondegenerate() {
        let b = Budget::default();
        for (m, t) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            let w = ModuleSpace::new(f(2), m, t);
            let els = w.elements(&b).unwrap();
            for x in els.iter().filter(|x| !x.is_zero()) {
                assert!(els.iter().any(|y| pairing(x, y).unwrap() != 0));
            }
        }
    }

    #[test]
    fn indicator_transform_examples() {
        let b = Budget::default();
        let w = ModuleSpace::new(f(2), 1, 2);
        let y = FqMatrix::from_rows(f(2), 2, &[vec![0, 1]]).unwrap();
        let rv = fourier_of_indicator(&w.zero(), &y, &b).unwrap();
        assert_eq!(rv.as_integer(), Some(&BigInt::from(1)));
        let rv = fourier_of_indicator(&w.full(), &FqMatrix::zeros(f(2), 1, 2), &b).unwrap();
        assert_eq!(rv.as_integer(), Some(&BigInt::from(4)));
        let line = Submodule::new(w, Subspace::span_rows(f(2), 2, &[vec![1, 0]]).unwrap()).unwrap();
        let rv = fourier_of_indicator(&line, &y, &b).unwrap();
        assert_eq!(rv.counts, vec![BigInt::from(2), BigInt::from(0)]);
        let rv = fourier_of_indicator(&line, &FqMatrix::from_rows(f(2), 2, &[vec![1, 1]]).unwrap(), &b).unwrap();
        assert!(rv.is_vanishing());
    }

    #[test]
    fn orthogonal_examples() {
        let w = ModuleSpace::new(f(2), 1, 2);
        assert!(orthogonal_submodule(&w.zero()).support.is_full());
        assert!(orthogonal_submodule(&w.full()).support.is_zero());
        let diag = Submodule::new(w, Subspace::span_rows(f(2), 2, &[vec![1, 1]]).unwrap()).unwrap();
        let perp = orthogonal_submodule(&diag);
        assert_eq!(perp.support, diag.support);
        assert_eq!(diag.cardinality() * perp.cardinality(), w.cardinality());
        assert_eq!(perp.orthogonal(), diag);
    }

    #[test]
    fn duality_on_identity_and_zero() {
        let b = Budget::default();
        let w = ModuleSpace::new(f(3), 2, 2);
        assert!(image_kernel_duality_check(&Hom::new(w, FqMatrix::identity(f(3), 2)).unwrap(), &b).unwrap());
        assert!(image_kernel_duality_check(&Hom::new(w, FqMatrix::zeros(f(3), 2, 3)).unwrap(), &b).unwrap());
    }

    #[test]
    fn duality_exhaustive_small() {
        // all 64 generators of shape 3x2 over F_2
        let b = Budget::default();
        let w = ModuleSpace::new(f(2), 1, 3);
        for d in crate::linalg::Counter::new(2, 6) {
            let g = FqMatrix::from_residues(f(2), 3, 2, d).unwrap();
            assert!(image_kernel_duality_check(&Hom::new(w, g).unwrap(), &b).unwrap());
        }
    }

    #[test]
    fn dual_equation_rejects_mismatched_spaces() {
        let v = KernelTuple::from_supports(ModuleSpace::new(f(2), 1, 2), []);
        let u = KernelTuple::from_supports(ModuleSpace::new(f(2), 1, 3), []);
        assert!(verify_dual_equation(&v, &u, &Budget::default()).is_err());
        assert!(verify_dual_equation(&v, &v, &Budget::default()).unwrap());
    }
}
