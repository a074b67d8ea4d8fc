//! Singleton bound, MDS detection, and the MDS extension theorem.

use rayon::prelude::*;
use serde::Serialize;

use crate::budget::{pow_sat, Budget};
use crate::error::{ModextError, Result};
use crate::linalg::{combinations, Counter, FqMatrix};
use crate::modcode::{
    extend_to_monomial, is_isometry_criterion, kernel_tuple, Code, Extension, KernelDiff, MonomialMap,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MdsReport {
    pub n: usize,
    pub d: usize,
    /// `n - d + 1`.
    pub kappa: usize,
    /// `|C| = q^{m·log_size}`.
    pub log_size: usize,
    /// `|C| = |A|^κ`.
    pub is_mds: bool,
    /// Every column surjective and every κ columns jointly injective.
    pub lemma_conditions: bool,
    /// `|C| <= |A|^κ`.
    pub singleton_holds: bool,
    /// Columns violating the column conditions, if any.
    pub witnesses: Option<Vec<usize>>,
}

/// Minimum Hamming weight of a nonzero codeword.
pub fn min_distance(code: &Code, budget: &Budget) -> Result<usize> {
    code.space.elements(budget)?.iter().map(|x| code.weight_at(x)).filter(|&w| w > 0).min().ok_or(ModextError::ZeroCode)
}

fn joint_rank(code: &Code, cols: &[usize]) -> usize {
    let mut it = cols.iter().map(|&i| &code.columns[i].matrix);
    let first = it.next().expect("nonempty subset").clone();
    it.fold(first, |acc, g| acc.hstack(g).expect("same height")).rank()
}

/// Singleton data and both characterizations of MDS for an injective parametrization.
pub fn is_mds(code: &Code, budget: &Budget) -> Result<MdsReport> {
    let t = code.space.t;
    let k = code.alphabet.k;
    let n = code.len();
    let rank = code.stacked().rank();
    if rank != t {
        return Err(ModextError::NotInjective);
    }
    let d = min_distance(code, budget)?;
    let kappa = n - d + 1;
    // |C| = q^{m t}, |A|^κ = q^{m k κ}
    let singleton_holds = t <= k * kappa;
    let is_mds = t == k * kappa;

    let witnesses = if let Some(i) = (0..n).find(|&i| code.columns[i].rank() < k) {
        Some(vec![i])
    } else {
        budget.check_vectors("column subsets", binomial_u128(n, kappa))?;
        combinations(n, kappa).into_iter().find(|s| joint_rank(code, s) < t)
    };
    Ok(MdsReport {
        n,
        d,
        kappa,
        log_size: t,
        is_mds,
        lemma_conditions: witnesses.is_none(),
        singleton_holds,
        witnesses,
    })
}

fn binomial_u128(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc.saturating_mul((n - i) as u128) / (i as u128 + 1))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MdsCheck {
    Extended(MonomialMap),
    /// Kernel multisets differ for an MDS code of dimension `!= 2`. Never
    /// expected; signals a defect.
    TheoremViolation(KernelDiff),
}

/// Extends an isometry of an MDS code of dimension `κ != 2` to a monomial map.
pub fn mds_extension_check(lam: &Code, mu: &Code, budget: &Budget) -> Result<MdsCheck> {
    let report = is_mds(lam, budget)?;
    if !report.is_mds {
        return Err(ModextError::NotMds);
    }
    if report.kappa == 2 {
        return Err(ModextError::ExcludedDimension);
    }
    if !is_isometry_criterion(lam, mu, budget)? {
        return Err(ModextError::NotAnIsometry);
    }
    debug_assert!(lam.columns.iter().all(|h| h.rank() == lam.alphabet.k));
    if kernel_tuple(lam) != kernel_tuple(mu) {
        let (kv, ku) = (kernel_tuple(lam), kernel_tuple(mu));
        return Ok(MdsCheck::TheoremViolation(KernelDiff {
            only_lambda: kv.excess_over(&ku),
            only_mu: ku.excess_over(&kv),
        }));
    }
    match extend_to_monomial(lam, mu, budget)? {
        Extension::Extendable(map) => Ok(MdsCheck::Extended(map)),
        Extension::Unextendable(diff) => Ok(MdsCheck::TheoremViolation(diff)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanEntry {
    pub mu: Code,
    pub extendable: bool,
}

/// Every `μ` (all `t x k` generators per column) with `wt(μ(X)) = wt(λ(X))`
/// for all `X`, each with its extendability verdict.
pub fn exhaustive_isometry_scan(code: &Code, budget: &Budget) -> Result<Vec<ScanEntry>> {
    let (f, t, k, n) = (code.alphabet.field, code.space.t, code.alphabet.k, code.len());
    let q = f.q() as u64;
    budget.check_vectors("isometry scan tuples", pow_sat(q, t * k * n))?;
    let elements = code.space.elements(budget)?;
    let target: Vec<usize> = elements.iter().map(|x| code.weight_at(x)).collect();
    let candidates: Vec<(FqMatrix, Vec<u8>)> = Counter::new(f.q(), t * k)
        .map(|d| {
            let g = FqMatrix::from_residues(f, t, k, d).expect("in range");
            let support =
                elements.iter().map(|x| u8::from(t > 0 && !x.mul(&g).expect("shapes agree").is_zero())).collect();
            (g, support)
        })
        .collect();

    let found: Vec<Vec<usize>> = (0..candidates.len())
        .into_par_iter()
        .flat_map_iter(|first| {
            let mut acc = vec![0usize; target.len()];
            let mut out = Vec::new();
            let mut chosen = vec![first];
            add(&mut acc, &candidates[first].1, 1);
            if fits(&acc, &target) {
                extend(&candidates, &target, n, &mut chosen, &mut acc, &mut out);
            }
            out.into_iter()
        })
        .collect();

    found
        .into_iter()
        .map(|idx| {
            let gens = idx.iter().map(|&i| candidates[i].0.clone()).collect();
            let mu = Code::new(code.alphabet, t, gens)?;
            let extendable = extend_to_monomial(code, &mu, budget)?.is_extendable();
            Ok(ScanEntry { mu, extendable })
        })
        .collect()
}

fn add(acc: &mut [usize], support: &[u8], sign: isize) {
    for (a, &s) in acc.iter_mut().zip(support) {
        *a = (*a as isize + sign * s as isize) as usize;
    }
}

fn fits(acc: &[usize], target: &[usize]) -> bool {
    acc.iter().zip(target).all(|(a, t)| a <= t)
}

fn extend(
    candidates: &[(FqMatrix, Vec<u8>)],
    target: &[usize],
    n: usize,
    chosen: &mut Vec<usize>,
    acc: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if chosen.len() == n {
        if acc == target {
            out.push(chosen.clone());
        }
        return;
    }
    for (i, (_, support)) in candidates.iter().enumerate() {
        add(acc, support, 1);
        if fits(acc, target) {
            chosen.push(i);
            extend(candidates, target, n, chosen, acc, out);
            chosen.pop();
        }
        add(acc, support, -1);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forge::wood_counterexample;
    use crate::linalg::PrimeField;
    use crate::modcode::{apply_monomial, Alphabet};

    fn f(q: u64) -> PrimeField {
        PrimeField::new(q).unwrap()
    }

    fn repetition() -> Code {
        let a = Alphabet::new(2, 1, 1).unwrap();
        Code::new(a, 1, vec![FqMatrix::identity(f(2), 1); 3]).unwrap()
    }

    fn parity() -> Code {
        let a = Alphabet::new(2, 1, 1).unwrap();
        let g = |r: Vec<i64>| FqMatrix::from_vec(f(2), 2, 1, r).unwrap();
        Code::new(a, 2, vec![g(vec![1, 0]), g(vec![0, 1]), g(vec![1, 1])]).unwrap()
    }

    #[test]
    fn distances() {
        let b = Budget::default();
        assert_eq!(min_distance(&repetition(), &b).unwrap(), 3);
        assert_eq!(min_distance(&parity(), &b).unwrap(), 2);
        let (lam, _) = wood_counterexample(2, 1, 2, &b).unwrap();
        assert_eq!(min_distance(&lam, &b).unwrap(), 2);
        let a = Alphabet::new(2, 1, 1).unwrap();
        let zero = Code::new(a, 1, vec![FqMatrix::zeros(f(2), 1, 1)]).unwrap();
        assert_eq!(min_distance(&zero, &b), Err(ModextError::ZeroCode));
    }

    #[test]
    fn mds_reports() {
        let b = Budget::default();
        let r = is_mds(&repetition(), &b).unwrap();
        assert!(r.is_mds && r.lemma_conditions && r.kappa == 1);
        let r = is_mds(&parity(), &b).unwrap();
        assert!(r.is_mds && r.lemma_conditions && r.kappa == 2);
        let (lam, _) = wood_counterexample(2, 1, 2, &b).unwrap();
        let r = is_mds(&lam, &b).unwrap();
        assert!(!r.is_mds && !r.lemma_conditions && r.singleton_holds);
        assert_eq!(r.witnesses, Some(vec![0]));
    }

    #[test]
    fn non_injective_rejected() {
        let a = Alphabet::new(2, 1, 1).unwrap();
        let g = FqMatrix::from_vec(f(2), 2, 1, vec![1, 1]).unwrap();
        let code = Code::new(a, 2, vec![g.clone(), g]).unwrap();
        assert_eq!(is_mds(&code, &Budget::default()), Err(ModextError::NotInjective));
    }

    #[test]
    fn extension_check_paths() {
        let b = Budget::default();
        let rep = repetition();
        let map = MonomialMap { permutation: vec![1, 2, 0], autos: vec![FqMatrix::identity(f(2), 1); 3] };
        let mu = apply_monomial(&map, &rep).unwrap();
        let MdsCheck::Extended(found) = mds_extension_check(&rep, &mu, &b).unwrap() else {
            panic!("repetition code must extend");
        };
        assert_eq!(apply_monomial(&found, &rep).unwrap(), mu);
        assert_eq!(mds_extension_check(&parity(), &parity(), &b), Err(ModextError::ExcludedDimension));
        let (lam, mu) = wood_counterexample(2, 1, 2, &b).unwrap();
        assert_eq!(mds_extension_check(&lam, &mu, &b), Err(ModextError::NotMds));
    }

    #[test]
    fn scan_repetition() {
        let b = Budget::default();
        let scan = exhaustive_isometry_scan(&repetition(), &b).unwrap();
        assert_eq!(scan.len(), 1);
        assert!(scan.iter().all(|e| e.extendable));
    }

    #[test]
    fn scan_budget() {
        assert!(matches!(exhaustive_isometry_scan(&parity(), &Budget::new(10, 10)), Err(ModextError::Budget { .. })));
    }
}
