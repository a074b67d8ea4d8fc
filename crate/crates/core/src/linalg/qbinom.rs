use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::budget::Budget;
use crate::error::{ModextError, Result};

use super::{enumerate_subspaces, Subspace};

/// `i choose 2`.
pub fn binom2(i: u64) -> u64 {
    if i < 2 {
        0
    } else {
        i * (i - 1) / 2
    }
}

pub fn q_power(q: u64, e: u64) -> BigInt {
    num_traits::pow(BigInt::from(q), e as usize)
}

/// Gaussian binomial `(t choose i)_q`, zero outside `0 <= i <= t`.
pub fn gaussian_binomial(t: i64, i: i64, q: u64) -> BigInt {
    if i < 0 || t < 0 || i > t {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..i {
        num *= q_power(q, (t - j) as u64) - 1;
        den *= q_power(q, (j + 1) as u64) - 1;
    }
    num / den
}

/// Checks both evaluations of the Cauchy binomial theorem at `x = -1` and `x = 1`:
///
/// ```text
/// sum_{i<t} (-1)^i q^C(i,2) [t,i]_q = (-1)^(t-1) q^C(t,2)
/// sum_{i<=t}       q^C(i,2) [t,i]_q = prod_{i<t} (1 + q^i)
/// ```
pub fn cauchy_identities_check(t: u64, q: u64) -> bool {
    if t == 0 {
        return false;
    }
    let ti = t as i64;
    let mut alternating = BigInt::zero();
    let mut plain = BigInt::zero();
    for i in 0..=ti {
        let term = q_power(q, binom2(i as u64)) * gaussian_binomial(ti, i, q);
        if i < ti {
            if i % 2 == 0 {
                alternating += &term;
            } else {
                alternating -= &term;
            }
        }
        plain += term;
    }
    let sign = if (t - 1).is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
    let rhs_alt = sign * q_power(q, binom2(t));
    let rhs_prod = (0..t).fold(BigInt::one(), |acc, i| acc * (q_power(q, i) + 1));
    alternating == rhs_alt && plain == rhs_prod
}

/// Number of `i`-dimensional subspaces containing `x`.
pub fn count_subspaces_containing(x: &Subspace, i: usize) -> Result<BigInt> {
    let (p, t) = (x.dim(), x.ambient());
    if i < p || i > t {
        return Err(ModextError::DimensionOutOfRange { dim: i, lo: p, hi: t });
    }
    Ok(gaussian_binomial((t - p) as i64, (i - p) as i64, x.field().q() as u64))
}

/// Same count by listing every `i`-dimensional subspace.
pub fn count_subspaces_containing_by_enumeration(x: &Subspace, i: usize, budget: &Budget) -> Result<u64> {
    let (p, t) = (x.dim(), x.ambient());
    if i < p || i > t {
        return Err(ModextError::DimensionOutOfRange { dim: i, lo: p, hi: t });
    }
    let mut n = 0;
    for v in enumerate_subspaces(x.field(), t, i, budget)? {
        if v.contains(x)? {
            n += 1;
        }
    }
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::PrimeField;

    #[test]
    fn small_values() {
        for q in [2, 3, 5] {
            for t in 0..5 {
                assert_eq!(gaussian_binomial(t, 0, q), BigInt::one());
                assert_eq!(gaussian_binomial(t, t, q), BigInt::one());
            }
        }
        assert_eq!(gaussian_binomial(2, 1, 2), BigInt::from(3));
        assert_eq!(gaussian_binomial(4, 2, 2), BigInt::from(35));
        assert_eq!(gaussian_binomial(3, -1, 2), BigInt::zero());
        assert_eq!(gaussian_binomial(3, 4, 2), BigInt::zero());
    }

    #[test]
    fn identities_examples() {
        // t = 2, q = 2: 1 - 3 = -2 and 1 + 3 + 2 = 6
        assert!(cauchy_identities_check(2, 2));
        assert!(cauchy_identities_check(1, 5));
        assert!(cauchy_identities_check(4, 3));
        assert!(!cauchy_identities_check(0, 2));
    }

    #[test]
    fn containing_counts() {
        let f = PrimeField::new(2).unwrap();
        let b = Budget::default();
        let zero = Subspace::zero(f, 3);
        assert_eq!(count_subspaces_containing(&zero, 1).unwrap(), BigInt::from(7));
        let full = Subspace::full(f, 3);
        assert_eq!(count_subspaces_containing(&full, 3).unwrap(), BigInt::one());
        let line = Subspace::span_rows(f, 3, &[vec![1, 0, 1]]).unwrap();
        assert_eq!(count_subspaces_containing(&line, 2).unwrap(), BigInt::from(3));
        assert_eq!(count_subspaces_containing_by_enumeration(&line, 2, &b).unwrap(), 3);
        assert!(count_subspaces_containing(&line, 0).is_err());
        assert!(count_subspaces_containing(&line, 4).is_err());
    }
}
