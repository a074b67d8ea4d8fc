use crate::error::{ModextError, Result};

pub const DEFAULT_SUBSPACE_BUDGET: u64 = 1_000_000;
pub const DEFAULT_VECTOR_BUDGET: u64 = 10_000_000;

/// Environment variable overriding the enumeration budgets.
///
/// Accepts either a single integer (applied to both limits) or
/// `SUBSPACES,VECTORS`.
pub const BUDGET_ENV: &str = "MODCODE_BUDGET";

/// Upper bounds on every exhaustive enumeration. Exceeding one is an error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of subspaces materialized by one enumeration.
    pub subspaces: u64,
    /// Maximum number of vectors, matrices, or search nodes visited.
    pub vectors: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { subspaces: DEFAULT_SUBSPACE_BUDGET, vectors: DEFAULT_VECTOR_BUDGET }
    }
}

impl Budget {
    pub fn new(subspaces: u64, vectors: u64) -> Self {
        Budget { subspaces, vectors }
    }

    /// Defaults, overridden by `MODCODE_BUDGET` when set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(BUDGET_ENV) {
            Ok(raw) => Self::parse(&raw),
            Err(_) => Ok(Self::default()),
        }
    }

    pub fn parse(raw: &str) -> Result<Self> {
        let bad = || ModextError::Input(format!("{BUDGET_ENV}: cannot parse {raw:?}"));
        let parts: Vec<&str> = raw.split(',').map(str::trim).collect();
        match parts.as_slice() {
            [one] => {
                let v = one.parse().map_err(|_| bad())?;
                Ok(Budget::new(v, v))
            }
            [s, v] => Ok(Budget::new(s.parse().map_err(|_| bad())?, v.parse().map_err(|_| bad())?)),
            _ => Err(bad()),
        }
    }

    pub fn check_vectors(&self, what: &str, needed: u128) -> Result<()> {
        if needed > self.vectors as u128 {
            return Err(ModextError::Budget { what: what.into(), needed, limit: self.vectors });
        }
        Ok(())
    }

    pub fn check_subspaces(&self, what: &str, needed: u128) -> Result<()> {
        if needed > self.subspaces as u128 {
            return Err(ModextError::Budget { what: what.into(), needed, limit: self.subspaces });
        }
        Ok(())
    }
}

/// `q^e` as u128, saturating at `u128::MAX`.
pub(crate) fn pow_sat(q: u64, e: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..e {
        acc = acc.saturating_mul(q as u128);
    }
    acc
}
