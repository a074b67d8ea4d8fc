use thiserror::Error;

/// Errors raised by the library. Each variant maps onto one CLI exit class
/// (see [`ModextError::exit_code`]).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModextError {
    #[error("{0} is not a prime modulus")]
    NotPrime(u64),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("enumeration budget exceeded: {what} needs {needed}, budget is {limit}")]
    Budget { what: String, needed: u128, limit: u64 },
    #[error("dimension {dim} out of range {lo}..={hi}")]
    DimensionOutOfRange { dim: usize, lo: usize, hi: usize },
    #[error("a hom with kernel of dimension {kernel_dim} in F_q^{ambient} needs rank {} > k = {k}", ambient - kernel_dim)]
    RankInfeasible { ambient: usize, kernel_dim: usize, k: usize },
    #[error("matrix is not invertible")]
    Singular,
    #[error("the two codes do not define a Hamming isometry")]
    NotAnIsometry,
    #[error("alphabet M_{{{m}x{k}}} over M_{m} has the extension property (k <= m): no unextendable isometry exists")]
    ExtensionPropertyHolds { m: usize, k: usize },
    #[error("the given submodules do not cover the module: {0}")]
    NotACover(String),
    #[error("the code is identically zero")]
    ZeroCode,
    #[error("the parametrization is not injective")]
    NotInjective,
    #[error("code is not MDS")]
    NotMds,
    #[error("MDS codes of dimension 2 are excluded")]
    ExcludedDimension,
    #[error("not a solution of the isometry equation: {0}")]
    NotASolution(String),
    #[error("invalid input: {0}")]
    Input(String),
}

impl ModextError {
    /// Process exit code used by the CLI for this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            ModextError::Budget { .. } => 3,
            ModextError::ExtensionPropertyHolds { .. }
            | ModextError::NotMds
            | ModextError::ExcludedDimension
            | ModextError::NotAnIsometry
            | ModextError::NotInjective
            | ModextError::ZeroCode => 2,
            _ => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, ModextError>;
