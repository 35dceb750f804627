//! Finite group cohomology, spectral sequence pages and bordism bookkeeping
//! for unorientable 4-manifolds whose fundamental group has order 2 mod 4.
//!
//! The linear algebra core is generic over [`scalar::Scalar`]; the aliases
//! below fix the concrete rings used by the rest of the crate.

pub mod bordism;
pub mod classification;
pub mod cohomology;
pub mod config;
pub mod gmodule;
pub mod group;
pub mod hypothesis;
pub mod resolution;
pub mod linalg;
pub mod manifold;
pub mod scalar;
pub mod spectral;

use num_bigint::BigInt;

pub use linalg::{AbelianGroup, Overflow, SmithForm};
pub use group::{FiniteGroup, GroupHom, Character2};
pub use scalar::{Gf2, Scalar};

/// Sparse matrix over the integers.
pub type IntMatrix = linalg::SparseMatrix<BigInt>;
/// Sparse matrix over machine integers (overflow checked).
pub type SmallIntMatrix = linalg::SparseMatrix<i64>;
/// Dense matrix over the integers.
pub type DenseIntMatrix = linalg::DenseMatrix<BigInt>;
/// Dense matrix over the two-element field.
pub type Mod2Matrix = linalg::BitMatrix;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("cannot parse {what}: {detail}")]
    Parse { what: &'static str, detail: String },
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("group {0} is not cyclic")]
    NotCyclic(String),
    #[error("not a group homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("homomorphism is not surjective")]
    NotSurjective,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("computation needs {needed} cells, above the limit of {limit} (raise {var})", var = config::MAX_CELLS_VAR)]
    Infeasible { needed: u128, limit: u128 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("boundary maps do not compose to zero")]
    NonzeroComposition,
    #[error("hypothesis not satisfied for {group}: {reason}")]
    HypothesisFailed { group: String, reason: String },
    #[error("unknown structure {0}")]
    UnknownStructure(String),
    #[error("no coefficient for {structure} in degree {degree}")]
    MissingCoefficient { structure: String, degree: usize },
    #[error("incompatible request: {0}")]
    Incompatible(String),
    #[error(transparent)]
    Overflow(#[from] Overflow),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
