//! Elliptic surfaces `κy² = 4x³ - g₂(t^l)x - g₃(t^l)` over `P¹`: the
//! admissibility conditions (E1)–(E4) on `(g₂, g₃)`, the catalog of
//! admissible pairs, Kodaira fibre types and the numerical invariants.

mod conditions;
mod invariants;
mod kodaira;

pub use conditions::{
    catalog, catalog_entry, factor_at_zero_one, modular_family, modular_kappa, validate_conditions, CatalogEntry,
    Condition, Violation, WeierstrassData,
};
pub use invariants::{
    fiber_at_infinity, invariants, is_prime, minimal_k, nabla_bar_criterion, split_multiplicative_check,
    EllipticFibrationSpec, FiberRecord, FibrationInvariants,
};
pub use kodaira::{KodairaTag, KodairaType};

use thiserror::Error;

use crate::exact::ResidueError;
use crate::gauss_manin::GaussManinError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FibrationError {
    #[error("conditions violated: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Violations(Vec<Violation>),
    #[error("l must be positive")]
    ZeroCover,
    #[error("κ must be nonzero")]
    ZeroKappa,
    #[error("discriminant vanishes identically")]
    DegenerateDiscriminant,
    #[error("twisted model at ∞ is not minimal")]
    NonMinimalAtInfinity,
    #[error("Kodaira index {epsilon} at ∞ does not match fibre type {tag}")]
    InconsistentIndex { epsilon: i64, tag: String },
    #[error("g₃(1) = 0")]
    G3VanishesAtOne,
    #[error(transparent)]
    GaussManin(#[from] GaussManinError),
    #[error(transparent)]
    Residue(#[from] ResidueError),
}
