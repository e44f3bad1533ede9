//! Beilinson regulators of elliptic surfaces with a cyclic automorphism.
//!
//! The crate is organised bottom-up:
//!
//! - [`exact`]: rational, polynomial and power-series arithmetic
//! - [`eisenstein`]: q-expansions of the weight-3 Eisenstein series for
//!   Γ₁(3) and the coefficient families built from them
//! - [`gauss_manin`]: Čech-cocycle computation of the Gauss–Manin
//!   connection of hyperelliptic families
//! - [`fibration`]: the admissible Weierstrass data and the numerical
//!   invariants of the resulting surfaces
//! - [`numeric`], [`periods`]: multiprecision evaluation of the period
//!   integrals, by q-series and by quadrature
//! - [`regulator`]: the period matrix, the bordered determinant and the
//!   normalized regulator value

pub mod eisenstein;
pub mod exact;
pub mod fibration;
pub mod gauss_manin;
pub mod numeric;
pub mod periods;
pub mod regulator;
pub mod text;
