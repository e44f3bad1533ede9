//! Gauss–Manin connection of a family of hyperelliptic curves
//! `y² = f(x)` over a rational base curve with coordinate `t`.
//!
//! Cohomology classes are Čech–de Rham cocycles for the two affine charts
//! `U₀ = {(x, y)}` and `U_∞ = {(z, u)}` with `z = 1/x`, `u = y/x^{g+1}`:
//! a function `α` on the overlap together with relative 1-forms on each
//! chart whose difference is `dα`. The connection is the connecting
//! homomorphism obtained by lifting the chart forms to absolute forms,
//! followed by reduction to the basis `ω₁..ω_g, ω₁*..ω_g*`.

mod cocycle;
mod connection;
mod family;
mod reduction;

pub use cocycle::{basis, CechCocycle, ChartForm, OverlapFunction};
pub use connection::{
    connection_matrix, gm_delta, lift_form, reduce_to_basis, weierstrass_connection, Chart,
    ConnectionMatrix, LiftedForm, Lifting,
};
pub use family::{HyperellipticFamily, X_VAR, Z_VAR};
pub use reduction::{
    canonical_extension_basis, eigenvalues_in_unit_interval, reduction_type, residue_matrix,
    BasisScaling, ReductionType, ResidueMatrix,
};

use thiserror::Error;

use crate::exact::{LaurentPoly, Polynomial, RationalFunction, ResidueError};

pub type Coeff = RationalFunction;
pub type XPoly = Polynomial<Coeff>;
pub type XLaurent = LaurentPoly<Coeff>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GaussManinError {
    #[error("f must have degree at least 3, got {0}")]
    DegreeTooSmall(usize),
    #[error("degree {degree} is not 2g+1 or 2g+2 for genus {genus}")]
    GenusMismatch { degree: usize, genus: usize },
    #[error("f has a repeated root for every t")]
    SingularFamily,
    #[error("discriminant g2^3 - 27 g3^2 vanishes identically")]
    DegenerateDiscriminant,
    #[error("cocycle condition dα = ω₀ - ω_∞ fails")]
    NotACocycle,
    #[error("{chart} form is not regular on its chart")]
    IrregularForm { chart: &'static str },
    #[error("connecting homomorphism left a non-polynomial quotient")]
    NonExactQuotient,
    #[error("reduced class is not in the span of the basis: {0}")]
    Inconsistent(String),
    #[error("Weierstrass data is not minimal at t = {point}: (t - P)^4 | g2 and (t - P)^6 | g3")]
    NonMinimal { point: String },
    #[error("entry ({row}, {col}) of the scaled connection: {source}")]
    Residue {
        row: usize,
        col: usize,
        #[source]
        source: ResidueError,
    },
    #[error("could not parse {what}: {text}")]
    Parse { what: &'static str, text: String },
}
