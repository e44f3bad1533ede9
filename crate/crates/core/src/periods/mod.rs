//! The periods `I(j)`, `J(j)` of the family parametrized by `E₃ₐ`, `E₃ᵦ`,
//! by two routes: the rapidly convergent series at the nome
//! `c = exp(-2π/√3)`, and direct quadrature of `∫ t^{j-1} dt dx/y` over
//! the two vanishing-cycle fibrations, with the inner integral in closed
//! form through the AGM.
//!
//! The quadrature route returns magnitudes and is rescaled by
//! `|∫_Δ| = (54π/l) I(j)` and `|∫_Γ| = (27/l) J(j)`.

mod modular;
mod quadrature;
mod series;

pub use modular::{eisenstein_at, verify_modular_identity, ModularCheck, ModularReport, ModularSample, ModularSampleReport};
pub use quadrature::{
    colliding_pair, complete_elliptic_k, cubic_real_roots, quad_period, CubicRoots, Cycle, QuadratureFamily, RootPair,
    MAX_LEVEL,
};
pub use series::{eval_i, eval_j, MIN_TERMS};

use rayon::prelude::*;
use rug::Float;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::eisenstein::EisensteinError;
use crate::fibration::{modular_family, modular_kappa, EllipticFibrationSpec, FibrationError};
use crate::numeric::{format_decimal, format_scientific, Precision, QuadratureSummary};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PeriodError {
    #[error("j = {j} is outside 1..l-1 for l = {l}")]
    IndexOutOfRange { j: i64, l: i64 },
    #[error("l must be at least 2, got {0}")]
    BadLevel(i64),
    #[error("need at least {min} series terms, got {got}")]
    TooFewTerms { min: usize, got: usize },
    #[error("cubic does not have three distinct real roots at this t")]
    NotThreeRealRoots,
    #[error(transparent)]
    Eisenstein(#[from] EisensteinError),
    #[error(transparent)]
    Fibration(#[from] FibrationError),
}

/// A computed real number with its error estimate. `flagged` marks an
/// estimate that is not small enough for the requested precision.
#[derive(Debug, Clone)]
pub struct PeriodValue {
    pub value: Float,
    pub error_estimate: Float,
    pub flagged: bool,
    pub digits: u32,
}

impl PeriodValue {
    fn scaled(self, factor: &Float) -> Self {
        PeriodValue {
            value: self.value * factor,
            error_estimate: self.error_estimate * factor,
            ..self
        }
    }
}

impl Serialize for PeriodValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("PeriodValue", 4)?;
        st.serialize_field("value", &format_decimal(&self.value, self.digits as usize))?;
        st.serialize_field("error_estimate", &format_scientific(&self.error_estimate, 3))?;
        st.serialize_field("digits", &self.digits)?;
        st.serialize_field("flagged", &self.flagged)?;
        st.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Series,
    Quadrature,
}

/// `I(j)`, `J(j)` for `1 ≤ j ≤ l-1`; entry `k` holds `j = k + 1`.
#[derive(Debug, Clone, Serialize)]
pub struct PeriodTable {
    pub l: u32,
    pub method: Method,
    pub digits: u32,
    /// Series truncation, for the series method.
    pub terms: Option<usize>,
    pub i: Vec<PeriodValue>,
    pub j: Vec<PeriodValue>,
    /// Per-entry `(I, J)` quadrature statistics, for the quadrature method.
    pub quadrature: Vec<(QuadratureSummary, QuadratureSummary)>,
}

impl PeriodTable {
    pub fn flagged(&self) -> bool {
        self.i.iter().chain(&self.j).any(|v| v.flagged)
    }

    pub fn i_values(&self) -> Vec<Float> {
        self.i.iter().map(|v| v.value.clone()).collect()
    }

    pub fn j_values(&self) -> Vec<Float> {
        self.j.iter().map(|v| v.value.clone()).collect()
    }
}

fn modular_spec(l: u32) -> Result<EllipticFibrationSpec, PeriodError> {
    let (g2, g3) = modular_family();
    Ok(EllipticFibrationSpec::new(&g2, &g3, l, modular_kappa())?)
}

fn check_level(l: u32) -> Result<(), PeriodError> {
    if l < 2 {
        return Err(PeriodError::BadLevel(l as i64));
    }
    Ok(())
}

/// `(54π/l) I(j)` by quadrature, as `I(j)`.
pub fn quad_i(j: u32, l: u32, prec: &Precision) -> Result<PeriodValue, PeriodError> {
    check_level(l)?;
    let family = QuadratureFamily::new(&modular_spec(l)?, prec);
    let (v, _) = quad_period(&family, Cycle::Delta, j, prec)?;
    Ok(v.scaled(&i_factor(l, prec)))
}

/// `(27/l) J(j)` by quadrature, as `J(j)`.
pub fn quad_j(j: u32, l: u32, prec: &Precision) -> Result<PeriodValue, PeriodError> {
    check_level(l)?;
    let family = QuadratureFamily::new(&modular_spec(l)?, prec);
    let (v, _) = quad_period(&family, Cycle::Gamma, j, prec)?;
    Ok(v.scaled(&j_factor(l, prec)))
}

fn i_factor(l: u32, prec: &Precision) -> Float {
    prec.float(l) / (prec.pi() * 54u32)
}

fn j_factor(l: u32, prec: &Precision) -> Float {
    prec.float(l) / 27u32
}

pub fn period_table(l: u32, method: Method, prec: &Precision, terms: usize) -> Result<PeriodTable, PeriodError> {
    check_level(l)?;
    let js: Vec<u32> = (1..l).collect();
    match method {
        Method::Series => {
            let entries = js
                .par_iter()
                .map(|&j| Ok((eval_i(j as i64, l as i64, terms, prec)?, eval_j(j as i64, l as i64, terms, prec)?)))
                .collect::<Result<Vec<_>, PeriodError>>()?;
            let (i, j) = entries.into_iter().unzip();
            Ok(PeriodTable { l, method, digits: prec.digits, terms: Some(terms), i, j, quadrature: vec![] })
        }
        Method::Quadrature => {
            let family = QuadratureFamily::new(&modular_spec(l)?, prec);
            let (fi, fj) = (i_factor(l, prec), j_factor(l, prec));
            let entries = js
                .iter()
                .map(|&j| {
                    let (vi, si) = quad_period(&family, Cycle::Delta, j, prec)?;
                    let (vj, sj) = quad_period(&family, Cycle::Gamma, j, prec)?;
                    Ok(((vi.scaled(&fi), vj.scaled(&fj)), (si, sj)))
                })
                .collect::<Result<Vec<_>, PeriodError>>()?;
            let (values, quadrature): (Vec<_>, Vec<_>) = entries.into_iter().unzip();
            let (i, j) = values.into_iter().unzip();
            Ok(PeriodTable { l, method, digits: prec.digits, terms: None, i, j, quadrature })
        }
    }
}
