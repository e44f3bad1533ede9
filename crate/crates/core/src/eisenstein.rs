//! Weight-3 Eisenstein series for Γ₁(3) and the coefficient families
//! `a_n(j)`, `b_n(j)` that drive the period series.
//!
//! With `q = exp(2πiz)`:
//!
//! ```text
//! E3a = 1 - 9 Σ_{n≥1} (Σ_{k|n} χ(k) k²) qⁿ
//! E3b =     Σ_{n≥1} (Σ_{k|n} χ(n/k) k²) qⁿ
//! Σ a_n(j) qⁿ = E3b · (E3a / (E3a + 27 E3b))^{j/l}
//! Σ b_n(j) qⁿ = E3a · (E3b / (q (E3a + 27 E3b)))^{j/l}
//! ```
//!
//! where χ is the quadratic character mod 3.

use rug::Rational;
use serde::Serialize;
use thiserror::Error;

use crate::exact::{SeriesError, TruncatedSeries};

pub const Q_VAR: &str = "q";

/// Truncation used when the caller has no preference.
pub const DEFAULT_TERMS: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EisensteinError {
    #[error("j = {j} is outside 1..={max} for l = {l}")]
    IndexOutOfRange { j: i64, l: i64, max: i64 },
    #[error("l must be at least 2, got {0}")]
    BadLevel(i64),
    #[error("need at least {min} terms, got {got}")]
    TooFewTerms { min: usize, got: usize },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// χ₃(k): +1 for k ≡ 1, −1 for k ≡ 2, 0 for 3 | k.
pub fn chi3(k: u64) -> i64 {
    match k % 3 {
        1 => 1,
        2 => -1,
        _ => 0,
    }
}

fn divisors(n: u64) -> impl Iterator<Item = u64> {
    (1..=n).filter(move |k| n % k == 0)
}

/// Σ_{k|n} χ(k) k²
pub fn e3a_divisor_sum(n: u64) -> i64 {
    divisors(n).map(|k| chi3(k) * (k * k) as i64).sum()
}

/// Σ_{k|n} χ(n/k) k²
pub fn e3b_divisor_sum(n: u64) -> i64 {
    divisors(n).map(|k| chi3(n / k) * (k * k) as i64).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SeriesLabel {
    E3a,
    E3b,
}

/// A q-expansion tagged with the form it represents.
#[derive(Debug, Clone, PartialEq)]
pub struct QExpansion {
    pub label: SeriesLabel,
    pub series: TruncatedSeries,
}

/// `E3a` through `q^n_max`.
pub fn eisenstein_e3a(n_max: usize) -> QExpansion {
    let coeffs = (0..=n_max as u64)
        .map(|n| match n {
            0 => Rational::from(1),
            _ => Rational::from(-9 * e3a_divisor_sum(n)),
        })
        .collect();
    QExpansion {
        label: SeriesLabel::E3a,
        series: TruncatedSeries::new(Q_VAR, 0, coeffs, n_max as i64 + 1),
    }
}

/// `E3b` through `q^n_max` (offset 1).
pub fn eisenstein_e3b(n_max: usize) -> QExpansion {
    let coeffs = (1..=n_max as u64).map(|n| Rational::from(e3b_divisor_sum(n))).collect();
    QExpansion {
        label: SeriesLabel::E3b,
        series: TruncatedSeries::new(Q_VAR, 1, coeffs, n_max as i64 + 1),
    }
}

/// Exact `a_n(j)`, `b_n(j)` for one exponent `j/l`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoefficientFamily {
    pub j: i64,
    pub l: i64,
    /// `a[n-1] = a_n(j)` for `1 ≤ n ≤ terms`
    #[serde(serialize_with = "crate::text::rationals")]
    pub a: Vec<Rational>,
    /// `b[n] = b_n(j)` for `0 ≤ n ≤ terms`
    #[serde(serialize_with = "crate::text::rationals")]
    pub b: Vec<Rational>,
    pub terms: usize,
}

fn check_index(j: i64, l: i64) -> Result<(), EisensteinError> {
    if l < 2 {
        return Err(EisensteinError::BadLevel(l));
    }
    if !(1..l).contains(&j) {
        return Err(EisensteinError::IndexOutOfRange { j, l, max: l - 1 });
    }
    Ok(())
}

/// `a_n` for `1 ≤ n ≤ n_max` at an arbitrary rational exponent.
pub fn a_coefficients(exponent: &Rational, n_max: usize) -> Result<Vec<Rational>, EisensteinError> {
    let order = n_max + 1;
    let e3a = eisenstein_e3a(order).series;
    let e3b = eisenstein_e3b(order).series;
    let hauptmodul = e3a.div(&e3a.add(&e3b.scale(&Rational::from(27))))?;
    let series = e3b.mul(&hauptmodul.fractional_pow(exponent)?);
    Ok((1..=n_max as i64).map(|n| series.coeff(n).expect("within order")).collect())
}

/// `b_n` for `0 ≤ n ≤ n_max` at an arbitrary rational exponent.
pub fn b_coefficients(exponent: &Rational, n_max: usize) -> Result<Vec<Rational>, EisensteinError> {
    // E3b/q loses one order, so expand one step further.
    let order = n_max + 1;
    let e3a = eisenstein_e3a(order).series;
    let e3b = eisenstein_e3b(order + 1).series;
    let denom = e3a.add(&e3b.truncate(order as i64 + 1).scale(&Rational::from(27)));
    let ratio = e3b.shift(-1).div(&denom)?;
    let series = e3a.mul(&ratio.fractional_pow(exponent)?);
    Ok((0..=n_max as i64).map(|n| series.coeff(n).expect("within order")).collect())
}

/// `a_n(j)` for `1 ≤ n ≤ n_max`.
pub fn a_series(j: i64, l: i64, n_max: usize) -> Result<Vec<Rational>, EisensteinError> {
    check_index(j, l)?;
    if n_max < 3 {
        return Err(EisensteinError::TooFewTerms { min: 3, got: n_max });
    }
    a_coefficients(&Rational::from((j, l)), n_max)
}

/// `b_n(j)` for `0 ≤ n ≤ n_max`.
pub fn b_series(j: i64, l: i64, n_max: usize) -> Result<Vec<Rational>, EisensteinError> {
    check_index(j, l)?;
    if n_max < 2 {
        return Err(EisensteinError::TooFewTerms { min: 2, got: n_max });
    }
    b_coefficients(&Rational::from((j, l)), n_max)
}

pub fn coefficient_family(j: i64, l: i64, terms: usize) -> Result<CoefficientFamily, EisensteinError> {
    Ok(CoefficientFamily {
        j,
        l,
        a: a_series(j, l, terms)?,
        b: b_series(j, l, terms)?,
        terms,
    })
}
