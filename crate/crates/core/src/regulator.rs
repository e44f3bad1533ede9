//! The real regulator of the cycle built from the period table.
//!
//! With `ζ = exp(2πi/l)`, `s = (l-1)/2` and `k = (l+1)/2`, the extension
//! group is the cokernel of
//!
//! ```text
//! A = ( i(ζ^{pq} - ζ^{-pq}) · (54π/l) I(p) )   1 ≤ p ≤ h, 1 ≤ q ≤ s
//! ```
//!
//! and the regulator is `√l π^{-s} · π^s det B`, where `B` is the `k × k`
//! matrix with rows `(i(ζ^{pq} - ζ^{-pq}) I(p))_{q ≤ s}` bordered by `J(p)`.
//! Rows `k-1` and `k` of `B`, divided by their `I`, have opposite
//! cyclotomic parts, which collapses the determinant to
//!
//! ```text
//! √l · D · I(1)⋯I(k) · (J(k-1)/I(k-1) + J(k)/I(k))
//! ```
//!
//! with `D = det(i(ζ^{pq} - ζ^{-pq}))_{p,q ≤ s}`. Both routes are computed.
//!
//! Values are only meaningful up to `ℚ×` and sign; [`RegulatorResult::reg_value`]
//! is the positive representative.

use rug::ops::Pow;
use rug::Float;
use serde::Serialize;
use thiserror::Error;

use crate::fibration::{invariants, is_prime, modular_family, modular_kappa, EllipticFibrationSpec, FibrationError};
use crate::numeric::{
    det_complex, det_real, format_decimal, format_scientific, numerical_rank, relative_deviation, Complex, Precision,
};
use crate::periods::{period_table, Method, PeriodError, PeriodTable};

/// Levels whose `ℚ`-structure factor `√l π^{-s}` is worked out by hand;
/// for other primes the same factor is used and the result is marked
/// extrapolated.
pub const ANCHORED_LEVELS: [u32; 2] = [5, 7];

/// Relative disagreement between the two routes above which a result is flagged.
pub const ROUTE_TOLERANCE_EXP: i32 = 10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RegulatorError {
    #[error("l = {0} is not an odd prime")]
    NotOddPrime(u32),
    #[error("h20 = 0 for l = {0}, the extension group is not defined")]
    NoHolomorphicForms(u32),
    #[error("period table for l = {table} used with l = {requested}")]
    LevelMismatch { table: u32, requested: u32 },
    #[error("period table has {got} entries, expected {expected}")]
    IncompleteTable { expected: usize, got: usize },
    #[error("period table computed at {table} digits, requested {requested}")]
    PrecisionMismatch { table: u32, requested: u32 },
    #[error("I({0}) vanishes at working precision")]
    VanishingPeriod(u32),
    #[error("A has numerical rank {rank}, expected full column rank {expected}")]
    RankDeficient { rank: usize, expected: usize },
    #[error(transparent)]
    Period(#[from] PeriodError),
    #[error(transparent)]
    Fibration(#[from] FibrationError),
}

#[derive(Debug, Clone)]
pub struct RegulatorResult {
    pub l: u32,
    /// `dim F¹H²(X)_ind`, the number of rows of `A`.
    pub h: usize,
    pub matrix_a: Vec<Vec<Float>>,
    pub ext_dim: usize,
    /// `π^s det B`.
    pub det_value: Float,
    /// `√l π^{-s}`.
    pub normalization: Float,
    /// `normalization · det_value`, with its sign.
    pub signed_value: Float,
    pub reg_value: Float,
    /// First-order bound from the period error estimates: each row of `B`
    /// is linear in `(I(p), J(p))`.
    pub error_estimate: Float,
    /// The collapsed product formula, with its sign.
    pub closed_form_value: Float,
    /// `D`, whose absolute value is `l^{s/2}`.
    pub cyclotomic_factor: Float,
    pub route_deviation: Float,
    /// Largest cyclotomic entry of the sum of rows `k-1`, `k` of `B` after
    /// dividing each row by its `I`.
    pub row_collapse: Float,
    pub nonvanishing: bool,
    pub extrapolated: bool,
    pub table: PeriodTable,
}

impl RegulatorResult {
    pub fn flagged(&self) -> bool {
        let prec = Precision::new(self.table.digits);
        self.extrapolated
            || !self.nonvanishing
            || self.table.flagged()
            || self.route_deviation > prec.ten_pow_neg(ROUTE_TOLERANCE_EXP)
    }

    pub fn report(&self) -> RegulatorReport {
        let d = self.table.digits as usize;
        let dec = |x: &Float| format_decimal(x, d);
        RegulatorReport {
            l: self.l,
            h: self.h,
            k: ((self.l + 1) / 2) as usize,
            digits: self.table.digits,
            matrix_a: self.matrix_a.iter().map(|row| row.iter().map(dec).collect()).collect(),
            ext_dim: self.ext_dim,
            det_value: dec(&self.det_value),
            normalization: dec(&self.normalization),
            signed_value: dec(&self.signed_value),
            reg_value: dec(&self.reg_value),
            error_estimate: format_scientific(&self.error_estimate, 3),
            closed_form_value: dec(&self.closed_form_value),
            cyclotomic_factor: dec(&self.cyclotomic_factor),
            route_deviation: format_scientific(&self.route_deviation, 3),
            row_collapse: format_scientific(&self.row_collapse, 3),
            nonvanishing: self.nonvanishing,
            extrapolated: self.extrapolated,
            flagged: self.flagged(),
            periods: self.table.clone(),
        }
    }
}

/// [`RegulatorResult`] with every number as a decimal string.
#[derive(Debug, Clone, Serialize)]
pub struct RegulatorReport {
    pub l: u32,
    pub h: usize,
    pub k: usize,
    pub digits: u32,
    pub matrix_a: Vec<Vec<String>>,
    pub ext_dim: usize,
    pub det_value: String,
    pub normalization: String,
    pub signed_value: String,
    pub reg_value: String,
    pub error_estimate: String,
    pub closed_form_value: String,
    pub cyclotomic_factor: String,
    pub route_deviation: String,
    pub row_collapse: String,
    pub nonvanishing: bool,
    pub extrapolated: bool,
    pub flagged: bool,
    pub periods: PeriodTable,
}

fn half(l: u32) -> usize {
    ((l - 1) / 2) as usize
}

fn check_level(l: u32) -> Result<(), RegulatorError> {
    if l < 3 || !is_prime(l) {
        return Err(RegulatorError::NotOddPrime(l));
    }
    Ok(())
}

fn check_table(l: u32, table: &PeriodTable, prec: &Precision) -> Result<(), RegulatorError> {
    if table.l != l {
        return Err(RegulatorError::LevelMismatch { table: table.l, requested: l });
    }
    let expected = (l - 1) as usize;
    let got = table.i.len().min(table.j.len());
    if got != expected {
        return Err(RegulatorError::IncompleteTable { expected, got });
    }
    if table.digits != prec.digits {
        return Err(RegulatorError::PrecisionMismatch { table: table.digits, requested: prec.digits });
    }
    Ok(())
}

/// `i(ζ^{pq} - ζ^{-pq}) = -2 sin(2πpq/l)`.
pub fn cyclotomic_entry(p: usize, q: usize, l: u32, prec: &Precision) -> Float {
    let angle = prec.pi() * 2u32 * ((p * q) as u32) / l;
    angle.sin() * -2i32
}

/// `dim F¹H²(X)_ind` of the modular family pulled back along `t ↦ t^l`.
pub fn modular_h(l: u32) -> Result<usize, RegulatorError> {
    check_level(l)?;
    let (g2, g3) = modular_family();
    let inv = invariants(&EllipticFibrationSpec::new(&g2, &g3, l, modular_kappa())?)?;
    match inv.h {
        Some(h) if inv.h20 > 0 => Ok(h as usize),
        _ => Err(RegulatorError::NoHolomorphicForms(l)),
    }
}

/// The `h × s` matrix `A`, entry `(p, q) = -2 sin(2πpq/l) (54π/l) I(p)`.
pub fn matrix_a(l: u32, h: usize, table: &PeriodTable, prec: &Precision) -> Result<Vec<Vec<Float>>, RegulatorError> {
    check_level(l)?;
    check_table(l, table, prec)?;
    if h > table.i.len() {
        return Err(RegulatorError::IncompleteTable { expected: h, got: table.i.len() });
    }
    let scale = prec.pi() * 54u32 / l;
    Ok((1..=h)
        .map(|p| {
            let period = Float::with_val(prec.bits(), &table.i[p - 1].value * &scale);
            (1..=half(l)).map(|q| cyclotomic_entry(p, q, l, prec) * &period).collect()
        })
        .collect())
}

/// `h - s`, after checking that `A` has full column rank `s` with singular
/// values above `10^{-digits/2}` relative to the largest.
pub fn ext_dimension(a: &[Vec<Float>], prec: &Precision) -> Result<usize, RegulatorError> {
    let h = a.len();
    let s = a.first().map_or(0, Vec::len);
    let rank = numerical_rank(a, &prec.ten_pow_neg(prec.digits as i32 / 2));
    if rank < s || h < s {
        return Err(RegulatorError::RankDeficient { rank, expected: s });
    }
    Ok(h - s)
}

/// `det(ζ^{pq} - ζ^{-pq})_{1 ≤ p,q ≤ s}` as a complex number.
pub fn cyclotomic_determinant(l: u32, prec: &Precision) -> Complex {
    let s = half(l);
    let m: Vec<Vec<Complex>> = (1..=s)
        .map(|p| {
            (1..=s)
                .map(|q| {
                    let angle = prec.pi() * 2u32 * ((p * q) as u32) / l;
                    let z = Complex::from_angle(&angle);
                    z.sub(&z.conj())
                })
                .collect()
        })
        .collect();
    det_complex(&m)
}

/// Deviation of the cyclotomic determinant from `√((-l)^s)`: the relative
/// error of its modulus against `l^{s/2}`, or its component off the real
/// (`s` even) or imaginary (`s` odd) axis relative to the modulus, whichever
/// is larger.
pub fn vandermonde_det_check(l: u32, prec: &Precision) -> Result<Float, RegulatorError> {
    check_level(l)?;
    let s = half(l);
    let det = cyclotomic_determinant(l, prec);
    let modulus = det.abs();
    let expected = prec.float(l).sqrt().pow(s as u32);
    let radial = relative_deviation(&modulus, &expected);
    let off_axis = if s % 2 == 0 { det.im.clone() } else { det.re.clone() };
    let angular = off_axis.abs() / &modulus;
    Ok(if radial > angular { radial } else { angular })
}

/// The `k × k` matrix `B`: `-2 sin(2πpq/l) I(p)` for `q ≤ s`, then `J(p)`.
pub fn bordered_matrix(l: u32, table: &PeriodTable, prec: &Precision) -> Result<Vec<Vec<Float>>, RegulatorError> {
    check_level(l)?;
    check_table(l, table, prec)?;
    let k = half(l) + 1;
    Ok((1..=k)
        .map(|p| {
            let mut row: Vec<Float> =
                (1..=half(l)).map(|q| cyclotomic_entry(p, q, l, prec) * &table.i[p - 1].value).collect();
            row.push(Float::with_val(prec.bits(), &table.j[p - 1].value));
            row
        })
        .collect())
}

/// `J(k-1)/I(k-1) + J(k)/I(k)`.
fn border_sum(l: u32, table: &PeriodTable) -> Result<Float, RegulatorError> {
    let k = half(l) + 1;
    let ratio = |p: usize| {
        let i = &table.i[p - 1].value;
        if i.is_zero() {
            return Err(RegulatorError::VanishingPeriod(p as u32));
        }
        Ok(Float::with_val(i.prec(), &table.j[p - 1].value / i))
    };
    Ok(ratio(k - 1)? + ratio(k)?)
}

/// Whether the collapsed factor `J(k-1)/I(k-1) + J(k)/I(k)` is positive.
pub fn nonvanishing_check(l: u32, table: &PeriodTable) -> Result<bool, RegulatorError> {
    check_level(l)?;
    Ok(border_sum(l, table)? > 0)
}

/// `√l π^{-s}`.
pub fn normalization(l: u32, prec: &Precision) -> Float {
    let s = half(l) as i32;
    prec.float(l).sqrt() * prec.pi().pow(-s)
}

pub fn reg_value(l: u32, table: &PeriodTable, prec: &Precision) -> Result<RegulatorResult, RegulatorError> {
    let h = modular_h(l)?;
    reg_value_with_h(l, h, table, prec)
}

/// [`reg_value`] with `h` supplied, for tables not coming from the modular family.
pub fn reg_value_with_h(
    l: u32,
    h: usize,
    table: &PeriodTable,
    prec: &Precision,
) -> Result<RegulatorResult, RegulatorError> {
    let s = half(l);
    let k = s + 1;
    let a = matrix_a(l, h, table, prec)?;
    let ext_dim = ext_dimension(&a, prec)?;

    let b = bordered_matrix(l, table, prec)?;
    let det_value = det_real(&b) * prec.pi().pow(s as u32);
    let norm = normalization(l, prec);
    let signed_value = Float::with_val(prec.bits(), &det_value * &norm);

    let minor: Vec<Vec<Float>> =
        (1..=s).map(|p| (1..=s).map(|q| cyclotomic_entry(p, q, l, prec)).collect()).collect();
    let cyclotomic_factor = det_real(&minor);
    let product = table.i[..k].iter().fold(prec.float(1), |acc, v| acc * &v.value);
    let closed_form_value = prec.float(l).sqrt() * &cyclotomic_factor * product * border_sum(l, table)?;

    let row_collapse = (1..=s)
        .map(|q| (cyclotomic_entry(k - 1, q, l, prec) + cyclotomic_entry(k, q, l, prec)).abs())
        .fold(prec.float(0), |m, x| if x > m { x } else { m });

    let relative = table.i[..k]
        .iter()
        .chain(&table.j[..k])
        .fold(prec.float(0), |acc, v| acc + v.error_estimate.clone().abs() / v.value.clone().abs());
    let error_estimate = relative * signed_value.clone().abs();

    Ok(RegulatorResult {
        l,
        error_estimate,
        h,
        matrix_a: a,
        ext_dim,
        route_deviation: relative_deviation(&signed_value, &closed_form_value),
        reg_value: Float::with_val(prec.bits(), signed_value.abs_ref()),
        det_value,
        normalization: norm,
        signed_value,
        closed_form_value,
        cyclotomic_factor,
        row_collapse,
        nonvanishing: nonvanishing_check(l, table)?,
        extrapolated: !ANCHORED_LEVELS.contains(&l),
        table: table.clone(),
    })
}

/// Period table by `method`, then [`reg_value`].
pub fn regulator(l: u32, method: Method, prec: &Precision, terms: usize) -> Result<RegulatorResult, RegulatorError> {
    check_level(l)?;
    let h = modular_h(l)?;
    let table = period_table(l, method, prec, terms)?;
    reg_value_with_h(l, h, &table, prec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_entries_are_odd_in_q() {
        let prec = Precision::new(30);
        for (p, q) in [(1, 2), (2, 3), (3, 1)] {
            let sum = cyclotomic_entry(p, q, 7, &prec) + cyclotomic_entry(p, 7 - q, 7, &prec);
            assert!(sum.abs() < prec.ten_pow_neg(35));
        }
    }

    #[test]
    fn small_cyclotomic_determinants() {
        let prec = Precision::new(40);
        // l = 3: ζ - ζ⁻¹ = i√3
        let d3 = cyclotomic_determinant(3, &prec);
        assert!(d3.re.clone().abs() < prec.ten_pow_neg(45));
        assert!(relative_deviation(&d3.im, &prec.sqrt3()) < prec.ten_pow_neg(45));
        // l = 5: ±5
        let d5 = cyclotomic_determinant(5, &prec);
        assert!(relative_deviation(&d5.re.clone().abs(), &prec.float(5)) < prec.ten_pow_neg(45));
        for l in [3, 5, 7, 11, 13] {
            assert!(vandermonde_det_check(l, &prec).unwrap() < prec.ten_pow_neg(35), "l = {l}");
        }
        assert_eq!(vandermonde_det_check(9, &prec), Err(RegulatorError::NotOddPrime(9)));
    }

    #[test]
    fn rows_by_level() {
        assert_eq!(modular_h(5), Ok(3));
        assert_eq!(modular_h(7), Ok(4));
        assert_eq!(modular_h(3), Err(RegulatorError::NoHolomorphicForms(3)));
        assert_eq!(modular_h(2), Err(RegulatorError::NotOddPrime(2)));
    }

    #[test]
    fn rank_deficiency_is_reported() {
        let prec = Precision::new(30);
        let zero = vec![vec![prec.float(0); 2]; 3];
        assert_eq!(ext_dimension(&zero, &prec), Err(RegulatorError::RankDeficient { rank: 0, expected: 2 }));
        let ident: Vec<Vec<Float>> =
            (0..3).map(|i| (0..2).map(|j| prec.float(u32::from(i == j))).collect()).collect();
        assert_eq!(ext_dimension(&ident, &prec), Ok(1));
    }
}
