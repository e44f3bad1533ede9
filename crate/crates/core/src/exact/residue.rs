use rug::Rational;
use thiserror::Error;

use super::field::Field;
use super::poly::Polynomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ResidueError {
    #[error("pole of order {order} at t = {point}; only simple poles have a residue here")]
    HigherOrderPole { order: usize, point: String },
    #[error("1-form has a zero denominator")]
    ZeroDenominator,
}

/// Residue of `(numerator / denominator) dt` at `t = point`.
///
/// Common factors `(t - point)` are cancelled first. A point that is not a
/// pole gives 0; a pole of order two or more is an error.
pub fn rational_residue(
    numerator: &Polynomial<Rational>,
    denominator: &Polynomial<Rational>,
    point: &Rational,
) -> Result<Rational, ResidueError> {
    if denominator.is_zero() {
        return Err(ResidueError::ZeroDenominator);
    }
    if numerator.is_zero() {
        return Ok(Rational::new());
    }
    let (num_rest, num_mult) = numerator.remove_root(point);
    let (den_rest, den_mult) = denominator.remove_root(point);
    match den_mult.saturating_sub(num_mult) {
        0 => Ok(Rational::new()),
        1 => Ok(num_rest.eval(point).div_ref(&den_rest.eval(point))),
        order => Err(ResidueError::HigherOrderPole { order, point: point.to_string() }),
    }
}
