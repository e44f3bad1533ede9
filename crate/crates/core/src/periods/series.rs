use rug::{Float, Rational};

use super::{PeriodError, PeriodValue};
use crate::eisenstein::coefficient_family;
use crate::numeric::Precision;

/// Smallest truncation accepted by [`eval_i`] and [`eval_j`].
pub const MIN_TERMS: usize = 8;

/// Terms past the truncation whose absolute sum, doubled, is the error estimate.
const TAIL_TERMS: usize = 8;

/// Which of the two period series to sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Kind {
    I,
    J,
}

/// Shared constants for one `(j, l)`: `c`, `c^{j/l}`, `π`, `√3`, `3^{3j/l}`.
struct Constants {
    c: Float,
    c_r: Float,
    pi: Float,
    sqrt3: Float,
    three_pow: Float,
    r: Float,
}

impl Constants {
    fn new(j: i64, l: i64, prec: &Precision) -> Self {
        let r = prec.rational(&Rational::from((j, l)));
        let c = prec.nome();
        let c_r = Float::with_val(prec.bits(), c.ln_ref()) * &r;
        let three_pow = Float::with_val(prec.bits(), prec.float(3).ln() * Float::with_val(prec.bits(), &r * 3u32));
        Constants { c_r: c_r.exp(), c, pi: prec.pi(), sqrt3: prec.sqrt3(), three_pow: three_pow.exp(), r }
    }
}

/// Term `n ≥ 1` of the `a`-series and term `n ≥ 0` of the `b`-series,
/// without the overall factors `3^{3r-3}` resp. `2π·3^{3r-7/2}`.
fn a_term(kind: Kind, k: &Constants, a_n: &Rational, n: usize, c_pow: &Float) -> Float {
    let prec = k.c.prec();
    let nf = Float::with_val(prec, n);
    let weight = match kind {
        Kind::I => Float::with_val(prec, nf.recip_ref()),
        Kind::J => {
            let first = Float::with_val(prec, &k.pi * 2u32) / (Float::with_val(prec, &k.sqrt3 * &nf));
            first + Float::with_val(prec, nf.square_ref()).recip()
        }
    };
    weight * Float::with_val(prec, a_n) * c_pow
}

fn b_term(kind: Kind, k: &Constants, b_n: &Rational, n: usize, c_pow: &Float) -> Float {
    let prec = k.c.prec();
    let shifted = Float::with_val(prec, &k.r + n as u32);
    let weight = match kind {
        Kind::I => {
            let sq = Float::with_val(prec, shifted.square_ref());
            let second = Float::with_val(prec, &k.sqrt3 / (Float::with_val(prec, &k.pi * 2u32) * sq));
            Float::with_val(prec, shifted.recip_ref()) + second
        }
        Kind::J => Float::with_val(prec, shifted.recip_ref()),
    };
    weight * Float::with_val(prec, b_n) * c_pow * &k.c_r
}

fn b_prefactor(kind: Kind, k: &Constants, prec: &Precision) -> Float {
    match kind {
        Kind::I => Float::with_val(prec.bits(), &k.three_pow / 27u32),
        Kind::J => {
            // 2π·3^{3r}·3^{-7/2}
            let denom = prec.sqrt3() * 27u32;
            Float::with_val(prec.bits(), &k.pi * 2u32) * &k.three_pow / denom
        }
    }
}

pub(crate) fn eval(kind: Kind, j: i64, l: i64, terms: usize, prec: &Precision) -> Result<PeriodValue, PeriodError> {
    if terms < MIN_TERMS {
        return Err(PeriodError::TooFewTerms { min: MIN_TERMS, got: terms });
    }
    let family = coefficient_family(j, l, terms + TAIL_TERMS)?;
    let k = Constants::new(j, l, prec);
    let bits = prec.bits();
    let pre_b = b_prefactor(kind, &k, prec);

    let mut c_pow = prec.float(1);
    let mut sum_a = Float::new(bits);
    let mut sum_b = b_term(kind, &k, &family.b[0], 0, &c_pow);
    let mut omitted = Float::new(bits);
    for n in 1..=terms + TAIL_TERMS {
        c_pow *= &k.c;
        let ta = a_term(kind, &k, &family.a[n - 1], n, &c_pow);
        let tb = b_term(kind, &k, &family.b[n], n, &c_pow);
        if n <= terms {
            sum_a += ta;
            sum_b += tb;
        } else {
            omitted += ta.abs() + (tb * &pre_b).abs();
        }
    }
    omitted *= 2u32;
    let value = sum_a + sum_b * pre_b;
    let threshold = prec.ten_pow_neg(prec.digits as i32 / 2 - 1);
    Ok(PeriodValue { flagged: omitted > threshold, value, error_estimate: omitted, digits: prec.digits })
}

/// `I(j) = Σ aₙ/n cⁿ + 3^{3r-3} Σ bₙ (1/(n+r) + √3/(2π(n+r)²)) c^{n+r}`
/// with `r = j/l` and `c = exp(-2π/√3)`, summed to `terms` terms.
pub fn eval_i(j: i64, l: i64, terms: usize, prec: &Precision) -> Result<PeriodValue, PeriodError> {
    eval(Kind::I, j, l, terms, prec)
}

/// `J(j) = Σ aₙ (2π/(√3 n) + 1/n²) cⁿ + 2π·3^{3r-7/2} Σ bₙ/(n+r) c^{n+r}`.
pub fn eval_j(j: i64, l: i64, terms: usize, prec: &Precision) -> Result<PeriodValue, PeriodError> {
    eval(Kind::J, j, l, terms, prec)
}
