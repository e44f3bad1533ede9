//! Multiprecision helpers on top of MPFR: working precision, constants,
//! a small complex type, dense linear algebra, decimal formatting and
//! double-exponential quadrature.

mod complex;
mod linalg;
mod quadrature;

pub use complex::Complex;
pub use linalg::{det_complex, det_real, numerical_rank, singular_values};
pub use quadrature::{tanh_sinh, QuadratureResult, QuadratureSummary};
pub use rug::Float;

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Integer, Rational};
use serde::Serialize;

/// Default number of significant decimal digits.
pub const DEFAULT_DIGITS: u32 = 60;

/// Extra decimal digits carried internally beyond the requested precision.
pub const GUARD_DIGITS: u32 = 10;

const BITS_PER_DIGIT: f64 = std::f64::consts::LOG2_10;

/// Requested decimal precision plus the binary precision actually used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Precision {
    pub digits: u32,
}

impl Precision {
    pub fn new(digits: u32) -> Self {
        Precision { digits }
    }

    /// Working precision in bits, including the guard digits.
    pub fn bits(&self) -> u32 {
        ((self.digits + GUARD_DIGITS) as f64 * BITS_PER_DIGIT).ceil() as u32
    }

    pub fn float<T>(&self, value: T) -> Float
    where
        Float: rug::Assign<T>,
    {
        Float::with_val(self.bits(), value)
    }

    pub fn rational(&self, q: &Rational) -> Float {
        Float::with_val(self.bits(), q)
    }

    pub fn pi(&self) -> Float {
        Float::with_val(self.bits(), Constant::Pi)
    }

    pub fn sqrt3(&self) -> Float {
        self.float(3).sqrt()
    }

    /// `c = exp(-2π/√3)`, the nome at which the period series are evaluated.
    pub fn nome(&self) -> Float {
        let x = self.pi() * 2u32 / self.sqrt3();
        (-x).exp()
    }

    /// `10^(-n)` at working precision.
    pub fn ten_pow_neg(&self, n: i32) -> Float {
        self.float(10).pow(-n)
    }

    /// Tolerance matching the requested digits, `10^(-digits)`.
    pub fn epsilon(&self) -> Float {
        self.ten_pow_neg(self.digits as i32)
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision::new(DEFAULT_DIGITS)
    }
}

/// `|a - b| / |b|`, or `|a|` when `b` is zero.
pub fn relative_deviation(a: &Float, b: &Float) -> Float {
    let diff = Float::with_val(a.prec(), a - b).abs();
    if b.is_zero() {
        diff
    } else {
        diff / Float::with_val(b.prec(), b.abs_ref())
    }
}

/// Fixed-point decimal string with `sig` significant digits.
pub fn format_decimal(x: &Float, sig: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = x.to_string_radix(10, Some(sig));
    let (mantissa, exp) = match sci.split_once('e') {
        Some((m, e)) => (m, e.parse::<i64>().expect("exponent")),
        None => (sci.as_str(), 0),
    };
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => ("-", rest),
        None => ("", mantissa),
    };
    let int_len = mantissa.find('.').unwrap_or(mantissa.len()) as i64;
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    let point = int_len + exp;
    let body = if point <= 0 {
        format!("0.{}{}", "0".repeat((-point) as usize), digits)
    } else if point as usize >= digits.len() {
        format!("{}{}", digits, "0".repeat(point as usize - digits.len()))
    } else {
        let (int, frac) = digits.split_at(point as usize);
        format!("{int}.{frac}")
    };
    format!("{sign}{body}")
}

/// Scientific notation with `sig` significant digits, e.g. `1.25e-40`.
pub fn format_scientific(x: &Float, sig: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let text = x.to_string_radix(10, Some(sig));
    if text.contains('e') {
        return text;
    }
    let f = Float::with_val(x.prec(), x);
    let exp = f.clone().abs().log10().floor().to_f64() as i32;
    let mantissa = Float::with_val(x.prec(), &f / Float::with_val(x.prec(), 10).pow(exp));
    format!("{}e{exp}", format_decimal(&mantissa, sig))
}

/// Distance, in units of the last printed decimal place, between `computed`
/// rounded to that place and the printed decimal string.
pub fn printed_ulp_distance(computed: &Float, printed: &str) -> Option<Integer> {
    let printed = printed.trim();
    let (sign, body) = match printed.strip_prefix('-') {
        Some(rest) => (-1i32, rest),
        None => (1, printed),
    };
    let places = body.split_once('.').map_or(0, |(_, frac)| frac.len());
    let digits: String = body.chars().filter(|c| *c != '.').collect();
    let printed_int: Integer = Integer::from_str_radix(&digits, 10).ok()? * sign;
    let scale = Integer::from(10).pow(places as u32);
    let scaled = Float::with_val(computed.prec() + 64, computed * &scale);
    let rounded = scaled.round().to_integer()?;
    Some((rounded - printed_int).abs())
}
