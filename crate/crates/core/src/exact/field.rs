use std::fmt;

use rug::Rational;

/// A commutative field with exact arithmetic.
///
/// Methods take references so that big-number coefficients are never
/// moved implicitly. Concrete types also implement the `std::ops` traits;
/// the `_ref` suffix keeps the two from colliding during method lookup.
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;

    /// Multiplicative inverse. Panics on zero.
    fn inv_ref(&self) -> Self;

    fn div_ref(&self, rhs: &Self) -> Self {
        self.mul_ref(&rhs.inv_ref())
    }

    fn from_i64(n: i64) -> Self;
    fn from_rational(q: &Rational) -> Self;

    /// True when the textual form needs parentheses inside a product.
    fn is_compound(&self) -> bool {
        false
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Rational::new()
    }

    fn one() -> Self {
        Rational::from(1)
    }

    fn is_zero(&self) -> bool {
        self.cmp0() == std::cmp::Ordering::Equal
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        Rational::from(self + rhs)
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        Rational::from(self - rhs)
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        Rational::from(self * rhs)
    }

    fn neg_ref(&self) -> Self {
        Rational::from(-self)
    }

    fn inv_ref(&self) -> Self {
        assert!(!Field::is_zero(self), "inverse of zero rational");
        Rational::from(self.recip_ref())
    }

    fn from_i64(n: i64) -> Self {
        Rational::from(n)
    }

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
}

/// Parse "p/q", "p" or a terminating decimal such as "-0.25".
pub fn parse_rational(text: &str) -> Option<Rational> {
    let s = text.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        if s.contains('/') || frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit())
        {
            return None;
        }
        let negative = int_part.starts_with('-');
        let digits = format!("{}{}", int_part.trim_start_matches(['-', '+']), frac_part);
        let numer = rug::Integer::from_str_radix(&digits, 10).ok()?;
        let denom = rug::Integer::from(rug::Integer::u_pow_u(10, frac_part.len() as u32));
        let q = Rational::from((numer, denom));
        return Some(if negative { -q } else { q });
    }
    s.parse::<Rational>().ok()
}

/// Exact square root of a rational, when it exists.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.cmp0() == std::cmp::Ordering::Less {
        return None;
    }
    let (n, d) = (q.numer(), q.denom());
    if !n.is_perfect_square() || !d.is_perfect_square() {
        return None;
    }
    Some(Rational::from((n.clone().sqrt(), d.clone().sqrt())))
}
