use std::cmp::Ordering;
use std::fmt;

use rug::Rational;
use thiserror::Error;

use super::field::Field;
use super::poly::Var;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("series has no nonzero coefficient below its truncation order {0}")]
    ZeroSeries(i64),
    #[error("fractional power needs offset 0 and constant term 1, found offset {offset} and constant {constant}")]
    NotUnitConstant { offset: i64, constant: String },
}

/// Truncated Laurent series `sum_{offset <= k < order} c_k var^k + O(var^order)`.
///
/// Coefficients at exponents `>= order` are unknown. Every operation
/// returns a series whose `order` reflects what its inputs actually
/// determine.
#[derive(Clone, PartialEq, Debug)]
pub struct TruncatedSeries {
    var: Var,
    offset: i64,
    coeffs: Vec<Rational>,
    order: i64,
}

impl TruncatedSeries {
    /// Coefficients start at `var^offset`; extra entries at or beyond
    /// `order` are dropped, missing ones are zero.
    pub fn new(var: Var, offset: i64, mut coeffs: Vec<Rational>, order: i64) -> Self {
        let len = (order - offset).max(0) as usize;
        coeffs.resize(len, Rational::new());
        TruncatedSeries { var, offset, coeffs, order }
    }

    /// The constant series `c + O(var^order)`.
    pub fn constant(var: Var, c: Rational, order: i64) -> Self {
        Self::new(var, 0, vec![c], order)
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    /// Coefficient of `var^exp`; `None` at or beyond the truncation order.
    pub fn coeff(&self, exp: i64) -> Option<Rational> {
        if exp >= self.order {
            return None;
        }
        if exp < self.offset {
            return Some(Rational::new());
        }
        Some(self.coeffs[(exp - self.offset) as usize].clone())
    }

    /// All known coefficients, starting at `offset`.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Exponent of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs
            .iter()
            .position(|c| c.cmp0() != Ordering::Equal)
            .map(|i| self.offset + i as i64)
    }

    fn check_var(&self, other: &Self) {
        assert_eq!(self.var, other.var, "series variable mismatch");
    }

    /// Drop known-zero leading coefficients so that `offset` is the valuation.
    pub fn normalized(&self) -> Self {
        match self.valuation() {
            None => Self::new(self.var, self.order, Vec::new(), self.order),
            Some(v) => {
                let skip = (v - self.offset) as usize;
                Self::new(self.var, v, self.coeffs[skip..].to_vec(), self.order)
            }
        }
    }

    /// Multiply by `var^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self::new(self.var, self.offset + k, self.coeffs.clone(), self.order + k)
    }

    /// Keep at most the coefficients below `order`.
    pub fn truncate(&self, order: i64) -> Self {
        let order = order.min(self.order);
        Self::new(self.var, self.offset, self.coeffs.clone(), order)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let coeffs = self.coeffs.iter().map(|a| Rational::from(a * c)).collect();
        Self::new(self.var, self.offset, coeffs, self.order)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_var(other);
        let order = self.order.min(other.order);
        let offset = self.offset.min(other.offset);
        let coeffs = (offset..order)
            .map(|e| self.coeff(e).unwrap() + other.coeff(e).unwrap())
            .collect();
        Self::new(self.var, offset, coeffs, order)
    }

    pub fn neg(&self) -> Self {
        self.scale(&Rational::from(-1))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_var(other);
        let a = self.normalized();
        let b = other.normalized();
        let offset = a.offset + b.offset;
        let order = (a.order + b.offset).min(b.order + a.offset);
        let len = (order - offset).max(0) as usize;
        let mut coeffs = vec![Rational::new(); len];
        for (i, ai) in a.coeffs.iter().enumerate().take(len) {
            if ai.cmp0() == Ordering::Equal {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate().take(len - i) {
                coeffs[i + j] += Rational::from(ai * bj);
            }
        }
        Self::new(self.var, offset, coeffs, order)
    }

    /// Multiplicative inverse; the result keeps the relative precision of `self`.
    pub fn inv(&self) -> Result<Self, SeriesError> {
        let a = self.normalized();
        let Some(v) = a.valuation() else {
            return Err(SeriesError::ZeroSeries(self.order));
        };
        let n = (a.order - v) as usize;
        let lead_inv = Field::inv_ref(&a.coeffs[0]);
        let mut r: Vec<Rational> = Vec::with_capacity(n);
        r.push(lead_inv.clone());
        for k in 1..n {
            let mut s = Rational::new();
            for i in 1..=k {
                s += Rational::from(&a.coeffs[i] * &r[k - i]);
            }
            r.push(-s * &lead_inv);
        }
        Ok(Self::new(self.var, -v, r, -v + n as i64))
    }

    pub fn div(&self, other: &Self) -> Result<Self, SeriesError> {
        Ok(self.mul(&other.inv()?))
    }

    /// `self^alpha` for a series `1 + O(var)`, computed from the
    /// differential equation `f g' = alpha f' g` term by term.
    pub fn fractional_pow(&self, alpha: &Rational) -> Result<Self, SeriesError> {
        let constant = self.coeff(0).unwrap_or_default();
        if self.offset != 0 || constant != 1 {
            return Err(SeriesError::NotUnitConstant {
                offset: self.offset,
                constant: constant.to_string(),
            });
        }
        let n = self.order.max(0) as usize;
        let f = &self.coeffs;
        let mut g: Vec<Rational> = Vec::with_capacity(n);
        if n > 0 {
            g.push(Rational::from(1));
        }
        for k in 1..n {
            // k g_k = sum_{i=1}^k (alpha*i - (k - i)) f_i g_{k-i}
            let mut s = Rational::new();
            for i in 1..=k {
                if f[i].cmp0() == Ordering::Equal {
                    continue;
                }
                let w = Rational::from(alpha * i as i64) - (k - i) as i64;
                s += w * &f[i] * &g[k - i];
            }
            g.push(s / k as i64);
        }
        Ok(Self::new(self.var, 0, g, self.order))
    }

    /// Integer power by repeated multiplication (negative via inversion).
    pub fn powi(&self, n: i64) -> Result<Self, SeriesError> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let relative = base.order - base.valuation().unwrap_or(base.order);
        let mut acc = Self::constant(self.var, Rational::from(1), relative);
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.cmp0() == Ordering::Equal {
                continue;
            }
            write!(f, "({c})*{}^{} + ", self.var, self.offset + i as i64)?;
        }
        write!(f, "O({}^{})", self.var, self.order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(offset: i64, c: &[i64], order: i64) -> TruncatedSeries {
        TruncatedSeries::new("q", offset, c.iter().map(|&v| Rational::from(v)).collect(), order)
    }

    #[test]
    fn product_of_conjugates() {
        let p = s(0, &[1, 1], 6).mul(&s(0, &[1, -1], 6));
        assert_eq!(p, s(0, &[1, 0, -1], 6));
    }

    #[test]
    fn geometric_series() {
        let inv = s(0, &[1, -1], 8).inv().unwrap();
        assert_eq!(inv, s(0, &[1; 8], 8));
    }

    #[test]
    fn laurent_offsets_track_order() {
        // (q + q^2 + O(q^5))^{-1} = q^-1 - 1 + q - q^2 + O(q^3)
        let inv = s(1, &[1, 1, 0, 0], 5).inv().unwrap();
        assert_eq!(inv.offset(), -1);
        assert_eq!(inv.order(), 3);
        assert_eq!(inv, s(-1, &[1, -1, 1, -1], 3));
        // minimum of the input orders survives a sum
        assert_eq!(s(0, &[1], 4).add(&s(0, &[1], 7)).order(), 4);
    }

    #[test]
    fn zero_series_cannot_be_inverted() {
        assert_eq!(s(0, &[0, 0], 3).inv(), Err(SeriesError::ZeroSeries(3)));
    }

    #[test]
    fn fractional_power_basics() {
        let one = s(0, &[1], 6);
        assert_eq!(one.fractional_pow(&Rational::from((3, 7))).unwrap(), one);
        let sq = s(0, &[1, 1], 6).fractional_pow(&Rational::from(2)).unwrap();
        assert_eq!(sq, s(0, &[1, 2, 1], 6));
        // (1 - 27q + 729 q^2)^{j/l} has linear coefficient -27 j/l
        let alpha = Rational::from((2, 5));
        let p = s(0, &[1, -27, 729], 3).fractional_pow(&alpha).unwrap();
        assert_eq!(p.coeff(1).unwrap(), Rational::from(-27) * &alpha);
    }

    #[test]
    fn fractional_power_rejects_non_unit() {
        assert!(matches!(
            s(0, &[2, 1], 4).fractional_pow(&Rational::from((1, 2))),
            Err(SeriesError::NotUnitConstant { .. })
        ));
        assert!(s(1, &[1], 4).fractional_pow(&Rational::from(1)).is_err());
    }

    #[test]
    fn square_root_of_geometric() {
        // sqrt(1/(1-4q)) = sum binom(2n, n) q^n
        let f = s(0, &[1, -4], 7).inv().unwrap();
        let r = f.fractional_pow(&Rational::from((1, 2))).unwrap();
        assert_eq!(r, s(0, &[1, 2, 6, 20, 70, 252, 924], 7));
    }
}
