use std::ops::{Add, Mul, Neg, Sub};

use super::field::Field;
use super::poly::{Polynomial, Var};

/// Finite Laurent polynomial `sum c_i var^(low + i)`.
///
/// Normalized so that the first and last stored coefficients are nonzero;
/// the zero element has no coefficients and `low = 0`.
#[derive(Clone, PartialEq, Debug)]
pub struct LaurentPoly<K> {
    var: Var,
    low: i64,
    coeffs: Vec<K>,
}

impl<K: Field> LaurentPoly<K> {
    pub fn new(var: Var, low: i64, coeffs: Vec<K>) -> Self {
        let mut l = LaurentPoly { var, low, coeffs };
        l.normalize();
        l
    }

    pub fn zero(var: Var) -> Self {
        LaurentPoly { var, low: 0, coeffs: Vec::new() }
    }

    pub fn monomial(var: Var, c: K, exp: i64) -> Self {
        Self::new(var, exp, vec![c])
    }

    pub fn from_poly(p: &Polynomial<K>) -> Self {
        Self::new(p.var(), 0, p.coeffs().to_vec())
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead_zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros > 0 {
            self.coeffs.drain(..lead_zeros);
            self.low += lead_zeros as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn low(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn high(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    pub fn coeff(&self, exp: i64) -> K {
        let i = exp - self.low;
        if i < 0 {
            return K::zero();
        }
        self.coeffs.get(i as usize).cloned().unwrap_or_else(K::zero)
    }

    /// Nonzero terms as `(exponent, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &K)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i64, c))
    }

    /// Multiply by `var^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPoly { var: self.var, low: self.low + k, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: &K) -> Self {
        Self::new(self.var, self.low, self.coeffs.iter().map(|a| a.mul_ref(c)).collect())
    }

    pub fn map_coeffs(&self, f: impl Fn(&K) -> K) -> Self {
        Self::new(self.var, self.low, self.coeffs.iter().map(f).collect())
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c.mul_ref(&K::from_i64(self.low + i as i64)))
            .collect();
        Self::new(self.var, self.low - 1, coeffs)
    }

    /// The ordinary polynomial, if there are no negative exponents.
    pub fn to_poly(&self) -> Option<Polynomial<K>> {
        if self.is_zero() {
            return Some(Polynomial::zero(self.var));
        }
        if self.low < 0 {
            return None;
        }
        Some(Polynomial::new(self.var, self.coeffs.clone()).shift(self.low as usize))
    }

    /// Substitute `var -> 1/var` and rename the variable.
    pub fn invert_var(&self, var: Var) -> Self {
        match self.high() {
            None => Self::zero(var),
            Some(high) => {
                let coeffs = self.coeffs.iter().rev().cloned().collect();
                Self::new(var, -high, coeffs)
            }
        }
    }

    /// Exact quotient by a polynomial in the Laurent ring, where the
    /// variable is a unit. `None` when the division leaves a remainder.
    pub fn exact_div_poly(&self, divisor: &Polynomial<K>) -> Option<Self> {
        assert_eq!(self.var, divisor.var());
        if self.is_zero() {
            return Some(self.clone());
        }
        let divisor_lead_zeros = divisor.coeffs().iter().take_while(|c| c.is_zero()).count();
        let stripped = Polynomial::new(divisor.var(), divisor.coeffs()[divisor_lead_zeros..].to_vec());
        let numer = Polynomial::new(self.var, self.coeffs.clone());
        let quot = numer.exact_div(&stripped)?;
        Some(Self::from_poly(&quot).shift(self.low - divisor_lead_zeros as i64))
    }
}

impl<K: Field> Add for &LaurentPoly<K> {
    type Output = LaurentPoly<K>;
    fn add(self, rhs: Self) -> LaurentPoly<K> {
        assert_eq!(self.var, rhs.var, "laurent variable mismatch");
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let high = self.high().unwrap().max(rhs.high().unwrap());
        let coeffs = (low..=high).map(|e| self.coeff(e).add_ref(&rhs.coeff(e))).collect();
        LaurentPoly::new(self.var, low, coeffs)
    }
}

impl<K: Field> Neg for &LaurentPoly<K> {
    type Output = LaurentPoly<K>;
    fn neg(self) -> LaurentPoly<K> {
        self.map_coeffs(|c| c.neg_ref())
    }
}

impl<K: Field> Sub for &LaurentPoly<K> {
    type Output = LaurentPoly<K>;
    fn sub(self, rhs: Self) -> LaurentPoly<K> {
        self + &(-rhs)
    }
}

impl<K: Field> Mul for &LaurentPoly<K> {
    type Output = LaurentPoly<K>;
    fn mul(self, rhs: Self) -> LaurentPoly<K> {
        assert_eq!(self.var, rhs.var, "laurent variable mismatch");
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero(self.var);
        }
        let mut coeffs = vec![K::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add_ref(&a.mul_ref(b));
            }
        }
        LaurentPoly::new(self.var, self.low + rhs.low, coeffs)
    }
}
