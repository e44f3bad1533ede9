use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::Rational;

use super::field::Field;
use super::poly::{Polynomial, Var};

/// Quotient of two rational polynomials in the base variable.
///
/// Kept in canonical form: the denominator is monic and coprime to the
/// numerator, so structural equality is mathematical equality.
#[derive(Clone, PartialEq, Debug)]
pub struct RationalFunction {
    num: Polynomial<Rational>,
    den: Polynomial<Rational>,
}

/// Variable used for the base of every family in this crate.
pub const BASE_VAR: Var = "t";

impl RationalFunction {
    pub fn new(num: Polynomial<Rational>, den: Polynomial<Rational>) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        assert_eq!(num.var(), den.var(), "rational function variable mismatch");
        if num.is_zero() {
            return Self::from_poly(Polynomial::zero(num.var()));
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_constant() {
            (num, den)
        } else {
            (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
        };
        let lc = den.leading().unwrap().clone();
        if !lc.is_one() {
            let inv = Field::inv_ref(&lc);
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RationalFunction { num, den }
    }

    pub fn from_poly(p: Polynomial<Rational>) -> Self {
        let den = Polynomial::one(p.var());
        RationalFunction { num: p, den }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Polynomial::constant(BASE_VAR, c))
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(Rational::from(n))
    }

    /// The base variable `t`.
    pub fn t() -> Self {
        Self::from_poly(Polynomial::identity(BASE_VAR))
    }

    pub fn num(&self) -> &Polynomial<Rational> {
        &self.num
    }

    pub fn den(&self) -> &Polynomial<Rational> {
        &self.den
    }

    pub fn var(&self) -> Var {
        self.num.var()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// Constant value, if the function is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        (self.num.is_constant() && self.den.is_constant()).then(|| self.num.coeff(0))
    }

    /// d/dt by the quotient rule.
    pub fn derivative(&self) -> Self {
        let num = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::new(num, &self.den * &self.den)
    }

    /// Value at a rational point; `None` at a pole.
    pub fn eval(&self, at: &Rational) -> Option<Rational> {
        let d = self.den.eval(at);
        if Field::is_zero(&d) {
            return None;
        }
        Some(Rational::from(self.num.eval(at) / d))
    }

    /// Order of vanishing at `point` (negative for a pole); `None` for zero.
    pub fn order_at(&self, point: &Rational) -> Option<i64> {
        if self.num.is_zero() {
            return None;
        }
        Some(self.num.root_multiplicity(point) as i64 - self.den.root_multiplicity(point) as i64)
    }
}

impl Field for RationalFunction {
    fn zero() -> Self {
        Self::from_poly(Polynomial::zero(BASE_VAR))
    }

    fn one() -> Self {
        Self::from_int(1)
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        if self.den == rhs.den {
            return Self::new(&self.num + &rhs.num, self.den.clone());
        }
        Self::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        self.add_ref(&rhs.neg_ref())
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        if self.is_polynomial() && rhs.is_polynomial() {
            let scale = Field::inv_ref(&Rational::from(
                self.den.coeff(0) * rhs.den.coeff(0),
            ));
            return Self::from_poly((&self.num * &rhs.num).scale(&scale));
        }
        Self::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }

    fn neg_ref(&self) -> Self {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }

    fn inv_ref(&self) -> Self {
        assert!(!self.num.is_zero(), "inverse of zero rational function");
        Self::new(self.den.clone(), self.num.clone())
    }

    fn from_i64(n: i64) -> Self {
        Self::from_int(n)
    }

    fn from_rational(q: &Rational) -> Self {
        Self::constant(q.clone())
    }

    fn is_compound(&self) -> bool {
        !(self.num.is_constant() && self.den.is_constant())
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |p: &Polynomial<Rational>| {
            let s = p.to_string();
            if p.coeffs().iter().filter(|c| !Field::is_zero(*c)).count() > 1 {
                format!("({s})")
            } else {
                s
            }
        };
        if self.den.is_constant() {
            return write!(f, "{}", self.num);
        }
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

macro_rules! ratfunc_binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr for &RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: Self) -> RationalFunction {
                self.$f(rhs)
            }
        }
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: Self) -> RationalFunction {
                (&self).$f(&rhs)
            }
        }
    };
}
ratfunc_binop!(Add, add, add_ref);
ratfunc_binop!(Sub, sub, sub_ref);
ratfunc_binop!(Mul, mul, mul_ref);
ratfunc_binop!(Div, div, div_ref);

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> Polynomial<Rational> {
        Polynomial::from_ints(BASE_VAR, c)
    }

    #[test]
    fn canonical_form_cancels_and_normalizes() {
        // (2t^2 - 2t) / (4t) = (t - 1)/2
        let r = RationalFunction::new(poly(&[0, -2, 2]), poly(&[0, 4]));
        assert!(r.is_polynomial());
        assert_eq!(r.num(), &Polynomial::new(BASE_VAR, vec![Rational::from((-1, 2)), Rational::from((1, 2))]));
        assert_eq!(r.den(), &poly(&[1]));
    }

    #[test]
    fn arithmetic_and_derivative() {
        let t = RationalFunction::t();
        let inv_t = t.inv_ref();
        assert_eq!(&t * &inv_t, RationalFunction::one());
        // d/dt (1/t) = -1/t^2
        let d = inv_t.derivative();
        assert_eq!(d, RationalFunction::new(poly(&[-1]), poly(&[0, 0, 1])));
        assert_eq!(d.to_string(), "-1/t^2");
    }

    #[test]
    fn orders_at_points() {
        let r = RationalFunction::new(poly(&[0, 0, 1]), poly(&[1, -1]));
        assert_eq!(r.order_at(&Rational::from(0)), Some(2));
        assert_eq!(r.order_at(&Rational::from(1)), Some(-1));
        assert_eq!(r.eval(&Rational::from(1)), None);
    }
}
