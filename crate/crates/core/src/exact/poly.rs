use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::Rational;

use super::field::{parse_rational, Field};

/// Name of a polynomial variable. Operands of a binary operation must agree.
pub type Var = &'static str;

/// Dense univariate polynomial, coefficients stored lowest degree first.
///
/// The coefficient vector never ends in a zero, so the zero polynomial has
/// an empty vector and `degree()` returns `None`.
#[derive(Clone, PartialEq, Debug)]
pub struct Polynomial<K> {
    var: Var,
    coeffs: Vec<K>,
}

fn check_var(a: Var, b: Var) {
    assert_eq!(a, b, "polynomial variable mismatch: {a} vs {b}");
}

impl<K: Field> Polynomial<K> {
    pub fn new(var: Var, coeffs: Vec<K>) -> Self {
        let mut p = Polynomial { var, coeffs };
        p.trim();
        p
    }

    pub fn zero(var: Var) -> Self {
        Polynomial { var, coeffs: Vec::new() }
    }

    pub fn one(var: Var) -> Self {
        Self::constant(var, K::one())
    }

    pub fn constant(var: Var, c: K) -> Self {
        Self::new(var, vec![c])
    }

    /// `c * var^deg`
    pub fn monomial(var: Var, c: K, deg: usize) -> Self {
        let mut coeffs = vec![K::zero(); deg + 1];
        coeffs[deg] = c;
        Self::new(var, coeffs)
    }

    /// The polynomial `var` itself.
    pub fn identity(var: Var) -> Self {
        Self::monomial(var, K::one(), 1)
    }

    /// `var - point`
    pub fn linear_root(var: Var, point: &K) -> Self {
        Self::new(var, vec![point.neg_ref(), K::one()])
    }

    pub fn from_ints(var: Var, coeffs: &[i64]) -> Self {
        Self::new(var, coeffs.iter().map(|&c| K::from_i64(c)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<K> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `var^i`; zero beyond the degree.
    pub fn coeff(&self, i: usize) -> K {
        self.coeffs.get(i).cloned().unwrap_or_else(K::zero)
    }

    pub fn leading(&self) -> Option<&K> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, at: &K) -> K {
        self.coeffs
            .iter()
            .rev()
            .fold(K::zero(), |acc, c| acc.mul_ref(at).add_ref(c))
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul_ref(&K::from_i64(i as i64)))
            .collect();
        Self::new(self.var, coeffs)
    }

    pub fn scale(&self, c: &K) -> Self {
        Self::new(self.var, self.coeffs.iter().map(|a| a.mul_ref(c)).collect())
    }

    pub fn map_coeffs(&self, f: impl Fn(&K) -> K) -> Self {
        Self::new(self.var, self.coeffs.iter().map(f).collect())
    }

    /// Multiply by `var^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![K::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { var: self.var, coeffs }
    }

    /// Divide by the leading coefficient. The zero polynomial is returned unchanged.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) if !lc.is_one() => self.scale(&lc.inv_ref()),
            _ => self.clone(),
        }
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        check_var(self.var, divisor.var);
        let d_deg = divisor.degree().expect("polynomial division by zero");
        let lc_inv = divisor.coeffs[d_deg].inv_ref();
        let mut rem = self.coeffs.clone();
        let Some(n_deg) = self.degree().filter(|&n| n >= d_deg) else {
            return (Self::zero(self.var), self.clone());
        };
        let mut quot = vec![K::zero(); n_deg - d_deg + 1];
        for k in (0..=n_deg - d_deg).rev() {
            let c = rem[k + d_deg].mul_ref(&lc_inv);
            if c.is_zero() {
                continue;
            }
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + i] = rem[k + i].sub_ref(&c.mul_ref(dc));
            }
            quot[k] = c;
        }
        rem.truncate(d_deg);
        (Self::new(self.var, quot), Self::new(self.var, rem))
    }

    /// `self / divisor` when the division is exact.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.div_rem(self).1.is_zero()
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        check_var(self.var, other.var);
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended Euclid: returns `(d, a, b)` with `a*self + b*other = d`,
    /// `d` the monic gcd. The Bézout identity is re-checked before returning.
    pub fn extended_euclid(&self, other: &Self) -> (Self, Self, Self) {
        check_var(self.var, other.var);
        assert!(
            !(self.is_zero() && other.is_zero()),
            "extended_euclid of two zero polynomials"
        );
        let var = self.var;
        // invariant: r_i = s_i*self + t_i*other
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(var), Self::zero(var));
        let (mut t0, mut t1) = (Self::zero(var), Self::one(var));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        let lc_inv = r0.leading().expect("nonzero gcd").inv_ref();
        let (d, a, b) = (r0.scale(&lc_inv), s0.scale(&lc_inv), t0.scale(&lc_inv));
        assert_eq!(&(&a * self) + &(&b * other), d, "Bézout identity violated");
        (d, a, b)
    }

    /// Multiplicity of `point` as a root (0 when it is not a root).
    /// Panics on the zero polynomial.
    pub fn root_multiplicity(&self, point: &K) -> usize {
        assert!(!self.is_zero(), "root multiplicity of the zero polynomial");
        let lin = Self::linear_root(self.var, point);
        let mut p = self.clone();
        let mut m = 0;
        while let Some(q) = p.exact_div(&lin) {
            p = q;
            m += 1;
        }
        m
    }

    /// Strip every factor `(var - point)`, returning the cofactor and the multiplicity.
    pub fn remove_root(&self, point: &K) -> (Self, usize) {
        let lin = Self::linear_root(self.var, point);
        let mut p = self.clone();
        let mut m = 0;
        while let Some(q) = p.exact_div(&lin) {
            p = q;
            m += 1;
        }
        (p, m)
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(self.var), |acc, _| &acc * self)
    }

    /// Substitute another polynomial (in any variable) for `var`.
    pub fn compose(&self, inner: &Polynomial<K>) -> Polynomial<K> {
        self.coeffs.iter().rev().fold(Polynomial::zero(inner.var), |acc, c| {
            &(&acc * inner) + &Polynomial::constant(inner.var, c.clone())
        })
    }

    /// Reinterpret the same coefficients over another variable name.
    pub fn with_var(&self, var: Var) -> Self {
        Polynomial { var, coeffs: self.coeffs.clone() }
    }
}

impl Polynomial<Rational> {
    /// Parse a comma-separated coefficient list, lowest degree first.
    pub fn parse_coeffs(var: Var, text: &str) -> Option<Self> {
        let coeffs = text
            .split(',')
            .map(parse_rational)
            .collect::<Option<Vec<_>>>()?;
        Some(Self::new(var, coeffs))
    }

    /// Coefficient list as exact strings, lowest degree first.
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }

    /// Value at a point with the sign of the result only.
    pub fn sign_at(&self, at: &Rational) -> std::cmp::Ordering {
        self.eval(at).cmp0()
    }
}

impl<K: Field> Add for &Polynomial<K> {
    type Output = Polynomial<K>;
    fn add(self, rhs: Self) -> Polynomial<K> {
        check_var(self.var, rhs.var);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).add_ref(&rhs.coeff(i))).collect();
        Polynomial::new(self.var, coeffs)
    }
}

impl<K: Field> Sub for &Polynomial<K> {
    type Output = Polynomial<K>;
    fn sub(self, rhs: Self) -> Polynomial<K> {
        check_var(self.var, rhs.var);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).sub_ref(&rhs.coeff(i))).collect();
        Polynomial::new(self.var, coeffs)
    }
}

impl<K: Field> Mul for &Polynomial<K> {
    type Output = Polynomial<K>;
    fn mul(self, rhs: Self) -> Polynomial<K> {
        check_var(self.var, rhs.var);
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero(self.var);
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
        Polynomial::new(self.var, coeffs)
    }
}

impl<K: Field> Neg for &Polynomial<K> {
    type Output = Polynomial<K>;
    fn neg(self) -> Polynomial<K> {
        self.map_coeffs(|c| c.neg_ref())
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $m:ident) => {
        impl<K: Field> $tr for Polynomial<K> {
            type Output = Polynomial<K>;
            fn $m(self, rhs: Self) -> Polynomial<K> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl<K: Field> fmt::Display for Polynomial<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let text = c.to_string();
            let (negative, body) = match text.strip_prefix('-') {
                Some(rest) if !c.is_compound() => (true, rest.to_string()),
                _ => (false, text),
            };
            if first {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            first = false;
            let body = if c.is_compound() { format!("({body})") } else { body };
            match i {
                0 => f.write_str(&body)?,
                _ => {
                    if body != "1" {
                        write!(f, "{body}*")?;
                    }
                    f.write_str(self.var)?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn p(coeffs: &[i64]) -> Polynomial<Rational> {
        Polynomial::from_ints("x", coeffs)
    }

    #[test]
    fn zero_polynomial_has_no_degree() {
        assert_eq!(p(&[0, 0]).degree(), None);
        assert_eq!(p(&[1, 0, 3]).degree(), Some(2));
    }

    #[test]
    fn division_with_remainder() {
        // x^3 - 1 = (x - 1)(x^2 + x + 1)
        let (quot, rem) = p(&[-1, 0, 0, 1]).div_rem(&p(&[-1, 1]));
        assert_eq!(quot, p(&[1, 1, 1]));
        assert!(rem.is_zero());
        let (_, rem) = p(&[1, 0, 1]).div_rem(&p(&[-1, 1]));
        assert_eq!(rem, p(&[2]));
    }

    #[test]
    fn euclid_shared_factor() {
        let (d, a, b) = p(&[-1, 0, 1]).extended_euclid(&p(&[1, 1]));
        assert_eq!(d, p(&[1, 1]));
        assert!(a.is_zero());
        assert_eq!(b, p(&[1]));
    }

    #[test]
    fn euclid_unit_gcd() {
        let (d, a, b) = p(&[0, 1]).extended_euclid(&p(&[1]));
        assert_eq!(d, p(&[1]));
        assert!(a.is_zero());
        assert_eq!(b, p(&[1]));
    }

    #[test]
    fn euclid_catalog_cubic_at_half() {
        // 4x^3 - 3x - (1 - 2t) at t = 1/2 is 4x^3 - 3x; its derivative 12x^2 - 3.
        let f = p(&[0, -3, 0, 4]);
        let g = f.derivative();
        assert_eq!(g, p(&[-3, 0, 12]));
        let (d, a, b) = f.extended_euclid(&g);
        assert_eq!(d, p(&[1]));
        assert_eq!(&(&a * &f) + &(&b * &g), p(&[1]));
        // hand solution: a = -16/3, b = (16x^2 - 1)/3 ... reduced by the algorithm
        assert!(a.degree().unwrap() < g.degree().unwrap());
        assert!(b.degree().unwrap() < f.degree().unwrap());
    }

    #[test]
    fn root_multiplicities() {
        let f = p(&[0, 0, 0, 1, -1]); // t^3 (1 - t)
        assert_eq!(f.root_multiplicity(&q(0)), 3);
        assert_eq!(f.root_multiplicity(&q(1)), 1);
        assert_eq!(f.root_multiplicity(&q(2)), 0);
    }

    #[test]
    fn display_is_readable() {
        let f = Polynomial::new(
            "t",
            vec![Rational::from((1, 2)), q(-3), q(0), q(1)],
        );
        assert_eq!(f.to_string(), "t^3 - 3*t + 1/2");
        assert_eq!(p(&[0, -1]).to_string(), "-x");
    }

    #[test]
    fn compose_substitutes() {
        // g(t) = 9 - 8t, composed with t^2
        let g = Polynomial::<Rational>::from_ints("t", &[9, -8]);
        let t2 = Polynomial::<Rational>::monomial("t", q(1), 2);
        assert_eq!(g.compose(&t2), Polynomial::from_ints("t", &[9, 0, -8]));
    }

    #[test]
    #[should_panic(expected = "variable mismatch")]
    fn mixing_variables_panics() {
        let _ = &p(&[1]) + &Polynomial::<Rational>::from_ints("t", &[1]);
    }
}
