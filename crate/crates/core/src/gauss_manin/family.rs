use rug::Rational;

use super::{Coeff, GaussManinError, XPoly};
use crate::exact::{Field, Polynomial, RationalFunction, Var, BASE_VAR};

pub const X_VAR: Var = "x";
pub const Z_VAR: Var = "z";

/// `y² = f(x)` with `f ∈ ℚ(t)[x]` of degree `2g+1` or `2g+2`.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperellipticFamily {
    f: XPoly,
    genus: usize,
    /// `g(z) = z^{2g+2} f(1/z)`
    g: XPoly,
}

impl HyperellipticFamily {
    /// Genus is read off the degree.
    pub fn new(f: XPoly) -> Result<Self, GaussManinError> {
        let degree = f.degree().unwrap_or(0);
        if degree < 3 {
            return Err(GaussManinError::DegreeTooSmall(degree));
        }
        Self::with_genus(f, (degree - 1) / 2)
    }

    pub fn with_genus(f: XPoly, genus: usize) -> Result<Self, GaussManinError> {
        assert_eq!(f.var(), X_VAR, "family polynomial must be in x");
        let degree = f.degree().unwrap_or(0);
        if degree < 3 {
            return Err(GaussManinError::DegreeTooSmall(degree));
        }
        if genus == 0 || (degree != 2 * genus + 1 && degree != 2 * genus + 2) {
            return Err(GaussManinError::GenusMismatch { degree, genus });
        }
        let (d, _, _) = f.extended_euclid(&f.derivative());
        if !d.is_constant() {
            return Err(GaussManinError::SingularFamily);
        }
        let mut rev: Vec<Coeff> = f.coeffs().to_vec();
        rev.resize(2 * genus + 3, Coeff::zero());
        rev.reverse();
        let g = Polynomial::new(Z_VAR, rev);
        Ok(HyperellipticFamily { f, genus, g })
    }

    /// `y² = 4x³ - g₂(t)x - g₃(t)`.
    pub fn from_weierstrass(g2: &Polynomial<Rational>, g3: &Polynomial<Rational>) -> Result<Self, GaussManinError> {
        let c = |p: &Polynomial<Rational>| RationalFunction::from_poly(p.with_var(BASE_VAR));
        let f = Polynomial::new(X_VAR, vec![-&c(g3), -&c(g2), Coeff::zero(), Coeff::from_int(4)]);
        Self::new(f)
    }

    /// Parse `f` written as `;`-separated x-coefficients (lowest first),
    /// each a `,`-separated list of t-coefficients (lowest first).
    pub fn parse(text: &str, genus: Option<usize>) -> Result<Self, GaussManinError> {
        let coeffs = text
            .split(';')
            .map(|part| {
                Polynomial::parse_coeffs(BASE_VAR, part.trim())
                    .map(RationalFunction::from_poly)
                    .ok_or_else(|| GaussManinError::Parse { what: "coefficient of f", text: part.to_string() })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let f = Polynomial::new(X_VAR, coeffs);
        match genus {
            Some(g) => Self::with_genus(f, g),
            None => Self::new(f),
        }
    }

    pub fn f(&self) -> &XPoly {
        &self.f
    }

    /// The chart-∞ polynomial `g(z) = z^{2g+2} f(1/z)`.
    pub fn g(&self) -> &XPoly {
        &self.g
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// Coefficient `a_m` of `x^m` in `f`.
    pub fn a(&self, m: usize) -> Coeff {
        self.f.coeff(m)
    }
}

/// Partial derivative in `t` of every coefficient.
pub(crate) fn d_dt(p: &XPoly) -> XPoly {
    p.map_coeffs(|c| c.derivative())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tp(c: &[i64]) -> Polynomial<Rational> {
        Polynomial::from_ints(BASE_VAR, c)
    }

    #[test]
    fn weierstrass_family_and_chart_polynomial() {
        let fam = HyperellipticFamily::from_weierstrass(&tp(&[3]), &tp(&[1, -2])).unwrap();
        assert_eq!(fam.genus(), 1);
        // g(z) = z^4 f(1/z) = 4z - 3z^3 - (1 - 2t) z^4
        assert_eq!(fam.g().degree(), Some(4));
        assert_eq!(fam.g().coeff(1), Coeff::from_int(4));
        assert_eq!(fam.g().coeff(0), Coeff::zero());
    }

    #[test]
    fn rejects_degenerate_input() {
        // x^3 has a triple root
        let f = Polynomial::new(X_VAR, vec![Coeff::zero(), Coeff::zero(), Coeff::zero(), Coeff::one()]);
        assert_eq!(HyperellipticFamily::new(f), Err(GaussManinError::SingularFamily));
        let f = Polynomial::new(X_VAR, vec![Coeff::one(), Coeff::zero(), Coeff::one()]);
        assert_eq!(HyperellipticFamily::new(f), Err(GaussManinError::DegreeTooSmall(2)));
    }

    #[test]
    fn parses_coefficients_in_x_and_t() {
        // y^2 = x^5 + t x + 1
        let fam = HyperellipticFamily::parse("1; 0,1; 0; 0; 0; 1", None).unwrap();
        assert_eq!(fam.genus(), 2);
        assert_eq!(fam.a(1), RationalFunction::t());
        assert!(HyperellipticFamily::parse("1; x; 1", None).is_err());
        assert!(matches!(
            HyperellipticFamily::parse("1;0;0;1", Some(2)),
            Err(GaussManinError::GenusMismatch { .. })
        ));
    }
}
