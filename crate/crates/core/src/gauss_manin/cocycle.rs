use rug::Rational;

use super::family::{HyperellipticFamily, X_VAR, Z_VAR};
use super::{Coeff, GaussManinError, XLaurent};
use crate::exact::{Field, LaurentPoly, Var};

/// `even(x) + odd(x)·y` on `U₀ ∩ U_∞`.
#[derive(Debug, Clone, PartialEq)]
pub struct OverlapFunction {
    pub even: XLaurent,
    pub odd: XLaurent,
}

impl OverlapFunction {
    pub fn zero() -> Self {
        OverlapFunction { even: LaurentPoly::zero(X_VAR), odd: LaurentPoly::zero(X_VAR) }
    }

    /// `c·x^a·y`
    pub fn odd_monomial(c: Coeff, a: i64) -> Self {
        OverlapFunction { even: LaurentPoly::zero(X_VAR), odd: LaurentPoly::monomial(X_VAR, c, a) }
    }

    pub fn is_zero(&self) -> bool {
        self.even.is_zero() && self.odd.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        OverlapFunction { even: &self.even + &o.even, odd: &self.odd + &o.odd }
    }

    pub fn sub(&self, o: &Self) -> Self {
        OverlapFunction { even: &self.even - &o.even, odd: &self.odd - &o.odd }
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        OverlapFunction { even: self.even.scale(c), odd: self.odd.scale(c) }
    }

    /// Relative differential `α₀' dx + (α₁' f + α₁ f'/2) dx/y`.
    pub fn d(&self, family: &HyperellipticFamily) -> ChartForm {
        chart_d(&self.even, &self.odd, &LaurentPoly::from_poly(family.f()))
    }
}

/// Relative 1-form `odd(v)·dv/w + even(v)·dv` on a chart with coordinate
/// `v` and `w² = h(v)`: `(x, y)` on `U₀`, `(z, u)` on `U_∞`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChartForm {
    pub odd: XLaurent,
    pub even: XLaurent,
}

impl ChartForm {
    pub fn zero(var: Var) -> Self {
        ChartForm { odd: LaurentPoly::zero(var), even: LaurentPoly::zero(var) }
    }

    pub fn holomorphic(odd: XLaurent) -> Self {
        let var = odd.var();
        ChartForm { odd, even: LaurentPoly::zero(var) }
    }

    pub fn var(&self) -> Var {
        self.odd.var()
    }

    pub fn is_zero(&self) -> bool {
        self.odd.is_zero() && self.even.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        ChartForm { odd: &self.odd + &o.odd, even: &self.even + &o.even }
    }

    pub fn sub(&self, o: &Self) -> Self {
        ChartForm { odd: &self.odd - &o.odd, even: &self.even - &o.even }
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        ChartForm { odd: self.odd.scale(c), even: self.even.scale(c) }
    }

    /// No negative powers of the chart coordinate.
    pub fn is_regular(&self) -> bool {
        self.odd.low().unwrap_or(0) >= 0 && self.even.low().unwrap_or(0) >= 0
    }

    /// Rewrite a chart-∞ form in `x` using `z^k dz/u = -x^{g-1-k} dx/y`
    /// and `z^k dz = -x^{-k-2} dx`.
    pub fn inf_to_x(&self, genus: usize) -> ChartForm {
        assert_eq!(self.var(), Z_VAR);
        let odd = self.odd.invert_var(X_VAR).shift(genus as i64 - 1);
        let even = self.even.invert_var(X_VAR).shift(-2);
        ChartForm { odd: -&odd, even: -&even }
    }
}

/// `d(e + o·w) = e' dv + (o' h + o h'/2) dv/w` on a chart `w² = h(v)`.
fn chart_d(even: &XLaurent, odd: &XLaurent, h: &XLaurent) -> ChartForm {
    let half = Coeff::from_rational(&Rational::from((1, 2)));
    let odd_part = &(&odd.derivative() * h) + &(odd * &h.derivative()).scale(&half);
    ChartForm { odd: odd_part, even: even.derivative() }
}

/// Relative differential of `e(z) + o(z)·u` on `U_∞`.
pub(crate) fn d_inf(family: &HyperellipticFamily, even: &XLaurent, odd: &XLaurent) -> ChartForm {
    chart_d(even, odd, &LaurentPoly::from_poly(family.g()))
}

/// Čech–de Rham 1-cocycle `(α) × (ω₀, ω_∞)` with `dα = ω₀ - ω_∞`.
#[derive(Debug, Clone, PartialEq)]
pub struct CechCocycle {
    cech1: OverlapFunction,
    form0: ChartForm,
    form_inf: ChartForm,
}

impl CechCocycle {
    /// Checks regularity of both chart forms and the cocycle condition.
    pub fn new(
        family: &HyperellipticFamily,
        cech1: OverlapFunction,
        form0: ChartForm,
        form_inf: ChartForm,
    ) -> Result<Self, GaussManinError> {
        let c = Self::new_unchecked(cech1, form0, form_inf);
        c.validate(family)?;
        Ok(c)
    }

    pub(crate) fn new_unchecked(cech1: OverlapFunction, form0: ChartForm, form_inf: ChartForm) -> Self {
        assert_eq!(form0.var(), X_VAR);
        assert_eq!(form_inf.var(), Z_VAR);
        CechCocycle { cech1, form0, form_inf }
    }

    pub fn validate(&self, family: &HyperellipticFamily) -> Result<(), GaussManinError> {
        if !self.form0.is_regular() {
            return Err(GaussManinError::IrregularForm { chart: "chart-0" });
        }
        if !self.form_inf.is_regular() {
            return Err(GaussManinError::IrregularForm { chart: "chart-∞" });
        }
        let lhs = self.cech1.d(family);
        let rhs = self.form0.sub(&self.form_inf.inf_to_x(family.genus()));
        if lhs != rhs {
            return Err(GaussManinError::NotACocycle);
        }
        Ok(())
    }

    pub fn zero() -> Self {
        Self::new_unchecked(OverlapFunction::zero(), ChartForm::zero(X_VAR), ChartForm::zero(Z_VAR))
    }

    /// The coboundary of `(h₀, h_∞)` with `h₀ = e₀(x) + o₀(x)y` regular on
    /// `U₀` and `h_∞ = e_∞(z) + o_∞(z)u` regular on `U_∞`.
    pub fn coboundary(
        family: &HyperellipticFamily,
        h0: (&XLaurent, &XLaurent),
        h_inf: (&XLaurent, &XLaurent),
    ) -> Self {
        let g1 = family.genus() as i64 + 1;
        let inf_on_overlap = OverlapFunction {
            even: h_inf.0.invert_var(X_VAR),
            odd: h_inf.1.invert_var(X_VAR).shift(-g1),
        };
        let h0_fn = OverlapFunction { even: h0.0.clone(), odd: h0.1.clone() };
        Self::new_unchecked(h0_fn.sub(&inf_on_overlap), h0_fn.d(family), d_inf(family, h_inf.0, h_inf.1))
    }

    pub fn cech1(&self) -> &OverlapFunction {
        &self.cech1
    }

    pub fn form0(&self) -> &ChartForm {
        &self.form0
    }

    pub fn form_inf(&self) -> &ChartForm {
        &self.form_inf
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new_unchecked(self.cech1.add(&o.cech1), self.form0.add(&o.form0), self.form_inf.add(&o.form_inf))
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new_unchecked(self.cech1.sub(&o.cech1), self.form0.sub(&o.form0), self.form_inf.sub(&o.form_inf))
    }

    /// Multiply by a function of `t` alone.
    pub fn scale(&self, c: &Coeff) -> Self {
        Self::new_unchecked(self.cech1.scale(c), self.form0.scale(c), self.form_inf.scale(c))
    }
}

/// `ω_i = (0) × (x^{i-1} dx/y, -z^{g-i} dz/u)` for `1 ≤ i ≤ g`.
pub(crate) fn omega(family: &HyperellipticFamily, i: usize) -> CechCocycle {
    let g = family.genus();
    CechCocycle::new_unchecked(
        OverlapFunction::zero(),
        ChartForm::holomorphic(LaurentPoly::monomial(X_VAR, Coeff::one(), i as i64 - 1)),
        ChartForm::holomorphic(LaurentPoly::monomial(Z_VAR, -&Coeff::one(), (g - i) as i64)),
    )
}

/// `ω_i* = (y/x^i) × (Σ_{m>i} (m/2 - i) a_m x^{m-i-1} dx/y,
/// Σ_{m≤i} (m/2 - i) a_m z^{g-m+i} dz/u)`.
pub(crate) fn omega_star(family: &HyperellipticFamily, i: usize) -> CechCocycle {
    let g = family.genus();
    let n = family.f().degree().unwrap();
    let weight = |m: usize| Coeff::from_rational(&(Rational::from((m as i64, 2)) - i as i64));
    let mut form0 = LaurentPoly::zero(X_VAR);
    let mut form_inf = LaurentPoly::zero(Z_VAR);
    for m in 0..=n {
        let c = weight(m).mul_ref(&family.a(m));
        if c.is_zero() {
            continue;
        }
        if m > i {
            form0 = &form0 + &LaurentPoly::monomial(X_VAR, c, (m - i - 1) as i64);
        } else {
            form_inf = &form_inf + &LaurentPoly::monomial(Z_VAR, c, (g + i - m) as i64);
        }
    }
    CechCocycle::new_unchecked(
        OverlapFunction::odd_monomial(Coeff::one(), -(i as i64)),
        ChartForm::holomorphic(form0),
        ChartForm::holomorphic(form_inf),
    )
}

/// The ordered basis `(ω₁, …, ω_g, ω₁*, …, ω_g*)` of `H¹_dR`.
pub fn basis(family: &HyperellipticFamily) -> Vec<CechCocycle> {
    let g = family.genus();
    (1..=g)
        .map(|i| omega(family, i))
        .chain((1..=g).map(|i| omega_star(family, i)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{Polynomial, RationalFunction, BASE_VAR};

    fn tp(c: &[i64]) -> Polynomial<Rational> {
        Polynomial::from_ints(BASE_VAR, c)
    }

    fn rf(c: &[i64]) -> Coeff {
        RationalFunction::from_poly(tp(c))
    }

    #[test]
    fn weierstrass_omega_star_matches_closed_form() {
        // f = 4x^3 - g2 x - g3 with g2 = 3, g3 = 1 - 2t
        let fam = HyperellipticFamily::from_weierstrass(&tp(&[3]), &tp(&[1, -2])).unwrap();
        let b = basis(&fam);
        assert_eq!(b.len(), 2);
        let star = &b[1];
        assert_eq!(star.form0().odd, LaurentPoly::monomial(X_VAR, Coeff::from_int(2), 1));
        // (g2 z + 2 g3 z^2) dz / (2u)
        let expected = LaurentPoly::new(Z_VAR, 1, vec![rf(&[3]).div_ref(&Coeff::from_int(2)), rf(&[1, -2])]);
        assert_eq!(star.form_inf().odd, expected);
        for c in &b {
            c.validate(&fam).unwrap();
        }
    }

    #[test]
    fn genus_two_basis_elements_are_cocycles() {
        let fam = HyperellipticFamily::parse("1; 0,1; 0; 0; 0; 1", None).unwrap();
        let even = HyperellipticFamily::parse("0,1; 1; 0; 0; 1; 0; 1", None).unwrap();
        for family in [&fam, &even] {
            let b = basis(family);
            assert_eq!(b.len(), 4);
            for c in &b {
                c.validate(family).unwrap();
            }
        }
    }

    #[test]
    fn coboundaries_are_cocycles() {
        let fam = HyperellipticFamily::from_weierstrass(&tp(&[3]), &tp(&[1, -2])).unwrap();
        let h0_odd = LaurentPoly::new(X_VAR, 0, vec![rf(&[0, 1]), Coeff::zero(), Coeff::one()]);
        let h0_even = LaurentPoly::monomial(X_VAR, Coeff::one(), 3);
        let hi_odd = LaurentPoly::monomial(Z_VAR, rf(&[2]), 1);
        let hi_even = LaurentPoly::monomial(Z_VAR, Coeff::one(), 2);
        let c = CechCocycle::coboundary(&fam, (&h0_even, &h0_odd), (&hi_even, &hi_odd));
        c.validate(&fam).unwrap();
    }

    #[test]
    fn broken_cocycle_is_rejected() {
        let fam = HyperellipticFamily::from_weierstrass(&tp(&[3]), &tp(&[1, -2])).unwrap();
        let bad = CechCocycle::new(
            &fam,
            OverlapFunction::odd_monomial(Coeff::one(), -1),
            ChartForm::zero(X_VAR),
            ChartForm::zero(Z_VAR),
        );
        assert_eq!(bad, Err(GaussManinError::NotACocycle));
        let irregular = CechCocycle::new(
            &fam,
            OverlapFunction::zero(),
            ChartForm::holomorphic(LaurentPoly::monomial(X_VAR, Coeff::one(), -1)),
            ChartForm::zero(Z_VAR),
        );
        assert!(matches!(irregular, Err(GaussManinError::IrregularForm { .. })));
    }
}
