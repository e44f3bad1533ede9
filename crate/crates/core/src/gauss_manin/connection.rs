use std::fmt;

use rug::Rational;
use serde::Serialize;

use super::cocycle::{d_inf, omega_star, CechCocycle, ChartForm, OverlapFunction};
use super::family::{d_dt, HyperellipticFamily, X_VAR, Z_VAR};
use super::{basis, Coeff, GaussManinError, XLaurent, XPoly};
use crate::exact::{Field, LaurentPoly, Polynomial, RationalFunction, BASE_VAR};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Chart {
    Zero,
    Infinity,
}

/// Bézout pairs `A f + B f_x = 1` on `U₀` and `C g + D g_z = 1` on `U_∞`.
#[derive(Debug, Clone, PartialEq)]
pub struct Lifting {
    pub a: XPoly,
    pub b: XPoly,
    pub c: XPoly,
    pub d: XPoly,
}

impl Lifting {
    pub fn new(family: &HyperellipticFamily) -> Self {
        let (d0, a, b) = family.f().extended_euclid(&family.f().derivative());
        let (d1, c, d) = family.g().extended_euclid(&family.g().derivative());
        assert!(d0.is_constant() && d1.is_constant(), "family was validated square-free");
        Lifting { a, b, c, d }
    }

    /// Another valid pair: `(A + k₀ f_x, B - k₀ f)` and `(C + k_∞ g_z, D - k_∞ g)`.
    pub fn shifted(&self, family: &HyperellipticFamily, k0: &XPoly, k_inf: &XPoly) -> Self {
        let (f, g) = (family.f(), family.g());
        let l = Lifting {
            a: &self.a + &(k0 * &f.derivative()),
            b: &self.b - &(k0 * f),
            c: &self.c + &(k_inf * &g.derivative()),
            d: &self.d - &(k_inf * g),
        };
        let one = Polynomial::one(X_VAR);
        assert_eq!(&(&l.a * f) + &(&l.b * &f.derivative()), one, "shifted Bézout pair");
        assert_eq!(&(&l.c * g) + &(&l.d * &g.derivative()), one.with_var(Z_VAR), "shifted Bézout pair");
        l
    }

    /// Lift of `v^i dv/w`: `v^i (A w dv + 2B dw)` with the chart's Bézout pair.
    pub fn lift(&self, chart: Chart, i: usize) -> LiftedForm {
        let (var, a, b) = match chart {
            Chart::Zero => (X_VAR, &self.a, &self.b),
            Chart::Infinity => (Z_VAR, &self.c, &self.d),
        };
        let mono = Polynomial::monomial(var, Coeff::one(), i);
        LiftedForm {
            chart,
            p: &mono * a,
            q: (&mono * b).scale(&Coeff::from_int(2)),
            s: Polynomial::zero(var),
        }
    }
}

/// Absolute 1-form `p·w dv + q dw + s dv` on a chart `w² = h(v, t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LiftedForm {
    pub chart: Chart,
    pub p: XPoly,
    pub q: XPoly,
    pub s: XPoly,
}

impl LiftedForm {
    /// Restriction to the fibres: `(p h + q h_v/2) dv/w + s dv`.
    pub fn relative(&self, family: &HyperellipticFamily) -> ChartForm {
        let h = match self.chart {
            Chart::Zero => family.f(),
            Chart::Infinity => family.g(),
        };
        let half = Coeff::from_rational(&Rational::from((1, 2)));
        let odd = &(&self.p * h) + &(&self.q * &h.derivative()).scale(&half);
        ChartForm { odd: LaurentPoly::from_poly(&odd), even: LaurentPoly::from_poly(&self.s) }
    }
}

/// Lift of `v^i dv/w` using the Bézout pairs from the extended Euclidean algorithm.
pub fn lift_form(family: &HyperellipticFamily, chart: Chart, i: usize) -> LiftedForm {
    Lifting::new(family).lift(chart, i)
}

fn poly_part(l: &XLaurent, chart: &'static str) -> Result<XPoly, GaussManinError> {
    l.to_poly().ok_or(GaussManinError::IrregularForm { chart })
}

/// `w` with `d(lift of P dv/w + S dv) = dt ∧ w`:
/// `[(PA)_t h + (PA - 2(PB)_v) h_t/2 + (PB)_t h_v] dv/w + S_t dv`.
fn lifted_differential(p: &XPoly, s: &XPoly, a: &XPoly, b: &XPoly, h: &XPoly) -> ChartForm {
    let half = Coeff::from_rational(&Rational::from((1, 2)));
    let pa = p * a;
    let pb = p * b;
    let h_t = d_dt(h);
    let mid = &pa - &pb.derivative().scale(&Coeff::from_int(2));
    let odd = &(&(&d_dt(&pa) * h) + &(&mid * &h_t).scale(&half)) + &(&d_dt(&pb) * &h.derivative());
    ChartForm { odd: LaurentPoly::from_poly(&odd), even: LaurentPoly::from_poly(&d_dt(s)) }
}

fn laurent_d_dt(l: &XLaurent) -> XLaurent {
    l.map_coeffs(|c| c.derivative())
}

/// Connecting homomorphism: the `dt`-coefficient of `∇` applied to a
/// relative class, as a new cocycle.
///
/// The chart forms are lifted with `lifting`; `-dα + ω̂₀ - ω̂_∞` is then
/// `G dt` on the overlap and `dω̂₀ = dt ∧ w₀`, `dω̂_∞ = dt ∧ w_∞`. The
/// result is `(-G) × (w₀, w_∞)`.
pub fn gm_delta(
    family: &HyperellipticFamily,
    cocycle: &CechCocycle,
    lifting: &Lifting,
) -> Result<CechCocycle, GaussManinError> {
    let g = family.genus() as i64;
    let f = family.f();
    let f_t = LaurentPoly::from_poly(&d_dt(f));
    let p = poly_part(&cocycle.form0().odd, "chart-0")?;
    let s = poly_part(&cocycle.form0().even, "chart-0")?;
    let r = poly_part(&cocycle.form_inf().odd, "chart-∞")?;
    let t = poly_part(&cocycle.form_inf().even, "chart-∞")?;

    let w0 = lifted_differential(&p, &s, &lifting.a, &lifting.b, f);
    let w_inf = lifted_differential(&r, &t, &lifting.c, &lifting.d, family.g());

    // G = -α₀_t - α₁_t y + N/y with
    // N = -α₁ f_t/2 + P B f_t - R(1/x) D(1/x) x^{-g-1} f_t
    let alpha = cocycle.cech1();
    let half = Coeff::from_rational(&Rational::from((1, 2)));
    let pb = LaurentPoly::from_poly(&(&p * &lifting.b));
    let rd = LaurentPoly::from_poly(&(&r * &lifting.d)).invert_var(X_VAR).shift(-g - 1);
    let n = &(&(&pb - &rd) * &f_t) - &(&alpha.odd * &f_t).scale(&half);
    let m = n.exact_div_poly(f).ok_or(GaussManinError::NonExactQuotient)?;
    let cech1 = OverlapFunction {
        even: laurent_d_dt(&alpha.even),
        odd: &laurent_d_dt(&alpha.odd) - &m,
    };
    CechCocycle::new(family, cech1, w0, w_inf)
}

/// Coordinates of a class in the basis `(ω₁..ω_g, ω₁*..ω_g*)`.
///
/// Monomials of the Čech part that are regular on one chart are traded
/// for exact forms on that chart; the surviving `y/x^i` terms are the
/// `ω_i*` coordinates, and what remains is a global holomorphic form
/// whose `x^{i-1} dx/y` coefficients are the `ω_i` coordinates.
pub fn reduce_to_basis(family: &HyperellipticFamily, cocycle: &CechCocycle) -> Result<Vec<Coeff>, GaussManinError> {
    let g = family.genus() as i64;
    let mut coords = vec![Coeff::zero(); 2 * g as usize];
    let mut form0 = cocycle.form0().clone();
    let mut form_inf = cocycle.form_inf().clone();
    let alpha = cocycle.cech1();

    for (a, c) in alpha.even.terms() {
        if a >= 0 {
            let d = LaurentPoly::monomial(X_VAR, c.mul_ref(&Coeff::from_int(a)), a - 1);
            form0.even = &form0.even - &d;
        } else {
            let d = LaurentPoly::monomial(Z_VAR, c.mul_ref(&Coeff::from_int(-a)), -a - 1);
            form_inf.even = &form_inf.even + &d;
        }
    }
    for (a, c) in alpha.odd.terms() {
        if a >= 0 {
            let h = OverlapFunction::odd_monomial(c.clone(), a);
            form0 = form0.sub(&h.d(family));
        } else if a <= -g - 1 {
            let zero = LaurentPoly::zero(Z_VAR);
            let h = LaurentPoly::monomial(Z_VAR, c.clone(), -a - g - 1);
            form_inf = form_inf.add(&d_inf(family, &zero, &h));
        } else {
            let i = (-a) as usize;
            let star = omega_star(family, i);
            form0 = form0.sub(&star.form0().scale(c));
            form_inf = form_inf.sub(&star.form_inf().scale(c));
            coords[g as usize + i - 1] = c.clone();
        }
    }

    if !form0.even.is_zero() {
        return Err(GaussManinError::Inconsistent(format!("exact part {} dx survives", laurent_string(&form0.even))));
    }
    if form0.odd.low().unwrap_or(0) < 0 || form0.odd.high().unwrap_or(0) >= g {
        return Err(GaussManinError::Inconsistent("residual form is not holomorphic".into()));
    }
    if form_inf.inf_to_x(g as usize) != form0 {
        return Err(GaussManinError::Inconsistent("chart forms disagree after reduction".into()));
    }
    for (i, coord) in coords.iter_mut().enumerate().take(g as usize) {
        *coord = form0.odd.coeff(i as i64);
    }
    Ok(coords)
}

fn laurent_string(l: &XLaurent) -> String {
    l.terms().map(|(e, c)| format!("({c})*{}^{e}", l.var())).collect::<Vec<_>>().join(" + ")
}

/// Matrix of `∇_{d/dt}`: column `j` holds the coordinates of `∇(e_j)`
/// in the ordered basis `(ω₁..ω_g, ω₁*..ω_g*)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConnectionMatrix {
    pub entries: Vec<Vec<Coeff>>,
}

impl ConnectionMatrix {
    pub fn from_columns(columns: Vec<Vec<Coeff>>) -> Self {
        let n = columns.len();
        let entries = (0..n).map(|i| columns.iter().map(|col| col[i].clone()).collect()).collect();
        ConnectionMatrix { entries }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> &Coeff {
        &self.entries[row][col]
    }

    pub fn trace(&self) -> Coeff {
        (0..self.dim()).fold(Coeff::zero(), |acc, i| acc.add_ref(&self.entries[i][i]))
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.entries.iter().map(|row| row.iter().map(|c| c.to_string()).collect()).collect()
    }
}

impl fmt::Display for ConnectionMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// `∇` in the basis of [`basis`], computed by the Čech procedure.
pub fn connection_matrix(family: &HyperellipticFamily) -> Result<ConnectionMatrix, GaussManinError> {
    let lifting = Lifting::new(family);
    let columns = basis(family)
        .iter()
        .map(|b| reduce_to_basis(family, &gm_delta(family, b, &lifting)?))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ConnectionMatrix::from_columns(columns))
}

/// Closed form for `y² = 4x³ - g₂x - g₃` in the basis `(ω, ω*)`:
/// `∇ω = -Δ'/(12Δ) ω + 3E/(4Δ) ω*`, `∇ω* = -g₂E/(4Δ) ω + Δ'/(12Δ) ω*`
/// with `Δ = g₂³ - 27g₃²` and `E = 2g₂g₃' - 3g₂'g₃`.
pub fn weierstrass_connection(
    g2: &Polynomial<Rational>,
    g3: &Polynomial<Rational>,
) -> Result<ConnectionMatrix, GaussManinError> {
    let (g2, g3) = (g2.with_var(BASE_VAR), g3.with_var(BASE_VAR));
    let delta = &g2.pow(3) - &g3.pow(2).scale(&Rational::from(27));
    if delta.is_zero() {
        return Err(GaussManinError::DegenerateDiscriminant);
    }
    let e = &(&g2 * &g3.derivative()).scale(&Rational::from(2)) - &(&g2.derivative() * &g3).scale(&Rational::from(3));
    let rf = |num: Polynomial<Rational>, den: Polynomial<Rational>| RationalFunction::new(num, den);
    let log_term = rf(delta.derivative(), delta.scale(&Rational::from(12)));
    let four_delta = delta.scale(&Rational::from(4));
    let omega_to_star = rf(e.scale(&Rational::from(3)), four_delta.clone());
    let star_to_omega = rf(-&(&g2 * &e), four_delta);
    Ok(ConnectionMatrix {
        entries: vec![vec![-&log_term, star_to_omega], vec![omega_to_star, log_term]],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tp(c: &[i64]) -> Polynomial<Rational> {
        Polynomial::from_ints(BASE_VAR, c)
    }

    fn rf(num: &[i64], den: &[i64]) -> Coeff {
        RationalFunction::new(tp(num), tp(den))
    }

    #[test]
    fn bezout_pair_for_additive_example() {
        // y^2 = 4x^3 + 4t: A = 1/(4t), B = -x/(12t)
        let fam = HyperellipticFamily::from_weierstrass(&tp(&[0]), &tp(&[0, -4])).unwrap();
        let l = Lifting::new(&fam);
        assert_eq!(l.a, Polynomial::constant(X_VAR, rf(&[1], &[0, 4])));
        assert_eq!(l.b, Polynomial::monomial(X_VAR, rf(&[-1], &[0, 12]), 1));
        let lifted = l.lift(Chart::Zero, 0);
        assert_eq!(lifted.relative(&fam), ChartForm::holomorphic(LaurentPoly::monomial(X_VAR, Coeff::one(), 0)));
        let lifted = lift_form(&fam, Chart::Infinity, 2);
        assert_eq!(lifted.relative(&fam), ChartForm::holomorphic(LaurentPoly::monomial(Z_VAR, Coeff::one(), 2)));
    }

    #[test]
    fn additive_example_pins_the_sign() {
        let fam = HyperellipticFamily::from_weierstrass(&tp(&[0]), &tp(&[0, -4])).unwrap();
        let m = connection_matrix(&fam).unwrap();
        assert_eq!(m.entry(0, 0), &rf(&[-1], &[0, 6]));
        assert_eq!(m.entry(1, 1), &rf(&[1], &[0, 6]));
        assert!(m.entry(0, 1).is_zero());
        assert!(m.entry(1, 0).is_zero());
    }

    #[test]
    fn closed_form_entries() {
        let m = weierstrass_connection(&tp(&[3]), &tp(&[1, -2])).unwrap();
        // 3E/(4Δ) = -1/(12 t (1 - t))
        assert_eq!(m.entry(1, 0), &rf(&[-1], &[0, 12, -12]));
        assert!(m.trace().is_zero());
        let g2 = tp(&[108, -96]);
        let g3 = tp(&[-216, 288, -64]);
        let m = weierstrass_connection(&g2, &g3).unwrap();
        assert_eq!(m.entry(1, 0), &rf(&[1], &[0, 24, -24]));
        assert_eq!(weierstrass_connection(&tp(&[3]), &tp(&[1])), Err(GaussManinError::DegenerateDiscriminant));
    }

    #[test]
    fn basis_and_exact_classes_reduce() {
        let fam = HyperellipticFamily::from_weierstrass(&tp(&[3]), &tp(&[1, -2])).unwrap();
        for (i, b) in basis(&fam).iter().enumerate() {
            let coords = reduce_to_basis(&fam, b).unwrap();
            for (k, c) in coords.iter().enumerate() {
                assert_eq!(c.is_one(), k == i);
                assert!(k == i || c.is_zero());
            }
        }
        let h = LaurentPoly::new(X_VAR, 0, vec![rf(&[0, 1], &[1]), Coeff::zero(), Coeff::one()]);
        let zero = LaurentPoly::zero(X_VAR);
        let hz = LaurentPoly::monomial(Z_VAR, Coeff::from_int(5), 3);
        let exact = CechCocycle::coboundary(&fam, (&h, &h), (&hz, &hz));
        assert!(reduce_to_basis(&fam, &exact).unwrap().iter().all(Field::is_zero));
        let exact = CechCocycle::coboundary(&fam, (&zero, &h), (&LaurentPoly::zero(Z_VAR), &LaurentPoly::zero(Z_VAR)));
        assert!(reduce_to_basis(&fam, &exact).unwrap().iter().all(Field::is_zero));
    }

    #[test]
    fn x_squared_form_reduces_via_d_xy() {
        // x^2 dx/y on U0 is cohomologous to a combination of ω and ω*;
        // d(xy) = (f + x f'/2) dx/y = (10x^3 - 3/2 g2 x - g3) dx/y etc.
        let g2 = tp(&[3]);
        let g3 = tp(&[1, -2]);
        let fam = HyperellipticFamily::from_weierstrass(&g2, &g3).unwrap();
        // (y) × (d(y), 0) is exact; so is (x y) × (d(xy), 0)
        let xy = OverlapFunction::odd_monomial(Coeff::one(), 1);
        let c = CechCocycle::new(&fam, xy.clone(), xy.d(&fam), ChartForm::zero(Z_VAR)).unwrap();
        assert!(reduce_to_basis(&fam, &c).unwrap().iter().all(Field::is_zero));
    }

    #[test]
    fn constant_family_has_flat_basis() {
        let fam = HyperellipticFamily::from_weierstrass(&tp(&[0]), &tp(&[4])).unwrap();
        let m = connection_matrix(&fam).unwrap();
        assert!(m.entries.iter().flatten().all(Field::is_zero));
    }

    #[test]
    fn leibniz_for_t_times_omega() {
        let fam = HyperellipticFamily::from_weierstrass(&tp(&[0]), &tp(&[0, -4])).unwrap();
        let l = Lifting::new(&fam);
        let omega = &basis(&fam)[0];
        let t = RationalFunction::t();
        let lhs = reduce_to_basis(&fam, &gm_delta(&fam, &omega.scale(&t), &l).unwrap()).unwrap();
        let rhs = reduce_to_basis(&fam, &gm_delta(&fam, omega, &l).unwrap()).unwrap();
        assert_eq!(lhs[0].sub_ref(&t.mul_ref(&rhs[0])), Coeff::one());
        assert_eq!(lhs[1], t.mul_ref(&rhs[1]));
    }
}
