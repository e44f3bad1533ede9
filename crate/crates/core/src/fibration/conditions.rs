use std::fmt;

use rug::Rational;
use serde::Serialize;

use super::FibrationError;
use crate::exact::{count_roots_open, odd_multiplicity_part, Polynomial, BASE_VAR};

/// The four hypotheses on the Weierstrass data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Condition {
    E1,
    E2,
    E3,
    E4,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub condition: Condition,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) {}", self.condition, self.detail)
    }
}

/// Weierstrass data `(g₂, g₃)` satisfying (E1)–(E4), with the exponents
/// `Δ = c t^a (1-t)^b` and `E = c' t^{a'} (1-t)^{b'}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeierstrassData {
    #[serde(serialize_with = "crate::text::polynomial")]
    pub g2: Polynomial<Rational>,
    #[serde(serialize_with = "crate::text::polynomial")]
    pub g3: Polynomial<Rational>,
    pub a: u32,
    pub b: u32,
    #[serde(serialize_with = "crate::text::rational")]
    pub c: Rational,
    pub a_prime: u32,
    pub b_prime: u32,
    #[serde(serialize_with = "crate::text::rational")]
    pub c_prime: Rational,
}

impl WeierstrassData {
    /// `a' = a - 1` and `b' = b - 1`.
    pub fn exponent_relation_holds(&self) -> bool {
        self.a_prime + 1 == self.a && self.b_prime + 1 == self.b
    }

    /// `(h⁴g₂, h⁶g₃)`, which defines an isomorphic surface.
    pub fn rescaled(&self, h: &Rational) -> Result<Self, FibrationError> {
        let h2 = Rational::from(h.square_ref());
        let h4 = Rational::from(h2.square_ref());
        let h6 = Rational::from(&h4 * &h2);
        validate_conditions(&self.g2.scale(&h4), &self.g3.scale(&h6))
    }
}

pub(crate) fn delta(g2: &Polynomial<Rational>, g3: &Polynomial<Rational>) -> Polynomial<Rational> {
    &g2.pow(3) - &g3.pow(2).scale(&Rational::from(27))
}

/// `2g₂g₃' - 3g₂'g₃`.
pub(crate) fn e_poly(g2: &Polynomial<Rational>, g3: &Polynomial<Rational>) -> Polynomial<Rational> {
    &(g2 * &g3.derivative()).scale(&Rational::from(2)) - &(&g2.derivative() * g3).scale(&Rational::from(3))
}

/// Writes `p = c t^a (1-t)^b`; `None` if `p` has any other factor.
pub fn factor_at_zero_one(p: &Polynomial<Rational>) -> Option<(Rational, u32, u32)> {
    if p.is_zero() {
        return None;
    }
    let (rest, a) = p.remove_root(&Rational::new());
    let (rest, b) = rest.remove_root(&Rational::from(1));
    if !rest.is_constant() {
        return None;
    }
    // (t - 1)^b = (-1)^b (1 - t)^b
    let mut c = rest.coeff(0);
    if b % 2 == 1 {
        c = -c;
    }
    Some((c, a as u32, b as u32))
}

/// Exact check of (E1)–(E4); every failing condition is reported.
pub fn validate_conditions(g2: &Polynomial<Rational>, g3: &Polynomial<Rational>) -> Result<WeierstrassData, FibrationError> {
    let (g2, g3) = (g2.with_var(BASE_VAR), g3.with_var(BASE_VAR));
    let zero = Rational::new();
    let one = Rational::from(1);
    let mut violations = Vec::new();
    let mut fail = |condition, detail: String| violations.push(Violation { condition, detail });

    let d = delta(&g2, &g3);
    let e1 = factor_at_zero_one(&d);
    match &e1 {
        None => fail(Condition::E1, format!("Δ = {d} is not of the form c t^a (1-t)^b")),
        Some((c, a, b)) => {
            if *a == 0 || *b == 0 {
                fail(Condition::E1, format!("Δ = {d} needs a, b ≥ 1, got a = {a}, b = {b}"));
            }
            if *c <= 0 {
                fail(Condition::E1, format!("Δ = {d} has c = {c} ≤ 0"));
            }
        }
    }

    let e = e_poly(&g2, &g3);
    let e2 = factor_at_zero_one(&e);
    if e2.is_none() {
        fail(Condition::E2, format!("2g₂g₃' - 3g₂'g₃ = {e} is not of the form c' t^a' (1-t)^b' with c' ≠ 0"));
    }

    let (g2_0, g2_1) = (g2.eval(&zero), g2.eval(&one));
    let g3_product = g3.eval(&zero) * g3.eval(&one);
    if g2_0 <= 0 || g2_1 <= 0 {
        fail(Condition::E3, format!("need g₂(0), g₂(1) > 0, got {g2_0}, {g2_1}"));
    }
    if g3_product >= 0 {
        fail(Condition::E3, format!("need g₃(0)g₃(1) < 0, got {g3_product}"));
    }

    if !g2.is_zero() {
        let sign_changes = count_roots_open(&odd_multiplicity_part(&g2), &zero, &one);
        if g2_0 < 0 || g2_1 < 0 || sign_changes > 0 {
            fail(Condition::E4, format!("g₂ = {g2} is negative somewhere on [0, 1]"));
        }
    }

    match (e1, e2) {
        (Some((c, a, b)), Some((c_prime, a_prime, b_prime))) if violations.is_empty() => {
            Ok(WeierstrassData { g2, g3, a, b, c, a_prime, b_prime, c_prime })
        }
        _ => Err(FibrationError::Violations(violations)),
    }
}

/// One of the five admissible pairs up to `(g₂, g₃) ∼ (h⁴g₂, h⁶g₃)` and `t ↦ 1 - t`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CatalogEntry {
    pub label: &'static str,
    #[serde(serialize_with = "crate::text::polynomial")]
    pub g2: Polynomial<Rational>,
    #[serde(serialize_with = "crate::text::polynomial")]
    pub g3: Polynomial<Rational>,
    pub a: u32,
    pub b: u32,
}

fn tp(c: &[i64]) -> Polynomial<Rational> {
    Polynomial::from_ints(BASE_VAR, c)
}

pub fn catalog() -> Vec<CatalogEntry> {
    let entry = |label, g2: &[i64], g3: &[i64], a, b| CatalogEntry { label, g2: tp(g2), g3: tp(g3), a, b };
    vec![
        entry("i", &[3], &[1, -2], 1, 1),
        entry("ii", &[12, -9], &[8, -9], 2, 1),
        entry("iii", &[27, -24], &[-27, 36, -8], 3, 1),
        // 3(t² - 16t + 16), (t - 2)(t² + 32t - 32)
        entry("iv", &[48, -48, 3], &[64, -96, 30, 1], 4, 1),
        // 12(t² - t + 1), 4(t - 2)(t + 1)(2t - 1)
        entry("v", &[12, -12, 12], &[8, -12, -12, 8], 2, 2),
    ]
}

pub fn catalog_entry(label: &str) -> Option<CatalogEntry> {
    catalog().into_iter().find(|e| e.label == label)
}

/// Weierstrass data of the family parametrized by `E₃ₐ`, `E₃ᵦ`:
/// `g₂ = 12(9 - 8t)`, `g₃ = -8(8t² - 36t + 27)`, equivalent to entry (iii)
/// under `h² = 2`.
pub fn modular_family() -> (Polynomial<Rational>, Polynomial<Rational>) {
    (tp(&[108, -96]), tp(&[-216, 288, -64]))
}

/// Leading constant `κ` in `κy² = 4x³ - g₂x - g₃` for [`modular_family`].
pub fn modular_kappa() -> Rational {
    Rational::from(-12)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn violated(g2: &[i64], g3: &[i64]) -> Vec<Condition> {
        match validate_conditions(&tp(g2), &tp(g3)) {
            Err(FibrationError::Violations(v)) => v.into_iter().map(|v| v.condition).collect(),
            other => panic!("expected violations, got {other:?}"),
        }
    }

    #[test]
    fn catalog_entry_i() {
        let d = validate_conditions(&tp(&[3]), &tp(&[1, -2])).unwrap();
        assert_eq!((d.a, d.b, d.c.clone()), (1, 1, Rational::from(108)));
        assert_eq!((d.a_prime, d.b_prime, d.c_prime.clone()), (0, 0, Rational::from(-12)));
        assert!(d.exponent_relation_holds());
    }

    #[test]
    fn modular_family_exponents() {
        let (g2, g3) = modular_family();
        let d = validate_conditions(&g2, &g3).unwrap();
        assert_eq!((d.a, d.b, d.c.clone()), (3, 1, Rational::from(110592)));
        assert_eq!((d.a_prime, d.b_prime, d.c_prime.clone()), (2, 0, Rational::from(6144)));
    }

    #[test]
    fn catalog_entries_match_factored_forms() {
        let c = catalog();
        let iv_g2 = tp(&[16, -16, 1]).scale(&Rational::from(3));
        let iv_g3 = &tp(&[-2, 1]) * &tp(&[-32, 32, 1]);
        assert_eq!((c[3].g2.clone(), c[3].g3.clone()), (iv_g2, iv_g3));
        let v_g3 = &(&tp(&[-2, 1]) * &tp(&[1, 1])) * &tp(&[-1, 2]);
        assert_eq!(c[4].g3, v_g3.scale(&Rational::from(4)));
        for e in &c {
            let d = validate_conditions(&e.g2, &e.g3).unwrap();
            assert_eq!((d.a, d.b), (e.a, e.b), "entry {}", e.label);
        }
    }

    #[test]
    fn constant_g2_zero_fails_e3() {
        assert!(violated(&[0], &[0, 1]).contains(&Condition::E3));
    }

    #[test]
    fn factorization_at_zero_and_one() {
        // 5 t^2 (1 - t)^3
        let p = &tp(&[0, 0, 5]) * &tp(&[1, -1]).pow(3);
        assert_eq!(factor_at_zero_one(&p), Some((Rational::from(5), 2, 3)));
        assert_eq!(factor_at_zero_one(&tp(&[1, 0, 1])), None);
        assert_eq!(factor_at_zero_one(&tp(&[0])), None);
    }
}
