use rug::Rational;
use serde::Serialize;

use super::conditions::{delta, e_poly, validate_conditions, WeierstrassData};
use super::kodaira::{KodairaTag, KodairaType};
use super::FibrationError;
use crate::exact::{rational_residue, rational_sqrt, Polynomial, BASE_VAR};
use crate::gauss_manin::{reduction_type, ReductionType};

/// Weierstrass data pulled back along `t ↦ t^l`, with the constant `κ` of
/// `κy² = 4x³ - g₂(t^l)x - g₃(t^l)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EllipticFibrationSpec {
    #[serde(flatten)]
    pub data: WeierstrassData,
    pub l: u32,
    #[serde(serialize_with = "crate::text::rational")]
    pub kappa: Rational,
}

impl EllipticFibrationSpec {
    pub fn new(
        g2: &Polynomial<Rational>,
        g3: &Polynomial<Rational>,
        l: u32,
        kappa: Rational,
    ) -> Result<Self, FibrationError> {
        if l == 0 {
            return Err(FibrationError::ZeroCover);
        }
        if kappa == 0 {
            return Err(FibrationError::ZeroKappa);
        }
        Ok(EllipticFibrationSpec { data: validate_conditions(g2, g3)?, l, kappa })
    }
}

/// A singular or smooth fibre over a Galois orbit of base points.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FiberRecord {
    pub location: &'static str,
    pub points: u32,
    pub kodaira: KodairaType,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FibrationInvariants {
    pub k: i64,
    pub h20: i64,
    /// `h²⁰` again, from the canonical bundle formula.
    pub h20_canonical: i64,
    pub b2: i64,
    pub rho_f: i64,
    pub eps_inf: i64,
    pub nu_inf: i64,
    /// Present when `l` is prime and `h²⁰ > 0`.
    pub dim_h2_ind: Option<i64>,
    /// `dim F¹H²(X)_ind = l - 1 - h²⁰`, under the same hypotheses.
    pub h: Option<i64>,
    pub fibers: Vec<FiberRecord>,
}

fn degree(p: &Polynomial<Rational>) -> i64 {
    p.degree().unwrap_or(0) as i64
}

fn order(p: &Polynomial<Rational>, at: &Rational) -> Option<u32> {
    (!p.is_zero()).then(|| p.root_multiplicity(at) as u32)
}

fn ceil_div(n: i64, d: i64) -> i64 {
    (n + d - 1).div_euclid(d)
}

/// Least `k` with `s^{4k}g₂(s^{-l})` and `s^{6k}g₃(s^{-l})` regular at `s = 0`.
pub fn minimal_k(g2: &Polynomial<Rational>, g3: &Polynomial<Rational>, l: u32) -> i64 {
    let l = l as i64;
    ceil_div(l * degree(g2), 4).max(ceil_div(l * degree(g3), 6))
}

pub fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Fibre type at `t = ∞` of the pulled-back family, from the valuations
/// of the twisted model `(s^{4k}g₂(s^{-l}), s^{6k}g₃(s^{-l}))`.
pub fn fiber_at_infinity(
    g2: &Polynomial<Rational>,
    g3: &Polynomial<Rational>,
    l: u32,
) -> Result<KodairaType, FibrationError> {
    let k = minimal_k(g2, g3, l);
    let l = l as i64;
    let twisted = |p: &Polynomial<Rational>, weight: i64| (!p.is_zero()).then(|| (weight * k - l * degree(p)) as u32);
    let d = delta(g2, g3);
    if d.is_zero() {
        return Err(FibrationError::DegenerateDiscriminant);
    }
    let v_delta = (12 * k - l * degree(&d)) as u32;
    KodairaTag::from_valuations(twisted(g2, 4), twisted(g3, 6), v_delta)
        .map(KodairaType::from)
        .ok_or(FibrationError::NonMinimalAtInfinity)
}

pub fn invariants(spec: &EllipticFibrationSpec) -> Result<FibrationInvariants, FibrationError> {
    let WeierstrassData { g2, g3, a, b, .. } = &spec.data;
    let (a, b, l) = (*a as i64, *b as i64, spec.l as i64);
    let k = minimal_k(g2, g3, spec.l);
    let at_inf = fiber_at_infinity(g2, g3, spec.l)?;

    let eps_inf = 12 * k - a * l - b * l;
    let consistent = if at_inf.tag.is_additive() {
        KodairaTag::additive_with_index(eps_inf.max(0) as u32).contains(&at_inf.tag)
    } else {
        at_inf.epsilon as i64 == eps_inf
    };
    if !consistent {
        return Err(FibrationError::InconsistentIndex { epsilon: eps_inf, tag: at_inf.tag.to_string() });
    }
    let nu_inf = at_inf.nu as i64;
    let total = a * l + b * l + eps_inf;
    let h20 = k - 1;
    let h20_canonical = total / 12 - 1;

    let zero = Rational::new();
    let one = Rational::from(1);
    let l32 = spec.l;
    let scaled = |v: Option<u32>| v.map(|v| v * l32);
    let at_zero = KodairaTag::from_valuations(scaled(order(g2, &zero)), scaled(order(g3, &zero)), spec.data.a * l32)
        .ok_or(FibrationError::NonMinimalAtInfinity)?;
    let at_roots = KodairaTag::from_valuations(order(g2, &one), order(g3, &one), spec.data.b)
        .ok_or(FibrationError::NonMinimalAtInfinity)?;
    let fibers = vec![
        FiberRecord { location: "t = 0", points: 1, kodaira: at_zero.into() },
        FiberRecord { location: "t^l = 1", points: l32, kodaira: at_roots.into() },
        FiberRecord { location: "t = ∞", points: 1, kodaira: at_inf },
    ];

    let indecomposable = is_prime(spec.l) && h20 > 0;
    Ok(FibrationInvariants {
        k,
        h20,
        h20_canonical,
        b2: total - 2,
        rho_f: a * l + (b - 1) * l + nu_inf,
        eps_inf,
        nu_inf,
        dim_h2_ind: indecomposable.then_some(l - 1),
        h: indecomposable.then_some(l - 1 - h20),
        fibers,
    })
}

/// Multiplicative fibre at `P`, or additive with
/// `Res_P (t - P)(2g₂g₃' - 3g₃g₂')/Δ dt ≠ 0`.
pub fn nabla_bar_criterion(
    g2: &Polynomial<Rational>,
    g3: &Polynomial<Rational>,
    point: &Rational,
) -> Result<bool, FibrationError> {
    let (g2, g3) = (g2.with_var(BASE_VAR), g3.with_var(BASE_VAR));
    Ok(match reduction_type(&g2, &g3, point)? {
        ReductionType::Smooth => false,
        ReductionType::Multiplicative(_) => true,
        ReductionType::Additive => {
            let num = &Polynomial::linear_root(BASE_VAR, point) * &e_poly(&g2, &g3);
            rational_residue(&num, &delta(&g2, &g3), point)? != 0
        }
    })
}

/// Whether the fibre at `t = 1` is split multiplicative: `-6κg₃(1)` is a
/// nonzero rational square.
pub fn split_multiplicative_check(kappa: &Rational, g3: &Polynomial<Rational>) -> Result<bool, FibrationError> {
    let at_one = g3.eval(&Rational::from(1));
    if at_one == 0 {
        return Err(FibrationError::G3VanishesAtOne);
    }
    let value = Rational::from(-6) * kappa * at_one;
    Ok(value > 0 && rational_sqrt(&value).is_some())
}
