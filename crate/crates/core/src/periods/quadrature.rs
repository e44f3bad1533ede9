use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Rational};

use super::{PeriodError, PeriodValue};
use crate::exact::Polynomial;
use crate::fibration::EllipticFibrationSpec;
use crate::numeric::{tanh_sinh, Precision, QuadratureSummary};

/// Deepest tanh–sinh level tried before an estimate is flagged.
pub const MAX_LEVEL: u32 = 14;

/// Which vanishing cycle the inner integral runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cycle {
    /// Cycle vanishing at `t = 1`.
    Delta,
    /// Cycle vanishing at `t = 0`.
    Gamma,
}

/// Adjacent pair of roots of `4x³ - g₂x - g₃`, in ascending order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootPair {
    Low,
    High,
}

/// Roots sorted ascending together with the gaps `r₂ - r₁`, `r₃ - r₂`.
#[derive(Debug, Clone)]
pub struct CubicRoots {
    pub roots: [Float; 3],
    pub gap_low: Float,
    pub gap_high: Float,
}

/// Real roots of `4x³ - g₂x - g₃` with `g₂ > 0` and positive discriminant
/// `delta = g₂³ - 27g₃²`, by the trigonometric formula
/// `2a cos((θ - 2πk)/3)` with `a = √(g₂/12)`.
///
/// `θ` and `π - θ` are taken as `atan2(√(Δ/27), ±g₃)` rather than through
/// `acos`, and the gaps as `2√3 a sin(θ/3)` and `2√3 a sin((π - θ)/3)`, so that
/// colliding roots keep full relative precision.
pub fn cubic_real_roots(g2: &Float, g3: &Float, delta: &Float) -> Result<CubicRoots, PeriodError> {
    let prec = g2.prec();
    if *g2 <= 0 || *delta <= 0 {
        return Err(PeriodError::NotThreeRealRoots);
    }
    let pi = Float::with_val(prec, Constant::Pi);
    let a = Float::with_val(prec, g2 / 12u32).sqrt();
    let sine = Float::with_val(prec, delta / 27u32).sqrt();
    let theta = Float::with_val(prec, sine.atan2_ref(g3));
    // π - θ, formed directly
    let theta_dual = sine.atan2(&Float::with_val(prec, -g3));
    let roots = [2u32, 1, 0].map(|k| {
        let angle = Float::with_val(prec, &theta - Float::with_val(prec, &pi * (2 * k))) / 3u32;
        Float::with_val(prec, &a * 2u32) * angle.cos()
    });
    let scale = Float::with_val(prec, 3).sqrt() * &a * 2u32;
    let third = Float::with_val(prec, &theta / 3u32);
    let rest = theta_dual / 3u32;
    let gap_low = Float::with_val(prec, &scale * third.sin());
    let gap_high = scale * rest.sin();
    Ok(CubicRoots { roots, gap_low, gap_high })
}

/// `K(m) = π / (2 AGM(1, √(1 - m)))`, given the complementary parameter `1 - m`.
pub fn complete_elliptic_k(m_complement: &Float) -> Float {
    let prec = m_complement.prec();
    let pi = Float::with_val(prec, Constant::Pi);
    let one = Float::with_val(prec, 1);
    let agm = one.agm(&Float::with_val(prec, m_complement.sqrt_ref()));
    pi / (agm * 2u32)
}

/// Integrand data for one admissible spec: `g₂`, `g₃` as floats and the
/// factored discriminant `c T^a (1 - T)^b`.
#[derive(Debug, Clone)]
pub struct QuadratureFamily {
    g2: Vec<Float>,
    g3: Vec<Float>,
    a: u32,
    b: u32,
    c: Float,
    l: u32,
    sqrt_abs_kappa: Float,
    delta_pair: RootPair,
}

fn eval_poly(coeffs: &[Float], x: &Float) -> Float {
    coeffs.iter().rev().fold(Float::new(x.prec()), |acc, c| acc * x + c)
}

fn float_coeffs(p: &Polynomial<Rational>, bits: u32) -> Vec<Float> {
    p.coeffs().iter().map(|q| Float::with_val(bits, q)).collect()
}

/// The pair that collides as `T → P` is the low one when `g₃(P) > 0`: a
/// double root `x₀` with third root `-2x₀` has `-2x₀³ = g₃/4`.
pub fn colliding_pair(g3_at_point: &Rational) -> RootPair {
    if *g3_at_point > 0 {
        RootPair::Low
    } else {
        RootPair::High
    }
}

impl QuadratureFamily {
    pub fn new(spec: &EllipticFibrationSpec, prec: &Precision) -> Self {
        let bits = prec.bits();
        let d = &spec.data;
        QuadratureFamily {
            g2: float_coeffs(&d.g2, bits),
            g3: float_coeffs(&d.g3, bits),
            a: d.a,
            b: d.b,
            c: Float::with_val(bits, &d.c),
            l: spec.l,
            sqrt_abs_kappa: Float::with_val(bits, spec.kappa.clone().abs()).sqrt(),
            delta_pair: colliding_pair(&d.g3.eval(&Rational::from(1))),
        }
    }

    pub fn pair(&self, cycle: Cycle) -> RootPair {
        match (cycle, self.delta_pair) {
            (Cycle::Delta, p) => p,
            (Cycle::Gamma, RootPair::Low) => RootPair::High,
            (Cycle::Gamma, RootPair::High) => RootPair::Low,
        }
    }

    /// Roots of the fibre over `t`, with `1 - t` supplied separately.
    pub fn roots_at(&self, t: &Float, one_minus_t: &Float) -> Result<CubicRoots, PeriodError> {
        let prec = t.prec();
        let big_t = Float::with_val(prec, t.pow(self.l));
        // 1 - t^l = (1 - t)(1 + t + … + t^{l-1})
        let geometric = (0..self.l).fold(Float::new(prec), |acc, _| acc * t + 1u32);
        let one_minus_big_t = Float::with_val(prec, one_minus_t * &geometric);
        let delta = Float::with_val(prec, (&big_t).pow(self.a))
            * Float::with_val(prec, (&one_minus_big_t).pow(self.b))
            * &self.c;
        cubic_real_roots(&eval_poly(&self.g2, &big_t), &eval_poly(&self.g3, &big_t), &delta)
    }

    /// `∫ dx / √(|κ|⁻¹ |4x³ - g₂x - g₃|)` between the roots of `pair`:
    /// `√|κ| K(m) / √(r₃ - r₁)` with `m` the pair's gap over `r₃ - r₁`.
    pub fn inner(&self, cycle: Cycle, t: &Float, one_minus_t: &Float) -> Result<Float, PeriodError> {
        let roots = self.roots_at(t, one_minus_t)?;
        let span = Float::with_val(t.prec(), &roots.gap_low + &roots.gap_high);
        let other_gap = match self.pair(cycle) {
            RootPair::Low => &roots.gap_high,
            RootPair::High => &roots.gap_low,
        };
        let complement = Float::with_val(t.prec(), other_gap / &span);
        Ok(complete_elliptic_k(&complement) * &self.sqrt_abs_kappa / span.sqrt())
    }
}

/// `|∫ t^{j-1} dt dx/y|` over `cycle`, by tanh–sinh quadrature in `t`.
pub fn quad_period(
    family: &QuadratureFamily,
    cycle: Cycle,
    j: u32,
    prec: &Precision,
) -> Result<(PeriodValue, QuadratureSummary), PeriodError> {
    if j == 0 || j >= family.l {
        return Err(PeriodError::IndexOutOfRange { j: j as i64, l: family.l as i64 });
    }
    let bits = prec.bits();
    let tol = prec.epsilon();
    let failure = std::sync::Mutex::new(None);
    let result = tanh_sinh(
        |t, one_minus_t| match family.inner(cycle, t, one_minus_t) {
            Ok(v) => v * Float::with_val(bits, t.pow(j - 1)) * 2u32,
            Err(e) => {
                failure.lock().expect("poisoned").get_or_insert(e);
                Float::new(bits)
            }
        },
        bits,
        &tol,
        MAX_LEVEL,
    );
    if let Some(e) = failure.into_inner().expect("poisoned") {
        return Err(e);
    }
    let summary = result.summary();
    let value = PeriodValue {
        flagged: !result.converged,
        value: result.value,
        error_estimate: result.error_estimate,
        digits: prec.digits,
    };
    Ok((value, summary))
}
