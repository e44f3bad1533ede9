use rug::ops::Pow;
use rug::Float;
use serde::Serialize;

use crate::eisenstein::{e3a_divisor_sum, e3b_divisor_sum};
use crate::numeric::{relative_deviation, Precision};

/// Deviations of both sides of the two transformation laws at `z = iy`.
#[derive(Debug, Clone)]
pub struct ModularSample {
    pub y: Float,
    /// `t(-1/(3z))` against `1 - t(z)`, with `t = E₃ₐ/(E₃ₐ + 27E₃ᵦ)`.
    pub involution: Float,
    /// `27E₃ᵦ(-1/(3z))` against `3√3 i z³ E₃ₐ(z)`.
    pub weight_three: Float,
}

#[derive(Debug, Clone)]
pub struct ModularCheck {
    pub samples: Vec<ModularSample>,
    pub max_deviation: Float,
}

#[derive(Debug, Clone, Serialize)]
pub struct ModularSampleReport {
    pub y: String,
    pub involution: String,
    pub weight_three: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ModularReport {
    pub samples: Vec<ModularSampleReport>,
    pub max_deviation: String,
}

/// Terms needed for `q^N · N³` to drop below `2^{-bits}`.
fn terms_for(q: &Float, bits: u32) -> u64 {
    let per_term = -q.clone().ln().to_f64();
    let target = bits as f64 * std::f64::consts::LN_2;
    let mut n = (target / per_term).ceil() as u64 + 1;
    while (n as f64) * per_term < target + 3.0 * (n as f64).ln() {
        n += 1;
    }
    n + 2
}

/// `(E₃ₐ(q), E₃ᵦ(q))` for real `0 < q < 1`.
pub fn eisenstein_at(q: &Float) -> (Float, Float) {
    let prec = q.prec();
    let n_max = terms_for(q, prec);
    let mut q_pow = Float::with_val(prec, 1);
    let mut e3a = Float::with_val(prec, 1);
    let mut e3b = Float::new(prec);
    for n in 1..=n_max {
        q_pow *= q;
        e3a += Float::with_val(prec, &q_pow * (-9 * e3a_divisor_sum(n)));
        e3b += Float::with_val(prec, &q_pow * e3b_divisor_sum(n));
    }
    (e3a, e3b)
}

fn hauptmodul(e3a: &Float, e3b: &Float) -> Float {
    let denom = Float::with_val(e3a.prec(), e3b * 27u32) + e3a;
    Float::with_val(e3a.prec(), e3a / &denom)
}

/// Checks both identities at `z = iy`, where `q = e^{-2πy}` and
/// `q' = e^{-2π/(3y)}`. On the imaginary axis `3√3 i z³ = 3√3 y³`.
pub fn verify_modular_identity(y_samples: &[Float], prec: &Precision) -> ModularCheck {
    let bits = prec.bits();
    let two_pi = prec.pi() * 2u32;
    let samples: Vec<ModularSample> = y_samples
        .iter()
        .map(|y| {
            let y = Float::with_val(bits, y);
            let q = Float::with_val(bits, -Float::with_val(bits, &two_pi * &y)).exp();
            let q_dual = Float::with_val(bits, -Float::with_val(bits, &two_pi / (Float::with_val(bits, &y * 3u32)))).exp();
            let (a, b) = eisenstein_at(&q);
            let (a_dual, b_dual) = eisenstein_at(&q_dual);
            let one_minus_t = 1 - hauptmodul(&a, &b);
            let involution = relative_deviation(&hauptmodul(&a_dual, &b_dual), &one_minus_t);
            let y3 = Float::with_val(bits, (&y).pow(3u32));
            let rhs = prec.sqrt3() * 3u32 * y3 * &a;
            let weight_three = relative_deviation(&Float::with_val(bits, &b_dual * 27u32), &rhs);
            ModularSample { y, involution, weight_three }
        })
        .collect();
    let max_deviation = samples
        .iter()
        .flat_map(|s| [&s.involution, &s.weight_three])
        .fold(Float::new(bits), |m, d| if *d > m { d.clone() } else { m });
    ModularCheck { samples, max_deviation }
}

impl ModularCheck {
    pub fn report(&self) -> ModularReport {
        use crate::numeric::{format_decimal, format_scientific};
        ModularReport {
            samples: self
                .samples
                .iter()
                .map(|s| ModularSampleReport {
                    y: format_decimal(&s.y, 12),
                    involution: format_scientific(&s.involution, 3),
                    weight_three: format_scientific(&s.weight_three, 3),
                })
                .collect(),
            max_deviation: format_scientific(&self.max_deviation, 3),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identities_hold_on_the_imaginary_axis() {
        let prec = Precision::new(40);
        let ys = [prec.float(1), prec.float(2), prec.float(0.5), prec.float(3).sqrt().recip()];
        let check = verify_modular_identity(&ys, &prec);
        assert!(check.max_deviation < prec.ten_pow_neg(30), "{}", check.max_deviation);
    }

    #[test]
    fn e3a_leading_terms() {
        let prec = Precision::new(30);
        let q = Float::with_val(prec.bits(), -prec.pi() * 2u32).exp();
        let (a, _) = eisenstein_at(&q);
        // E₃ₐ(e^{-2π}) = 1 - 9q + …
        let first_order = 1 - Float::with_val(prec.bits(), &q * 9u32);
        assert!(Float::with_val(prec.bits(), &a - &first_order).abs() < Float::with_val(prec.bits(), q.square_ref()) * 100u32);
    }
}
