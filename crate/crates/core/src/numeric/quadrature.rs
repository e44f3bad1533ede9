use rayon::prelude::*;
use rug::float::Constant;
use rug::Float;
use serde::Serialize;

/// Outcome of a tanh–sinh integration.
#[derive(Debug, Clone)]
pub struct QuadratureResult {
    pub value: Float,
    /// Difference between the last two levels.
    pub error_estimate: Float,
    pub levels: u32,
    pub nodes: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct QuadratureSummary {
    pub levels: u32,
    pub nodes: usize,
    pub converged: bool,
}

impl QuadratureResult {
    pub fn summary(&self) -> QuadratureSummary {
        QuadratureSummary { levels: self.levels, nodes: self.nodes, converged: self.converged }
    }
}

struct Node {
    t: Float,
    one_minus_t: Float,
    weight: Float,
}

/// `t = 1/(1 + exp(-2u))` with `u = (π/2) sinh(s)`; the Jacobian is
/// `π cosh(s) t (1 - t)`. Both `t` and `1 - t` are formed without
/// cancellation.
fn node(s: &Float, pi: &Float, prec: u32) -> Node {
    let (sh, ch) = s.clone().sinh_cosh(Float::new(prec));
    let u = Float::with_val(prec, pi * &sh) / 2u32;
    let e = Float::with_val(prec, u * 2u32).exp();
    let one_minus_t = Float::with_val(prec, Float::with_val(prec, &e + 1u32).recip_ref());
    let t = Float::with_val(prec, &e * &one_minus_t);
    let weight = Float::with_val(prec, pi * &ch) * &t * &one_minus_t;
    Node { t, one_minus_t, weight }
}

/// Integrate `f` over `(0, 1)` by tanh–sinh quadrature with level halving
/// until two successive levels agree to `rel_tol`.
///
/// `f` receives `(t, 1 - t)` so that integrands singular at `t = 1` can
/// avoid forming `1 - t` themselves.
pub fn tanh_sinh<F>(f: F, prec: u32, rel_tol: &Float, max_level: u32) -> QuadratureResult
where
    F: Fn(&Float, &Float) -> Float + Sync,
{
    let pi = Float::with_val(prec, Constant::Pi);
    // beyond |u| = u_max even an integrable t^(-1/2) endpoint contributes below 2^-prec
    let u_max = prec as f64 * std::f64::consts::LN_2 + 8.0;
    let s_max = (2.0 * u_max / std::f64::consts::PI).asinh();

    let eval = |indices: Vec<i64>, h: &Float| -> Float {
        let terms: Vec<Float> = indices
            .into_par_iter()
            .map(|k| {
                let s = Float::with_val(prec, h * k);
                let n = node(&s, &pi, prec);
                if n.t.is_zero() || n.one_minus_t.is_zero() {
                    return Float::new(prec);
                }
                f(&n.t, &n.one_minus_t) * n.weight
            })
            .collect();
        terms.into_iter().fold(Float::new(prec), |acc, x| acc + x)
    };

    let mut h = Float::with_val(prec, 1);
    let k_max = s_max.ceil() as i64;
    let mut raw = eval((-k_max..=k_max).collect(), &h);
    let mut nodes = (2 * k_max + 1) as usize;
    let mut value = Float::with_val(prec, &raw * &h);
    let mut error_estimate = Float::with_val(prec, value.abs_ref());
    let mut converged = false;
    let mut level = 0;
    while level < max_level {
        level += 1;
        h /= 2u32;
        let k_max = (s_max / h.to_f64()).ceil() as i64;
        let odd: Vec<i64> = (-k_max..=k_max).filter(|k| k % 2 != 0).collect();
        nodes += odd.len();
        raw += eval(odd, &h);
        let next = Float::with_val(prec, &raw * &h);
        error_estimate = Float::with_val(prec, &next - &value).abs();
        value = next;
        let bound = Float::with_val(prec, value.abs_ref()) * rel_tol;
        if level >= 3 && error_estimate <= bound {
            converged = true;
            break;
        }
    }
    // two identical levels still carry rounding error
    let rounding = Float::with_val(prec, value.abs_ref()) * Float::with_val(prec, Float::i_exp(1, 8 - prec as i32));
    if error_estimate < rounding {
        error_estimate = rounding;
    }
    QuadratureResult { value, error_estimate, levels: level, nodes, converged }
}
