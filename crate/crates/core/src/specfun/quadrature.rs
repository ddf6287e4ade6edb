use serde::Serialize;

use super::laguerre::laguerre_recurrence;
use crate::error::{param, Error, Result};
use crate::tridiag::SymTridiagonal;
use statrs::function::gamma::ln_gamma;

/// Generalized Gauss–Laguerre rule for `∫₀^∞ x^α e^{−x} f(x) dx`.
#[derive(Debug, Clone, Serialize)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub weight_exponent: f64,
    pub order: usize,
}

impl QuadratureRule {
    /// Nodes are eigenvalues of the Jacobi matrix, polished by Newton on
    /// `L_n^α`; weights follow from the derivative formula.
    pub fn gauss_laguerre(order: usize, alpha: f64) -> Result<Self> {
        if order == 0 {
            return param("quadrature order must be positive");
        }
        if !(alpha > -1.0) {
            return param(format!("weight exponent must exceed -1, got {alpha}"));
        }
        let diag = (0..order).map(|i| 2.0 * i as f64 + alpha + 1.0).collect();
        let off = (1..order).map(|i| (i as f64 * (i as f64 + alpha)).sqrt()).collect();
        let jacobi = SymTridiagonal::new(diag, off)?;
        let n = order as f64;
        let ln_norm = ln_gamma(n + alpha + 1.0) - ln_gamma(n + 1.0);
        let mut nodes = Vec::with_capacity(order);
        let mut weights = Vec::with_capacity(order);
        for i in 0..order {
            let mut x = jacobi.eigenvalue(i)?;
            let mut dl = 0.0;
            for _ in 0..3 {
                let (l, d) = value_and_derivative(order, alpha, x);
                dl = d;
                if d == 0.0 {
                    break;
                }
                let step = l / d;
                x -= step;
                if step.abs() <= 1e-16 * x.abs() {
                    break;
                }
            }
            let (_, d) = value_and_derivative(order, alpha, x);
            if d != 0.0 {
                dl = d;
            }
            let w = (ln_norm - x.ln() - 2.0 * dl.abs().ln()).exp();
            if !(x > 0.0 && w.is_finite() && w > 0.0) {
                return Err(Error::Numeric(format!(
                    "Gauss-Laguerre construction failed at node {i} (order {order}, alpha {alpha})"
                )));
            }
            nodes.push(x);
            weights.push(w);
        }
        Ok(QuadratureRule {
            nodes,
            weights,
            weight_exponent: alpha,
            order,
        })
    }
}

fn value_and_derivative(n: usize, alpha: f64, x: f64) -> (f64, f64) {
    let l = laguerre_recurrence(n, alpha, x);
    let lm = laguerre_recurrence(n - 1, alpha, x);
    let nf = n as f64;
    (l, (nf * l - (nf + alpha) * lm) / x)
}

/// `Σ wᵢ f(xᵢ)`, i.e. `∫₀^∞ x^α e^{−x} f(x) dx` for the rule's `α`.
pub fn integrate_halfline<F: Fn(f64) -> f64>(f: F, rule: &QuadratureRule) -> Result<f64> {
    let mut sum = 0.0;
    for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
        let v = f(x);
        if !v.is_finite() {
            return Err(Error::Numeric(format!("non-finite integrand {v} at x = {x}")));
        }
        sum += w * v;
    }
    Ok(sum)
}

/// `∫₀^∞ g(r) dr` where `g(r) = (2εr)^α e^{−2εr} f(2εr)`: rescales the rule to
/// the variable `r = x/(2ε)`.
pub fn integrate_scaled<F: Fn(f64) -> f64>(f: F, rule: &QuadratureRule, two_eps: f64) -> Result<f64> {
    Ok(integrate_halfline(f, rule)? / two_eps)
}
