use serde::Serialize;

use super::RadialState;
use crate::error::{Error, Result};
use crate::specfun::{integrate_halfline, ln_gamma, QuadratureRule};
use crate::spectrum::EnergyLevel;

#[derive(Debug, Clone, Serialize)]
pub struct Normalization {
    /// Amplitude for which `∫(1+λ²) r (F₊² + G₋²) dr = 1`.
    pub a_n_quadrature: f64,
    /// The printed closed form; `None` when its radicand is negative.
    pub a_n_closed: Option<f64>,
    /// `B_n = n(n+2γ)ε/(γη)·A_n`.
    pub b_n: f64,
    /// `|A_closed − A_quad|/A_quad`.
    pub relative_gap: Option<f64>,
}

/// `∫(1+λ²) r (F₊² + G₋²) dr` by Gauss–Laguerre in `x = 2εr`.
///
/// Every term is `r^{2γ+1} e^{−2εr}` times a polynomial of degree `2n`, so a
/// rule with weight exponent `2γ+1` and order `n + 2` is exact.
pub fn relativistic_norm(state: &RadialState) -> Result<f64> {
    let lambda_factor = lambda_factor(state)?;
    let g = state.gamma();
    let two_eps = 2.0 * state.epsilon();
    let n = state.level.n();
    let rule = QuadratureRule::gauss_laguerre(n + 8, 2.0 * g + 1.0)?;
    let cu = state.upper.coeff;
    let cl = state.lower.coeff;
    let integral = integrate_halfline(
        |x| {
            let r = x / two_eps;
            let pf = cu * r * state.upper.polynomial(r);
            let pg = cl * state.lower.polynomial(r);
            let (fp, gm) = state.physical(pf, pg);
            fp * fp + gm * gm
        },
        &rule,
    )?;
    Ok(lambda_factor * integral / two_eps.powf(2.0 * g + 2.0))
}

/// Same integral by the trapezoid rule in `u = ln r` on `[10⁻⁸, 80]/ε`.
/// The integrand decays at both ends faster than any power of the step, so
/// the rule converges geometrically.
pub fn relativistic_norm_trapezoid(state: &RadialState, points: usize) -> Result<f64> {
    let lambda_factor = lambda_factor(state)?;
    let eps = state.epsilon();
    let radii = super::log_space(1e-8 / eps, 80.0 / eps, points)?;
    let h = (radii[radii.len() - 1].ln() - radii[0].ln()) / (points - 1) as f64;
    let mut sum = 0.0;
    for (i, &r) in radii.iter().enumerate() {
        let s = state.sample(r);
        let w = if i == 0 || i + 1 == points { 0.5 } else { 1.0 };
        sum += w * r * r * (s.f_plus * s.f_plus + s.g_minus * s.g_minus);
    }
    Ok(lambda_factor * sum * h)
}

fn lambda_factor(state: &RadialState) -> Result<f64> {
    state
        .derived
        .lambda_sq_plus_one
        .ok_or_else(|| Error::NormalizationUndefined("1 + λ² is undefined for k = 0".into()))
}

/// The printed amplitude
/// `2ε²[ρ(n−1)!/((1+λ²)γ(γρ−j)Γ(n+2γ+1)[Θ + ε²σ(Θ+2γ)])]^{1/2}` with
/// `Θ = 3n² + γ(6n+2γ−1)` and `σ = n(n+2γ)/(γη)²`.
pub fn closed_form_amplitude(state: &RadialState) -> Result<Option<f64>> {
    let lf = lambda_factor(state)?;
    let n = state.level.n() as f64;
    let g = state.gamma();
    let eps = state.epsilon();
    let rho = state.level.params.rho;
    let gamma_rho_minus_j = rho * state.diagonal();
    let theta = 3.0 * n * n + g * (6.0 * n + 2.0 * g - 1.0);
    let sigma = n * (n + 2.0 * g) / (g * state.derived.eta).powi(2);
    let bracket = theta + eps * eps * sigma * (theta + 2.0 * g);
    let denom = lf * g * gamma_rho_minus_j * bracket;
    if !(denom > 0.0) {
        return Ok(None);
    }
    let ln_ratio = rho.ln() + ln_gamma(n) - denom.ln() - ln_gamma(n + 2.0 * g + 1.0);
    Ok(Some(2.0 * eps * eps * (0.5 * ln_ratio).exp()))
}

pub fn normalize(level: &EnergyLevel) -> Result<Normalization> {
    let unit = RadialState::with_amplitude(level, 1.0)?;
    let norm = relativistic_norm(&unit)?;
    if !(norm > 0.0 && norm.is_finite()) {
        return Err(Error::Numeric(format!("relativistic norm {norm} is not positive")));
    }
    let a = 1.0 / norm.sqrt();
    let closed = closed_form_amplitude(&unit)?;
    Ok(Normalization {
        a_n_quadrature: a,
        a_n_closed: closed,
        b_n: unit.companion_ratio() * a,
        relative_gap: closed.map(|p| (p - a).abs() / a),
    })
}
