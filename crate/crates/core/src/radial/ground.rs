use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{self, ModelParams, QuantumNumbers};

/// Two independent constructions of the lowest state of the factorized
/// problem, whose spinors have a vanishing upper entry.
#[derive(Debug, Clone, Serialize)]
pub struct GroundStates {
    pub radii: Vec<f64>,
    /// `r^γ e^{−ε₀r} L_0^{2γ−1}(2ε₀r)` with `ε₀ = α/γ`.
    pub phi0_schrodinger: Vec<f64>,
    /// `r^γ exp(−(M/(ργ))(ωj − ρs1 − ρs1s2/M) r)`, the kernel of `A⁻`.
    pub phi0_susy: Vec<f64>,
    /// `max |ratio/ratio₀ − 1|` over the grid.
    pub max_ratio_deviation: f64,
    /// `max |A⁻φ| / (|φ'| + |(γ/r − β)φ|)` with a numerical derivative.
    pub annihilation_residual: f64,
    /// The partner `r^{−γ}e^{+βr}` has a norm integrand that keeps growing.
    pub partner_rejected: bool,
}

pub fn ground_states(params: &ModelParams, qn: &QuantumNumbers, radii: &[f64]) -> Result<GroundStates> {
    let j = qn.j();
    let gamma = model::effective_gamma(params, j);
    let alpha = model::coulomb_alpha(params, j);
    if !(alpha > 0.0) {
        return Err(Error::NoBoundState(format!("α = {alpha} ≤ 0 admits no bound state")));
    }
    if radii.is_empty() || radii.iter().any(|&r| !(r > 0.0)) {
        return Err(Error::Parameter(
            "ground-state radii must be positive and nonempty".into(),
        ));
    }
    let eps0 = alpha / gamma;
    let schrodinger = |r: f64| r.powf(gamma) * (-eps0 * r).exp();
    let ModelParams {
        mass,
        omega,
        rho,
        s1,
        s2,
    } = *params;
    let susy_rate = (mass / (rho * gamma)) * (omega * j - rho * s1 - rho * s1 * s2 / mass);
    let susy = |r: f64| r.powf(gamma) * (-susy_rate * r).exp();

    let phi_s: Vec<f64> = radii.iter().map(|&r| schrodinger(r)).collect();
    let phi_u: Vec<f64> = radii.iter().map(|&r| susy(r)).collect();
    let ratio0 = phi_u[0] / phi_s[0];
    let max_ratio_deviation = phi_u
        .iter()
        .zip(&phi_s)
        .map(|(u, s)| ((u / s) / ratio0 - 1.0).abs())
        .fold(0.0, f64::max);

    // A⁻ = −d/dr + γ/r − β, with a five-point derivative on the local scale
    let beta = alpha / gamma;
    let annihilation_residual = radii
        .iter()
        .map(|&r| {
            let h = 1e-3 * r.min(1.0 / susy_rate.abs());
            let d = (susy(r - 2.0 * h) - 8.0 * susy(r - h) + 8.0 * susy(r + h) - susy(r + 2.0 * h)) / (12.0 * h);
            let w = (gamma / r - beta) * susy(r);
            (w - d).abs() / (d.abs() + w.abs())
        })
        .fold(0.0, f64::max);

    // r·φ² for φ = r^{−γ}e^{βr}, on successively doubled radii
    let partner_density = |r: f64| r.powf(1.0 - 2.0 * gamma) * (2.0 * beta * r).exp();
    let probes: Vec<f64> = (0..6).map(|i| (10.0 / beta) * 2f64.powi(i)).collect();
    let partner_rejected = probes.windows(2).all(|w| {
        let (a, b) = (partner_density(w[0]), partner_density(w[1]));
        !b.is_finite() || b > 2.0 * a
    });

    Ok(GroundStates {
        radii: radii.to_vec(),
        phi0_schrodinger: phi_s,
        phi0_susy: phi_u,
        max_ratio_deviation,
        annihilation_residual,
        partner_rejected,
    })
}
