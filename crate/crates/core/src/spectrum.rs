//! Bound-state energies from the quantization condition `α/ε = n_r + γ + 1`.

use serde::Serialize;

use crate::error::Result;
use crate::model::{self, DerivedQuantities, ModelParams, QuantumNumbers, Sign};

/// Why a level is not an admissible bound state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum InvalidReason {
    /// `α ≤ 0`: no attractive Coulomb part, so `ε ≤ 0`.
    NonpositiveCoupling,
    /// `E² < 0`. Unreachable for real parameters since `ε² < M²ω² + (M+s2)²`.
    ImaginaryEnergy,
    /// `0 ≤ E² < k²`. Unreachable for the same reason.
    SublongitudinalEnergy,
    /// `γρ − j ≤ 0`: the coupling transform vanishes.
    DegenerateDiagonalization,
}

impl InvalidReason {
    pub fn code(self) -> &'static str {
        match self {
            InvalidReason::NonpositiveCoupling => "nonpositive-coupling",
            InvalidReason::ImaginaryEnergy => "imaginary-E",
            InvalidReason::SublongitudinalEnergy => "sublongitudinal-E",
            InvalidReason::DegenerateDiagonalization => "degenerate-diagonalization",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EnergyLevel {
    pub params: ModelParams,
    pub qn: QuantumNumbers,
    pub gamma: f64,
    pub alpha: f64,
    pub epsilon: f64,
    /// `E² = k² + M²ω² + (M+s2)² − ε²`.
    pub energy_sq: f64,
    /// The chosen root; `None` when `E² < 0`.
    pub energy: Option<f64>,
    pub sign_e: Sign,
    pub reasons: Vec<InvalidReason>,
}

impl EnergyLevel {
    pub fn is_valid(&self) -> bool {
        self.reasons.is_empty()
    }

    /// Laguerre label of the upper radial function, `n = n_r + 1`.
    pub fn n(&self) -> usize {
        self.qn.n_r as usize + 1
    }

    /// Root with the opposite sign.
    pub fn other_root(&self) -> Option<f64> {
        self.energy.map(|e| -e)
    }

    pub fn reason_codes(&self) -> String {
        self.reasons.iter().map(|r| r.code()).collect::<Vec<_>>().join(";")
    }

    /// Derived quantities at this level's energy.
    pub fn derived(&self) -> Result<DerivedQuantities> {
        let e = self.energy.unwrap_or(f64::NAN);
        model::derive(&self.params, &self.qn, e)
    }
}

/// Limit of `E²` as `n_r → ∞`.
pub fn continuum_threshold_sq(params: &ModelParams, k: f64) -> f64 {
    let mw = params.mass * params.omega;
    let p = params.shifted_mass();
    k * k + mw * mw + p * p
}

pub fn energy_level(params: &ModelParams, qn: &QuantumNumbers, sign_e: Sign) -> EnergyLevel {
    let j = qn.j();
    let gamma = model::effective_gamma(params, j);
    let alpha = model::coulomb_alpha(params, j);
    let epsilon = alpha / (qn.n_r as f64 + gamma + 1.0);
    let energy_sq = continuum_threshold_sq(params, qn.k) - epsilon * epsilon;

    let mut reasons = Vec::new();
    if !(alpha > 0.0) {
        reasons.push(InvalidReason::NonpositiveCoupling);
    }
    let energy = if energy_sq >= 0.0 {
        if energy_sq < qn.k * qn.k {
            reasons.push(InvalidReason::SublongitudinalEnergy);
        }
        Some(sign_e.value() * energy_sq.sqrt())
    } else {
        reasons.push(InvalidReason::ImaginaryEnergy);
        None
    };
    if !(params.rho * model::gamma_minus_j(params, j) > 0.0) {
        reasons.push(InvalidReason::DegenerateDiagonalization);
    }

    EnergyLevel {
        params: *params,
        qn: *qn,
        gamma,
        alpha,
        epsilon,
        energy_sq,
        energy,
        sign_e,
        reasons,
    }
}

/// Levels `n_r = 0..=n_r_max` with the remaining labels taken from `template`.
pub fn spectrum_sweep(params: &ModelParams, template: &QuantumNumbers, n_r_max: u32, sign_e: Sign) -> Vec<EnergyLevel> {
    (0..=n_r_max)
        .map(|n_r| energy_level(params, &template.with_n_r(n_r), sign_e))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn qn(m: i64, n_r: u32) -> QuantumNumbers {
        QuantumNumbers::new(m, 0.0, Sign::Plus, n_r)
    }

    #[test]
    fn flat_space_level() {
        let p = ModelParams::new(1.0, 1.0, 1.0, 0.0, 0.0).unwrap();
        let l = energy_level(&p, &qn(0, 0), Sign::Plus);
        assert!((l.gamma - 0.5).abs() < 1e-15);
        assert!((l.epsilon - 1.0 / 3.0).abs() < 1e-15);
        assert!((l.energy.unwrap() - 17f64.sqrt() / 3.0).abs() < 1e-14);
        // s1 = 0 with j > 0 leaves the coupling transform singular
        assert_eq!(l.reasons, vec![InvalidReason::DegenerateDiagonalization]);
    }

    #[test]
    fn coulomb_level() {
        let p = ModelParams::new(1.0, 4.0, 1.0, 1.0, 0.0).unwrap();
        let l = energy_level(&p, &qn(0, 0), Sign::Plus);
        assert!(l.is_valid());
        assert!((l.gamma - 1.118034).abs() < 1e-6);
        assert!((l.alpha - 1.0).abs() < 1e-15);
        assert!((l.epsilon - 0.472136).abs() < 1e-6);
        assert!((l.energy.unwrap() - 4.09598).abs() < 1e-5);
        let neg = energy_level(&p, &qn(0, 0), Sign::Minus);
        assert_eq!(neg.energy, l.other_root());
    }

    #[test]
    fn repulsive_coupling_is_flagged() {
        let p = ModelParams::new(1.0, 1.0, 1.0, 1.0, 0.0).unwrap();
        let l = energy_level(&p, &qn(0, 0), Sign::Plus);
        assert!((l.alpha + 0.5).abs() < 1e-15);
        assert!(l.reasons.contains(&InvalidReason::NonpositiveCoupling));
        assert!(!l.is_valid());
    }

    #[test]
    fn sweep_is_monotone_and_approaches_threshold() {
        let p = ModelParams::new(1.0, 4.0, 1.0, 1.0, 0.0).unwrap();
        let levels = spectrum_sweep(&p, &qn(0, 0), 5, Sign::Plus);
        assert_eq!(levels.len(), 6);
        assert_eq!(spectrum_sweep(&p, &qn(0, 0), 0, Sign::Plus).len(), 1);
        for w in levels.windows(2) {
            assert!(w[1].energy.unwrap() > w[0].energy.unwrap());
        }
        let far = energy_level(&p, &qn(0, 100_000), Sign::Plus);
        let limit = continuum_threshold_sq(&p, 0.0).sqrt();
        assert!((far.energy.unwrap() - limit).abs() < 1e-9);
    }

    proptest! {
        #[test]
        fn energy_identity(
            mass in 0.5f64..3.0, omega in -5.0f64..5.0, rho in 0.3f64..1.0,
            s1 in -3.0f64..3.0, s2 in -2.0f64..2.0, m in -4i64..4, n_r in 0u32..6, k in 0.0f64..1.0
        ) {
            let p = ModelParams::new(mass, omega, rho, s1, s2).unwrap();
            let l = energy_level(&p, &QuantumNumbers::new(m, k, Sign::Plus, n_r), Sign::Plus);
            let mw = mass * omega;
            let rhs = k * k + mw * mw + (mass + s2).powi(2) - l.epsilon * l.epsilon;
            prop_assert!((l.energy_sq - rhs).abs() <= 1e-12 * rhs.abs().max(1.0));
            // |α| ≤ γ√(M²ω² + (M+s2)²) forces E² > k²
            prop_assert!(l.energy_sq > k * k);
            if l.is_valid() {
                prop_assert!(l.epsilon > 0.0);
                prop_assert!(l.energy.unwrap().powi(2) >= k * k);
            }
        }
    }
}
