//! Closed-form radial eigenfunctions and the physical spinor built from them.
//!
//! With `n = n_r + 1` and `x = 2εr` the decoupled pair is
//!
//! ```text
//! F = A (2ε)^γ r^{γ+1} e^{−εr} L_{n−1}^{2γ+1}(x)
//! G = A (2ε)^γ n(n+2γ)/(2γη) r^γ e^{−εr} L_n^{2γ−1}(x)
//! ```
//!
//! and the physical components are `(F₊, G₋) = 𝕄·(F, G)`.

mod basis;
mod ground;
mod normalize;
mod residual;

pub use basis::{sturmian, sturmian_function, Component, Hydrogenic};
pub use ground::{ground_states, GroundStates};
pub use normalize::{closed_form_amplitude, normalize, relativistic_norm, relativistic_norm_trapezoid, Normalization};
pub use residual::{leading_power_slope, perturbation_inflation, ResidualReport, RowResidual};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::DerivedQuantities;
use crate::spectrum::EnergyLevel;

/// One eigenstate at a fixed amplitude `A_n`.
#[derive(Debug, Clone, Serialize)]
pub struct RadialState {
    pub level: EnergyLevel,
    #[serde(skip)]
    pub derived: DerivedQuantities,
    pub amplitude: f64,
    pub upper: Hydrogenic,
    pub lower: Hydrogenic,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadialSample {
    pub r: f64,
    pub f: f64,
    pub g: f64,
    pub f_plus: f64,
    pub g_minus: f64,
}

/// Coefficients of the physical spinor written as
/// `F₊ ∝ R₁ r L_{n−1} − R₂ L_n`, `G₋ ∝ T₁ r L_{n−1} + T₂ L_n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpinorCoefficients {
    pub r1: f64,
    pub r2: f64,
    pub t1: f64,
    pub t2: f64,
}

impl RadialState {
    /// Eigenstate with an explicit amplitude. The level must be valid.
    pub fn with_amplitude(level: &EnergyLevel, amplitude: f64) -> Result<Self> {
        if !level.is_valid() {
            return Err(Error::State(format!(
                "level n_r = {} is not a bound state ({})",
                level.qn.n_r,
                level.reason_codes()
            )));
        }
        let derived = level.derived()?;
        let eps = level.epsilon;
        let gamma = level.gamma;
        let n = level.n() as f64;
        let c1 = amplitude * (2.0 * eps).powf(gamma);
        let ratio = n * (n + 2.0 * gamma) / (2.0 * gamma * derived.eta);
        Ok(RadialState {
            level: level.clone(),
            derived,
            amplitude,
            upper: Hydrogenic {
                coeff: c1,
                power: gamma + 1.0,
                epsilon: eps,
                degree: level.n() - 1,
                param: 2.0 * gamma + 1.0,
            },
            lower: Hydrogenic {
                coeff: c1 * ratio,
                power: gamma,
                epsilon: eps,
                degree: level.n(),
                param: 2.0 * gamma - 1.0,
            },
        })
    }

    /// Eigenstate normalized by quadrature (requires `k ≠ 0`).
    pub fn normalized(level: &EnergyLevel) -> Result<(Self, Normalization)> {
        let norm = normalize(level)?;
        Ok((Self::with_amplitude(level, norm.a_n_quadrature)?, norm))
    }

    pub fn gamma(&self) -> f64 {
        self.level.gamma
    }

    pub fn epsilon(&self) -> f64 {
        self.level.epsilon
    }

    /// `γ − j/ρ`, the diagonal of 𝕄.
    pub fn diagonal(&self) -> f64 {
        self.derived.gamma_minus_j
    }

    pub fn s1(&self) -> f64 {
        self.level.params.s1
    }

    pub fn f(&self, r: f64) -> f64 {
        self.upper.value(r)
    }

    pub fn g(&self, r: f64) -> f64 {
        self.lower.value(r)
    }

    /// `𝕄·(F, G)`.
    pub fn physical(&self, f: f64, g: f64) -> (f64, f64) {
        let (a, s1) = (self.diagonal(), self.s1());
        (a * f - s1 * g, s1 * f + a * g)
    }

    pub fn sample(&self, r: f64) -> RadialSample {
        let f = self.f(r);
        let g = self.g(r);
        let (f_plus, g_minus) = self.physical(f, g);
        RadialSample {
            r,
            f,
            g,
            f_plus,
            g_minus,
        }
    }

    pub fn coefficients(&self) -> SpinorCoefficients {
        let a = self.diagonal();
        let s1 = self.s1();
        let ratio = self.lower.coeff / self.upper.coeff;
        SpinorCoefficients {
            r1: a,
            r2: s1 * ratio,
            t1: s1,
            t2: a * ratio,
        }
    }

    /// `(F₊, G₋)` from the R/T coefficient form, evaluated independently of
    /// [`RadialState::physical`].
    pub fn physical_from_coefficients(&self, r: f64) -> (f64, f64) {
        let c = self.coefficients();
        let scale = self.upper.coeff * r.powf(self.gamma()) * (-self.epsilon() * r).exp();
        let lu = r * self.upper.polynomial(r);
        let ll = self.lower.polynomial(r);
        (scale * (c.r1 * lu - c.r2 * ll), scale * (c.t1 * lu + c.t2 * ll))
    }

    /// `B_n/A_n = n(n+2γ)ε/(γη)`.
    pub fn companion_ratio(&self) -> f64 {
        let n = self.level.n() as f64;
        let g = self.gamma();
        n * (n + 2.0 * g) * self.epsilon() / (g * self.derived.eta)
    }

    /// Log-spaced samples on `[r_min, r_max]`.
    pub fn samples(&self, r_min: f64, r_max: f64, points: usize) -> Result<Vec<RadialSample>> {
        Ok(log_space(r_min, r_max, points)?
            .into_iter()
            .map(|r| self.sample(r))
            .collect())
    }

    /// `Ψ = r^{−1/2} e^{−iEt+imφ+ikz} (F₊, −iF₋e^{iφ}, G₊, iG₋e^{iφ})` with
    /// `G₊ = λF₊` and `F₋ = λG₋`.
    pub fn full_spinor(&self, t: f64, r: f64, phi: f64, z: f64) -> Result<[Complex64; 4]> {
        let k = self.level.qn.k;
        if k == 0.0 {
            return Err(Error::NormalizationUndefined(
                "the discrete symmetry λ = kλ/k is undefined for k = 0".into(),
            ));
        }
        let lambda = self.derived.k_lambda / k;
        let s = self.sample(r);
        let e = self.derived.energy;
        let m = self.level.qn.m as f64;
        let phase = Complex64::from_polar(r.powf(-0.5), -e * t + m * phi + k * z);
        let rot = Complex64::from_polar(1.0, phi);
        let i = Complex64::i();
        Ok([
            phase * s.f_plus,
            phase * (-i) * lambda * s.g_minus * rot,
            phase * lambda * s.f_plus,
            phase * i * s.g_minus * rot,
        ])
    }
}

/// `points` values spaced uniformly in `ln r`.
pub fn log_space(r_min: f64, r_max: f64, points: usize) -> Result<Vec<f64>> {
    if !(r_min > 0.0 && r_max > r_min) || points < 2 {
        return Err(Error::Parameter(format!(
            "need 0 < r_min < r_max and at least 2 points (got [{r_min}, {r_max}], {points})"
        )));
    }
    let (a, b) = (r_min.ln(), r_max.ln());
    let h = (b - a) / (points - 1) as f64;
    Ok((0..points)
        .map(|i| {
            if i + 1 == points {
                r_max
            } else {
                (a + h * i as f64).exp()
            }
        })
        .collect())
}
