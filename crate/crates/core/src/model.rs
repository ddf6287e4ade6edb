//! Physical parameters, conserved labels and every derived quantity used by
//! the radial problem.
//!
//! Units: `c = ħ = 1`. `omega` is an input frequency; the coupling to the
//! field strength is not modelled here.

use serde::{Deserialize, Serialize};

use crate::error::{param, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    /// Particle mass `M`.
    pub mass: f64,
    /// Cyclotron-type frequency `ω`.
    pub omega: f64,
    /// Deficit parameter `ρ ∈ (0, 1]`.
    pub rho: f64,
    /// Strength of the Coulomb part `s1/r` of the scalar potential.
    pub s1: f64,
    /// Constant shift `s2` of the scalar potential.
    pub s2: f64,
}

impl ModelParams {
    pub fn new(mass: f64, omega: f64, rho: f64, s1: f64, s2: f64) -> Result<Self> {
        let p = ModelParams {
            mass,
            omega,
            rho,
            s1,
            s2,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let all = [self.mass, self.omega, self.rho, self.s1, self.s2];
        if all.iter().any(|v| !v.is_finite()) {
            return param("model parameters must be finite");
        }
        if self.mass <= 0.0 {
            return param(format!("mass must be positive, got {}", self.mass));
        }
        if !(self.rho > 0.0 && self.rho <= 1.0) {
            return param(format!("rho must lie in (0, 1], got {}", self.rho));
        }
        Ok(())
    }

    /// `M + s2`.
    pub fn shifted_mass(&self) -> f64 {
        self.mass + self.s2
    }
}

/// Sign label `s = ±1` selecting the branch of the discrete symmetry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+1")]
    Plus,
    #[serde(rename = "-1")]
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn from_int(v: i64) -> Result<Sign> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            _ => param(format!("sign must be +1 or -1, got {v}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuantumNumbers {
    /// Magnetic number `m`; the total angular momentum is `j = m + 1/2`.
    pub m: i64,
    /// Longitudinal momentum `k`.
    pub k: f64,
    pub s: Sign,
    /// Radial quantum number `n_r = 0, 1, 2, ...`.
    pub n_r: u32,
}

impl QuantumNumbers {
    pub fn new(m: i64, k: f64, s: Sign, n_r: u32) -> Self {
        QuantumNumbers { m, k, s, n_r }
    }

    pub fn j(&self) -> f64 {
        self.m as f64 + 0.5
    }

    pub fn with_n_r(self, n_r: u32) -> Self {
        QuantumNumbers { n_r, ..self }
    }
}

/// `γ = √(j² + ρ²s1²)/ρ`.
pub fn effective_gamma(params: &ModelParams, j: f64) -> f64 {
    (j * j + params.rho * params.rho * params.s1 * params.s1).sqrt() / params.rho
}

/// `α = (M/ρ)(ωj − ρs1 − ρs1s2/M)`.
pub fn coulomb_alpha(params: &ModelParams, j: f64) -> f64 {
    let ModelParams {
        mass,
        omega,
        rho,
        s1,
        s2,
    } = *params;
    (mass / rho) * (omega * j - rho * s1 - rho * s1 * s2 / mass)
}

/// `γ − j/ρ`, evaluated without cancellation for `j > 0`.
pub fn gamma_minus_j(params: &ModelParams, j: f64) -> f64 {
    let g = effective_gamma(params, j);
    let jr = j / params.rho;
    if jr > 0.0 {
        params.s1 * params.s1 / (g + jr)
    } else {
        g - jr
    }
}

/// The 1/r coupling matrix `[[−j/ρ, s1], [s1, j/ρ]]`.
pub fn coupling_matrix(params: &ModelParams, j: f64) -> [[f64; 2]; 2] {
    let jr = j / params.rho;
    [[-jr, params.s1], [params.s1, jr]]
}

/// The matrix that diagonalizes the 1/r coupling, together with its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CouplingTransform {
    pub matrix: [[f64; 2]; 2],
    pub inverse: [[f64; 2]; 2],
}

impl CouplingTransform {
    /// `𝕄 = [[γ − j/ρ, −s1], [s1, γ − j/ρ]]`. Fails when `γ − j/ρ = 0`, which
    /// happens exactly for `s1 = 0, j > 0`.
    pub fn new(params: &ModelParams, j: f64) -> Result<Self> {
        let gamma = effective_gamma(params, j);
        let a = gamma_minus_j(params, j);
        let s1 = params.s1;
        if a == 0.0 {
            return Err(Error::DegenerateDiagonalization(format!(
                "s1 = 0 with j = {j} > 0 makes the transform vanish; the 1/r term is already \
                 diagonal (use CouplingTransform::swap_limit)"
            )));
        }
        let d = 1.0 / (2.0 * gamma);
        let off = s1 / (2.0 * gamma * a);
        Ok(CouplingTransform {
            matrix: [[a, -s1], [s1, a]],
            inverse: [[d, off], [-off, d]],
        })
    }

    /// `lim_{s1→0} 𝕄/s1` for `j > 0`: the 1/r coupling is already diagonal
    /// but with the two entries in the opposite order, so the components swap.
    pub fn swap_limit() -> Self {
        CouplingTransform {
            matrix: [[0.0, -1.0], [1.0, 0.0]],
            inverse: [[0.0, 1.0], [-1.0, 0.0]],
        }
    }

    pub fn determinant(&self) -> f64 {
        let m = &self.matrix;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    /// `𝕄⁻¹ C 𝕄` for the coupling matrix `C`.
    pub fn similarity(&self, c: &[[f64; 2]; 2]) -> [[f64; 2]; 2] {
        mul2(&mul2(&self.inverse, c), &self.matrix)
    }

    pub fn apply(&self, v: [f64; 2]) -> [f64; 2] {
        let m = &self.matrix;
        [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]]
    }
}

pub fn mul2(a: &[[f64; 2]; 2], b: &[[f64; 2]; 2]) -> [[f64; 2]; 2] {
    let mut m = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            m[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    m
}

/// Everything that follows from (params, quantum numbers, energy).
///
/// `λ = (E + s√(E²−k²))/k` is never formed; only `kλ`, `k/λ` and `1+λ²`
/// appear, the last one being undefined for `k = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DerivedQuantities {
    pub gamma: f64,
    pub alpha: f64,
    /// `α/γ`, the constant in the first-order operators.
    pub beta: f64,
    pub energy: f64,
    /// `√(E² − k²)`.
    pub momentum: f64,
    pub k_lambda: f64,
    pub k_over_lambda: f64,
    pub lambda_sq_plus_one: Option<f64>,
    /// `ε² = k² − E² + M²ω² + (M + s2)²`.
    pub epsilon_sq: f64,
    /// `(Mωρs1 + (M + s2)j)/(γρ)`.
    pub tau: f64,
    /// `s√(E²−k²) + τ`, the upper off-diagonal of the decoupled first-order system.
    pub eta: f64,
    /// `γ − j/ρ`.
    pub gamma_minus_j: f64,
    pub transform: Option<CouplingTransform>,
}

impl DerivedQuantities {
    /// Lower off-diagonal `τ − s√(E²−k²)` of the first-order system.
    pub fn eta_lower(&self, s: Sign) -> f64 {
        self.tau - s.value() * self.momentum
    }
}

pub fn derive(params: &ModelParams, qn: &QuantumNumbers, energy: f64) -> Result<DerivedQuantities> {
    params.validate()?;
    let k = qn.k;
    let radicand = energy * energy - k * k;
    if !(radicand >= 0.0) {
        return Err(Error::Domain(format!("E² < k² (E = {energy}, k = {k})")));
    }
    let j = qn.j();
    let gamma = effective_gamma(params, j);
    let alpha = coulomb_alpha(params, j);
    let momentum = radicand.sqrt();
    let s = qn.s.value();
    let k_lambda = energy + s * momentum;
    let k_over_lambda = energy - s * momentum;
    let lambda_sq_plus_one = (k != 0.0).then(|| 1.0 + k_lambda * k_lambda / (k * k));
    let p = params.shifted_mass();
    let mw = params.mass * params.omega;
    let epsilon_sq = k * k - energy * energy + mw * mw + p * p;
    let tau = (mw * params.rho * params.s1 + p * j) / (gamma * params.rho);
    Ok(DerivedQuantities {
        gamma,
        alpha,
        beta: alpha / gamma,
        energy,
        momentum,
        k_lambda,
        k_over_lambda,
        lambda_sq_plus_one,
        epsilon_sq,
        tau,
        eta: s * momentum + tau,
        gamma_minus_j: gamma_minus_j(params, j),
        transform: CouplingTransform::new(params, j).ok(),
    })
}

pub fn coupling_transform(params: &ModelParams, qn: &QuantumNumbers) -> Result<CouplingTransform> {
    CouplingTransform::new(params, qn.j())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn qn(m: i64) -> QuantumNumbers {
        QuantumNumbers::new(m, 0.3, Sign::Plus, 0)
    }

    #[test]
    fn flat_field_only_collapses() {
        let p = ModelParams::new(1.0, 1.0, 1.0, 0.0, 0.0).unwrap();
        let d = derive(&p, &qn(0).with_n_r(0), 1.2).unwrap();
        assert!((d.gamma - 0.5).abs() < 1e-15);
        assert!((d.alpha - 0.5).abs() < 1e-15);
    }

    #[test]
    fn coulomb_case_values() {
        let p = ModelParams::new(1.0, 4.0, 1.0, 1.0, 0.0).unwrap();
        assert!((effective_gamma(&p, 0.5) - 1.25f64.sqrt()).abs() < 1e-15);
        assert!((coulomb_alpha(&p, 0.5) - 1.0).abs() < 1e-15);
        let p = ModelParams::new(1.0, 1.0, 0.8, 0.5, 0.0).unwrap();
        let expected = (2.25f64 + 0.16).sqrt() / 0.8;
        assert!((effective_gamma(&p, 1.5) - expected).abs() < 1e-15);
    }

    #[test]
    fn transform_inverts_and_diagonalizes() {
        let p = ModelParams::new(1.0, 4.0, 1.0, 1.0, 0.0).unwrap();
        let t = CouplingTransform::new(&p, 0.5).unwrap();
        let id = mul2(&t.matrix, &t.inverse);
        assert!((id[0][0] - 1.0).abs() < 1e-14 && (id[1][1] - 1.0).abs() < 1e-14);
        assert!(id[0][1].abs() < 1e-14 && id[1][0].abs() < 1e-14);
        let g = effective_gamma(&p, 0.5);
        let diag = t.similarity(&coupling_matrix(&p, 0.5));
        assert!((diag[0][0] - g).abs() < 1e-12 && (diag[1][1] + g).abs() < 1e-12);
        assert!(diag[0][1].abs() < 1e-12 && diag[1][0].abs() < 1e-12);
    }

    #[test]
    fn zero_coulomb_strength_is_degenerate_for_positive_j() {
        let p = ModelParams::new(1.0, 1.0, 1.0, 0.0, 0.0).unwrap();
        assert!(matches!(
            CouplingTransform::new(&p, 0.5),
            Err(Error::DegenerateDiagonalization(_))
        ));
        // negative j keeps a diagonal, invertible transform
        assert!(CouplingTransform::new(&p, -0.5).is_ok());
        let swap = CouplingTransform::swap_limit();
        let diag = swap.similarity(&coupling_matrix(&p, 0.5));
        assert_eq!(diag, [[0.5, 0.0], [0.0, -0.5]]);
    }

    #[test]
    fn rejects_sub_longitudinal_energy() {
        let p = ModelParams::new(1.0, 1.0, 1.0, 0.2, 0.0).unwrap();
        let q = QuantumNumbers::new(0, 2.0, Sign::Plus, 0);
        assert!(matches!(derive(&p, &q, 1.0), Err(Error::Domain(_))));
        assert!(ModelParams::new(1.0, 1.0, 1.5, 0.0, 0.0).is_err());
        assert!(ModelParams::new(-1.0, 1.0, 0.5, 0.0, 0.0).is_err());
    }

    #[test]
    fn lambda_combinations_at_zero_momentum() {
        let p = ModelParams::new(1.0, 1.0, 1.0, 0.2, 0.0).unwrap();
        let q = QuantumNumbers::new(0, 0.0, Sign::Plus, 0);
        let d = derive(&p, &q, 1.3).unwrap();
        assert!(d.lambda_sq_plus_one.is_none());
        assert!((d.k_lambda - 2.6).abs() < 1e-15);
        assert_eq!(d.k_over_lambda, 0.0);
    }

    proptest! {
        #[test]
        fn lambda_product_is_k_squared(
            e in 0.1f64..5.0, frac in 0.0f64..1.0, minus in any::<bool>()
        ) {
            let k = e * frac;
            let s = if minus { Sign::Minus } else { Sign::Plus };
            let p = ModelParams::new(1.0, 1.0, 0.7, 0.3, 0.1).unwrap();
            let d = derive(&p, &QuantumNumbers::new(1, k, s, 0), e).unwrap();
            prop_assert!((d.k_lambda * d.k_over_lambda - k * k).abs() <= 1e-12 * (1.0 + e * e));
        }

        #[test]
        fn determinant_closed_form(
            m in -4i64..5, rho in 0.1f64..1.0, s1 in prop_oneof![-2.0f64..-0.01, 0.01f64..2.0]
        ) {
            let p = ModelParams::new(1.0, 1.0, rho, s1, 0.0).unwrap();
            let j = m as f64 + 0.5;
            let t = CouplingTransform::new(&p, j).unwrap();
            let g = effective_gamma(&p, j);
            let a = gamma_minus_j(&p, j);
            let expected = 2.0 * g * (g * rho - j) / rho;
            prop_assert!((t.determinant() - expected).abs() <= 1e-10 * expected.abs().max(1.0));
            prop_assert!((t.determinant() - 2.0 * g * a).abs() <= 1e-12 * expected.abs().max(1.0));
            let diag = t.similarity(&coupling_matrix(&p, j));
            let scale = g.max(1.0);
            prop_assert!((diag[0][0] - g).abs() < 1e-12 * scale);
            prop_assert!((diag[1][1] + g).abs() < 1e-12 * scale);
            prop_assert!(diag[0][1].abs() < 1e-12 * scale && diag[1][0].abs() < 1e-12 * scale);
        }

        #[test]
        fn gamma_even_in_j(m in -6i64..6, rho in 0.1f64..1.0, s1 in -2.0f64..2.0) {
            let p = ModelParams::new(1.0, 1.0, rho, s1, 0.0).unwrap();
            let j = m as f64 + 0.5;
            prop_assert_eq!(effective_gamma(&p, j), effective_gamma(&p, -j));
            prop_assert!(effective_gamma(&p, j) >= j.abs() / rho);
        }
    }
}
