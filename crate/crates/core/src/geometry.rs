//! Frame fields and curved-space Dirac matrices for the cosmic-string line
//! element `ds² = dt² − dr² − ρ²r²dφ² − dz²`.
//!
//! Coordinates are ordered `(t, r, φ, z)`. Flat Dirac matrices use the
//! standard block form `γ^(0) = diag(1, −1)`, `γ^(a) = [[0, σ_a], [−σ_a, 0]]`.
//! The position-dependent matrices are assembled by contracting the tetrad,
//! `γ^μ(x) = e_(a)^μ γ^(a)`, which yields
//! `σ^φ = −i/(ρr) [[0, e^{−iφ}], [−e^{+iφ}, 0]]`. See [`printed_sigma_phi`]
//! for the variant with two `e^{−iφ}` entries, which violates the Clifford
//! relation.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{param, Result};

pub type Matrix4 = [[Complex64; 4]; 4];
pub type Matrix2 = [[Complex64; 2]; 2];
pub type RealMatrix4 = [[f64; 4]; 4];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Minkowski metric `η^{(a)(b)}`, signature (+, −, −, −).
pub const MINKOWSKI: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

#[derive(Debug, Clone, Serialize)]
pub struct FrameBundle {
    pub rho: f64,
    pub r: f64,
    pub phi: f64,
    /// `tetrad[a][μ] = e_(a)^μ`.
    pub tetrad: RealMatrix4,
    /// `gammas[μ] = γ^μ(x)`.
    #[serde(skip)]
    pub gammas: [Matrix4; 4],
    pub metric_inv: RealMatrix4,
    #[serde(skip)]
    pub spin_connection_phi: Matrix4,
}

pub fn pauli() -> [Matrix2; 3] {
    [
        [[ZERO, ONE], [ONE, ZERO]],
        [[ZERO, -I], [I, ZERO]],
        [[ONE, ZERO], [ZERO, -ONE]],
    ]
}

/// Flat-space Dirac matrices `γ^(a)`, `a = 0..3`.
pub fn flat_gammas() -> [Matrix4; 4] {
    let s = pauli();
    let mut g = [zero4(); 4];
    g[0] = block(&identity2(), &zero2(), &zero2(), &scale2(&identity2(), -ONE));
    for a in 0..3 {
        g[a + 1] = block(&zero2(), &s[a], &scale2(&s[a], -ONE), &zero2());
    }
    g
}

/// `Σ³ = diag(σ³, σ³)`.
pub fn sigma3_block() -> Matrix4 {
    let s3 = pauli()[2];
    block(&s3, &zero2(), &zero2(), &s3)
}

fn validate(rho: f64, r: f64, phi: f64) -> Result<()> {
    if !(rho > 0.0 && rho <= 1.0) {
        return param(format!("deficit parameter rho must lie in (0, 1], got {rho}"));
    }
    if !(r > 0.0) || !r.is_finite() {
        return param(format!("radius must be positive, got {r}"));
    }
    if !phi.is_finite() {
        return param("angle must be finite");
    }
    Ok(())
}

/// Cosmic-string tetrad `e_(a)^μ`.
pub fn tetrad(rho: f64, r: f64, phi: f64) -> RealMatrix4 {
    let (s, c) = phi.sin_cos();
    let rr = rho * r;
    [
        [1.0, 0.0, 0.0, 0.0],
        [0.0, c, -s / rr, 0.0],
        [0.0, s, c / rr, 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ]
}

/// Inverse metric `g^{μν} = diag(1, −1, −1/(ρ²r²), −1)`.
pub fn metric_inverse(rho: f64, r: f64) -> RealMatrix4 {
    let mut g = [[0.0; 4]; 4];
    g[0][0] = 1.0;
    g[1][1] = -1.0;
    g[2][2] = -1.0 / (rho * rho * r * r);
    g[3][3] = -1.0;
    g
}

pub fn build_frame(rho: f64, r: f64, phi: f64) -> Result<FrameBundle> {
    validate(rho, r, phi)?;
    Ok(FrameBundle::from_tetrad(rho, r, phi, tetrad(rho, r, phi)))
}

impl FrameBundle {
    /// Assemble a frame from an explicit tetrad. The metric stays the
    /// analytic one, so a tampered tetrad shows up in the residuals.
    pub fn from_tetrad(rho: f64, r: f64, phi: f64, tetrad: RealMatrix4) -> FrameBundle {
        let flat = flat_gammas();
        let mut gammas = [zero4(); 4];
        for (mu, gamma) in gammas.iter_mut().enumerate() {
            for (a, flat_a) in flat.iter().enumerate() {
                let e = tetrad[a][mu];
                if e != 0.0 {
                    *gamma = add4(gamma, &scale4(flat_a, Complex64::new(e, 0.0)));
                }
            }
        }
        let spin_connection_phi = scale4(&sigma3_block(), I * (0.5 * (1.0 - rho)));
        FrameBundle {
            rho,
            r,
            phi,
            tetrad,
            gammas,
            metric_inv: metric_inverse(rho, r),
            spin_connection_phi,
        }
    }

    /// Upper-right 2×2 block of `γ^μ`, i.e. the modified Pauli matrix `σ^μ`.
    pub fn sigma(&self, mu: usize) -> Matrix2 {
        let g = &self.gammas[mu];
        [[g[0][2], g[0][3]], [g[1][2], g[1][3]]]
    }

    /// Max-entry deviation of `η^{ab} e_a^μ e_b^ν` from `g^{μν}`.
    pub fn tetrad_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for mu in 0..4 {
            for nu in 0..4 {
                let sum: f64 = (0..4)
                    .map(|a| MINKOWSKI[a] * self.tetrad[a][mu] * self.tetrad[a][nu])
                    .sum();
                worst = worst.max((sum - self.metric_inv[mu][nu]).abs());
            }
        }
        worst
    }
}

/// Largest entry of `{γ^μ, γ^ν} − 2 g^{μν} I` over all index pairs.
pub fn clifford_residual(frame: &FrameBundle) -> f64 {
    clifford_residual_of(&frame.gammas, &frame.metric_inv)
}

pub fn clifford_residual_of(gammas: &[Matrix4; 4], metric_inv: &RealMatrix4) -> f64 {
    let mut worst: f64 = 0.0;
    for mu in 0..4 {
        for nu in mu..4 {
            let anti = add4(&mul4(&gammas[mu], &gammas[nu]), &mul4(&gammas[nu], &gammas[mu]));
            let target = 2.0 * metric_inv[mu][nu];
            for (i, row) in anti.iter().enumerate() {
                for (j, &z) in row.iter().enumerate() {
                    let t = if i == j { target } else { 0.0 };
                    worst = worst.max((z - t).norm());
                }
            }
        }
    }
    worst
}

/// `σ^φ` with two `e^{−iφ}` entries, as it is sometimes printed.
pub fn printed_sigma_phi(rho: f64, r: f64, phi: f64) -> Matrix2 {
    let e = Complex64::from_polar(1.0, -phi);
    let pre = -I / (rho * r);
    [[ZERO, pre * e], [-pre * e, ZERO]]
}

/// Clifford residual of the frame with `σ^φ` replaced by [`printed_sigma_phi`].
/// Nonzero for every `φ` that is not a multiple of π.
pub fn printed_variant_residual(rho: f64, r: f64, phi: f64) -> Result<f64> {
    let mut frame = build_frame(rho, r, phi)?;
    let s = printed_sigma_phi(rho, r, phi);
    frame.gammas[2] = block(&zero2(), &s, &scale2(&s, -ONE), &zero2());
    Ok(clifford_residual(&frame))
}

pub(crate) fn zero4() -> Matrix4 {
    [[ZERO; 4]; 4]
}

fn zero2() -> Matrix2 {
    [[ZERO; 2]; 2]
}

fn identity2() -> Matrix2 {
    [[ONE, ZERO], [ZERO, ONE]]
}

fn scale2(m: &Matrix2, s: Complex64) -> Matrix2 {
    [[m[0][0] * s, m[0][1] * s], [m[1][0] * s, m[1][1] * s]]
}

fn block(a: &Matrix2, b: &Matrix2, c: &Matrix2, d: &Matrix2) -> Matrix4 {
    let mut m = zero4();
    for i in 0..2 {
        for j in 0..2 {
            m[i][j] = a[i][j];
            m[i][j + 2] = b[i][j];
            m[i + 2][j] = c[i][j];
            m[i + 2][j + 2] = d[i][j];
        }
    }
    m
}

pub fn mul4(a: &Matrix4, b: &Matrix4) -> Matrix4 {
    let mut m = zero4();
    for i in 0..4 {
        for j in 0..4 {
            m[i][j] = (0..4).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    m
}

pub fn add4(a: &Matrix4, b: &Matrix4) -> Matrix4 {
    let mut m = zero4();
    for i in 0..4 {
        for j in 0..4 {
            m[i][j] = a[i][j] + b[i][j];
        }
    }
    m
}

pub fn scale4(a: &Matrix4, s: Complex64) -> Matrix4 {
    let mut m = *a;
    m.iter_mut().flatten().for_each(|z| *z *= s);
    m
}
