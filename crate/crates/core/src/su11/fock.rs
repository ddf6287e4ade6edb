//! Truncated discrete-series representation `|k, s⟩`, `s = 0..dim`, and the
//! displacement operator on it.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense row-major complex square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    pub dim: usize,
    pub data: Vec<Complex64>,
}

impl Matrix {
    pub fn zeros(dim: usize) -> Self {
        Matrix {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        let n = self.dim;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        out
    }

    pub fn scale(&self, c: Complex64) -> Matrix {
        Matrix {
            dim: self.dim,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        Matrix {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    /// Max absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self[(i, j)].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.dim).map(|i| self[(i, j)]).collect()
    }

    /// `exp(A)` by scaling and squaring with a Taylor kernel.
    pub fn expm(&self) -> Matrix {
        let norm = self.norm_inf();
        let squarings = if norm > 0.5 {
            (norm / 0.5).log2().ceil() as u32
        } else {
            0
        };
        let a = self.scale(Complex64::new(0.5f64.powi(squarings as i32), 0.0));
        let mut result = Matrix::identity(self.dim);
        let mut term = Matrix::identity(self.dim);
        for k in 1..=30 {
            term = term.mul(&a).scale(Complex64::new(1.0 / k as f64, 0.0));
            result = result.add(&term);
            if term.norm_inf() < 1e-18 {
                break;
            }
        }
        for _ in 0..squarings {
            result = result.mul(&result);
        }
        result
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

/// `K₊|s⟩ = √((s+1)(2k+s))|s+1⟩`, `K₋|s⟩ = √(s(2k+s−1))|s−1⟩`,
/// `K₀|s⟩ = (k+s)|s⟩`, truncated to `dim` levels.
#[derive(Debug, Clone)]
pub struct FockGenerators {
    pub k: f64,
    pub k_plus: Matrix,
    pub k_minus: Matrix,
    pub k0: Vec<f64>,
}

impl FockGenerators {
    pub fn new(k: f64, dim: usize) -> Result<Self> {
        if !(k > 0.0) || dim < 2 {
            return Err(Error::Parameter(format!(
                "need k > 0 and at least 2 levels, got k = {k}, dim = {dim}"
            )));
        }
        let mut k_plus = Matrix::zeros(dim);
        let mut k_minus = Matrix::zeros(dim);
        for s in 0..dim - 1 {
            let c = ((s as f64 + 1.0) * (2.0 * k + s as f64)).sqrt();
            k_plus[(s + 1, s)] = Complex64::new(c, 0.0);
            k_minus[(s, s + 1)] = Complex64::new(c, 0.0);
        }
        let k0 = (0..dim).map(|s| k + s as f64).collect();
        Ok(FockGenerators { k, k_plus, k_minus, k0 })
    }

    pub fn dim(&self) -> usize {
        self.k0.len()
    }

    /// `D(ξ) = exp(ξK₊ − ξ*K₋)`.
    pub fn displacement(&self, xi: Complex64) -> Matrix {
        self.k_plus.scale(xi).add(&self.k_minus.scale(-xi.conj())).expm()
    }

    /// `exp(ζK₊)·exp(ln(1−|ζ|²)K₀)·exp(−ζ*K₋)` with `ζ = tanh|ξ|·ξ/|ξ|`.
    pub fn normal_form(&self, xi: Complex64) -> Matrix {
        let zeta = normal_form_parameter(xi);
        let eta = (1.0 - zeta.norm_sqr()).ln();
        let mut middle = Matrix::zeros(self.dim());
        for (s, &w) in self.k0.iter().enumerate() {
            middle[(s, s)] = Complex64::new((eta * w).exp(), 0.0);
        }
        let left = self.k_plus.scale(zeta).expm();
        let right = self.k_minus.scale(-zeta.conj()).expm();
        left.mul(&middle).mul(&right)
    }
}

pub fn normal_form_parameter(xi: Complex64) -> Complex64 {
    let t = xi.norm();
    if t == 0.0 {
        Complex64::new(0.0, 0.0)
    } else {
        xi * (t.tanh() / t)
    }
}

/// Largest deviation `‖(D − N)|s⟩‖` over `s < columns`, and largest
/// `|‖D|s⟩‖ − 1|` over the same columns.
pub fn displacement_deviation(gen: &FockGenerators, xi: Complex64, columns: usize) -> (f64, f64) {
    let d = gen.displacement(xi);
    let n = gen.normal_form(xi);
    let mut deviation: f64 = 0.0;
    let mut unitarity: f64 = 0.0;
    for j in 0..columns.min(gen.dim()) {
        let dc = d.column(j);
        let nc = n.column(j);
        let diff: f64 = dc.iter().zip(&nc).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt();
        let len: f64 = dc.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        deviation = deviation.max(diff);
        unitarity = unitarity.max((len - 1.0).abs());
    }
    (deviation, unitarity)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expm_of_diagonal_and_nilpotent() {
        let mut a = Matrix::zeros(3);
        a[(0, 0)] = Complex64::new(2.0, 0.0);
        a[(1, 0)] = Complex64::new(0.0, 3.0);
        let e = a.expm();
        assert!((e[(0, 0)] - Complex64::new(2f64.exp(), 0.0)).norm() < 1e-12);
        // second row: d/dt x₁ = 3i x₀ ⇒ x₁ = 3i(e² − 1)/2
        assert!((e[(1, 0)] - Complex64::new(0.0, 1.5 * (2f64.exp() - 1.0))).norm() < 1e-12);
        assert!((e[(2, 2)] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn first_raising_coefficient() {
        let g = FockGenerators::new(1.0, 4).unwrap();
        assert!((g.k_plus[(1, 0)].re - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn normal_form_matches_exponential() {
        let g = FockGenerators::new(1.7, 40).unwrap();
        for xi in [
            Complex64::new(0.2, 0.0),
            Complex64::new(0.1, -0.15),
            Complex64::new(0.0, 0.05),
        ] {
            let (dev, unit) = displacement_deviation(&g, xi, 5);
            assert!(dev < 1e-8, "{xi}: {dev}");
            assert!(unit < 1e-8, "{xi}: {unit}");
        }
    }

    #[test]
    fn wrong_parameter_is_detected() {
        // using ξ itself in place of ζ must fail the comparison
        let g = FockGenerators::new(1.0, 40).unwrap();
        let xi = Complex64::new(0.2, 0.0);
        let d = g.displacement(xi);
        let n = {
            let eta = (1.0 - xi.norm_sqr()).ln();
            let mut mid = Matrix::zeros(40);
            for (s, &w) in g.k0.iter().enumerate() {
                mid[(s, s)] = Complex64::new((eta * w).exp(), 0.0);
            }
            g.k_plus.scale(xi).expm().mul(&mid).mul(&g.k_minus.scale(-xi).expm())
        };
        let diff: f64 = d
            .column(0)
            .iter()
            .zip(n.column(0))
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        assert!(diff > 1e-4);
    }
}
