//! Independent check of the spectrum: the radial operator
//! `−d²/dr² + γ(γ+1)/r² − 2α/r` on a uniform grid with Dirichlet ends, solved
//! as a symmetric tridiagonal eigenproblem. Its negative eigenvalues are `−ε²`.
//!
//! Nothing here uses the Laguerre closed forms except [`oracle_compare`],
//! which samples them only to measure eigenvector overlap.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::specfun::laguerre_recurrence;
use crate::spectrum::EnergyLevel;
use crate::tridiag::SymTridiagonal;

/// Grid for the finite-difference solve. Level `l` of the Richardson ladder
/// uses `(N+1)·2^l − 1` interior points, so every grid halves the step of the
/// previous one and the nodes nest.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiscretizationSpec {
    /// Interior points of the coarsest grid.
    pub n: usize,
    /// Cutoff radius.
    pub r_max: f64,
    /// Number of grid doublings; `richardson_levels + 1` solves.
    pub richardson_levels: usize,
}

pub const MIN_POINTS: usize = 200;

impl DiscretizationSpec {
    pub fn new(n: usize, r_max: f64, richardson_levels: usize) -> Result<Self> {
        if n < MIN_POINTS {
            return Err(Error::Discretization(format!(
                "need at least {MIN_POINTS} interior points, got {n}"
            )));
        }
        if !(r_max > 0.0 && r_max.is_finite()) {
            return Err(Error::Discretization(format!("cutoff must be positive, got {r_max}")));
        }
        if richardson_levels < 1 {
            return Err(Error::Discretization(
                "at least one Richardson level is required".into(),
            ));
        }
        Ok(DiscretizationSpec {
            n,
            r_max,
            richardson_levels,
        })
    }

    /// `R = 30/ε` with two doublings of an `n`-point grid.
    pub fn adaptive(epsilon_estimate: f64, n: usize) -> Result<Self> {
        if !(epsilon_estimate > 0.0) {
            return Err(Error::NoBoundState(format!(
                "ε estimate {epsilon_estimate} is not positive"
            )));
        }
        Self::new(n, 30.0 / epsilon_estimate, 2)
    }

    pub fn points(&self, level: usize) -> usize {
        (self.n + 1) * (1 << level) - 1
    }

    pub fn step(&self, level: usize) -> f64 {
        self.r_max / (self.points(level) + 1) as f64
    }
}

/// Tridiagonal matrix of the radial operator on `points` interior nodes.
pub fn radial_operator(gamma: f64, alpha: f64, r_max: f64, points: usize) -> Result<SymTridiagonal> {
    let h = r_max / (points + 1) as f64;
    let c = gamma * (gamma + 1.0);
    let diag = (1..=points)
        .map(|i| {
            let r = h * i as f64;
            2.0 / (h * h) + c / (r * r) - 2.0 * alpha / r
        })
        .collect();
    SymTridiagonal::new(diag, vec![-1.0 / (h * h); points - 1])
}

/// Raw (unextrapolated) `ε` values for the lowest `count` states on one grid.
pub fn raw_epsilons(gamma: f64, alpha: f64, r_max: f64, points: usize, count: usize) -> Result<Vec<f64>> {
    if !(alpha > 0.0) {
        return Err(Error::NoBoundState(format!("α = {alpha} ≤ 0 has no bound states")));
    }
    let op = radial_operator(gamma, alpha, r_max, points)?;
    let bound = op.count_below(0.0);
    if bound < count {
        return Err(Error::NoBoundState(format!(
            "grid supports {bound} negative eigenvalues, {count} requested"
        )));
    }
    op.lowest(count).map(|v| v.into_iter().map(|l| (-l).sqrt()).collect())
}

/// The Richardson ladder for one state: raw values per level and the
/// extrapolated estimate.
#[derive(Debug, Clone, Serialize)]
pub struct Extrapolation {
    pub raw: Vec<f64>,
    pub extrapolated: f64,
}

impl Extrapolation {
    /// Romberg elimination of the `h²`, `h⁴`, ... error terms.
    pub fn from_raw(raw: Vec<f64>) -> Self {
        let mut table = raw.clone();
        let mut factor = 4.0;
        while table.len() > 1 {
            table = table
                .windows(2)
                .map(|w| (factor * w[1] - w[0]) / (factor - 1.0))
                .collect();
            factor *= 4.0;
        }
        Extrapolation {
            extrapolated: table[0],
            raw,
        }
    }

    /// `(ε₀ − ε₁)/(ε₁ − ε₂)` from the first three raw values; 4 for a clean
    /// second-order scheme.
    pub fn convergence_ratio(&self) -> Option<f64> {
        (self.raw.len() >= 3).then(|| (self.raw[0] - self.raw[1]) / (self.raw[1] - self.raw[2]))
    }
}

/// Extrapolated `ε` for the lowest `count` states.
pub fn fd_spectrum(gamma: f64, alpha: f64, spec: &DiscretizationSpec, count: usize) -> Result<Vec<Extrapolation>> {
    let mut per_level = Vec::with_capacity(spec.richardson_levels + 1);
    for l in 0..=spec.richardson_levels {
        per_level.push(raw_epsilons(gamma, alpha, spec.r_max, spec.points(l), count)?);
    }
    Ok((0..count)
        .map(|i| Extrapolation::from_raw(per_level.iter().map(|v| v[i]).collect()))
        .collect())
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleComparison {
    pub n_r: u32,
    pub epsilon_algebraic: f64,
    pub epsilon_numeric: f64,
    pub relative_gap: f64,
    /// `|⟨v, f⟩|/(‖v‖‖f‖)` on the finest grid.
    pub eigenvector_overlap: f64,
    pub convergence_ratio: Option<f64>,
    /// Relative change of the raw coarsest-grid value when `R` grows by 1.5
    /// at fixed step.
    pub cutoff_sensitivity: f64,
    pub raw: Vec<f64>,
}

/// Recover `ε` for one level numerically and compare with the quantization
/// formula.
pub fn oracle_compare(level: &EnergyLevel, spec: &DiscretizationSpec) -> Result<OracleComparison> {
    if !level.is_valid() {
        return Err(Error::State(format!(
            "level is not a bound state ({})",
            level.reason_codes()
        )));
    }
    let (gamma, alpha, eps) = (level.gamma, level.alpha, level.epsilon);
    if !(spec.r_max > 10.0 / eps) {
        return Err(Error::Discretization(format!(
            "cutoff {} is below 10/ε = {}",
            spec.r_max,
            10.0 / eps
        )));
    }
    let idx = level.qn.n_r as usize;
    let ladder = fd_spectrum(gamma, alpha, spec, idx + 1)?.swap_remove(idx);

    let finest = spec.richardson_levels;
    let points = spec.points(finest);
    let h = spec.step(finest);
    let op = radial_operator(gamma, alpha, spec.r_max, points)?;
    let v = op.eigenvector(op.eigenvalue(idx)?);
    let f: Vec<f64> = (1..=points)
        .map(|i| {
            let r = h * i as f64;
            r.powf(gamma + 1.0) * (-eps * r).exp() * laguerre_recurrence(idx, 2.0 * gamma + 1.0, 2.0 * eps * r)
        })
        .collect();
    let dot: f64 = v.iter().zip(&f).map(|(a, b)| a * b).sum();
    let nv: f64 = v.iter().map(|a| a * a).sum::<f64>().sqrt();
    let nf: f64 = f.iter().map(|a| a * a).sum::<f64>().sqrt();

    let coarse = spec.points(0);
    let extended_points = ((coarse + 1) as f64 * 1.5).round() as usize - 1;
    let extended_r = spec.step(0) * (extended_points + 1) as f64;
    let extended = raw_epsilons(gamma, alpha, extended_r, extended_points, idx + 1)?[idx];
    let cutoff_sensitivity = (extended - ladder.raw[0]).abs() / ladder.raw[0];

    Ok(OracleComparison {
        n_r: level.qn.n_r,
        epsilon_algebraic: eps,
        epsilon_numeric: ladder.extrapolated,
        relative_gap: (eps - ladder.extrapolated).abs() / eps,
        eigenvector_overlap: dot.abs() / (nv * nf),
        convergence_ratio: ladder.convergence_ratio(),
        cutoff_sensitivity,
        raw: ladder.raw,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{ModelParams, QuantumNumbers, Sign};
    use crate::spectrum::energy_level;

    #[test]
    fn hydrogen_like_ground_state() {
        let spec = DiscretizationSpec::adaptive(1.0 / 3.0, 2000).unwrap();
        let e = fd_spectrum(0.5, 0.5, &spec, 1).unwrap();
        assert!((e[0].extrapolated - 1.0 / 3.0).abs() < 1e-5 / 3.0);
    }

    #[test]
    fn coulomb_ground_state_and_ordering() {
        let g = 1.25f64.sqrt();
        let exact = 1.0 / (g + 1.0);
        let spec = DiscretizationSpec::adaptive(1.0 / (g + 3.0), 2000).unwrap();
        let e = fd_spectrum(g, 1.0, &spec, 3).unwrap();
        assert!((e[0].extrapolated - exact).abs() < 1e-5 * exact);
        assert!(e[0].extrapolated > e[1].extrapolated && e[1].extrapolated > e[2].extrapolated);
    }

    #[test]
    fn romberg_removes_polynomial_error() {
        // ε(h) = 1 + h² + h⁴ sampled at h, h/2, h/4
        let raw: Vec<f64> = [0.1f64, 0.05, 0.025].iter().map(|h| 1.0 + h * h + h.powi(4)).collect();
        let x = Extrapolation::from_raw(raw);
        assert!((x.extrapolated - 1.0).abs() < 1e-15);
        assert!((x.convergence_ratio().unwrap() - 4.0).abs() < 0.05);
    }

    #[test]
    fn compare_against_levels() {
        let p = ModelParams::new(1.0, 4.0, 0.8, 0.7, 0.1).unwrap();
        for n_r in 0..3 {
            let l = energy_level(&p, &QuantumNumbers::new(1, 0.2, Sign::Plus, n_r), Sign::Plus);
            let spec = DiscretizationSpec::adaptive(l.epsilon, 2000).unwrap();
            let c = oracle_compare(&l, &spec).unwrap();
            assert!(c.relative_gap < 1e-5, "{c:?}");
            assert!(c.eigenvector_overlap > 1.0 - 1e-6, "{c:?}");
            let ratio = c.convergence_ratio.unwrap();
            assert!((3.5..=4.5).contains(&ratio), "{ratio}");
            assert!(c.cutoff_sensitivity < 1e-10, "{c:?}");
        }
    }

    #[test]
    fn wrong_gamma_is_detected() {
        let g = 1.25f64.sqrt();
        let exact = 1.0 / (g + 1.0);
        let spec = DiscretizationSpec::adaptive(exact, 1000).unwrap();
        let e = fd_spectrum(g + 0.1, 1.0, &spec, 1).unwrap();
        assert!((e[0].extrapolated - exact).abs() / exact > 1e-2);
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(matches!(
            DiscretizationSpec::new(100, 10.0, 2),
            Err(Error::Discretization(_))
        ));
        assert!(DiscretizationSpec::new(300, 10.0, 0).is_err());
        assert!(matches!(
            DiscretizationSpec::adaptive(-1.0, 300),
            Err(Error::NoBoundState(_))
        ));
        let spec = DiscretizationSpec::new(300, 20.0, 1).unwrap();
        assert!(matches!(fd_spectrum(0.5, -0.5, &spec, 1), Err(Error::NoBoundState(_))));
        assert_eq!(spec.points(1), 601);
    }
}
