use serde::Serialize;

use super::RadialState;
use crate::error::{Error, Result};
use crate::model::{self, DerivedQuantities};

/// One row of an ODE evaluated on closed forms: the signed sum of its terms
/// and the sum of their magnitudes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RowResidual {
    pub value: f64,
    pub scale: f64,
}

impl RowResidual {
    pub(crate) fn of(terms: &[f64]) -> Self {
        RowResidual {
            value: terms.iter().sum(),
            scale: terms.iter().map(|t| t.abs()).sum(),
        }
    }

    /// `|Σ t| / Σ|t|`, zero when every term vanishes.
    pub fn relative(&self) -> f64 {
        if self.scale == 0.0 {
            0.0
        } else {
            self.value.abs() / self.scale
        }
    }
}

/// Worst relative residual over a radius set, with the radius where it occurs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResidualReport {
    pub max_relative: f64,
    pub at_radius: f64,
    pub points: usize,
}

impl ResidualReport {
    pub fn over<F: Fn(f64) -> [RowResidual; 2]>(radii: &[f64], rows: F) -> Self {
        let mut worst = ResidualReport {
            max_relative: 0.0,
            at_radius: f64::NAN,
            points: radii.len(),
        };
        for &r in radii {
            for row in rows(r) {
                let rel = row.relative();
                if !(rel <= worst.max_relative) {
                    worst.max_relative = rel;
                    worst.at_radius = r;
                }
            }
        }
        worst
    }
}

impl RadialState {
    /// First-order system for the decoupled pair:
    ///
    /// ```text
    ///  F' + (γ/r − β)F − ηG = 0
    /// −G' + (γ/r − β)G + (τ − s√(E²−k²))F = 0
    /// ```
    pub fn coupled_residual(&self, r: f64) -> [RowResidual; 2] {
        self.coupled_residual_with(&self.derived, r)
    }

    fn coupled_residual_with(&self, d: &DerivedQuantities, r: f64) -> [RowResidual; 2] {
        let [f, df, _] = self.upper.jet(r);
        let [g, dg, _] = self.lower.jet(r);
        let w = d.gamma / r - d.beta;
        let lower = d.eta_lower(self.level.qn.s);
        [
            RowResidual::of(&[df, w * f, -d.eta * g]),
            RowResidual::of(&[-dg, w * g, lower * f]),
        ]
    }

    /// The same system in the physical components `(F₊, G₋)`:
    ///
    /// ```text
    /// F₊' − (j/ρ)F₊/r + (s1/r)G₋ + MωF₊ + (M + s2 − s√(E²−k²))G₋ = 0
    /// G₋' + (s1/r)F₊ + (j/ρ)G₋/r − MωG₋ + (M + s2 + s√(E²−k²))F₊ = 0
    /// ```
    pub fn physical_residual(&self, r: f64) -> [RowResidual; 2] {
        let [f, df, _] = self.upper.jet(r);
        let [g, dg, _] = self.lower.jet(r);
        let (fp, gm) = self.physical(f, g);
        let (dfp, dgm) = self.physical(df, dg);
        let p = &self.level.params;
        let jr = self.level.qn.j() / p.rho;
        let mw = p.mass * p.omega;
        let sq = self.level.qn.s.value() * self.derived.momentum;
        let pm = p.shifted_mass();
        [
            RowResidual::of(&[dfp, -jr * fp / r, p.s1 * gm / r, mw * fp, (pm - sq) * gm]),
            RowResidual::of(&[dgm, p.s1 * fp / r, jr * gm / r, -mw * gm, (pm + sq) * fp]),
        ]
    }

    /// `−u'' + c(c+1)u/r² − 2αu/r + ε²u` for `u = F` with `c = γ` (row 0) and
    /// `u = G` with `c = γ − 1` (row 1).
    pub fn second_order_residual(&self, r: f64) -> [RowResidual; 2] {
        let g = self.gamma();
        let alpha = self.level.alpha;
        let e2 = self.epsilon() * self.epsilon();
        let row = |jet: [f64; 3], c: f64| {
            let [u, _, u2] = jet;
            RowResidual::of(&[-u2, c * (c + 1.0) * u / (r * r), -2.0 * alpha * u / r, e2 * u])
        };
        [row(self.upper.jet(r), g), row(self.lower.jet(r), g - 1.0)]
    }

    /// Closed forms rebuilt at a trial energy `E`, keeping `n`, `γ` and `α`
    /// but taking `ε` and `η` from `E`. Only the exact level has zero residual.
    pub fn at_trial_energy(&self, energy: f64) -> Result<RadialState> {
        let d = model::derive(&self.level.params, &self.level.qn, energy)?;
        if !(d.epsilon_sq > 0.0) {
            return Err(Error::Domain(format!("trial energy {energy} gives ε² ≤ 0")));
        }
        let mut level = self.level.clone();
        level.epsilon = d.epsilon_sq.sqrt();
        level.energy_sq = energy * energy;
        level.energy = Some(energy);
        let mut state = RadialState::with_amplitude(&level, self.amplitude)?;
        state.derived = d;
        Ok(state)
    }
}

/// Ratio of the worst residual at a trial energy `E·(1 ∓ rel_shift)` to the
/// worst residual at the exact level, for the coupled (index 0) and
/// second-order (index 1) systems. The shift shrinks `|E|` unless that drops
/// below `|k|`; growing `|E|` can cross the continuum threshold instead.
pub fn perturbation_inflation(state: &RadialState, radii: &[f64], rel_shift: f64) -> Result<[f64; 2]> {
    let e = state.derived.energy;
    let trial = state
        .at_trial_energy(e * (1.0 - rel_shift))
        .or_else(|_| state.at_trial_energy(e * (1.0 + rel_shift)))?;
    let base_c = ResidualReport::over(radii, |r| state.coupled_residual(r)).max_relative;
    let base_s = ResidualReport::over(radii, |r| state.second_order_residual(r)).max_relative;
    let pert_c = ResidualReport::over(radii, |r| trial.coupled_residual(r)).max_relative;
    let pert_s = ResidualReport::over(radii, |r| trial.second_order_residual(r)).max_relative;
    // a zero baseline is floored at machine epsilon, which understates the ratio
    Ok([pert_c / base_c.max(f64::EPSILON), pert_s / base_s.max(f64::EPSILON)])
}

/// Least-squares slope of `ln|u|` against `ln r` over log-spaced radii.
pub fn leading_power_slope<F: Fn(f64) -> f64>(u: F, r_min: f64, r_max: f64, points: usize) -> Result<f64> {
    let radii = super::log_space(r_min, r_max, points)?;
    let xs: Vec<f64> = radii.iter().map(|r| r.ln()).collect();
    let ys: Vec<f64> = radii.iter().map(|&r| u(r).abs().ln()).collect();
    if ys.iter().any(|y| !y.is_finite()) {
        return Err(Error::Numeric("function vanishes inside the slope window".into()));
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    Ok(sxy / sxx)
}
