//! The two realizations of su(1,1) as differential operators on grid
//! functions.
//!
//! Tilting form, acting on `F̃ = F/r` with `c = γ(γ+1)`:
//! `A₀ = ½(rP_r² + c/r + r)`, `A₁ = ½(rP_r² + c/r − r)`,
//! `A₂ = −i(r d/dr + 1)`, and the ladder pair `K± = A₁ ± iA₂`.
//!
//! Schrödinger form, acting on `F` directly:
//! `B₃ = (r/2ε)(−d²/dr² + c/r² + ε²)`, `B± = ∓r d/dr + εr − B₃`.
//! The scalar variant `J± = ∓r d/dr + εr − α/ε` agrees with `B±` on
//! eigenfunctions only.

use num_complex::Complex64;
use serde::Serialize;

use super::grid::GridFunction;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Realization {
    Schrodinger,
    Tilting,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Generator {
    A0,
    A1,
    A2,
    KPlus,
    KMinus,
    BPlus,
    BMinus,
    B3,
}

impl Generator {
    pub fn realization(self) -> Realization {
        match self {
            Generator::A0 | Generator::A1 | Generator::A2 | Generator::KPlus | Generator::KMinus => {
                Realization::Tilting
            }
            Generator::BPlus | Generator::BMinus | Generator::B3 => Realization::Schrodinger,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GeneratorContext {
    pub gamma: f64,
    pub epsilon: f64,
    pub alpha: f64,
    pub realization: Realization,
}

impl GeneratorContext {
    pub fn tilting(gamma: f64) -> Result<Self> {
        Self::new(gamma, 1.0, gamma + 1.0, Realization::Tilting)
    }

    pub fn schrodinger(gamma: f64, epsilon: f64, alpha: f64) -> Result<Self> {
        Self::new(gamma, epsilon, alpha, Realization::Schrodinger)
    }

    pub fn new(gamma: f64, epsilon: f64, alpha: f64, realization: Realization) -> Result<Self> {
        if !(gamma > 0.0) {
            return Err(Error::Parameter(format!("γ must be positive, got {gamma}")));
        }
        if realization == Realization::Schrodinger && !(epsilon > 0.0) {
            return Err(Error::Parameter(format!("ε must be positive, got {epsilon}")));
        }
        Ok(GeneratorContext {
            gamma,
            epsilon,
            alpha,
            realization,
        })
    }

    fn casimir_weight(&self) -> f64 {
        self.gamma * (self.gamma + 1.0)
    }
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// `r P_r² f = −(f_uu + f_u)/r`.
fn radial_kinetic(f: &GridFunction) -> Result<GridFunction> {
    let fu = f.du()?;
    let fuu = f.duu()?;
    Ok(fuu.combine(|r| real(-1.0 / r), &fu, |r| real(-1.0 / r)))
}

/// `(r d/dr + 1) f = f_u + f`.
fn dilation(f: &GridFunction) -> Result<GridFunction> {
    Ok(f.du()?.add(f))
}

fn b3(f: &GridFunction, ctx: &GeneratorContext) -> Result<GridFunction> {
    let c = ctx.casimir_weight();
    let eps = ctx.epsilon;
    // −r f'' = −(f_uu − f_u)/r
    let fu = f.du()?;
    let fuu = f.duu()?;
    let curvature = fuu.combine(|r| real(-1.0 / r), &fu, |r| real(1.0 / r));
    let potential = f.map(|r| real(eps * eps * r + c / r));
    Ok(curvature.add(&potential).scale(real(0.5 / eps)))
}

/// `σ = +1` gives the raising member `B₊`, `σ = −1` gives `B₋`.
fn b_ladder(f: &GridFunction, ctx: &GeneratorContext, sigma: f64) -> Result<GridFunction> {
    let eps = ctx.epsilon;
    let lin = f.du()?.combine(|_| real(-sigma), f, |r| real(eps * r));
    Ok(lin.sub(&b3(f, ctx)?))
}

pub fn apply_generator(name: Generator, f: &GridFunction, ctx: &GeneratorContext) -> Result<GridFunction> {
    if name.realization() != ctx.realization {
        return Err(Error::Parameter(format!(
            "{name:?} does not belong to the {:?} realization",
            ctx.realization
        )));
    }
    let c = ctx.casimir_weight();
    match name {
        Generator::A0 | Generator::A1 => {
            let sign = if name == Generator::A0 { 1.0 } else { -1.0 };
            let kin = radial_kinetic(f)?;
            let pot = f.map(|r| real(c / r + sign * r));
            Ok(kin.add(&pot).scale(real(0.5)))
        }
        Generator::A2 => Ok(dilation(f)?.scale(Complex64::new(0.0, -1.0))),
        Generator::KPlus | Generator::KMinus => {
            // iA₂ = r d/dr + 1
            let sign = if name == Generator::KPlus { 1.0 } else { -1.0 };
            let a1 = apply_generator(Generator::A1, f, ctx)?;
            Ok(a1.combine(|_| real(1.0), &dilation(f)?, |_| real(sign)))
        }
        Generator::B3 => b3(f, ctx),
        Generator::BPlus => b_ladder(f, ctx, 1.0),
        Generator::BMinus => b_ladder(f, ctx, -1.0),
    }
}

/// `J± f = ∓f_u + εr f − (α/ε) f`; `sigma = ±1`.
pub fn apply_scalar_ladder(f: &GridFunction, ctx: &GeneratorContext, sigma: f64) -> Result<GridFunction> {
    if ctx.realization != Realization::Schrodinger {
        return Err(Error::Parameter("J± belongs to the Schrödinger realization".into()));
    }
    let (eps, ratio) = (ctx.epsilon, ctx.alpha / ctx.epsilon);
    Ok(f.du()?.combine(|_| real(-sigma), f, |r| real(eps * r - ratio)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radial::{sturmian, Component};
    use crate::su11::grid::RadialGrid;

    #[test]
    fn a2_on_monomial() {
        let g = RadialGrid::new(1e-2, 10.0, 512).unwrap();
        let gamma = 1.3;
        let f = GridFunction::from_fn(&g, |r| r.powf(gamma)).unwrap();
        let ctx = GeneratorContext::tilting(gamma).unwrap();
        let out = apply_generator(Generator::A2, &f, &ctx).unwrap();
        for i in f.masked() {
            let expect = Complex64::new(0.0, -(gamma + 1.0)) * f.values[i];
            assert!((out.values[i] - expect).norm() < 1e-7 * f.values[i].norm());
        }
    }

    #[test]
    fn a0_eigenvalue_on_sturmians() {
        let g = RadialGrid::new(1e-4, 60.0, 2048).unwrap();
        let gamma = 1.2;
        let ctx = GeneratorContext::tilting(gamma).unwrap();
        for n in 1..=6 {
            let f = GridFunction::from_fn(&g, |r| sturmian(n, gamma, r, Component::Upper).unwrap()).unwrap();
            let out = apply_generator(Generator::A0, &f, &ctx).unwrap();
            let expect = f.scale(real(gamma + n as f64));
            let rel = out.sub(&expect).norm() / expect.norm();
            assert!(rel < 1e-6, "n={n}: {rel}");
        }
    }

    #[test]
    fn realization_mismatch_is_rejected() {
        let g = RadialGrid::new(1e-2, 10.0, 128).unwrap();
        let f = GridFunction::from_fn(&g, |r| r).unwrap();
        let ctx = GeneratorContext::tilting(1.0).unwrap();
        assert!(matches!(
            apply_generator(Generator::B3, &f, &ctx),
            Err(Error::Parameter(_))
        ));
        assert!(GeneratorContext::schrodinger(1.0, 0.0, 1.0).is_err());
        assert!(GeneratorContext::tilting(0.0).is_err());
    }
}
