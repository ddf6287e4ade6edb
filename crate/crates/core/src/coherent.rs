//! Perelomov coherent states built on the `n_r = 0` level.
//!
//! The radial pair is the displacement orbit of the lowest Sturmians, upper
//! family with Bargmann index `k = γ+1` starting at `n = 1`, lower family with
//! `k = γ` starting at `n = 0`, dilated to the physical scale `εr` and
//! multiplied by `r`. The series sums the orbit directly; the closed form is
//! its resummation through the Laguerre generating function.

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{DerivedQuantities, ModelParams, QuantumNumbers, Sign};
use crate::radial::{sturmian_function, Component, RowResidual};
use crate::report::{CheckKind, CheckRecord};
use crate::specfun::{integrate_halfline, ln_gamma, QuadratureRule};
use crate::spectrum::{energy_level, EnergyLevel};
use crate::tolerances;

pub const SUITE: &str = "coherent";

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoherentParams {
    pub xi: Complex64,
    pub params: ModelParams,
    /// `n_r` is ignored; the orbit starts at `n_r = 0`.
    pub qn: QuantumNumbers,
    pub sign_e: Sign,
    pub truncation: usize,
}

impl CoherentParams {
    pub fn new(
        xi: Complex64,
        params: ModelParams,
        qn: QuantumNumbers,
        sign_e: Sign,
        truncation: usize,
    ) -> Result<Self> {
        params.validate()?;
        if !(xi.norm() < 1.0) {
            return Err(Error::Parameter(format!("coherent parameter needs |ξ| < 1, got {xi}")));
        }
        if truncation < 1 {
            return Err(Error::Parameter("series truncation must be at least 1".into()));
        }
        Ok(CoherentParams {
            xi,
            params,
            qn: qn.with_n_r(0),
            sign_e,
            truncation,
        })
    }

    pub fn with_xi(&self, xi: Complex64) -> Result<Self> {
        Self::new(xi, self.params, self.qn, self.sign_e, self.truncation)
    }

    pub fn ground_level(&self) -> Result<EnergyLevel> {
        let level = energy_level(&self.params, &self.qn, self.sign_e);
        if !level.is_valid() {
            return Err(Error::State(format!(
                "n_r = 0 is not a bound state ({})",
                level.reason_codes()
            )));
        }
        Ok(level)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CoherentMode {
    Closed,
    Series,
}

/// `c_s = (1−|ξ|²)^k √(Γ(s+2k)/(s!Γ(2k))) ξ^s` for `s = 0..=n`.
pub fn perelomov_fock(k: f64, xi: Complex64, n: usize) -> Result<Vec<Complex64>> {
    if !(k > 0.0) {
        return Err(Error::Parameter(format!("Bargmann index must be positive, got {k}")));
    }
    if !(xi.norm() < 1.0) {
        return Err(Error::Parameter(format!("coherent parameter needs |ξ| < 1, got {xi}")));
    }
    let mut out = Vec::with_capacity(n + 1);
    let mut c = Complex64::new((1.0 - xi.norm_sqr()).powf(k), 0.0);
    for s in 0..=n {
        out.push(c);
        c *= xi * perelomov_step(k, s as f64);
    }
    Ok(out)
}

/// `|c_{s+1}/c_s| / |ξ| = √((s+2k)/(s+1))`.
fn perelomov_step(k: f64, s: f64) -> f64 {
    ((s + 2.0 * k) / (s + 1.0)).sqrt()
}

/// Working precision of the series, in bits. The partial sums cancel by up
/// to `e^{εr(1+ξ)/(1−ξ)}`, far beyond what `f64` can carry at large `εr`.
pub const SERIES_PRECISION_BITS: usize = 256;

type Wide = FBig<HalfEven, 2>;

fn wide(x: f64) -> Wide {
    Wide::try_from(x)
        .expect("finite input")
        .with_precision(SERIES_PRECISION_BITS)
        .value()
}

fn narrow(x: &Wide) -> f64 {
    x.to_f64().value()
}

#[derive(Debug, Clone)]
struct WideComplex {
    re: Wide,
    im: Wide,
}

impl WideComplex {
    fn from_f64(z: Complex64) -> Self {
        WideComplex {
            re: wide(z.re),
            im: wide(z.im),
        }
    }

    fn mul(&self, o: &WideComplex) -> Self {
        WideComplex {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    fn scale(&self, x: &Wide) -> Self {
        WideComplex {
            re: &self.re * x,
            im: &self.im * x,
        }
    }

    fn to_f64(&self) -> Complex64 {
        Complex64::new(narrow(&self.re), narrow(&self.im))
    }
}

/// Series weights `c_s·N_s` for one Sturmian family, `s = 0..=n`, with `k`
/// its Bargmann index and `first` the Sturmian of index 0. Successive
/// weights follow the Perelomov step and the Sturmian normalization step
/// `N_{s+1}/N_s = √((s+1)/(s+2k))`, both at full working precision.
fn series_weights(k: f64, xi: Complex64, n: usize, first: f64) -> Result<Vec<WideComplex>> {
    let c0 = perelomov_fock(k, xi, 0)?[0];
    let xi_w = WideComplex::from_f64(xi);
    let two_k = wide(2.0 * k);
    let one = wide(1.0);
    let mut w = WideComplex::from_f64(c0 * first);
    let mut out = Vec::with_capacity(n + 1);
    for s in 0..=n {
        let sf = wide(s as f64);
        let up = ((&sf + &two_k) / (&sf + &one)).sqrt();
        let norm = ((&sf + &one) / (&sf + &two_k)).sqrt();
        let next = w.mul(&xi_w).scale(&(up * norm));
        out.push(w);
        w = next;
    }
    Ok(out)
}

/// `Σ w_s L_s^a(y)` with the three-term recurrence at working precision.
fn laguerre_series(weights: &[WideComplex], a: f64, y: f64) -> Complex64 {
    let (a, y) = (wide(a), wide(y));
    let one = wide(1.0);
    let two = wide(2.0);
    let mut acc = WideComplex {
        re: wide(0.0),
        im: wide(0.0),
    };
    let mut prev = wide(0.0);
    let mut cur = wide(1.0);
    for (s, w) in weights.iter().enumerate() {
        let t = w.scale(&cur);
        acc = WideComplex {
            re: acc.re + t.re,
            im: acc.im + t.im,
        };
        let sf = wide(s as f64);
        let next = ((&two * &sf + &one + &a - &y) * &cur - (&sf + &a) * &prev) / (&sf + &one);
        prev = cur;
        cur = next;
    }
    acc.to_f64()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoherentRadial {
    pub f: Complex64,
    pub g: Complex64,
}

/// Radial coherent pair for fixed `ξ` and mode, ready for sampling.
#[derive(Debug, Clone)]
pub struct CoherentProfile {
    pub gamma: f64,
    pub epsilon: f64,
    pub xi: Complex64,
    pub mode: CoherentMode,
    /// Series mode: `c_s` times the Sturmian normalization, per family.
    upper_weights: Vec<WideComplex>,
    lower_weights: Vec<WideComplex>,
}

fn closed_branch(xi: Complex64) -> Result<f64> {
    if xi.im != 0.0 || xi.re < 0.0 {
        return Err(Error::Unsupported(format!(
            "closed form is evaluated for real ξ in [0, 1) only, got {xi}"
        )));
    }
    Ok(xi.re)
}

impl CoherentProfile {
    pub fn new(cp: &CoherentParams, mode: CoherentMode) -> Result<Self> {
        let level = cp.ground_level()?;
        let (gamma, epsilon, xi) = (level.gamma, level.epsilon, cp.xi);
        let (mut upper_weights, mut lower_weights) = (Vec::new(), Vec::new());
        match mode {
            CoherentMode::Closed => {
                closed_branch(xi)?;
            }
            CoherentMode::Series => {
                let n = cp.truncation;
                let upper0 = sturmian_function(1, gamma, Component::Upper)?.coeff;
                let lower0 = sturmian_function(0, gamma, Component::Lower)?.coeff;
                upper_weights = series_weights(gamma + 1.0, xi, n, upper0)?;
                lower_weights = series_weights(gamma, xi, n, lower0)?;
            }
        }
        Ok(CoherentProfile {
            gamma,
            epsilon,
            xi,
            mode,
            upper_weights,
            lower_weights,
        })
    }

    /// Decay rate `ε(1+ξ)/(1−ξ)` of the closed form (real `ξ`).
    pub fn decay_rate(&self) -> Result<f64> {
        let x = closed_branch(self.xi)?;
        Ok(self.epsilon * (1.0 + x) / (1.0 - x))
    }

    /// Closed-form prefactors of `(2ε)^γ r^{γ+1} e^{−κr}` and
    /// `(2ε)^{γ−1} r^γ e^{−κr}`.
    fn closed_prefactors(&self) -> Result<(f64, f64)> {
        let x = closed_branch(self.xi)?;
        let g = self.gamma;
        let p = 1.0 - x * x;
        let pf = 2.0 * p.powf(g + 1.0) / ((0.5 * ln_gamma(2.0 * g + 2.0)).exp() * (1.0 - x).powf(2.0 * g + 2.0));
        let pg = 2.0 * p.powf(g) / ((0.5 * ln_gamma(2.0 * g)).exp() * (1.0 - x).powf(2.0 * g));
        Ok((pf, pg))
    }

    pub fn at(&self, r: f64) -> Result<CoherentRadial> {
        let (g, eps) = (self.gamma, self.epsilon);
        match self.mode {
            CoherentMode::Closed => {
                let (pf, pg) = self.closed_prefactors()?;
                let e = (-self.decay_rate()? * r).exp();
                let f = pf * (2.0 * eps).powf(g) * r.powf(g + 1.0) * e;
                let gv = pg * (2.0 * eps).powf(g - 1.0) * r.powf(g) * e;
                Ok(CoherentRadial {
                    f: f.into(),
                    g: gv.into(),
                })
            }
            CoherentMode::Series => {
                let x = eps * r;
                let su = laguerre_series(&self.upper_weights, 2.0 * g + 1.0, 2.0 * x);
                let sl = laguerre_series(&self.lower_weights, 2.0 * g - 1.0, 2.0 * x);
                let env = (-x).exp();
                Ok(CoherentRadial {
                    f: su * r * x.powf(g) * env,
                    g: sl * r * x.powf(g - 1.0) * env,
                })
            }
        }
    }
}

pub fn coherent_radial(cp: &CoherentParams, mode: CoherentMode, r: f64) -> Result<CoherentRadial> {
    CoherentProfile::new(cp, mode)?.at(r)
}

/// Physical coherent spinor `(F₊, G₋) = 𝕄·(C F, D G)` with the closed radial
/// pair and `D/C` fixed by the small-`r` limit of the first-order system.
#[derive(Debug, Clone, Serialize)]
pub struct CoherentSpinor {
    pub gamma: f64,
    pub epsilon: f64,
    pub xi: f64,
    /// Normalization enforcing `∫(1+λ²) r (F₊² + G₋²) dr = 1`.
    pub c_n_quadrature: f64,
    /// The printed closed form; `None` when its radicand is negative.
    pub c_n_closed: Option<f64>,
    pub c_n_relative_gap: Option<f64>,
    /// `D_n/C_n`.
    pub d_ratio: f64,
    s1: f64,
    #[serde(skip)]
    derived: DerivedQuantities,
    #[serde(skip)]
    profile: CoherentProfile,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoherentSample {
    pub r: f64,
    pub f_coh: f64,
    pub g_coh: f64,
    pub f_plus: f64,
    pub g_minus: f64,
}

impl CoherentSpinor {
    pub fn new(cp: &CoherentParams) -> Result<Self> {
        let level = cp.ground_level()?;
        let derived = level.derived()?;
        let lambda_factor = derived
            .lambda_sq_plus_one
            .ok_or_else(|| Error::NormalizationUndefined("1 + λ² is undefined for k = 0".into()))?;
        let profile = CoherentProfile::new(cp, CoherentMode::Closed)?;
        let (g, eps, x) = (level.gamma, level.epsilon, cp.xi.re);
        let d_ratio = 2.0 * eps * (1.0 - x * x) * (2.0 * g + 1.0) / ((1.0 - x).powi(2) * derived.eta)
            * (0.5 * (ln_gamma(2.0 * g) - ln_gamma(2.0 * g + 2.0))).exp();
        let mut spinor = CoherentSpinor {
            gamma: g,
            epsilon: eps,
            xi: x,
            c_n_quadrature: 1.0,
            c_n_closed: None,
            c_n_relative_gap: None,
            d_ratio,
            s1: level.params.s1,
            derived,
            profile,
        };
        let norm = spinor.relativistic_norm(lambda_factor)?;
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::Numeric(format!("coherent norm {norm} is not positive")));
        }
        spinor.c_n_quadrature = 1.0 / norm.sqrt();
        spinor.c_n_closed = spinor.printed_c_n(&level, lambda_factor);
        spinor.c_n_relative_gap = spinor
            .c_n_closed
            .map(|p| (p - spinor.c_n_quadrature).abs() / spinor.c_n_quadrature);
        Ok(spinor)
    }

    fn diagonal(&self) -> f64 {
        self.derived.gamma_minus_j
    }

    pub fn sample(&self, r: f64) -> Result<CoherentSample> {
        Ok(self.assemble(r, self.profile.at(r)?))
    }

    fn assemble(&self, r: f64, radial: CoherentRadial) -> CoherentSample {
        let f = self.c_n_quadrature * radial.f.re;
        let g = self.c_n_quadrature * self.d_ratio * radial.g.re;
        let (a, s1) = (self.diagonal(), self.s1);
        CoherentSample {
            r,
            f_coh: f,
            g_coh: g,
            f_plus: a * f - s1 * g,
            g_minus: s1 * f + a * g,
        }
    }

    /// `∫(1+λ²) r (F₊² + G₋²) dr` at the current `C_n`, by Gauss–Laguerre in
    /// `x = 2κr`. The integrand is `r^{2γ+1} e^{−2κr}` times a quadratic.
    fn relativistic_norm(&self, lambda_factor: f64) -> Result<f64> {
        let two_kappa = 2.0 * self.profile.decay_rate()?;
        let rule = QuadratureRule::gauss_laguerre(6, 2.0 * self.gamma + 1.0)?;
        let g = self.gamma;
        let integral = integrate_halfline(
            |x| {
                let r = x / two_kappa;
                let s = self.sample(r).expect("closed branch checked at construction");
                // strip the weight r^{2γ+1} e^{−2κr} carried by the rule
                let w = r.powf(2.0 * g) * (-two_kappa * r).exp();
                (s.f_plus * s.f_plus + s.g_minus * s.g_minus) / w
            },
            &rule,
        )?;
        Ok(lambda_factor * integral / two_kappa.powf(2.0 * g + 2.0))
    }

    /// `[ρε²(1−ξ²)^{2γ} / ((1+λ²)2γ(γρ−j)(1−|ξ|²)^{2γ+2}(σ′+Θ′))]^{1/2}` with
    /// `σ′ = (2γ+1)²/(η²(1−ξ²)²)` and
    /// `Θ′ = Γ(2γ+4)/((2ε)²Γ(2γ+2)(1+ξ)⁴)`.
    fn printed_c_n(&self, level: &EnergyLevel, lambda_factor: f64) -> Option<f64> {
        let (g, eps, x) = (self.gamma, self.epsilon, self.xi);
        let rho = level.params.rho;
        let gamma_rho_minus_j = rho * self.diagonal();
        let sigma = (2.0 * g + 1.0).powi(2) / (self.derived.eta.powi(2) * (1.0 - x * x).powi(2));
        let theta =
            (ln_gamma(2.0 * g + 4.0) - ln_gamma(2.0 * g + 2.0)).exp() / ((2.0 * eps).powi(2) * (1.0 + x).powi(4));
        let p = 1.0 - x * x;
        let radicand = rho * eps * eps * p.powf(2.0 * g)
            / (lambda_factor * 2.0 * g * gamma_rho_minus_j * p.powf(2.0 * g + 2.0) * (sigma + theta));
        (radicand > 0.0).then(|| radicand.sqrt())
    }
}

impl CoherentSpinor {
    /// The decoupled first-order system evaluated on `(C F, D G)`:
    /// `F' + (γ/r − β)F − ηG` and `−G' + (γ/r − β)G + (τ − s√(E²−k²))F`.
    pub fn coupled_residual(&self, r: f64) -> Result<[RowResidual; 2]> {
        let s = self.sample(r)?;
        let d = &self.derived;
        let kappa = self.profile.decay_rate()?;
        let df = ((self.gamma + 1.0) / r - kappa) * s.f_coh;
        let dg = (self.gamma / r - kappa) * s.g_coh;
        let w = d.gamma / r - d.beta;
        // η = s√(E²−k²) + τ, so τ − s√(E²−k²) = 2τ − η
        let lower = 2.0 * d.tau - d.eta;
        Ok([
            RowResidual::of(&[df, w * s.f_coh, -d.eta * s.g_coh]),
            RowResidual::of(&[-dg, w * s.g_coh, lower * s.f_coh]),
        ])
    }

    /// The relativistic norm by the trapezoid rule in `ln r`, independent of
    /// the Gauss–Laguerre rule that fixed `C_n`.
    pub fn norm_trapezoid(&self, points: usize) -> Result<f64> {
        let lf = self
            .derived
            .lambda_sq_plus_one
            .ok_or_else(|| Error::NormalizationUndefined("1 + λ² is undefined for k = 0".into()))?;
        let kappa = self.profile.decay_rate()?;
        let radii = crate::radial::log_space(1e-8 / kappa, 80.0 / kappa, points)?;
        let h = (radii[points - 1] / radii[0]).ln() / (points - 1) as f64;
        let mut sum = 0.0;
        for (i, &r) in radii.iter().enumerate() {
            let s = self.sample(r)?;
            let w = if i == 0 || i + 1 == points { 0.5 } else { 1.0 };
            sum += w * r * r * (s.f_plus * s.f_plus + s.g_minus * s.g_minus);
        }
        Ok(lf * sum * h)
    }
}

pub fn coherent_spinor(cp: &CoherentParams, r: f64) -> Result<(CoherentSample, CoherentSpinor)> {
    let spinor = CoherentSpinor::new(cp)?;
    Ok((spinor.sample(r)?, spinor))
}

/// Samples on `radii` with the radial pair from `mode`; `C_n` and `D_n/C_n`
/// always come from the closed form.
pub fn coherent_samples(cp: &CoherentParams, mode: CoherentMode, radii: &[f64]) -> Result<Vec<CoherentSample>> {
    let spinor = CoherentSpinor::new(cp)?;
    let profile = CoherentProfile::new(cp, mode)?;
    radii.iter().map(|&r| Ok(spinor.assemble(r, profile.at(r)?))).collect()
}

/// Radii on which series and closed form are compared, in units of
/// `1/max(ε, 1)`. Beyond `εr ≈ 10` the closed form at `ξ = 0.5` sits below
/// the individual series terms by more than a 200-term truncation resolves.
pub const COMPARISON_WINDOW: (f64, f64) = (0.1, 10.0);

pub fn comparison_radii(epsilon: f64, points: usize) -> Result<Vec<f64>> {
    let unit = epsilon.max(1.0);
    crate::radial::log_space(COMPARISON_WINDOW.0 / unit, COMPARISON_WINDOW.1 / unit, points)
}
pub const COMPARISON_XI: [f64; 3] = [0.1, 0.3, 0.5];
pub const DEFAULT_TRUNCATION: usize = 200;

/// `max |S(r) − C(r)|/|C(r)|` over both components on `radii`.
pub fn series_closed_deviation(cp: &CoherentParams, radii: &[f64]) -> Result<f64> {
    let closed = CoherentProfile::new(cp, CoherentMode::Closed)?;
    let series = CoherentProfile::new(cp, CoherentMode::Series)?;
    let mut worst: f64 = 0.0;
    for &r in radii {
        let c = closed.at(r)?;
        let s = series.at(r)?;
        worst = worst
            .max((s.f - c.f).norm() / c.f.norm())
            .max((s.g - c.g).norm() / c.g.norm());
    }
    Ok(worst)
}

/// `max_r |a(r)/b(r) − a(r₀)/b(r₀)| / |a(r₀)/b(r₀)|`.
fn ratio_spread<A: Fn(f64) -> f64, B: Fn(f64) -> f64>(a: A, b: B, radii: &[f64]) -> f64 {
    let base = a(radii[0]) / b(radii[0]);
    radii
        .iter()
        .map(|&r| ((a(r) / b(r)) - base).abs() / base.abs())
        .fold(0.0, f64::max)
}

/// The coherent-state verification suite for one parameter set.
pub fn verify(cp: &CoherentParams) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    let radii = comparison_radii(cp.ground_level()?.epsilon, 60)?;

    let mut dev: f64 = 0.0;
    for x in COMPARISON_XI {
        let p = CoherentParams {
            truncation: DEFAULT_TRUNCATION,
            ..cp.with_xi(x.into())?
        };
        dev = dev.max(series_closed_deviation(&p, &radii)?);
    }
    out.push(CheckRecord::gating(
        SUITE,
        "series (N=200) vs closed form, xi in {0.1,0.3,0.5}",
        dev,
        tolerances::COHERENT_SERIES,
    ));

    let level = cp.ground_level()?;
    let k = level.gamma + 1.0;
    let fock_half = perelomov_fock(1.0, Complex64::new(0.5, 0.0), 100)?;
    let mut fock_norm = (fock_half.iter().map(|c| c.norm_sqr()).sum::<f64>() - 1.0).abs();
    for xi in [Complex64::new(0.3, 0.0), Complex64::new(0.2, -0.4)] {
        let c = perelomov_fock(k, xi, 400)?;
        fock_norm = fock_norm.max((c.iter().map(|c| c.norm_sqr()).sum::<f64>() - 1.0).abs());
    }
    out.push(CheckRecord::gating(
        SUITE,
        "Fock coefficients sum |c_s|^2 = 1",
        fock_norm,
        tolerances::FOCK_NORM,
    ));
    out.push(CheckRecord::gating(
        SUITE,
        "k=1, xi=0.5: c_0 = 0.75",
        (fock_half[0].re - 0.75).abs(),
        1e-15,
    ));

    let half = CoherentProfile::new(&cp.with_xi(0.5.into())?, CoherentMode::Closed)?;
    let rate = half.decay_rate()?;
    let numeric = {
        let (r0, r1) = (8.0 / level.epsilon, 9.0 / level.epsilon);
        let f0 = half.at(r0)?.f.re / r0.powf(level.gamma + 1.0);
        let f1 = half.at(r1)?.f.re / r1.powf(level.gamma + 1.0);
        (f0 / f1).ln() / (r1 - r0)
    };
    out.push(CheckRecord::gating(
        SUITE,
        "decay rate at xi=0.5 equals 3 epsilon",
        (numeric - 3.0 * level.epsilon).abs() / rate,
        1e-12,
    ));

    // ξ = 0 against the n_r = 0 eigenstate
    let zero = CoherentProfile::new(&cp.with_xi(0.0.into())?, CoherentMode::Closed)?;
    let eigen = crate::radial::RadialState::with_amplitude(&level, 1.0)?;
    let f_spread = ratio_spread(|r| zero.at(r).map_or(f64::NAN, |v| v.f.re), |r| eigen.f(r), &radii);
    let g_spread = ratio_spread(|r| zero.at(r).map_or(f64::NAN, |v| v.g.re), |r| eigen.g(r), &radii);
    out.push(CheckRecord::gating(
        SUITE,
        "xi=0 upper component proportional to n_r=0 eigenstate",
        f_spread,
        tolerances::PROPORTIONALITY,
    ));
    out.push(CheckRecord::new(
        SUITE,
        "xi=0 lower component proportional to n_r=0 eigenstate",
        g_spread,
        tolerances::PROPORTIONALITY,
        CheckKind::DocumentedDivergence,
    ));

    match CoherentSpinor::new(&cp.with_xi(cp.xi.re.max(0.0).into())?) {
        Ok(spinor) => {
            let unit = spinor.norm_trapezoid(4000)?;
            out.push(CheckRecord::gating(
                SUITE,
                "spinor norm with C_n from quadrature",
                (unit - 1.0).abs(),
                tolerances::NORMALIZATION,
            ));
            let coupled = radii
                .iter()
                .map(|&r| {
                    spinor
                        .coupled_residual(r)
                        .map(|rows| rows[0].relative().max(rows[1].relative()))
                })
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .fold(0.0, f64::max);
            out.push(CheckRecord::new(
                SUITE,
                "coherent pair satisfies the first-order system",
                coupled,
                tolerances::CLOSED_FORM_RESIDUAL,
                CheckKind::DocumentedDivergence,
            ));
            out.push(CheckRecord::new(
                SUITE,
                "printed C_n vs quadrature (relative gap)",
                spinor.c_n_relative_gap.unwrap_or(f64::INFINITY),
                tolerances::NORMALIZATION,
                CheckKind::Diagnostic,
            ));
        }
        Err(Error::NormalizationUndefined(_)) => {}
        Err(e) => return Err(e),
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn context(xi: f64) -> CoherentParams {
        let p = ModelParams::new(1.0, 4.0, 0.8, 0.7, 0.1).unwrap();
        CoherentParams::new(
            xi.into(),
            p,
            QuantumNumbers::new(1, 0.3, Sign::Plus, 0),
            Sign::Plus,
            200,
        )
        .unwrap()
    }

    #[test]
    fn fock_examples() {
        let c = perelomov_fock(1.0, Complex64::new(0.0, 0.0), 5).unwrap();
        assert_eq!(c[0], Complex64::new(1.0, 0.0));
        assert!(c[1..].iter().all(|v| v.norm() == 0.0));
        let c = perelomov_fock(1.0, Complex64::new(0.5, 0.0), 100).unwrap();
        assert!((c[0].re - 0.75).abs() < 1e-16);
        let total: f64 = c.iter().map(|v| v.norm_sqr()).sum();
        assert!((total - 1.0).abs() < 1e-12);
        assert!(perelomov_fock(0.0, Complex64::new(0.1, 0.0), 3).is_err());
    }

    #[test]
    fn fock_coefficients_match_gamma_formula() {
        let k = 1.7;
        let xi = Complex64::new(0.3, 0.2);
        let c = perelomov_fock(k, xi, 30).unwrap();
        for (s, v) in c.iter().enumerate() {
            let sf = s as f64;
            let mag = (0.5 * (ln_gamma(sf + 2.0 * k) - ln_gamma(sf + 1.0) - ln_gamma(2.0 * k))).exp();
            let expect = xi.powu(s as u32) * (1.0 - xi.norm_sqr()).powf(k) * mag;
            assert!((v - expect).norm() < 1e-13 * expect.norm(), "s={s}");
        }
    }

    #[test]
    fn series_matches_closed_form() {
        let radii = crate::radial::log_space(0.1, 10.0, 40).unwrap();
        for xi in COMPARISON_XI {
            let dev = series_closed_deviation(&context(xi), &radii).unwrap();
            assert!(dev < 1e-10, "ξ={xi}: {dev}");
        }
    }

    #[test]
    fn complex_xi_only_in_series_mode() {
        let cp = context(0.0).with_xi(Complex64::new(0.2, 0.1)).unwrap();
        assert!(coherent_radial(&cp, CoherentMode::Series, 1.0).is_ok());
        assert!(matches!(
            coherent_radial(&cp, CoherentMode::Closed, 1.0),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(
            context(0.0).with_xi(Complex64::new(1.0, 0.0)),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn closed_form_decay_rate() {
        let cp = context(0.5);
        let prof = CoherentProfile::new(&cp, CoherentMode::Closed).unwrap();
        assert!((prof.decay_rate().unwrap() - 3.0 * prof.epsilon).abs() < 1e-15);
    }

    #[test]
    fn spinor_norm_matches_exact_integral() {
        // F₊² + G₋² = C²P²(a² + s1²)(r² + b²) r^{2γ} e^{−2κr} with b = (2γ+1)/η
        for xi in [0.0, 0.3, 0.6] {
            let cp = context(xi);
            let sp = CoherentSpinor::new(&cp).unwrap();
            let level = cp.ground_level().unwrap();
            let d = level.derived().unwrap();
            let (g, kappa) = (sp.gamma, sp.profile.decay_rate().unwrap());
            let b = (2.0 * g + 1.0) / d.eta;
            let (pf, _) = sp.profile.closed_prefactors().unwrap();
            let pre = pf * (2.0 * sp.epsilon).powf(g);
            let a = d.gamma_minus_j;
            let s1 = cp.params.s1;
            let two_k = 2.0 * kappa;
            let exact = d.lambda_sq_plus_one.unwrap()
                * pre
                * pre
                * (a * a + s1 * s1)
                * ((ln_gamma(2.0 * g + 4.0)).exp() / two_k.powf(2.0 * g + 4.0)
                    + b * b * (ln_gamma(2.0 * g + 2.0)).exp() / two_k.powf(2.0 * g + 2.0));
            let c = 1.0 / exact.sqrt();
            assert!((sp.c_n_quadrature - c).abs() < 1e-12 * c, "ξ={xi}");
            assert!((sp.norm_trapezoid(4000).unwrap() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn matrix_form_matches_transform() {
        let cp = context(0.4);
        let sp = CoherentSpinor::new(&cp).unwrap();
        let d = cp.ground_level().unwrap().derived().unwrap();
        let (a, s1, g) = (d.gamma_minus_j, cp.params.s1, sp.gamma);
        let b = (2.0 * g + 1.0) / d.eta;
        for r in [0.2, 1.0, 4.0] {
            let s = sp.sample(r).unwrap();
            let ratio = s.f_plus / (a * r - s1 * b);
            assert!((s.g_minus / (s1 * r + a * b) - ratio).abs() < 1e-12 * ratio.abs());
            assert!((s.g_coh / s.f_coh - b / r).abs() < 1e-12 * b / r);
        }
    }

    #[test]
    fn suite_outcomes() {
        let recs = verify(&context(0.3)).unwrap();
        for r in &recs {
            assert!(r.pass, "{}: {:e}", r.check, r.residual);
        }
        assert!(recs.iter().any(|r| r.kind == CheckKind::DocumentedDivergence));
    }

    #[test]
    fn zero_momentum_has_no_spinor_normalization() {
        let p = ModelParams::new(1.0, 4.0, 0.8, 0.7, 0.1).unwrap();
        let cp = CoherentParams::new(
            0.2.into(),
            p,
            QuantumNumbers::new(1, 0.0, Sign::Plus, 0),
            Sign::Plus,
            50,
        )
        .unwrap();
        assert!(matches!(
            CoherentSpinor::new(&cp),
            Err(Error::NormalizationUndefined(_))
        ));
        assert!(verify(&cp).unwrap().iter().all(|r| r.pass));
    }
}
