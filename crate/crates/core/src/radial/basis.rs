use serde::Serialize;

use crate::error::{param, Result};
use crate::specfun::{laguerre_recurrence, ln_gamma};

/// `c · r^p · e^{−εr} · L_m^a(2εr)`, the shape shared by every radial function
/// in the problem, with value and first two derivatives in closed form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Hydrogenic {
    pub coeff: f64,
    pub power: f64,
    pub epsilon: f64,
    pub degree: usize,
    pub param: f64,
}

impl Hydrogenic {
    pub fn value(&self, r: f64) -> f64 {
        self.coeff * self.envelope(r) * self.polynomial(r)
    }

    /// `r^p e^{−εr}`.
    pub fn envelope(&self, r: f64) -> f64 {
        r.powf(self.power) * (-self.epsilon * r).exp()
    }

    /// `L_m^a(2εr)`.
    pub fn polynomial(&self, r: f64) -> f64 {
        laguerre_recurrence(self.degree, self.param, 2.0 * self.epsilon * r)
    }

    /// `[f, f', f'']` using `d/dx L_m^a = −L_{m−1}^{a+1}`.
    pub fn jet(&self, r: f64) -> [f64; 3] {
        let (m, a, e, p) = (self.degree, self.param, self.epsilon, self.power);
        let x = 2.0 * e * r;
        let l0 = laguerre_recurrence(m, a, x);
        let l1 = if m >= 1 {
            -laguerre_recurrence(m - 1, a + 1.0, x)
        } else {
            0.0
        };
        let l2 = if m >= 2 {
            laguerre_recurrence(m - 2, a + 2.0, x)
        } else {
            0.0
        };
        let h = self.envelope(r);
        let g = p / r - e;
        let h1 = h * g;
        let h2 = h * (g * g - p / (r * r));
        let c = self.coeff;
        [
            c * h * l0,
            c * (h1 * l0 + 2.0 * e * h * l1),
            c * (h2 * l0 + 4.0 * e * h1 * l1 + 4.0 * e * e * h * l2),
        ]
    }
}

/// Which Sturmian family: the upper one carries Bargmann index `γ+1`, the
/// lower one `γ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Component {
    Upper,
    Lower,
}

/// Sturmian function in the dimensionless radius.
///
/// Upper (`n ≥ 1`): `2√(Γ(n)/Γ(n+2γ+1)) (2r)^γ e^{−r} L_{n−1}^{2γ+1}(2r)`.
/// Lower (`n ≥ 0`): `2√(Γ(n+1)/Γ(n+2γ)) (2r)^{γ−1} e^{−r} L_n^{2γ−1}(2r)`.
/// Both families are orthonormal with measure `r dr`.
pub fn sturmian(n: usize, gamma: f64, r: f64, component: Component) -> Result<f64> {
    Ok(sturmian_function(n, gamma, component)?.value(r))
}

pub fn sturmian_function(n: usize, gamma: f64, component: Component) -> Result<Hydrogenic> {
    if !(gamma > 0.0) {
        return param(format!("Sturmian functions need gamma > 0, got {gamma}"));
    }
    let nf = n as f64;
    match component {
        Component::Upper => {
            if n == 0 {
                return param("upper Sturmian index starts at n = 1");
            }
            let norm = 0.5 * (ln_gamma(nf) - ln_gamma(nf + 2.0 * gamma + 1.0));
            Ok(Hydrogenic {
                coeff: 2.0 * (norm + gamma * std::f64::consts::LN_2).exp(),
                power: gamma,
                epsilon: 1.0,
                degree: n - 1,
                param: 2.0 * gamma + 1.0,
            })
        }
        Component::Lower => {
            let norm = 0.5 * (ln_gamma(nf + 1.0) - ln_gamma(nf + 2.0 * gamma));
            Ok(Hydrogenic {
                coeff: 2.0 * (norm + (gamma - 1.0) * std::f64::consts::LN_2).exp(),
                power: gamma - 1.0,
                epsilon: 1.0,
                degree: n,
                param: 2.0 * gamma - 1.0,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{gamma as gamma_fn, integrate_halfline, QuadratureRule};

    #[test]
    fn lowest_upper_sturmian() {
        let g = 0.8;
        for r in [0.1f64, 1.0, 3.0] {
            let expected = 2.0 * (2.0 * r).powf(g) * (-r).exp() / gamma_fn(2.0 * g + 2.0).sqrt();
            assert!((sturmian(1, g, r, Component::Upper).unwrap() - expected).abs() < 1e-14);
        }
    }

    #[test]
    fn second_upper_sturmian_uses_linear_laguerre() {
        // n = 2, γ = 1, r = 1: L_1^3(2) = 2
        let expected = 2.0 * (1.0 / gamma_fn(5.0)).sqrt() * 2.0 * (-1.0f64).exp() * 2.0;
        assert!((sturmian(2, 1.0, 1.0, Component::Upper).unwrap() - expected).abs() < 1e-14);
        assert!(sturmian(0, 1.0, 1.0, Component::Upper).is_err());
        assert!(sturmian(0, 0.0, 1.0, Component::Lower).is_err());
    }

    #[test]
    fn orthonormal_with_radial_measure() {
        // r dr = x dx/4 with x = 2r; integrand is x^{2γ+1} e^{-x} × polynomial
        for (component, shift) in [(Component::Upper, 1.0), (Component::Lower, -1.0)] {
            let g = 1.3;
            let rule = QuadratureRule::gauss_laguerre(30, 2.0 * g + shift).unwrap();
            let first = if component == Component::Upper { 1 } else { 0 };
            for a in first..first + 5 {
                for b in first..first + 5 {
                    let fa = sturmian_function(a, g, component).unwrap();
                    let fb = sturmian_function(b, g, component).unwrap();
                    let ip = integrate_halfline(
                        |x| {
                            let r = 0.5 * x;
                            let strip = x.powf(2.0 * g + shift) * (-x).exp();
                            fa.value(r) * fb.value(r) * r / strip
                        },
                        &rule,
                    )
                    .unwrap()
                        * 0.5;
                    let expected = if a == b { 1.0 } else { 0.0 };
                    assert!((ip - expected).abs() < 1e-12, "{component:?} {a} {b}: {ip}");
                }
            }
        }
    }

    #[test]
    fn jet_matches_finite_differences() {
        let f = Hydrogenic {
            coeff: 1.7,
            power: 2.3,
            epsilon: 0.6,
            degree: 4,
            param: 3.6,
        };
        let r = 2.1;
        let h = 1e-4;
        let [v, d1, d2] = f.jet(r);
        let fp = f.value(r + h);
        let fm = f.value(r - h);
        assert!((v - f.value(r)).abs() < 1e-15);
        assert!((d1 - (fp - fm) / (2.0 * h)).abs() < 1e-7);
        assert!((d2 - (fp - 2.0 * v + fm) / (h * h)).abs() < 1e-5);
    }
}
