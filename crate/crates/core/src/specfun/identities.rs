use serde::Serialize;

use super::laguerre::laguerre_recurrence;
use super::quadrature::{integrate_halfline, QuadratureRule};
use crate::error::{param, Result};
use statrs::function::gamma::ln_gamma;

/// The two Laguerre integrals used for normalization constants.
///
/// * `Squared`: `∫ e^{−x} x^{a+2} [L_{n−1}^a]² dx`, printed value
///   `Γ(n+a)/Γ(n)·[6(n−1)(n+a) + (a+1)(a+2)]`.
/// * `Mixed`: `∫ e^{−x} x^{a+1} L_{n−1}^a L_n^{a−2} dx`, printed value
///   `−Γ(n+a+1)/Γ(n)·(5n+3a−3)`. The printed form does not match the integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LaguerreIdentity {
    Squared = 1,
    Mixed = 2,
}

impl LaguerreIdentity {
    pub fn from_id(id: u32) -> Result<Self> {
        match id {
            1 => Ok(LaguerreIdentity::Squared),
            2 => Ok(LaguerreIdentity::Mixed),
            _ => param(format!("unknown Laguerre identity {id}")),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub id: u32,
    pub n: usize,
    pub a: f64,
    pub closed_form: f64,
    pub quadrature: f64,
    pub discrepancy: f64,
}

impl IdentityReport {
    pub fn relative_discrepancy(&self) -> f64 {
        self.discrepancy / self.quadrature.abs().max(f64::MIN_POSITIVE)
    }
}

pub fn laguerre_identity(id: LaguerreIdentity, n: usize, a: f64) -> Result<IdentityReport> {
    if n == 0 {
        return param("identity index n must be at least 1");
    }
    if !(a > 0.0) {
        return param(format!("identity parameter a must be positive, got {a}"));
    }
    let nf = n as f64;
    // Polynomial parts have degree ≤ 2n; order n + 2 is exact.
    let order = n + 2;
    let (closed_form, quadrature) = match id {
        LaguerreIdentity::Squared => {
            let closed =
                (ln_gamma(nf + a) - ln_gamma(nf)).exp() * (6.0 * (nf - 1.0) * (nf + a) + (a + 1.0) * (a + 2.0));
            let rule = QuadratureRule::gauss_laguerre(order, a + 2.0)?;
            let quad = integrate_halfline(|x| laguerre_recurrence(n - 1, a, x).powi(2), &rule)?;
            (closed, quad)
        }
        LaguerreIdentity::Mixed => {
            let closed = -(ln_gamma(nf + a + 1.0) - ln_gamma(nf)).exp() * (5.0 * nf + 3.0 * a - 3.0);
            let rule = QuadratureRule::gauss_laguerre(order, a + 1.0)?;
            let quad = integrate_halfline(
                |x| laguerre_recurrence(n - 1, a, x) * laguerre_recurrence(n, a - 2.0, x),
                &rule,
            )?;
            (closed, quad)
        }
    };
    Ok(IdentityReport {
        id: id as u32,
        n,
        a,
        closed_form,
        quadrature,
        discrepancy: (closed_form - quadrature).abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn squared_examples() {
        let r = laguerre_identity(LaguerreIdentity::Squared, 1, 1.0).unwrap();
        assert!((r.closed_form - 6.0).abs() < 1e-12);
        assert!((r.quadrature - 6.0).abs() < 1e-12);
        assert!(r.discrepancy < 1e-10);
        let r = laguerre_identity(LaguerreIdentity::Squared, 2, 1.0).unwrap();
        assert!((r.closed_form - 48.0).abs() < 1e-11);
        assert!((r.quadrature - 48.0).abs() < 1e-11);
    }

    #[test]
    fn squared_holds_on_grid() {
        for n in 1..=10 {
            for &a in &[0.5, 1.0, 2.5, 7.0] {
                let r = laguerre_identity(LaguerreIdentity::Squared, n, a).unwrap();
                assert!(r.relative_discrepancy() < 1e-9, "n={n} a={a}: {r:?}");
            }
        }
    }

    #[test]
    fn mixed_printed_form_fails() {
        let r = laguerre_identity(LaguerreIdentity::Mixed, 1, 2.0).unwrap();
        assert!((r.quadrature + 18.0).abs() < 1e-12);
        assert!((r.closed_form + 48.0).abs() < 1e-12);
        assert!((r.discrepancy - 30.0).abs() < 1e-12);
    }

    #[test]
    fn mixed_quadrature_matches_hand_expansion() {
        // n = 2, a = 3: x⁴ (4 − x)(3 − 3x + x²/2) expanded into Γ moments.
        let r = laguerre_identity(LaguerreIdentity::Mixed, 2, 3.0).unwrap();
        let g = |k: i32| (1..=k).map(f64::from).product::<f64>();
        let exact = 12.0 * g(4) - 15.0 * g(5) + 5.0 * g(6) - 0.5 * g(7);
        assert!((r.quadrature - exact).abs() < 1e-9 * exact.abs());
    }

    #[test]
    fn invalid_arguments() {
        assert!(laguerre_identity(LaguerreIdentity::Squared, 0, 1.0).is_err());
        assert!(laguerre_identity(LaguerreIdentity::Mixed, 1, 0.0).is_err());
        assert!(LaguerreIdentity::from_id(3).is_err());
    }
}
