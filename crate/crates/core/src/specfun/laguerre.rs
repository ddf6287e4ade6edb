use crate::error::{param, Result};

/// Generalized Laguerre polynomial `L_n^a(x)` by upward recurrence.
pub fn laguerre(n: usize, a: f64, x: f64) -> Result<f64> {
    if !(a > -1.0) {
        return param(format!("Laguerre parameter must exceed -1, got {a}"));
    }
    Ok(laguerre_recurrence(n, a, x))
}

/// Same recurrence with no restriction on `a`. The polynomial is well defined
/// for any real parameter; only orthogonality needs `a > −1`.
pub fn laguerre_recurrence(n: usize, a: f64, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 1.0 + a - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + a - x) * cur - (kf + a) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// `[L_0^a(x), ..., L_{n_max}^a(x)]`.
pub fn laguerre_table(n_max: usize, a: f64, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(1.0);
    if n_max == 0 {
        return out;
    }
    out.push(1.0 + a - x);
    for k in 1..n_max {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + a - x) * out[k] - (kf + a) * out[k - 1]) / (kf + 1.0);
        out.push(next);
    }
    out
}

/// `d/dx L_n^a(x) = −L_{n−1}^{a+1}(x)`.
pub fn laguerre_derivative(n: usize, a: f64, x: f64) -> f64 {
    if n == 0 {
        0.0
    } else {
        -laguerre_recurrence(n - 1, a + 1.0, x)
    }
}

/// `L_n^a(0) = Γ(n+a+1)/(n! Γ(a+1))`, as the finite product `∏ (a+i)/i`.
pub fn laguerre_at_zero(n: usize, a: f64) -> f64 {
    (1..=n).map(|i| (a + i as f64) / i as f64).product()
}

/// `Σ_n L_n^ν(x) yⁿ = exp(−xy/(1−y)) / (1−y)^{ν+1}` for `|y| < 1`.
pub fn laguerre_generating(nu: f64, x: f64, y: f64) -> f64 {
    (-x * y / (1.0 - y)).exp() / (1.0 - y).powf(nu + 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gamma;
    use proptest::prelude::*;

    #[test]
    fn low_orders() {
        assert_eq!(laguerre(0, 3.7, 12.0).unwrap(), 1.0);
        assert_eq!(laguerre(1, 2.0, 1.0).unwrap(), 2.0);
        assert!((laguerre(2, 1.0, 0.0).unwrap() - 3.0).abs() < 1e-15);
        // explicit L_2^a(x) = ((a+1)(a+2) − 2(a+2)x + x²)/2
        let (a, x) = (0.7, 2.3);
        let explicit = ((a + 1.0) * (a + 2.0) - 2.0 * (a + 2.0) * x + x * x) / 2.0;
        assert!((laguerre(2, a, x).unwrap() - explicit).abs() < 1e-14);
        assert!(laguerre(3, -1.0, 1.0).is_err());
    }

    #[test]
    fn value_at_origin_matches_gamma_ratio() {
        for &(n, a) in &[(0usize, 0.3), (2, 1.0), (5, 2.4), (9, 0.5)] {
            let g = gamma(n as f64 + a + 1.0) / (gamma(n as f64 + 1.0) * gamma(a + 1.0));
            assert!((laguerre(n, a, 0.0).unwrap() - g).abs() < 1e-12 * g);
            assert!((laguerre_at_zero(n, a) - g).abs() < 1e-12 * g);
        }
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let (n, a, x) = (6, 1.4, 3.1);
        let h = 1e-5;
        let fd = (laguerre_recurrence(n, a, x + h) - laguerre_recurrence(n, a, x - h)) / (2.0 * h);
        assert!((laguerre_derivative(n, a, x) - fd).abs() < 1e-7);
    }

    #[test]
    fn generating_function_partial_sums() {
        for &(nu, x, y) in &[(0.5, 1.0, 0.5), (3.2, 4.0, -0.5), (1.0, 10.0, 0.3), (2.0, 0.1, 0.45)] {
            let table = laguerre_table(200, nu, x);
            let mut pow = 1.0;
            let mut sum = 0.0;
            for l in table {
                sum += l * pow;
                pow *= y;
            }
            let exact = laguerre_generating(nu, x, y);
            assert!(((sum - exact) / exact).abs() < 1e-10, "nu={nu} x={x} y={y}");
        }
    }

    #[test]
    fn table_matches_single_evaluation() {
        let t = laguerre_table(12, 2.5, 4.2);
        for (n, v) in t.iter().enumerate() {
            assert_eq!(*v, laguerre_recurrence(n, 2.5, 4.2));
        }
    }

    proptest! {
        #[test]
        fn three_term_recurrence(n in 1usize..30, a in 0.0f64..10.0, x in 0.0f64..50.0) {
            let lp = laguerre(n + 1, a, x).unwrap();
            let l = laguerre(n, a, x).unwrap();
            let lm = laguerre(n - 1, a, x).unwrap();
            let nf = n as f64;
            let lhs = (nf + 1.0) * lp;
            let rhs = (2.0 * nf + a + 1.0 - x) * l - (nf + a) * lm;
            let scale = lhs.abs().max(((2.0 * nf + a + 1.0 - x) * l).abs()).max(((nf + a) * lm).abs());
            prop_assert!((lhs - rhs).abs() <= 1e-11 * scale.max(1e-300));
        }
    }
}
