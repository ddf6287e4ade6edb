use crate::error::{param, Error, Result};

const MAX_TERMS: usize = 100_000;

/// Kummer's function `₁F₁(a; b; x)` by direct summation.
///
/// Terminates exactly when `a` is a nonpositive integer; otherwise stops when
/// a term falls below `1e-16` of the running sum. `b` may be a nonpositive
/// integer `−m` only if `a = −n` with `n ≤ m` (the series ends first).
pub fn kummer(a: f64, b: f64, x: f64) -> Result<f64> {
    let a_poly = nonpositive_integer(a);
    if let Some(m) = nonpositive_integer(b) {
        match a_poly {
            Some(n) if n <= m => {}
            _ => return param(format!("1F1 undefined for b = {b} with a = {a}")),
        }
    }
    let mut sum = 1.0;
    let mut term = 1.0;
    let mut small = 0;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        if a_poly.is_some_and(|n| k as u64 >= n) {
            return Ok(sum);
        }
        term *= (a + kf) / (b + kf) * x / (kf + 1.0);
        sum += term;
        if term.abs() <= 1e-16 * sum.abs() && kf > x.abs() {
            small += 1;
            if small >= 3 {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
        if !sum.is_finite() {
            break;
        }
    }
    Err(Error::Numeric(format!("1F1({a}; {b}; {x}) series did not converge")))
}

fn nonpositive_integer(v: f64) -> Option<u64> {
    (v <= 0.0 && v.fract() == 0.0).then(|| (-v) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{gamma, laguerre};

    #[test]
    fn trivial_values() {
        assert_eq!(kummer(0.3, 1.7, 0.0).unwrap(), 1.0);
        assert_eq!(kummer(-1.0, 2.0, 3.0).unwrap(), -0.5);
    }

    #[test]
    fn polynomial_branch_is_laguerre() {
        // 1F1(−n; m+1; x) = m! n!/(m+n)! L_n^m(x)
        for &x in &[0.5, 1.0, 2.0] {
            let lhs = kummer(-2.0, 2.0, x).unwrap();
            let rhs = (1.0 * 2.0 / 6.0) * laguerre(2, 1.0, x).unwrap();
            assert!((lhs - rhs).abs() < 1e-13);
        }
        // non-integer m via gamma functions
        let (n, m, x) = (4.0, 1.6, 3.3);
        let c = gamma(m + 1.0) * gamma(n + 1.0) / gamma(m + n + 1.0);
        let rhs = c * laguerre(4, m, x).unwrap();
        assert!((kummer(-n, m + 1.0, x).unwrap() - rhs).abs() < 1e-12);
    }

    #[test]
    fn exponential_special_case() {
        // 1F1(a; a; x) = e^x
        for &x in &[-2.0, 0.5, 7.0] {
            let v = kummer(1.3, 1.3, x).unwrap();
            assert!((v - f64::exp(x)).abs() < 1e-13 * f64::exp(x).max(1.0));
        }
    }

    #[test]
    fn invalid_denominator() {
        assert!(kummer(0.5, -2.0, 1.0).is_err());
        assert!(kummer(-3.0, -2.0, 1.0).is_err());
        assert!(kummer(-2.0, -2.0, 1.0).is_ok());
    }
}
