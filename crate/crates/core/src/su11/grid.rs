//! Functions sampled on a logarithmic radial grid, with sixth-order
//! differences in `u = ln r`.

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default exclusion at each end of a valid window: three stencil widths,
/// enough for two chained second-order operators.
pub const BOUNDARY_PAD: usize = 9;

const HALF_WIDTH: usize = 3;
const EDGE_NODES: usize = 8;

/// Fewest points an operator will act on.
pub const MIN_POINTS: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct RadialGrid {
    pub u0: f64,
    /// Step in `u`.
    pub h: f64,
    pub radii: Vec<f64>,
}

impl RadialGrid {
    pub fn new(r_min: f64, r_max: f64, points: usize) -> Result<Arc<Self>> {
        if !(r_min > 0.0 && r_max > r_min) {
            return Err(Error::Parameter(format!("invalid grid range [{r_min}, {r_max}]")));
        }
        if points < MIN_POINTS {
            return Err(Error::Discretization(format!(
                "grid needs at least {MIN_POINTS} points, got {points}"
            )));
        }
        let u0 = r_min.ln();
        let h = (r_max.ln() - u0) / (points - 1) as f64;
        let radii = (0..points).map(|i| (u0 + h * i as f64).exp()).collect();
        Ok(Arc::new(RadialGrid { u0, h, radii }))
    }

    pub fn len(&self) -> usize {
        self.radii.len()
    }

    pub fn is_empty(&self) -> bool {
        self.radii.is_empty()
    }
}

/// Complex samples on a grid. Values outside `window` (a half-open index
/// range) are not meaningful and are stored as zero.
#[derive(Debug, Clone)]
pub struct GridFunction {
    pub grid: Arc<RadialGrid>,
    pub values: Vec<Complex64>,
    pub boundary_pad: usize,
    pub window: (usize, usize),
}

impl GridFunction {
    pub fn from_fn<F: Fn(f64) -> f64>(grid: &Arc<RadialGrid>, f: F) -> Result<Self> {
        let values: Vec<Complex64> = grid.radii.iter().map(|&r| Complex64::new(f(r), 0.0)).collect();
        if values.iter().any(|v| !v.re.is_finite()) {
            return Err(Error::Numeric("non-finite sample in grid function".into()));
        }
        Ok(GridFunction {
            grid: grid.clone(),
            values,
            boundary_pad: BOUNDARY_PAD,
            window: (0, grid.len()),
        })
    }

    fn like(&self, values: Vec<Complex64>, window: (usize, usize)) -> Self {
        GridFunction {
            grid: self.grid.clone(),
            values,
            boundary_pad: self.boundary_pad,
            window,
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Index range entering norms: the window minus the pad at each end.
    pub fn masked(&self) -> std::ops::Range<usize> {
        let lo = self.window.0 + self.boundary_pad;
        let hi = self.window.1.saturating_sub(self.boundary_pad);
        lo..hi.max(lo)
    }

    fn check_window(&self) -> Result<()> {
        if self.window.1 < self.window.0 + MIN_POINTS.min(self.len()) || self.window.1 - self.window.0 < EDGE_NODES {
            return Err(Error::Discretization(format!(
                "valid window [{}, {}) is too narrow for the stencils",
                self.window.0, self.window.1
            )));
        }
        Ok(())
    }

    /// `∂f/∂u` with centered sixth-order differences; the three points
    /// nearest each window edge use one-sided stencils on eight nodes.
    pub fn du(&self) -> Result<Self> {
        self.derivative(1)
    }

    /// `∂²f/∂u²`, same stencil layout as [`GridFunction::du`].
    pub fn duu(&self) -> Result<Self> {
        self.derivative(2)
    }

    fn derivative(&self, order: usize) -> Result<Self> {
        self.check_window()?;
        let (lo, hi) = self.window;
        let f = &self.values;
        let inv = 1.0 / self.grid.h.powi(order as i32);
        let mut out = vec![Complex64::new(0.0, 0.0); f.len()];
        let offsets: Vec<f64> = (-(HALF_WIDTH as i32)..=HALF_WIDTH as i32).map(f64::from).collect();
        let centre = fornberg(0.0, &offsets, order).swap_remove(order);
        let interior = out[lo + HALF_WIDTH..hi - HALF_WIDTH].iter_mut();
        for (slot, stencil) in interior.zip(f[lo..hi].windows(2 * HALF_WIDTH + 1)) {
            *slot = centre.iter().zip(stencil).map(|(w, v)| v * w).sum::<Complex64>() * inv;
        }
        // the right edge is the left edge in v = −u, so d^k/du^k picks up (−1)^k
        let mirror = if order.is_multiple_of(2) { inv } else { -inv };
        let nodes: Vec<f64> = (0..EDGE_NODES).map(|m| m as f64).collect();
        for e in 0..HALF_WIDTH {
            let w = fornberg(e as f64, &nodes, order).swap_remove(order);
            out[lo + e] = w.iter().enumerate().map(|(m, c)| f[lo + m] * *c).sum::<Complex64>() * inv;
            out[hi - 1 - e] = w.iter().enumerate().map(|(m, c)| f[hi - 1 - m] * *c).sum::<Complex64>() * mirror;
        }
        Ok(self.like(out, self.window))
    }

    /// Pointwise `a(r)·f + b(r)·g` on the intersection of windows.
    pub fn combine<A, B>(&self, a: A, other: &GridFunction, b: B) -> Self
    where
        A: Fn(f64) -> Complex64,
        B: Fn(f64) -> Complex64,
    {
        let window = (self.window.0.max(other.window.0), self.window.1.min(other.window.1));
        let mut out = vec![Complex64::new(0.0, 0.0); self.len()];
        let (lo, hi) = window;
        let points = self.grid.radii[lo..hi]
            .iter()
            .zip(&self.values[lo..hi])
            .zip(&other.values[lo..hi]);
        for (slot, ((&r, &f), &g)) in out[lo..hi].iter_mut().zip(points) {
            *slot = a(r) * f + b(r) * g;
        }
        self.like(out, window)
    }

    /// `a(r)·f`.
    pub fn map<A: Fn(f64) -> Complex64>(&self, a: A) -> Self {
        let mut out = vec![Complex64::new(0.0, 0.0); self.len()];
        let (lo, hi) = self.window;
        let points = self.grid.radii[lo..hi].iter().zip(&self.values[lo..hi]);
        for (slot, (&r, &f)) in out[lo..hi].iter_mut().zip(points) {
            *slot = a(r) * f;
        }
        self.like(out, self.window)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        self.map(|_| c)
    }

    pub fn add(&self, other: &GridFunction) -> Self {
        self.combine(|_| Complex64::new(1.0, 0.0), other, |_| Complex64::new(1.0, 0.0))
    }

    pub fn sub(&self, other: &GridFunction) -> Self {
        self.combine(|_| Complex64::new(1.0, 0.0), other, |_| Complex64::new(-1.0, 0.0))
    }

    /// `∫ f̄ g r dr` by the trapezoid rule in `u` over the masked range of
    /// the narrower window.
    pub fn inner(&self, other: &GridFunction) -> Complex64 {
        let lo = self.masked().start.max(other.masked().start);
        let hi = self.masked().end.min(other.masked().end);
        let mut sum = Complex64::new(0.0, 0.0);
        for i in lo..hi {
            let r = self.grid.radii[i];
            sum += self.values[i].conj() * other.values[i] * (r * r);
        }
        sum * self.grid.h
    }

    /// `‖f‖` for measure `r dr` over the masked range of `restrict_to`.
    pub fn norm_on(&self, restrict_to: &GridFunction) -> f64 {
        let lo = self.masked().start.max(restrict_to.masked().start);
        let hi = self.masked().end.min(restrict_to.masked().end);
        let mut sum = 0.0;
        for i in lo..hi {
            let r = self.grid.radii[i];
            sum += self.values[i].norm_sqr() * r * r;
        }
        (sum * self.grid.h).sqrt()
    }

    pub fn norm(&self) -> f64 {
        self.norm_on(self)
    }

    /// `(S_θ f)(r) = e^θ f(e^θ r)`: a shift by `θ` in `u`, resampled with
    /// six-point Lagrange interpolation. Points whose stencil leaves the
    /// source window are dropped from the result's window.
    pub fn scaled(&self, theta: f64) -> Self {
        let h = self.grid.h;
        let (slo, shi) = self.window;
        let n = self.len();
        let factor = theta.exp();
        let nodes: Vec<f64> = (-2..=3).map(f64::from).collect();
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        let mut first = None;
        let mut last = 0;
        for (i, slot) in out.iter_mut().enumerate() {
            let pos = i as f64 + theta / h;
            let j = pos.floor();
            if j < (slo + 2) as f64 || j + 3.0 >= shi as f64 {
                continue;
            }
            let j = j as usize;
            let w = fornberg(pos - j as f64, &nodes, 0).swap_remove(0);
            *slot = w
                .iter()
                .enumerate()
                .map(|(m, c)| self.values[j - 2 + m] * *c)
                .sum::<Complex64>()
                * factor;
            first.get_or_insert(i);
            last = i + 1;
        }
        let window = match first {
            Some(lo) => (lo, last),
            None => (0, 0),
        };
        self.like(out, window)
    }
}

/// Finite-difference weights `c[k][j]` for the `k`-th derivative at `x0`
/// from samples at `nodes`, `k ≤ max_order` (Fornberg's recursion).
pub fn fornberg(x0: f64, nodes: &[f64], max_order: usize) -> Vec<Vec<f64>> {
    let n = nodes.len();
    let mut c = vec![vec![0.0; n]; max_order + 1];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = nodes[0] - x0;
    for i in 1..n {
        let top = i.min(max_order);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = nodes[i] - x0;
        for j in 0..i {
            let c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=top).rev() {
                    c[k][i] = c1 * (k as f64 * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for k in (1..=top).rev() {
                c[k][j] = (c4 * c[k][j] - k as f64 * c[k - 1][j]) / c3;
            }
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(points: usize) -> Arc<RadialGrid> {
        RadialGrid::new(1e-3, 30.0, points).unwrap()
    }

    #[test]
    fn derivatives_of_power_times_exponential() {
        // f = r² e^{−r}: f_u = (2 − r) f, f_uu = ((2 − r)² − r) f
        let g = grid(1024);
        let f = GridFunction::from_fn(&g, |r| r * r * (-r).exp()).unwrap();
        let du = f.du().unwrap();
        let duu = f.duu().unwrap();
        let mut worst: f64 = 0.0;
        for (i, &r) in g.radii.iter().enumerate() {
            let v = f.values[i].re;
            let e1 = (du.values[i].re - (2.0 - r) * v).abs();
            let e2 = (duu.values[i].re - ((2.0 - r).powi(2) - r) * v).abs();
            worst = worst.max((e1 + e2) / (1.0 + r).powi(2));
        }
        assert!(worst < 1e-9, "{worst}");
    }

    #[test]
    fn fornberg_reproduces_textbook_stencils() {
        let c = fornberg(0.0, &[-2.0, -1.0, 0.0, 1.0, 2.0], 2);
        let first = [1.0 / 12.0, -8.0 / 12.0, 0.0, 8.0 / 12.0, -1.0 / 12.0];
        let second = [-1.0 / 12.0, 16.0 / 12.0, -30.0 / 12.0, 16.0 / 12.0, -1.0 / 12.0];
        for j in 0..5 {
            assert!((c[1][j] - first[j]).abs() < 1e-14);
            assert!((c[2][j] - second[j]).abs() < 1e-13);
        }
        // interpolation weights sum to one
        let w = fornberg(0.3, &[-2.0, -1.0, 0.0, 1.0, 2.0, 3.0], 0);
        assert!((w[0].iter().sum::<f64>() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn one_sided_stencils_are_exact_on_sextics() {
        let g = RadialGrid::new(1.0, 2.0, 64).unwrap();
        let u0 = g.u0;
        let f = GridFunction::from_fn(&g, |r| (r.ln() - u0).powi(6)).unwrap();
        let du = f.du().unwrap();
        let duu = f.duu().unwrap();
        for i in [0, 1, 2, 61, 62, 63] {
            let u = g.radii[i].ln() - u0;
            assert!((du.values[i].re - 6.0 * u.powi(5)).abs() < 1e-9, "{i}");
            assert!((duu.values[i].re - 30.0 * u.powi(4)).abs() < 1e-7, "{i}");
        }
    }

    #[test]
    fn scaling_is_a_shift() {
        let g = grid(2048);
        let f = GridFunction::from_fn(&g, |r| r * (-r).exp()).unwrap();
        let theta = std::f64::consts::LN_2;
        let s = f.scaled(theta);
        let (lo, hi) = s.window;
        assert!(lo == 0 && hi < g.len());
        for i in lo..hi {
            let r = g.radii[i];
            let exact = theta.exp() * 2.0 * r * (-2.0 * r).exp();
            assert!((s.values[i].re - exact).abs() < 1e-10);
        }
        let back = s.scaled(-theta);
        assert!(back.window.0 > 0);
        let diff = back.sub(&f);
        assert!(diff.norm() < 1e-10 * f.norm());
    }

    #[test]
    fn inner_product_normalization() {
        // ∫ (r e^{−r})² r dr = 3!/16
        let g = RadialGrid::new(1e-5, 60.0, 2048).unwrap();
        let f = GridFunction::from_fn(&g, |r| r * (-r).exp()).unwrap();
        assert!((f.inner(&f).re - 6.0 / 16.0).abs() < 1e-10);
    }

    #[test]
    fn coarse_grid_is_rejected() {
        assert!(matches!(RadialGrid::new(1e-3, 1.0, 32), Err(Error::Discretization(_))));
    }
}
