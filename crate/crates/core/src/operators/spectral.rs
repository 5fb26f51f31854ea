//! Dense Hermitian spectral calculus: Fermi projections, switch functions and `u_Delta`.

use std::f64::consts::TAU;

use faer::{Mat, Side as Triangle};
use num_complex::Complex64 as C64;
use serde::Serialize;

use super::{LatticeOperator, OpMatrix};
use crate::{Error, Result};

/// Eigendecomposition `H = V diag(E) V*` with ascending `E`.
#[derive(Clone, Debug)]
pub struct SpectralData {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Mat<C64>,
    pub source: LatticeOperator,
}

impl SpectralData {
    pub fn compute(op: &LatticeOperator) -> Result<Self> {
        let h = op.matrix.to_dense();
        let evd = h.self_adjoint_eigen(Triangle::Lower).map_err(|e| Error::Eigen(format!("{e:?}")))?;
        let eigenvalues: Vec<f64> = evd.S().column_vector().iter().map(|z| z.re).collect();
        debug_assert!(eigenvalues.windows(2).all(|w| w[0] <= w[1]));
        Ok(Self { eigenvalues, eigenvectors: evd.U().to_owned(), source: op.clone() })
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `max |H V - V diag(E)| / max |H|`.
    pub fn residual(&self) -> f64 {
        let h = self.source.matrix.to_dense();
        let v = &self.eigenvectors;
        let hv = &h * v;
        let mut worst: f64 = 0.0;
        for j in 0..v.ncols() {
            for i in 0..v.nrows() {
                worst = worst.max((hv[(i, j)] - v[(i, j)] * self.eigenvalues[j]).norm());
            }
        }
        worst / self.source.matrix.max_abs().max(f64::MIN_POSITIVE)
    }

    /// `sum_{k in modes} f(E_k) v_k v_k*`.
    pub fn partial_function(&self, modes: &[usize], f: impl Fn(f64) -> C64) -> Mat<C64> {
        let n = self.dim();
        let v = &self.eigenvectors;
        let left = Mat::from_fn(n, modes.len(), |i, c| v[(i, modes[c])] * f(self.eigenvalues[modes[c]]));
        let right = Mat::from_fn(n, modes.len(), |i, c| v[(i, modes[c])]);
        &left * right.adjoint()
    }

    /// `f(H)` as a dense operator.
    pub fn function(&self, f: impl Fn(f64) -> C64) -> LatticeOperator {
        let all: Vec<usize> = (0..self.dim()).collect();
        LatticeOperator::new(self.source.window.clone(), OpMatrix::Dense(self.partial_function(&all, f)))
    }

    pub fn modes_in(&self, lo: f64, hi: f64) -> Vec<usize> {
        (0..self.dim()).filter(|&k| lo < self.eigenvalues[k] && self.eigenvalues[k] < hi).collect()
    }
}

/// `V diag(1_{E <= mu}) V*`.
pub fn fermi_projection(s: &SpectralData, mu: f64) -> LatticeOperator {
    let occupied: Vec<usize> = (0..s.dim()).filter(|&k| s.eigenvalues[k] <= mu).collect();
    let mut p = LatticeOperator::new(
        s.source.window.clone(),
        OpMatrix::Dense(s.partial_function(&occupied, |_| C64::new(1.0, 0.0))),
    );
    p.hermitian = true;
    p
}

/// Degree-7 smoothstep rising from 0 at `mu - delta` to 1 at `mu + delta`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SwitchFunction {
    pub mu: f64,
    pub delta: f64,
}

impl SwitchFunction {
    /// Coefficients of `x^4 .. x^7` in `s(x) = 35x^4 - 84x^5 + 70x^6 - 20x^7`.
    pub const COEFFICIENTS: [f64; 4] = [35.0, -84.0, 70.0, -20.0];

    pub fn new(mu: f64, delta: f64) -> Result<Self> {
        if !(delta > 0.0 && delta.is_finite() && mu.is_finite()) {
            return Err(Error::InvalidArgument(format!("switch needs finite mu and delta > 0, got ({mu}, {delta})")));
        }
        Ok(Self { mu, delta })
    }

    /// Centered in `(lo, hi)`, reaching `fraction` of the way to each edge.
    pub fn in_gap(lo: f64, hi: f64, fraction: f64) -> Result<Self> {
        Self::new(0.5 * (lo + hi), fraction * 0.5 * (hi - lo))
    }

    fn x(&self, e: f64) -> f64 {
        ((e - self.mu + self.delta) / (2.0 * self.delta)).clamp(0.0, 1.0)
    }

    pub fn value(&self, e: f64) -> f64 {
        let x = self.x(e);
        let [a, b, c, d] = Self::COEFFICIENTS;
        x.powi(4) * (a + x * (b + x * (c + x * d)))
    }

    pub fn derivative(&self, e: f64) -> f64 {
        let x = self.x(e);
        140.0 * (x * (1.0 - x)).powi(3) / (2.0 * self.delta)
    }

    pub fn lo(&self) -> f64 {
        self.mu - self.delta
    }

    pub fn hi(&self) -> f64 {
        self.mu + self.delta
    }
}

/// `g(h)`, `g'(h)` and `u_Delta = exp(2 pi i g(h))`.
#[derive(Clone, Debug)]
pub struct SwitchCalculus {
    pub g: LatticeOperator,
    pub g_prime: LatticeOperator,
    pub u_delta: LatticeOperator,
    /// Eigenmodes with energies strictly inside `Delta`.
    pub gap_modes: Vec<usize>,
}

pub fn switch_and_udelta(s: &SpectralData, g: &SwitchFunction) -> Result<SwitchCalculus> {
    let below = s.eigenvalues.iter().any(|&e| e < g.lo());
    let above = s.eigenvalues.iter().any(|&e| e > g.hi());
    if !(below && above) {
        return Err(Error::EmptyGap { lo: g.lo(), hi: g.hi() });
    }
    let window = s.source.window.clone();
    let gap_modes = s.modes_in(g.lo(), g.hi());
    let upper: Vec<usize> = (0..s.dim()).filter(|&k| s.eigenvalues[k] >= g.hi()).collect();
    let mut g_op = s.partial_function(&upper, |_| C64::new(1.0, 0.0));
    g_op += s.partial_function(&gap_modes, |e| C64::new(g.value(e), 0.0));
    let g_prime = s.partial_function(&gap_modes, |e| C64::new(g.derivative(e), 0.0));
    // only modes inside Delta move u away from the identity
    let mut u = s.partial_function(&gap_modes, |e| C64::from_polar(1.0, TAU * g.value(e)) - 1.0);
    for i in 0..s.dim() {
        u[(i, i)] += 1.0;
    }
    let dense = |m: Mat<C64>, hermitian: bool| {
        let mut op = LatticeOperator::new(window.clone(), OpMatrix::Dense(m));
        op.hermitian = hermitian;
        op
    };
    let mut u_delta = dense(u, false);
    u_delta.unitary_on_interior = true;
    Ok(SwitchCalculus { g: dense(g_op, true), g_prime: dense(g_prime, true), u_delta, gap_modes })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn switch_shape() {
        let g = SwitchFunction::new(0.5, 0.2).unwrap();
        assert_eq!(g.value(0.29), 0.0);
        assert_eq!(g.value(0.71), 1.0);
        assert!((g.value(0.5) - 0.5).abs() < 1e-15);
        let n = 20_000;
        let h = 0.4 / n as f64;
        let integral: f64 = (0..n).map(|k| g.derivative(0.3 + (k as f64 + 0.5) * h) * h).sum();
        assert!((integral - 1.0).abs() < 1e-9);
        let mut last = 0.0;
        for k in 0..=100 {
            let v = g.value(0.25 + 0.005 * k as f64);
            assert!(v >= last);
            last = v;
        }
    }

    #[test]
    fn derivative_matches_difference_quotient() {
        let g = SwitchFunction::new(-1.0, 0.3).unwrap();
        for e in [-1.25, -1.1, -0.95, -0.8] {
            let h = 1e-6;
            let fd = (g.value(e + h) - g.value(e - h)) / (2.0 * h);
            assert!((fd - g.derivative(e)).abs() < 1e-6);
        }
    }
}
