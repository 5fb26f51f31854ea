//! Directional derivations and the two finite-volume traces.

use std::sync::Arc;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::hull::MeasureNormalization;
use crate::model::{LatticeWindow, Site, Slope};
use crate::operators::LatticeOperator;
use crate::{Error, Result};

/// Sign `s` in `nabla_v(a) = s * i [v . n, a]`.
///
/// With `s = -1` a forward magnetic translation along `+v` has winding `+1` under
/// `W(u) = i T(u* nabla u)`; Chern numbers do not depend on `s`.
pub const DERIVATION_SIGN: f64 = -1.0;

/// `s * i [v . n, a]`: entry `(m, n)` picks up `s * i * v . (m - n)`.
pub fn derivation(op: &LatticeOperator, v: [f64; 2]) -> LatticeOperator {
    let sites = op.window.sites();
    let coord = |n: Site| v[0] * n[0] as f64 + v[1] * n[1] as f64;
    let factor = C64::new(0.0, DERIVATION_SIGN);
    let mut out = LatticeOperator::new(
        op.window.clone(),
        op.matrix.map_indexed(|i, j, a| a * factor * (coord(sites[i]) - coord(sites[j]))),
    );
    out.hermitian = op.hermitian;
    out
}

/// Mean of the diagonal over sites at least `margin` away from the window complement.
pub fn trace_bulk(op: &LatticeOperator, margin: i64) -> Result<C64> {
    let interior = op.window.interior(margin);
    if interior.is_empty() {
        return Err(Error::EmptyInterior(margin as usize));
    }
    let sum: C64 = interior.iter().map(|&i| op.get(i, i)).sum();
    Ok(sum / interior.len() as f64)
}

/// Parameters of the per-length interface trace.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceSpec {
    /// Euclidean slab length `L` along the interface.
    pub length: f64,
    /// Width of the linear tapers at each slab end; the weight integrates to `L`.
    pub taper: f64,
    /// Sites farther than this from the interface line are ignored.
    pub normal_cutoff: f64,
    /// Window reach required beyond the outer end of each taper.
    pub end_margin: f64,
    /// Largest admissible share of diagonal mass in the outermost normal shell.
    pub localization_tol: f64,
    pub convention: MeasureNormalization,
}

impl TraceSpec {
    pub const SHELL_WIDTH: f64 = 1.5;

    pub fn new(length: f64) -> Self {
        Self {
            length,
            taper: 8.0,
            normal_cutoff: 8.0,
            end_margin: 8.0,
            localization_tol: 1e-2,
            convention: MeasureNormalization::TangentialSlab,
        }
    }

    /// Tangential profile: 1 on the plateau, linear to 0 across each taper, integral `L`.
    pub fn profile(&self, t: f64) -> f64 {
        let half = 0.5 * self.length;
        let r = self.taper;
        let a = t.abs();
        if r <= 0.0 {
            return if a <= half { 1.0 } else { 0.0 };
        }
        ((half + 0.5 * r - a) / r).clamp(0.0, 1.0)
    }

    pub fn reach(&self) -> f64 {
        0.5 * self.length + 0.5 * self.taper
    }
}

/// Per-site weights realizing a trace as `sum_n w_n a_nn`.
#[derive(Clone, Debug)]
pub struct TraceWeights {
    pub window: Arc<LatticeWindow>,
    pub weights: Vec<f64>,
    /// Indices with nonzero weight.
    pub support: Vec<usize>,
    /// Sites of the outer normal shell, used for the localization check.
    pub shell: Vec<usize>,
    pub spec: Option<TraceSpec>,
}

impl TraceWeights {
    pub fn bulk(window: Arc<LatticeWindow>, margin: i64) -> Result<Self> {
        let interior = window.interior(margin);
        if interior.is_empty() {
            return Err(Error::EmptyInterior(margin as usize));
        }
        let mut weights = vec![0.0; window.len()];
        for &i in &interior {
            weights[i] = 1.0 / interior.len() as f64;
        }
        Ok(Self { window, weights, support: interior, shell: Vec::new(), spec: None })
    }

    pub fn interface(window: Arc<LatticeWindow>, slope: &Slope, spec: TraceSpec) -> Result<Self> {
        if spec.length.is_nan() || spec.length <= 0.0 {
            return Err(Error::InvalidArgument("slab length must be positive".into()));
        }
        let needed = spec.reach() + spec.end_margin;
        let available = tangential_reach(&window, slope, spec.normal_cutoff);
        if available < needed {
            return Err(Error::SlabExceedsWindow { needed, available });
        }
        let scale = match spec.convention {
            MeasureNormalization::UnitX if !slope.is_rational() => (1.0 + slope.to_f64().powi(2)).sqrt(),
            _ => 1.0,
        } / spec.length;
        let mut weights = vec![0.0; window.len()];
        let mut support = Vec::new();
        let mut shell = Vec::new();
        for (i, &n) in window.sites().iter().enumerate() {
            let d = slope.normal_distance(n).abs();
            if d > spec.normal_cutoff {
                continue;
            }
            let w = spec.profile(slope.tangential(n)) * scale;
            if w > 0.0 {
                weights[i] = w;
                support.push(i);
                if d > spec.normal_cutoff - TraceSpec::SHELL_WIDTH {
                    shell.push(i);
                }
            }
        }
        Ok(Self { window, weights, support, shell, spec: Some(spec) })
    }

    /// `sum_n w_n d_n` for a precomputed diagonal.
    pub fn apply(&self, diag: &[C64]) -> C64 {
        self.support.iter().map(|&i| diag[i] * self.weights[i]).sum()
    }

    pub fn trace(&self, op: &LatticeOperator) -> C64 {
        self.support.iter().map(|&i| op.get(i, i) * self.weights[i]).sum()
    }

    /// Weighted `|d_n|` mass in the outer normal shell, relative to the total mass but never to less than 1.
    ///
    /// The floor keeps operators whose slab trace vanishes (no interface) from failing on rounding noise.
    pub fn shell_fraction(&self, diag: &[C64]) -> f64 {
        let total: f64 = self.support.iter().map(|&i| diag[i].norm() * self.weights[i]).sum();
        let outer: f64 = self.shell.iter().map(|&i| diag[i].norm() * self.weights[i]).sum();
        outer / total.max(1.0)
    }

    /// `apply`, guarded by the localization check configured in `TraceSpec`.
    pub fn apply_localized(&self, diag: &[C64]) -> Result<C64> {
        if let Some(spec) = &self.spec {
            let fraction = self.shell_fraction(diag);
            if fraction > spec.localization_tol {
                return Err(Error::NotInterfaceLocalized(fraction));
            }
        }
        Ok(self.apply(diag))
    }
}

/// Largest `T` such that every lattice site with `|t| <= T` and `|d| <= cutoff` lies in the window.
pub fn tangential_reach(window: &LatticeWindow, slope: &Slope, cutoff: f64) -> f64 {
    let sites = window.sites();
    if sites.is_empty() {
        return 0.0;
    }
    let lo = [sites.iter().map(|n| n[0]).min().unwrap() - 1, sites.iter().map(|n| n[1]).min().unwrap() - 1];
    let hi = [sites.iter().map(|n| n[0]).max().unwrap() + 1, sites.iter().map(|n| n[1]).max().unwrap() + 1];
    let mut reach = f64::INFINITY;
    for n1 in lo[0]..=hi[0] {
        for n2 in lo[1]..=hi[1] {
            let n = [n1, n2];
            if !window.contains(n) && slope.normal_distance(n).abs() <= cutoff {
                reach = reach.min(slope.tangential(n).abs());
            }
        }
    }
    reach
}

/// `trace_interface` in one call: weights from a `TraceSpec`, localization-checked.
pub fn trace_interface(op: &LatticeOperator, slope: &Slope, spec: TraceSpec) -> Result<C64> {
    let weights = TraceWeights::interface(op.window.clone(), slope, spec)?;
    weights.apply_localized(&op.diag())
}

/// `diag(a b)` without forming the product.
pub fn diag_of_product(a: &LatticeOperator, b: &LatticeOperator) -> Vec<C64> {
    let mut d = vec![C64::new(0.0, 0.0); a.dim()];
    b.matrix.for_each_nonzero(|m, n, bv| d[n] += a.get(n, m) * bv);
    d
}

/// `diag(a* b)` without forming the product.
pub fn diag_of_adjoint_product(a: &LatticeOperator, b: &LatticeOperator) -> Vec<C64> {
    let mut d = vec![C64::new(0.0, 0.0); a.dim()];
    b.matrix.for_each_nonzero(|m, n, bv| d[n] += a.get(m, n).conj() * bv);
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profile_integrates_to_length() {
        let spec = TraceSpec::new(40.0);
        let sum: f64 = (-100..=100).map(|t| spec.profile(t as f64)).sum();
        assert!((sum - 40.0).abs() < 1e-12);
        let h = 0.001;
        let integral: f64 = (-60_000..=60_000).map(|k| spec.profile(k as f64 * h) * h).sum();
        assert!((integral - 40.0).abs() < 1e-6);
    }

    #[test]
    fn small_window_is_rejected() {
        let w = Arc::new(LatticeWindow::square(10));
        let r = TraceWeights::interface(w, &Slope::zero(), TraceSpec::new(40.0));
        assert!(matches!(r, Err(Error::SlabExceedsWindow { .. })));
    }
}
