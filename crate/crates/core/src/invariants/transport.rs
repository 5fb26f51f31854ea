//! Winding numbers of interface unitaries and the interface current density.

use std::f64::consts::TAU;

use num_complex::Complex64 as C64;
use serde::Serialize;

use super::{derivation, diag_of_adjoint_product, diag_of_product, TraceWeights};
use crate::model::Slope;
use crate::operators::{switch_and_udelta, LatticeOperator, SpectralData, SwitchFunction};
use crate::Result;

/// `i T(u* nabla u)` along the interface tangent, real part.
pub fn winding(u: &LatticeOperator, slope: &Slope, weights: &TraceWeights) -> Result<f64> {
    let du = derivation(u, slope.tangent());
    let diag = diag_of_adjoint_product(u, &du);
    Ok((C64::new(0.0, 1.0) * weights.apply_localized(&diag)?).re)
}

#[derive(Clone, Debug, Serialize)]
pub struct CurrentReport {
    /// `T(g'(h) nabla h)`.
    pub current: f64,
    /// `W(u_Delta)`.
    pub winding: f64,
    /// `-W(u_Delta) / 2 pi`; equals `current` in the infinite-volume limit.
    pub winding_current: f64,
    /// `|current - winding_current| / |winding_current|`, or the absolute gap when that is tiny.
    pub relative_mismatch: f64,
    pub gap_modes: usize,
}

/// Interface current density of the switch `g`, with the `u_Delta` winding as a cross-check.
pub fn interface_current(
    s: &SpectralData,
    g: &SwitchFunction,
    slope: &Slope,
    weights: &TraceWeights,
) -> Result<CurrentReport> {
    let calculus = switch_and_udelta(s, g)?;
    let dh = derivation(&s.source, slope.tangent());
    let current_diag = diag_of_product(&calculus.g_prime, &dh);
    let current = weights.apply_localized(&current_diag)?.re;
    let winding = winding(&calculus.u_delta, slope, weights)?;
    let winding_current = -winding / TAU;
    let scale = winding_current.abs();
    let relative_mismatch = if scale > 1e-3 {
        (current - winding_current).abs() / scale
    } else {
        (current - winding_current).abs()
    };
    Ok(CurrentReport { current, winding, winding_current, relative_mismatch, gap_modes: calculus.gap_modes.len() })
}
