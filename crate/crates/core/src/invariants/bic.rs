//! Bulk-interface correspondence: interface winding against the difference of bulk Chern numbers.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{chern_momentum, interface_current, CurrentReport, TraceSpec, TraceWeights};
use crate::model::{IwatsukaField, LatticeWindow, Phase};
use crate::operators::{harper_bands, BAND_TOUCH_TOL, iwatsuka_hamiltonian, BandStructure, LatticeOperator, SpectralData, SwitchFunction};
use crate::{Error, Result};

/// Global sign `s` with `s * W(u_Delta) = Ch+ - Ch-`, fixed on the reference configuration
/// `b+ = 2pi/3`, `b- = 4pi/3`, `alpha = 0` (see `calibrate_orientation`).
pub const ORIENTATION_SIGN: f64 = 1.0;

/// Largest admissible `|s W - (Ch+ - Ch-)|`.
pub const BIC_TOLERANCE: f64 = 0.1;
/// Largest admissible relative mismatch between the current and `-W / 2 pi`.
pub const CURRENT_TOLERANCE: f64 = 0.02;

/// Geometry and resolution of one verification run.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BicSpec {
    pub trace: TraceSpec,
    /// Half extent of the slab window across the interface.
    pub half_normal: f64,
    /// Mesh for Bloch band edges.
    pub band_grid: usize,
    /// Mesh for plaquette Chern numbers.
    pub chern_grid: usize,
    /// Switch half-width as a fraction of the half gap.
    pub switch_fraction: f64,
}

impl Default for BicSpec {
    fn default() -> Self {
        // the slab ends need twice the minimal margin before u_Delta's tangential tails are captured
        let trace = TraceSpec { end_margin: 16.0, ..TraceSpec::new(48.0) };
        Self { trace, half_normal: 15.0, band_grid: 60, chern_grid: 30, switch_fraction: 0.8 }
    }
}

impl BicSpec {
    pub fn window(&self, field: &IwatsukaField) -> LatticeWindow {
        let half_tangential = self.trace.reach() + self.trace.end_margin + 1.0;
        LatticeWindow::slab(&field.slope, half_tangential, self.half_normal)
    }
}

/// Open intervals in the complement of both band structures, widest first, ties to lower energy.
pub fn common_gaps(plus: &BandStructure, minus: &BandStructure) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for &(a0, a1) in &plus.gap_intervals() {
        for &(b0, b1) in &minus.gap_intervals() {
            let (lo, hi) = (a0.max(b0), a1.min(b1));
            if hi > lo {
                out.push((lo, hi));
            }
        }
    }
    out.sort_by(|x, y| {
        let (wx, wy) = (x.1 - x.0, y.1 - y.0);
        if (wx - wy).abs() <= BAND_TOUCH_TOL {
            x.0.total_cmp(&y.0)
        } else {
            wy.total_cmp(&wx)
        }
    });
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct BicConfigEcho {
    pub b_plus: Phase,
    pub b_minus: Phase,
    pub slope: String,
    pub perturbed_plaquettes: usize,
    pub spec: BicSpec,
}

#[derive(Clone, Debug, Serialize)]
pub struct WindowMeta {
    pub sites: usize,
    pub slab_length: f64,
    pub half_normal: f64,
    pub normal_cutoff: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Residuals {
    pub chern_plus_integrality: f64,
    pub chern_minus_integrality: f64,
    pub winding_integrality: f64,
    pub bic: f64,
    pub current_relative: f64,
    pub eigen: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct InvariantReport {
    pub config: BicConfigEcho,
    pub chern_plus: f64,
    pub chern_minus: f64,
    /// Calibrated winding `s * W(u_Delta)`.
    pub winding: f64,
    pub raw_winding: f64,
    pub orientation_sign: f64,
    pub calibration: &'static str,
    /// Interface current density `T(g'(h) nabla h)`.
    pub current: f64,
    /// `-W(u_Delta) / 2 pi`.
    pub winding_current: f64,
    pub conductance_units: &'static str,
    pub mu: f64,
    pub delta: (f64, f64),
    pub gap_modes: usize,
    pub window: WindowMeta,
    pub residual: Residuals,
    pub pass: bool,
}

fn integrality(x: f64) -> f64 {
    (x - x.round()).abs()
}

/// Runs the full correspondence check for a field with rational bulk fluxes.
///
/// `mu` defaults to the midpoint of the widest common gap. `perturbation` is an optional
/// Hermitian addition to the Hamiltonian.
pub fn verify_bic(
    field: &IwatsukaField,
    mu: Option<f64>,
    spec: &BicSpec,
    perturbation: Option<&LatticeOperator>,
) -> Result<InvariantReport> {
    let plus = harper_bands(&field.b_plus, spec.band_grid)?;
    let minus = harper_bands(&field.b_minus, spec.band_grid)?;
    let gaps = common_gaps(&plus, &minus);
    let no_gap = || Error::NoCommonGap { plus: plus.gap_intervals(), minus: minus.gap_intervals() };
    let (lo, hi) = match mu {
        None => *gaps.first().ok_or_else(no_gap)?,
        Some(mu) => *gaps.iter().find(|g| g.0 < mu && mu < g.1).ok_or_else(no_gap)?,
    };
    let mu = mu.unwrap_or(0.5 * (lo + hi));
    let half = (mu - lo).min(hi - mu);
    let switch = SwitchFunction::new(mu, spec.switch_fraction * half)?;

    let chern_plus = chern_momentum(&field.b_plus, mu, spec.chern_grid)?;
    let chern_minus = chern_momentum(&field.b_minus, mu, spec.chern_grid)?;

    let window = Arc::new(spec.window(field));
    let weights = TraceWeights::interface(window.clone(), &field.slope, spec.trace)?;
    let h = iwatsuka_hamiltonian(field, &window, perturbation)?;
    let spectral = SpectralData::compute(&h)?;
    let CurrentReport { current, winding, winding_current, relative_mismatch, gap_modes } =
        interface_current(&spectral, &switch, &field.slope, &weights)?;

    let calibrated = ORIENTATION_SIGN * winding;
    let bic = (calibrated - (chern_plus - chern_minus)).abs();
    let residual = Residuals {
        chern_plus_integrality: integrality(chern_plus),
        chern_minus_integrality: integrality(chern_minus),
        winding_integrality: integrality(calibrated),
        bic,
        current_relative: relative_mismatch,
        eigen: spectral.residual(),
    };
    let pass = bic <= BIC_TOLERANCE && relative_mismatch <= CURRENT_TOLERANCE;
    Ok(InvariantReport {
        config: BicConfigEcho {
            b_plus: field.b_plus,
            b_minus: field.b_minus,
            slope: field.slope.to_string(),
            perturbed_plaquettes: field.perturbation.len(),
            spec: *spec,
        },
        chern_plus,
        chern_minus,
        winding: calibrated,
        raw_winding: winding,
        orientation_sign: ORIENTATION_SIGN,
        calibration: "reference b+ = 2pi/3, b- = 4pi/3, alpha = 0",
        current,
        winding_current,
        conductance_units: "e^2/h with e = hbar = 1",
        mu,
        delta: (switch.lo(), switch.hi()),
        gap_modes,
        window: WindowMeta {
            sites: window.len(),
            slab_length: spec.trace.length,
            half_normal: spec.half_normal,
            normal_cutoff: spec.trace.normal_cutoff,
        },
        residual,
        pass,
    })
}

/// Re-derives `ORIENTATION_SIGN` from the reference configuration.
pub fn calibrate_orientation(spec: &BicSpec) -> Result<f64> {
    let field = IwatsukaField::new(crate::model::Slope::zero(), Phase::turns(1, 3), Phase::turns(2, 3))?;
    let report = verify_bic(&field, None, spec, None)?;
    let target = report.chern_plus - report.chern_minus;
    Ok(if report.raw_winding * target >= 0.0 { 1.0 } else { -1.0 })
}
