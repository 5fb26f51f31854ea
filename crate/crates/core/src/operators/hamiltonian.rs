//! Harper Bloch matrices, band edges, and the finite-window Iwatsuka Hamiltonian.

use std::f64::consts::{PI, TAU};
use std::sync::Arc;

use faer::{Mat, Side as Triangle};
use num_complex::Complex64 as C64;
use serde::Serialize;

use super::{magnetic_translation, LatticeOperator};
use crate::model::{IwatsukaField, LatticeWindow, Phase};
use crate::{Error, Result};

/// Adjacent bands closer than this are treated as touching.
pub const BAND_TOUCH_TOL: f64 = 1e-9;

/// `(p, q)` with `b = 2 pi p / q`, `0 <= p < q`.
pub fn rational_flux(b: &Phase) -> Result<(i64, i64)> {
    let t = b.as_turns().ok_or_else(|| Error::IrrationalFlux(b.to_string()))?;
    let frac = t - t.floor();
    Ok((*frac.numer(), *frac.denom()))
}

/// Magnetic Bloch matrix of `s1 + s1* + s2 + s2*` in the Landau gauge `A(n, n - e1) = b n2`.
///
/// Basis: one magnetic cell of `q` sites along `n2`; `k1` is the momentum along `e1`,
/// `k2` the quasi-momentum per cell.
pub fn harper_bloch(b: &Phase, k: [f64; 2]) -> Result<Mat<C64>> {
    let (p, q) = rational_flux(b)?;
    let q = q as usize;
    let beta = TAU * p as f64 / q as f64;
    let mut h = Mat::<C64>::zeros(q, q);
    for r in 0..q {
        h[(r, r)] += C64::new(2.0 * (k[0] - beta * r as f64).cos(), 0.0);
    }
    if q == 1 {
        h[(0, 0)] += C64::new(2.0 * k[1].cos(), 0.0);
        return Ok(h);
    }
    for r in 0..q - 1 {
        h[(r, r + 1)] += C64::new(1.0, 0.0);
        h[(r + 1, r)] += C64::new(1.0, 0.0);
    }
    let wrap = C64::from_polar(1.0, k[1]);
    h[(q - 1, 0)] += wrap;
    h[(0, q - 1)] += wrap.conj();
    Ok(h)
}

pub fn hermitian_eigenvalues(h: &Mat<C64>) -> Result<Vec<f64>> {
    let evd = h.self_adjoint_eigen(Triangle::Lower).map_err(|e| Error::Eigen(format!("{e:?}")))?;
    Ok(evd.S().column_vector().iter().map(|z| z.re).collect())
}

/// Band ranges `[min, max]` per eigenvalue index, plus the gaps between neighbours.
#[derive(Clone, Debug, Serialize)]
pub struct BandStructure {
    pub p: i64,
    pub q: i64,
    pub bands: Vec<(f64, f64)>,
    /// Open gaps between consecutive bands, `(index of band below, lo, hi)`.
    pub gaps: Vec<(usize, f64, f64)>,
}

impl BandStructure {
    /// Connected pieces of the spectrum.
    pub fn component_count(&self) -> usize {
        self.gaps.len() + 1
    }

    pub fn band_of(&self, energy: f64) -> Option<usize> {
        self.bands.iter().position(|&(lo, hi)| lo <= energy && energy <= hi)
    }

    /// Number of bands lying entirely below `energy`.
    pub fn bands_below(&self, energy: f64) -> usize {
        self.bands.iter().filter(|&&(_, hi)| hi < energy).count()
    }

    /// Complement of the spectrum inside `[min, max]`.
    pub fn gap_intervals(&self) -> Vec<(f64, f64)> {
        self.gaps.iter().map(|&(_, lo, hi)| (lo, hi)).collect()
    }
}

/// Sweeps a `grid x grid` mesh of `[0, 2pi)^2` plus the band-edge points `(0, 0)` and `(pi/q, pi)`.
pub fn harper_bands(b: &Phase, grid: usize) -> Result<BandStructure> {
    let (p, q) = rational_flux(b)?;
    let mut bands = vec![(f64::INFINITY, f64::NEG_INFINITY); q as usize];
    let mut points: Vec<[f64; 2]> = vec![[0.0, 0.0], [PI / q as f64, PI]];
    for a in 0..grid {
        for c in 0..grid {
            points.push([TAU * a as f64 / grid as f64, TAU * c as f64 / grid as f64]);
        }
    }
    for k in points {
        for (j, e) in hermitian_eigenvalues(&harper_bloch(b, k)?)?.into_iter().enumerate() {
            bands[j].0 = bands[j].0.min(e);
            bands[j].1 = bands[j].1.max(e);
        }
    }
    let gaps = bands
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[1].0 - w[0].1 > BAND_TOUCH_TOL)
        .map(|(j, w)| (j, w[0].1, w[1].0))
        .collect();
    Ok(BandStructure { p, q, bands, gaps })
}

/// `s1 + s1* + s2 + s2* + v` on the window, open boundary.
pub fn iwatsuka_hamiltonian(
    field: &IwatsukaField,
    window: &Arc<LatticeWindow>,
    v: Option<&LatticeOperator>,
) -> Result<LatticeOperator> {
    let s1 = magnetic_translation(field, window, 1)?;
    let s2 = magnetic_translation(field, window, 2)?;
    let mut h = s1.add(&s1.adjoint()).add(&s2).add(&s2.adjoint());
    if let Some(v) = v {
        let defect = v.hermiticity_defect();
        if defect > 1e-12 {
            return Err(Error::NonHermitianPerturbation(defect));
        }
        h = h.add(v);
    }
    h.hermitian = true;
    Ok(h)
}
