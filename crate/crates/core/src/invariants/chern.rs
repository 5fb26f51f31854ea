//! Bulk Chern numbers: plaquette Berry curvature in momentum space, commutator trace in real space.

use std::f64::consts::TAU;

use faer::{Mat, Side as Triangle};
use num_complex::Complex64 as C64;

use super::{derivation, diag_of_product, TraceWeights};
use crate::model::Phase;
use crate::operators::{harper_bands, harper_bloch, LatticeOperator};
use crate::{Error, Result};

/// Minimum distance from `mu` to every band edge.
pub const GAP_MARGIN: f64 = 1e-6;

/// Lowest `n` eigenvectors of `H(k)` as columns.
fn occupied_frame(b: &Phase, k: [f64; 2], n: usize) -> Result<Mat<C64>> {
    let h = harper_bloch(b, k)?;
    let evd = h.self_adjoint_eigen(Triangle::Lower).map_err(|e| Error::Eigen(format!("{e:?}")))?;
    let u = evd.U();
    Ok(Mat::from_fn(h.nrows(), n, |i, j| u[(i, j)]))
}

/// `det(A* B)` for the overlap of two frames.
fn link(a: &Mat<C64>, b: &Mat<C64>) -> C64 {
    let overlap = a.adjoint() * b;
    let d = overlap.determinant();
    d / d.norm().max(f64::MIN_POSITIVE)
}

/// Sum of plaquette Berry curvatures of the Bloch bands below `mu`, over a `grid x grid` mesh.
///
/// The result sits within rounding of an integer as soon as no plaquette flux wraps past `pi`.
pub fn chern_momentum(b: &Phase, mu: f64, grid: usize) -> Result<f64> {
    let bands = harper_bands(b, grid.max(8))?;
    if bands.bands.iter().any(|&(lo, hi)| mu > lo - GAP_MARGIN && mu < hi + GAP_MARGIN) {
        return Err(Error::GapClosed { mu });
    }
    let n = bands.bands_below(mu);
    if n == 0 || n == bands.bands.len() {
        return Ok(0.0);
    }
    // the Bloch matrix is 2pi-periodic in both momenta, so the mesh closes on itself
    let k_at = |a: usize, c: usize| [TAU * a as f64 / grid as f64, TAU * c as f64 / grid as f64];
    let mut frames = Vec::with_capacity(grid * grid);
    for a in 0..grid {
        for c in 0..grid {
            frames.push(occupied_frame(b, k_at(a, c), n)?);
        }
    }
    let frame = |a: usize, c: usize| &frames[(a % grid) * grid + c % grid];
    let mut total = 0.0;
    for a in 0..grid {
        for c in 0..grid {
            let u1 = link(frame(a, c), frame(a + 1, c));
            let u2 = link(frame(a + 1, c), frame(a + 1, c + 1));
            let u3 = link(frame(a, c + 1), frame(a + 1, c + 1));
            let u4 = link(frame(a, c), frame(a, c + 1));
            total += (u1 * u2 * u3.conj() * u4.conj()).arg();
        }
    }
    Ok(MESH_ORIENTATION * total / TAU)
}

/// Orientation of the `(k1, k2)` mesh relative to the real-space commutator formula.
const MESH_ORIENTATION: f64 = -1.0;

/// `2 pi i * trace_bulk(P [nabla_1 P, nabla_2 P])`.
pub fn chern_realspace(p: &LatticeOperator, margin: i64) -> Result<f64> {
    let p2 = p.mul(p);
    let defect = p2.max_abs_diff(p);
    if defect > 1e-6 {
        return Err(Error::NotProjection(defect));
    }
    let d1 = derivation(p, [1.0, 0.0]);
    let d2 = derivation(p, [0.0, 1.0]);
    let commutator = d1.mul(&d2).sub(&d2.mul(&d1));
    let weights = TraceWeights::bulk(p.window.clone(), margin)?;
    let t = weights.apply(&diag_of_product(p, &commutator));
    Ok((C64::new(0.0, TAU) * t).re)
}
