//! wasm-bindgen surface for the static demo page in `www/`.
//!
//! Every export is a thin wrapper that returns flat numeric arrays so the page can draw
//! straight onto a canvas. The plain-Rust functions are tested natively.

use std::sync::Arc;

use wasm_bindgen::prelude::*;

use iwatsuka::hull::enumerate_hull;
use iwatsuka::invariants::common_gaps;
use iwatsuka::model::{IwatsukaField, LatticeWindow, Phase, Side, SlopeSpec};
use iwatsuka::operators::{harper_bands, harper_bloch, hermitian_eigenvalues, iwatsuka_hamiltonian, SpectralData};
use iwatsuka::{Error, Result};

/// Keeps dense eigensolves interactive in the browser.
pub const MAX_DEMO_WINDOW: i64 = 14;

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `(flux in turns, energy)` pairs for every `p/q` with `q <= qmax`, on a `k_points^2` Bloch mesh.
pub fn butterfly_points(qmax: i64, k_points: usize) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for q in 1..=qmax {
        for p in (0..q).filter(|&p| gcd(p, q) == 1) {
            let b = Phase::turns(p, q);
            for a in 0..k_points {
                for c in 0..k_points {
                    let k = [
                        std::f64::consts::TAU * a as f64 / k_points as f64,
                        std::f64::consts::TAU * c as f64 / k_points as f64,
                    ];
                    for e in hermitian_eigenvalues(&harper_bloch(&b, k)?)? {
                        out.extend([p as f64 / q as f64, e]);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// All distinct hull patterns on `[-m, m]^2`, concatenated; 1 marks the `+` side.
pub fn hull_patterns(slope: &str, m: i64) -> Result<Vec<u8>> {
    let slope = slope.parse::<SlopeSpec>()?.resolve()?;
    let e = enumerate_hull(&slope, m)?;
    Ok(e.patterns.iter().flat_map(|p| p.values.iter().map(|s| u8::from(*s == Side::Plus))).collect())
}

/// Widest energy interval that is a gap of both bulk spectra.
pub fn widest_common_gap(b_plus: &str, b_minus: &str) -> Result<(f64, f64)> {
    let plus = harper_bands(&b_plus.parse()?, 40)?;
    let minus = harper_bands(&b_minus.parse()?, 40)?;
    common_gaps(&plus, &minus)
        .first()
        .copied()
        .ok_or(Error::NoCommonGap { plus: plus.gap_intervals(), minus: minus.gap_intervals() })
}

/// Per-site weight of the eigenmodes with energy in `(lo, hi)` on the square window.
pub fn state_density(slope: &str, b_plus: &str, b_minus: &str, m: i64, lo: f64, hi: f64) -> Result<Vec<f64>> {
    if !(1..=MAX_DEMO_WINDOW).contains(&m) {
        return Err(Error::InvalidArgument(format!("window half width must lie in 1..={MAX_DEMO_WINDOW}")));
    }
    let slope = slope.parse::<SlopeSpec>()?.resolve()?;
    let field = IwatsukaField::new(slope, b_plus.parse()?, b_minus.parse()?)?;
    let window = Arc::new(LatticeWindow::square(m));
    let s = SpectralData::compute(&iwatsuka_hamiltonian(&field, &window, None)?)?;
    let modes = s.modes_in(lo, hi);
    Ok((0..window.len()).map(|i| modes.iter().map(|&k| s.eigenvectors[(i, k)].norm_sqr()).sum()).collect())
}

fn js(e: Error) -> JsError {
    JsError::new(&e.to_string())
}

#[wasm_bindgen]
pub fn butterfly(qmax: i32, k_points: u32) -> std::result::Result<Vec<f64>, JsError> {
    butterfly_points(qmax.clamp(1, 40) as i64, k_points.clamp(1, 8) as usize).map_err(js)
}

#[wasm_bindgen]
pub fn hull_pattern(slope: &str, m: i32) -> std::result::Result<Vec<u8>, JsError> {
    hull_patterns(slope, m.clamp(1, 12) as i64).map_err(js)
}

#[wasm_bindgen]
pub fn common_gap(b_plus: &str, b_minus: &str) -> std::result::Result<Vec<f64>, JsError> {
    widest_common_gap(b_plus, b_minus).map(|(lo, hi)| vec![lo, hi]).map_err(js)
}

#[wasm_bindgen]
pub fn interface_density(
    slope: &str,
    b_plus: &str,
    b_minus: &str,
    m: i32,
    lo: f64,
    hi: f64,
) -> std::result::Result<Vec<f64>, JsError> {
    state_density(slope, b_plus, b_minus, m as i64, lo, hi).map_err(js)
}
