//! One function per subcommand. Each returns its artifact; writing happens in `main`.

use std::sync::Arc;

use serde_json::{json, Value};

use iwatsuka::hull::{cantor_diagnostics, enumerate_hull};
use iwatsuka::invariants::{chern_momentum, chern_realspace, common_gaps, verify_bic, InvariantReport};
use iwatsuka::model::{IwatsukaField, LatticeWindow, Phase};
use iwatsuka::operators::{
    fermi_projection, harper_bands, harper_bloch, hermitian_eigenvalues, iwatsuka_hamiltonian, SpectralData,
};
use iwatsuka::{Error, Result};

use crate::config::RunConfig;
use crate::output::{num, opt, Table};

/// Largest slab accepted by `conductance` and `verify-bic`; dense solves beyond this are impractical.
pub const MAX_SLAB_SITES: usize = 17_000;

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Harper spectra at every flux `2 pi p/q` with `q <= qmax`, sampled on a `k_points^2` Bloch mesh.
pub fn butterfly(c: &RunConfig) -> Result<Table> {
    let mut table = Table::new(&["parameter", "index", "eigenvalue"]);
    let k = c.k_points;
    let mut fluxes: Vec<(i64, i64)> =
        (1..=c.qmax).flat_map(|q| (0..q).filter(move |&p| gcd(p, q) == 1).map(move |p| (p, q))).collect();
    fluxes.sort_by(|a, b| (a.0 * b.1).cmp(&(b.0 * a.1)));
    for (p, q) in fluxes {
        let b = Phase::turns(p, q);
        let mut per_band: Vec<Vec<f64>> = vec![Vec::new(); q as usize];
        for a in 0..k {
            for d in 0..k {
                let kv = [std::f64::consts::TAU * a as f64 / k as f64, std::f64::consts::TAU * d as f64 / k as f64];
                for (j, e) in hermitian_eigenvalues(&harper_bloch(&b, kv)?)?.into_iter().enumerate() {
                    per_band[j].push(e);
                }
            }
        }
        let parameter = num(p as f64 / q as f64);
        for (j, energies) in per_band.iter().enumerate() {
            for &e in energies {
                table.push(vec![parameter.clone(), j.to_string(), num(e)]);
            }
        }
    }
    Ok(table)
}

/// Eigenvalues of the field Hamiltonian on the square window, with each mode's weight near the interface.
pub fn spectrum(c: &RunConfig) -> Result<Table> {
    let field = c.field()?;
    let window = Arc::new(LatticeWindow::square(c.window));
    let spectral = SpectralData::compute(&iwatsuka_hamiltonian(&field, &window, None)?)?;
    let near: Vec<usize> = (0..window.len())
        .filter(|&i| field.slope.normal_distance(window.site(i)).abs() <= c.normal_cutoff)
        .collect();
    let mut table = Table::new(&["parameter", "index", "eigenvalue", "interface_weight"]);
    for (k, &e) in spectral.eigenvalues.iter().enumerate() {
        let weight: f64 = near.iter().map(|&i| spectral.eigenvectors[(i, k)].norm_sqr()).sum();
        table.push(vec![c.window.to_string(), k.to_string(), num(e), num(weight)]);
    }
    Ok(table)
}

pub struct HullOutput {
    pub table: Table,
    /// Deduplicated patterns for the small windows, keyed by half width.
    pub patterns: Value,
}

pub const PATTERN_DUMP_MAX: i64 = 4;

pub fn hull(c: &RunConfig) -> Result<HullOutput> {
    let slope = c.field.slope.resolve()?;
    let ms: Vec<i64> = (1..=c.m_max).collect();
    let mut table = Table::new(&["M", "pattern_count", "min_gap", "non_isolated"]);
    for row in cantor_diagnostics(&slope, &ms)? {
        table.push(vec![
            row.m.to_string(),
            row.pattern_count.to_string(),
            num(row.min_threshold_gap),
            row.all_points_non_isolated.to_string(),
        ]);
    }
    let mut dump = Vec::new();
    for m in 1..=c.m_max.min(PATTERN_DUMP_MAX) {
        let e = enumerate_hull(&slope, m)?;
        dump.push(json!({ "M": m, "pattern_count": e.count(), "points": e.points, "patterns": e.patterns }));
    }
    Ok(HullOutput { table, patterns: json!({ "slope": slope.to_string(), "windows": dump }) })
}

/// The two bulk fluxes followed by any extra ones, without repeats.
fn chern_fluxes(c: &RunConfig) -> Vec<Phase> {
    let mut out: Vec<Phase> = Vec::new();
    for b in [c.field.b_plus, c.field.b_minus].into_iter().chain(c.fluxes.iter().copied()) {
        if !out.iter().any(|o| o.congruent(&b)) {
            out.push(b);
        }
    }
    out
}

/// Chern number of every open gap of every flux, optionally with the real-space value.
pub fn chern(c: &RunConfig) -> Result<Table> {
    let mut table = Table::new(&["flux", "gap", "lo", "hi", "mu", "chern", "chern_realspace"]);
    let margin = (c.window * 3 / 10).max(1);
    for b in chern_fluxes(c) {
        let bands = harper_bands(&b, c.k_grid)?;
        let spectral = if c.realspace {
            let window = Arc::new(LatticeWindow::square(c.window));
            Some(SpectralData::compute(&iwatsuka_hamiltonian(&IwatsukaField::uniform(b), &window, None)?)?)
        } else {
            None
        };
        for (gap, &(_, lo, hi)) in bands.gaps.iter().enumerate() {
            let mu = 0.5 * (lo + hi);
            let ch = chern_momentum(&b, mu, c.chern_grid)?;
            let real = match &spectral {
                Some(s) => Some(chern_realspace(&fermi_projection(s, mu), margin)?),
                None => None,
            };
            table.push(vec![b.to_string(), gap.to_string(), num(lo), num(hi), num(mu), num(ch), opt(real)]);
        }
    }
    Ok(table)
}

/// Fermi level from `mu` or from the `gap_index`-th common gap counted upward in energy.
fn fermi_level(c: &RunConfig, field: &IwatsukaField) -> Result<Option<f64>> {
    if c.mu.is_some() {
        return Ok(c.mu);
    }
    let Some(index) = c.gap_index else { return Ok(None) };
    let plus = harper_bands(&field.b_plus, c.k_grid)?;
    let minus = harper_bands(&field.b_minus, c.k_grid)?;
    let mut gaps = common_gaps(&plus, &minus);
    if gaps.is_empty() {
        return Err(Error::NoCommonGap { plus: plus.gap_intervals(), minus: minus.gap_intervals() });
    }
    gaps.sort_by(|a, b| a.0.total_cmp(&b.0));
    let &(lo, hi) = gaps.get(index).ok_or_else(|| {
        Error::InvalidArgument(format!("gap_index {index} out of range: {} common gaps", gaps.len()))
    })?;
    Ok(Some(0.5 * (lo + hi)))
}

fn bic_at(c: &RunConfig, field: &IwatsukaField, mu: Option<f64>, length: f64) -> Result<InvariantReport> {
    let spec = c.bic_spec(length);
    let sites = spec.window(field).len();
    if sites > MAX_SLAB_SITES {
        return Err(Error::InvalidArgument(format!(
            "slab of {sites} sites exceeds the {MAX_SLAB_SITES}-site limit; reduce L, half_normal or end_margin"
        )));
    }
    verify_bic(field, mu, &spec, None)
}

pub fn verify(c: &RunConfig) -> Result<InvariantReport> {
    let field = c.field()?;
    let mu = fermi_level(c, &field)?;
    bic_at(c, &field, mu, c.slab_length)
}

/// The correspondence check repeated over slab lengths, one row per length.
pub fn conductance(c: &RunConfig) -> Result<Table> {
    let field = c.field()?;
    let mu = fermi_level(c, &field)?;
    let lengths = if c.lengths.is_empty() { vec![c.slab_length] } else { c.lengths.clone() };
    let mut table = Table::new(&[
        "L",
        "sites",
        "mu",
        "chern_plus",
        "chern_minus",
        "winding",
        "current",
        "winding_current",
        "bic_residual",
        "current_relative",
        "pass",
    ]);
    for l in lengths {
        let r = bic_at(c, &field, mu, l)?;
        table.push(vec![
            num(l),
            r.window.sites.to_string(),
            num(r.mu),
            num(r.chern_plus),
            num(r.chern_minus),
            num(r.winding),
            num(r.current),
            num(r.winding_current),
            num(r.residual.bic),
            num(r.residual.current_relative),
            r.pass.to_string(),
        ]);
    }
    Ok(table)
}
