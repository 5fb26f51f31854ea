//! Magnetic translations, the flux operator and the diagonal hull projections.

use std::cmp::Ordering;
use std::sync::Arc;

use num_complex::Complex64 as C64;

use super::{LatticeOperator, OpMatrix};
use crate::model::{IwatsukaField, LatticeWindow, Site};
use crate::{Error, Result};

/// `(s_j psi)(n) = e^{i A(n, n - e_j)} psi(n - e_j)`, open boundary.
pub fn magnetic_translation(field: &IwatsukaField, window: &Arc<LatticeWindow>, j: usize) -> Result<LatticeOperator> {
    assert!(j == 1 || j == 2, "translation direction must be 1 or 2");
    let e: Site = if j == 1 { [1, 0] } else { [0, 1] };
    let mut entries = Vec::with_capacity(window.len());
    for (row, &n) in window.sites().iter().enumerate() {
        if let Some(col) = window.index([n[0] - e[0], n[1] - e[1]]) {
            entries.push((row, col, field.vector_potential(n, j)?.cis()));
        }
    }
    let mut op = LatticeOperator::new(window.clone(), OpMatrix::from_triplets(window.len(), entries));
    op.unitary_on_interior = true;
    Ok(op)
}

/// `s^gamma = s_1^{gamma_1} s_2^{gamma_2}`, negative powers through adjoints.
pub fn translation(field: &IwatsukaField, window: &Arc<LatticeWindow>, gamma: Site) -> Result<LatticeOperator> {
    let power = |j: usize, k: i64| -> Result<LatticeOperator> {
        let s = magnetic_translation(field, window, j)?;
        let base = if k < 0 { s.adjoint() } else { s };
        let mut acc = LatticeOperator::identity(window.clone());
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    };
    let mut op = power(1, gamma[0])?.mul(&power(2, gamma[1])?);
    op.unitary_on_interior = true;
    Ok(op)
}

/// `diag(e^{i B(n)})`.
pub fn flux_operator(field: &IwatsukaField, window: &Arc<LatticeWindow>) -> Result<LatticeOperator> {
    let phases: Vec<C64> = window.sites().iter().map(|&n| field.flux_phase(n)).collect::<Result<_>>()?;
    Ok(LatticeOperator::diagonal(window.clone(), |n| phases[window.index(n).unwrap()]))
}

/// Diagonal position operator `v . n`.
pub fn position(window: &Arc<LatticeWindow>, v: [f64; 2]) -> LatticeOperator {
    LatticeOperator::diagonal(window.clone(), |n| C64::new(v[0] * n[0] as f64 + v[1] * n[1] as f64, 0.0))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProjectionKind {
    Q,
    R,
    L,
    QPerp,
}

/// The projections `q_n`, `r_n`, `l_n`, `q_n^perp`, evaluated from shifted flux functions
/// `sigma_k(f)(m) = f(m - k)` of the unperturbed field.
pub fn hull_projection(
    field: &IwatsukaField,
    window: &Arc<LatticeWindow>,
    kind: ProjectionKind,
    base: Site,
) -> Result<LatticeOperator> {
    let (wp, wm) = (field.b_plus.cis(), field.b_minus.cis());
    if field.b_plus.congruent(&field.b_minus) {
        return Err(Error::DegenerateField);
    }
    let f = |m: Site, k: Site| -> Result<C64> { Ok(field.bulk_value([m[0] - k[0], m[1] - k[1]])?.cis()) };
    let sign_alpha = match field.slope.to_f64().partial_cmp(&0.0) {
        Some(Ordering::Greater) => 1.0,
        Some(Ordering::Less) => -1.0,
        _ => 0.0,
    };
    let e1 = [base[0] + 1, base[1]];
    let e2 = [base[0], base[1] + 1];
    let value = |m: Site| -> Result<C64> {
        Ok(match kind {
            ProjectionKind::Q => (f(m, base)? - wm) / (wp - wm),
            ProjectionKind::QPerp => C64::new(1.0, 0.0) - (f(m, base)? - wm) / (wp - wm),
            ProjectionKind::R => (f(m, e1)? - f(m, base)?) * sign_alpha / (wp - wm),
            ProjectionKind::L => (f(m, e2)? - f(m, base)?) / (wm - wp),
        })
    };
    let values: Vec<C64> = window.sites().iter().map(|&m| value(m)).collect::<Result<_>>()?;
    let mut op = LatticeOperator::diagonal(window.clone(), |m| {
        let v = values[window.index(m).unwrap()];
        // exact 0/1 up to rounding of the phase differences
        C64::new(v.re.round(), 0.0)
    });
    let defect = values.iter().map(|v| (v - C64::new(v.re.round(), 0.0)).norm()).fold(0.0, f64::max);
    if defect > 1e-12 {
        return Err(Error::NotProjection(defect));
    }
    op.hermitian = true;
    op.unitary_on_interior = false;
    Ok(op)
}
