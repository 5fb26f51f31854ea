//! The interface unitary `w' = 1 + (s_gamma - 1) p` translating a strip along the interface.

use std::cmp::Ordering;
use std::sync::Arc;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::{translation, LatticeOperator, OpMatrix};
use crate::model::{IwatsukaField, LatticeWindow, Site, Slope};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WPrimeVariant {
    /// Strip `0 < x <= 1/q`: one transversal point.
    #[default]
    Minimal,
    /// Strip `0 < x <= (p^2 + q^2)/q`: the `(-p, q)` shift of `q_0`.
    Wide,
}

/// Lattice vector `gamma` with `x_gamma` the strip width.
fn strip_vector(slope: &Slope, variant: WPrimeVariant) -> Result<Site> {
    let (p, q) = slope.as_rational().ok_or(Error::IrrationalSlope)?;
    Ok(match (variant, q) {
        // x = -+n1 at +-inf
        (_, 0) => [-p, 0],
        (WPrimeVariant::Wide, _) => [-p, q],
        (WPrimeVariant::Minimal, _) => {
            // -p s + q t = 1
            let (g, s0, t0) = extended_gcd(-p, q);
            debug_assert_eq!(g.abs(), 1);
            [s0 * g, t0 * g]
        }
    })
}

fn extended_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = extended_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Diagonal indicator of `0 < x_n <= x_gamma`.
pub fn strip_projection(slope: &Slope, window: &Arc<LatticeWindow>, variant: WPrimeVariant) -> Result<LatticeOperator> {
    let gamma = strip_vector(slope, variant)?;
    let inside: Vec<bool> = window
        .sites()
        .iter()
        .map(|&n| Ok(slope.x_value_sign(n)? == Ordering::Greater && slope.compare_x(n, gamma)? != Ordering::Greater))
        .collect::<Result<_>>()?;
    let mut op = LatticeOperator::diagonal(window.clone(), |n| {
        C64::new(if inside[window.index(n).unwrap()] { 1.0 } else { 0.0 }, 0.0)
    });
    op.unitary_on_interior = false;
    Ok(op)
}

/// `w' = 1 + (s_v - 1) p` with `v = (q, p)`, or `(0, +-1)` at `alpha = +-inf`.
pub fn w_prime(field: &IwatsukaField, window: &Arc<LatticeWindow>, variant: WPrimeVariant) -> Result<LatticeOperator> {
    let v = field.slope.period_vector().ok_or(Error::IrrationalSlope)?;
    let strip = strip_projection(&field.slope, window, variant)?.diag();
    let s = translation(field, window, v)?;
    let mut entries = Vec::new();
    for (i, p) in strip.iter().enumerate() {
        if p.re == 0.0 {
            entries.push((i, i, C64::new(1.0, 0.0)));
        }
    }
    s.matrix.for_each_nonzero(|i, j, val| {
        if strip[j].re != 0.0 {
            entries.push((i, j, val));
        }
    });
    let mut op = LatticeOperator::new(window.clone(), OpMatrix::from_triplets(window.len(), entries));
    op.unitary_on_interior = true;
    Ok(op)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_strip_vector_has_x_one_over_q() {
        for (p, q) in [(0, 1), (1, 1), (1, 2), (2, 3), (-3, 5)] {
            let s = Slope::rational(p, q).unwrap();
            let g = strip_vector(&s, WPrimeVariant::Minimal).unwrap();
            assert!((s.x_value(g) - 1.0 / q as f64).abs() < 1e-12, "{p}/{q}");
            let g = strip_vector(&s, WPrimeVariant::Wide).unwrap();
            assert!((s.x_value(g) - (p * p + q * q) as f64 / q as f64).abs() < 1e-12);
        }
        for s in [Slope::PlusInfinity, Slope::MinusInfinity] {
            assert_eq!(s.x_value(strip_vector(&s, WPrimeVariant::Minimal).unwrap()), 1.0);
        }
    }

    #[test]
    fn irrational_rejected() {
        let w = Arc::new(LatticeWindow::square(2));
        let f = IwatsukaField::new(Slope::sqrt(2).unwrap(), crate::model::Phase::turns(1, 3), crate::model::Phase::ZERO)
            .unwrap();
        assert_eq!(w_prime(&f, &w, WPrimeVariant::Minimal).unwrap_err(), Error::IrrationalSlope);
    }
}
