//! The two bulk point masses and the interface measure, at window resolution.

use serde::Serialize;

use super::{sorted_levels, HullPoint};
use crate::model::Slope;
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MeasureKind {
    BulkPlus,
    BulkMinus,
    Interface,
}

/// How irrational-slope gap lengths are scaled.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MeasureNormalization {
    /// Per unit Euclidean length along the interface: `dx / sqrt(1 + alpha^2)`.
    #[default]
    TangentialSlab,
    /// Lebesgue measure in `x`, unit mass on `x`-intervals of length one.
    UnitX,
}

/// Point masses on hull points.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MeasureWeights {
    pub kind: MeasureKind,
    pub atoms: Vec<(HullPoint, f64)>,
}

impl MeasureWeights {
    pub fn total(&self) -> f64 {
        self.atoms.iter().map(|(_, w)| w).sum()
    }

    pub fn weight_of(&self, mut select: impl FnMut(&HullPoint) -> bool) -> f64 {
        self.atoms.iter().filter(|(p, _)| select(p)).map(|(_, w)| w).sum()
    }
}

pub fn bulk_measure(kind: MeasureKind) -> MeasureWeights {
    let point = match kind {
        MeasureKind::BulkPlus => HullPoint::Plus,
        MeasureKind::BulkMinus => HullPoint::Minus,
        MeasureKind::Interface => panic!("interface measure needs a slope; use interface_measure_weight"),
    };
    MeasureWeights { kind, atoms: vec![(point, 1.0)] }
}

/// Interface measure on the transversal seen through `[-M, M]^2`.
///
/// Rational slopes put `c_alpha` on one point per `x`-value. Irrational slopes weigh the
/// point `omega_x` by the gap from `x` to the next larger window value; the largest value
/// carries no gap and is dropped.
pub fn interface_measure_weight(slope: &Slope, m: i64, normalization: MeasureNormalization) -> Result<MeasureWeights> {
    let levels = sorted_levels(slope, m)?;
    let atoms = if let Some(c) = slope.c_alpha() {
        levels.iter().map(|level| (HullPoint::threshold(level[0], false), c)).collect()
    } else {
        let scale = match normalization {
            MeasureNormalization::TangentialSlab => 1.0 / (1.0 + slope.to_f64().powi(2)).sqrt(),
            MeasureNormalization::UnitX => 1.0,
        };
        levels
            .windows(2)
            .map(|w| {
                let gap = slope.x_value(w[1][0]) - slope.x_value(w[0][0]);
                (HullPoint::threshold(w[0][0], false), scale * gap)
            })
            .collect()
    };
    Ok(MeasureWeights { kind: MeasureKind::Interface, atoms })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_weights() {
        let w = interface_measure_weight(&Slope::rational(1, 2).unwrap(), 3, MeasureNormalization::default()).unwrap();
        assert!(w.atoms.iter().all(|(_, x)| (x - 1.0 / 5f64.sqrt()).abs() < 1e-15));
        let v = interface_measure_weight(&Slope::PlusInfinity, 3, MeasureNormalization::default()).unwrap();
        assert!(v.atoms.iter().all(|(_, x)| *x == 1.0));
        assert_eq!(v.atoms.len(), 7);
    }

    #[test]
    fn bulk_mass() {
        assert_eq!(bulk_measure(MeasureKind::BulkPlus).weight_of(|p| *p == HullPoint::Plus), 1.0);
    }

    #[test]
    fn irrational_total_is_window_span() {
        let s = Slope::sqrt(2).unwrap();
        let w = interface_measure_weight(&s, 4, MeasureNormalization::UnitX).unwrap();
        let span = s.x_value([-4, 4]) - s.x_value([4, -4]);
        assert!((w.total() - span).abs() < 1e-12);
    }
}
