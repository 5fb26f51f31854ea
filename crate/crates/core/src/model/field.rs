//! The two-valued Iwatsuka field, its column gauge and the flux function.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::Serialize;

use super::{Phase, Site, Slope};
use crate::{Error, Result};

/// Which asymptotic value a site carries before any perturbation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Side {
    Plus,
    Minus,
}

/// `B(n) = b+` on one side of the line `x_n = 0`, `b-` on the other, plus a finitely supported perturbation.
#[derive(Clone, Debug, PartialEq)]
pub struct IwatsukaField {
    pub slope: Slope,
    pub b_plus: Phase,
    pub b_minus: Phase,
    pub perturbation: BTreeMap<Site, Phase>,
}

impl IwatsukaField {
    pub fn new(slope: Slope, b_plus: Phase, b_minus: Phase) -> Result<Self> {
        if b_plus.congruent(&b_minus) {
            return Err(Error::DegenerateField);
        }
        Ok(Self { slope, b_plus, b_minus, perturbation: BTreeMap::new() })
    }

    /// Constant field `B = b`. Hull projections are undefined for it.
    pub fn uniform(b: Phase) -> Self {
        Self { slope: Slope::zero(), b_plus: b, b_minus: b, perturbation: BTreeMap::new() }
    }

    pub fn zero() -> Self {
        Self::uniform(Phase::ZERO)
    }

    pub fn with_perturbation(mut self, perturbation: impl IntoIterator<Item = (Site, Phase)>) -> Self {
        for (site, db) in perturbation {
            let entry = self.perturbation.entry(site).or_insert(Phase::ZERO);
            *entry = *entry + db;
        }
        self
    }

    pub fn is_uniform(&self) -> bool {
        self.b_plus == self.b_minus && self.perturbation.is_empty()
    }

    /// `Plus` iff `x_n > 0` for finite slopes; `Minus` iff `n1 > 0` at `+inf`, `Plus` iff `n1 > 0` at `-inf`.
    pub fn side(&self, n: Site) -> Result<Side> {
        if self.b_plus == self.b_minus {
            return Ok(Side::Plus);
        }
        Ok(match self.slope {
            Slope::PlusInfinity => {
                if n[0] > 0 {
                    Side::Minus
                } else {
                    Side::Plus
                }
            }
            Slope::MinusInfinity => {
                if n[0] > 0 {
                    Side::Plus
                } else {
                    Side::Minus
                }
            }
            _ => match self.slope.x_value_sign(n)? {
                Ordering::Greater => Side::Plus,
                _ => Side::Minus,
            },
        })
    }

    /// Unperturbed value `b+` or `b-`.
    pub fn bulk_value(&self, n: Site) -> Result<Phase> {
        Ok(match self.side(n)? {
            Side::Plus => self.b_plus,
            Side::Minus => self.b_minus,
        })
    }

    pub fn field_value(&self, n: Site) -> Result<Phase> {
        let base = self.bulk_value(n)?;
        Ok(match self.perturbation.get(&n) {
            Some(db) => base + *db,
            None => base,
        })
    }

    /// `A(n, n - e_j)`: zero for `j = 2`, signed partial column sums of `B` for `j = 1`.
    pub fn vector_potential(&self, n: Site, j: usize) -> Result<Phase> {
        debug_assert!(j == 1 || j == 2);
        if j == 2 {
            return Ok(Phase::ZERO);
        }
        let [n1, n2] = n;
        if n2 > 0 {
            (1..=n2).map(|m| self.field_value([n1, m])).sum()
        } else {
            (0..-n2).map(|m| self.field_value([n1, -m]).map(|b| -b)).sum()
        }
    }

    /// Four-term circulation of the gauge around the plaquette labelled `n`.
    pub fn circulation(&self, n: Site) -> Result<Phase> {
        let down = [n[0], n[1] - 1];
        let left = [n[0] - 1, n[1]];
        Ok(self.vector_potential(n, 1)? - self.vector_potential(down, 1)?
            + self.vector_potential(left, 2)?
            - self.vector_potential(n, 2)?)
    }

    pub fn flux_phase(&self, n: Site) -> Result<Complex64> {
        Ok(self.field_value(n)?.cis())
    }

    /// Field restricted to one bulk value everywhere.
    pub fn bulk(&self, side: Side) -> IwatsukaField {
        IwatsukaField::uniform(match side {
            Side::Plus => self.b_plus,
            Side::Minus => self.b_minus,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iwatsuka(slope: Slope) -> IwatsukaField {
        IwatsukaField::new(slope, Phase::turns(1, 3), Phase::turns(2, 3)).unwrap()
    }

    #[test]
    fn field_values() {
        let f = iwatsuka(Slope::rational(1, 2).unwrap());
        assert_eq!(f.field_value([0, 1]).unwrap(), f.b_plus);
        assert_eq!(f.field_value([0, 0]).unwrap(), f.b_minus);
        let g = iwatsuka(Slope::PlusInfinity);
        assert_eq!(g.field_value([1, 0]).unwrap(), g.b_minus);
        assert_eq!(g.field_value([0, 0]).unwrap(), g.b_plus);
        let h = iwatsuka(Slope::MinusInfinity);
        assert_eq!(h.field_value([1, 0]).unwrap(), h.b_plus);
    }

    #[test]
    fn degenerate_rejected() {
        let r = IwatsukaField::new(Slope::zero(), Phase::turns(1, 3), Phase::turns(4, 3));
        assert_eq!(r.unwrap_err(), Error::DegenerateField);
    }

    #[test]
    fn constant_potential() {
        let b = Phase::radians(0.7);
        let f = IwatsukaField::uniform(b);
        assert!((f.vector_potential([5, 3], 1).unwrap().to_f64() - 2.1).abs() < 1e-15);
        assert!((f.vector_potential([5, -2], 1).unwrap().to_f64() + 1.4).abs() < 1e-15);
        assert_eq!(f.vector_potential([5, 0], 1).unwrap(), Phase::ZERO);
        assert_eq!(f.vector_potential([5, 9], 2).unwrap(), Phase::ZERO);
    }

    #[test]
    fn circulation_reproduces_field() {
        let fields = [
            IwatsukaField::zero(),
            IwatsukaField::uniform(Phase::turns(1, 3)),
            iwatsuka(Slope::rational(1, 2).unwrap()),
            iwatsuka(Slope::sqrt(2).unwrap()),
            iwatsuka(Slope::MinusInfinity).with_perturbation([([0, 0], Phase::turns(1, 8))]),
        ];
        for f in &fields {
            for n1 in -10..10 {
                for n2 in -10..10 {
                    let n = [n1, n2];
                    assert_eq!(f.circulation(n).unwrap(), f.field_value(n).unwrap(), "at {n:?}");
                }
            }
        }
    }

    #[test]
    fn flux_phase_example() {
        let f = iwatsuka(Slope::rational(1, 2).unwrap());
        let w = f.flux_phase([0, 1]).unwrap();
        assert!((w - Complex64::from_polar(1.0, std::f64::consts::TAU / 3.0)).norm() < 1e-15);
        assert_eq!(IwatsukaField::uniform(Phase::turns(1, 2)).flux_phase([3, 3]).unwrap(), Complex64::new(-1.0, 0.0));
    }
}
