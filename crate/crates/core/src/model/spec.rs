//! Serializable field descriptions: `{"type": "rational", "p": 1, "q": 3}` and `rational:1,3` style literals.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{IwatsukaField, Phase, QuadraticSurd, Slope};
use crate::{Error, Result};

/// A float slope given as a JSON number or as a decimal string; strings keep every digit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Decimal {
    Number(f64),
    Text(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum SlopeSpec {
    Rational { p: i64, q: i64 },
    Quadratic { a: i64, b: i64, c: i64, d: i64 },
    Float { value: Decimal },
    #[serde(rename = "+inf")]
    PlusInfinity,
    #[serde(rename = "-inf")]
    MinusInfinity,
}

impl SlopeSpec {
    pub fn resolve(&self) -> Result<Slope> {
        match self {
            SlopeSpec::Rational { p, q } => Slope::rational(*p, *q),
            SlopeSpec::Quadratic { a, b, c, d } => Slope::quadratic(*a, *b, *c, *d),
            SlopeSpec::Float { value: Decimal::Number(x) } => Slope::float(&x.to_string()),
            SlopeSpec::Float { value: Decimal::Text(s) } => Slope::float(s),
            SlopeSpec::PlusInfinity => Ok(Slope::PlusInfinity),
            SlopeSpec::MinusInfinity => Ok(Slope::MinusInfinity),
        }
    }
}

impl From<&Slope> for SlopeSpec {
    fn from(slope: &Slope) -> Self {
        match slope {
            Slope::Rational { p, q } => SlopeSpec::Rational { p: *p, q: *q },
            Slope::QuadraticIrrational(QuadraticSurd { a, b, c, d }) => {
                SlopeSpec::Quadratic { a: *a, b: *b, c: *c, d: *d }
            }
            Slope::FloatIrrational(x) => SlopeSpec::Float { value: Decimal::Text(x.to_string()) },
            Slope::PlusInfinity => SlopeSpec::PlusInfinity,
            Slope::MinusInfinity => SlopeSpec::MinusInfinity,
        }
    }
}

/// `rational:p,q`, `quadratic:a,b,c,d`, `float:1.414...`, `+inf`, `-inf`.
impl FromStr for SlopeSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let bad = || Error::InvalidSlope(format!("expected rational:p,q | quadratic:a,b,c,d | float:x | +inf | -inf, got {text:?}"));
        let text = text.trim();
        match text {
            "+inf" | "inf" => return Ok(SlopeSpec::PlusInfinity),
            "-inf" => return Ok(SlopeSpec::MinusInfinity),
            _ => {}
        }
        let (kind, args) = text.split_once(':').ok_or_else(bad)?;
        let ints = || -> Result<Vec<i64>> {
            args.split(',').map(|s| s.trim().parse::<i64>().map_err(|_| bad())).collect()
        };
        match kind.trim() {
            "rational" => match ints()?[..] {
                [p, q] => Ok(SlopeSpec::Rational { p, q }),
                _ => Err(bad()),
            },
            "quadratic" => match ints()?[..] {
                [a, b, c, d] => Ok(SlopeSpec::Quadratic { a, b, c, d }),
                _ => Err(bad()),
            },
            "float" => Ok(SlopeSpec::Float { value: Decimal::Text(args.trim().to_string()) }),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for SlopeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SlopeSpec::Rational { p, q } => write!(f, "rational:{p},{q}"),
            SlopeSpec::Quadratic { a, b, c, d } => write!(f, "quadratic:{a},{b},{c},{d}"),
            SlopeSpec::Float { value: Decimal::Number(x) } => write!(f, "float:{x}"),
            SlopeSpec::Float { value: Decimal::Text(s) } => write!(f, "float:{s}"),
            SlopeSpec::PlusInfinity => write!(f, "+inf"),
            SlopeSpec::MinusInfinity => write!(f, "-inf"),
        }
    }
}

/// Two bulk values, a slope and a finite list of `[n1, n2, delta_b]` plaquette perturbations.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub slope: SlopeSpec,
    pub b_plus: Phase,
    pub b_minus: Phase,
    #[serde(default)]
    pub perturbation: Vec<(i64, i64, Phase)>,
}

impl FieldSpec {
    /// Equal bulk values give a uniform field that still remembers the slope.
    pub fn resolve(&self) -> Result<IwatsukaField> {
        let slope = self.slope.resolve()?;
        let base = if self.b_plus.congruent(&self.b_minus) {
            IwatsukaField { slope, ..IwatsukaField::uniform(self.b_plus) }
        } else {
            IwatsukaField::new(slope, self.b_plus, self.b_minus)?
        };
        Ok(base.with_perturbation(self.perturbation.iter().map(|&(n1, n2, db)| ([n1, n2], db))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals_round_trip() {
        for text in ["rational:1,2", "quadratic:0,1,1,2", "float:1.4142135623730950488", "+inf", "-inf"] {
            let spec: SlopeSpec = text.parse().unwrap();
            assert_eq!(spec.to_string(), text);
            spec.resolve().unwrap();
        }
        assert!("rational:1".parse::<SlopeSpec>().is_err());
        assert!("cubic:1,2".parse::<SlopeSpec>().is_err());
    }

    #[test]
    fn resolves_degenerate_bulk_to_uniform() {
        let spec = FieldSpec {
            slope: SlopeSpec::Rational { p: 1, q: 2 },
            b_plus: Phase::turns(1, 3),
            b_minus: Phase::turns(4, 3),
            perturbation: vec![(0, 0, Phase::turns(1, 4))],
        };
        let field = spec.resolve().unwrap();
        assert_eq!(field.slope, Slope::rational(1, 2).unwrap());
        assert_eq!(field.perturbation.len(), 1);
    }
}
