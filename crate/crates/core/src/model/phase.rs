//! Phases in radians, split into an exact rational number of turns plus a float remainder.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// `2*pi*turns + radians`. Arithmetic on phases with `radians == 0` is exact.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Phase {
    pub turns: Ratio<i64>,
    pub radians: f64,
}

impl Phase {
    pub const ZERO: Phase = Phase { turns: Ratio::new_raw(0, 1), radians: 0.0 };

    /// `2*pi*p/q`.
    pub fn turns(p: i64, q: i64) -> Self {
        Phase { turns: Ratio::new(p, q), radians: 0.0 }
    }

    pub fn radians(x: f64) -> Self {
        Phase { turns: Ratio::zero(), radians: x }
    }

    pub fn is_exact(&self) -> bool {
        self.radians == 0.0
    }

    /// The exact turn count when the phase has no float part.
    pub fn as_turns(&self) -> Option<Ratio<i64>> {
        self.is_exact().then_some(self.turns)
    }

    pub fn to_f64(&self) -> f64 {
        std::f64::consts::TAU * self.turns.to_f64().unwrap_or(f64::NAN) + self.radians
    }

    /// Phase reduced to `[0, 2*pi)` before conversion, so large exact turn counts keep full precision.
    pub fn reduced_f64(&self) -> f64 {
        let frac = self.turns - self.turns.floor();
        std::f64::consts::TAU * frac.to_f64().unwrap_or(f64::NAN) + self.radians
    }

    /// `e^{i * self}`.
    pub fn cis(&self) -> Complex64 {
        if self.is_exact() {
            let frac = self.turns - self.turns.floor();
            // quarter turns come out exact
            let four = frac * 4;
            if four.is_integer() {
                return match four.to_integer() {
                    0 => Complex64::new(1.0, 0.0),
                    1 => Complex64::new(0.0, 1.0),
                    2 => Complex64::new(-1.0, 0.0),
                    _ => Complex64::new(0.0, -1.0),
                };
            }
        }
        Complex64::from_polar(1.0, self.reduced_f64())
    }

    /// True when the phases agree modulo `2*pi` (exactly, or to `1e-12` with a float part).
    pub fn congruent(&self, other: &Phase) -> bool {
        let d = *self - *other;
        if d.is_exact() {
            d.turns.is_integer()
        } else {
            (d.reduced_f64().sin().abs() < 1e-12) && d.reduced_f64().cos() > 0.0
        }
    }
}

impl Default for Phase {
    fn default() -> Self {
        Phase::ZERO
    }
}

impl Add for Phase {
    type Output = Phase;
    fn add(self, rhs: Phase) -> Phase {
        Phase { turns: self.turns + rhs.turns, radians: self.radians + rhs.radians }
    }
}

impl Sub for Phase {
    type Output = Phase;
    fn sub(self, rhs: Phase) -> Phase {
        Phase { turns: self.turns - rhs.turns, radians: self.radians - rhs.radians }
    }
}

impl Neg for Phase {
    type Output = Phase;
    fn neg(self) -> Phase {
        Phase { turns: -self.turns, radians: -self.radians }
    }
}

impl Mul<i64> for Phase {
    type Output = Phase;
    fn mul(self, k: i64) -> Phase {
        Phase { turns: self.turns * k, radians: self.radians * k as f64 }
    }
}

impl std::iter::Sum for Phase {
    fn sum<I: Iterator<Item = Phase>>(iter: I) -> Phase {
        iter.fold(Phase::ZERO, Add::add)
    }
}

fn parse_ratio(s: &str) -> Option<Ratio<i64>> {
    if s.contains('*') {
        return s.split('*').try_fold(Ratio::from_integer(1), |acc, part| Some(acc * parse_ratio(part)?));
    }
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().ok()?;
            let d: i64 = d.trim().parse().ok()?;
            (d != 0).then(|| Ratio::new(n, d))
        }
        None => Some(Ratio::from_integer(s.trim().parse().ok()?)),
    }
}

impl FromStr for Phase {
    type Err = Error;

    /// Accepts `2pi*1/3`, `-pi/2`, `pi`, `4*pi/3`, `1/3*2pi`, or a plain number of radians.
    fn from_str(text: &str) -> Result<Self> {
        let bad = || Error::InvalidPhase(text.to_string());
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_lowercase();
        if s.is_empty() {
            return Err(bad());
        }
        let Some(pos) = s.find("pi") else {
            let x: f64 = s.parse().map_err(|_| bad())?;
            return if x.is_finite() { Ok(Phase::radians(x)) } else { Err(bad()) };
        };
        let before = s[..pos].trim_end_matches('*');
        let after = &s[pos + 2..];
        let coef = match before {
            "" | "+" => Ratio::from_integer(1),
            "-" => Ratio::from_integer(-1),
            c => parse_ratio(c).ok_or_else(bad)?,
        };
        let factor = if after.is_empty() {
            Ratio::from_integer(1)
        } else if let Some(r) = after.strip_prefix('*') {
            parse_ratio(r).ok_or_else(bad)?
        } else if let Some(d) = after.strip_prefix('/') {
            let d: i64 = d.parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ratio::new(1, d)
        } else {
            return Err(bad());
        };
        // pi = half a turn
        Ok(Phase { turns: coef * factor / 2, radians: 0.0 })
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.turns.is_zero(), self.radians == 0.0) {
            (true, _) => write!(f, "{}", self.radians),
            (false, true) => write!(f, "2pi*{}/{}", self.turns.numer(), self.turns.denom()),
            (false, false) => write!(f, "2pi*{}/{}+{}", self.turns.numer(), self.turns.denom(), self.radians),
        }
    }
}

impl Serialize for Phase {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        if self.is_exact() {
            serializer.serialize_str(&self.to_string())
        } else {
            serializer.serialize_f64(self.to_f64())
        }
    }
}

impl<'de> Deserialize<'de> for Phase {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Number(f64),
            Text(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Number(x) => Ok(Phase::radians(x)),
            Raw::Text(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_literals() {
        assert_eq!("2pi*1/3".parse::<Phase>().unwrap(), Phase::turns(1, 3));
        assert_eq!("2pi*2/3".parse::<Phase>().unwrap(), Phase::turns(2, 3));
        assert_eq!("pi/2".parse::<Phase>().unwrap(), Phase::turns(1, 4));
        assert_eq!("-pi".parse::<Phase>().unwrap(), Phase::turns(-1, 2));
        assert_eq!("4*pi/3".parse::<Phase>().unwrap(), Phase::turns(2, 3));
        assert_eq!("1/3*2pi".parse::<Phase>().unwrap(), Phase::turns(1, 3));
        assert_eq!("0.25".parse::<Phase>().unwrap(), Phase::radians(0.25));
        assert!("2pi*1/0".parse::<Phase>().is_err());
        assert!("twopi".parse::<Phase>().is_err());
    }

    #[test]
    fn exact_arithmetic() {
        let a = Phase::turns(1, 3);
        assert_eq!(a * 3 - Phase::turns(1, 1), Phase::ZERO);
        assert!((a * 3).congruent(&Phase::ZERO));
        assert!(!a.congruent(&Phase::turns(2, 3)));
    }

    #[test]
    fn cis_values() {
        assert_eq!(Phase::ZERO.cis(), Complex64::new(1.0, 0.0));
        assert_eq!(Phase::turns(1, 2).cis(), Complex64::new(-1.0, 0.0));
        let w = Phase::turns(1, 3).cis();
        assert!((w - Complex64::new(-0.5, 3f64.sqrt() / 2.0)).norm() < 1e-15);
        // large turn counts reduce before conversion
        assert!((Phase::turns(1_000_000_000, 3).cis() - w).norm() < 1e-15);
    }

    #[test]
    fn serde_round_trip() {
        let p = Phase::turns(2, 3);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(serde_json::from_str::<Phase>(&s).unwrap(), p);
        assert_eq!(serde_json::from_str::<Phase>("1.5").unwrap(), Phase::radians(1.5));
    }
}
