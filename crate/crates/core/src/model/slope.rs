//! Interface slopes with exact sign decisions for `x_n = -alpha * n1 + n2`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::Site;
use crate::{Error, Result};

/// Fraction bits carried by [`ExtendedFloat`].
pub const FRACTION_BITS: u32 = 256;

/// `(a + b*sqrt(d)) / c` with `b != 0`, `c > 0` and `d` a positive non-square.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadraticSurd {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl QuadraticSurd {
    pub fn to_f64(&self) -> f64 {
        (self.a as f64 + self.b as f64 * (self.d as f64).sqrt()) / self.c as f64
    }

    /// Sign of `u - v*sqrt(d)` decided by comparing squares.
    fn sign_of_difference(u: i128, v: i128, d: i128) -> Ordering {
        if v == 0 {
            return u.cmp(&0);
        }
        match (u.cmp(&0), v.cmp(&0)) {
            // u >= 0 > v: u - v*sqrt(d) > 0
            (Ordering::Greater | Ordering::Equal, Ordering::Less) => Ordering::Greater,
            (Ordering::Less | Ordering::Equal, Ordering::Greater) => Ordering::Less,
            _ => {
                let lhs = u.checked_mul(u);
                let rhs = v.checked_mul(v).and_then(|v2| v2.checked_mul(d));
                let squares = match (lhs, rhs) {
                    (Some(l), Some(r)) => l.cmp(&r),
                    _ => {
                        let (u, v, d) = (BigInt::from(u), BigInt::from(v), BigInt::from(d));
                        (&u * &u).cmp(&(&v * &v * d))
                    }
                };
                // both positive: sign(u^2 - v^2 d); both negative: the opposite
                if u > 0 {
                    squares
                } else {
                    squares.reverse()
                }
            }
        }
    }

    fn x_sign(&self, n: Site) -> Ordering {
        // x_n = (c*n2 - a*n1 - b*n1*sqrt(d)) / c with c > 0
        let (n1, n2) = (n[0] as i128, n[1] as i128);
        let u = self.c as i128 * n2 - self.a as i128 * n1;
        let v = self.b as i128 * n1;
        Self::sign_of_difference(u, v, self.d as i128)
    }
}

/// Fixed-point real `mantissa / 2^FRACTION_BITS` known to within `radius` units
/// of the last place.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendedFloat {
    mantissa: BigInt,
    radius: BigInt,
}

impl ExtendedFloat {
    /// Parses a decimal literal such as `1.41421356237309504880168872420969807856967187537694`.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = || Error::InvalidSlope(format!("cannot parse {text:?} as a decimal number"));
        let s = text.trim();
        let (negative, s) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s.strip_prefix('+').unwrap_or(s)),
        };
        let (body, exponent) = match s.find(['e', 'E']) {
            Some(pos) => (&s[..pos], s[pos + 1..].parse::<i64>().map_err(|_| bad())?),
            None => (s, 0),
        };
        let (int_part, frac_part) = match body.find('.') {
            Some(pos) => (&body[..pos], &body[pos + 1..]),
            None => (body, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let digits: String = format!("{int_part}{frac_part}");
        let mut numerator: BigInt = digits.parse().map_err(|_| bad())?;
        if negative {
            numerator = -numerator;
        }
        let power = exponent - frac_part.len() as i64;
        let scaled = numerator << FRACTION_BITS;
        let (mantissa, radius) = if power >= 0 {
            (scaled * BigInt::from(10).pow(power as u32), BigInt::zero())
        } else {
            let den = BigInt::from(10).pow((-power) as u32);
            let (q, r) = scaled.div_mod_floor(&den);
            if r.is_zero() {
                (q, BigInt::zero())
            } else if (&r << 1) >= den {
                (q + 1, BigInt::one())
            } else {
                (q, BigInt::one())
            }
        };
        Ok(Self { mantissa, radius })
    }

    pub fn to_f64(&self) -> f64 {
        let shift = FRACTION_BITS - 60;
        let top: BigInt = &self.mantissa >> shift;
        top.to_f64().unwrap_or(f64::NAN) / (1u64 << 60) as f64
    }

    fn x_sign(&self, n: Site) -> Result<Ordering> {
        let n1 = BigInt::from(n[0]);
        let scaled_x = (BigInt::from(n[1]) << FRACTION_BITS) - &self.mantissa * &n1;
        let uncertainty = &self.radius * n1.abs();
        if scaled_x.abs() > uncertainty {
            Ok(if scaled_x.is_positive() { Ordering::Greater } else { Ordering::Less })
        } else if uncertainty.is_zero() {
            Ok(Ordering::Equal)
        } else {
            Err(Error::PrecisionExhausted {
                site: n,
                x_approx: n[1] as f64 - self.to_f64() * n[0] as f64,
            })
        }
    }
}

impl fmt::Display for ExtendedFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.17}", self.to_f64())
    }
}

/// Slope `alpha` of the interface line through the origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Slope {
    /// `p/q` in lowest terms with `q > 0`.
    Rational { p: i64, q: i64 },
    QuadraticIrrational(QuadraticSurd),
    FloatIrrational(ExtendedFloat),
    PlusInfinity,
    MinusInfinity,
}

impl Slope {
    pub fn rational(p: i64, q: i64) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidSlope(
                "q = 0; use PlusInfinity/MinusInfinity for vertical interfaces".into(),
            ));
        }
        let g = p.gcd(&q);
        let sign = q.signum();
        Ok(Slope::Rational { p: sign * p / g, q: sign * q / g })
    }

    pub fn zero() -> Self {
        Slope::Rational { p: 0, q: 1 }
    }

    pub fn quadratic(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        if b == 0 {
            return Err(Error::InvalidSlope("b = 0 gives a rational slope".into()));
        }
        if c <= 0 {
            return Err(Error::InvalidSlope("c must be positive".into()));
        }
        if d <= 0 {
            return Err(Error::InvalidSlope("d must be positive".into()));
        }
        let root = (d as f64).sqrt().round() as i64;
        if (root - 1..=root + 1).any(|r| r >= 0 && r * r == d) {
            return Err(Error::InvalidSlope(format!("d = {d} is a perfect square")));
        }
        Ok(Slope::QuadraticIrrational(QuadraticSurd { a, b, c, d }))
    }

    /// `sqrt(d)`.
    pub fn sqrt(d: i64) -> Result<Self> {
        Self::quadratic(0, 1, 1, d)
    }

    pub fn float(text: &str) -> Result<Self> {
        Ok(Slope::FloatIrrational(ExtendedFloat::parse(text)?))
    }

    /// `Some((p, q))` for rational slopes, with `(+-1, 0)` standing for `+-inf`.
    pub fn as_rational(&self) -> Option<(i64, i64)> {
        match self {
            Slope::Rational { p, q } => Some((*p, *q)),
            Slope::PlusInfinity => Some((1, 0)),
            Slope::MinusInfinity => Some((-1, 0)),
            _ => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.as_rational().is_some()
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Slope::PlusInfinity | Slope::MinusInfinity)
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Slope::Rational { p, q } => *p as f64 / *q as f64,
            Slope::QuadraticIrrational(s) => s.to_f64(),
            Slope::FloatIrrational(x) => x.to_f64(),
            Slope::PlusInfinity => f64::INFINITY,
            Slope::MinusInfinity => f64::NEG_INFINITY,
        }
    }

    /// Exact sign of `x_n`; `x_n = -+n1` for `alpha = +-inf`.
    pub fn x_value_sign(&self, n: Site) -> Result<Ordering> {
        Ok(match self {
            Slope::Rational { p, q } => {
                (-(*p as i128) * n[0] as i128 + *q as i128 * n[1] as i128).cmp(&0)
            }
            Slope::QuadraticIrrational(s) => s.x_sign(n),
            Slope::FloatIrrational(x) => x.x_sign(n)?,
            Slope::PlusInfinity => (-n[0]).cmp(&0),
            Slope::MinusInfinity => n[0].cmp(&0),
        })
    }

    /// Exact comparison of `x_n` with `x_m`.
    pub fn compare_x(&self, n: Site, m: Site) -> Result<Ordering> {
        self.x_value_sign([n[0] - m[0], n[1] - m[1]])
    }

    /// Floating-point `x_n`, for reporting and geometry only.
    pub fn x_value(&self, n: Site) -> f64 {
        match self {
            Slope::Rational { p, q } => (-(*p as f64) * n[0] as f64 + (*q as f64) * n[1] as f64) / *q as f64,
            Slope::PlusInfinity => -(n[0] as f64),
            Slope::MinusInfinity => n[0] as f64,
            _ => n[1] as f64 - self.to_f64() * n[0] as f64,
        }
    }

    /// Unit tangent `v = (1, alpha)/sqrt(1 + alpha^2)`, `(0, +-1)` at `+-inf`.
    pub fn tangent(&self) -> [f64; 2] {
        match self {
            Slope::PlusInfinity => [0.0, 1.0],
            Slope::MinusInfinity => [0.0, -1.0],
            Slope::Rational { p, q } => {
                let norm = ((*p as f64).powi(2) + (*q as f64).powi(2)).sqrt();
                [*q as f64 / norm, *p as f64 / norm]
            }
            _ => {
                let a = self.to_f64();
                let norm = (1.0 + a * a).sqrt();
                [1.0 / norm, a / norm]
            }
        }
    }

    /// Unit normal `(-alpha, 1)/sqrt(1 + alpha^2)`, `+-(1, 0)` at `+-inf`.
    pub fn normal(&self) -> [f64; 2] {
        match self {
            Slope::PlusInfinity => [1.0, 0.0],
            Slope::MinusInfinity => [-1.0, 0.0],
            _ => {
                let [t1, t2] = self.tangent();
                [-t2, t1]
            }
        }
    }

    /// Tangential coordinate `v . n`.
    pub fn tangential(&self, n: Site) -> f64 {
        let [v1, v2] = self.tangent();
        v1 * n[0] as f64 + v2 * n[1] as f64
    }

    /// Signed distance of `n` from the interface line, positive on the `b+` side.
    pub fn normal_distance(&self, n: Site) -> f64 {
        match self {
            Slope::PlusInfinity | Slope::MinusInfinity => self.x_value(n),
            _ => self.x_value(n) / (1.0 + self.to_f64().powi(2)).sqrt(),
        }
    }

    /// Smallest positive element of `X_alpha` for rational slopes.
    pub fn min_positive_x(&self) -> Option<f64> {
        match self.as_rational()? {
            (_, 0) => Some(1.0),
            (_, q) => Some(1.0 / q as f64),
        }
    }

    /// Primitive lattice vector pointing along `+v`; `x` vanishes on it.
    pub fn period_vector(&self) -> Option<Site> {
        match self {
            Slope::Rational { p, q } => Some([*q, *p]),
            Slope::PlusInfinity => Some([0, 1]),
            Slope::MinusInfinity => Some([0, -1]),
            _ => None,
        }
    }

    /// `c_alpha = 1/sqrt(p^2 + q^2)`, and 1 at `+-inf`.
    pub fn c_alpha(&self) -> Option<f64> {
        let (p, q) = self.as_rational()?;
        Some(1.0 / ((p as f64).powi(2) + (q as f64).powi(2)).sqrt())
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slope::Rational { p, q } => write!(f, "{p}/{q}"),
            Slope::QuadraticIrrational(s) => write!(f, "({}+{}*sqrt({}))/{}", s.a, s.b, s.d, s.c),
            Slope::FloatIrrational(x) => write!(f, "{x}"),
            Slope::PlusInfinity => write!(f, "+inf"),
            Slope::MinusInfinity => write!(f, "-inf"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_is_reduced() {
        assert_eq!(Slope::rational(2, -4).unwrap(), Slope::Rational { p: -1, q: 2 });
        assert_eq!(Slope::rational(0, 7).unwrap(), Slope::zero());
        assert!(Slope::rational(1, 0).is_err());
    }

    #[test]
    fn quadratic_rejects_squares() {
        assert!(Slope::quadratic(0, 1, 1, 4).is_err());
        assert!(Slope::quadratic(0, 1, 1, 49).is_err());
        assert!(Slope::quadratic(0, 0, 1, 2).is_err());
        assert!(Slope::sqrt(2).is_ok());
    }

    #[test]
    fn sign_examples() {
        let half = Slope::rational(1, 2).unwrap();
        assert_eq!(half.x_value_sign([1, 1]).unwrap(), Ordering::Greater);
        // 16 < 18
        assert_eq!(Slope::sqrt(2).unwrap().x_value_sign([3, 4]).unwrap(), Ordering::Less);
        assert_eq!(Slope::PlusInfinity.x_value_sign([2, 0]).unwrap(), Ordering::Less);
        assert_eq!(Slope::MinusInfinity.x_value_sign([2, 0]).unwrap(), Ordering::Greater);
    }

    #[test]
    fn negative_quadratic_branch() {
        // alpha = -sqrt(2): x_(1,-1) = sqrt(2) - 1 > 0
        let s = Slope::quadratic(0, -1, 1, 2).unwrap();
        assert_eq!(s.x_value_sign([1, -1]).unwrap(), Ordering::Greater);
        assert_eq!(s.x_value_sign([1, -2]).unwrap(), Ordering::Less);
    }

    #[test]
    fn float_slope_signs_and_exhaustion() {
        let s = Slope::float("1.4142135623730950488016887242096980785696718753769480731766797").unwrap();
        assert_eq!(s.x_value_sign([3, 4]).unwrap(), Ordering::Less);
        assert_eq!(s.x_value_sign([5, 8]).unwrap(), Ordering::Greater);
        // an exactly representable value resolves zero exactly
        let half = Slope::float("0.5").unwrap();
        assert_eq!(half.x_value_sign([2, 1]).unwrap(), Ordering::Equal);
        // a short decimal cannot decide sites far beyond its precision
        let coarse = Slope::float("0.3").unwrap();
        assert!(coarse.x_value_sign([10, 3]).unwrap_err().to_string().contains("precision"));
    }

    #[test]
    fn unit_vectors() {
        for s in [Slope::rational(1, 2).unwrap(), Slope::sqrt(2).unwrap(), Slope::PlusInfinity] {
            let v = s.tangent();
            let w = s.normal();
            assert!((v[0].hypot(v[1]) - 1.0).abs() < 1e-15);
            assert!((w[0].hypot(w[1]) - 1.0).abs() < 1e-15);
        }
        assert_eq!(Slope::MinusInfinity.tangent(), [0.0, -1.0]);
        assert_eq!(Slope::MinusInfinity.normal(), [-1.0, 0.0]);
    }

    #[test]
    fn period_vector_is_on_interface() {
        for (p, q) in [(0, 1), (1, 1), (1, 2), (2, 3), (-3, 5)] {
            let s = Slope::rational(p, q).unwrap();
            let v = s.period_vector().unwrap();
            assert_eq!(s.x_value_sign(v).unwrap(), Ordering::Equal);
            assert!((s.tangential(v) - 1.0 / s.c_alpha().unwrap()).abs() < 1e-12);
        }
    }
}
