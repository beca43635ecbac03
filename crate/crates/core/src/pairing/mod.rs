//! The θ and η pairings, SP_c checks and the audit catalog.
//!
//! Values of the pairings are exact rationals. θ is only reported from a
//! detected period-2 tail of the Tor profile; η in higher codimension is an
//! extrapolation of partial sums and reports its sample window.

pub mod audit;
pub mod eta;
pub mod period;
pub mod sp;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub use audit::{audit, find_audit, find_audit_args, list_audits, ArgKind, AuditInput, AuditReport, AuditSpec, InconclusiveKind, Outcome, Verdict};
pub use eta::{eta_estimate, eta_from_profile, EtaEstimate, EtaMethod, EtaValue};
pub use period::{detect_period, theta, theta_from_profile, Period, Theta};
pub use sp::{sp_check, sp_check_with_profile, SpReport, TorWindow};

/// An exact rational, serialized as `"p/q"` (or `"p"` when integral).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(pub BigRational);

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn new(num: i64, den: i64) -> Self {
        Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl std::ops::Add for &Rational {
    type Output = Rational;
    fn add(self, o: &Rational) -> Rational {
        Rational(&self.0 + &o.0)
    }
}

impl std::ops::Sub for &Rational {
    type Output = Rational;
    fn sub(self, o: &Rational) -> Rational {
        Rational(&self.0 - &o.0)
    }
}

impl std::ops::Mul for &Rational {
    type Output = Rational;
    fn mul(self, o: &Rational) -> Rational {
        Rational(&self.0 * &o.0)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Rational {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Invalid(format!("not a rational: {s:?}"));
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(Rational(BigRational::new(n, d)))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Truncation bounds shared by the pairing operations, audits and the
/// scenario runner.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Bounds {
    /// Highest homological degree of a Tor profile.
    pub tor_max_deg: usize,
    /// Last partial sum used by the η estimator.
    pub eta_n_max: usize,
    /// Highest Serre level examined.
    pub serre_n: usize,
    /// Resolution length for projective dimension over the ring.
    pub max_step: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { tor_max_deg: 12, eta_n_max: 40, serre_n: 4, max_step: 12 }
    }
}

impl Bounds {
    pub const KEYS: [&'static str; 4] = ["torMaxDeg", "etaNMax", "serreN", "maxStep"];

    pub fn set(&mut self, key: &str, value: usize) -> Result<()> {
        match key {
            "torMaxDeg" => self.tor_max_deg = value,
            "etaNMax" => self.eta_n_max = value,
            "serreN" => self.serre_n = value,
            "maxStep" => self.max_step = value,
            _ => return Err(Error::Invalid(format!("unknown bound `{key}`; expected one of {}", Self::KEYS.join(", ")))),
        }
        Ok(())
    }

    pub fn get(&self, key: &str) -> Option<usize> {
        match key {
            "torMaxDeg" => Some(self.tor_max_deg),
            "etaNMax" => Some(self.eta_n_max),
            "serreN" => Some(self.serre_n),
            "maxStep" => Some(self.max_step),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_text_round_trip() {
        for s in ["-1/2", "0", "7", "3/4"] {
            let r: Rational = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
        assert_eq!(Rational::new(2, -4).to_string(), "-1/2");
        assert!("1/0".parse::<Rational>().is_err());
        let j = serde_json::to_string(&Rational::new(-1, 2)).unwrap();
        assert_eq!(j, "\"-1/2\"");
    }

    #[test]
    fn bounds_keys() {
        let mut b = Bounds::default();
        b.set("torMaxDeg", 20).unwrap();
        assert_eq!(b.get("torMaxDeg"), Some(20));
        assert!(b.set("nope", 1).is_err());
    }
}
