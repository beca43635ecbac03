//! The η-pairing: exact over hypersurfaces for `e = 1`, otherwise estimated
//! from the partial sums `s_n = Σ_{i=l}^n (−1)^i len Tor_i`.

use serde::{Serialize, Serializer};

use super::period::{detect_period, theta_from_profile};
use super::Rational;
use crate::error::{Error, Result};
use crate::homology::{tor, TorProfile};
use crate::module::FpModule;
use crate::poly::Field;

/// Estimates compared for convergence.
pub const WINDOW: usize = 5;

/// Largest spread among the window's estimates accepted as convergence.
pub fn tolerance() -> Rational {
    Rational::new(1, 20)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EtaMethod {
    ExactPeriodic,
    PartialSumExtrapolation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EtaValue {
    Value(Rational),
    Nonconvergent,
}

impl EtaValue {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            EtaValue::Value(r) => Some(r),
            EtaValue::Nonconvergent => None,
        }
    }
}

impl Serialize for EtaValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            EtaValue::Value(r) => r.serialize(s),
            EtaValue::Nonconvergent => s.serialize_str("NONCONVERGENT"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EtaEstimate {
    pub e: usize,
    pub value: EtaValue,
    pub method: EtaMethod,
    /// `[n_max − 4, n_max]`: the indices whose estimates decide convergence.
    pub window: (usize, usize),
    /// First index `l` of the sums; all lengths from `l` on are finite.
    pub start: usize,
    /// `s_n / n^e` for `n = max(l, 1)..=n_max`.
    pub estimates: Vec<Rational>,
}

/// η_e from a profile. `hypersurface` enables the exact path for `e = 1`.
pub fn eta_from_profile(p: &TorProfile, e: usize, hypersurface: bool) -> Result<EtaEstimate> {
    if e == 0 {
        return Err(Error::Invalid("η_e needs e ≥ 1".into()));
    }
    let top = p.max_deg;
    let start = match (0..=top).rev().find(|&i| !p.lengths[i].is_finite()) {
        Some(i) if i == top => return Err(Error::InfiniteLengthEntry(i)),
        Some(i) => i + 1,
        None => 0,
    };
    let mut s = Rational::zero();
    let mut estimates = Vec::new();
    for i in start..=top {
        let len = Rational::from_int(p.lengths[i].finite().unwrap() as i64);
        s = if i % 2 == 0 { &s + &len } else { &s - &len };
        if i >= 1 {
            let ne = Rational::from_int((i as i64).pow(e as u32));
            estimates.push(Rational(&s.0 / &ne.0));
        }
    }
    let window = (top.saturating_sub(WINDOW - 1), top);
    if hypersurface && e == 1
        && detect_period(p)?.is_some() {
            let (theta, _) = theta_from_profile(p)?;
            let value = EtaValue::Value(&theta * &Rational::new(1, 2));
            return Ok(EtaEstimate { e, value, method: EtaMethod::ExactPeriodic, window, start, estimates });
        }
    let value = if estimates.len() < WINDOW {
        EtaValue::Nonconvergent
    } else {
        let last = &estimates[estimates.len() - WINDOW..];
        let tol = tolerance();
        let close = last.iter().all(|a| last.iter().all(|b| (a - b).abs() < tol));
        if close {
            EtaValue::Value(last[WINDOW - 1].clone())
        } else {
            EtaValue::Nonconvergent
        }
    };
    Ok(EtaEstimate { e, value, method: EtaMethod::PartialSumExtrapolation, window, start, estimates })
}

/// η_e(M, N) from the Tor profile through `n_max`.
pub fn eta_estimate<F: Field>(m: &FpModule<F>, n: &FpModule<F>, e: usize, n_max: usize) -> Result<EtaEstimate> {
    let p = tor(m, n, n_max)?;
    eta_from_profile(&p, e, m.ring().is_hypersurface())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::Length;

    fn profile(v: Vec<Length>) -> TorProfile {
        let max_deg = v.len() - 1;
        TorProfile { lengths: v, max_deg }
    }

    #[test]
    fn growing_betti_numbers() {
        let p = profile((0..=40).map(|i| Length::Finite(i + 1)).collect());
        let e2 = eta_from_profile(&p, 2, false).unwrap();
        let v = e2.value.value().unwrap();
        assert!(v.abs() < tolerance());
        assert_eq!(e2.window, (36, 40));
        let e1 = eta_from_profile(&p, 1, false).unwrap();
        assert_eq!(e1.value, EtaValue::Nonconvergent);
    }

    #[test]
    fn exact_path_and_infinite_head() {
        let mut v = vec![Length::INFINITE];
        v.extend((1..=11).map(|i| Length::Finite(i % 2)));
        let p = profile(v);
        let e = eta_from_profile(&p, 1, true).unwrap();
        assert_eq!(e.method, EtaMethod::ExactPeriodic);
        assert_eq!(e.value, EtaValue::Value(Rational::new(-1, 2)));
        assert_eq!(e.start, 1);
        let est = eta_from_profile(&p, 1, false).unwrap();
        assert_eq!(est.method, EtaMethod::PartialSumExtrapolation);
        let tail = profile(vec![Length::Finite(1), Length::INFINITE]);
        assert_eq!(eta_from_profile(&tail, 1, false), Err(Error::InfiniteLengthEntry(1)));
    }
}
