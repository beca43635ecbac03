//! Period-2 tails of Tor profiles and the θ-pairing over hypersurfaces.

use serde::Serialize;

use super::Rational;
use crate::error::{Error, Result};
use crate::homology::{tor, TorProfile};
use crate::module::FpModule;
use crate::poly::Field;

/// Number of full period-2 repeats a tail must show.
pub const MIN_REPEATS: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Period {
    pub preperiod: usize,
    pub period: usize,
}

/// Least `p ≥ 1` with `len Tor_i = len Tor_{i+2}` for `p ≤ i ≤ maxDeg − 2`
/// and at least [`MIN_REPEATS`] full repeats in `[p, maxDeg]`.
///
/// `Tor_0` is never part of a tail. Infinite entries are allowed only
/// before the tail; if the entries after the last infinite one are too few
/// to hold a tail, the offending index is reported.
pub fn detect_period(p: &TorProfile) -> Result<Option<Period>> {
    let top = p.max_deg;
    let last_inf = (1..=top).rev().find(|&i| !p.lengths[i].is_finite());
    let start = last_inf.map_or(1, |i| i + 1);
    if let Some(i) = last_inf {
        if top + 1 < start + 2 * MIN_REPEATS {
            return Err(Error::InfiniteLengthEntry(i));
        }
    }
    let v: Vec<u64> = p.lengths.iter().map(|l| l.finite().unwrap_or(0)).collect();
    for pre in start..=top {
        if top + 1 < pre + 2 * MIN_REPEATS {
            break;
        }
        if (pre..=top - 2).all(|i| v[i] == v[i + 2]) {
            return Ok(Some(Period { preperiod: pre, period: 2 }));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Theta {
    pub theta: Rational,
    pub eta1: Rational,
    pub period: Period,
    pub profile: TorProfile,
}

/// `θ = len Tor_{2e} − len Tor_{2e+1}` read in the periodic tail, with the
/// tail described by the returned period.
pub fn theta_from_profile(p: &TorProfile) -> Result<(Rational, Period)> {
    let per = detect_period(p)?.ok_or(Error::NoPeriodicTail(p.max_deg))?;
    let even = per.preperiod + per.preperiod % 2;
    let len = |i: usize| p.lengths[i].finite().unwrap() as i64;
    Ok((Rational::from_int(len(even) - len(even + 1)), per))
}

/// θ(M, N) over a hypersurface, with `η₁ = θ/2`.
pub fn theta<F: Field>(m: &FpModule<F>, n: &FpModule<F>, max_deg: usize) -> Result<Theta> {
    let ring = m.ring();
    if !ring.is_hypersurface() {
        return Err(Error::NotHypersurface(ring.codim()));
    }
    let profile = tor(m, n, max_deg)?;
    let (theta, period) = theta_from_profile(&profile)?;
    let eta1 = &theta * &Rational::new(1, 2);
    Ok(Theta { theta, eta1, period, profile })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::Length;

    fn profile(v: &[Option<u64>]) -> TorProfile {
        TorProfile {
            lengths: v.iter().map(|x| x.map_or(Length::INFINITE, Length::Finite)).collect(),
            max_deg: v.len() - 1,
        }
    }

    #[test]
    fn periods() {
        let zero = profile(&[None, Some(0), Some(0), Some(0), Some(0), Some(0), Some(0), Some(0)]);
        assert_eq!(detect_period(&zero).unwrap(), Some(Period { preperiod: 1, period: 2 }));
        let node: Vec<Option<u64>> = (0..12).map(|i| if i == 0 { None } else { Some((i % 2) as u64) }).collect();
        assert_eq!(detect_period(&profile(&node)).unwrap(), Some(Period { preperiod: 1, period: 2 }));
        let grow: Vec<Option<u64>> = (0..12).map(|i| Some(i + 1)).collect();
        assert_eq!(detect_period(&profile(&grow)).unwrap(), None);
        let late = profile(&[Some(5), Some(3), Some(2), Some(1), Some(2), Some(1), Some(2), Some(1), Some(2)]);
        assert_eq!(detect_period(&late).unwrap(), Some(Period { preperiod: 2, period: 2 }));
        let short = profile(&[None, Some(1), Some(0), Some(1), Some(0)]);
        assert_eq!(detect_period(&short).unwrap(), None);
        let inf = profile(&[Some(1), Some(0), Some(0), None, Some(0), Some(0)]);
        assert_eq!(detect_period(&inf), Err(Error::InfiniteLengthEntry(3)));
        let (t, _) = theta_from_profile(&profile(&node)).unwrap();
        assert_eq!(t, Rational::from_int(-1));
        assert_eq!(theta_from_profile(&profile(&grow)), Err(Error::NoPeriodicTail(11)));
    }
}
