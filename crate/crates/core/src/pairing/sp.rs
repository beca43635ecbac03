//! The SP_c condition: `M`, `N` satisfy `(S_{c−1})`, `M ⊗ N` satisfies
//! `(S_c)`, and Tor has finite length in high degrees.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::homology::{tor, TorProfile};
use crate::module::FpModule;
use crate::poly::Field;
use crate::serre::{serre, SerreReport};

/// Width of the high-degree window checked for finite length.
pub const TAIL: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TorWindow {
    pub start: usize,
    pub end: usize,
    pub all_finite: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SpReport {
    pub c: usize,
    pub serre_m: SerreReport,
    pub serre_n: SerreReport,
    pub serre_tensor: SerreReport,
    pub tor_finite_window: TorWindow,
    pub satisfied: bool,
}

pub fn tor_window(p: &TorProfile) -> TorWindow {
    let end = p.max_deg;
    let start = end.saturating_sub(TAIL).max(1);
    TorWindow { start, end, all_finite: p.all_finite(start, end) }
}

pub fn sp_check<F: Field>(m: &FpModule<F>, n: &FpModule<F>, c: usize, max_deg: usize) -> Result<SpReport> {
    let p = tor(m, n, max_deg)?;
    sp_check_with_profile(m, n, c, &p)
}

/// SP_c using an already computed Tor profile of `(M, N)`.
pub fn sp_check_with_profile<F: Field>(m: &FpModule<F>, n: &FpModule<F>, c: usize, p: &TorProfile) -> Result<SpReport> {
    if c == 0 {
        return Err(Error::Invalid("SP_c needs c ≥ 1".into()));
    }
    let serre_m = serre(m, c - 1)?;
    let serre_n = serre(n, c - 1)?;
    let serre_tensor = serre(&m.tensor(n)?, c)?;
    let tor_finite_window = tor_window(p);
    let satisfied = serre_m.holds && serre_n.holds && serre_tensor.holds && tor_finite_window.all_finite;
    Ok(SpReport { c, serre_m, serre_n, serre_tensor, tor_finite_window, satisfied })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::PrimeField;
    use crate::ring::Ring;

    #[test]
    fn sp_examples() {
        let f = PrimeField::new(32003).unwrap();
        let r = Ring::parse(f, &["x", "y"], &["x*y"]).unwrap();
        let p = |s: &str| r.parse_poly(s).unwrap();
        let m = FpModule::cyclic(r.clone(), &[p("x")]).unwrap();
        let n = FpModule::cyclic(r.clone(), &[p("x^2")]).unwrap();
        let rep = sp_check(&m, &n, 1, 12).unwrap();
        assert!(rep.satisfied);
        assert_eq!(rep.tor_finite_window, TorWindow { start: 6, end: 12, all_finite: true });
        let k = FpModule::cyclic(r.clone(), &[p("x"), p("y")]).unwrap();
        let rep = sp_check(&k, &k, 1, 8).unwrap();
        assert!(!rep.satisfied && !rep.serre_tensor.holds);
        let free = FpModule::free(r.clone(), vec![0]);
        assert!(sp_check(&free, &free, 2, 8).unwrap().satisfied);
    }
}
