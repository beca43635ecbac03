//! Minimal graded free resolutions, Tor profiles, projective dimension and
//! depth.
//!
//! Resolutions are built by iterated minimal syzygies. Over the polynomial
//! ring they terminate; over a complete intersection they are truncated at
//! a requested step. `Tor_i(M, N)` is the homology of `F ⊗ N` for a
//! resolution `F` of `M`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::module::ops::syzygies;
use crate::module::{FpModule, Length, ModuleMap};
use crate::parallel::Exec;
use crate::poly::{Field, Poly, Space, Vector};
use crate::ring::Ring;

/// A complex of graded free modules `F_0 ← F_1 ← …`; `maps[i]` is
/// `F_{i+1} → F_i`.
#[derive(Clone, Debug)]
pub struct Complex<F: Field> {
    pub ring: Arc<Ring<F>>,
    pub twists: Vec<Vec<i32>>,
    pub maps: Vec<ModuleMap<F>>,
}

#[derive(Clone, Debug)]
pub struct Resolution<F: Field> {
    pub complex: Complex<F>,
    /// True when the last free module has no syzygies, so the resolution is
    /// complete.
    pub terminated: bool,
    /// The step at which computation stopped.
    pub steps: usize,
}

/// Projective dimension, exact or bounded below by a truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Pd {
    Exact(usize),
    AtLeast(usize),
}

impl Pd {
    pub fn exact(&self) -> Option<usize> {
        match self {
            Pd::Exact(n) => Some(*n),
            Pd::AtLeast(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TorProfile {
    /// `len Tor_i` for `i = 0..=max_deg`.
    pub lengths: Vec<Length>,
    pub max_deg: usize,
}

impl TorProfile {
    /// Do all of `Tor_lo..=Tor_hi` vanish?
    pub fn vanishes(&self, lo: usize, hi: usize) -> bool {
        (lo..=hi.min(self.max_deg)).all(|i| self.lengths[i].is_zero())
    }

    /// First `i ≥ lo` with `Tor_i ≠ 0`.
    pub fn first_nonzero(&self, lo: usize) -> Option<usize> {
        (lo..=self.max_deg).find(|&i| !self.lengths[i].is_zero())
    }

    pub fn all_finite(&self, lo: usize, hi: usize) -> bool {
        (lo..=hi.min(self.max_deg)).all(|i| self.lengths[i].is_finite())
    }
}

impl<F: Field> Complex<F> {
    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.twists.iter().map(|t| t.len()).collect()
    }

    /// Do all consecutive composites vanish in the ring?
    pub fn is_complex(&self) -> bool {
        let f = self.ring.field();
        self.maps.windows(2).all(|w| {
            w[0].compose(&w[1], f)
                .map(|c| c.cols.iter().all(|v| v.entries(c.target.len()).iter().all(|p| self.ring.reduce(p).is_zero())))
                .unwrap_or(false)
        })
    }

    /// `F_i ⊗ N` as a module, generators indexed `k·|gens N| + j`.
    fn tensor_term(&self, i: usize, n: &FpModule<F>) -> Result<FpModule<F>> {
        let twists = self.twists.get(i).cloned().unwrap_or_default();
        FpModule::free(self.ring.clone(), twists).tensor_raw(n)
    }

    /// Images of the generators of `F_i ⊗ N` under `d_i ⊗ N`, written in
    /// `F_{i-1} ⊗ N`.
    fn tensor_images(&self, i: usize, n: &FpModule<F>, target: &FpModule<F>) -> Vec<Vector<F>> {
        let f = self.ring.field();
        let g = n.num_gens();
        let sp = target.space();
        let d = &self.maps[i - 1];
        let mut out = Vec::with_capacity(d.cols.len() * g);
        for col in &d.cols {
            for j in 0..g {
                out.push(col.respace(&sp, |l| Some(l * g + j), f));
            }
        }
        out
    }

    /// `H_i(F ⊗ N)`, presented on minimal generators.
    pub fn homology_with(&self, i: usize, n: &FpModule<F>) -> Result<FpModule<F>> {
        if i >= self.twists.len() {
            return Ok(FpModule::zero(self.ring.clone()));
        }
        let a = self.tensor_term(i, n)?;
        if a.num_gens() == 0 {
            return Ok(FpModule::zero(self.ring.clone()));
        }
        let ker = if i == 0 {
            (0..a.num_gens()).map(|j| a.gen(j)).collect()
        } else {
            let prev = self.tensor_term(i - 1, n)?;
            let images = self.tensor_images(i, n, &prev);
            a.map_kernel(&prev, &images)?
        };
        if ker.is_empty() {
            return Ok(FpModule::zero(self.ring.clone()));
        }
        let quotient = if i + 1 < self.twists.len() {
            let images = self.tensor_images(i + 1, n, &a);
            a.quotient(&images)?
        } else {
            a
        };
        Ok(quotient.submodule(&ker)?.module)
    }
}

/// The Koszul complex on a sequence of homogeneous ring elements; the
/// basis of `K_i` is the size-`i` subsets by increasing bitmask.
pub fn koszul_complex<F: Field>(ring: &Arc<Ring<F>>, seq: &[Poly<F>]) -> Result<Complex<F>> {
    let n = seq.len();
    if n > 16 {
        return Err(Error::ResourceLimit("Koszul complex on more than 16 elements".into()));
    }
    let f = ring.field();
    let degs: Vec<i32> = seq
        .iter()
        .map(|p| p.homogeneous_degree().map(|d| d as i32).ok_or_else(|| Error::NonHomogeneous("Koszul sequence".into())))
        .collect::<Result<_>>()?;
    let subsets: Vec<Vec<u32>> =
        (0..=n).map(|i| (0u32..(1 << n)).filter(|s| s.count_ones() as usize == i).collect()).collect();
    let twist = |s: u32| (0..n).filter(|&k| s & (1 << k) != 0).map(|k| degs[k]).sum::<i32>();
    let twists: Vec<Vec<i32>> = subsets.iter().map(|ss| ss.iter().map(|&s| twist(s)).collect()).collect();
    let mut maps = Vec::with_capacity(n);
    for i in 1..=n {
        let tsp = Space::graded(twists[i - 1].clone());
        let index: BTreeMap<u32, usize> = subsets[i - 1].iter().enumerate().map(|(k, &s)| (s, k)).collect();
        let cols = subsets[i]
            .iter()
            .map(|&s| {
                let mut entries = vec![Poly::zero(); subsets[i - 1].len()];
                let mut sign = false;
                for k in 0..n {
                    if s & (1 << k) != 0 {
                        let p = if sign { seq[k].neg(f) } else { seq[k].clone() };
                        entries[index[&(s & !(1 << k))]] = p;
                        sign = !sign;
                    }
                }
                tsp.from_entries(&entries, f)
            })
            .collect();
        maps.push(ModuleMap { source: twists[i].clone(), target: twists[i - 1].clone(), cols });
    }
    Ok(Complex { ring: ring.clone(), twists, maps })
}

impl<F: Field> Resolution<F> {
    /// Minimal resolution of `M` over its own ring through `max_step`.
    pub fn resolve(m: &FpModule<F>, max_step: usize) -> Result<Self> {
        let ring = m.ring().clone();
        let m = m.minimalize().module;
        let mut twists = vec![m.degs().to_vec()];
        let mut maps: Vec<ModuleMap<F>> = Vec::new();
        let first = m.presentation();
        let mut terminated = first.cols.is_empty();
        if !terminated && max_step >= 1 {
            twists.push(first.source.clone());
            maps.push(first);
        }
        while !terminated && maps.len() < max_step {
            let next = syzygies(&ring, maps.last().unwrap())?;
            if next.cols.is_empty() {
                terminated = true;
                break;
            }
            twists.push(next.source.clone());
            maps.push(next);
        }
        if !terminated && maps.len() == max_step {
            // Probe one more step so an exact pd at the boundary is known.
            terminated = match maps.last() {
                Some(d) => syzygies(&ring, d)?.cols.is_empty(),
                None => false,
            };
        }
        let steps = maps.len();
        Ok(Resolution { complex: Complex { ring, twists, maps }, terminated, steps })
    }

    /// Full minimal resolution over the ambient polynomial ring.
    pub fn resolve_over_poly(m: &FpModule<F>) -> Result<Self> {
        let q = m.restrict_to_base()?;
        let r = Self::resolve(&q, q.ring().nvars() + 1)?;
        debug_assert!(r.terminated);
        Ok(r)
    }

    pub fn betti(&self) -> Vec<usize> {
        self.complex.ranks()
    }

    /// Graded Betti numbers: for each step, generator degree ↦ count.
    pub fn graded_betti(&self) -> Vec<BTreeMap<i32, usize>> {
        self.complex
            .twists
            .iter()
            .map(|t| {
                let mut m = BTreeMap::new();
                for d in t {
                    *m.entry(*d).or_insert(0) += 1;
                }
                m
            })
            .collect()
    }

    pub fn pd(&self) -> Pd {
        if self.terminated {
            Pd::Exact(self.complex.len())
        } else {
            Pd::AtLeast(self.complex.len() + 1)
        }
    }

    /// True when no map has a unit entry.
    pub fn is_minimal(&self) -> bool {
        self.complex.maps.iter().all(|d| d.is_minimal())
    }
}

pub fn pd_over_poly<F: Field>(m: &FpModule<F>) -> Result<usize> {
    Ok(Resolution::resolve_over_poly(m)?.complex.len())
}

pub fn pd_over_ring<F: Field>(m: &FpModule<F>, max_step: usize) -> Result<Pd> {
    Ok(Resolution::resolve(m, max_step)?.pd())
}

/// `depth M = n − pd_Q M` over the ambient polynomial ring in `n` variables.
pub fn depth<F: Field>(m: &FpModule<F>) -> Result<usize> {
    if m.is_zero() {
        return Err(Error::ZeroModule);
    }
    let n = m.ring().nvars();
    Ok(n - pd_over_poly(m)?)
}

/// Depth from Koszul homology on the variables:
/// `n − sup{i : H_i(x; M) ≠ 0}`.
pub fn koszul_depth<F: Field>(m: &FpModule<F>) -> Result<usize> {
    if m.is_zero() {
        return Err(Error::ZeroModule);
    }
    let ring = m.ring();
    let n = ring.nvars();
    let vars: Vec<Poly<F>> = (0..n).map(|i| Poly::var(i, ring.field())).collect();
    let k = koszul_complex(ring, &vars)?;
    let m = m.minimalize().module;
    for i in (0..=n).rev() {
        if !k.homology_with(i, &m)?.is_zero() {
            return Ok(n - i);
        }
    }
    Ok(n)
}

pub fn is_mcm<F: Field>(m: &FpModule<F>) -> Result<bool> {
    Ok(depth(m)? == m.ring().krull_dim())
}

/// `len Tor_i(M, N)` for `i = 0..=max_deg`, from a resolution of `M`.
pub fn tor<F: Field>(m: &FpModule<F>, n: &FpModule<F>, max_deg: usize) -> Result<TorProfile> {
    tor_with(m, n, max_deg, Exec::default())
}

pub fn tor_with<F: Field>(m: &FpModule<F>, n: &FpModule<F>, max_deg: usize, exec: Exec) -> Result<TorProfile> {
    m.same_ring(n)?;
    let res = Resolution::resolve(m, max_deg + 1)?;
    let nm = n.minimalize().module;
    let idx: Vec<usize> = (0..=max_deg).collect();
    let lengths = exec
        .map(&idx, |&i| res.complex.homology_with(i, &nm).map(|h| h.length()))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    Ok(TorProfile { lengths, max_deg })
}

/// `Tor_i(M, N)` as a module.
pub fn tor_module<F: Field>(m: &FpModule<F>, n: &FpModule<F>, i: usize) -> Result<FpModule<F>> {
    m.same_ring(n)?;
    let res = Resolution::resolve(m, i + 1)?;
    res.complex.homology_with(i, &n.minimalize().module)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{PrimeField, Rationals};

    #[test]
    fn koszul_resolution_of_k() {
        let q = Ring::parse(Rationals, &["x", "y"], &[]).unwrap();
        let p = |s: &str| q.parse_poly(s).unwrap();
        let k = FpModule::cyclic(q.clone(), &[p("x"), p("y")]).unwrap();
        let r = Resolution::resolve_over_poly(&k).unwrap();
        assert_eq!(r.betti(), vec![1, 2, 1]);
        assert!(r.complex.is_complex() && r.is_minimal());
        assert_eq!(depth(&k).unwrap(), 0);
        assert_eq!(koszul_depth(&k).unwrap(), 0);
        let t = tor(&k, &k, 4).unwrap();
        let fin: Vec<u64> = t.lengths.iter().map(|l| l.finite().unwrap()).collect();
        assert_eq!(fin, vec![1, 2, 1, 0, 0]);
    }

    #[test]
    fn node_resolution_is_periodic() {
        let f = PrimeField::new(32003).unwrap();
        let node = Ring::parse(f, &["x", "y"], &["x*y"]).unwrap();
        let p = |s: &str| node.parse_poly(s).unwrap();
        let m = FpModule::cyclic(node.clone(), &[p("x")]).unwrap();
        let r = Resolution::resolve(&m, 6).unwrap();
        assert_eq!(r.betti(), vec![1; 7]);
        assert!(!r.terminated);
        assert_eq!(pd_over_poly(&m).unwrap(), 1);
        assert_eq!(depth(&m).unwrap(), 1);
        assert!(is_mcm(&m).unwrap());
        let n = FpModule::cyclic(node.clone(), &[p("x^2")]).unwrap();
        let t = tor(&m, &n, 5).unwrap();
        let fin: Vec<u64> = t.lengths.iter().skip(1).map(|l| l.finite().unwrap()).collect();
        assert_eq!(fin, vec![1, 0, 1, 0, 1]);
    }

    #[test]
    fn betti_of_k_over_codim_two() {
        let f = PrimeField::new(32003).unwrap();
        let r = Ring::parse(f, &["x", "y"], &["x^2", "y^2"]).unwrap();
        let p = |s: &str| r.parse_poly(s).unwrap();
        let k = FpModule::cyclic(r.clone(), &[p("x"), p("y")]).unwrap();
        assert_eq!(Resolution::resolve(&k, 5).unwrap().betti(), vec![1, 2, 3, 4, 5, 6]);
    }
}
