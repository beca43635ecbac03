//! Seeded random graded modules and relations for property suites.

use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::module::FpModule;
use crate::poly::{Field, Monomial, Poly, Space, Vector};
use crate::ring::Ring;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomParams {
    pub max_gens: usize,
    pub max_rels: usize,
    /// Largest degree of a presentation entry.
    pub max_entry_deg: u32,
    /// Largest absolute value of a coefficient.
    pub max_coeff: i64,
}

impl Default for RandomParams {
    fn default() -> Self {
        RandomParams { max_gens: 3, max_rels: 3, max_entry_deg: 2, max_coeff: 3 }
    }
}

/// A random homogeneous polynomial of degree `d`; each monomial appears
/// with probability one half.
pub fn random_poly<F: Field>(ring: &Ring<F>, d: u32, rng: &mut ChaCha8Rng, max_coeff: i64) -> Poly<F> {
    let f = ring.field();
    let mut terms: Vec<(Monomial, F::Elem)> = Vec::new();
    for m in Monomial::all_of_degree(ring.nvars(), d) {
        if !rng.gen_bool(0.5) {
            continue;
        }
        let mut c = 0;
        while c == 0 {
            c = rng.gen_range(-max_coeff..=max_coeff);
        }
        terms.push((m, f.from_i64(c)));
    }
    ring.reduce(&Poly::from_terms(terms, f))
}

/// A random module: generators in degrees 0 and 1, relations of degree
/// at most `max_entry_deg` above the generators they involve.
pub fn random_module<F: Field>(ring: &Arc<Ring<F>>, rng: &mut ChaCha8Rng, p: &RandomParams) -> Result<FpModule<F>> {
    let f = ring.field();
    let g = rng.gen_range(1..=p.max_gens);
    let degs: Vec<i32> = (0..g).map(|_| rng.gen_range(0..=1)).collect();
    let sp = Space::graded(degs.clone());
    let nrels = rng.gen_range(0..=p.max_rels);
    let lo = *degs.iter().min().unwrap();
    let mut rels = Vec::new();
    for _ in 0..nrels {
        let d = lo + rng.gen_range(1..=p.max_entry_deg as i32);
        let entries: Vec<Poly<F>> = degs
            .iter()
            .map(|&dj| {
                let k = d - dj;
                if k >= 1 && k <= p.max_entry_deg as i32 {
                    random_poly(ring, k as u32, rng, p.max_coeff)
                } else {
                    Poly::zero()
                }
            })
            .collect();
        let v = sp.from_entries(&entries, f);
        if !v.is_zero() {
            rels.push(v);
        }
    }
    FpModule::new(ring.clone(), degs, rels)
}

/// A random homogeneous element of `m`.
pub fn random_element<F: Field>(m: &FpModule<F>, rng: &mut ChaCha8Rng, max_coeff: i64) -> Vector<F> {
    let ring = m.ring();
    let top = m.degs().iter().copied().max().unwrap_or(0);
    let d = top + rng.gen_range(0..=1);
    let entries: Vec<Poly<F>> = m.degs().iter().map(|&dj| random_poly(ring, (d - dj) as u32, rng, max_coeff)).collect();
    m.space().from_entries(&entries, ring.field())
}

/// A random module with elements `m_1..m_d` (`d ≤ 3`) and a nonzero
/// relation `Σ r_i m_i = 0`, found as a kernel element of `R^d → M`.
pub fn random_relation<F: Field>(ring: &Arc<Ring<F>>, rng: &mut ChaCha8Rng) -> Result<(FpModule<F>, Vec<Poly<F>>, Vec<Vector<F>>)> {
    let p = RandomParams::default();
    for _ in 0..200 {
        let m = random_module(ring, rng, &p)?.minimalize().module;
        if m.is_zero() {
            continue;
        }
        let d = rng.gen_range(1..=3);
        let elems: Vec<Vector<F>> = (0..d).map(|_| random_element(&m, rng, p.max_coeff)).collect();
        if elems.iter().any(|e| m.elem_is_zero(e)) {
            continue;
        }
        let degs: Vec<i32> = elems.iter().map(|e| e.homogeneous_degree().unwrap()).collect();
        let src = FpModule::free(ring.clone(), degs);
        let ker = src.map_kernel(&m, &elems)?;
        if let Some(k) = ker.iter().find(|k| !k.is_zero()) {
            let r = k.entries(d);
            if r.iter().all(|x| x.is_zero() || x.homogeneous_degree().is_some_and(|deg| deg >= 1)) {
                return Ok((m, r, elems));
            }
        }
    }
    Err(Error::ResourceLimit("no random relation found in 200 attempts".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Rationals;
    use rand::SeedableRng;

    #[test]
    fn seeded_generation_is_deterministic() {
        let q = Ring::parse(Rationals, &["x", "y", "z"], &[]).unwrap();
        let a = random_module(&q, &mut ChaCha8Rng::seed_from_u64(7), &RandomParams::default()).unwrap();
        let b = random_module(&q, &mut ChaCha8Rng::seed_from_u64(7), &RandomParams::default()).unwrap();
        assert_eq!(a.describe(), b.describe());
        let (m, r, e) = random_relation(&q, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
        let f = q.field();
        let mut acc = Vector::zero();
        for (ri, ei) in r.iter().zip(&e) {
            acc = acc.add(&ei.mul_poly(ri, f), f);
        }
        assert!(m.elem_is_zero(&acc));
    }
}
