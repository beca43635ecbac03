//! Torsion, reflexivity, pushforwards, quasi-liftings and Serre's
//! conditions over complete intersections.
//!
//! Complete intersections are Gorenstein, so the torsion submodule is the
//! kernel of the biduality map `M → M**`, and `(S_n)` is decided by the
//! recursion: `M` satisfies `(S_n)` iff `M` is torsion-free and its
//! pushforward satisfies `(S_{n-1})`, with `(S_0)` always true.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::homology::{Complex, Resolution};
use crate::module::ops::{in_span, Dual, Submodule};
use crate::module::{FpModule, ModuleMap};
use crate::poly::{Field, Poly, Space, Vector};
use crate::ring::Ring;

#[derive(Clone, Debug)]
pub struct Torsion<F: Field> {
    /// `tp(M)` with its generators as elements of `M`.
    pub tp: Submodule<F>,
    /// `tf(M) = M / tp(M)`.
    pub tf: FpModule<F>,
}

#[derive(Clone, Debug)]
pub struct Pushforward<F: Field> {
    pub m1: FpModule<F>,
    /// `M → R^ν`, the composite `M → M** ↪ R^ν`.
    pub embedding: ModuleMap<F>,
    pub nu: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SerreStage {
    pub generator_degrees: Vec<i32>,
    pub num_relations: usize,
    pub torsion_free: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SerreReport {
    pub n: usize,
    pub holds: bool,
    /// `M = M_0, M_1, …`: each stage is the pushforward of the previous.
    pub chain: Vec<SerreStage>,
}

/// Evaluation data `M → R^ν` for the minimal generators of `M*`.
fn biduality<F: Field>(m: &FpModule<F>) -> Result<(Dual<F>, ModuleMap<F>)> {
    let d = m.dual()?;
    let ev = d.evaluation(m);
    Ok((d, ev))
}

fn biduality_kernel<F: Field>(m: &FpModule<F>, ev: &ModuleMap<F>) -> Result<Vec<Vector<F>>> {
    let free = FpModule::free(m.ring().clone(), ev.target.clone());
    m.map_kernel(&free, &ev.cols)
}

pub fn torsion<F: Field>(m: &FpModule<F>) -> Result<Torsion<F>> {
    let (_, ev) = biduality(m)?;
    let ker = biduality_kernel(m, &ev)?;
    let tp = m.submodule(&ker)?;
    let tf = m.quotient(&ker)?.minimalize().module;
    Ok(Torsion { tp, tf })
}

pub fn is_torsion_free<F: Field>(m: &FpModule<F>) -> Result<bool> {
    let (_, ev) = biduality(m)?;
    Ok(biduality_kernel(m, &ev)?.is_empty())
}

/// The biduality map is bijective: injective, and every element of
/// `M** = ker(L^T) ⊂ R^ν` lies in the image of `M`, where `L` presents `M*`.
pub fn is_reflexive<F: Field>(m: &FpModule<F>) -> Result<bool> {
    let (d, ev) = biduality(m)?;
    if !biduality_kernel(m, &ev)?.is_empty() {
        return Ok(false);
    }
    let ring = m.ring();
    let f = ring.field();
    let nu = d.module.num_gens();
    let lt_target: Vec<i32> = d.module.rels().iter().map(|l| -l.homogeneous_degree().unwrap()).collect();
    let tsp = Space::graded(lt_target);
    let cols: Vec<Vector<F>> = (0..nu)
        .map(|i| {
            let e: Vec<Poly<F>> = d.module.rels().iter().map(|l| l.entry(i)).collect();
            tsp.from_entries(&e, f)
        })
        .collect();
    let src = Space::graded(ev.target.clone());
    let bidual = crate::module::kernel::kernel(f, ring.ideal_gb(), &tsp, &[], &src, &cols)?;
    Ok(bidual.iter().all(|v| in_span(ring, &src, &ev.cols, v)))
}

pub fn pushforward<F: Field>(m: &FpModule<F>) -> Result<Pushforward<F>> {
    let (d, ev) = biduality(m)?;
    if !biduality_kernel(m, &ev)?.is_empty() {
        return Err(Error::NotTorsionFree);
    }
    let m1 = FpModule::new(m.ring().clone(), ev.target.clone(), ev.cols.clone())?.minimalize().module;
    Ok(Pushforward { m1, nu: d.module.num_gens(), embedding: ev })
}

/// The quasi-lifting `E = ker(S^ν ↠ M_1)` of a torsion-free module over
/// `R = S/(f)`, where `S` is the previous stage of the ring's tower.
pub fn quasi_lift<F: Field>(m: &FpModule<F>) -> Result<(Arc<Ring<F>>, FpModule<F>)> {
    let ring = m.ring();
    let c = ring.num_relations();
    if c == 0 {
        return Err(Error::TowerMismatch("a polynomial ring is not a hypersurface in a smaller stage".into()));
    }
    let s = ring.stage(c - 1);
    let fc = ring.relations()[c - 1].clone();
    let pf = pushforward(m)?;
    let sp = Space::graded(pf.embedding.target.clone());
    let mut gens = pf.embedding.cols.clone();
    for i in 0..pf.nu {
        gens.push(sp.embed(&fc, i));
    }
    let e = FpModule::free(s.clone(), pf.embedding.target.clone()).submodule(&gens)?.module;
    Ok((s, e))
}

/// Serre's condition `(S_n)` by iterated pushforward.
pub fn serre<F: Field>(m: &FpModule<F>, n: usize) -> Result<SerreReport> {
    let mut chain = Vec::new();
    let mut cur = m.minimalize().module;
    let mut holds = true;
    for step in 0..n {
        if cur.num_gens() == 0 {
            chain.push(SerreStage { generator_degrees: vec![], num_relations: 0, torsion_free: true });
            break;
        }
        let tf = is_torsion_free(&cur)?;
        chain.push(SerreStage { generator_degrees: cur.degs().to_vec(), num_relations: cur.rels().len(), torsion_free: tf });
        if !tf {
            holds = false;
            break;
        }
        if step + 1 < n {
            cur = pushforward(&cur)?.m1;
        }
    }
    Ok(SerreReport { n, holds, chain })
}

/// `(S_n)` from Ext over the ambient polynomial ring `Q` in `N` variables:
/// with `g = N − dim R`, `M` satisfies `(S_n)` iff
/// `codim_Q Ext^i_Q(M, Q) ≥ i + n` for every `i > g`. Independent of the
/// pushforward recursion used by [`serre`].
pub fn serre_by_ext<F: Field>(m: &FpModule<F>, n: usize) -> Result<bool> {
    let m = m.minimalize().module;
    if m.is_zero() || n == 0 {
        return Ok(true);
    }
    let ring = m.ring();
    let nv = ring.nvars();
    let g = nv - ring.krull_dim();
    let res = Resolution::resolve_over_poly(&m)?;
    let cx = &res.complex;
    for i in g + 1..=cx.len() {
        let ext = ext_module(cx, i)?;
        if ext.is_zero() {
            continue;
        }
        let dim = ext.krull_dim().unwrap_or(0);
        if nv - dim < i + n {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Ext^i_Q(M, Q) = ker(d_{i+1}^T) / im(d_i^T)` from a free resolution
/// over `Q`.
fn ext_module<F: Field>(cx: &Complex<F>, i: usize) -> Result<FpModule<F>> {
    let q = cx.ring.clone();
    let f = q.field();
    let dual = |t: &[i32]| t.iter().map(|d| -d).collect::<Vec<i32>>();
    let gens = dual(&cx.twists[i]);
    let sp = Space::graded(gens.clone());
    let rels: Vec<Vector<F>> = if i == 0 {
        vec![]
    } else {
        cx.maps[i - 1].entries().iter().map(|row| sp.from_entries(row, f)).collect()
    };
    let c = FpModule::new(q.clone(), gens, rels)?;
    let cyc: Vec<Vector<F>> = (0..c.num_gens()).map(|j| c.gen(j)).collect();
    let ker = if i < cx.len() {
        let next = &cx.maps[i];
        let tgt = dual(&next.source);
        let tsp = Space::graded(tgt.clone());
        let images: Vec<Vector<F>> = next.entries().iter().map(|row| tsp.from_entries(row, f)).collect();
        c.map_kernel(&FpModule::free(q.clone(), tgt), &images)?
    } else {
        cyc
    };
    Ok(c.submodule(&ker)?.module)
}

/// `Supp A ⊆ Supp B`, decided as `Ann B ⊆ √(Ann A)`.
pub fn supp_contained<F: Field>(a: &FpModule<F>, b: &FpModule<F>) -> Result<bool> {
    a.same_ring(b)?;
    let ann_a = a.annihilator()?;
    let ann_b = b.annihilator()?;
    a.ring().radical_contains(&ann_b, &ann_a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::Length;
    use crate::poly::Rationals;

    fn node() -> Arc<Ring<Rationals>> {
        Ring::parse(Rationals, &["x", "y"], &["x*y"]).unwrap()
    }

    #[test]
    fn node_torsion() {
        let r = node();
        let p = |s: &str| r.parse_poly(s).unwrap();
        let n = FpModule::cyclic(r.clone(), &[p("x^2")]).unwrap();
        let t = torsion(&n).unwrap();
        assert_eq!(t.tp.module.length(), Length::Finite(1));
        assert_eq!(t.tp.gens.len(), 1);
        assert_eq!(t.tp.gens[0].entry(0).monic(&Rationals), p("x"));
        assert!(is_torsion_free(&t.tf).unwrap());
        let m = FpModule::cyclic(r.clone(), &[p("x")]).unwrap();
        assert!(is_torsion_free(&m).unwrap());
        let pf = pushforward(&m).unwrap();
        assert_eq!(pf.nu, 1);
        let ry = FpModule::cyclic(r.clone(), &[p("y")]).unwrap();
        assert!(pf.m1.indistinguishable(&ry.twist(1), 6).unwrap());
        let s = serre(&m, 2).unwrap();
        assert!(s.holds);
        assert_eq!(s.chain.len(), 2);
    }

    #[test]
    fn maximal_ideal_of_the_plane() {
        let q = Ring::parse(Rationals, &["x", "y"], &[]).unwrap();
        let p = |s: &str| q.parse_poly(s).unwrap();
        let mi = FpModule::from_matrix(q.clone(), vec![1, 1], &[vec![p("y")], vec![p("-x")]]).unwrap();
        assert!(is_torsion_free(&mi).unwrap());
        assert!(!is_reflexive(&mi).unwrap());
        let pf = pushforward(&mi).unwrap();
        assert_eq!(pf.nu, 1);
        assert_eq!(pf.m1.length(), Length::Finite(1));
        let k = FpModule::cyclic(q.clone(), &[p("x"), p("y")]).unwrap();
        assert!(!is_torsion_free(&k).unwrap() && !is_reflexive(&k).unwrap());
        assert!(is_reflexive(&FpModule::free(q.clone(), vec![0, 2])).unwrap());
        assert!(!serre(&k, 1).unwrap().holds);
    }

    #[test]
    fn quasi_lift_of_node_module() {
        let r = node();
        let p = |s: &str| r.parse_poly(s).unwrap();
        let m = FpModule::cyclic(r.clone(), &[p("x")]).unwrap();
        let (s, e) = quasi_lift(&m).unwrap();
        assert!(s.is_polynomial_ring());
        assert!(e.is_free());
        assert_eq!(e.minimalize().module.degs(), &[0]);
    }

    #[test]
    fn ext_criterion_matches_recursion() {
        let r = node();
        let p = |s: &str| r.parse_poly(s).unwrap();
        let q = Ring::parse(Rationals, &["x", "y"], &[]).unwrap();
        let pq = |s: &str| q.parse_poly(s).unwrap();
        let mods = vec![
            FpModule::cyclic(r.clone(), &[p("x")]).unwrap(),
            FpModule::cyclic(r.clone(), &[p("x^2")]).unwrap(),
            FpModule::cyclic(r.clone(), &[p("x"), p("y")]).unwrap(),
            FpModule::from_matrix(q.clone(), vec![1, 1], &[vec![pq("y")], vec![pq("-x")]]).unwrap(),
            FpModule::cyclic(q.clone(), &[pq("x")]).unwrap(),
        ];
        for m in &mods {
            for n in 1..=3 {
                assert_eq!(serre_by_ext(m, n).unwrap(), serre(m, n).unwrap().holds, "{} at {n}", m.describe());
            }
        }
    }

    #[test]
    fn supports() {
        let q = Ring::parse(Rationals, &["x", "y"], &[]).unwrap();
        let p = |s: &str| q.parse_poly(s).unwrap();
        let a = FpModule::cyclic(q.clone(), &[p("x")]).unwrap();
        let b = FpModule::cyclic(q.clone(), &[p("x+y")]).unwrap();
        assert!(!supp_contained(&a, &b).unwrap());
        assert!(supp_contained(&a, &a).unwrap());
        assert!(supp_contained(&FpModule::zero(q.clone()), &b).unwrap());
    }
}
