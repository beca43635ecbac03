//! Buchberger's algorithm for submodules of graded free modules.
//!
//! Pairs are processed by sugar degree with the normal strategy (smallest
//! lcm first). The Gebauer–Möller update implements the chain criterion and,
//! for ideals, the coprime-leading-term criterion. For homogeneous input the
//! sugar is the degree, so the computation runs degree by degree; inputs of
//! a given degree enter after the pairs of that degree, which lets the
//! engine report which "tracked" inputs are not implied by everything
//! before them (a minimal generating set modulo the ambient inputs).

use std::collections::{BTreeMap, BTreeSet};

use super::field::Field;
use super::monomial::{Monomial, MAX_VARS};
use super::vector::{axpy_from, Term, Vector};

/// Role of an input vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum InputKind {
    /// Part of a known Gröbner basis within its component (e.g. the ring's
    /// defining ideal times a basis vector); pairs among intact seeds in
    /// the same component are skipped.
    Seed,
    /// An ordinary generator.
    Ambient,
    /// A generator whose redundancy is reported.
    Tracked,
}

#[derive(Clone, Debug)]
pub struct GbInput<F: Field> {
    pub vec: Vector<F>,
    pub kind: InputKind,
}

impl<F: Field> GbInput<F> {
    pub fn seed(vec: Vector<F>) -> Self {
        GbInput { vec, kind: InputKind::Seed }
    }
    pub fn ambient(vec: Vector<F>) -> Self {
        GbInput { vec, kind: InputKind::Ambient }
    }
    pub fn tracked(vec: Vector<F>) -> Self {
        GbInput { vec, kind: InputKind::Tracked }
    }
}

/// A reduced Gröbner basis: monic, no term of an element divisible by the
/// leading term of another, sorted by ascending leading term.
#[derive(Clone, Debug)]
pub struct Gb<F: Field> {
    field: F,
    elems: Vec<Vector<F>>,
    index: LeadIndex,
}

pub struct GbOutcome<F: Field> {
    pub gb: Gb<F>,
    /// Indices (into the input list) of tracked inputs that were not
    /// implied by the inputs and pairs processed before them.
    pub minimal_tracked: Vec<usize>,
}

#[derive(Clone, Debug, Default)]
struct LeadIndex {
    leads: Vec<Term>,
    masks: Vec<u16>,
    by_comp: BTreeMap<u32, Vec<usize>>,
}

fn mask(m: &Monomial) -> u16 {
    let mut b = 0u16;
    for (i, &e) in m.exps().iter().enumerate().take(MAX_VARS.min(16)) {
        if e > 0 {
            b |= 1 << i;
        }
    }
    b
}

impl LeadIndex {
    fn push(&mut self, t: Term) {
        let k = self.leads.len();
        self.leads.push(t);
        self.masks.push(mask(&t.mono));
        self.by_comp.entry(t.comp).or_default().push(k);
    }

    fn find_divisor(&self, t: &Term, tmask: u16, skip: Option<usize>) -> Option<usize> {
        let list = self.by_comp.get(&t.comp)?;
        list.iter().copied().find(|&k| {
            Some(k) != skip && self.masks[k] & !tmask == 0 && self.leads[k].mono.divides(&t.mono)
        })
    }
}

/// Fully reduce `terms[start..]` by the indexed elements.
fn reduce_terms<F: Field>(
    f: &F,
    terms: &mut Vec<(Term, F::Elem)>,
    start: usize,
    elems: &[Vector<F>],
    index: &LeadIndex,
    skip: Option<usize>,
) {
    let mut pos = start;
    while pos < terms.len() {
        let t = terms[pos].0;
        match index.find_divisor(&t, mask(&t.mono), skip) {
            Some(k) => {
                let q = index.leads[k].mono.quotient(&t.mono);
                let s = f.neg(&terms[pos].1);
                axpy_from(terms, pos, &s, &q, elems[k].terms(), f);
            }
            None => pos += 1,
        }
    }
}

impl<F: Field> Gb<F> {
    /// Wrap vectors that already form a reduced basis (no checks).
    pub fn from_reduced(field: F, elems: Vec<Vector<F>>) -> Self {
        let mut index = LeadIndex::default();
        for e in &elems {
            index.push(e.lead_term().expect("nonzero basis element"));
        }
        Gb { field, elems, index }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn elems(&self) -> &[Vector<F>] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn leads(&self) -> &[Term] {
        &self.index.leads
    }

    /// Leading terms lying in component `comp`.
    pub fn leads_in(&self, comp: usize) -> Vec<Term> {
        self.index
            .by_comp
            .get(&(comp as u32))
            .map(|l| l.iter().map(|&k| self.index.leads[k]).collect())
            .unwrap_or_default()
    }

    /// The unique normal form of `v`.
    pub fn reduce(&self, v: &Vector<F>) -> Vector<F> {
        let mut v = v.clone();
        reduce_terms(&self.field, v.terms_mut(), 0, &self.elems, &self.index, None);
        v
    }

    pub fn contains(&self, v: &Vector<F>) -> bool {
        self.reduce(v).is_zero()
    }

    /// Is some leading term dividing `t`?
    pub fn lead_divides(&self, t: &Term) -> bool {
        self.index.find_divisor(t, mask(&t.mono), None).is_some()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct GbOptions {
    /// Coprime-leading-term criterion; only valid for ideals.
    pub product_criterion: bool,
    pub skip_seed_pairs: bool,
}

impl Default for GbOptions {
    fn default() -> Self {
        GbOptions { product_criterion: false, skip_seed_pairs: true }
    }
}

type PairKey = (i64, Term, usize, usize);

struct Builder<'a, F: Field> {
    f: &'a F,
    opts: GbOptions,
    elems: Vec<Vector<F>>,
    index: LeadIndex,
    sugar: Vec<i64>,
    intact_seed: Vec<bool>,
    pairs: BTreeSet<PairKey>,
}

impl<F: Field> Builder<'_, F> {
    fn reduce(&self, mut v: Vector<F>) -> Vector<F> {
        reduce_terms(self.f, v.terms_mut(), 0, &self.elems, &self.index, None);
        v
    }

    fn insert(&mut self, v: Vector<F>, sugar: i64, seed: bool) {
        let v = v.monic(self.f);
        let lt = v.lead_term().expect("nonzero");
        let h = self.elems.len();

        let stale: Vec<PairKey> = self
            .pairs
            .iter()
            .filter(|(_, l, i, j)| {
                l.comp == lt.comp
                    && lt.mono.divides(&l.mono)
                    && self.index.leads[*i].lcm(&lt) != *l
                    && self.index.leads[*j].lcm(&lt) != *l
            })
            .copied()
            .collect();
        for p in stale {
            self.pairs.remove(&p);
        }

        let mut cands: Vec<(Term, usize, bool)> = Vec::new();
        if let Some(list) = self.index.by_comp.get(&lt.comp) {
            for &g in list {
                if seed && self.opts.skip_seed_pairs && self.intact_seed[g] {
                    continue;
                }
                let lg = self.index.leads[g];
                let coprime = self.opts.product_criterion && lg.mono.gcd_is_one(&lt.mono);
                cands.push((lg.lcm(&lt), g, coprime));
            }
        }
        let kept: Vec<(Term, usize, bool)> = cands
            .iter()
            .filter(|(l, _, _)| {
                !cands.iter().any(|(l2, _, _)| l2 != l && l2.mono.divides(&l.mono))
            })
            .copied()
            .collect();
        let mut groups: BTreeMap<Term, Vec<(usize, bool)>> = BTreeMap::new();
        for (l, g, cp) in kept {
            groups.entry(l).or_default().push((g, cp));
        }
        for (l, members) in groups {
            if members.iter().any(|(_, cp)| *cp) {
                continue;
            }
            let g = members[0].0;
            let lg = self.index.leads[g];
            let s = (self.sugar[g] + (l.mono.degree() - lg.mono.degree()) as i64)
                .max(sugar + (l.mono.degree() - lt.mono.degree()) as i64);
            self.pairs.insert((s, l, g, h));
        }

        self.index.push(lt);
        self.elems.push(v);
        self.sugar.push(sugar);
        self.intact_seed.push(seed);
    }

    fn spoly(&self, l: &Term, i: usize, j: usize) -> Vector<F> {
        let f = self.f;
        let qi = self.index.leads[i].mono.quotient(&l.mono);
        let qj = self.index.leads[j].mono.quotient(&l.mono);
        let mut s = self.elems[i].mul_term(&qi, &f.one(), f);
        s.axpy(&f.neg(&f.one()), &qj, &self.elems[j], f);
        s
    }
}

/// Compute a reduced Gröbner basis of the submodule generated by `inputs`.
pub fn groebner<F: Field>(f: &F, inputs: Vec<GbInput<F>>, opts: GbOptions) -> GbOutcome<F> {
    let mut b = Builder {
        f,
        opts,
        elems: Vec::new(),
        index: LeadIndex::default(),
        sugar: Vec::new(),
        intact_seed: Vec::new(),
        pairs: BTreeSet::new(),
    };
    let mut queue: Vec<(i64, InputKind, usize)> = inputs
        .iter()
        .enumerate()
        .filter(|(_, g)| !g.vec.is_zero())
        .map(|(k, g)| (g.vec.max_wdeg().unwrap() as i64, g.kind, k))
        .collect();
    queue.sort();
    let mut minimal_tracked = Vec::new();
    let mut qi = 0;
    loop {
        let next_pair = b.pairs.first().map(|p| p.0);
        let next_input = queue.get(qi).map(|q| q.0);
        let take_pair = match (next_pair, next_input) {
            (None, None) => break,
            (Some(_), None) => true,
            (None, Some(_)) => false,
            (Some(p), Some(i)) => p <= i,
        };
        if take_pair {
            let (s, l, i, j) = b.pairs.pop_first().unwrap();
            let r = b.reduce(b.spoly(&l, i, j));
            if !r.is_zero() {
                b.insert(r, s, false);
            }
        } else {
            let (s, kind, k) = queue[qi];
            qi += 1;
            let orig = inputs[k].vec.monic(f);
            let r = b.reduce(orig.clone());
            if !r.is_zero() {
                if kind == InputKind::Tracked {
                    minimal_tracked.push(k);
                }
                let intact = kind == InputKind::Seed && r == orig;
                b.insert(r, s, intact);
            }
        }
    }
    GbOutcome { gb: finalize(f, b.elems, b.index), minimal_tracked }
}

fn finalize<F: Field>(f: &F, elems: Vec<Vector<F>>, index: LeadIndex) -> Gb<F> {
    let n = elems.len();
    let keep: Vec<usize> = (0..n)
        .filter(|&k| {
            let t = index.leads[k];
            !(0..n).any(|l| {
                l != k && index.leads[l].divides(&t) && (index.leads[l] != t || l < k)
            })
        })
        .collect();
    let mut min_index = LeadIndex::default();
    let mut min_elems = Vec::with_capacity(keep.len());
    for &k in &keep {
        min_index.push(index.leads[k]);
        min_elems.push(elems[k].clone());
    }
    let mut reduced: Vec<Vector<F>> = Vec::with_capacity(keep.len());
    for k in 0..min_elems.len() {
        let mut v = min_elems[k].clone();
        reduce_terms(f, v.terms_mut(), 1, &min_elems, &min_index, Some(k));
        reduced.push(v);
    }
    reduced.sort_by_key(|a| a.lead_term());
    Gb::from_reduced(f.clone(), reduced)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::field::Rationals;
    use crate::poly::parse::parse_poly;
    use crate::poly::vector::Space;

    fn vars() -> Vec<String> {
        ["x", "y", "z"].iter().map(|s| s.to_string()).collect()
    }

    fn ideal_gb(gens: &[&str]) -> Vec<String> {
        let f = Rationals;
        let sp = Space::graded(vec![0]);
        let inputs = gens
            .iter()
            .map(|g| GbInput::ambient(sp.embed(&parse_poly(g, &vars(), &f).unwrap(), 0)))
            .collect();
        let out = groebner(&f, inputs, GbOptions { product_criterion: true, ..Default::default() });
        out.gb.elems().iter().map(|v| v.entry(0).format(&vars(), &f)).collect()
    }

    #[test]
    fn twisted_cubic() {
        let gb = ideal_gb(&["y - x^2", "z - x^3"]);
        for want in ["y^2 - x*z", "x*y - z", "x^2 - y"] {
            assert!(gb.contains(&want.to_string()), "{want} missing from {gb:?}");
        }
        assert_eq!(gb.len(), 3);
    }

    #[test]
    fn tracked_minimal_generators() {
        let f = Rationals;
        let sp = Space::graded(vec![0]);
        let p = |s: &str| sp.embed(&parse_poly(s, &vars(), &f).unwrap(), 0);
        let inputs = vec![
            GbInput::tracked(p("x")),
            GbInput::tracked(p("x*y")),
            GbInput::tracked(p("y^2")),
            GbInput::tracked(p("x + y")),
        ];
        let out = groebner(&f, inputs, GbOptions::default());
        assert_eq!(out.minimal_tracked, vec![0, 3]);
    }
}
