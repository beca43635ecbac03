//! Elements of graded free modules and the module term order.
//!
//! A term `x^a e_j` carries its component, its weighted degree
//! `deg(x^a) + twist_j`, and an elimination block. Terms compare by block
//! first (lower block is larger), then weighted degree, then the monomial
//! order, then position (lower index is larger): term-over-position with a
//! degree refinement.

use std::cmp::Ordering;

use super::field::Field;
use super::monomial::{MonoOrder, Monomial};
use super::polynomial::Poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub block: u8,
    pub order: MonoOrder,
    pub wdeg: i32,
    pub comp: u32,
    pub mono: Monomial,
}

impl Ord for Term {
    fn cmp(&self, o: &Self) -> Ordering {
        o.block.cmp(&self.block).then_with(|| match self.order {
            MonoOrder::Grevlex => self
                .wdeg
                .cmp(&o.wdeg)
                .then_with(|| self.mono.cmp_in(&o.mono, MonoOrder::Grevlex))
                .then_with(|| o.comp.cmp(&self.comp)),
            MonoOrder::Lex => self
                .mono
                .cmp_in(&o.mono, MonoOrder::Lex)
                .then_with(|| o.comp.cmp(&self.comp)),
        })
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Term {
    pub fn mul(&self, m: &Monomial) -> Term {
        Term { mono: self.mono.mul(m), wdeg: self.wdeg + m.degree() as i32, ..*self }
    }

    pub fn divides(&self, o: &Term) -> bool {
        self.comp == o.comp && self.mono.divides(&o.mono)
    }

    /// Least common multiple of two terms in the same component.
    pub fn lcm(&self, o: &Term) -> Term {
        debug_assert_eq!(self.comp, o.comp);
        let mono = self.mono.lcm(&o.mono);
        Term { wdeg: self.wdeg + (mono.degree() - self.mono.degree()) as i32, mono, ..*self }
    }
}

/// Shape of a free module for the purposes of ordering: per-component
/// twists and elimination blocks, and the monomial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Space {
    pub twists: Vec<i32>,
    pub blocks: Vec<u8>,
    pub order: MonoOrder,
}

impl Space {
    pub fn graded(twists: Vec<i32>) -> Self {
        let blocks = vec![0; twists.len()];
        Space { twists, blocks, order: MonoOrder::Grevlex }
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    pub fn term(&self, mono: Monomial, comp: usize) -> Term {
        Term {
            block: self.blocks[comp],
            order: self.order,
            wdeg: mono.degree() as i32 + self.twists[comp],
            comp: comp as u32,
            mono,
        }
    }

    /// `p · e_comp`.
    pub fn embed<F: Field>(&self, p: &Poly<F>, comp: usize) -> Vector<F> {
        let mut terms: Vec<(Term, F::Elem)> =
            p.terms().iter().map(|(m, c)| (self.term(*m, comp), c.clone())).collect();
        if self.order != MonoOrder::Grevlex {
            terms.sort_by(|a, b| b.0.cmp(&a.0));
        }
        Vector { terms }
    }

    /// `Σ entries[j] · e_j`.
    pub fn from_entries<F: Field>(&self, entries: &[Poly<F>], f: &F) -> Vector<F> {
        debug_assert!(entries.len() <= self.rank());
        let mut terms: Vec<(Term, F::Elem)> = Vec::new();
        for (j, p) in entries.iter().enumerate() {
            terms.extend(p.terms().iter().map(|(m, c)| (self.term(*m, j), c.clone())));
        }
        Vector::from_terms(terms, f)
    }

    pub fn basis<F: Field>(&self, comp: usize, f: &F) -> Vector<F> {
        Vector { terms: vec![(self.term(Monomial::one(), comp), f.one())] }
    }
}

/// A sparse vector in a free module; terms strictly descending, nonzero
/// coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Vector<F: Field> {
    terms: Vec<(Term, F::Elem)>,
}

impl<F: Field> Vector<F> {
    pub fn zero() -> Self {
        Vector { terms: Vec::new() }
    }

    pub fn from_terms(mut terms: Vec<(Term, F::Elem)>, f: &F) -> Self {
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Term, F::Elem)> = Vec::with_capacity(terms.len());
        for (t, c) in terms {
            match out.last_mut() {
                Some((lt, lc)) if *lt == t => *lc = f.add(lc, &c),
                _ => out.push((t, c)),
            }
        }
        out.retain(|(_, c)| !f.is_zero(c));
        Vector { terms: out }
    }

    pub fn terms(&self) -> &[(Term, F::Elem)] {
        &self.terms
    }

    pub(crate) fn terms_mut(&mut self) -> &mut Vec<(Term, F::Elem)> {
        &mut self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn lead(&self) -> Option<&(Term, F::Elem)> {
        self.terms.first()
    }

    pub fn lead_term(&self) -> Option<Term> {
        self.terms.first().map(|(t, _)| *t)
    }

    /// `Some(d)` when every term has weighted degree `d`.
    pub fn homogeneous_degree(&self) -> Option<i32> {
        let d = self.terms.first()?.0.wdeg;
        self.terms.iter().all(|(t, _)| t.wdeg == d).then_some(d)
    }

    pub fn max_wdeg(&self) -> Option<i32> {
        self.terms.iter().map(|(t, _)| t.wdeg).max()
    }

    pub fn scale(&self, s: &F::Elem, f: &F) -> Self {
        if f.is_zero(s) {
            return Self::zero();
        }
        Vector { terms: self.terms.iter().map(|(t, c)| (*t, f.mul(c, s))).collect() }
    }

    pub fn neg(&self, f: &F) -> Self {
        Vector { terms: self.terms.iter().map(|(t, c)| (*t, f.neg(c))).collect() }
    }

    pub fn monic(&self, f: &F) -> Self {
        match self.lead() {
            Some((_, c)) if !f.is_one(c) => self.scale(&f.inv(c), f),
            _ => self.clone(),
        }
    }

    pub fn add(&self, o: &Self, f: &F) -> Self {
        let mut out = self.clone();
        out.axpy(&f.one(), &Monomial::one(), o, f);
        out
    }

    pub fn sub(&self, o: &Self, f: &F) -> Self {
        let mut out = self.clone();
        out.axpy(&f.neg(&f.one()), &Monomial::one(), o, f);
        out
    }

    /// `self += s · m · o`.
    pub fn axpy(&mut self, s: &F::Elem, m: &Monomial, o: &Self, f: &F) {
        axpy_from(&mut self.terms, 0, s, m, &o.terms, f);
    }

    pub fn mul_term(&self, m: &Monomial, c: &F::Elem, f: &F) -> Self {
        if f.is_zero(c) {
            return Self::zero();
        }
        Vector { terms: self.terms.iter().map(|(t, tc)| (t.mul(m), f.mul(tc, c))).collect() }
    }

    pub fn mul_poly(&self, p: &Poly<F>, f: &F) -> Self {
        let mut acc = Self::zero();
        for (m, c) in p.terms() {
            acc.axpy(c, m, self, f);
        }
        acc
    }

    /// The coefficient polynomial in component `comp`.
    pub fn entry(&self, comp: usize) -> Poly<F> {
        let mut terms: Vec<(Monomial, F::Elem)> = self
            .terms
            .iter()
            .filter(|(t, _)| t.comp as usize == comp)
            .map(|(t, c)| (t.mono, c.clone()))
            .collect();
        if self.terms.first().is_some_and(|(t, _)| t.order != MonoOrder::Grevlex) {
            terms.sort_by(|a, b| b.0.cmp_in(&a.0, MonoOrder::Grevlex));
        }
        Poly::from_sorted(terms)
    }

    /// All coefficient polynomials for components `0..rank`.
    pub fn entries(&self, rank: usize) -> Vec<Poly<F>> {
        let mut buckets: Vec<Vec<(Monomial, F::Elem)>> = vec![Vec::new(); rank];
        for (t, c) in &self.terms {
            buckets[t.comp as usize].push((t.mono, c.clone()));
        }
        let resort = self.terms.first().is_some_and(|(t, _)| t.order != MonoOrder::Grevlex);
        buckets
            .into_iter()
            .map(|mut b| {
                if resort {
                    b.sort_by(|a, c| c.0.cmp_in(&a.0, MonoOrder::Grevlex));
                }
                Poly::from_sorted(b)
            })
            .collect()
    }

    pub fn max_comp(&self) -> Option<usize> {
        self.terms.iter().map(|(t, _)| t.comp as usize).max()
    }

    /// Re-express in another space through a component map; components
    /// mapped to `None` must be absent.
    pub fn respace(&self, target: &Space, map: impl Fn(usize) -> Option<usize>, f: &F) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(t, c)| {
                let j = map(t.comp as usize).expect("component dropped by respace");
                (target.term(t.mono, j), c.clone())
            })
            .collect();
        Vector::from_terms(terms, f)
    }

    /// Keep only terms whose component satisfies `keep`.
    pub fn filter_comps(&self, keep: impl Fn(usize) -> bool) -> Self {
        Vector { terms: self.terms.iter().filter(|(t, _)| keep(t.comp as usize)).cloned().collect() }
    }

    pub fn format(&self, names: &[String], f: &F) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let rank = self.max_comp().map_or(0, |m| m + 1);
        let parts: Vec<String> = self
            .entries(rank)
            .iter()
            .map(|p| p.format(names, f))
            .collect();
        format!("[{}]", parts.join(", "))
    }
}

/// `terms[start..] += s · m · o`, keeping `terms[..start]` untouched. The
/// caller guarantees every term of `m · o` is below `terms[start - 1]`.
pub(crate) fn axpy_from<F: Field>(
    terms: &mut Vec<(Term, F::Elem)>,
    start: usize,
    s: &F::Elem,
    m: &Monomial,
    o: &[(Term, F::Elem)],
    f: &F,
) {
    if f.is_zero(s) || o.is_empty() {
        return;
    }
    let tail = terms.split_off(start);
    let mut i = 0;
    let mut j = 0;
    let shifted = |k: usize| -> Term { o[k].0.mul(m) };
    let mut next_o = if o.is_empty() { None } else { Some(shifted(0)) };
    while i < tail.len() || next_o.is_some() {
        let ord = match (tail.get(i), next_o) {
            (Some((a, _)), Some(b)) => a.cmp(&b),
            (Some(_), None) => Ordering::Greater,
            (None, Some(_)) => Ordering::Less,
            (None, None) => unreachable!(),
        };
        match ord {
            Ordering::Greater => {
                terms.push(tail[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let b = next_o.unwrap();
                terms.push((b, f.mul(s, &o[j].1)));
                j += 1;
                next_o = (j < o.len()).then(|| shifted(j));
            }
            Ordering::Equal => {
                let c = f.add(&tail[i].1, &f.mul(s, &o[j].1));
                if !f.is_zero(&c) {
                    terms.push((tail[i].0, c));
                }
                i += 1;
                j += 1;
                next_o = (j < o.len()).then(|| shifted(j));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::field::PrimeField;

    #[test]
    fn elimination_block_dominates() {
        let sp = Space { twists: vec![0, 5], blocks: vec![0, 1], order: MonoOrder::Grevlex };
        let a = sp.term(Monomial::one(), 0);
        let b = sp.term(Monomial::from_exps(&[3]), 1);
        assert!(a > b);
    }

    #[test]
    fn axpy_cancels() {
        let f = PrimeField::new(101).unwrap();
        let sp = Space::graded(vec![0, 1]);
        let x = Poly::var(0, &f);
        let v = sp.from_entries(&[x.clone(), Poly::one(&f)], &f);
        let mut w = v.clone();
        w.axpy(&f.neg(&1), &Monomial::one(), &v, &f);
        assert!(w.is_zero());
        let shifted = v.mul_poly(&x, &f);
        assert_eq!(shifted.entry(0), x.mul(&x, &f));
        assert_eq!(shifted.homogeneous_degree(), Some(2));
    }
}
