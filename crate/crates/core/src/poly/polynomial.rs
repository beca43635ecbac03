//! Sparse polynomials with terms kept in descending grevlex order.

use std::cmp::Ordering;

use super::field::Field;
use super::monomial::{MonoOrder, Monomial};

/// A polynomial over `F`. Terms are sorted by strictly descending grevlex
/// order and carry nonzero coefficients, so structural equality is equality
/// of polynomials.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<F: Field> {
    terms: Vec<(Monomial, F::Elem)>,
}

impl<F: Field> Poly<F> {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn constant(c: F::Elem, f: &F) -> Self {
        Self::monomial(Monomial::one(), c, f)
    }

    pub fn one(f: &F) -> Self {
        Self::constant(f.one(), f)
    }

    pub fn monomial(m: Monomial, c: F::Elem, f: &F) -> Self {
        if f.is_zero(&c) {
            Self::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    pub fn var(i: usize, f: &F) -> Self {
        Self::monomial(Monomial::var(i), f.one(), f)
    }

    /// Build from arbitrary terms, combining duplicates and dropping zeros.
    pub fn from_terms(mut terms: Vec<(Monomial, F::Elem)>, f: &F) -> Self {
        terms.sort_by(|a, b| b.0.cmp_in(&a.0, MonoOrder::Grevlex));
        let mut out: Vec<(Monomial, F::Elem)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = f.add(lc, &c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !f.is_zero(c));
        Poly { terms: out }
    }

    /// Wrap terms already in canonical order; used by conversions that
    /// preserve ordering.
    pub(crate) fn from_sorted(terms: Vec<(Monomial, F::Elem)>) -> Self {
        Poly { terms }
    }

    pub fn terms(&self) -> &[(Monomial, F::Elem)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, F::Elem)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn lead(&self) -> Option<&(Monomial, F::Elem)> {
        self.terms.first()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// `Some(d)` when every term has degree `d`; the zero polynomial is
    /// homogeneous of every degree and reports `None` here, so callers treat
    /// zero separately.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.terms.first()?.0.degree();
        self.terms.iter().all(|(m, _)| m.degree() == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    /// The coefficient of the constant monomial.
    pub fn constant_term(&self, f: &F) -> F::Elem {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => f.zero(),
        }
    }

    pub fn neg(&self, f: &F) -> Self {
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, f.neg(c))).collect() }
    }

    pub fn scale(&self, s: &F::Elem, f: &F) -> Self {
        if f.is_zero(s) {
            return Self::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, f.mul(c, s))).collect() }
    }

    pub fn add(&self, o: &Self, f: &F) -> Self {
        self.combine(o, f, false)
    }

    pub fn sub(&self, o: &Self, f: &F) -> Self {
        self.combine(o, f, true)
    }

    fn combine(&self, o: &Self, f: &F, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &o.terms);
        let conv = |c: &F::Elem| if negate { f.neg(c) } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp_in(&b[j].0, MonoOrder::Grevlex) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0, conv(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { f.sub(&a[i].1, &b[j].1) } else { f.add(&a[i].1, &b[j].1) };
                    if !f.is_zero(&c) {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (*m, conv(c))));
        Poly { terms: out }
    }

    pub fn mul_term(&self, m: &Monomial, c: &F::Elem, f: &F) -> Self {
        if f.is_zero(c) {
            return Self::zero();
        }
        Poly { terms: self.terms.iter().map(|(tm, tc)| (tm.mul(m), f.mul(tc, c))).collect() }
    }

    pub fn mul(&self, o: &Self, f: &F) -> Self {
        let (small, big) = if self.len() <= o.len() { (self, o) } else { (o, self) };
        let mut acc = Self::zero();
        for (m, c) in &small.terms {
            acc = acc.add(&big.mul_term(m, c, f), f);
        }
        acc
    }

    pub fn pow(&self, e: u32, f: &F) -> Self {
        let mut acc = Self::one(f);
        for _ in 0..e {
            acc = acc.mul(self, f);
        }
        acc
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self, f: &F) -> Self {
        match self.lead() {
            Some((_, c)) => self.scale(&f.inv(c), f),
            None => Self::zero(),
        }
    }

    /// Highest variable index that occurs, plus one.
    pub fn var_span(&self) -> usize {
        self.terms
            .iter()
            .map(|(m, _)| m.exps().iter().rposition(|&e| e != 0).map_or(0, |p| p + 1))
            .max()
            .unwrap_or(0)
    }

    pub fn format(&self, names: &[String], f: &F) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = f.is_negative(c);
            let abs = if neg { f.neg(c) } else { c.clone() };
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                s.push_str(&f.format(&abs));
            } else if f.is_one(&abs) {
                s.push_str(&m.format(names));
            } else {
                s.push_str(&f.format(&abs));
                s.push('*');
                s.push_str(&m.format(names));
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::field::PrimeField;

    fn names() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    #[test]
    fn arithmetic_and_printing() {
        let f = PrimeField::new(7).unwrap();
        let x = Poly::var(0, &f);
        let y = Poly::var(1, &f);
        let p = x.add(&y, &f).pow(2, &f);
        assert_eq!(p.format(&names(), &f), "x^2 + 2*x*y + y^2");
        let q = p.sub(&x.mul(&x, &f), &f);
        assert_eq!(q.format(&names(), &f), "2*x*y + y^2");
        assert_eq!(q.homogeneous_degree(), Some(2));
        let r = p.sub(&p, &f);
        assert!(r.is_zero());
        assert_eq!(x.neg(&f).format(&names(), &f), "-x");
    }

    #[test]
    fn from_terms_combines() {
        let f = PrimeField::new(5).unwrap();
        let m = Monomial::var(0);
        let p = Poly::from_terms(vec![(m, 2), (Monomial::one(), 1), (m, 3)], &f);
        assert_eq!(p.format(&names(), &f), "1");
    }
}
