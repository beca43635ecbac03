//! Ideal-level operations: reduced bases, normal forms, membership, radical
//! membership and Krull dimension of quotients.

use super::field::Field;
use super::groebner::{groebner, Gb, GbInput, GbOptions};
use super::monomial::{MonoOrder, Monomial, MAX_VARS};
use super::polynomial::Poly;
use super::vector::{Space, Vector};
use crate::error::{Error, Result};

/// A reduced Gröbner basis of an ideal.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Field> {
    order: MonoOrder,
    gb: Gb<F>,
    gens: Vec<Poly<F>>,
}

fn space(order: MonoOrder) -> Space {
    Space { twists: vec![0], blocks: vec![0], order }
}

impl<F: Field> GroebnerBasis<F> {
    pub fn generators(&self) -> &[Poly<F>] {
        &self.gens
    }

    pub fn order(&self) -> MonoOrder {
        self.order
    }

    pub fn is_reduced(&self) -> bool {
        true
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].lead().is_some_and(|(m, _)| m.is_one())
    }

    pub fn normal_form(&self, p: &Poly<F>) -> Poly<F> {
        let v = space(self.order).embed(p, 0);
        self.gb.reduce(&v).entry(0)
    }

    pub fn contains(&self, p: &Poly<F>) -> bool {
        self.normal_form(p).is_zero()
    }

    /// Leading monomials of the basis.
    pub fn lead_monomials(&self) -> Vec<Monomial> {
        self.gb.leads().iter().map(|t| t.mono).collect()
    }

    pub fn inner(&self) -> &Gb<F> {
        &self.gb
    }
}

/// The reduced Gröbner basis of `(gens)`; deterministic and independent of
/// the order in which generators are listed.
pub fn buchberger<F: Field>(gens: &[Poly<F>], order: MonoOrder, f: &F) -> GroebnerBasis<F> {
    let sp = space(order);
    let inputs = gens.iter().map(|g| GbInput::ambient(sp.embed(g, 0))).collect();
    let out = groebner(f, inputs, GbOptions { product_criterion: true, ..Default::default() });
    let gens = out.gb.elems().iter().map(|v| v.entry(0)).collect();
    GroebnerBasis { order, gb: out.gb, gens }
}

/// Is `p` in the radical of `(gens)`? Decided by 1 ∈ (gens, 1 − t·p) in a
/// ring with one extra variable `t`.
pub fn radical_membership<F: Field>(p: &Poly<F>, gens: &[Poly<F>], nvars: usize, f: &F) -> Result<bool> {
    if p.is_zero() {
        return Ok(true);
    }
    if nvars + 1 > MAX_VARS {
        return Err(Error::TooManyVariables(nvars + 1, MAX_VARS));
    }
    let t = Poly::var(nvars, f);
    let aux = Poly::one(f).sub(&t.mul(p, f), f);
    let mut all: Vec<Poly<F>> = gens.to_vec();
    all.push(aux);
    Ok(buchberger(&all, MonoOrder::Grevlex, f).is_unit_ideal())
}

/// Krull dimension of `k[x_0..x_{n-1}] / (lead monomials)`: the largest set
/// of variables containing no leading monomial's support. `None` for the
/// unit ideal (empty quotient).
pub fn dim_of_monomial_ideal(leads: &[Monomial], nvars: usize) -> Option<usize> {
    if leads.iter().any(|m| m.is_one()) {
        return None;
    }
    let supports: Vec<u32> = leads
        .iter()
        .map(|m| (0..nvars).filter(|&i| m.exp(i) > 0).fold(0u32, |b, i| b | (1 << i)))
        .collect();
    let mut best = 0;
    for set in 0u32..(1u32 << nvars) {
        let size = set.count_ones() as usize;
        if size <= best {
            continue;
        }
        if supports.iter().all(|s| s & !set != 0) {
            best = size;
        }
    }
    Some(best)
}

/// Krull dimension of `k[x]/I`; `None` when `I` is the unit ideal.
pub fn krull_dim<F: Field>(gens: &[Poly<F>], nvars: usize, f: &F) -> Option<usize> {
    let gb = buchberger(gens, MonoOrder::Grevlex, f);
    dim_of_monomial_ideal(&gb.lead_monomials(), nvars)
}

/// Embed polynomials as a rank-one vector list (helper for callers that
/// work with the module engine directly).
pub fn as_vectors<F: Field>(gens: &[Poly<F>]) -> Vec<Vector<F>> {
    let sp = space(MonoOrder::Grevlex);
    gens.iter().map(|g| sp.embed(g, 0)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::field::{PrimeField, Rationals};
    use crate::poly::parse::parse_poly;

    fn vars() -> Vec<String> {
        ["x", "y", "z"].iter().map(|s| s.to_string()).collect()
    }

    fn p<F: Field>(s: &str, f: &F) -> Poly<F> {
        parse_poly(s, &vars(), f).unwrap()
    }

    #[test]
    fn trivial_bases() {
        let f = PrimeField::new(32003).unwrap();
        let g = buchberger(&[p("x*y", &f)], MonoOrder::Grevlex, &f);
        assert_eq!(g.generators(), &[p("x*y", &f)]);
        let e = buchberger::<PrimeField>(&[], MonoOrder::Grevlex, &f);
        assert!(e.generators().is_empty());
    }

    #[test]
    fn normal_forms() {
        let q = Rationals;
        let g = buchberger(&[p("x*y", &q)], MonoOrder::Grevlex, &q);
        assert!(g.normal_form(&p("x*y*(x+z^2)", &q)).is_zero());
        assert_eq!(g.normal_form(&p("x^2 + y", &q)), p("x^2 + y", &q));
        let h = buchberger(&[p("y - x^2", &q)], MonoOrder::Grevlex, &q);
        assert_eq!(h.normal_form(&p("x^2*y + y^2", &q)), p("2*y^2", &q));
        // With y declared first and lex, y leads and the normal form is the
        // substitution y -> x^2.
        let yx: Vec<String> = vec!["y".into(), "x".into()];
        let r = |s: &str| parse_poly(s, &yx, &q).unwrap();
        let lex = buchberger(&[r("y - x^2")], MonoOrder::Lex, &q);
        assert_eq!(lex.normal_form(&r("x^2*y + y^2")), r("2*x^4"));
    }

    #[test]
    fn radical() {
        let q = Rationals;
        assert!(radical_membership(&p("x", &q), &[p("x^2", &q)], 3, &q).unwrap());
        assert!(!radical_membership(&p("y", &q), &[p("x", &q)], 3, &q).unwrap());
        assert!(radical_membership(&p("x+y", &q), &[p("x^2", &q), p("y^2", &q)], 3, &q).unwrap());
    }

    #[test]
    fn dimensions() {
        let q = Rationals;
        assert_eq!(krull_dim::<Rationals>(&[], 3, &q), Some(3));
        assert_eq!(krull_dim(&[p("x", &q), p("y", &q), p("z", &q)], 3, &q), Some(0));
        assert_eq!(krull_dim(&[p("x*y", &q), p("y*z", &q)], 3, &q), Some(2));
        assert_eq!(krull_dim(&[p("x", &q), p("1 - x", &q)], 3, &q), None);
    }
}
