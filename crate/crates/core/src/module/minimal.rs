//! Minimal presentations: eliminate generators that a relation expresses
//! through the others (unit entries), then drop redundant relations.

use super::kernel::minimal_subset;
use super::FpModule;
use crate::poly::{Field, Monomial, Space, Vector};

/// A minimal presentation together with the isomorphism from the original
/// presentation.
#[derive(Clone, Debug)]
pub struct Minimalized<F: Field> {
    pub module: FpModule<F>,
    /// Image of each original generator, as a vector on the new generators.
    pub transport: Vec<Vector<F>>,
    /// For each new generator, the original generator it came from.
    pub kept: Vec<usize>,
}

impl<F: Field> Minimalized<F> {
    /// Carry an element written on the original generators into the new
    /// presentation.
    pub fn carry(&self, v: &Vector<F>) -> Vector<F> {
        let f = self.module.field();
        let mut acc = Vector::zero();
        for (j, p) in v.entries(self.transport.len()).iter().enumerate() {
            if !p.is_zero() {
                acc = acc.add(&self.transport[j].mul_poly(p, f), f);
            }
        }
        acc
    }
}

/// Find `(relation index, component, coefficient)` of a unit entry: the
/// first relation with one, at its largest such component.
fn find_pivot<F: Field>(rels: &[Vector<F>]) -> Option<(usize, usize, F::Elem)> {
    for (k, r) in rels.iter().enumerate() {
        let best = r
            .terms()
            .iter()
            .filter(|(t, _)| t.mono.is_one())
            .max_by_key(|(t, _)| t.comp);
        if let Some((t, c)) = best {
            return Some((k, t.comp as usize, c.clone()));
        }
    }
    None
}

/// `v - (v_i / c) · pivot`; removes component `i` from `v`.
fn eliminate<F: Field>(v: &Vector<F>, pivot: &Vector<F>, i: usize, cinv: &F::Elem, f: &F) -> Vector<F> {
    let vi = v.entry(i);
    if vi.is_zero() {
        return v.clone();
    }
    let mut out = v.clone();
    for (m, c) in vi.terms() {
        let s = f.neg(&f.mul(c, cinv));
        out.axpy(&s, m, pivot, f);
    }
    out
}

impl<F: Field> FpModule<F> {
    pub fn minimalize(&self) -> Minimalized<F> {
        let f = self.field().clone();
        let n = self.num_gens();
        if self.is_minimal() {
            return Minimalized {
                module: self.clone(),
                transport: (0..n).map(|j| self.gen(j)).collect(),
                kept: (0..n).collect(),
            };
        }
        let mut degs = self.degs().to_vec();
        let mut cur: Vec<usize> = (0..n).collect();
        let mut rels: Vec<Vector<F>> = self.rels().to_vec();
        let mut transport: Vec<Vector<F>> = (0..n).map(|j| self.gen(j)).collect();

        while let Some((k, i, c)) = find_pivot(&rels) {
            let pivot = rels.remove(k);
            let cinv = f.inv(&c);
            for r in rels.iter_mut() {
                *r = eliminate(r, &pivot, i, &cinv, &f);
            }
            for t in transport.iter_mut() {
                *t = eliminate(t, &pivot, i, &cinv, &f);
            }
            degs.remove(i);
            cur.remove(i);
            let sp = Space::graded(degs.clone());
            let shift = |c: usize| if c > i { Some(c - 1) } else if c < i { Some(c) } else { None };
            rels = rels.iter().filter(|r| !r.is_zero()).map(|r| r.respace(&sp, shift, &f)).collect();
            transport = transport.iter().map(|t| t.respace(&sp, shift, &f)).collect();
        }

        let sp = Space::graded(degs.clone());
        let sel = minimal_subset(&f, self.ring().ideal_gb(), &sp, &[], &rels);
        let rels: Vec<Vector<F>> = sel.kept.iter().map(|&k| rels[k].clone()).collect();
        let module = FpModule::new_minimal(self.ring().clone(), degs, rels);
        let transport = transport.iter().map(|t| module.reduce(t)).collect();
        Minimalized { module, transport, kept: cur }
    }

    /// The minimal number of generators.
    pub fn num_min_gens(&self) -> usize {
        self.minimalize().module.num_gens()
    }

    /// Images of the generators in `M / mM`, as rows of scalars indexed by
    /// the minimal generators; used to test whether elements extend to a
    /// minimal generating set.
    pub fn mod_maximal_ideal(&self, v: &Vector<F>) -> Vec<F::Elem> {
        let mz = self.minimalize();
        let w = mz.carry(v);
        let f = self.field();
        let mut out = vec![f.zero(); mz.module.num_gens()];
        for (t, c) in w.terms() {
            if t.mono == Monomial::one() {
                out[t.comp as usize] = c.clone();
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Rationals;
    use crate::ring::Ring;

    #[test]
    fn eliminates_unit_entry() {
        let r = Ring::parse(Rationals, &["x", "y"], &[]).unwrap();
        let p = |s: &str| r.parse_poly(s).unwrap();
        // coker [x 1; 0 y] with generators in degrees 0 and 1.
        let m = FpModule::from_matrix(r.clone(), vec![1, 0], &[vec![p("x"), p("1")], vec![p("0"), p("y")]])
            .unwrap();
        let mz = m.minimalize();
        assert_eq!(mz.module.num_gens(), 1);
        assert_eq!(mz.module.rels().len(), 1);
        let e = mz.module.rels()[0].entry(0).monic(&Rationals);
        assert_eq!(e, p("x*y"));
        assert!(m.minimalize().module.minimalize().module.num_gens() == 1);
    }
}
