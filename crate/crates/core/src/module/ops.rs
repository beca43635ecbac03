//! Constructions on finitely presented modules: sums, tensor products,
//! duals, submodules and quotients, kernels of maps, annihilators and the
//! restriction of scalars to the ambient polynomial ring.

use std::sync::Arc;

use super::kernel::{kernel, minimal_subset, submodule_gb};
use super::{FpModule, ModuleMap};
use crate::error::{Error, Result};
use crate::poly::{buchberger, Field, GroebnerBasis, MonoOrder, Poly, Space, Vector};
use crate::ring::Ring;

/// A submodule of an ambient module, presented on its own generators.
#[derive(Clone, Debug)]
pub struct Submodule<F: Field> {
    pub module: FpModule<F>,
    /// The generators as elements of the ambient module.
    pub gens: Vec<Vector<F>>,
}

/// `M* = Hom(M, R)` together with its generators as functionals, written as
/// vectors in the dual of the generator space of `M`.
#[derive(Clone, Debug)]
pub struct Dual<F: Field> {
    pub module: FpModule<F>,
    pub functionals: Vec<Vector<F>>,
}

impl<F: Field> Dual<F> {
    /// The map `M → R^ν` that sends a generator of `M` to its values under
    /// the generating functionals; it factors as `M → M** ↪ R^ν`.
    pub fn evaluation(&self, source: &FpModule<F>) -> ModuleMap<F> {
        let f = source.field();
        let target: Vec<i32> = self.module.degs().iter().map(|a| -a).collect();
        let sp = Space::graded(target.clone());
        let cols = (0..source.num_gens())
            .map(|j| {
                let entries: Vec<Poly<F>> = self.functionals.iter().map(|k| k.entry(j)).collect();
                sp.from_entries(&entries, f)
            })
            .collect();
        ModuleMap { source: source.degs().to_vec(), target, cols }
    }
}

impl<F: Field> FpModule<F> {
    /// Subset of `elems` generating the same submodule, in order, with
    /// elements zero in `M` dropped.
    fn minimal_elems(&self, elems: &[Vector<F>]) -> Vec<Vector<F>> {
        let sel = minimal_subset(self.field(), self.ring().ideal_gb(), &self.space(), &self.rels, elems);
        sel.kept.into_iter().map(|k| elems[k].clone()).collect()
    }

    /// Generators of the kernel of the map `M → target` sending generator
    /// `j` to `images[j]`, as elements of `M`; minimal and nonzero in `M`.
    pub fn map_kernel(&self, target: &FpModule<F>, images: &[Vector<F>]) -> Result<Vec<Vector<F>>> {
        let f = self.field();
        let ker = kernel(f, self.ring().ideal_gb(), &target.space(), target.rels(), &self.space(), images)?;
        Ok(self.minimal_elems(&ker))
    }

    /// The submodule generated by homogeneous elements.
    pub fn submodule(&self, elems: &[Vector<F>]) -> Result<Submodule<F>> {
        let gens = self.minimal_elems(elems);
        let degs: Vec<i32> = gens
            .iter()
            .map(|g| g.homogeneous_degree().ok_or_else(|| Error::NonHomogeneous("submodule generator".into())))
            .collect::<Result<_>>()?;
        let src = Space::graded(degs.clone());
        let rels = kernel(self.field(), self.ring().ideal_gb(), &self.space(), &self.rels, &src, &gens)?;
        Ok(Submodule { module: FpModule::new_minimal(self.ring.clone(), degs, rels), gens })
    }

    /// `M / (elems)`.
    pub fn quotient(&self, elems: &[Vector<F>]) -> Result<Self> {
        let mut rels = self.rels.clone();
        rels.extend(elems.iter().cloned());
        Self::new(self.ring.clone(), self.degs.clone(), rels)
    }

    pub fn direct_sum(parts: &[&FpModule<F>]) -> Result<Self> {
        let ring = match parts.first() {
            Some(m) => m.ring.clone(),
            None => return Err(Error::MissingInput("direct sum of nothing".into())),
        };
        let mut degs = Vec::new();
        let mut offsets = Vec::with_capacity(parts.len());
        for m in parts {
            m.same_ring(parts[0])?;
            offsets.push(degs.len());
            degs.extend_from_slice(m.degs());
        }
        let sp = Space::graded(degs.clone());
        let f = ring.field().clone();
        let mut rels = Vec::new();
        for (m, off) in parts.iter().zip(offsets) {
            rels.extend(m.rels().iter().map(|r| r.respace(&sp, |c| Some(c + off), &f)));
        }
        let minimal = parts.iter().all(|m| m.is_minimal());
        let mut out = Self::new(ring, degs, rels)?;
        out.minimal = minimal;
        Ok(out)
    }

    /// The block presentation of `M ⊗ N` on the generators `m_i ⊗ n_j`,
    /// indexed `i·|gens N| + j`; not minimalized.
    pub fn tensor_raw(&self, o: &FpModule<F>) -> Result<Self> {
        self.same_ring(o)?;
        let (a, b) = (self.num_gens(), o.num_gens());
        if a.saturating_mul(b) > TENSOR_CAP {
            return Err(Error::ResourceLimit(format!("tensor product with {} generators exceeds {TENSOR_CAP}", a * b)));
        }
        let f = self.field().clone();
        let mut degs = Vec::with_capacity(a * b);
        for i in 0..a {
            for j in 0..b {
                degs.push(self.degs[i] + o.degs[j]);
            }
        }
        let sp = Space::graded(degs.clone());
        let mut rels = Vec::with_capacity(self.rels.len() * b + a * o.rels.len());
        for r in &self.rels {
            let er = r.entries(a);
            for j in 0..b {
                let entries: Vec<Poly<F>> =
                    (0..a * b).map(|c| if c % b == j { er[c / b].clone() } else { Poly::zero() }).collect();
                rels.push(sp.from_entries(&entries, &f));
            }
        }
        for i in 0..a {
            for s in &o.rels {
                rels.push(s.respace(&sp, |c| Some(i * b + c), &f));
            }
        }
        Self::new(self.ring.clone(), degs, rels)
    }

    /// `M ⊗ N`, minimalized.
    pub fn tensor(&self, o: &FpModule<F>) -> Result<Self> {
        let a = self.minimalize().module;
        let b = o.minimalize().module;
        Ok(a.tensor_raw(&b)?.minimalize().module)
    }

    /// `Hom(M, R)`: the kernel of the transposed presentation, presented by
    /// the syzygies of its minimal generators.
    pub fn dual(&self) -> Result<Dual<F>> {
        let f = self.field().clone();
        let m = self.minimalize().module;
        let src: Vec<i32> = m.degs.iter().map(|d| -d).collect();
        let rel_degs: Vec<i32> = m.rels.iter().map(|r| r.homogeneous_degree().unwrap()).collect();
        let tgt = Space::graded(rel_degs.iter().map(|d| -d).collect());
        let rows: Vec<Vec<Poly<F>>> = m.rels.iter().map(|r| r.entries(m.num_gens())).collect();
        let cols: Vec<Vector<F>> = (0..m.num_gens())
            .map(|j| {
                let e: Vec<Poly<F>> = rows.iter().map(|r| r[j].clone()).collect();
                tgt.from_entries(&e, &f)
            })
            .collect();
        let src_sp = Space::graded(src);
        let ker = kernel(&f, self.ring.ideal_gb(), &tgt, &[], &src_sp, &cols)?;
        let degs: Vec<i32> = ker.iter().map(|k| k.homogeneous_degree().unwrap()).collect();
        let gsp = Space::graded(degs.clone());
        let rels = kernel(&f, self.ring.ideal_gb(), &src_sp, &[], &gsp, &ker)?;
        // Functionals are recorded against the generators of `self`; the
        // minimal presentation keeps a subset of them in order.
        let mz = self.minimalize();
        let functionals = ker
            .iter()
            .map(|k| {
                let full = Space::graded(self.degs.iter().map(|d| -d).collect());
                let vals: Vec<Poly<F>> = (0..self.num_gens())
                    .map(|j| {
                        let t = mz.transport[j].entries(m.num_gens());
                        let mut acc = Poly::zero();
                        for (i, p) in t.iter().enumerate() {
                            acc = acc.add(&p.mul(&k.entry(i), &f), &f);
                        }
                        self.ring.reduce(&acc)
                    })
                    .collect();
                full.from_entries(&vals, &f)
            })
            .collect();
        Ok(Dual { module: FpModule::new_minimal(self.ring.clone(), degs, rels), functionals })
    }

    /// The same module over the ambient polynomial ring, with the ring's
    /// relations times each generator added to the presentation.
    pub fn restrict_to_base(&self) -> Result<Self> {
        let base = self.ring.base();
        let sp = self.space();
        let mut rels = self.rels.clone();
        for j in 0..self.num_gens() {
            for r in self.ring.relations() {
                rels.push(sp.embed(r, j));
            }
        }
        Self::new(base, self.degs.clone(), rels)
    }

    /// `(0 :_R m)`, generated minimally.
    pub fn ann_of_element(&self, m: &Vector<F>) -> Result<Vec<Poly<F>>> {
        if m.max_comp().is_some_and(|c| c >= self.num_gens()) {
            return Err(Error::LengthMismatch("element has more coordinates than generators".into()));
        }
        if self.elem_is_zero(m) {
            return Ok(vec![Poly::one(self.field())]);
        }
        let d = m.homogeneous_degree().ok_or_else(|| Error::NonHomogeneous("element".into()))?;
        let src = Space::graded(vec![d]);
        let ker = kernel(self.field(), self.ring.ideal_gb(), &self.space(), &self.rels, &src, std::slice::from_ref(m))?;
        Ok(ker.iter().map(|v| v.entry(0)).collect())
    }

    /// `Ann_R(M)`, as the annihilator of `(e_1, …, e_n)` in `⊕ M(d_j)`.
    pub fn annihilator(&self) -> Result<Vec<Poly<F>>> {
        let n = self.num_gens();
        if n == 0 {
            return Ok(vec![Poly::one(self.field())]);
        }
        let f = self.field().clone();
        let copies: Vec<FpModule<F>> = (0..n).map(|j| self.twist(self.degs[j])).collect();
        let refs: Vec<&FpModule<F>> = copies.iter().collect();
        let sum = Self::direct_sum(&refs)?;
        let sp = sum.space();
        let mut terms = Vec::new();
        for j in 0..n {
            terms.extend(sp.basis(j * n + j, &f).terms().iter().cloned());
        }
        let diag = Vector::from_terms(terms, &f);
        sum.ann_of_element(&diag)
    }

    /// The ideal generated by the entries of a minimal presentation matrix.
    pub fn presentation_ideal(&self) -> Vec<Poly<F>> {
        let m = self.minimalize().module;
        let f = self.field();
        let mut out: Vec<Poly<F>> = Vec::new();
        for r in m.rels() {
            for p in r.entries(m.num_gens()) {
                let p = self.ring.reduce(&p);
                if !p.is_zero() {
                    let p = p.monic(f);
                    if !out.contains(&p) {
                        out.push(p);
                    }
                }
            }
        }
        out
    }

    pub fn is_free(&self) -> bool {
        self.minimalize().module.rels().is_empty()
    }

    /// Surrogate for isomorphism: equal Hilbert functions through `d_max`
    /// and equal annihilators.
    pub fn indistinguishable(&self, o: &FpModule<F>, d_max: i32) -> Result<bool> {
        self.same_ring(o)?;
        let lo = self.min_degree().into_iter().chain(o.min_degree()).min().unwrap_or(0);
        if self.hilbert_range(lo, d_max) != o.hilbert_range(lo, d_max) {
            return Ok(false);
        }
        Ok(self.ring.ideals_equal(&self.annihilator()?, &o.annihilator()?))
    }
}

/// Upper limit on the generator count of a raw tensor product.
pub const TENSOR_CAP: usize = 20_000;

/// Minimal generators of the kernel of a map of free modules over the ring.
pub fn syzygies<F: Field>(ring: &Ring<F>, map: &ModuleMap<F>) -> Result<ModuleMap<F>> {
    let ker = kernel(ring.field(), ring.ideal_gb(), &map.target_space(), &[], &map.source_space(), &map.cols)?;
    let degs = ker.iter().map(|k| k.homogeneous_degree().unwrap()).collect();
    Ok(ModuleMap { source: degs, target: map.source.clone(), cols: ker })
}

impl<F: Field> Ring<F> {
    /// Gröbner basis of `(gens) + J`.
    pub fn ideal_with(&self, gens: &[Poly<F>]) -> GroebnerBasis<F> {
        let mut all = gens.to_vec();
        all.extend(self.ideal_gb().iter().cloned());
        buchberger(&all, MonoOrder::Grevlex, self.field())
    }

    /// Equality of ideals of the ring by mutual containment.
    pub fn ideals_equal(&self, a: &[Poly<F>], b: &[Poly<F>]) -> bool {
        let ga = self.ideal_with(a);
        let gb = self.ideal_with(b);
        b.iter().all(|p| ga.contains(p)) && a.iter().all(|p| gb.contains(p))
    }

    /// Is `(gens)` contained in `√(within + J)`?
    pub fn radical_contains(&self, gens: &[Poly<F>], within: &[Poly<F>]) -> Result<bool> {
        let mut base = within.to_vec();
        base.extend(self.ideal_gb().iter().cloned());
        for g in gens {
            if !crate::poly::radical_membership(g, &base, self.nvars(), self.field())? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Free module `R^ν` with the given twists and its submodule generated by
/// `cols`, presented on minimal generators.
pub fn free_submodule<F: Field>(ring: &Arc<Ring<F>>, twists: Vec<i32>, cols: &[Vector<F>]) -> Result<Submodule<F>> {
    FpModule::free(ring.clone(), twists).submodule(cols)
}

/// Gröbner basis check that `v` lies in the submodule generated by `gens`
/// of the free module `space`.
pub fn in_span<F: Field>(ring: &Ring<F>, space: &Space, gens: &[Vector<F>], v: &Vector<F>) -> bool {
    submodule_gb(ring.field(), ring.ideal_gb(), space, gens).contains(v)
}
