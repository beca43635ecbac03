//! Finitely presented graded modules over a ring `R = Q/J`.
//!
//! A module is the cokernel of a homogeneous presentation: generators with
//! degrees and relations as vectors in the free module on those generators.
//! The relations `J·e_j` are implicit. `R(-a)` has its generator in degree
//! `a`, and all maps have degree zero.

pub mod hilbert;
pub mod kernel;
pub mod minimal;
pub mod ops;

use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::poly::{Field, Gb, Poly, Space, Vector};
use crate::ring::Ring;

pub use hilbert::Length;
pub use minimal::Minimalized;

#[derive(Clone, Debug)]
pub struct FpModule<F: Field> {
    ring: Arc<Ring<F>>,
    degs: Vec<i32>,
    rels: Vec<Vector<F>>,
    minimal: bool,
    gb: OnceLock<Arc<Gb<F>>>,
}

/// A degree-zero map of graded free modules, stored by columns: column `j`
/// is the image of the `j`-th source basis vector.
#[derive(Clone, Debug)]
pub struct ModuleMap<F: Field> {
    pub source: Vec<i32>,
    pub target: Vec<i32>,
    pub cols: Vec<Vector<F>>,
}

impl<F: Field> ModuleMap<F> {
    pub fn new(source: Vec<i32>, target: Vec<i32>, cols: Vec<Vector<F>>) -> Result<Self> {
        kernel::check_columns(&Space::graded(source.clone()), &cols)?;
        if let Some(c) = cols.iter().filter_map(|c| c.max_comp()).max() {
            if c >= target.len() {
                return Err(Error::ShapeMismatch(format!("column entry in component {c} of a rank-{} target", target.len())));
            }
        }
        Ok(ModuleMap { source, target, cols })
    }

    pub fn source_space(&self) -> Space {
        Space::graded(self.source.clone())
    }

    pub fn target_space(&self) -> Space {
        Space::graded(self.target.clone())
    }

    /// Row-major entries (`target rank × source rank`).
    pub fn entries(&self) -> Vec<Vec<Poly<F>>> {
        let cols: Vec<Vec<Poly<F>>> = self.cols.iter().map(|c| c.entries(self.target.len())).collect();
        (0..self.target.len()).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ModuleMap<F>, f: &F) -> Result<ModuleMap<F>> {
        if other.target != self.source {
            return Err(Error::ShapeMismatch("composition of incompatible maps".into()));
        }
        let cols = other.cols.iter().map(|c| self.apply(c, f)).collect();
        Ok(ModuleMap { source: other.source.clone(), target: self.target.clone(), cols })
    }

    /// Image of a source vector.
    pub fn apply(&self, v: &Vector<F>, f: &F) -> Vector<F> {
        let mut acc = Vector::zero();
        for (j, p) in v.entries(self.source.len()).iter().enumerate() {
            if !p.is_zero() {
                acc = acc.add(&self.cols[j].mul_poly(p, f), f);
            }
        }
        acc
    }

    /// True when no entry is a nonzero constant.
    pub fn is_minimal(&self) -> bool {
        self.cols.iter().all(|c| c.terms().iter().all(|(t, _)| !t.mono.is_one()))
    }
}

impl<F: Field> FpModule<F> {
    /// Module with the given generator degrees and relations (vectors in
    /// `Space::graded(degs)`); zero relations are dropped.
    pub fn new(ring: Arc<Ring<F>>, degs: Vec<i32>, rels: Vec<Vector<F>>) -> Result<Self> {
        let sp = Space::graded(degs.clone());
        let mut kept = Vec::with_capacity(rels.len());
        for (k, r) in rels.into_iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            if r.max_comp().is_some_and(|c| c >= degs.len()) {
                return Err(Error::ShapeMismatch(format!("relation {k} uses a missing generator")));
            }
            let r = r.respace(&sp, Some, ring.field());
            if r.homogeneous_degree().is_none() {
                return Err(Error::NonHomogeneous(format!("relation {k}: {}", ring.fmt_vec(&r))));
            }
            kept.push(r);
        }
        Ok(FpModule { ring, degs, rels: kept, minimal: false, gb: OnceLock::new() })
    }

    pub(crate) fn new_minimal(ring: Arc<Ring<F>>, degs: Vec<i32>, rels: Vec<Vector<F>>) -> Self {
        FpModule { ring, degs, rels, minimal: true, gb: OnceLock::new() }
    }

    /// Cokernel of a row-major matrix: rows are generators, columns are
    /// relations.
    pub fn from_matrix(ring: Arc<Ring<F>>, degs: Vec<i32>, rows: &[Vec<Poly<F>>]) -> Result<Self> {
        if rows.len() != degs.len() {
            return Err(Error::ShapeMismatch(format!("{} matrix rows for {} generators", rows.len(), degs.len())));
        }
        let ncols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::ShapeMismatch("ragged presentation matrix".into()));
        }
        let sp = Space::graded(degs.clone());
        let f = ring.field().clone();
        let rels = (0..ncols)
            .map(|k| {
                let col: Vec<Poly<F>> = rows.iter().map(|r| r[k].clone()).collect();
                sp.from_entries(&col, &f)
            })
            .collect();
        Self::new(ring, degs, rels)
    }

    pub fn free(ring: Arc<Ring<F>>, degs: Vec<i32>) -> Self {
        FpModule { ring, minimal: true, degs, rels: Vec::new(), gb: OnceLock::new() }
    }

    pub fn zero(ring: Arc<Ring<F>>) -> Self {
        Self::free(ring, Vec::new())
    }

    /// `R/(gens)` with its generator in degree 0.
    pub fn cyclic(ring: Arc<Ring<F>>, gens: &[Poly<F>]) -> Result<Self> {
        let sp = Space::graded(vec![0]);
        let rels = gens.iter().map(|g| sp.embed(g, 0)).collect();
        Self::new(ring, vec![0], rels)
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        self.ring.field()
    }

    pub fn degs(&self) -> &[i32] {
        &self.degs
    }

    pub fn rels(&self) -> &[Vector<F>] {
        &self.rels
    }

    /// Number of generators in this presentation.
    pub fn num_gens(&self) -> usize {
        self.degs.len()
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    pub fn space(&self) -> Space {
        Space::graded(self.degs.clone())
    }

    /// The presentation map `R^{rels} → R^{gens}`.
    pub fn presentation(&self) -> ModuleMap<F> {
        ModuleMap {
            source: self.rels.iter().map(|r| r.homogeneous_degree().unwrap()).collect(),
            target: self.degs.clone(),
            cols: self.rels.clone(),
        }
    }

    /// Gröbner basis of the relation module, `J·e_j` included.
    pub fn gb(&self) -> Arc<Gb<F>> {
        self.gb
            .get_or_init(|| {
                Arc::new(kernel::submodule_gb(self.field(), self.ring.ideal_gb(), &self.space(), &self.rels))
            })
            .clone()
    }

    /// Canonical representative of an element.
    pub fn reduce(&self, v: &Vector<F>) -> Vector<F> {
        self.gb().reduce(v)
    }

    pub fn elem_is_zero(&self, v: &Vector<F>) -> bool {
        self.gb().contains(v)
    }

    pub fn gen(&self, j: usize) -> Vector<F> {
        self.space().basis(j, self.field())
    }

    /// Element with the given coordinates; checks length and homogeneity.
    pub fn element(&self, coords: &[Poly<F>]) -> Result<Vector<F>> {
        if coords.len() != self.num_gens() {
            return Err(Error::LengthMismatch(format!(
                "{} coordinates for {} generators",
                coords.len(),
                self.num_gens()
            )));
        }
        let v = self.space().from_entries(coords, self.field());
        if !v.is_zero() && v.homogeneous_degree().is_none() {
            return Err(Error::NonHomogeneous("element is not homogeneous".into()));
        }
        Ok(v)
    }

    pub fn is_zero(&self) -> bool {
        (0..self.num_gens()).all(|j| self.elem_is_zero(&self.gen(j)))
    }

    pub fn same_ring(&self, o: &Self) -> Result<()> {
        self.ring.check_same(&o.ring)
    }

    pub fn with_ring(&self, ring: Arc<Ring<F>>) -> Result<Self> {
        if ring.vars() != self.ring.vars() {
            return Err(Error::MixedRings("different variables".into()));
        }
        Self::new(ring, self.degs.clone(), self.rels.clone())
    }

    /// `M(a)`: every generator degree lowered by `a`.
    pub fn twist(&self, a: i32) -> Self {
        let degs: Vec<i32> = self.degs.iter().map(|d| d - a).collect();
        let sp = Space::graded(degs.clone());
        let rels = self.rels.iter().map(|r| r.respace(&sp, Some, self.field())).collect();
        FpModule { ring: self.ring.clone(), degs, rels, minimal: self.minimal, gb: OnceLock::new() }
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.degs.iter().copied().min()
    }

    /// Human-readable presentation summary.
    pub fn describe(&self) -> String {
        let rels: Vec<String> = self.rels.iter().map(|r| self.ring.fmt_vec(r)).collect();
        format!("coker on generators of degrees {:?} with relations {{{}}}", self.degs, rels.join(", "))
    }
}
