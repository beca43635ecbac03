//! Module Gröbner basis primitives over `Q/J`: submodule bases, minimal
//! generating subsets and kernels of maps between graded modules.
//!
//! Every routine takes the reduced Gröbner basis of `J` explicitly and
//! adjoins `J·e_j` for each basis vector, so one engine serves both the
//! polynomial ring and its quotients.

use crate::error::{Error, Result};
use crate::poly::{groebner, Field, Gb, GbInput, GbOptions, Poly, Space, Vector};

pub(crate) fn seeds<F: Field>(ideal_gb: &[Poly<F>], space: &Space, comps: std::ops::Range<usize>) -> Vec<GbInput<F>> {
    let mut out = Vec::with_capacity(ideal_gb.len() * comps.len());
    for j in comps {
        for g in ideal_gb {
            out.push(GbInput::seed(space.embed(g, j)));
        }
    }
    out
}

fn options(space: &Space) -> GbOptions {
    GbOptions { product_criterion: space.rank() == 1, ..Default::default() }
}

/// Gröbner basis of `gens + J·F` inside the free module `F` described by
/// `space`.
pub fn submodule_gb<F: Field>(f: &F, ideal_gb: &[Poly<F>], space: &Space, gens: &[Vector<F>]) -> Gb<F> {
    let mut inputs = seeds(ideal_gb, space, 0..space.rank());
    inputs.extend(gens.iter().cloned().map(GbInput::ambient));
    groebner(f, inputs, options(space)).gb
}

pub struct MinimalSubset<F: Field> {
    pub gb: Gb<F>,
    /// Indices into the tracked list forming a minimal generating set of
    /// `(ambient + tracked + J·F) / (ambient + J·F)`.
    pub kept: Vec<usize>,
}

impl<F: Field> MinimalSubset<F> {
    pub fn gb_contains(&self, v: &Vector<F>) -> bool {
        self.gb.contains(v)
    }
}

/// Select a minimal generating subset of homogeneous `tracked` vectors
/// modulo `ambient + J·F`.
pub fn minimal_subset<F: Field>(
    f: &F,
    ideal_gb: &[Poly<F>],
    space: &Space,
    ambient: &[Vector<F>],
    tracked: &[Vector<F>],
) -> MinimalSubset<F> {
    let mut inputs = seeds(ideal_gb, space, 0..space.rank());
    let offset = inputs.len() + ambient.len();
    inputs.extend(ambient.iter().cloned().map(GbInput::ambient));
    inputs.extend(tracked.iter().cloned().map(GbInput::tracked));
    let out = groebner(f, inputs, options(space));
    let mut kept: Vec<usize> = out.minimal_tracked.into_iter().map(|k| k - offset).collect();
    kept.sort_unstable();
    MinimalSubset { gb: out.gb, kept }
}

/// Check that each column is homogeneous of the degree of its source basis
/// vector.
pub(crate) fn check_columns<F: Field>(src: &Space, cols: &[Vector<F>]) -> Result<()> {
    if cols.len() != src.rank() {
        return Err(Error::ShapeMismatch(format!("{} columns for a rank-{} source", cols.len(), src.rank())));
    }
    for (j, c) in cols.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        match c.homogeneous_degree() {
            Some(d) if d == src.twists[j] => {}
            Some(d) => {
                return Err(Error::NonHomogeneous(format!(
                    "column {j} has degree {d} but its source generator has degree {}",
                    src.twists[j]
                )))
            }
            None => return Err(Error::NonHomogeneous(format!("column {j} is not homogeneous"))),
        }
    }
    Ok(())
}

/// Minimal generators of the kernel of `R^s → M`, `e_j ↦ cols[j]`, where
/// `M = target / (target_rels + J·target)` and `R = Q/J`. Results live in
/// the source space and are minimal modulo `J·R^s`.
pub fn kernel<F: Field>(
    f: &F,
    ideal_gb: &[Poly<F>],
    target: &Space,
    target_rels: &[Vector<F>],
    src: &Space,
    cols: &[Vector<F>],
) -> Result<Vec<Vector<F>>> {
    check_columns(src, cols)?;
    let t = target.rank();
    let s = src.rank();
    if s == 0 {
        return Ok(Vec::new());
    }
    let mut twists = target.twists.clone();
    twists.extend_from_slice(&src.twists);
    let mut blocks = vec![0u8; t];
    blocks.extend(std::iter::repeat_n(1u8, s));
    let aug = Space { twists, blocks, order: target.order };

    let mut inputs = seeds(ideal_gb, &aug, 0..t + s);
    for r in target_rels {
        inputs.push(GbInput::ambient(r.respace(&aug, Some, f)));
    }
    for (j, c) in cols.iter().enumerate() {
        let mut v = c.respace(&aug, Some, f);
        v = v.add(&aug.basis(t + j, f), f);
        inputs.push(GbInput::ambient(v));
    }
    let out = groebner(f, inputs, GbOptions::default());
    let ker: Vec<Vector<F>> = out
        .gb
        .elems()
        .iter()
        .filter(|v| v.lead_term().is_some_and(|lt| lt.block == 1))
        .map(|v| v.respace(src, |c| c.checked_sub(t), f))
        .collect();
    let sel = minimal_subset(f, ideal_gb, src, &[], &ker);
    Ok(sel.kept.into_iter().map(|k| ker[k].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, Rationals};

    fn vars() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    #[test]
    fn koszul_syzygy_of_xy() {
        let f = Rationals;
        let p = |s: &str| parse_poly(s, &vars(), &f).unwrap();
        let target = Space::graded(vec![0]);
        let src = Space::graded(vec![1, 1]);
        let cols = vec![target.embed(&p("x"), 0), target.embed(&p("y"), 0)];
        let k = kernel(&f, &[], &target, &[], &src, &cols).unwrap();
        assert_eq!(k.len(), 1);
        let e = k[0].entries(2);
        assert_eq!(e[0].add(&p("0"), &f).mul(&p("x"), &f).add(&e[1].mul(&p("y"), &f), &f), p("0"));
        assert_eq!(e[0].degree(), Some(1));
    }

    #[test]
    fn kernel_over_node() {
        let f = Rationals;
        let p = |s: &str| parse_poly(s, &vars(), &f).unwrap();
        let target = Space::graded(vec![0]);
        let src = Space::graded(vec![1]);
        let k = kernel(&f, &[p("x*y")], &target, &[], &src, &[target.embed(&p("x"), 0)]).unwrap();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0].entry(0).monic(&f), p("y"));
    }

    #[test]
    fn identity_has_zero_kernel() {
        let f = Rationals;
        let target = Space::graded(vec![0]);
        let src = Space::graded(vec![0]);
        let k = kernel(&f, &[], &target, &[], &src, &[target.basis(0, &f)]).unwrap();
        assert!(k.is_empty());
    }
}
