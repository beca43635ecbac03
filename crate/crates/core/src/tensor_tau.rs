//! Tensor powers, the shuffle element `τ(m)`, Koszul syzygy modules, the
//! presentation ideal `I(M)` and torsion scans of tensor powers.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::module::ops::TENSOR_CAP;
use crate::module::{FpModule, Length, Minimalized};
use crate::poly::{Field, Poly, Space, Vector};
use crate::ring::{koszul_h1_witness, Ring};
use crate::serre::torsion;

/// `M = coker(R → R^d, 1 ↦ (r_1..r_d))` with generators `m_i = e_i`.
#[derive(Clone, Debug)]
pub struct KoszulModule<F: Field> {
    pub module: FpModule<F>,
    pub seq: Vec<Poly<F>>,
}

impl<F: Field> KoszulModule<F> {
    /// The marked generators `m_1..m_d`.
    pub fn marked(&self) -> Vec<Vector<F>> {
        (0..self.seq.len()).map(|j| self.module.gen(j)).collect()
    }
}

/// Build the Koszul syzygy module of a regular sequence. Generator `i` sits
/// in degree `D − deg r_i`, where `D` is the largest degree in the sequence,
/// so that the single relation is homogeneous of degree `D`.
pub fn koszul_module<F: Field>(ring: &Arc<Ring<F>>, seq: &[Poly<F>]) -> Result<KoszulModule<F>> {
    let f = ring.field();
    let seq: Vec<Poly<F>> = seq.iter().map(|r| ring.reduce(r)).collect();
    if seq.is_empty() {
        return Err(Error::MissingInput("empty sequence".into()));
    }
    let mut degs = Vec::with_capacity(seq.len());
    for r in &seq {
        match r.homogeneous_degree() {
            Some(0) => return Err(Error::Invalid("the sequence generates the unit ideal".into())),
            Some(d) => degs.push(d as i32),
            None if r.is_zero() => return Err(Error::NotRegularSequence { witness: "zero element".into() }),
            None => return Err(Error::NonHomogeneous(ring.fmt(r))),
        }
    }
    if let Some(w) = koszul_h1_witness(f, &seq, ring.ideal_gb())? {
        return Err(Error::NotRegularSequence { witness: ring.fmt_vec(&w) });
    }
    let top = *degs.iter().max().unwrap();
    let gdegs: Vec<i32> = degs.iter().map(|d| top - d).collect();
    let sp = Space::graded(gdegs.clone());
    let rel = sp.from_entries(&seq, f);
    Ok(KoszulModule { module: FpModule::new(ring.clone(), gdegs, vec![rel])?, seq })
}

/// `⊗^n M` on the raw tuple basis of the minimal generators of `M`
/// (lexicographic index order), with its minimalization.
#[derive(Clone, Debug)]
pub struct TensorPower<F: Field> {
    pub base: Minimalized<F>,
    pub raw: FpModule<F>,
    pub minimal: Minimalized<F>,
    pub n: usize,
}

impl<F: Field> TensorPower<F> {
    pub fn module(&self) -> &FpModule<F> {
        &self.minimal.module
    }
}

pub fn tensor_power<F: Field>(m: &FpModule<F>, n: usize) -> Result<TensorPower<F>> {
    if n == 0 {
        return Err(Error::Invalid("tensor power exponent must be at least 1".into()));
    }
    let base = m.minimalize();
    let nu = base.module.num_gens();
    let size = (nu as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if size > TENSOR_CAP as u128 {
        return Err(Error::ResourceLimit(format!("⊗^{n} of a {nu}-generator module has {size} generators; cap is {TENSOR_CAP}")));
    }
    let mut raw = base.module.clone();
    for _ in 1..n {
        raw = raw.tensor_raw(&base.module)?;
    }
    let minimal = raw.minimalize();
    Ok(TensorPower { base, raw, minimal, n })
}

/// One signed term `sign · m_{σ(1)} ⊗ … ⊗ m_{σ(d)}` of `τ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShuffleTerm {
    pub sign: i8,
    pub perm: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct TauWitness<F: Field> {
    pub power: TensorPower<F>,
    /// `τ` on the raw tuple basis.
    pub raw_element: Vector<F>,
    /// `τ` on the minimal generators of the power.
    pub element: Vector<F>,
    pub terms: Vec<ShuffleTerm>,
    /// Whether each `r_j · τ` reduces to zero.
    pub killed: Vec<bool>,
    pub annihilator: Vec<Poly<F>>,
    /// `τ ∉ m·(⊗^d M)`, read off from its image in the fibre.
    pub outside_max_power: bool,
    /// Whether the `m_i` are independent in `M/mM`.
    pub minimal_part: bool,
}

/// All permutations of `0..d` in lexicographic order with their signs.
fn permutations(d: usize) -> Vec<ShuffleTerm> {
    fn rec(prefix: &mut Vec<usize>, rest: &mut Vec<usize>, out: &mut Vec<ShuffleTerm>) {
        if rest.is_empty() {
            let mut inv = 0;
            for i in 0..prefix.len() {
                for j in i + 1..prefix.len() {
                    if prefix[i] > prefix[j] {
                        inv += 1;
                    }
                }
            }
            out.push(ShuffleTerm { sign: if inv % 2 == 0 { 1 } else { -1 }, perm: prefix.clone() });
            return;
        }
        for k in 0..rest.len() {
            let x = rest.remove(k);
            prefix.push(x);
            rec(prefix, rest, out);
            prefix.pop();
            rest.insert(k, x);
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut (0..d).collect(), &mut out);
    out
}

/// `v_1 ⊗ … ⊗ v_d` on the raw tuple basis of the `d`-th power of a module
/// with `nu` generators.
fn tensor_elements<F: Field>(vs: &[&Vector<F>], nu: usize, space: &Space, f: &F) -> Vector<F> {
    let mut acc: Vec<(usize, Poly<F>)> = vec![(0, Poly::one(f))];
    for v in vs {
        let entries = v.entries(nu);
        let mut next = Vec::new();
        for (idx, p) in &acc {
            for (j, e) in entries.iter().enumerate() {
                if !e.is_zero() {
                    next.push((idx * nu + j, p.mul(e, f)));
                }
            }
        }
        acc = next;
    }
    let mut out = Vector::zero();
    for (idx, p) in acc {
        out = out.add(&space.embed(&p, idx), f);
    }
    out
}

/// Assemble and certify `τ(m)` for a relation `Σ r_i m_i = 0` in `M`.
pub fn tau<F: Field>(m: &FpModule<F>, r: &[Poly<F>], elems: &[Vector<F>]) -> Result<TauWitness<F>> {
    if r.len() != elems.len() {
        return Err(Error::LengthMismatch(format!("{} ring elements for {} module elements", r.len(), elems.len())));
    }
    let d = r.len();
    if d == 0 {
        return Err(Error::MissingInput("empty relation".into()));
    }
    let f = m.field().clone();
    let mut sum = Vector::zero();
    for (ri, mi) in r.iter().zip(elems) {
        if mi.max_comp().is_some_and(|c| c >= m.num_gens()) {
            return Err(Error::LengthMismatch("element has more coordinates than generators".into()));
        }
        sum = sum.add(&mi.mul_poly(ri, &f), &f);
    }
    if !m.elem_is_zero(&sum) {
        return Err(Error::RelationDoesNotHold(m.ring().fmt_vec(&m.reduce(&sum))));
    }
    let power = tensor_power(m, d)?;
    let nu = power.base.module.num_gens();
    let carried: Vec<Vector<F>> = elems.iter().map(|v| power.base.carry(v)).collect();
    let raw_space = power.raw.space();
    let terms = permutations(d);
    let mut raw_element = Vector::zero();
    for t in &terms {
        let vs: Vec<&Vector<F>> = t.perm.iter().map(|&i| &carried[i]).collect();
        let prod = tensor_elements(&vs, nu, &raw_space, &f);
        raw_element = if t.sign > 0 { raw_element.add(&prod, &f) } else { raw_element.sub(&prod, &f) };
    }
    let pm = &power.minimal.module;
    let element = pm.reduce(&power.minimal.carry(&raw_element));
    let killed = r.iter().map(|rj| pm.elem_is_zero(&element.mul_poly(rj, &f))).collect();
    let annihilator = pm.ann_of_element(&element)?;
    let outside_max_power = element.terms().iter().any(|(t, _)| t.mono.is_one());
    let minimal_part = independent_in_fibre(&power.base, &carried, &f);
    Ok(TauWitness { power, raw_element, element, terms, killed, annihilator, outside_max_power, minimal_part })
}

/// Are the images of `vs` linearly independent in `M/mM`?
fn independent_in_fibre<F: Field>(base: &Minimalized<F>, vs: &[Vector<F>], f: &F) -> bool {
    let nu = base.module.num_gens();
    let mut rows: Vec<Vec<F::Elem>> = vs
        .iter()
        .map(|v| {
            let mut row = vec![f.zero(); nu];
            for (t, c) in v.terms() {
                if t.mono.is_one() {
                    row[t.comp as usize] = c.clone();
                }
            }
            row
        })
        .collect();
    rank_of(&mut rows, f) == vs.len()
}

fn rank_of<F: Field>(rows: &mut [Vec<F::Elem>], f: &F) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&i| !f.is_zero(&rows[i][col])) else { continue };
        rows.swap(rank, p);
        let inv = f.inv(&rows[rank][col]);
        for i in 0..rows.len() {
            if i != rank && !f.is_zero(&rows[i][col]) {
                let s = f.mul(&rows[i][col], &inv);
                for c in 0..ncols {
                    let t = f.mul(&s, &rows[rank][c]);
                    rows[i][c] = f.sub(&rows[i][c], &t);
                }
            }
        }
        rank += 1;
    }
    rank
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TorsionScan {
    /// Least `n` with `tp(⊗^n M) ≠ 0`, if found within the scan.
    pub least_torsion_power: Option<usize>,
    /// `len tp(⊗^n M)` for each scanned `n`.
    pub torsion_lengths: Vec<Length>,
    /// Rank when the multiplicity surrogate certifies one.
    pub rank: Option<usize>,
    pub notes: Vec<String>,
}

/// Scan `⊗^n M` for torsion, `n = 1..=n_max`, stopping at the first power
/// with torsion.
pub fn torsion_scan<F: Field>(m: &FpModule<F>, n_max: usize) -> Result<TorsionScan> {
    let mut lengths = Vec::new();
    let mut least = None;
    for n in 1..=n_max {
        let p = tensor_power(m, n)?;
        let tp = torsion(p.module())?.tp.module;
        let len = tp.length();
        lengths.push(len);
        if !tp.is_zero() {
            least = Some(n);
            break;
        }
    }
    let rank = rank_surrogate(m)?;
    let mut notes = vec!["scan runs every power; the rank bound is reported, not used to stop early".to_string()];
    if rank.is_none() {
        notes.push("rank not certified (annihilator nonzero or multiplicity not a multiple of e(R))".into());
    }
    Ok(TorsionScan { least_torsion_power: least, torsion_lengths: lengths, rank, notes })
}

/// `Γ_m(M)`: the elements killed by a power of the maximal ideal. It lies in
/// `tp(M)` when the ring has positive depth; when `tp(M)` has finite length
/// the two agree, and otherwise `(0 :_M (x_1^k..x_n^k))` is computed for
/// `k = 1, 2, 4, …` up to `bound` doublings until it stabilizes.
pub fn gamma_m<F: Field>(m: &FpModule<F>, bound: usize) -> Result<FpModule<F>> {
    let ring = m.ring();
    if ring.krull_dim() == 0 {
        return Ok(m.minimalize().module);
    }
    let t = torsion(m)?;
    if t.tp.module.length().is_finite() {
        return Ok(t.tp.module);
    }
    let tp = t.tp.module;
    let mut prev: Option<u64> = None;
    let mut k = 1u32;
    let mut last = FpModule::zero(ring.clone());
    for _ in 0..bound {
        let sub = colon_by_powers(&tp, k)?;
        let len = sub.length().finite();
        if len.is_some() && len == prev {
            return Ok(sub);
        }
        prev = len;
        last = sub;
        k *= 2;
    }
    Ok(last)
}

/// `(0 :_M (x_1^k, …, x_n^k))` as a submodule of `M`.
fn colon_by_powers<F: Field>(m: &FpModule<F>, k: u32) -> Result<FpModule<F>> {
    let ring = m.ring();
    let f = ring.field();
    let n = ring.nvars();
    let copy = m.twist(k as i32);
    let copies: Vec<&FpModule<F>> = (0..n).map(|_| &copy).collect();
    let sum = FpModule::direct_sum(&copies)?;
    let g = m.num_gens();
    let sp = sum.space();
    let images: Vec<Vector<F>> = (0..g)
        .map(|j| {
            let mut acc = Vector::zero();
            for i in 0..n {
                let xp = Poly::var(i, f).pow(k, f);
                acc = acc.add(&sp.embed(&xp, i * g + j), f);
            }
            acc
        })
        .collect();
    let ker = m.map_kernel(&sum, &images)?;
    Ok(m.submodule(&ker)?.module)
}

/// Multiplicity `e(M)` read from the Hilbert function, with the degree of
/// the check recorded; `None` if the top difference of the Hilbert function
/// has not settled in the sampled window.
pub fn multiplicity<F: Field>(m: &FpModule<F>) -> Option<(usize, u64)> {
    let dim = m.krull_dim()?;
    if dim == 0 {
        return m.length().finite().map(|l| (0, l));
    }
    let lo = m.degs().iter().copied().max().unwrap_or(0) + 10;
    let h = m.hilbert_range(lo, lo + dim as i32 + 1);
    let mut diff: Vec<i64> = h.iter().map(|&v| v as i64).collect();
    for _ in 0..dim - 1 {
        diff = diff.windows(2).map(|w| w[1] - w[0]).collect();
    }
    if diff.windows(2).all(|w| w[0] == w[1]) && diff[0] > 0 {
        Some((dim, diff[0] as u64))
    } else {
        None
    }
}

/// Rank surrogate: `Ann M = 0` and `e(M) = r·e(R)` with both multiplicities
/// computed in the top dimension.
pub fn rank_surrogate<F: Field>(m: &FpModule<F>) -> Result<Option<usize>> {
    let ring = m.ring();
    if !m.annihilator()?.iter().all(|g| ring.reduce(g).is_zero()) {
        return Ok(None);
    }
    let r = FpModule::free(ring.clone(), vec![0]);
    let (Some((dm, em)), Some((dr, er))) = (multiplicity(m), multiplicity(&r)) else { return Ok(None) };
    if dm != dr || em % er != 0 {
        return Ok(None);
    }
    Ok(Some((em / er) as usize))
}

impl<F: Field> FpModule<F> {
    /// The generators `e_0..e_{n-1}` as elements.
    pub fn marked_gens(&self) -> Vec<Vector<F>> {
        (0..self.num_gens()).map(|j| self.gen(j)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Rationals;

    #[test]
    fn koszul_tau_in_two_variables() {
        let q = Ring::parse(Rationals, &["x", "y"], &[]).unwrap();
        let p = |s: &str| q.parse_poly(s).unwrap();
        let k = koszul_module(&q, &[p("x"), p("y")]).unwrap();
        assert_eq!(k.module.num_gens(), 2);
        let w = tau(&k.module, &k.seq, &k.marked()).unwrap();
        assert_eq!(w.terms.len(), 2);
        assert!(w.killed.iter().all(|&b| b));
        assert!(q.ideals_equal(&w.annihilator, &[p("x"), p("y")]));
        assert!(w.outside_max_power && w.minimal_part);
        let scan = torsion_scan(&k.module, 3).unwrap();
        assert_eq!(scan.least_torsion_power, Some(2));
        assert_eq!(scan.rank, Some(1));
        let g = gamma_m(w.power.module(), 5).unwrap();
        assert_eq!(g.length(), Length::Finite(1));
    }

    #[test]
    fn node_powers_are_torsion_free() {
        let r = Ring::parse(Rationals, &["x", "y"], &["x*y"]).unwrap();
        let p = |s: &str| r.parse_poly(s).unwrap();
        let m = FpModule::cyclic(r.clone(), &[p("x")]).unwrap();
        let scan = torsion_scan(&m, 4).unwrap();
        assert_eq!(scan.least_torsion_power, None);
        assert_eq!(scan.rank, None);
        assert_eq!(tensor_power(&m, 3).unwrap().module().hilbert(6), m.hilbert(6));
    }

    #[test]
    fn rejects_bad_relations() {
        let q = Ring::parse(Rationals, &["x", "y"], &[]).unwrap();
        let p = |s: &str| q.parse_poly(s).unwrap();
        assert!(matches!(koszul_module(&q, &[p("x"), p("x")]), Err(Error::NotRegularSequence { .. })));
        let m = FpModule::free(q.clone(), vec![0, 0]);
        let e = m.marked_gens();
        assert!(matches!(tau(&m, &[p("x"), p("y")], &e), Err(Error::RelationDoesNotHold(_))));
        assert!(matches!(tau(&m, &[p("x")], &e), Err(Error::LengthMismatch(_))));
        assert_eq!(permutations(3).iter().filter(|t| t.sign < 0).count(), 3);
    }
}
