//! Graded complete intersections `Q/(f_1..f_c)` over a polynomial ring `Q`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::module::kernel::{kernel, submodule_gb};
use crate::poly::{
    buchberger, ideal::dim_of_monomial_ideal, parse_poly, Field, GroebnerBasis, MonoOrder, Poly,
    Space, Vector, MAX_VARS,
};

/// A standard-graded ring `k[x_1..x_n]/(f_1..f_c)` whose relations form a
/// verified homogeneous regular sequence. With no relations it is the
/// polynomial ring itself.
#[derive(Clone, Debug)]
pub struct Ring<F: Field> {
    field: F,
    vars: Vec<String>,
    relations: Vec<Poly<F>>,
    ideal: GroebnerBasis<F>,
    krull_dim: usize,
    codim: usize,
}

impl<F: Field> PartialEq for Ring<F> {
    fn eq(&self, o: &Self) -> bool {
        self.field == o.field && self.vars == o.vars && self.relations == o.relations
    }
}

impl<F: Field> Ring<F> {
    pub fn polynomial(field: F, vars: Vec<String>) -> Result<Arc<Self>> {
        Self::complete_intersection(field, vars, Vec::new())
    }

    /// Build and verify a complete intersection. The regular-sequence check
    /// computes the first syzygies of `[f_1..f_c]` and requires each to lie
    /// in the Koszul submodule.
    pub fn complete_intersection(field: F, vars: Vec<String>, relations: Vec<Poly<F>>) -> Result<Arc<Self>> {
        if vars.len() > MAX_VARS - 1 {
            return Err(Error::TooManyVariables(vars.len(), MAX_VARS - 1));
        }
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::Invalid(format!("variable `{v}` declared twice")));
            }
        }
        for r in &relations {
            if r.is_zero() {
                return Err(Error::NotRegularSequence { witness: "zero relation".into() });
            }
            match r.homogeneous_degree() {
                Some(d) if d > 0 => {}
                Some(_) => {
                    return Err(Error::NotRegularSequence { witness: format!("unit relation {}", r.format(&vars, &field)) })
                }
                None => return Err(Error::NonHomogeneous(r.format(&vars, &field))),
            }
        }
        if let Some(w) = koszul_h1_witness(&field, &relations, &[])? {
            return Err(Error::NotRegularSequence { witness: fmt_vec(&w, &vars, &field) });
        }
        let ideal = buchberger(&relations, MonoOrder::Grevlex, &field);
        let krull_dim = dim_of_monomial_ideal(&ideal.lead_monomials(), vars.len()).unwrap_or(0);
        let linear = relations.iter().filter(|r| r.homogeneous_degree() == Some(1)).count();
        let codim = relations.len() - linear;
        Ok(Arc::new(Ring { field, vars, relations, ideal, krull_dim, codim }))
    }

    /// Parse variable and relation text.
    pub fn parse(field: F, vars: &[&str], relations: &[&str]) -> Result<Arc<Self>> {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let rels = relations
            .iter()
            .map(|s| parse_poly(s, &vars, &field))
            .collect::<Result<Vec<_>>>()?;
        Self::complete_intersection(field, vars, rels)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn relations(&self) -> &[Poly<F>] {
        &self.relations
    }

    /// Reduced Gröbner basis of the defining ideal.
    pub fn ideal(&self) -> &GroebnerBasis<F> {
        &self.ideal
    }

    pub fn ideal_gb(&self) -> &[Poly<F>] {
        self.ideal.generators()
    }

    pub fn krull_dim(&self) -> usize {
        self.krull_dim
    }

    /// Embedding codimension: relations of degree at least two.
    pub fn codim(&self) -> usize {
        self.codim
    }

    pub fn num_relations(&self) -> usize {
        self.relations.len()
    }

    pub fn is_polynomial_ring(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn is_hypersurface(&self) -> bool {
        self.codim == 1
    }

    pub fn parse_poly(&self, s: &str) -> Result<Poly<F>> {
        parse_poly(s, &self.vars, &self.field)
    }

    pub fn fmt(&self, p: &Poly<F>) -> String {
        p.format(&self.vars, &self.field)
    }

    pub fn fmt_vec(&self, v: &Vector<F>) -> String {
        fmt_vec(v, &self.vars, &self.field)
    }

    /// Canonical representative of `p` modulo the defining ideal.
    pub fn reduce(&self, p: &Poly<F>) -> Poly<F> {
        self.ideal.normal_form(p)
    }

    /// The ring `Q/(f_1..f_j)`.
    pub fn stage(&self, j: usize) -> Arc<Self> {
        assert!(j <= self.relations.len());
        let relations = self.relations[..j].to_vec();
        let ideal = buchberger(&relations, MonoOrder::Grevlex, &self.field);
        let krull_dim = dim_of_monomial_ideal(&ideal.lead_monomials(), self.nvars()).unwrap_or(0);
        let linear = relations.iter().filter(|r| r.homogeneous_degree() == Some(1)).count();
        Arc::new(Ring {
            field: self.field.clone(),
            vars: self.vars.clone(),
            codim: relations.len() - linear,
            relations,
            ideal,
            krull_dim,
        })
    }

    /// The ambient polynomial ring.
    pub fn base(&self) -> Arc<Self> {
        self.stage(0)
    }

    pub fn tower(&self) -> RingTower<F> {
        RingTower { stages: (0..=self.relations.len()).map(|j| self.stage(j)).collect() }
    }

    pub fn check_same(&self, o: &Self) -> Result<()> {
        if self == o {
            Ok(())
        } else {
            Err(Error::MixedRings(format!(
                "{:?}/({}) vs {:?}/({})",
                self.vars,
                self.relations.iter().map(|r| self.fmt(r)).collect::<Vec<_>>().join(", "),
                o.vars,
                o.relations.iter().map(|r| o.fmt(r)).collect::<Vec<_>>().join(", ")
            )))
        }
    }

    pub fn describe(&self) -> String {
        let k = match self.field.characteristic() {
            0 => "QQ".to_string(),
            p => format!("F_{p}"),
        };
        if self.relations.is_empty() {
            format!("{k}[{}]", self.vars.join(","))
        } else {
            format!(
                "{k}[{}]/({})",
                self.vars.join(","),
                self.relations.iter().map(|r| self.fmt(r)).collect::<Vec<_>>().join(", ")
            )
        }
    }
}

/// Stages `Q/(f_1..f_j)` for `j = 0..c`; each is a hypersurface in the
/// previous one.
#[derive(Clone, Debug)]
pub struct RingTower<F: Field> {
    pub stages: Vec<Arc<Ring<F>>>,
}

impl<F: Field> RingTower<F> {
    pub fn top(&self) -> &Arc<Ring<F>> {
        self.stages.last().expect("non-empty tower")
    }

    /// The stage below the top, with the relation cut out by the top.
    pub fn hypersurface_step(&self) -> Result<(Arc<Ring<F>>, Poly<F>)> {
        let c = self.stages.len() - 1;
        if c == 0 {
            return Err(Error::TowerMismatch("polynomial ring has no lower stage".into()));
        }
        Ok((self.stages[c - 1].clone(), self.top().relations()[c - 1].clone()))
    }
}

pub(crate) fn fmt_vec<F: Field>(v: &Vector<F>, vars: &[String], f: &F) -> String {
    v.format(vars, f)
}

/// First Koszul homology test for a homogeneous sequence `r` over
/// `k[x]/(ambient)`: returns a syzygy of `r` outside the Koszul relations if
/// one exists. Units are rejected earlier by callers.
pub(crate) fn koszul_h1_witness<F: Field>(f: &F, r: &[Poly<F>], ambient_gb: &[Poly<F>]) -> Result<Option<Vector<F>>> {
    let c = r.len();
    if c == 0 {
        return Ok(None);
    }
    let degs: Vec<i32> = r
        .iter()
        .map(|p| p.homogeneous_degree().map(|d| d as i32).ok_or_else(|| Error::NonHomogeneous("sequence element".into())))
        .collect::<Result<_>>()?;
    let target = Space::graded(vec![0]);
    let src = Space::graded(degs.clone());
    let cols: Vec<Vector<F>> = r.iter().map(|p| target.embed(p, 0)).collect();
    let syz = kernel(f, ambient_gb, &target, &[], &src, &cols)?;
    let mut koszul = Vec::new();
    for i in 0..c {
        for j in (i + 1)..c {
            let mut entries = vec![Poly::zero(); c];
            entries[i] = r[j].clone();
            entries[j] = r[i].neg(f);
            koszul.push(src.from_entries(&entries, f));
        }
    }
    let gb = submodule_gb(f, ambient_gb, &src, &koszul);
    Ok(syz.into_iter().find(|s| !gb.contains(s)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Rationals;

    #[test]
    fn ci_construction() {
        let r = Ring::parse(Rationals, &["x", "y"], &["x", "y"]).unwrap();
        assert_eq!((r.krull_dim(), r.codim()), (0, 0));
        assert_eq!(r.num_relations(), 2);
        let node = Ring::parse(Rationals, &["x", "y"], &["x*y"]).unwrap();
        assert_eq!((node.krull_dim(), node.codim()), (1, 1));
        assert!(matches!(
            Ring::parse(Rationals, &["x", "y"], &["x", "x"]),
            Err(Error::NotRegularSequence { .. })
        ));
        assert!(matches!(
            Ring::parse(Rationals, &["x", "y"], &["x^2 + y"]),
            Err(Error::NonHomogeneous(_))
        ));
        let perm = Ring::parse(Rationals, &["x", "y", "z"], &["y^2", "x^2"]).unwrap();
        assert_eq!(perm.krull_dim(), 1);
    }
}
