//! Hilbert functions, lengths and Krull dimension from standard monomials.

use serde::{Deserialize, Serialize};

use super::FpModule;
use crate::poly::{ideal::dim_of_monomial_ideal, Field, Monomial};

/// Length of a module: a finite k-dimension or infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Length {
    Finite(u64),
    Infinite(InfiniteTag),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum InfiniteTag {
    #[serde(rename = "INFINITE")]
    Infinite,
}

impl Length {
    pub const INFINITE: Length = Length::Infinite(InfiniteTag::Infinite);

    pub fn is_finite(&self) -> bool {
        matches!(self, Length::Finite(_))
    }

    pub fn finite(&self) -> Option<u64> {
        match self {
            Length::Finite(v) => Some(*v),
            Length::Infinite(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        *self == Length::Finite(0)
    }
}

impl std::fmt::Display for Length {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Length::Finite(v) => write!(f, "{v}"),
            Length::Infinite(_) => write!(f, "INFINITE"),
        }
    }
}

impl<F: Field> FpModule<F> {
    /// `dim_k M_d` for `d` from the least generator degree through `d_max`.
    pub fn hilbert(&self, d_max: i32) -> Vec<u64> {
        match self.min_degree() {
            Some(lo) if lo <= d_max => self.hilbert_range(lo, d_max),
            _ => Vec::new(),
        }
    }

    /// `dim_k M_d` for `lo <= d <= hi`.
    pub fn hilbert_range(&self, lo: i32, hi: i32) -> Vec<u64> {
        let gb = self.gb();
        let n = self.ring().nvars();
        let leads: Vec<Vec<Monomial>> =
            (0..self.num_gens()).map(|j| gb.leads_in(j).iter().map(|t| t.mono).collect()).collect();
        let mut cache: Vec<Option<Vec<Monomial>>> = Vec::new();
        let mut out = Vec::with_capacity((hi - lo + 1).max(0) as usize);
        for d in lo..=hi {
            let mut count = 0u64;
            for (j, &dj) in self.degs().iter().enumerate() {
                let e = d - dj;
                if e < 0 {
                    continue;
                }
                let e = e as usize;
                if cache.len() <= e {
                    cache.resize(e + 1, None);
                }
                let monos = cache[e].get_or_insert_with(|| Monomial::all_of_degree(n, e as u32));
                count += monos.iter().filter(|m| !leads[j].iter().any(|l| l.divides(m))).count() as u64;
            }
            out.push(count);
        }
        out
    }

    /// Krull dimension of the module; `None` for the zero module.
    pub fn krull_dim(&self) -> Option<usize> {
        let gb = self.gb();
        let n = self.ring().nvars();
        (0..self.num_gens())
            .filter_map(|j| {
                let leads: Vec<Monomial> = gb.leads_in(j).iter().map(|t| t.mono).collect();
                dim_of_monomial_ideal(&leads, n)
            })
            .max()
    }

    /// Total k-dimension, or infinite when the module has positive dimension.
    pub fn length(&self) -> Length {
        let gb = self.gb();
        let n = self.ring().nvars();
        let mut total = 0u64;
        for j in 0..self.num_gens() {
            let leads: Vec<Monomial> = gb.leads_in(j).iter().map(|t| t.mono).collect();
            if leads.iter().any(|m| m.is_one()) {
                continue;
            }
            let mut bounds = Vec::with_capacity(n);
            for i in 0..n {
                let pure = leads
                    .iter()
                    .filter(|m| m.degree() == m.exp(i))
                    .map(|m| m.exp(i))
                    .min();
                match pure {
                    Some(a) => bounds.push(a),
                    None => return Length::INFINITE,
                }
            }
            total += count_box(&bounds, &leads);
        }
        Length::Finite(total)
    }
}

/// Monomials with `exp_i < bounds[i]` not divisible by any of `leads`.
fn count_box(bounds: &[u32], leads: &[Monomial]) -> u64 {
    let n = bounds.len();
    let mut exps = vec![0u32; n];
    let mut count = 0u64;
    loop {
        let m = Monomial::from_exps(&exps);
        if !leads.iter().any(|l| l.divides(&m)) {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == n {
                return count;
            }
            exps[i] += 1;
            if exps[i] < bounds[i] {
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Rationals;
    use crate::ring::Ring;

    #[test]
    fn hilbert_examples() {
        let r = Ring::parse(Rationals, &["x", "y"], &[]).unwrap();
        let p = |s: &str| r.parse_poly(s).unwrap();
        assert_eq!(FpModule::free(r.clone(), vec![0]).hilbert(2), vec![1, 2, 3]);
        let k = FpModule::cyclic(r.clone(), &[p("x"), p("y")]).unwrap();
        assert_eq!(k.hilbert(2), vec![1, 0, 0]);
        assert_eq!(k.length(), Length::Finite(1));
        let m = FpModule::cyclic(r.clone(), &[p("x^2"), p("y")]).unwrap();
        assert_eq!(m.hilbert(3), vec![1, 1, 0, 0]);
        let sq = FpModule::cyclic(r.clone(), &[p("x^2"), p("x*y"), p("y^2")]).unwrap();
        assert_eq!(sq.length(), Length::Finite(3));
        let line = FpModule::cyclic(r.clone(), &[p("x")]).unwrap();
        assert_eq!(line.length(), Length::INFINITE);
        assert_eq!(line.krull_dim(), Some(1));
        assert_eq!(serde_json::to_string(&Length::INFINITE).unwrap(), "\"INFINITE\"");
    }
}
