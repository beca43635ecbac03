//! Exponent vectors and the two supported monomial orders.

use std::cmp::Ordering;
use std::fmt;

/// Hard upper bound on the number of ring variables (including the auxiliary
/// variable adjoined for radical membership).
pub const MAX_VARS: usize = 12;

/// A monomial `x^a` stored as a fixed-width exponent vector plus its degree.
/// Unused trailing slots are always zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    deg: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonoOrder {
    #[default]
    Grevlex,
    Lex,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn from_exps(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many exponents");
        let mut m = Monomial::default();
        for (i, &e) in exps.iter().enumerate() {
            m.exps[i] = u16::try_from(e).expect("exponent overflow");
            m.deg += e;
        }
        m
    }

    pub fn var(i: usize) -> Self {
        let mut m = Monomial::default();
        m.exps[i] = 1;
        m.deg = 1;
        m
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn exps(&self) -> &[u16; MAX_VARS] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.exps[i] = m.exps[i].checked_add(o.exps[i]).expect("exponent overflow");
        }
        m.deg += o.deg;
        m
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.deg <= o.deg && (0..MAX_VARS).all(|i| self.exps[i] <= o.exps[i])
    }

    /// `o / self`, assuming `self` divides `o`.
    pub fn quotient(&self, o: &Monomial) -> Monomial {
        debug_assert!(self.divides(o));
        let mut m = *o;
        for i in 0..MAX_VARS {
            m.exps[i] -= self.exps[i];
        }
        m.deg -= self.deg;
        m
    }

    pub fn lcm(&self, o: &Monomial) -> Monomial {
        let mut m = Monomial::default();
        for i in 0..MAX_VARS {
            m.exps[i] = self.exps[i].max(o.exps[i]);
            m.deg += m.exps[i] as u32;
        }
        m
    }

    pub fn gcd_is_one(&self, o: &Monomial) -> bool {
        (0..MAX_VARS).all(|i| self.exps[i] == 0 || o.exps[i] == 0)
    }

    pub fn cmp_in(&self, o: &Monomial, order: MonoOrder) -> Ordering {
        match order {
            MonoOrder::Grevlex => self.deg.cmp(&o.deg).then_with(|| {
                for i in (0..MAX_VARS).rev() {
                    match self.exps[i].cmp(&o.exps[i]) {
                        Ordering::Equal => continue,
                        ord => return ord.reverse(),
                    }
                }
                Ordering::Equal
            }),
            MonoOrder::Lex => self.exps.cmp(&o.exps),
        }
    }

    /// Render with the given variable names, e.g. `x^2*y`.
    pub fn format(&self, names: &[String]) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (i, name) in names.iter().enumerate() {
            match self.exps[i] {
                0 => {}
                1 => parts.push(name.clone()),
                e => parts.push(format!("{name}^{e}")),
            }
        }
        parts.join("*")
    }

    /// Every monomial of total degree `d` in `n` variables, ascending in grevlex.
    pub fn all_of_degree(n: usize, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if i + 1 == cur.len() {
                cur[i] = left;
                out.push(Monomial::from_exps(cur));
                return;
            }
            for e in 0..=left {
                cur[i] = e;
                rec(i + 1, left - e, cur, out);
            }
            cur[i] = 0;
        }
        if n == 0 {
            if d == 0 {
                out.push(Monomial::one());
            }
            return out;
        }
        rec(0, d, &mut cur, &mut out);
        out.sort_by(|a, b| a.cmp_in(b, MonoOrder::Grevlex));
        out
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.exps.iter().rposition(|&e| e != 0).map_or(0, |p| p + 1);
        write!(f, "{:?}", &self.exps[..last])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grevlex_ties_break_on_last_variable() {
        // x*z < y^2 in grevlex with x > y > z
        let xz = Monomial::from_exps(&[1, 0, 1]);
        let yy = Monomial::from_exps(&[0, 2, 0]);
        assert_eq!(xz.cmp_in(&yy, MonoOrder::Grevlex), Ordering::Less);
        assert_eq!(xz.cmp_in(&yy, MonoOrder::Lex), Ordering::Greater);
    }

    #[test]
    fn enumerate_degree_two() {
        let ms = Monomial::all_of_degree(3, 2);
        assert_eq!(ms.len(), 6);
        assert_eq!(ms.last().unwrap(), &Monomial::from_exps(&[2, 0, 0]));
    }

    #[test]
    fn lcm_and_quotient() {
        let a = Monomial::from_exps(&[2, 1]);
        let b = Monomial::from_exps(&[1, 3]);
        let l = a.lcm(&b);
        assert_eq!(l, Monomial::from_exps(&[2, 3]));
        assert_eq!(a.quotient(&l), Monomial::from_exps(&[0, 2]));
        assert!(!a.gcd_is_one(&b));
    }
}
