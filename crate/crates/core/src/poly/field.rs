//! Coefficient fields: prime fields `F_p` and the rationals.
//!
//! Elements carry no context; every operation goes through the field value,
//! which for `F_p` holds the modulus. All arithmetic is exact.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A field of coefficients.
pub trait Field: Clone + Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_one(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse. Panics on zero; callers never invert zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn from_bigint(&self, v: &BigInt) -> Self::Elem;
    /// `num / den`, or `None` when `den` vanishes in the field.
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<Self::Elem>;
    /// 0 for the rationals.
    fn characteristic(&self) -> u64;
    /// Canonical text: symmetric residues for `F_p`, reduced fractions for `Q`.
    fn format(&self, a: &Self::Elem) -> String;
    /// True if the canonical representative is negative (used by the printer).
    fn is_negative(&self, a: &Self::Elem) -> bool;
    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }
}

/// `F_p` for a prime `p < 2^31`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !(2..1 << 31).contains(&p) || !is_prime(&BigInt::from(p)) {
            return Err(Error::InvalidField(format!(
                "characteristic {p} is not a prime below 2^31"
            )));
        }
        Ok(PrimeField { p: p as u32 })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    fn pow(&self, mut base: u64, mut e: u64) -> u64 {
        let p = self.p as u64;
        let mut acc = 1u64;
        base %= p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc
    }
}

/// Deterministic trial division on arbitrary-precision integers.
pub fn is_prime(n: &BigInt) -> bool {
    let two = BigInt::from(2);
    if *n < two {
        return false;
    }
    if n.is_even() {
        return *n == two;
    }
    let mut d = BigInt::from(3);
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            return false;
        }
        d += 2;
    }
    true
}

impl Field for PrimeField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn is_one(&self, a: &u32) -> bool {
        *a == 1
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + *b as u64;
        (s % self.p as u64) as u32
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + self.p as u64 - *b as u64;
        (s % self.p as u64) as u32
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - *a
        }
    }
    fn inv(&self, a: &u32) -> u32 {
        assert!(*a != 0, "inverse of zero in F_{}", self.p);
        self.pow(*a as u64, self.p as u64 - 2) as u32
    }
    fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }
    fn from_bigint(&self, v: &BigInt) -> u32 {
        let p = BigInt::from(self.p);
        v.mod_floor(&p).to_u32().expect("residue fits")
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<u32> {
        let d = self.from_bigint(den);
        if d == 0 {
            return None;
        }
        Some(self.mul(&self.from_bigint(num), &self.inv(&d)))
    }
    fn characteristic(&self) -> u64 {
        self.p as u64
    }
    fn format(&self, a: &u32) -> String {
        if *a > self.p / 2 {
            format!("-{}", self.p - *a)
        } else {
            a.to_string()
        }
    }
    fn is_negative(&self, a: &u32) -> bool {
        *a > self.p / 2
    }
}

/// The rational numbers with arbitrary-precision numerators and denominators.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero in Q");
        a.recip()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_bigint(&self, v: &BigInt) -> BigRational {
        BigRational::from_integer(v.clone())
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<BigRational> {
        if den.is_zero() {
            None
        } else {
            Some(BigRational::new(num.clone(), den.clone()))
        }
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn format(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn is_negative(&self, a: &BigRational) -> bool {
        a.is_negative()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_rejects_composites() {
        assert!(PrimeField::new(32003).is_ok());
        assert!(PrimeField::new(32001).is_err());
        assert!(PrimeField::new(1).is_err());
    }

    #[test]
    fn prime_field_inverse() {
        let f = PrimeField::new(32003).unwrap();
        for a in [1u32, 2, 17, 32002] {
            assert_eq!(f.mul(&a, &f.inv(&a)), 1);
        }
        assert_eq!(f.format(&32002), "-1");
        assert_eq!(f.from_ratio(&BigInt::from(1), &BigInt::from(2)), Some(16002));
    }

    #[test]
    fn rationals_format() {
        let q = Rationals;
        let h = q.from_ratio(&BigInt::from(-2), &BigInt::from(4)).unwrap();
        assert_eq!(q.format(&h), "-1/2");
        assert!(q.is_negative(&h));
    }
}
