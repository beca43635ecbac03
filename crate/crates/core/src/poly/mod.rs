//! Exact multivariate polynomial arithmetic and Gröbner bases.

pub mod field;
pub mod groebner;
pub mod ideal;
pub mod monomial;
pub mod parse;
pub mod polynomial;
pub mod vector;

pub use field::{Field, PrimeField, Rationals};
pub use groebner::{groebner, Gb, GbInput, GbOptions, GbOutcome, InputKind};
pub use ideal::{buchberger, krull_dim, radical_membership, GroebnerBasis};
pub use monomial::{MonoOrder, Monomial, MAX_VARS};
pub use parse::parse_poly;
pub use polynomial::Poly;
pub use vector::{Space, Term, Vector};
