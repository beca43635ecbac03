//! Exact computations with graded modules over complete intersections:
//! Gröbner bases, resolutions and Tor, torsion and Serre conditions, tensor
//! powers with the shuffle torsion witness, and the theta/eta pairings.

pub mod error;
pub mod homology;
pub mod module;
pub mod pairing;
pub mod parallel;
pub mod poly;
pub mod random;
pub mod scenario;
pub mod ring;
pub mod serre;
pub mod tensor_tau;

pub use error::{Error, Result};
