//! Exact arithmetic kernels.
//!
//! Everything in the crate is generic over the [`Ring`] / [`Field`] traits
//! below. Elements carry whatever context they need (a prime modulus, an
//! extension descriptor) inline, so there is no global field state; the
//! `*_like` constructors build constants in the same field as `self`.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

mod dual;
mod elem;
mod gaussian;
mod gf;
mod matrix;
mod mpoly;
mod poly;
mod prime;
mod quad;
mod rational;

pub use dual::Dual;
pub use elem::FieldElem;
pub use gaussian::GaussianRational;
pub use gf::{Gf, GfContext, MAX_EXTENSION_DEGREE};
pub use matrix::{charpoly, integer_roots, IntMatrix};
pub use mpoly::{MPoly, Monomial};
pub use poly::{reduce_triple, ReducedTriple, UniPoly};
pub use prime::{find_imaginary_unit, is_prime, sqrt_mod, Fp, ImaginaryUnit, DEFAULT_PRIMES};
pub use quad::QuadExt;
pub use rational::{primitive_integer_triple, rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("mismatched field variants: {0} vs {1}")]
    Mismatch(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("characteristic 2 is not supported")]
    CharacteristicTwo,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("all three coordinates are zero")]
    ZeroTriple,
    #[error("no irreducible polynomial of degree {degree} found over F_{p}")]
    NoIrreducible { p: u64, degree: usize },
    #[error("cannot map {0} into the target field")]
    NotRepresentable(String),
}

/// Commutative ring with identity.
pub trait Ring:
    Sized
    + Clone
    + PartialEq
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64_like(&self, n: i64) -> Self;

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }

    fn square(&self) -> Self {
        self.clone() * self.clone()
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }
}

pub trait Field: Ring {
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;

    /// Characteristic of the field (0 for ℚ and ℚ(i)).
    fn characteristic(&self) -> u64;

    fn div(&self, rhs: &Self) -> Result<Self, FieldError> {
        rhs.inv()
            .map(|r| self.clone() * r)
            .ok_or(FieldError::DivisionByZero)
    }
}

/// Rescaling of homogeneous triples to a canonical representative.
///
/// The default leaves the triple alone, which is right for coordinate rings
/// where no canonical scale exists (dual numbers, multivariate polynomials).
pub trait Projective: Ring {
    fn normalize_triple(v: [Self; 3]) -> [Self; 3] {
        v
    }
}

/// Divides a triple over a field by its first nonzero entry.
pub(crate) fn scale_first_nonzero_to_one<F: Field>(v: [F; 3]) -> [F; 3] {
    match v.iter().find(|c| !c.is_zero()).and_then(|c| c.inv()) {
        Some(s) => v.map(|c| c * s.clone()),
        None => v,
    }
}
