//! Coefficient fields.
//!
//! Every Grassmann computation is carried out over a [`Field`]: a context
//! object that owns whatever the elements need (modulus, vertex coordinates,
//! variable names) and performs the arithmetic. Elements themselves are plain
//! canonical values, so `==` on elements is exact field equality.
//!
//! Three fields are provided:
//! * [`PrimeField`]: residues modulo a word-sized prime, with concrete
//!   vertex coordinates. Fast randomized identity testing.
//! * [`RationalField`]: exact rationals with concrete vertex coordinates.
//! * [`RationalFunctionField`]: the field of rational functions over the
//!   rationals in one indeterminate per vertex. Identities checked here hold
//!   for all coordinate values.

use std::fmt::Debug;

use crate::error::{Error, Result};
use crate::Vertex;

mod poly;
mod prime;
mod ratfunc;
mod rational;
mod zeta;

pub use poly::{Exponents, Poly, MAX_VARS};
pub use prime::{is_prime_u64, PrimeField, DEFAULT_PRIME};
pub use ratfunc::{RatFunc, RationalFunctionField};
pub use rational::RationalField;
pub use zeta::{parse_zeta_file, random_assignment, SampleMode, ZetaAssignment, ZetaValue};

/// A commutative field together with a coordinate `zeta(v)` for every vertex.
#[allow(clippy::wrong_self_convention)]
pub trait Field: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    /// Maps an exact rational `num/den` into the field.
    fn from_ratio(&self, num: i64, den: i64) -> Result<Self::Elem>;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// `acc += a * b`
    fn mul_add_assign(&self, acc: &mut Self::Elem, a: &Self::Elem, b: &Self::Elem) {
        *acc = self.add(acc, &self.mul(a, b));
    }

    /// The coordinate of a vertex.
    fn zeta(&self, v: Vertex) -> Result<Self::Elem>;

    /// `zeta_i - zeta_j`.
    fn zeta_diff(&self, i: Vertex, j: Vertex) -> Result<Self::Elem> {
        if i == j {
            return Err(Error::SameVertex(i));
        }
        Ok(self.sub(&self.zeta(i)?, &self.zeta(j)?))
    }

    /// True if `a` has trivial denominator. Only the symbolic field tracks
    /// this; in the concrete fields every element counts as a polynomial.
    fn is_polynomial(&self, _a: &Self::Elem) -> bool {
        true
    }

    /// Whether equalities in this field are identities in the coordinates.
    fn is_exact_symbolic(&self) -> bool {
        false
    }

    fn format(&self, a: &Self::Elem) -> String;

    /// Short human-readable description: mode, modulus, coordinates.
    fn describe(&self) -> String;

    /// Identifies the field instance; elements from fields with different
    /// fingerprints must not be mixed.
    fn fingerprint(&self) -> u64;
}

pub(crate) fn fnv1a(bytes: impl IntoIterator<Item = u8>) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in bytes {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}
