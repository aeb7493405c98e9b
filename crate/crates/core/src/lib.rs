//! Exact Grassmann-algebra engine for four-dimensional Pachner move identities.
//!
//! * [`field`]: coefficient fields (prime field, rationals, rational functions
//!   in the vertex coordinates).
//! * [`grassmann`]: sparse Grassmann algebra with Berezin integration and left
//!   derivatives.
//! * [`weights`]: 4-simplex weights, face operators and the inverse of a
//!   product of face operators applied to 1.
//! * [`pachner`]: cluster incidence, the 3-3 and 2-4 move identities and the
//!   invariant of triangulated 4-manifolds with boundary.

pub mod error;
pub mod field;
pub mod grassmann;
pub mod pachner;
pub mod weights;

pub use error::{Error, Result};

/// Vertex label; vertices are numbered by positive integers.
pub type Vertex = u32;
