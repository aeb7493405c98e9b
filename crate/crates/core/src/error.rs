use thiserror::Error;

use crate::Vertex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("modulus {0} is not a prime below 2^63")]
    InvalidPrime(u64),

    #[error("zeta difference requires distinct vertices, got {0} twice")]
    SameVertex(Vertex),

    #[error("vertex {0} has no zeta value")]
    UnassignedVertex(Vertex),

    #[error("vertex numbers must be positive")]
    InvalidVertex,

    #[error("vertex {0} is assigned twice")]
    DuplicateVertex(Vertex),

    #[error("zeta values of vertices {0} and {1} coincide")]
    DuplicateZeta(Vertex, Vertex),

    #[error("cannot draw {needed} distinct values from a range of size {available}")]
    DegenerateRange { needed: usize, available: u128 },

    #[error("symbolic field supports at most {max} vertices, got {got}")]
    TooManyVariables { max: usize, got: usize },

    #[error("generator table holds {0} generators, the limit is 64")]
    TooManyGenerators(usize),

    #[error("generator {0} is not registered")]
    UnknownGenerator(String),

    #[error("operands belong to different algebras (generator table or field mismatch)")]
    AlgebraMismatch,

    #[error("invalid simplex {0:?}: {1}")]
    InvalidSimplex(Vec<Vertex>, &'static str),

    #[error("face {face:?} is not contained in tetrahedron {tet:?}")]
    FaceNotInTetrahedron { face: [Vertex; 3], tet: [Vertex; 4] },

    #[error("face {0:?} is not a 2-face of the cluster")]
    FaceNotInCluster([Vertex; 3]),

    #[error("tetrahedron {0:?} is contained in {1} simplexes, at most 2 allowed")]
    TetrahedronOvershared([Vertex; 4], usize),

    #[error("simplex {0:?} occurs more than once")]
    DuplicateSimplex([Vertex; 5]),

    #[error("weight coefficient is not divisible by zeta_{0}{1}")]
    InexactWeightDivision(Vertex, Vertex),

    #[error("operator product not surjective onto scalars")]
    NotSurjective,

    #[error("w candidate does not satisfy the face-operator equations")]
    InvalidWCandidate,

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
