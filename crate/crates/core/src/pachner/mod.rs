//! Clusters of 4-simplexes, the Pachner move identities and the invariant.

mod cluster;
mod integral;
mod moves;
mod triangulation;

pub use cluster::{Cluster, Edge, IncidenceReport};
pub use integral::{
    cluster_integral, cluster_integral_with, equal_up_to_sign, inner_face_operators, invariant_ti,
    weight_product_vanishes, WChoice,
};
pub use moves::{
    general_w_candidate, star_subdivided_simplex, verify_move_24, verify_move_33,
    w_candidates_24_right, w_candidates_33_left, w_candidates_33_right, MoveReport,
    NamedCandidates, PachnerMove,
};
pub use triangulation::load_triangulation;
