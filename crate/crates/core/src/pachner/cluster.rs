use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::grassmann::{GeneratorTable, Tet};
use crate::weights::{Face, Simplex4};
use crate::Vertex;

pub type Edge = [Vertex; 2];

/// Inner/boundary classification of the tetrahedra, 2-faces and edges of a cluster.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IncidenceReport {
    pub inner_tetrahedra: Vec<Tet>,
    pub boundary_tetrahedra: Vec<Tet>,
    pub inner_faces: Vec<Face>,
    pub boundary_faces: Vec<Face>,
    pub inner_edges: Vec<Edge>,
    pub boundary_edges: Vec<Edge>,
}

/// A set of 4-simplexes in which every tetrahedron lies in one (boundary)
/// or two (inner) simplexes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cluster {
    simplexes: Vec<Simplex4>,
    tet_counts: BTreeMap<Tet, usize>,
    face_tets: BTreeMap<Face, Vec<Tet>>,
    report: IncidenceReport,
}

/// Splits `(key, is_boundary)` into (inner keys, boundary keys).
fn split<K: Copy>(m: &BTreeMap<K, bool>) -> (Vec<K>, Vec<K>) {
    let inner = m.iter().filter(|(_, &b)| !b).map(|(k, _)| *k).collect();
    let boundary = m.iter().filter(|(_, &b)| b).map(|(k, _)| *k).collect();
    (inner, boundary)
}

fn tet_faces(t: Tet) -> [Face; 4] {
    let [i, j, k, l] = t;
    [[i, j, k], [i, j, l], [i, k, l], [j, k, l]]
}

fn tet_edges(t: Tet) -> [Edge; 6] {
    let [i, j, k, l] = t;
    [[i, j], [i, k], [i, l], [j, k], [j, l], [k, l]]
}

impl Cluster {
    pub fn new(simplexes: impl IntoIterator<Item = Simplex4>) -> Result<Self> {
        let mut simplexes: Vec<Simplex4> = simplexes.into_iter().collect();
        simplexes.sort_unstable();
        if let Some(w) = simplexes.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateSimplex(w[0].vertices()));
        }
        let mut tet_counts: BTreeMap<Tet, usize> = BTreeMap::new();
        for s in &simplexes {
            for t in s.tetrahedra() {
                *tet_counts.entry(t).or_default() += 1;
            }
        }
        if let Some((t, n)) = tet_counts.iter().find(|(_, &n)| n > 2) {
            return Err(Error::TetrahedronOvershared(*t, *n));
        }
        let mut face_tets: BTreeMap<Face, Vec<Tet>> = BTreeMap::new();
        let mut edge_boundary: BTreeMap<Edge, bool> = BTreeMap::new();
        let mut face_boundary: BTreeMap<Face, bool> = BTreeMap::new();
        for (&t, &n) in &tet_counts {
            let boundary = n == 1;
            for f in tet_faces(t) {
                face_tets.entry(f).or_default().push(t);
                *face_boundary.entry(f).or_default() |= boundary;
            }
            for e in tet_edges(t) {
                *edge_boundary.entry(e).or_default() |= boundary;
            }
        }
        let (inner_faces, boundary_faces) = split(&face_boundary);
        let (inner_edges, boundary_edges) = split(&edge_boundary);
        let report = IncidenceReport {
            inner_tetrahedra: tet_counts
                .iter()
                .filter(|(_, &n)| n == 2)
                .map(|(t, _)| *t)
                .collect(),
            boundary_tetrahedra: tet_counts
                .iter()
                .filter(|(_, &n)| n == 1)
                .map(|(t, _)| *t)
                .collect(),
            inner_faces,
            boundary_faces,
            inner_edges,
            boundary_edges,
        };
        Ok(Cluster {
            simplexes,
            tet_counts,
            face_tets,
            report,
        })
    }

    /// Convenience constructor from vertex tuples in any order.
    pub fn from_vertex_lists(lists: &[[Vertex; 5]]) -> Result<Self> {
        Self::new(
            lists
                .iter()
                .map(|&v| Simplex4::from_unsorted(v))
                .collect::<Result<Vec<_>>>()?,
        )
    }

    /// Simplexes in lexicographic order.
    pub fn simplexes(&self) -> &[Simplex4] {
        &self.simplexes
    }

    pub fn tetrahedra(&self) -> impl Iterator<Item = Tet> + '_ {
        self.tet_counts.keys().copied()
    }

    pub fn vertices(&self) -> BTreeSet<Vertex> {
        self.simplexes.iter().flat_map(|s| s.vertices()).collect()
    }

    /// Tetrahedra of the cluster containing `face`, lexicographically; `None`
    /// if the face is not in the cluster.
    pub fn tetrahedra_containing(&self, face: Face) -> Option<&[Tet]> {
        self.face_tets.get(&face).map(Vec::as_slice)
    }

    pub fn classify(&self) -> &IncidenceReport {
        &self.report
    }

    /// Generator table with `a`, `b` for every tetrahedron of the cluster.
    pub fn generator_table(&self) -> Result<GeneratorTable> {
        GeneratorTable::from_tetrahedra(self.tetrahedra())
    }

    /// Applies a vertex relabeling; simplex vertices are re-sorted.
    pub fn relabeled(&self, map: impl Fn(Vertex) -> Vertex) -> Result<Self> {
        Self::new(
            self.simplexes
                .iter()
                .map(|s| Simplex4::from_unsorted(s.vertices().map(&map)))
                .collect::<Result<Vec<_>>>()?,
        )
    }
}
