use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{cluster_integral, inner_face_operators, Cluster, WChoice};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::grassmann::{Algebra, GeneratorTable, GrassmannElement, Monomial};
use crate::weights::apply_composed;
use crate::Vertex;

/// A local move: the left cluster is replaced by the right one, with the
/// same boundary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PachnerMove {
    pub name: &'static str,
    pub left: Cluster,
    pub right: Cluster,
}

impl PachnerMove {
    /// `{12345, 12346, 12356} -> {12456, 13456, 23456}`
    pub fn three_three() -> Self {
        PachnerMove {
            name: "3-3",
            left: Cluster::from_vertex_lists(&[[1, 2, 3, 4, 5], [1, 2, 3, 4, 6], [1, 2, 3, 5, 6]])
                .expect("valid cluster"),
            right: Cluster::from_vertex_lists(&[[1, 2, 4, 5, 6], [1, 3, 4, 5, 6], [2, 3, 4, 5, 6]])
                .expect("valid cluster"),
        }
    }

    /// `{12345, 12346} -> {12356, 12456, 13456, 23456}`
    pub fn two_four() -> Self {
        PachnerMove {
            name: "2-4",
            left: Cluster::from_vertex_lists(&[[1, 2, 3, 4, 5], [1, 2, 3, 4, 6]])
                .expect("valid cluster"),
            right: Cluster::from_vertex_lists(&[
                [1, 2, 3, 5, 6],
                [1, 2, 4, 5, 6],
                [1, 3, 4, 5, 6],
                [2, 3, 4, 5, 6],
            ])
            .expect("valid cluster"),
        }
    }

    /// Generator table covering the tetrahedra of both sides.
    pub fn generator_table(&self) -> Result<GeneratorTable> {
        GeneratorTable::from_tetrahedra(self.left.tetrahedra().chain(self.right.tetrahedra()))
    }

    pub fn algebra<F: Field>(&self, field: F) -> Result<Algebra<F>> {
        Ok(Algebra::new(field, self.generator_table()?))
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        let mut v: Vec<Vertex> = self
            .left
            .vertices()
            .union(&self.right.vertices())
            .copied()
            .collect();
        v.sort_unstable();
        v
    }

    pub fn relabeled(&self, map: impl Fn(Vertex) -> Vertex) -> Result<Self> {
        Ok(PachnerMove {
            name: self.name,
            left: self.left.relabeled(&map)?,
            right: self.right.relabeled(&map)?,
        })
    }
}

/// `{12346, 12356, 12456, 13456, 23456}`: the simplex `12345` coned from an
/// inner vertex 6.
pub fn star_subdivided_simplex() -> Cluster {
    Cluster::from_vertex_lists(&[
        [1, 2, 3, 4, 6],
        [1, 2, 3, 5, 6],
        [1, 2, 4, 5, 6],
        [1, 3, 4, 5, 6],
        [2, 3, 4, 5, 6],
    ])
    .expect("valid cluster")
}

/// Candidate `w` elements labelled the way they are usually written.
pub type NamedCandidates<E> = Vec<(&'static str, GrassmannElement<E>)>;

/// Outcome of checking one identity.
#[derive(Debug, Clone)]
pub struct MoveReport<E> {
    pub move_name: &'static str,
    pub mode: String,
    pub left: GrassmannElement<E>,
    pub right: GrassmannElement<E>,
    /// Factor applied to the right-hand side.
    pub edge_factor: E,
    pub difference: GrassmannElement<E>,
    pub exact: bool,
    pub pass: bool,
}

impl<E> MoveReport<E> {
    /// Plain-text summary, stable across runs.
    pub fn render<F: Field<Elem = E>>(&self, alg: &Algebra<F>) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "move: {}", self.move_name);
        let _ = writeln!(s, "mode: {}", self.mode);
        let _ = writeln!(s, "exact: {}", self.exact);
        let _ = writeln!(s, "edge-factor: {}", alg.field().format(&self.edge_factor));
        let _ = writeln!(s, "left-terms: {}", self.left.len());
        let _ = writeln!(s, "right-terms: {}", self.right.len());
        let _ = writeln!(s, "difference-terms: {}", self.difference.len());
        let _ = writeln!(s, "result: {}", if self.pass { "PASS" } else { "FAIL" });
        s
    }
}

fn report<F: Field>(
    alg: &Algebra<F>,
    move_name: &'static str,
    left: GrassmannElement<F::Elem>,
    right: GrassmannElement<F::Elem>,
    edge_factor: F::Elem,
) -> Result<MoveReport<F::Elem>> {
    let right = alg.scale(&right, &edge_factor);
    let difference = alg.sub(&left, &right)?;
    let pass = difference.is_zero();
    Ok(MoveReport {
        move_name,
        mode: alg.field().describe(),
        left,
        right,
        edge_factor,
        difference,
        exact: alg.field().is_exact_symbolic(),
        pass,
    })
}

/// Checks the 3-3 identity: the integral over `{12345, 12346, 12356}` equals
/// the integral over `{12456, 13456, 23456}`.
pub fn verify_move_33<F: Field>(
    alg: &Algebra<F>,
    w_left: &WChoice<F::Elem>,
    w_right: &WChoice<F::Elem>,
) -> Result<MoveReport<F::Elem>> {
    let mv = PachnerMove::three_three();
    let left = cluster_integral(alg, &mv.left, w_left)?;
    let right = cluster_integral(alg, &mv.right, w_right)?;
    report(alg, mv.name, left, right, alg.field().one())
}

/// Checks the 2-4 identity: the integral over `{12345, 12346}` equals
/// `-zeta_56` times the integral over `{12356, 12456, 13456, 23456}`.
/// With `edge_factor == false` the prefactor is left out.
pub fn verify_move_24<F: Field>(
    alg: &Algebra<F>,
    w_right: &WChoice<F::Elem>,
    edge_factor: bool,
) -> Result<MoveReport<F::Elem>> {
    let mv = PachnerMove::two_four();
    let f = alg.field();
    let left = cluster_integral(alg, &mv.left, &WChoice::Auto)?;
    let right = cluster_integral(alg, &mv.right, w_right)?;
    let factor = if edge_factor {
        f.neg(&f.zeta_diff(5, 6)?)
    } else {
        f.one()
    };
    report(alg, mv.name, left, right, factor)
}

/// Single-term solutions of `d_123 w = 1` on the 3-3 left side, named by
/// their generator: `(z34/z23) a1234, (z34/z31) b1234, (z35/z23) a1235,
/// (z35/z31) b1235, (z36/z23) a1236, (z36/z31) b1236`.
pub fn w_candidates_33_left<F: Field>(alg: &Algebra<F>) -> Result<NamedCandidates<F::Elem>> {
    let f = alg.field();
    let mut out = Vec::new();
    for (name_a, name_b, l) in [
        ("a1234", "b1234", 4),
        ("a1235", "b1235", 5),
        ("a1236", "b1236", 6),
    ] {
        let tet = [1, 2, 3, l];
        let z3l = f.zeta_diff(3, l)?;
        out.push((
            name_a,
            alg.scale(&alg.a(tet)?, &f.div(&z3l, &f.zeta_diff(2, 3)?)?),
        ));
        out.push((
            name_b,
            alg.scale(&alg.b(tet)?, &f.div(&z3l, &f.zeta_diff(3, 1)?)?),
        ));
    }
    Ok(out)
}

/// `-b1456, -b2456, -b3456`: solutions of `d_456 w = 1` on the 3-3 right side.
pub fn w_candidates_33_right<F: Field>(alg: &Algebra<F>) -> Result<NamedCandidates<F::Elem>> {
    Ok(vec![
        ("b1456", alg.neg(&alg.b([1, 4, 5, 6])?)),
        ("b2456", alg.neg(&alg.b([2, 4, 5, 6])?)),
        ("b3456", alg.neg(&alg.b([3, 4, 5, 6])?)),
    ])
}

/// `a1256 b1256 a3456 b3456` on the 2-4 right side.
pub fn w_candidates_24_right<F: Field>(alg: &Algebra<F>) -> Result<NamedCandidates<F::Elem>> {
    let mut w = alg.a([1, 2, 5, 6])?;
    w = alg.mul(&w, &alg.b([1, 2, 5, 6])?)?;
    w = alg.mul(&w, &alg.a([3, 4, 5, 6])?)?;
    w = alg.mul(&w, &alg.b([3, 4, 5, 6])?)?;
    Ok(vec![("a1256b1256a3456b3456", w)])
}

/// A random solution of `(d_1 ... d_n) w = 1` for the inner faces of
/// `cluster`: a combination of `n`-fold products of the `a`, `b` generators
/// of the tetrahedra around the inner faces, with random nonzero integer
/// coefficients in `[-1000, 1000]`, divided by its image under the composed
/// operator. For one inner face this is the general linear solution
/// `sum (p a + q b) / d(sum (p a + q b))` with random `p`, `q`.
pub fn general_w_candidate<F: Field>(
    alg: &Algebra<F>,
    cluster: &Cluster,
    seed: u64,
) -> Result<GrassmannElement<F::Elem>> {
    let f = alg.field();
    let ops = inner_face_operators(alg, cluster)?;
    let n = ops.len() as u32;
    let mut tets = Vec::new();
    for &face in &cluster.classify().inner_faces {
        tets.extend_from_slice(cluster.tetrahedra_containing(face).unwrap_or_default());
    }
    let gens: Vec<usize> = alg.table().mask_of(tets)?.indices().collect();
    if n == 0 {
        return Ok(alg.one());
    }
    if gens.len() < n as usize {
        return Err(Error::NotSurjective);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coeff = |rng: &mut ChaCha8Rng| {
        let c: i64 = rng.gen_range(1..=1000);
        f.from_i64(if rng.gen() { c } else { -c })
    };
    for _attempt in 0..64 {
        let mut terms = Vec::new();
        if n == 1 {
            for &g in &gens {
                terms.push((Monomial::generator(g), coeff(&mut rng)));
            }
        } else {
            for _ in 0..8 {
                let mut pool = gens.clone();
                let mut picked = Vec::new();
                for _ in 0..n {
                    picked.push(pool.swap_remove(rng.gen_range(0..pool.len())));
                }
                terms.push((Monomial::from_indices(picked), coeff(&mut rng)));
            }
        }
        let g = alg.from_terms(terms)?;
        let image = apply_composed(alg, &ops, &g)?;
        if let Some(c) = image.coefficient(Monomial::ONE) {
            return Ok(alg.scale(&g, &f.inv(c)?));
        }
    }
    Err(Error::NotSurjective)
}
