use itertools::Itertools;

use super::Cluster;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::grassmann::{Algebra, GenKey, GrassmannElement, Monomial};
use crate::weights::{
    face_operator_d, invert_to_one, verify_w_candidate, weight_factors, weight_from_factors,
    FaceOperator, Simplex4,
};

/// How the 2-face weight `w` is chosen.
#[derive(Debug, Clone)]
pub enum WChoice<E> {
    /// Solved by [`invert_to_one`].
    Auto,
    /// A caller-supplied solution; checked before use.
    Explicit(GrassmannElement<E>),
}

/// `d_f` for every inner 2-face `f`, faces in lexicographic order.
pub fn inner_face_operators<F: Field>(
    alg: &Algebra<F>,
    cluster: &Cluster,
) -> Result<Vec<FaceOperator<F::Elem>>> {
    cluster
        .classify()
        .inner_faces
        .iter()
        .map(|&face| face_operator_d(alg, face, cluster))
        .collect()
}

/// `∫ prod_s W_s · w · prod_t da_t db_t / zeta_kl` over the inner tetrahedra
/// `t = ijkl` of the cluster.
///
/// Weights are multiplied in lexicographic simplex order with `w` on the
/// right; the integration runs over the inner tetrahedra in lexicographic
/// order, `a` before `b`, innermost first. The result lives on boundary
/// generators only.
pub fn cluster_integral<F: Field>(
    alg: &Algebra<F>,
    cluster: &Cluster,
    w_choice: &WChoice<F::Elem>,
) -> Result<GrassmannElement<F::Elem>> {
    cluster_integral_with(alg, cluster, w_choice, |s| weight_factors(alg, s))
}

/// [`cluster_integral`] with the weights built from caller-supplied linear
/// factors (see [`weight_factors`]); used for negative controls.
pub fn cluster_integral_with<F: Field>(
    alg: &Algebra<F>,
    cluster: &Cluster,
    w_choice: &WChoice<F::Elem>,
    factors: impl Fn(Simplex4) -> Result<[GrassmannElement<F::Elem>; 3]>,
) -> Result<GrassmannElement<F::Elem>> {
    let f = alg.field();
    let factors = cluster
        .simplexes()
        .iter()
        .map(|&s| factors(s))
        .collect::<Result<Vec<_>>>()?;
    let report = cluster.classify();
    let ops = inner_face_operators(alg, cluster)?;

    let table = alg.table();
    let inner = table.mask_of(report.inner_tetrahedra.iter().copied())?;
    let boundary = table.mask_of(report.boundary_tetrahedra.iter().copied())?;
    let total = 3 * cluster.simplexes().len() + ops.len();
    let Some(target) = total.checked_sub(2 * report.inner_tetrahedra.len()) else {
        return Ok(alg.zero());
    };
    let target = target as u32;

    let w = match w_choice {
        WChoice::Auto => match invert_to_one(alg, &ops) {
            Ok(w) => w,
            // The face operators are linearly dependent (an inner vertex):
            // no w exists. If the weight product has no term of the right
            // boundary degree, the integral vanishes for every w.
            Err(Error::NotSurjective) => {
                return if weight_product_vanishes(alg, &factors, boundary, target)? {
                    Ok(alg.zero())
                } else {
                    Err(Error::NotSurjective)
                };
            }
            Err(e) => return Err(e),
        },
        WChoice::Explicit(g) => {
            if !verify_w_candidate(alg, &ops, g) {
                return Err(Error::InvalidWCandidate);
            }
            g.clone()
        }
    };

    // Generators present in every monomial of w cannot occur in the weight
    // product.
    let in_all_w = w.terms().iter().fold(!0u64, |acc, (m, _)| acc & m.0);
    let in_all_w = Monomial(if w.is_zero() { 0 } else { in_all_w });
    let weights = cluster
        .simplexes()
        .iter()
        .zip(&factors)
        .map(|(&s, fs)| weight_from_factors(alg, s, fs))
        .collect::<Result<Vec<_>>>()?;
    let product = weight_product(alg, &weights, boundary, target, in_all_w)?;
    let product = alg.mul_filtered(&product, &w, |m| {
        m.intersection(inner) == inner && m.intersection(boundary).degree() == target
    })?;

    let mut gens = Vec::with_capacity(2 * report.inner_tetrahedra.len());
    let mut measure = f.one();
    for &t in &report.inner_tetrahedra {
        gens.push(table.index(GenKey::a(t))?);
        gens.push(table.index(GenKey::b(t))?);
        measure = f.mul(&measure, &f.zeta_diff(t[2], t[3])?);
    }
    let integral = alg.berezin_iterated(&product, &gens)?;
    Ok(alg.scale(&integral, &f.inv(&measure)?))
}

/// The product of the simplex weights, keeping only terms of boundary degree
/// exactly `target` that avoid `exclude`. Partial products are pruned with
/// the least and greatest boundary degree the remaining factors can add.
fn weight_product<F: Field>(
    alg: &Algebra<F>,
    weights: &[GrassmannElement<F::Elem>],
    boundary: Monomial,
    target: u32,
    exclude: Monomial,
) -> Result<GrassmannElement<F::Elem>> {
    let range = |w: &GrassmannElement<F::Elem>| {
        w.terms().iter().fold((u32::MAX, 0), |(lo, hi), (m, _)| {
            let d = m.intersection(boundary).degree();
            (lo.min(d), hi.max(d))
        })
    };
    let ranges: Vec<(u32, u32)> = weights.iter().map(range).collect();
    let mut product = alg.one();
    for (k, w) in weights.iter().enumerate() {
        let (rest_lo, rest_hi) = ranges[k + 1..]
            .iter()
            .fold((0, 0), |(lo, hi), &(l, h)| (lo + l, hi + h));
        let keep = |m: Monomial| {
            let d = m.intersection(boundary).degree();
            m.is_disjoint(exclude) && d + rest_lo <= target && d + rest_hi >= target
        };
        product = alg.mul_filtered(&product, w, keep)?;
    }
    Ok(product)
}

/// True iff the product of the weights with the given linear factors has no
/// term of boundary degree `target`, so that the integral vanishes whatever
/// `w` is.
///
/// The product is, up to a nonzero scalar, the wedge of the weights' linear
/// factors `u_r + v_r` (boundary part `u`, inner part `v`). Row operations
/// keep the wedge up to a nonzero scalar, so reduce until the rows with a
/// nonzero `u` have independent `u`s. The boundary-degree-`target` part is
/// then a sum over `target`-subsets `R` of those rows of
/// `±(∧_R u)(∧_{not R} v)`, whose boundary factors are independent; it
/// vanishes iff every complementary set of `v`s is linearly dependent.
pub fn weight_product_vanishes<F: Field>(
    alg: &Algebra<F>,
    factors: &[[GrassmannElement<F::Elem>; 3]],
    boundary: Monomial,
    target: u32,
) -> Result<bool> {
    let f = alg.field();
    let n = alg.table().len();
    let mut rows: Vec<Vec<F::Elem>> = Vec::new();
    for factor in factors.iter().flatten() {
        if !factor.is_homogeneous(1) {
            // not a wedge of linear forms; nothing to conclude
            return Ok(false);
        }
        let mut row = vec![f.zero(); n];
        for (m, c) in factor.terms() {
            row[m.0.trailing_zeros() as usize] = c.clone();
        }
        rows.push(row);
    }
    let boundary_cols: Vec<usize> = boundary.indices().collect();
    let inner_cols: Vec<usize> = (0..n).filter(|&g| !boundary.contains(g)).collect();

    // Eliminate on the boundary columns; rows[..rank] get pivots.
    let mut rank = 0;
    for &col in &boundary_cols {
        let Some(p) = (rank..rows.len()).find(|&r| !f.is_zero(&rows[r][col])) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        let inv = f.inv(&pivot[col])?;
        for row in &mut rows[rank + 1..] {
            if f.is_zero(&row[col]) {
                continue;
            }
            let factor = f.mul(&row[col], &inv);
            for (x, y) in row.iter_mut().zip(&pivot) {
                *x = f.sub(x, &f.mul(&factor, y));
            }
        }
        rank += 1;
    }
    let target = target as usize;
    if target > rank {
        return Ok(true);
    }
    let inner_part =
        |r: usize| -> Vec<F::Elem> { inner_cols.iter().map(|&c| rows[r][c].clone()).collect() };
    for chosen in (0..rank).combinations(target) {
        let rest: Vec<Vec<F::Elem>> = (0..rows.len())
            .filter(|r| !chosen.contains(r))
            .map(inner_part)
            .collect();
        let k = rest.len();
        if matrix_rank(f, rest)? == k {
            return Ok(false);
        }
    }
    Ok(true)
}

fn matrix_rank<F: Field>(f: &F, mut rows: Vec<Vec<F::Elem>>) -> Result<usize> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !f.is_zero(&rows[r][col])) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        let inv = f.inv(&pivot[col])?;
        for row in rows.iter_mut().skip(rank + 1) {
            if f.is_zero(&row[col]) {
                continue;
            }
            let factor = f.mul(&row[col], &inv);
            for (x, y) in row.iter_mut().zip(&pivot) {
                *x = f.sub(x, &f.mul(&factor, y));
            }
        }
        rank += 1;
    }
    Ok(rank)
}

/// `(prod over inner edges ij of zeta_ij) · cluster_integral` with the solved
/// `w`. Defined up to an overall sign. Zero for clusters with an inner vertex.
pub fn invariant_ti<F: Field>(
    alg: &Algebra<F>,
    cluster: &Cluster,
) -> Result<GrassmannElement<F::Elem>> {
    let f = alg.field();
    let mut edge_factor = f.one();
    for &[i, j] in &cluster.classify().inner_edges {
        edge_factor = f.mul(&edge_factor, &f.zeta_diff(i, j)?);
    }
    let integral = cluster_integral(alg, cluster, &WChoice::Auto)?;
    Ok(alg.scale(&integral, &edge_factor))
}

/// `x == y` or `x == -y`.
pub fn equal_up_to_sign<F: Field>(
    alg: &Algebra<F>,
    x: &GrassmannElement<F::Elem>,
    y: &GrassmannElement<F::Elem>,
) -> bool {
    x == y || *x == alg.neg(y)
}
