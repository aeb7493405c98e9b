use std::collections::BTreeMap;

use super::Face;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::grassmann::{Algebra, GenKey, GrassmannElement, Monomial, Tet};
use crate::pachner::Cluster;

/// First-order differential operator `sum_g c_g * d/dg` (left derivatives),
/// terms sorted by generator index, no zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceOperator<E> {
    terms: Vec<(E, usize)>,
}

impl<E: Clone> FaceOperator<E> {
    /// Operator with the given `(coefficient, generator)` terms; repeated
    /// generators are merged and zero coefficients dropped.
    pub fn new<F: Field<Elem = E>>(
        alg: &Algebra<F>,
        terms: impl IntoIterator<Item = (E, usize)>,
    ) -> Result<Self> {
        let terms: Vec<(E, usize)> = terms.into_iter().collect();
        if let Some((_, g)) = terms.iter().find(|(_, g)| *g >= alg.table().len()) {
            return Err(Error::UnknownGenerator(format!("index {g}")));
        }
        Ok(build(alg.field(), terms))
    }

    pub fn terms(&self) -> &[(E, usize)] {
        &self.terms
    }

    pub fn coefficient(&self, g: usize) -> Option<&E> {
        self.terms.iter().find(|(_, x)| *x == g).map(|(c, _)| c)
    }

    pub fn generators(&self) -> Monomial {
        Monomial::from_indices(self.terms.iter().map(|(_, g)| *g))
    }
}

fn build<F: Field>(
    f: &F,
    terms: impl IntoIterator<Item = (F::Elem, usize)>,
) -> FaceOperator<F::Elem> {
    let mut acc: BTreeMap<usize, F::Elem> = BTreeMap::new();
    for (c, g) in terms {
        match acc.get_mut(&g) {
            Some(x) => *x = f.add(x, &c),
            None => {
                acc.insert(g, c);
            }
        }
    }
    FaceOperator {
        terms: acc
            .into_iter()
            .filter(|(_, c)| !f.is_zero(c))
            .map(|(g, c)| (c, g))
            .collect(),
    }
}

/// Operator of a 2-face inside one tetrahedron `ijkl`:
///
/// | face  | operator                                              |
/// |-------|-------------------------------------------------------|
/// | `ijk` | `(z_jk/z_kl) d/da - (z_ik/z_kl) d/db`                 |
/// | `ijl` | `-(z_jl/z_kl) d/da + (z_il/z_kl) d/db`                |
/// | `ikl` | `d/da`                                                |
/// | `jkl` | `-d/db`                                               |
pub fn face_tet_operator<F: Field>(
    alg: &Algebra<F>,
    face: Face,
    tet: Tet,
) -> Result<FaceOperator<F::Elem>> {
    let f = alg.field();
    let [i, j, k, l] = tet;
    let ga = alg.table().index(GenKey::a(tet))?;
    let gb = alg.table().index(GenKey::b(tet))?;
    let ratio = |p, q| -> Result<F::Elem> { f.div(&f.zeta_diff(p, q)?, &f.zeta_diff(k, l)?) };
    let terms = if face == [i, j, k] {
        vec![(ratio(j, k)?, ga), (f.neg(&ratio(i, k)?), gb)]
    } else if face == [i, j, l] {
        vec![(f.neg(&ratio(j, l)?), ga), (ratio(i, l)?, gb)]
    } else if face == [i, k, l] {
        vec![(f.one(), ga)]
    } else if face == [j, k, l] {
        vec![(f.neg(&f.one()), gb)]
    } else {
        return Err(Error::FaceNotInTetrahedron { face, tet });
    };
    Ok(build(f, terms))
}

/// `d_face`: the sum of [`face_tet_operator`] over every tetrahedron of the
/// cluster containing the face.
pub fn face_operator_d<F: Field>(
    alg: &Algebra<F>,
    face: Face,
    cluster: &Cluster,
) -> Result<FaceOperator<F::Elem>> {
    let tets = cluster
        .tetrahedra_containing(face)
        .ok_or(Error::FaceNotInCluster(face))?;
    let mut terms = Vec::new();
    for &t in tets {
        terms.extend(face_tet_operator(alg, face, t)?.terms);
    }
    Ok(build(alg.field(), terms))
}

/// `sum_g c_g * (d/dg) x`.
pub fn apply_operator<F: Field>(
    alg: &Algebra<F>,
    op: &FaceOperator<F::Elem>,
    x: &GrassmannElement<F::Elem>,
) -> Result<GrassmannElement<F::Elem>> {
    let mut acc = alg.zero();
    for (c, g) in &op.terms {
        let d = alg.l_deriv(x, *g)?;
        acc = alg.add(&acc, &alg.scale(&d, c))?;
    }
    Ok(acc)
}

/// `ops[0](ops[1](... ops[n-1](x)))`: the last operator acts first.
pub fn apply_composed<F: Field>(
    alg: &Algebra<F>,
    ops: &[FaceOperator<F::Elem>],
    x: &GrassmannElement<F::Elem>,
) -> Result<GrassmannElement<F::Elem>> {
    let mut acc = x.clone();
    for op in ops.iter().rev() {
        acc = apply_operator(alg, op, &acc)?;
    }
    Ok(acc)
}

/// Solves `(ops[0] ... ops[n-1]) g = 1` for a homogeneous `g` of degree `n`.
///
/// The answer is `m / c` where `m` is the first degree-`n` monomial, in
/// (degree, mask) order over the generators the operators touch, whose image
/// `c` under the composed operator is nonzero. The composed operator sends a
/// monomial to a signed minor of the coefficient matrix (rows: operators,
/// columns: generators), so `m` is the greedy column basis taken in
/// increasing generator order; it is found by incremental elimination rather
/// than by enumerating monomials.
pub fn invert_to_one<F: Field>(
    alg: &Algebra<F>,
    ops: &[FaceOperator<F::Elem>],
) -> Result<GrassmannElement<F::Elem>> {
    let f = alg.field();
    let n = ops.len();
    if n == 0 {
        return Ok(alg.one());
    }
    let columns = Monomial(ops.iter().fold(0, |m, op| m | op.generators().0));
    // reduced basis vectors, each with the row of its pivot
    let mut basis: Vec<(usize, Vec<F::Elem>)> = Vec::with_capacity(n);
    let mut chosen = Vec::with_capacity(n);
    for g in columns.indices() {
        let mut v: Vec<F::Elem> = ops
            .iter()
            .map(|op| op.coefficient(g).cloned().unwrap_or_else(|| f.zero()))
            .collect();
        for (pivot, b) in &basis {
            if f.is_zero(&v[*pivot]) {
                continue;
            }
            let factor = f.div(&v[*pivot], &b[*pivot])?;
            for (vi, bi) in v.iter_mut().zip(b) {
                if !f.is_zero(bi) {
                    *vi = f.sub(vi, &f.mul(&factor, bi));
                }
            }
        }
        if let Some(pivot) = v.iter().position(|c| !f.is_zero(c)) {
            basis.push((pivot, v));
            chosen.push(g);
            if chosen.len() == n {
                break;
            }
        }
    }
    if chosen.len() < n {
        return Err(Error::NotSurjective);
    }
    let m = Monomial::from_indices(chosen);
    let image = apply_composed(alg, ops, &alg.monomial(m, f.one()))?;
    let c = image
        .coefficient(Monomial::ONE)
        .filter(|_| image.len() == 1)
        .ok_or(Error::NotSurjective)?;
    Ok(alg.monomial(m, f.inv(c)?))
}

/// True iff `g` is homogeneous of degree `ops.len()` and the composed
/// operator maps it to exactly 1.
pub fn verify_w_candidate<F: Field>(
    alg: &Algebra<F>,
    ops: &[FaceOperator<F::Elem>],
    g: &GrassmannElement<F::Elem>,
) -> bool {
    if g.is_zero() || !g.is_homogeneous(ops.len() as u32) {
        return false;
    }
    match apply_composed(alg, ops, g) {
        Ok(image) => image == alg.one(),
        Err(_) => false,
    }
}

/// `l / op(l)` for a linear element `l = sum c_g g`: the general
/// single-face solution. Fails when `op(l)` vanishes.
pub fn linear_candidate<F: Field>(
    alg: &Algebra<F>,
    op: &FaceOperator<F::Elem>,
    linear: &GrassmannElement<F::Elem>,
) -> Result<GrassmannElement<F::Elem>> {
    let image = apply_operator(alg, op, linear)?;
    let denom = image
        .coefficient(Monomial::ONE)
        .filter(|_| image.len() == 1)
        .ok_or(Error::NotSurjective)?;
    Ok(alg.scale(linear, &alg.field().inv(denom)?))
}
