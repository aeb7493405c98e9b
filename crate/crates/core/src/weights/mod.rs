//! 4-simplex weights and face operators.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::grassmann::{write_label, Algebra, GenKey, GenKind, GrassmannElement, Monomial, Tet};
use crate::Vertex;

mod fixture;
mod operators;

pub use fixture::{
    factor_weight_terms, fixture_element, parse_weight_fixture, FixtureTerm, EXPANDED_W12345,
};
pub use operators::{
    apply_composed, apply_operator, face_operator_d, face_tet_operator, invert_to_one,
    linear_candidate, verify_w_candidate, FaceOperator,
};

/// 2-face as a strictly increasing triple.
pub type Face = [Vertex; 3];

/// A 4-simplex with strictly increasing vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex4([Vertex; 5]);

impl Simplex4 {
    /// Vertices must already be strictly increasing and positive.
    pub fn new(vertices: [Vertex; 5]) -> Result<Self> {
        if vertices[0] == 0 {
            return Err(Error::InvalidSimplex(
                vertices.to_vec(),
                "vertex numbers must be positive",
            ));
        }
        if !vertices.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::InvalidSimplex(
                vertices.to_vec(),
                "vertices must be strictly increasing",
            ));
        }
        Ok(Simplex4(vertices))
    }

    /// Sorts the vertices; rejects repeated vertices.
    pub fn from_unsorted(mut vertices: [Vertex; 5]) -> Result<Self> {
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidSimplex(vertices.to_vec(), "repeated vertex"));
        }
        Self::new(vertices)
    }

    pub fn vertices(&self) -> [Vertex; 5] {
        self.0
    }

    /// Vertex at 1-based position `p` (the label `p` in the `12345` formulas).
    fn at(&self, p: u8) -> Vertex {
        self.0[usize::from(p) - 1]
    }

    /// The five tetrahedral faces, lexicographically ordered.
    pub fn tetrahedra(&self) -> [Tet; 5] {
        let v = self.0;
        let mut out = [[0; 4]; 5];
        for (n, skip) in (0..5).rev().enumerate() {
            let mut t = [0; 4];
            let mut k = 0;
            for (i, &x) in v.iter().enumerate() {
                if i != skip {
                    t[k] = x;
                    k += 1;
                }
            }
            out[n] = t;
        }
        out
    }
}

impl fmt::Display for Simplex4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_label(f, &self.0)
    }
}

/// One term `sign * zeta_{p q} * gen(tet)` of a linear factor, in `12345` labels.
struct LinearTerm {
    negative: bool,
    zeta: (u8, u8),
    kind: GenKind,
    tet: [u8; 4],
}

const fn lt(negative: bool, zeta: (u8, u8), kind: GenKind, tet: [u8; 4]) -> LinearTerm {
    LinearTerm {
        negative,
        zeta,
        kind,
        tet,
    }
}

use GenKind::{A, B};

/// The three linear factors of `W_12345`; the product is divided by `zeta_45`.
const WEIGHT_FACTORS: [&[LinearTerm]; 3] = [
    &[
        lt(false, (3, 4), A, [1, 2, 3, 4]),
        lt(true, (3, 5), A, [1, 2, 3, 5]),
        lt(false, (4, 5), A, [1, 2, 4, 5]),
        lt(true, (4, 5), A, [1, 3, 4, 5]),
    ],
    &[
        lt(false, (3, 4), B, [1, 2, 3, 4]),
        lt(true, (3, 5), B, [1, 2, 3, 5]),
        lt(false, (4, 5), B, [1, 2, 4, 5]),
        lt(false, (4, 5), A, [2, 3, 4, 5]),
    ],
    &[
        lt(true, (1, 4), A, [1, 2, 3, 4]),
        lt(true, (2, 4), B, [1, 2, 3, 4]),
        lt(false, (1, 5), A, [1, 2, 3, 5]),
        lt(false, (2, 5), B, [1, 2, 3, 5]),
        lt(true, (4, 5), B, [1, 3, 4, 5]),
        lt(false, (4, 5), B, [2, 3, 4, 5]),
    ],
];

/// The three linear factors of the weight of `s`, before the division by
/// `zeta_lm`.
pub fn weight_factors<F: Field>(
    alg: &Algebra<F>,
    s: Simplex4,
) -> Result<[GrassmannElement<F::Elem>; 3]> {
    let f = alg.field();
    let factor = |lin: &[LinearTerm]| -> Result<GrassmannElement<F::Elem>> {
        let mut terms = Vec::with_capacity(lin.len());
        for t in lin {
            let mut c = f.zeta_diff(s.at(t.zeta.0), s.at(t.zeta.1))?;
            if t.negative {
                c = f.neg(&c);
            }
            let tet = t.tet.map(|p| s.at(p));
            let g = alg.table().index(GenKey { tet, kind: t.kind })?;
            terms.push((Monomial::generator(g), c));
        }
        alg.from_terms(terms)
    };
    Ok([
        factor(WEIGHT_FACTORS[0])?,
        factor(WEIGHT_FACTORS[1])?,
        factor(WEIGHT_FACTORS[2])?,
    ])
}

/// The weight `W` of a 4-simplex: a homogeneous degree-3 element with 72 terms.
///
/// The three linear factors are multiplied in order and the product is
/// divided by `zeta_lm` (`l`, `m` the two largest vertices). Over the
/// symbolic field every coefficient must stay a polynomial after the
/// division; a non-polynomial coefficient is reported as an error.
pub fn weight_w<F: Field>(alg: &Algebra<F>, s: Simplex4) -> Result<GrassmannElement<F::Elem>> {
    weight_from_factors(alg, s, &weight_factors(alg, s)?)
}

/// `factors[0] factors[1] factors[2] / zeta_lm`, as in [`weight_w`].
pub fn weight_from_factors<F: Field>(
    alg: &Algebra<F>,
    s: Simplex4,
    factors: &[GrassmannElement<F::Elem>; 3],
) -> Result<GrassmannElement<F::Elem>> {
    let f = alg.field();
    let mut product = alg.one();
    for factor in factors {
        product = alg.mul(&product, factor)?;
    }
    let (l, m) = (s.at(4), s.at(5));
    let w = alg.scale(&product, &f.inv(&f.zeta_diff(l, m)?)?);
    if w.terms().iter().any(|(_, c)| !f.is_polynomial(c)) {
        return Err(Error::InexactWeightDivision(l, m));
    }
    Ok(w)
}
