//! Finitely generated Grassmann algebra over a [`Field`].
//!
//! Generators are `a_t`, `b_t` for tetrahedra `t`, numbered densely by a
//! [`GeneratorTable`]. A monomial is a set of generators stored as a 64-bit
//! mask and stands for the product of its generators in increasing index
//! order. All signs are inversion counts on these masks.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::field::{fnv1a, Field};
use crate::Vertex;

/// Tetrahedron as a strictly increasing 4-tuple of vertices.
pub type Tet = [Vertex; 4];

pub(crate) fn write_label(f: &mut fmt::Formatter<'_>, vs: &[Vertex]) -> fmt::Result {
    if vs.iter().all(|&v| v < 10) {
        for v in vs {
            write!(f, "{v}")?;
        }
        Ok(())
    } else {
        let parts: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join("_"))
    }
}

/// Parses `1234` (single-digit labels) or `1_2_13_40`.
pub(crate) fn parse_label(s: &str, len: usize) -> Option<Vec<Vertex>> {
    let vs: Vec<Vertex> = if s.contains('_') {
        s.split('_')
            .map(|p| p.parse().ok())
            .collect::<Option<_>>()?
    } else {
        s.chars().map(|c| c.to_digit(10)).collect::<Option<_>>()?
    };
    (vs.len() == len).then_some(vs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GenKind {
    A,
    B,
}

/// Key of one generator: `a_t` or `b_t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenKey {
    pub tet: Tet,
    pub kind: GenKind,
}

impl GenKey {
    pub fn a(tet: Tet) -> Self {
        GenKey {
            tet,
            kind: GenKind::A,
        }
    }

    pub fn b(tet: Tet) -> Self {
        GenKey {
            tet,
            kind: GenKind::B,
        }
    }
}

impl fmt::Display for GenKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.kind {
            GenKind::A => "a",
            GenKind::B => "b",
        })?;
        write_label(f, &self.tet)
    }
}

impl FromStr for GenKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnknownGenerator(s.to_string());
        let kind = match s.chars().next() {
            Some('a') => GenKind::A,
            Some('b') => GenKind::B,
            _ => return Err(bad()),
        };
        let vs = parse_label(&s[1..], 4).ok_or_else(bad)?;
        let tet: Tet = [vs[0], vs[1], vs[2], vs[3]];
        if !tet.windows(2).all(|w| w[0] < w[1]) {
            return Err(bad());
        }
        Ok(GenKey { tet, kind })
    }
}

/// Dense numbering of generators: tetrahedra in lexicographic order, `a` before `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorTable {
    keys: Vec<GenKey>,
    index: HashMap<GenKey, usize>,
    fingerprint: u64,
}

impl GeneratorTable {
    pub const MAX_GENERATORS: usize = 64;

    pub fn from_tetrahedra(tets: impl IntoIterator<Item = Tet>) -> Result<Self> {
        let tets: BTreeSet<Tet> = tets.into_iter().collect();
        for t in &tets {
            if !t.windows(2).all(|w| w[0] < w[1]) || t[0] == 0 {
                return Err(Error::InvalidSimplex(
                    t.to_vec(),
                    "tetrahedron must be strictly increasing",
                ));
            }
        }
        let keys: Vec<GenKey> = tets
            .iter()
            .flat_map(|&t| [GenKey::a(t), GenKey::b(t)])
            .collect();
        if keys.len() > Self::MAX_GENERATORS {
            return Err(Error::TooManyGenerators(keys.len()));
        }
        let index = keys.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        let fingerprint = fnv1a(keys.iter().flat_map(|k| {
            k.tet
                .iter()
                .flat_map(|v| v.to_le_bytes())
                .chain([k.kind as u8])
        }));
        Ok(GeneratorTable {
            keys,
            index,
            fingerprint,
        })
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn keys(&self) -> &[GenKey] {
        &self.keys
    }

    pub fn key(&self, index: usize) -> GenKey {
        self.keys[index]
    }

    pub fn index(&self, key: GenKey) -> Result<usize> {
        self.index
            .get(&key)
            .copied()
            .ok_or_else(|| Error::UnknownGenerator(key.to_string()))
    }

    pub fn contains_tet(&self, tet: Tet) -> bool {
        self.index.contains_key(&GenKey::a(tet))
    }

    /// Mask of both generators of every listed tetrahedron.
    pub fn mask_of(&self, tets: impl IntoIterator<Item = Tet>) -> Result<Monomial> {
        let mut m = 0u64;
        for t in tets {
            m |= 1 << self.index(GenKey::a(t))?;
            m |= 1 << self.index(GenKey::b(t))?;
        }
        Ok(Monomial(m))
    }
}

/// Set of generator indices, ordered by (degree, mask value).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub u64);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn generator(index: usize) -> Self {
        assert!(index < 64, "generator index out of range");
        Monomial(1 << index)
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        Monomial(indices.into_iter().fold(0, |m, i| m | (1 << i)))
    }

    pub fn degree(self) -> u32 {
        self.0.count_ones()
    }

    pub fn contains(self, index: usize) -> bool {
        index < 64 && self.0 >> index & 1 == 1
    }

    pub fn is_disjoint(self, other: Monomial) -> bool {
        self.0 & other.0 == 0
    }

    pub fn union(self, other: Monomial) -> Monomial {
        Monomial(self.0 | other.0)
    }

    pub fn intersection(self, other: Monomial) -> Monomial {
        Monomial(self.0 & other.0)
    }

    pub fn without(self, index: usize) -> Monomial {
        Monomial(self.0 & !(1 << index))
    }

    /// Generator indices in increasing order.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            if m == 0 {
                None
            } else {
                let i = m.trailing_zeros() as usize;
                m &= m - 1;
                Some(i)
            }
        })
    }

    /// Product of two monomials as `(sign_is_negative, product)`, or `None`
    /// when they share a generator.
    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: Monomial) -> Option<(bool, Monomial)> {
        if !self.is_disjoint(other) {
            return None;
        }
        let mut inversions = 0u32;
        for h in other.indices() {
            inversions += (self.0 >> h).count_ones();
        }
        Some((inversions & 1 == 1, self.union(other)))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.indices()).finish()
    }
}

/// Sparse canonical element: sorted by monomial, no zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrassmannElement<E> {
    ctx: u64,
    terms: Vec<(Monomial, E)>,
}

impl<E> GrassmannElement<E> {
    pub fn terms(&self) -> &[(Monomial, E)] {
        &self.terms
    }

    /// Number of terms; emptiness is `is_zero`.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: Monomial) -> Option<&E> {
        self.terms
            .binary_search_by(|(x, _)| x.cmp(&m))
            .ok()
            .map(|i| &self.terms[i].1)
    }

    /// The set of degrees of the monomials present.
    pub fn degree_profile(&self) -> BTreeSet<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).collect()
    }

    /// Every monomial has degree `n`; the zero element is homogeneous of every degree.
    pub fn is_homogeneous(&self, n: u32) -> bool {
        self.terms.iter().all(|(m, _)| m.degree() == n)
    }

    /// Union of the generator sets of all monomials.
    pub fn support_generators(&self) -> Monomial {
        Monomial(self.terms.iter().fold(0, |acc, (m, _)| acc | m.0))
    }
}

/// A field together with a generator table; all element arithmetic goes through it.
#[derive(Debug, Clone)]
pub struct Algebra<F: Field> {
    field: F,
    table: Arc<GeneratorTable>,
    ctx: u64,
}

impl<F: Field> Algebra<F> {
    pub fn new(field: F, table: GeneratorTable) -> Self {
        let ctx = fnv1a(
            table
                .fingerprint
                .to_le_bytes()
                .into_iter()
                .chain(field.fingerprint().to_le_bytes()),
        );
        Algebra {
            field,
            table: Arc::new(table),
            ctx,
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn table(&self) -> &GeneratorTable {
        &self.table
    }

    fn check(&self, x: &GrassmannElement<F::Elem>) -> Result<()> {
        if x.ctx == self.ctx {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    fn check_generator(&self, g: usize) -> Result<()> {
        if g < self.table.len() {
            Ok(())
        } else {
            Err(Error::UnknownGenerator(format!("#{g}")))
        }
    }

    fn wrap(&self, terms: Vec<(Monomial, F::Elem)>) -> GrassmannElement<F::Elem> {
        GrassmannElement {
            ctx: self.ctx,
            terms,
        }
    }

    pub fn zero(&self) -> GrassmannElement<F::Elem> {
        self.wrap(Vec::new())
    }

    pub fn one(&self) -> GrassmannElement<F::Elem> {
        self.scalar(self.field.one())
    }

    pub fn scalar(&self, c: F::Elem) -> GrassmannElement<F::Elem> {
        self.monomial(Monomial::ONE, c)
    }

    pub fn monomial(&self, m: Monomial, c: F::Elem) -> GrassmannElement<F::Elem> {
        if self.field.is_zero(&c) {
            self.zero()
        } else {
            self.wrap(vec![(m, c)])
        }
    }

    /// The generator with dense index `g`.
    pub fn generator(&self, g: usize) -> Result<GrassmannElement<F::Elem>> {
        self.check_generator(g)?;
        Ok(self.monomial(Monomial::generator(g), self.field.one()))
    }

    pub fn gen(&self, key: GenKey) -> Result<GrassmannElement<F::Elem>> {
        self.generator(self.table.index(key)?)
    }

    pub fn a(&self, tet: Tet) -> Result<GrassmannElement<F::Elem>> {
        self.gen(GenKey::a(tet))
    }

    pub fn b(&self, tet: Tet) -> Result<GrassmannElement<F::Elem>> {
        self.gen(GenKey::b(tet))
    }

    /// Canonicalizes an arbitrary list of terms (duplicates summed, zeros dropped).
    pub fn from_terms(
        &self,
        terms: impl IntoIterator<Item = (Monomial, F::Elem)>,
    ) -> Result<GrassmannElement<F::Elem>> {
        let mut acc: FxHashMap<Monomial, F::Elem> = FxHashMap::default();
        for (m, c) in terms {
            if m.0 >> self.table.len() != 0 && self.table.len() < 64 {
                return Err(Error::UnknownGenerator(format!("{m:?}")));
            }
            match acc.get_mut(&m) {
                Some(x) => *x = self.field.add(x, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Ok(self.collect(acc))
    }

    fn collect(&self, acc: FxHashMap<Monomial, F::Elem>) -> GrassmannElement<F::Elem> {
        let mut terms: Vec<(Monomial, F::Elem)> = acc
            .into_iter()
            .filter(|(_, c)| !self.field.is_zero(c))
            .collect();
        terms.sort_unstable_by_key(|t| t.0);
        self.wrap(terms)
    }

    fn merge(
        &self,
        x: &GrassmannElement<F::Elem>,
        y: &GrassmannElement<F::Elem>,
        negate_y: bool,
    ) -> GrassmannElement<F::Elem> {
        let f = &self.field;
        let (a, b) = (&x.terms, &y.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let yv = |c: &F::Elem| if negate_y { f.neg(c) } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((b[j].0, yv(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let s = if negate_y {
                        f.sub(&a[i].1, &b[j].1)
                    } else {
                        f.add(&a[i].1, &b[j].1)
                    };
                    if !f.is_zero(&s) {
                        out.push((a[i].0, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (*m, yv(c))));
        self.wrap(out)
    }

    pub fn add(
        &self,
        x: &GrassmannElement<F::Elem>,
        y: &GrassmannElement<F::Elem>,
    ) -> Result<GrassmannElement<F::Elem>> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.merge(x, y, false))
    }

    pub fn sub(
        &self,
        x: &GrassmannElement<F::Elem>,
        y: &GrassmannElement<F::Elem>,
    ) -> Result<GrassmannElement<F::Elem>> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.merge(x, y, true))
    }

    pub fn neg(&self, x: &GrassmannElement<F::Elem>) -> GrassmannElement<F::Elem> {
        self.wrap(
            x.terms
                .iter()
                .map(|(m, c)| (*m, self.field.neg(c)))
                .collect(),
        )
    }

    pub fn scale(&self, x: &GrassmannElement<F::Elem>, c: &F::Elem) -> GrassmannElement<F::Elem> {
        if self.field.is_zero(c) {
            return self.zero();
        }
        GrassmannElement {
            ctx: x.ctx,
            terms: x
                .terms
                .iter()
                .map(|(m, x)| (*m, self.field.mul(x, c)))
                .collect(),
        }
    }

    /// Product in the Grassmann algebra.
    pub fn mul(
        &self,
        x: &GrassmannElement<F::Elem>,
        y: &GrassmannElement<F::Elem>,
    ) -> Result<GrassmannElement<F::Elem>> {
        self.mul_filtered(x, y, |_| true)
    }

    /// Product keeping only monomials accepted by `keep`.
    ///
    /// Used to drop partial products that cannot survive a later integration:
    /// if `keep` rejects every superset of a rejected monomial, then
    /// filtering each factor of a chain of products gives the same result as
    /// filtering once at the end.
    pub fn mul_filtered(
        &self,
        x: &GrassmannElement<F::Elem>,
        y: &GrassmannElement<F::Elem>,
        keep: impl Fn(Monomial) -> bool,
    ) -> Result<GrassmannElement<F::Elem>> {
        self.check(x)?;
        self.check(y)?;
        let f = &self.field;
        let mut acc: FxHashMap<Monomial, F::Elem> = FxHashMap::default();
        for (mx, cx) in &x.terms {
            for (my, cy) in &y.terms {
                let Some((negative, m)) = mx.mul(*my) else {
                    continue;
                };
                if !keep(m) {
                    continue;
                }
                let c = if negative { f.neg(cx) } else { cx.clone() };
                match acc.get_mut(&m) {
                    Some(slot) => f.mul_add_assign(slot, &c, cy),
                    None => {
                        acc.insert(m, f.mul(&c, cy));
                    }
                }
            }
        }
        Ok(self.collect(acc))
    }

    /// Berezin integral with respect to generator `g`: `∫ g dg = 1`, `∫ dg = 0`.
    /// A monomial containing `g` loses it after `g` is moved to the right end.
    pub fn berezin(
        &self,
        x: &GrassmannElement<F::Elem>,
        g: usize,
    ) -> Result<GrassmannElement<F::Elem>> {
        self.check(x)?;
        self.check_generator(g)?;
        let mut terms: Vec<(Monomial, F::Elem)> = x
            .terms
            .iter()
            .filter(|(m, _)| m.contains(g))
            .map(|(m, c)| {
                let above = (m.0 >> g >> 1).count_ones();
                let c = if above & 1 == 1 {
                    self.field.neg(c)
                } else {
                    c.clone()
                };
                (m.without(g), c)
            })
            .collect();
        terms.sort_unstable_by_key(|t| t.0);
        Ok(self.wrap(terms))
    }

    /// Iterated Berezin integral: integrates over `gens[0]` first.
    pub fn berezin_iterated(
        &self,
        x: &GrassmannElement<F::Elem>,
        gens: &[usize],
    ) -> Result<GrassmannElement<F::Elem>> {
        let mut acc = x.clone();
        for &g in gens {
            acc = self.berezin(&acc, g)?;
        }
        Ok(acc)
    }

    /// Left derivative: move `g` to the left end, then delete it.
    pub fn l_deriv(
        &self,
        x: &GrassmannElement<F::Elem>,
        g: usize,
    ) -> Result<GrassmannElement<F::Elem>> {
        self.check(x)?;
        self.check_generator(g)?;
        let below_mask = (1u64 << g) - 1;
        let mut terms: Vec<(Monomial, F::Elem)> = x
            .terms
            .iter()
            .filter(|(m, _)| m.contains(g))
            .map(|(m, c)| {
                let below = (m.0 & below_mask).count_ones();
                let c = if below & 1 == 1 {
                    self.field.neg(c)
                } else {
                    c.clone()
                };
                (m.without(g), c)
            })
            .collect();
        terms.sort_unstable_by_key(|t| t.0);
        Ok(self.wrap(terms))
    }

    /// Generator names of a monomial in increasing index order.
    pub fn monomial_names(&self, m: Monomial) -> Vec<String> {
        m.indices().map(|i| self.table.key(i).to_string()).collect()
    }

    /// One line per term, `<coeff> <gen> <gen> ...`, in canonical term order.
    pub fn format_lines(&self, x: &GrassmannElement<F::Elem>) -> Vec<String> {
        x.terms
            .iter()
            .map(|(m, c)| {
                let mut line = self.field.format(c);
                for name in self.monomial_names(*m) {
                    line.push(' ');
                    line.push_str(&name);
                }
                line
            })
            .collect()
    }

    /// Deterministic multi-line rendering; the zero element prints as `0`.
    pub fn format(&self, x: &GrassmannElement<F::Elem>) -> String {
        if x.is_zero() {
            "0".to_string()
        } else {
            self.format_lines(x).join("\n")
        }
    }
}
