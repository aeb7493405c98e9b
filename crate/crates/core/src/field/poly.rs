//! Sparse multivariate polynomials over the rationals.
//!
//! Terms are kept sorted by descending graded-lexicographic order of their
//! exponent vectors, so the first term is the leading term and structural
//! equality is polynomial equality.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Maximum number of indeterminates.
pub const MAX_VARS: usize = 16;

/// Exponent vector, ordered graded-lexicographically (total degree first,
/// then variable 0 most significant).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Exponents([u8; MAX_VARS]);

impl Exponents {
    pub fn var(i: usize) -> Self {
        let mut e = [0u8; MAX_VARS];
        e[i] = 1;
        Exponents(e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&d| u32::from(d)).sum()
    }

    pub fn get(&self, i: usize) -> u8 {
        self.0[i]
    }

    fn with(&self, i: usize, d: u8) -> Self {
        let mut e = self.0;
        e[i] = d;
        Exponents(e)
    }

    fn mul(&self, other: &Self) -> Self {
        let mut e = [0u8; MAX_VARS];
        for (k, slot) in e.iter_mut().enumerate() {
            *slot = self.0[k]
                .checked_add(other.0[k])
                .expect("exponent overflow");
        }
        Exponents(e)
    }

    fn div(&self, other: &Self) -> Option<Self> {
        let mut e = [0u8; MAX_VARS];
        for (k, slot) in e.iter_mut().enumerate() {
            *slot = self.0[k].checked_sub(other.0[k])?;
        }
        Some(Exponents(e))
    }

    fn is_one(&self) -> bool {
        self.0.iter().all(|&d| d == 0)
    }
}

impl Ord for Exponents {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exponents {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Exponents {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.0.iter().rposition(|&d| d > 0).map_or(0, |p| p + 1);
        write!(f, "{:?}", &self.0[..last])
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Exponents, BigRational)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Poly {
                terms: vec![(Exponents::default(), c)],
            }
        }
    }

    pub fn var(i: usize) -> Self {
        Poly {
            terms: vec![(Exponents::var(i), BigRational::one())],
        }
    }

    fn from_map(map: BTreeMap<Exponents, BigRational>) -> Self {
        Poly {
            terms: map
                .into_iter()
                .rev()
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    pub fn terms(&self) -> &[(Exponents, BigRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.iter().all(|(e, _)| e.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.first().map_or(0, |(e, _)| e.total_degree())
    }

    pub fn neg(&self) -> Self {
        Poly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ea, ca) = &self.terms[i];
            let (eb, cb) = &other.terms[j];
            match ea.cmp(eb) {
                Ordering::Greater => {
                    out.push((*ea, ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((*eb, cb.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let s = ca + cb;
                    if !s.is_zero() {
                        out.push((*ea, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Poly { terms: out }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].0, &other.terms[0].1);
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        let mut acc: BTreeMap<Exponents, BigRational> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let c = ca * cb;
                acc.entry(ea.mul(eb)).and_modify(|x| *x += &c).or_insert(c);
            }
        }
        Self::from_map(acc)
    }

    fn mul_term(&self, e: &Exponents, c: &BigRational) -> Self {
        Poly {
            terms: self.terms.iter().map(|(x, y)| (x.mul(e), y * c)).collect(),
        }
    }

    /// Returns `self / divisor` when the division leaves no remainder.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        if divisor.is_constant() {
            return Some(self.scale(&divisor.terms[0].1.recip()));
        }
        let (lead_e, lead_c) = &divisor.terms[0];
        let mut rem = self.clone();
        let mut quot: BTreeMap<Exponents, BigRational> = BTreeMap::new();
        while let Some((re, rc)) = rem.terms.first() {
            let e = re.div(lead_e)?;
            let c = rc / lead_c;
            rem = rem.sub(&divisor.mul_term(&e, &c));
            quot.insert(e, c);
        }
        Some(Self::from_map(quot))
    }

    /// Scales so that the leading coefficient is 1.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => Self::zero(),
            Some(c) if c.is_one() => self.clone(),
            Some(c) => self.scale(&c.recip()),
        }
    }

    /// Evaluates at rational values of the indeterminates.
    pub fn eval(&self, values: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (k, v) in values.iter().enumerate() {
                for _ in 0..e.get(k) {
                    t *= v;
                }
            }
            acc += t;
        }
        acc
    }

    /// Degree in each variable.
    fn degrees(&self) -> [u8; MAX_VARS] {
        let mut d = [0u8; MAX_VARS];
        for (e, _) in &self.terms {
            for (slot, &x) in d.iter_mut().zip(&e.0) {
                *slot = (*slot).max(x);
            }
        }
        d
    }

    fn degree_in(&self, v: usize) -> u8 {
        self.terms.iter().map(|(e, _)| e.get(v)).max().unwrap_or(0)
    }

    /// Coefficients of `self` viewed as a univariate polynomial in `v`.
    fn coeffs_in(&self, v: usize) -> Vec<Poly> {
        let deg = usize::from(self.degree_in(v));
        let mut maps: Vec<BTreeMap<Exponents, BigRational>> = vec![BTreeMap::new(); deg + 1];
        for (e, c) in &self.terms {
            maps[usize::from(e.get(v))].insert(e.with(v, 0), c.clone());
        }
        maps.into_iter().map(Self::from_map).collect()
    }

    fn from_coeffs_in(coeffs: &[Poly], v: usize) -> Self {
        let mut acc = Poly::zero();
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let shifted = Poly {
                terms: c
                    .terms
                    .iter()
                    .map(|(e, x)| (e.with(v, k as u8), x.clone()))
                    .collect(),
            };
            acc = acc.add(&shifted);
        }
        acc
    }

    /// Monic greatest common divisor. `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.is_constant() || other.is_constant() {
            return Self::one();
        }
        if self == other {
            return self.monic();
        }
        if self.terms.len() == 1 && other.terms.len() == 1 {
            let mut e = [0u8; MAX_VARS];
            for (k, slot) in e.iter_mut().enumerate() {
                *slot = self.terms[0].0 .0[k].min(other.terms[0].0 .0[k]);
            }
            return Poly {
                terms: vec![(Exponents(e), BigRational::one())],
            };
        }
        // A variable occurring in only one operand reduces the problem to the
        // gcd of the other operand with that operand's coefficients;
        // otherwise eliminate the highest variable.
        let (da, db) = (self.degrees(), other.degrees());
        if let Some(v) = (0..MAX_VARS).find(|&v| (da[v] == 0) != (db[v] == 0)) {
            let (with_v, without) = if da[v] == 0 {
                (other, self)
            } else {
                (self, other)
            };
            let mut coeffs = with_v.coeffs_in(v);
            coeffs.sort_by_key(|c| c.terms.len());
            let mut g = without.clone();
            for c in coeffs.iter().filter(|c| !c.is_zero()) {
                g = g.gcd(c);
                if g.is_one() {
                    break;
                }
            }
            return g.monic();
        }
        let v = (0..MAX_VARS)
            .rev()
            .find(|&v| da[v] > 0)
            .expect("non-constant operands");
        let ca = self.content_in(v);
        let cb = other.content_in(v);
        let pa = self.div_exact(&ca).expect("content divides");
        let pb = other.div_exact(&cb).expect("content divides");
        let g = primitive_prs(pa, pb, v);
        ca.gcd(&cb).mul(&g).monic()
    }

    /// gcd of the coefficients w.r.t. `v`; a polynomial free of `v`.
    fn content_in(&self, v: usize) -> Self {
        let mut g = Poly::zero();
        for c in self.coeffs_in(v) {
            if c.is_zero() {
                continue;
            }
            g = g.gcd(&c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    fn primitive_part_in(&self, v: usize) -> Self {
        let c = self.content_in(v);
        self.div_exact(&c).expect("content divides")
    }

    pub fn fmt_with(
        &self,
        f: &mut fmt::Formatter<'_>,
        name: &dyn Fn(usize) -> String,
    ) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (e, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if n == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || e.is_one() {
                factors.push(abs.to_string());
            }
            for k in 0..MAX_VARS {
                match e.get(k) {
                    0 => {}
                    1 => factors.push(name(k)),
                    d => factors.push(format!("{}^{d}", name(k))),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

/// Leading coefficient w.r.t. `v` of a polynomial given by its coefficient list.
fn lead_coeff(coeffs: &[Poly]) -> &Poly {
    coeffs.last().expect("non-empty")
}

/// `lc(g)^k * f mod g` in `Q[others][v]`, for some `k >= 0`.
fn pseudo_rem(f: &Poly, g: &Poly, v: usize) -> Poly {
    let gc = g.coeffs_in(v);
    let dg = gc.len() - 1;
    let lg = lead_coeff(&gc).clone();
    let mut r = f.coeffs_in(v);
    while r.len() > dg && r.iter().any(|c| !c.is_zero()) {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - dg;
        for c in r.iter_mut() {
            *c = c.mul(&lg);
        }
        for (k, gk) in gc.iter().enumerate() {
            r[k + shift] = r[k + shift].sub(&gk.mul(&lr));
        }
        debug_assert!(r[dr].is_zero());
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    Poly::from_coeffs_in(&r, v)
}

/// gcd of two polynomials primitive w.r.t. `v` and both of positive degree in `v`.
fn primitive_prs(a: Poly, b: Poly, v: usize) -> Poly {
    let (mut f, mut g) = if a.degree_in(v) >= b.degree_in(v) {
        (a, b)
    } else {
        (b, a)
    };
    loop {
        let r = pseudo_rem(&f, &g, v);
        if r.is_zero() {
            return g.primitive_part_in(v);
        }
        if r.degree_in(v) == 0 {
            return Poly::one();
        }
        f = g;
        g = r.primitive_part_in(v);
    }
}

impl From<i64> for Poly {
    fn from(n: i64) -> Self {
        Poly::constant(BigRational::from_integer(BigInt::from(n)))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, &|k| format!("x{k}"))
    }
}
