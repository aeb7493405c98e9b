use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::PrimeField;
use crate::error::{Error, Result};
use crate::Vertex;

/// Exact coordinate of a vertex.
pub type ZetaValue = BigRational;

/// Concrete vertex coordinates, pairwise distinct.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ZetaAssignment {
    values: BTreeMap<Vertex, ZetaValue>,
}

impl ZetaAssignment {
    pub fn new(pairs: impl IntoIterator<Item = (Vertex, ZetaValue)>) -> Result<Self> {
        let mut values = BTreeMap::new();
        let mut seen: BTreeMap<ZetaValue, Vertex> = BTreeMap::new();
        for (v, x) in pairs {
            if v == 0 {
                return Err(Error::InvalidVertex);
            }
            if values.contains_key(&v) {
                return Err(Error::DuplicateVertex(v));
            }
            if let Some(&w) = seen.get(&x) {
                return Err(Error::DuplicateZeta(w, v));
            }
            seen.insert(x.clone(), v);
            values.insert(v, x);
        }
        Ok(ZetaAssignment { values })
    }

    pub fn from_integer_pairs(pairs: impl IntoIterator<Item = (Vertex, i64)>) -> Result<Self> {
        Self::new(
            pairs
                .into_iter()
                .map(|(v, x)| (v, BigRational::from_integer(BigInt::from(x)))),
        )
    }

    /// `zeta_v = v` for every listed vertex.
    pub fn identity(vertices: impl IntoIterator<Item = Vertex>) -> Self {
        Self::from_integer_pairs(vertices.into_iter().map(|v| (v, i64::from(v))))
            .expect("distinct vertices give distinct values")
    }

    pub fn get(&self, v: Vertex) -> Option<&ZetaValue> {
        self.values.get(&v)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vertex, &ZetaValue)> + '_ {
        self.values.iter().map(|(&v, x)| (v, x))
    }

    pub fn covers(&self, vertices: impl IntoIterator<Item = Vertex>) -> Result<()> {
        for v in vertices {
            if !self.values.contains_key(&v) {
                return Err(Error::UnassignedVertex(v));
            }
        }
        Ok(())
    }
}

impl fmt::Display for ZetaAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (n, (v, x)) in self.values.iter().enumerate() {
            if n > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}:{x}")?;
        }
        f.write_str("]")
    }
}

/// How random coordinates are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleMode {
    /// Rationals `n/d` with `|n| <= 2^20`, `1 <= d <= 2^10`.
    Rational,
    /// Uniform residues in `[0, p)`.
    Prime(u64),
}

const RATIONAL_NUM_BOUND: i64 = 1 << 20;
const RATIONAL_DEN_BOUND: i64 = 1 << 10;

/// Draws pairwise-distinct coordinates for `vertices`, deterministically from `seed`.
pub fn random_assignment(
    vertices: impl IntoIterator<Item = Vertex>,
    seed: u64,
    mode: SampleMode,
) -> Result<ZetaAssignment> {
    let vertices: Vec<Vertex> = vertices.into_iter().collect();
    let available: u128 = match mode {
        SampleMode::Prime(p) => {
            PrimeField::check_modulus(p)?;
            u128::from(p)
        }
        SampleMode::Rational => u128::MAX,
    };
    if vertices.len() as u128 > available {
        return Err(Error::DegenerateRange {
            needed: vertices.len(),
            available,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs: Vec<(Vertex, ZetaValue)> = Vec::with_capacity(vertices.len());
    for &v in &vertices {
        loop {
            let x = match mode {
                SampleMode::Prime(p) => BigRational::from_integer(rng.gen_range(0..p).into()),
                SampleMode::Rational => {
                    let n = rng.gen_range(-RATIONAL_NUM_BOUND..=RATIONAL_NUM_BOUND);
                    let d = rng.gen_range(1..=RATIONAL_DEN_BOUND);
                    BigRational::new(n.into(), d.into())
                }
            };
            if pairs.iter().all(|(_, y)| *y != x) {
                pairs.push((v, x));
                break;
            }
        }
    }
    ZetaAssignment::new(pairs)
}

/// Parses `<vertex> <p>/<q>` lines (a bare integer is also accepted); `#` starts a comment line.
pub fn parse_zeta_file(text: &str) -> Result<ZetaAssignment> {
    let mut pairs = Vec::new();
    let mut seen = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: String| Error::Parse { line: line_no, msg };
        let mut parts = line.split_whitespace();
        let (Some(v), Some(x), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(err(format!("expected `<vertex> <p>/<q>`, got `{line}`")));
        };
        let v: Vertex = v
            .parse()
            .ok()
            .filter(|&v| v > 0)
            .ok_or_else(|| err(format!("invalid vertex `{v}`")))?;
        let value = parse_rational(x).ok_or_else(|| err(format!("invalid rational `{x}`")))?;
        if seen.insert(v, line_no).is_some() {
            return Err(err(format!("vertex {v} assigned twice")));
        }
        pairs.push((v, value));
    }
    ZetaAssignment::new(pairs)
}

pub(crate) fn parse_rational(s: &str) -> Option<BigRational> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.parse::<BigInt>().ok()?, d.parse::<BigInt>().ok()?),
        None => (s.parse::<BigInt>().ok()?, BigInt::from(1)),
    };
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}
