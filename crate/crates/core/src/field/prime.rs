use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use super::{fnv1a, Field, ZetaAssignment};
use crate::error::{Error, Result};
use crate::Vertex;

/// 2^61 - 1
pub const DEFAULT_PRIME: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    reduce(u128::from(a) * u128::from(b), m)
}

/// `x mod m` for `x < m^2 + m`; shift-and-add when `m` is `2^61 - 1`.
#[inline]
fn reduce(x: u128, m: u64) -> u64 {
    if m == DEFAULT_PRIME {
        let r = (x as u64 & DEFAULT_PRIME) + (x >> 61) as u64;
        let r = (r & DEFAULT_PRIME) + (r >> 61);
        if r >= DEFAULT_PRIME {
            r - DEFAULT_PRIME
        } else {
            r
        }
    } else {
        (x % u128::from(m)) as u64
    }
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Integers modulo a prime `p < 2^63`, with vertex coordinates given as residues.
#[derive(Debug, Clone)]
pub struct PrimeField {
    p: u64,
    zeta: Arc<BTreeMap<Vertex, u64>>,
    fingerprint: u64,
}

impl PrimeField {
    /// Builds the field and maps every coordinate `num/den` to `num * den^-1 mod p`.
    /// Coordinates that collide modulo `p` are rejected.
    pub fn new(p: u64, zeta: &ZetaAssignment) -> Result<Self> {
        Self::check_modulus(p)?;
        let mut reduced = BTreeMap::new();
        let mut seen: BTreeMap<u64, Vertex> = BTreeMap::new();
        for (v, x) in zeta.iter() {
            let r = reduce_rational(p, x)?;
            if let Some(&w) = seen.get(&r) {
                return Err(Error::DuplicateZeta(w, v));
            }
            seen.insert(r, v);
            reduced.insert(v, r);
        }
        let fingerprint = fnv1a(
            p.to_le_bytes().into_iter().chain(
                reduced
                    .iter()
                    .flat_map(|(v, x)| v.to_le_bytes().into_iter().chain(x.to_le_bytes())),
            ),
        );
        Ok(PrimeField {
            p,
            zeta: Arc::new(reduced),
            fingerprint,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn check_modulus(p: u64) -> Result<()> {
        if p >= 1 << 63 || !is_prime_u64(p) {
            return Err(Error::InvalidPrime(p));
        }
        Ok(())
    }

    pub fn residues(&self) -> &BTreeMap<Vertex, u64> {
        &self.zeta
    }

    pub fn from_rational(&self, x: &BigRational) -> Result<u64> {
        reduce_rational(self.p, x)
    }
}

fn reduce_bigint(p: u64, n: &BigInt) -> u64 {
    let r = n.mod_floor(&BigInt::from(p));
    debug_assert!(!r.is_negative());
    r.to_u64().expect("residue fits in u64")
}

fn reduce_rational(p: u64, x: &BigRational) -> Result<u64> {
    let num = reduce_bigint(p, x.numer());
    let den = reduce_bigint(p, x.denom());
    if den == 0 {
        return Err(Error::DivisionByZero);
    }
    Ok(mul_mod(num, pow_mod(den, p - 2, p), p))
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn from_i64(&self, n: i64) -> u64 {
        let p = i128::from(self.p);
        (i128::from(n).rem_euclid(p)) as u64
    }

    fn from_ratio(&self, num: i64, den: i64) -> Result<u64> {
        self.div(&self.from_i64(num), &self.from_i64(den))
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.p)
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn inv(&self, a: &u64) -> Result<u64> {
        if *a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(pow_mod(*a, self.p - 2, self.p))
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn mul_add_assign(&self, acc: &mut u64, a: &u64, b: &u64) {
        *acc = reduce(u128::from(*acc) + u128::from(*a) * u128::from(*b), self.p);
    }

    fn zeta(&self, v: Vertex) -> Result<u64> {
        self.zeta.get(&v).copied().ok_or(Error::UnassignedVertex(v))
    }

    fn format(&self, a: &u64) -> String {
        a.to_string()
    }

    fn describe(&self) -> String {
        let zs: Vec<String> = self.zeta.iter().map(|(v, x)| format!("{v}:{x}")).collect();
        format!("prime-field p={} zeta=[{}]", self.p, zs.join(" "))
    }

    fn fingerprint(&self) -> u64 {
        self.fingerprint
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field() -> PrimeField {
        PrimeField::new(101, &ZetaAssignment::identity(1..=5)).unwrap()
    }

    #[test]
    fn mersenne_reduction_matches_division() {
        let p = DEFAULT_PRIME;
        let mut x: u64 = 0x9E37_79B9_7F4A_7C15;
        for _ in 0..10_000 {
            x = x
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            let (a, b, c) = (x % p, (x >> 3) % p, x.rotate_left(17) % p);
            let wide = u128::from(c) + u128::from(a) * u128::from(b);
            assert_eq!(reduce(wide, p), (wide % u128::from(p)) as u64);
        }
        for v in [0, 1, p - 1, p, 2 * p - 1] {
            let wide = u128::from(v) * u128::from(p - 1);
            assert_eq!(reduce(wide, p), (wide % u128::from(p)) as u64);
        }
    }

    #[test]
    fn primality() {
        assert!(is_prime_u64(DEFAULT_PRIME));
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(561));
        assert!(!is_prime_u64(DEFAULT_PRIME - 2));
        // strong pseudoprime to bases 2..=23 but not 29/31/37
        assert!(!is_prime_u64(3_825_123_056_546_413_051));
    }

    #[test]
    fn rejects_composite_modulus() {
        let z = ZetaAssignment::identity(1..=3);
        assert_eq!(
            PrimeField::new(91, &z).unwrap_err(),
            Error::InvalidPrime(91)
        );
        assert_eq!(
            PrimeField::new(1 << 63, &z).unwrap_err(),
            Error::InvalidPrime(1 << 63)
        );
        assert!(PrimeField::new(DEFAULT_PRIME, &z).is_ok());
    }

    #[test]
    fn arithmetic() {
        let f = field();
        assert_eq!(f.add(&100, &5), 4);
        assert_eq!(f.sub(&3, &5), 99);
        assert_eq!(f.neg(&0), 0);
        assert_eq!(f.from_i64(-1), 100);
        let three_quarters = f.from_ratio(3, 4).unwrap();
        let quarter = f.from_ratio(1, 4).unwrap();
        assert_eq!(f.add(&three_quarters, &quarter), 1);
        for x in 1..101 {
            assert_eq!(f.mul(&x, &f.inv(&x).unwrap()), 1);
        }
        assert_eq!(f.inv(&0), Err(Error::DivisionByZero));
    }

    #[test]
    fn zeta_diff() {
        let f = field();
        assert_eq!(f.zeta_diff(3, 4).unwrap(), f.from_i64(-1));
        assert_eq!(f.zeta_diff(3, 3), Err(Error::SameVertex(3)));
        assert_eq!(f.zeta_diff(3, 9), Err(Error::UnassignedVertex(9)));
    }

    #[test]
    fn reduction_collisions_are_rejected() {
        let z = ZetaAssignment::from_integer_pairs([(1, 1), (2, 102)]).unwrap();
        assert_eq!(
            PrimeField::new(101, &z).unwrap_err(),
            Error::DuplicateZeta(1, 2)
        );
        // 1/2 and 51 coincide mod 101
        let z = ZetaAssignment::new([
            (1, BigRational::new(1.into(), 2.into())),
            (2, BigRational::from_integer(51.into())),
        ])
        .unwrap();
        assert_eq!(
            PrimeField::new(101, &z).unwrap_err(),
            Error::DuplicateZeta(1, 2)
        );
    }
}
