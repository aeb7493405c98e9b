use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{fnv1a, Field, ZetaAssignment};
use crate::error::{Error, Result};
use crate::Vertex;

/// Exact rationals with concrete vertex coordinates.
#[derive(Debug, Clone)]
pub struct RationalField {
    zeta: Arc<ZetaAssignment>,
    fingerprint: u64,
}

impl RationalField {
    pub fn new(zeta: ZetaAssignment) -> Self {
        let fingerprint = fnv1a(
            b"rational"
                .iter()
                .copied()
                .chain(zeta.to_string().into_bytes()),
        );
        RationalField {
            zeta: Arc::new(zeta),
            fingerprint,
        }
    }

    pub fn assignment(&self) -> &ZetaAssignment {
        &self.zeta
    }
}

impl Field for RationalField {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_ratio(&self, num: i64, den: i64) -> Result<BigRational> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(BigRational::new(num.into(), den.into()))
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn inv(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(a.recip())
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn mul_add_assign(&self, acc: &mut BigRational, a: &BigRational, b: &BigRational) {
        *acc += a * b;
    }

    fn zeta(&self, v: Vertex) -> Result<BigRational> {
        self.zeta.get(v).cloned().ok_or(Error::UnassignedVertex(v))
    }

    fn format(&self, a: &BigRational) -> String {
        a.to_string()
    }

    fn describe(&self) -> String {
        format!("rational zeta={}", self.zeta)
    }

    fn fingerprint(&self) -> u64 {
        self.fingerprint
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_is_exact() {
        let f = RationalField::new(ZetaAssignment::identity(1..=5));
        let x = f.from_ratio(3, 4).unwrap();
        let y = f.from_ratio(1, 4).unwrap();
        assert!(f.is_one(&f.add(&x, &y)));
        assert_eq!(f.mul(&x, &f.inv(&x).unwrap()), f.one());
        assert_eq!(f.inv(&f.zero()), Err(Error::DivisionByZero));
        assert_eq!(f.from_ratio(1, 0), Err(Error::DivisionByZero));
        assert_eq!(f.from_ratio(2, -4).unwrap(), f.from_ratio(-1, 2).unwrap());
    }

    #[test]
    fn zeta_diff() {
        let f = RationalField::new(ZetaAssignment::identity(1..=5));
        assert_eq!(f.zeta_diff(3, 4).unwrap(), f.from_i64(-1));
        let d = f.add(&f.zeta_diff(1, 4).unwrap(), &f.zeta_diff(4, 1).unwrap());
        assert!(f.is_zero(&d));
        assert_eq!(f.zeta_diff(6, 1), Err(Error::UnassignedVertex(6)));
    }
}
