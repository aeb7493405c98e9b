use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::{Poly, MAX_VARS};
use super::{fnv1a, Field};
use crate::error::{Error, Result};
use crate::Vertex;

/// A reduced fraction of polynomials: `gcd(num, den) = 1`, `den` monic,
/// and `den = 1` whenever `num = 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn from_poly(p: Poly) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    /// Builds `num / den` in canonical form.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::from_poly(Poly::zero());
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_one() {
                (num, den)
            } else {
                (
                    num.div_exact(&g).expect("gcd divides numerator"),
                    den.div_exact(&g).expect("gcd divides denominator"),
                )
            }
        };
        let lc = den.leading_coeff().expect("nonzero denominator").clone();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let s = lc.recip();
            RatFunc {
                num: num.scale(&s),
                den: den.scale(&s),
            }
        }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?})/({:?})", self.num, self.den)
    }
}

/// Rational functions over the rationals in one indeterminate per vertex.
#[derive(Debug, Clone)]
pub struct RationalFunctionField {
    vertices: Arc<Vec<Vertex>>,
    fingerprint: u64,
}

impl RationalFunctionField {
    /// One indeterminate `z<v>` for each listed vertex (at most 16).
    pub fn new(vertices: impl IntoIterator<Item = Vertex>) -> Result<Self> {
        let mut vs: Vec<Vertex> = vertices.into_iter().collect();
        vs.sort_unstable();
        vs.dedup();
        if vs.len() > MAX_VARS {
            return Err(Error::TooManyVariables {
                max: MAX_VARS,
                got: vs.len(),
            });
        }
        if vs.first() == Some(&0) {
            return Err(Error::InvalidVertex);
        }
        let fingerprint = fnv1a(
            b"ratfunc"
                .iter()
                .copied()
                .chain(vs.iter().flat_map(|v| v.to_le_bytes())),
        );
        Ok(RationalFunctionField {
            vertices: Arc::new(vs),
            fingerprint,
        })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    fn var_name(&self, k: usize) -> String {
        format!("z{}", self.vertices[k])
    }

    /// Substitutes rational coordinates (indexed like [`Self::vertices`]).
    pub fn evaluate(&self, x: &RatFunc, values: &[BigRational]) -> Result<BigRational> {
        let d = x.den.eval(values);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(x.num.eval(values) / d)
    }
}

impl Field for RationalFunctionField {
    type Elem = RatFunc;

    fn zero(&self) -> RatFunc {
        RatFunc::from_poly(Poly::zero())
    }

    fn one(&self) -> RatFunc {
        RatFunc::from_poly(Poly::one())
    }

    fn from_i64(&self, n: i64) -> RatFunc {
        RatFunc::from_poly(Poly::from(n))
    }

    fn from_ratio(&self, num: i64, den: i64) -> Result<RatFunc> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFunc::from_poly(Poly::constant(BigRational::new(
            num.into(),
            den.into(),
        ))))
    }

    fn add(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        if a.num.is_zero() {
            return b.clone();
        }
        if b.num.is_zero() {
            return a.clone();
        }
        if a.den == b.den {
            let num = a.num.add(&b.num);
            if a.den.is_one() {
                return RatFunc::from_poly(num);
            }
            return RatFunc::reduce(num, a.den.clone());
        }
        let g = a.den.gcd(&b.den);
        let ad = a.den.div_exact(&g).expect("gcd divides");
        let bd = b.den.div_exact(&g).expect("gcd divides");
        let num = a.num.mul(&bd).add(&b.num.mul(&ad));
        RatFunc::reduce(num, ad.mul(&b.den))
    }

    fn sub(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        self.add(a, &self.neg(b))
    }

    fn mul(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        if a.num.is_zero() || b.num.is_zero() {
            return self.zero();
        }
        if a.den.is_one() && b.den.is_one() {
            return RatFunc::from_poly(a.num.mul(&b.num));
        }
        let g1 = a.num.gcd(&b.den);
        let g2 = b.num.gcd(&a.den);
        let an = a.num.div_exact(&g1).expect("gcd divides");
        let bd = b.den.div_exact(&g1).expect("gcd divides");
        let bn = b.num.div_exact(&g2).expect("gcd divides");
        let ad = a.den.div_exact(&g2).expect("gcd divides");
        // cross-cancelled operands are already coprime
        let num = an.mul(&bn);
        let den = ad.mul(&bd);
        let lc = den.leading_coeff().expect("nonzero").clone();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let s = lc.recip();
            RatFunc {
                num: num.scale(&s),
                den: den.scale(&s),
            }
        }
    }

    fn neg(&self, a: &RatFunc) -> RatFunc {
        RatFunc {
            num: a.num.neg(),
            den: a.den.clone(),
        }
    }

    fn inv(&self, a: &RatFunc) -> Result<RatFunc> {
        if a.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let lc = a.num.leading_coeff().expect("nonzero").recip();
        Ok(RatFunc {
            num: a.den.scale(&lc),
            den: a.num.scale(&lc),
        })
    }

    fn is_zero(&self, a: &RatFunc) -> bool {
        a.num.is_zero()
    }

    fn zeta(&self, v: Vertex) -> Result<RatFunc> {
        let k = self
            .vertices
            .binary_search(&v)
            .map_err(|_| Error::UnassignedVertex(v))?;
        Ok(RatFunc::from_poly(Poly::var(k)))
    }

    fn is_polynomial(&self, a: &RatFunc) -> bool {
        a.is_polynomial()
    }

    fn is_exact_symbolic(&self) -> bool {
        true
    }

    fn format(&self, a: &RatFunc) -> String {
        struct Show<'a>(&'a Poly, &'a RationalFunctionField);
        impl fmt::Display for Show<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.fmt_with(f, &|k| self.1.var_name(k))
            }
        }
        let num = Show(&a.num, self).to_string();
        if a.den.is_one() {
            if a.num.terms().len() > 1 {
                format!("({num})")
            } else {
                num
            }
        } else {
            format!("({num})/({})", Show(&a.den, self))
        }
    }

    fn describe(&self) -> String {
        let names: Vec<String> = self.vertices.iter().map(|v| format!("z{v}")).collect();
        format!("symbolic Q({})", names.join(","))
    }

    fn fingerprint(&self) -> u64 {
        self.fingerprint
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field() -> RationalFunctionField {
        RationalFunctionField::new(1..=6).unwrap()
    }

    #[test]
    fn cancellation() {
        let f = field();
        let d = f.zeta_diff(1, 2).unwrap();
        assert_eq!(f.div(&d, &d).unwrap(), f.one());
        let a = f.mul(&f.zeta_diff(3, 4).unwrap(), &d);
        let b = f.mul(&f.zeta_diff(5, 6).unwrap(), &d);
        let q = f.div(&a, &b).unwrap();
        assert_eq!(
            q,
            f.div(&f.zeta_diff(3, 4).unwrap(), &f.zeta_diff(5, 6).unwrap())
                .unwrap()
        );
        assert_eq!(f.mul(&q, &f.div(&b, &a).unwrap()), f.one());
        assert_eq!(f.format(&q), "(z3 - z4)/(z5 - z6)");
    }

    #[test]
    fn zeta_diffs() {
        let f = field();
        assert_eq!(f.format(&f.zeta_diff(4, 5).unwrap()), "(z4 - z5)");
        let s = f.add(
            &f.add(&f.zeta_diff(1, 3).unwrap(), &f.zeta_diff(3, 6).unwrap()),
            &f.zeta_diff(6, 1).unwrap(),
        );
        assert!(f.is_zero(&s));
        assert_eq!(f.zeta(7), Err(Error::UnassignedVertex(7)));
        assert_eq!(f.inv(&f.zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn fraction_sums_reduce() {
        let f = field();
        let z12 = f.zeta_diff(1, 2).unwrap();
        let z23 = f.zeta_diff(2, 3).unwrap();
        let z13 = f.zeta_diff(1, 3).unwrap();
        // 1/z12 + 1/z23 = z13 / (z12 z23)
        let lhs = f.add(&f.inv(&z12).unwrap(), &f.inv(&z23).unwrap());
        let rhs = f.div(&z13, &f.mul(&z12, &z23)).unwrap();
        assert_eq!(lhs, rhs);
        // z12/z13 + z23/z13 = 1
        let s = f.add(&f.div(&z12, &z13).unwrap(), &f.div(&z23, &z13).unwrap());
        assert_eq!(s, f.one());
    }

    #[test]
    fn too_many_variables() {
        assert!(matches!(
            RationalFunctionField::new(1..=17),
            Err(Error::TooManyVariables { max: 16, got: 17 })
        ));
    }
}
