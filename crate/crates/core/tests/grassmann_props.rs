use pachner4::field::{Field, PrimeField, ZetaAssignment, DEFAULT_PRIME};
use pachner4::grassmann::{Algebra, GeneratorTable, GrassmannElement, Monomial};
use proptest::prelude::*;

/// Eight generators: a, b of four tetrahedra.
fn algebra() -> Algebra<PrimeField> {
    let table =
        GeneratorTable::from_tetrahedra([[1, 2, 3, 4], [1, 2, 3, 5], [1, 2, 4, 5], [1, 3, 4, 5]])
            .unwrap();
    let z = ZetaAssignment::from_integer_pairs((1..=5).map(|v| (v, i64::from(v) * 7))).unwrap();
    Algebra::new(PrimeField::new(DEFAULT_PRIME, &z).unwrap(), table)
}

fn element(alg: &Algebra<PrimeField>, terms: &[(u8, i64)]) -> GrassmannElement<u64> {
    let f = alg.field();
    alg.from_terms(
        terms
            .iter()
            .map(|&(m, c)| (Monomial(u64::from(m)), f.from_i64(c))),
    )
    .unwrap()
}

fn terms() -> impl Strategy<Value = Vec<(u8, i64)>> {
    prop::collection::vec((any::<u8>(), -50i64..=50), 0..6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn associativity_and_unit(x in terms(), y in terms(), z in terms()) {
        let alg = algebra();
        let (x, y, z) = (element(&alg, &x), element(&alg, &y), element(&alg, &z));
        let left = alg.mul(&alg.mul(&x, &y).unwrap(), &z).unwrap();
        let right = alg.mul(&x, &alg.mul(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(alg.mul(&alg.one(), &x).unwrap(), x.clone());
        prop_assert_eq!(alg.mul(&x, &alg.one()).unwrap(), x);
    }

    #[test]
    fn distributivity(x in terms(), y in terms(), z in terms()) {
        let alg = algebra();
        let (x, y, z) = (element(&alg, &x), element(&alg, &y), element(&alg, &z));
        let left = alg.mul(&x, &alg.add(&y, &z).unwrap()).unwrap();
        let right = alg.add(&alg.mul(&x, &y).unwrap(), &alg.mul(&x, &z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn generators_anticommute(g in 0usize..8, h in 0usize..8) {
        let alg = algebra();
        let (x, y) = (alg.generator(g).unwrap(), alg.generator(h).unwrap());
        let xy = alg.mul(&x, &y).unwrap();
        let yx = alg.mul(&y, &x).unwrap();
        prop_assert_eq!(xy.clone(), alg.neg(&yx));
        if g == h {
            prop_assert!(xy.is_zero());
        }
    }

    /// Homogeneous elements of degrees p, q commute up to (-1)^(pq).
    #[test]
    fn graded_commutativity(x in terms(), y in terms(), p in 0u32..4, q in 0u32..4) {
        let alg = algebra();
        let keep = |t: &Vec<(u8, i64)>, d: u32| -> Vec<(u8, i64)> {
            t.iter().copied().filter(|(m, _)| m.count_ones() == d).collect()
        };
        let x = element(&alg, &keep(&x, p));
        let y = element(&alg, &keep(&y, q));
        let xy = alg.mul(&x, &y).unwrap();
        let yx = alg.mul(&y, &x).unwrap();
        if p * q % 2 == 1 {
            prop_assert_eq!(xy, alg.neg(&yx));
        } else {
            prop_assert_eq!(xy, yx);
        }
    }

    #[test]
    fn iterated_integral_antisymmetry(x in terms(), g in 0usize..8, h in 0usize..8) {
        prop_assume!(g != h);
        let alg = algebra();
        let x = element(&alg, &x);
        let gh = alg.berezin_iterated(&x, &[g, h]).unwrap();
        let hg = alg.berezin_iterated(&x, &[h, g]).unwrap();
        prop_assert_eq!(gh, alg.neg(&hg));
    }

    /// For `x` free of `g`: `∂/∂g (g x) = x` and `∫ x g dg = x`.
    #[test]
    fn derivative_and_integral_remove_a_generator(x in terms(), g in 0usize..8) {
        let alg = algebra();
        let free: Vec<(u8, i64)> = x.into_iter().filter(|(m, _)| m >> g & 1 == 0).collect();
        let x = element(&alg, &free);
        let gen = alg.generator(g).unwrap();
        prop_assert_eq!(alg.l_deriv(&alg.mul(&gen, &x).unwrap(), g).unwrap(), x.clone());
        prop_assert_eq!(alg.berezin(&alg.mul(&x, &gen).unwrap(), g).unwrap(), x.clone());
        prop_assert!(alg.berezin(&x, g).unwrap().is_zero());
        prop_assert!(alg.l_deriv(&x, g).unwrap().is_zero());
    }

    /// The left derivative is an odd derivation.
    #[test]
    fn leibniz_rule(x in terms(), y in terms(), g in 0usize..8, p in 0u32..4) {
        let alg = algebra();
        let x: Vec<(u8, i64)> = x.into_iter().filter(|(m, _)| m.count_ones() == p).collect();
        let (x, y) = (element(&alg, &x), element(&alg, &y));
        let lhs = alg.l_deriv(&alg.mul(&x, &y).unwrap(), g).unwrap();
        let first = alg.mul(&alg.l_deriv(&x, g).unwrap(), &y).unwrap();
        let second = alg.mul(&x, &alg.l_deriv(&y, g).unwrap()).unwrap();
        let second = if p % 2 == 1 { alg.neg(&second) } else { second };
        prop_assert_eq!(lhs, alg.add(&first, &second).unwrap());
    }
}

#[test]
fn two_generator_integral() {
    let alg = algebra();
    let (a, b) = (alg.generator(0).unwrap(), alg.generator(1).unwrap());
    let ab = alg.mul(&a, &b).unwrap();
    // ∫ a b da db: da acts first
    assert_eq!(
        alg.berezin_iterated(&ab, &[0, 1]).unwrap(),
        alg.neg(&alg.one())
    );
    assert_eq!(alg.berezin_iterated(&ab, &[1, 0]).unwrap(), alg.one());
    assert!(alg.berezin(&alg.one(), 0).unwrap().is_zero());
    assert_eq!(alg.berezin(&a, 0).unwrap(), alg.one());
}
