//! Text form of an expanded weight: one term per line,
//! `<sign> z<i><j> z<k><l> <gen> <gen> <gen>`, labels `1..5` standing for the
//! vertices of a simplex in increasing order.

use super::Simplex4;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::grassmann::{parse_label, Algebra, GenKey, GrassmannElement};
use crate::Vertex;

/// Expanded `W_12345`, 72 terms.
pub const EXPANDED_W12345: &str = include_str!("../../fixtures/w12345_expanded.txt");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureTerm {
    pub negative: bool,
    pub zetas: [(Vertex, Vertex); 2],
    /// Generators in the written order (the sign refers to this order).
    pub gens: Vec<GenKey>,
}

fn parse_zeta_token(tok: &str) -> Option<(Vertex, Vertex)> {
    let vs = parse_label(tok.strip_prefix('z')?, 2)?;
    (vs[0] != vs[1]).then_some((vs[0], vs[1]))
}

pub fn parse_weight_fixture(text: &str) -> Result<Vec<FixtureTerm>> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: String| Error::Parse { line: idx + 1, msg };
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() < 3 {
            return Err(err(format!("too few fields in `{line}`")));
        }
        let negative = match toks[0] {
            "+" => false,
            "-" => true,
            s => return Err(err(format!("expected sign, got `{s}`"))),
        };
        let z1 = parse_zeta_token(toks[1]).ok_or_else(|| err(format!("bad zeta `{}`", toks[1])))?;
        let z2 = parse_zeta_token(toks[2]).ok_or_else(|| err(format!("bad zeta `{}`", toks[2])))?;
        let gens = toks[3..]
            .iter()
            .map(|t| {
                t.parse::<GenKey>()
                    .map_err(|_| err(format!("bad generator `{t}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        out.push(FixtureTerm {
            negative,
            zetas: [z1, z2],
            gens,
        });
    }
    Ok(out)
}

/// Builds the element described by `terms` after the substitution
/// `1 -> s[0], ..., 5 -> s[4]` of generator labels and zeta subscripts.
pub fn fixture_element<F: Field>(
    alg: &Algebra<F>,
    terms: &[FixtureTerm],
    s: Simplex4,
) -> Result<GrassmannElement<F::Elem>> {
    let f = alg.field();
    let vs = s.vertices();
    let sub = |p: Vertex| -> Result<Vertex> {
        vs.get((p as usize).wrapping_sub(1))
            .copied()
            .ok_or_else(|| Error::UnknownGenerator(format!("label {p}")))
    };
    let mut acc = alg.zero();
    for t in terms {
        let mut c = f.one();
        for (p, q) in t.zetas {
            c = f.mul(&c, &f.zeta_diff(sub(p)?, sub(q)?)?);
        }
        if t.negative {
            c = f.neg(&c);
        }
        let mut x = alg.scalar(c);
        for g in &t.gens {
            let tet = [
                sub(g.tet[0])?,
                sub(g.tet[1])?,
                sub(g.tet[2])?,
                sub(g.tet[3])?,
            ];
            x = alg.mul(&x, &alg.gen(GenKey { tet, kind: g.kind })?)?;
        }
        acc = alg.add(&acc, &x)?;
    }
    Ok(acc)
}

/// Renders each term of a weight as `<sign> z<i><j> z<k><l> <gens>` in
/// canonical term order, when every coefficient equals `±zeta_ij zeta_kl`
/// for vertices of `s` (`i<j`, `k<l`, `(i,j) <= (k,l)`). Returns `None` if
/// some coefficient has no such factorization.
pub fn factor_weight_terms<F: Field>(
    alg: &Algebra<F>,
    w: &GrassmannElement<F::Elem>,
    s: Simplex4,
) -> Result<Option<Vec<String>>> {
    let f = alg.field();
    let vs = s.vertices();
    let mut diffs = Vec::new();
    for a in 0..5 {
        for b in a + 1..5 {
            diffs.push(((vs[a], vs[b]), f.zeta_diff(vs[a], vs[b])?));
        }
    }
    let mut products = Vec::new();
    for x in 0..diffs.len() {
        for y in x..diffs.len() {
            products.push((diffs[x].0, diffs[y].0, f.mul(&diffs[x].1, &diffs[y].1)));
        }
    }
    let label = |(i, j): (Vertex, Vertex)| {
        if i < 10 && j < 10 {
            format!("z{i}{j}")
        } else {
            format!("z{i}_{j}")
        }
    };
    let mut lines = Vec::with_capacity(w.len());
    for (m, c) in w.terms() {
        let neg = f.neg(c);
        let Some((p, q, negative)) = products.iter().find_map(|(p, q, prod)| {
            if prod == c {
                Some((*p, *q, false))
            } else if *prod == neg {
                Some((*p, *q, true))
            } else {
                None
            }
        }) else {
            return Ok(None);
        };
        let gens = alg.monomial_names(*m).join(" ");
        lines.push(format!(
            "{} {} {} {gens}",
            if negative { "-" } else { "+" },
            label(p),
            label(q)
        ));
    }
    Ok(Some(lines))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expanded_fixture_parses() {
        let terms = parse_weight_fixture(EXPANDED_W12345).unwrap();
        assert_eq!(terms.len(), 72);
        assert_eq!(
            terms[0],
            FixtureTerm {
                negative: false,
                zetas: [(3, 4), (4, 5)],
                gens: vec![
                    "a1234".parse().unwrap(),
                    "a2345".parse().unwrap(),
                    "b2345".parse().unwrap()
                ],
            }
        );
    }

    #[test]
    fn fixture_parse_errors() {
        assert!(matches!(
            parse_weight_fixture("+ z34 z45 a1234\n* z34 z45 a1234\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_weight_fixture("+ z33 z45 a1234\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_weight_fixture("+ z34 z45 c1234\n"),
            Err(Error::Parse { line: 1, .. })
        ));
    }
}
