//! Explicit `w` elements: one term per line, `<p>/<q> <gen> <gen> ...`
//! (a bare integer coefficient is fine), `#` starts a comment line.

use anyhow::{anyhow, bail, Context, Result};
use pachner4::field::Field;
use pachner4::grassmann::{Algebra, GenKey, GrassmannElement};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WTerm {
    pub num: i64,
    pub den: i64,
    pub gens: Vec<GenKey>,
}

pub fn parse(text: &str) -> Result<Vec<WTerm>> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let ctx = || format!("line {}", idx + 1);
        let mut toks = line.split_whitespace();
        let coeff = toks.next().unwrap_or_default();
        let (num, den) = match coeff.split_once('/') {
            Some((n, d)) => (n.parse::<i64>(), d.parse::<i64>()),
            None => (coeff.parse::<i64>(), Ok(1)),
        };
        let (num, den) = (
            num.with_context(|| format!("{}: bad coefficient `{coeff}`", ctx()))?,
            den.with_context(|| format!("{}: bad coefficient `{coeff}`", ctx()))?,
        );
        if den == 0 {
            bail!("{}: zero denominator", ctx());
        }
        let gens = toks
            .map(|t| t.parse::<GenKey>().map_err(|e| anyhow!("{}: {e}", ctx())))
            .collect::<Result<Vec<_>>>()?;
        out.push(WTerm { num, den, gens });
    }
    if out.is_empty() {
        bail!("empty w file");
    }
    Ok(out)
}

pub fn element<F: Field>(alg: &Algebra<F>, terms: &[WTerm]) -> Result<GrassmannElement<F::Elem>> {
    let mut acc = alg.zero();
    for t in terms {
        let mut x = alg.scalar(alg.field().from_ratio(t.num, t.den)?);
        for &g in &t.gens {
            x = alg.mul(&x, &alg.gen(g)?)?;
        }
        acc = alg.add(&acc, &x)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_terms() {
        let t = parse("# w\n-1 b1456\n3/2 a1234 b1234\n").unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!((t[0].num, t[0].den), (-1, 1));
        assert_eq!(
            t[1].gens,
            [GenKey::a([1, 2, 3, 4]), GenKey::b([1, 2, 3, 4])]
        );
        assert!(parse("x a1234").is_err());
        assert!(parse("1/0 a1234").is_err());
        assert!(parse("1 c1234").is_err());
        assert!(parse("").is_err());
    }
}
