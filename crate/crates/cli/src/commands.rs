use std::collections::BTreeSet;
use std::fmt::{self, Write as _};
use std::path::{Path, PathBuf};

use anyhow::{bail, ensure, Context, Result};
use pachner4::field::{
    parse_zeta_file, random_assignment, Field, PrimeField, RationalField, RationalFunctionField,
    SampleMode, ZetaAssignment,
};
use pachner4::grassmann::{Algebra, GeneratorTable};
use pachner4::pachner::{
    equal_up_to_sign, general_w_candidate, invariant_ti, load_triangulation, verify_move_24,
    verify_move_33, w_candidates_24_right, w_candidates_33_left, w_candidates_33_right, Cluster,
    NamedCandidates, PachnerMove, WChoice,
};
use pachner4::weights::{
    factor_weight_terms, fixture_element, parse_weight_fixture, weight_w, Simplex4, EXPANDED_W12345,
};
use pachner4::Vertex;
use rayon::prelude::*;

use crate::wfile::{self, WTerm};
use crate::{Mode, RunArgs};

/// Text for standard output plus the overall verdict.
#[derive(Debug)]
pub struct Outcome {
    pub text: String,
    pub pass: bool,
}

#[derive(Debug, Clone)]
pub enum WSelector {
    Auto,
    General(u64),
    Named(String),
    File(PathBuf, Vec<WTerm>),
}

impl WSelector {
    pub fn parse(spec: &str, file: Option<&Path>) -> Result<Self> {
        if let Some(path) = file {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            let terms = wfile::parse(&text).with_context(|| format!("in {}", path.display()))?;
            return Ok(WSelector::File(path.to_path_buf(), terms));
        }
        Ok(match spec {
            "auto" => WSelector::Auto,
            s => match s.strip_prefix("general:") {
                Some(n) => WSelector::General(
                    n.parse()
                        .with_context(|| format!("bad general seed in `{s}`"))?,
                ),
                None => WSelector::Named(s.to_string()),
            },
        })
    }

    fn choice<F: Field>(
        &self,
        alg: &Algebra<F>,
        cluster: &Cluster,
        named: impl FnOnce(&Algebra<F>) -> pachner4::Result<NamedCandidates<F::Elem>>,
    ) -> Result<WChoice<F::Elem>> {
        Ok(match self {
            WSelector::Auto => WChoice::Auto,
            WSelector::General(seed) => {
                WChoice::Explicit(general_w_candidate(alg, cluster, *seed)?)
            }
            WSelector::File(_, terms) => WChoice::Explicit(wfile::element(alg, terms)?),
            WSelector::Named(name) => {
                let list = named(alg)?;
                let names: Vec<&str> = list.iter().map(|(n, _)| *n).collect();
                match list.into_iter().find(|(n, _)| n == name) {
                    Some((_, w)) => WChoice::Explicit(w),
                    None => bail!(
                        "unknown w candidate `{name}` (expected auto, general:<seed>, {})",
                        names.join(", ")
                    ),
                }
            }
        })
    }
}

impl fmt::Display for WSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WSelector::Auto => f.write_str("auto"),
            WSelector::General(s) => write!(f, "general:{s}"),
            WSelector::Named(n) => f.write_str(n),
            WSelector::File(p, _) => write!(f, "file:{}", p.display()),
        }
    }
}

fn read_zeta(run: &RunArgs) -> Result<Option<ZetaAssignment>> {
    let Some(path) = &run.zeta_file else {
        return Ok(None);
    };
    ensure!(
        run.mode != Mode::Symbolic,
        "--zeta-file has no effect in symbolic mode"
    );
    ensure!(
        run.trials == 1,
        "--zeta-file fixes the coordinates; use --trials 1"
    );
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(Some(
        parse_zeta_file(&text).with_context(|| format!("in {}", path.display()))?,
    ))
}

fn assignment(
    fixed: &Option<ZetaAssignment>,
    vertices: &[Vertex],
    seed: u64,
    mode: SampleMode,
) -> Result<ZetaAssignment> {
    match fixed {
        Some(z) => {
            z.covers(vertices.iter().copied())?;
            Ok(z.clone())
        }
        None => Ok(random_assignment(vertices.iter().copied(), seed, mode)?),
    }
}

/// Runs `$body` with `$f` bound to the field selected by `$run.mode`.
macro_rules! with_field {
    ($run:expr, $fixed:expr, $vertices:expr, $seed:expr, |$f:ident| $body:expr) => {
        match $run.mode {
            Mode::PrimeField => {
                PrimeField::check_modulus($run.prime)?;
                let z = assignment($fixed, $vertices, $seed, SampleMode::Prime($run.prime))?;
                let $f = PrimeField::new($run.prime, &z)?;
                $body
            }
            Mode::Rational => {
                let z = assignment($fixed, $vertices, $seed, SampleMode::Rational)?;
                let $f = RationalField::new(z);
                $body
            }
            Mode::Symbolic => {
                let $f = RationalFunctionField::new($vertices.iter().copied())?;
                $body
            }
        }
    };
}

/// Seeds of the trials to run, in report order.
fn trial_seeds(run: &RunArgs) -> Vec<u64> {
    if run.mode == Mode::Symbolic || run.zeta_file.is_some() {
        vec![run.seed]
    } else {
        (0..run.trials).map(|k| run.seed.wrapping_add(k)).collect()
    }
}

fn run_trials(
    run: &RunArgs,
    trial: impl Fn(u64) -> Result<(String, bool)> + Sync,
) -> Result<Outcome> {
    let seeds = trial_seeds(run);
    let results: Vec<Result<(String, bool)>> = seeds.par_iter().map(|&s| trial(s)).collect();
    let mut text = String::new();
    let mut passed = 0;
    for (k, (seed, r)) in seeds.iter().zip(results).enumerate() {
        let (body, pass) = r.with_context(|| format!("trial {k} (seed {seed})"))?;
        let _ = writeln!(text, "trial: {k}\nseed: {seed}\n{body}");
        passed += usize::from(pass);
    }
    let _ = writeln!(text, "summary: {passed}/{} passed", seeds.len());
    Ok(Outcome {
        text,
        pass: passed == seeds.len(),
    })
}

pub fn verify_33(run: &RunArgs, w_left: &WSelector, w_right: &WSelector) -> Result<Outcome> {
    let mv = PachnerMove::three_three();
    let vertices = mv.vertices();
    let fixed = read_zeta(run)?;
    run_trials(run, |seed| {
        with_field!(run, &fixed, &vertices, seed, |f| {
            let alg = mv.algebra(f)?;
            let l = w_left.choice(&alg, &mv.left, w_candidates_33_left)?;
            let r = w_right.choice(&alg, &mv.right, w_candidates_33_right)?;
            let report = verify_move_33(&alg, &l, &r)?;
            let head = format!("w-left: {w_left}\nw-right: {w_right}\n");
            Ok((head + &report.render(&alg), report.pass))
        })
    })
}

pub fn verify_24(run: &RunArgs, w_right: &WSelector, edge_factor: bool) -> Result<Outcome> {
    let mv = PachnerMove::two_four();
    let vertices = mv.vertices();
    let fixed = read_zeta(run)?;
    run_trials(run, |seed| {
        with_field!(run, &fixed, &vertices, seed, |f| {
            let alg = mv.algebra(f)?;
            let r = w_right.choice(&alg, &mv.right, w_candidates_24_right)?;
            let report = verify_move_24(&alg, &r, edge_factor)?;
            let head = format!("w-right: {w_right}\n");
            Ok((head + &report.render(&alg), report.pass))
        })
    })
}

pub fn expand_weight(vertices: &[u32], check_appendix: bool) -> Result<Outcome> {
    let vs: [Vertex; 5] = vertices.try_into().context("expected five vertices")?;
    let s = Simplex4::new(vs)?;
    let table = GeneratorTable::from_tetrahedra(s.tetrahedra())?;
    let alg = Algebra::new(RationalFunctionField::new(vs)?, table);
    let w = weight_w(&alg, s)?;
    let lines = factor_weight_terms(&alg, &w, s)?.unwrap_or_else(|| alg.format_lines(&w));
    let mut text = lines.join("\n");
    text.push('\n');
    let mut pass = true;
    if check_appendix {
        let expected = fixture_element(&alg, &parse_weight_fixture(EXPANDED_W12345)?, s)?;
        pass = expected == w;
        eprintln!(
            "fixture check: {} ({} terms computed, {} expected)",
            if pass { "match" } else { "MISMATCH" },
            w.len(),
            expected.len()
        );
    }
    Ok(Outcome { text, pass })
}

pub fn invariant(run: &RunArgs, files: &[PathBuf], compare: bool) -> Result<Outcome> {
    ensure!(
        !compare || files.len() == 2,
        "--compare needs exactly two files"
    );
    ensure!(
        run.trials == 1,
        "invariant evaluates a single zeta assignment; use --trials 1"
    );
    let clusters = files
        .iter()
        .map(|p| {
            let text =
                std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            load_triangulation(&text).with_context(|| format!("in {}", p.display()))
        })
        .collect::<Result<Vec<Cluster>>>()?;
    let vertices: Vec<Vertex> = clusters
        .iter()
        .flat_map(|c| c.vertices())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let fixed = read_zeta(run)?;
    with_field!(run, &fixed, &vertices, run.seed, |f| {
        let table = GeneratorTable::from_tetrahedra(clusters.iter().flat_map(|c| c.tetrahedra()))?;
        let alg = Algebra::new(f, table);
        let mut text = format!("seed: {}\nmode: {}\n", run.seed, alg.field().describe());
        let mut values = Vec::new();
        for (path, c) in files.iter().zip(&clusters) {
            let ti = invariant_ti(&alg, c)?;
            let boundary = alg
                .table()
                .mask_of(c.classify().boundary_tetrahedra.iter().copied())?;
            let degree: Vec<String> = ti.degree_profile().iter().map(u32::to_string).collect();
            let _ = writeln!(text, "file: {}", path.display());
            let _ = writeln!(text, "terms: {}", ti.len());
            let _ = writeln!(
                text,
                "degree: {}",
                if degree.is_empty() {
                    "-".into()
                } else {
                    degree.join(",")
                }
            );
            let _ = writeln!(
                text,
                "boundary-generators: {}",
                alg.monomial_names(boundary).join(" ")
            );
            let _ = writeln!(
                text,
                "support: {}",
                alg.monomial_names(ti.support_generators()).join(" ")
            );
            let _ = writeln!(text, "{}", alg.format(&ti));
            values.push(ti);
        }
        let mut pass = true;
        if compare {
            pass = equal_up_to_sign(&alg, &values[0], &values[1]);
            let _ = writeln!(
                text,
                "compare: {}",
                if pass {
                    "equal up to sign"
                } else {
                    "DIFFERENT"
                }
            );
        }
        Ok(Outcome { text, pass })
    })
}
