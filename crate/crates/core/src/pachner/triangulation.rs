use std::collections::BTreeMap;

use super::Cluster;
use crate::error::{Error, Result};
use crate::grassmann::Tet;
use crate::weights::Simplex4;
use crate::Vertex;

/// Parses one 4-simplex per line (five positive integers, any order).
/// Blank lines and lines starting with `#` are skipped.
pub fn load_triangulation(source: &str) -> Result<Cluster> {
    let mut simplexes: BTreeMap<Simplex4, usize> = BTreeMap::new();
    let mut tet_counts: BTreeMap<Tet, usize> = BTreeMap::new();
    for (idx, raw) in source.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: String| Error::Parse { line: line_no, msg };
        let vs: Vec<Vertex> = line
            .split_whitespace()
            .map(|t| t.parse::<Vertex>().ok().filter(|&v| v > 0))
            .collect::<Option<_>>()
            .ok_or_else(|| err(format!("expected positive integers, got `{line}`")))?;
        let vs: [Vertex; 5] = vs
            .try_into()
            .map_err(|v: Vec<Vertex>| err(format!("expected 5 vertices, got {}", v.len())))?;
        let s = Simplex4::from_unsorted(vs).map_err(|e| err(e.to_string()))?;
        if let Some(first) = simplexes.insert(s, line_no) {
            return Err(err(format!("simplex {s} repeats line {first}")));
        }
        for t in s.tetrahedra() {
            let n = tet_counts.entry(t).or_default();
            *n += 1;
            if *n > 2 {
                return Err(err(format!(
                    "tetrahedron {:?} would be shared by {} simplexes",
                    t, n
                )));
            }
        }
    }
    if simplexes.is_empty() {
        return Err(Error::Parse {
            line: source.lines().count(),
            msg: "no simplexes".to_string(),
        });
    }
    Cluster::new(simplexes.into_keys())
}
