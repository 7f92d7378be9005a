//! JSON formats for matroids, decompositions, polynomials and reports.

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};
use std::collections::BTreeSet;
use std::path::Path;
use thiserror::Error;
use valuator::decomp::{DecompError, Decomposition};
use valuator::matroid::bits::{self, Mask};
use valuator::polytope;
use valuator::{BiPoly, GroundSet, IntPoly, Matroid, MatroidError, Perm};

/// Version tag written into every report.
pub const SCHEMA: &str = "valuator/1";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed JSON in {path}: {source}")]
    Json { path: String, source: serde_json::Error },
    #[error("invalid matroid: {0}")]
    Matroid(#[from] MatroidError),
    #[error("invalid decomposition: {0}")]
    Decomposition(#[from] DecompError),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("identity check failed: {0}")]
    Identity(String),
}

impl CliError {
    /// 1 for usage and input errors, 2 for invalid or unvalidated input
    /// objects, 3 for a failed identity check.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } | CliError::Json { .. } => 1,
            CliError::Matroid(_) | CliError::Decomposition(_) | CliError::Validation(_) => 2,
            CliError::Identity(_) => 3,
        }
    }
}

/// `{"ground": [...], "bases": [[...], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatroidFile {
    pub ground: Vec<String>,
    pub bases: Vec<Vec<String>>,
}

/// `{"target": <matroid>, "faces": [<matroid>, ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionFile {
    pub target: MatroidFile,
    pub faces: Vec<MatroidFile>,
}

impl MatroidFile {
    pub fn from_matroid(m: &Matroid) -> Self {
        MatroidFile { ground: m.ground().labels().to_vec(), bases: m.bases().iter().map(|&b| m.labels_of(b)).collect() }
    }

    pub fn to_matroid(&self) -> Result<Matroid, MatroidError> {
        Matroid::from_labels(GroundSet::new(self.ground.iter().cloned())?, &self.bases)
    }
}

impl DecompositionFile {
    pub fn from_decomposition(d: &Decomposition) -> Self {
        DecompositionFile {
            target: MatroidFile::from_matroid(d.target()),
            faces: d.faces().iter().map(MatroidFile::from_matroid).collect(),
        }
    }

    /// The decomposition whose faces are the listed faces and all of their
    /// faces. Face matroids are read on the target's ground set.
    pub fn to_decomposition(&self) -> Result<Decomposition, CliError> {
        let target = self.target.to_matroid()?;
        let mut faces = BTreeSet::new();
        for f in &self.faces {
            let m = f.to_matroid()?.reordered(target.ground())?;
            faces.extend(polytope::all_faces(&m));
        }
        Ok(Decomposition::new(target, faces)?)
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn parse<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    serde_json::from_str(&read(path)?).map_err(|source| CliError::Json { path: path.display().to_string(), source })
}

pub fn load_matroid(path: &Path) -> Result<Matroid, CliError> {
    Ok(parse::<MatroidFile>(path)?.to_matroid()?)
}

pub fn load_decomposition(path: &Path) -> Result<Decomposition, CliError> {
    parse::<DecompositionFile>(path)?.to_decomposition()
}

/// Writes pretty JSON with a trailing newline.
pub fn write_json(path: &Path, v: &impl Serialize) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(v).expect("serializable") + "\n";
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

/// `{"i": c}` over the nonzero coefficients.
pub fn poly_json(p: &IntPoly) -> Value {
    Value::Object(p.terms().map(|(i, c)| (i.to_string(), json!(c))).collect())
}

/// `{"t^i u^j": c}` over the nonzero coefficients.
pub fn bipoly_json(p: &BiPoly<i64>) -> Value {
    Value::Object(p.terms().map(|((i, j), c)| (format!("t^{i} u^{j}"), json!(c))).collect())
}

/// A report object carrying the schema tag.
pub fn report(kind: &str, fields: Value) -> Value {
    let mut m = Map::new();
    m.insert("schema".into(), json!(SCHEMA));
    m.insert("kind".into(), json!(kind));
    if let Value::Object(f) = fields {
        m.extend(f);
    }
    Value::Object(m)
}

/// A set of elements given as comma separated labels.
pub fn parse_set(m: &Matroid, text: &str) -> Result<Mask, CliError> {
    let labels: Vec<&str> = text.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    Ok(m.ground().mask_of(labels)?)
}

/// A permutation in cycle notation over labels, such as `(1 3)(2 4)`;
/// the empty string is the identity.
pub fn parse_perm(ground: &GroundSet, text: &str) -> Result<Perm, CliError> {
    let mut cycles = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let body = rest.strip_prefix('(').ok_or_else(|| CliError::Usage(format!("expected '(' in permutation {text:?}")))?;
        let close = body.find(')').ok_or_else(|| CliError::Usage(format!("unclosed cycle in permutation {text:?}")))?;
        let cycle = body[..close]
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|l| ground.index_of(l))
            .collect::<Result<Vec<_>, _>>()?;
        cycles.push(cycle);
        rest = body[close + 1..].trim_start();
    }
    Ok(Perm::from_cycles(ground.len(), &cycles)?)
}

/// Cycle notation over labels; fixed points are omitted.
pub fn format_perm(ground: &GroundSet, g: &Perm) -> String {
    let s: String = g
        .cycles()
        .into_iter()
        .filter(|c| c.len() > 1)
        .map(|c| format!("({})", c.iter().map(|&e| ground.labels()[e].as_str()).collect::<Vec<_>>().join(" ")))
        .collect();
    if s.is_empty() {
        "()".into()
    } else {
        s
    }
}

/// Labels of a subset, concatenated when every label is one character.
pub fn format_set(ground: &GroundSet, s: Mask) -> String {
    let labels = ground.labels_of(s);
    if labels.iter().all(|l| l.chars().count() == 1) {
        labels.concat()
    } else {
        labels.join(",")
    }
}

/// `{"0": [...], "1": [...]}`: flats by rank, each as a label string.
pub fn flats_json(m: &Matroid) -> Value {
    Value::Object(
        m.flats_by_rank()
            .iter()
            .enumerate()
            .map(|(r, fs)| (r.to_string(), json!(fs.iter().map(|&f| format_set(m.ground(), f)).collect::<Vec<_>>())))
            .collect(),
    )
}

/// Number of elements in a mask, for reports.
pub fn size(s: Mask) -> usize {
    bits::size(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matroid_round_trip() {
        let m = Matroid::from_words(GroundSet::numbered(4), &["13", "14", "23", "24"]).unwrap();
        let f = MatroidFile::from_matroid(&m);
        let text = serde_json::to_string(&f).unwrap();
        assert_eq!(text, r#"{"ground":["1","2","3","4"],"bases":[["1","3"],["2","3"],["1","4"],["2","4"]]}"#);
        assert_eq!(serde_json::from_str::<MatroidFile>(&text).unwrap().to_matroid().unwrap(), m);
    }

    #[test]
    fn cells_only_file_is_closed_under_faces() {
        let d = crate::catalog::octahedron();
        let cells = DecompositionFile {
            target: MatroidFile::from_matroid(d.target()),
            faces: d.cells().iter().map(MatroidFile::from_matroid).collect(),
        };
        let back = cells.to_decomposition().unwrap();
        assert_eq!(back.faces(), d.faces());
    }

    #[test]
    fn permutations_in_cycle_notation() {
        let g = GroundSet::numbered(4);
        let p = parse_perm(&g, "(1 3)(2,4)").unwrap();
        assert_eq!(p.images(), &[2, 3, 0, 1]);
        assert_eq!(format_perm(&g, &p), "(1 3)(2 4)");
        assert!(parse_perm(&g, "").unwrap().is_identity());
        assert!(matches!(parse_perm(&g, "(1 5)"), Err(CliError::Matroid(_))));
        assert!(matches!(parse_perm(&g, "1 2"), Err(CliError::Usage(_))));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Usage(String::new()).exit_code(), 1);
        assert_eq!(CliError::Validation(String::new()).exit_code(), 2);
        assert_eq!(CliError::Identity(String::new()).exit_code(), 3);
    }
}
