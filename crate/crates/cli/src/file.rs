//! JSON presentation files.
//!
//! ```json
//! {
//!   "name": "three-torus",
//!   "genus": 1,
//!   "handles": 0,
//!   "monodromy": [
//!     [1, 0],
//!     [0, 1]
//!   ]
//! }
//! ```
//!
//! `monodromy` is row-major, acting by pullback on `H^1` in the basis
//! `c_1..c_N, d_1..d_N, x_1..x_{2g}`.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use swtqft_core::linalg::IntMatrix;
use swtqft_core::presentation::validate_presentation;
use swtqft_core::{Entry, Presentation, Violation};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FileError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: line {line}, column {column}: {message}")]
    Syntax {
        path: PathBuf,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{path}: invalid presentation:\n{}", list(.violations))]
    Invalid {
        path: PathBuf,
        violations: Vec<Violation>,
    },
}

fn list(v: &[Violation]) -> String {
    v.iter().map(|x| format!("  {x}")).collect::<Vec<_>>().join("\n")
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    #[serde(default)]
    name: Option<String>,
    genus: usize,
    handles: usize,
    monodromy: Vec<Vec<serde_json::Number>>,
}

/// A parsed file before the symplectic check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationFile {
    pub name: Option<String>,
    pub genus: usize,
    pub handles: usize,
    pub monodromy: Vec<Vec<Entry>>,
}

fn entry(n: &serde_json::Number) -> Entry {
    if let Some(v) = n.as_i64() {
        Entry::Int(v.into())
    } else if let Some(v) = n.as_u64() {
        Entry::Int(v.into())
    } else {
        Entry::Other(n.to_string())
    }
}

impl PresentationFile {
    pub fn parse(path: &Path, text: &str) -> Result<Self, FileError> {
        let raw: RawFile = serde_json::from_str(text).map_err(|e| FileError::Syntax {
            path: path.to_owned(),
            line: e.line(),
            column: e.column(),
            message: strip_position(&e.to_string()),
        })?;
        Ok(Self {
            name: raw.name,
            genus: raw.genus,
            handles: raw.handles,
            monodromy: raw.monodromy.iter().map(|r| r.iter().map(entry).collect()).collect(),
        })
    }

    pub fn read(path: &Path) -> Result<Self, FileError> {
        let text = std::fs::read_to_string(path).map_err(|source| FileError::Io {
            path: path.to_owned(),
            source,
        })?;
        Self::parse(path, &text)
    }

    pub fn violations(&self) -> Vec<Violation> {
        validate_presentation(self.genus, self.handles, &self.monodromy)
    }

    /// Full validation; with `check_symplectic = false` only shape and
    /// integrality are enforced.
    pub fn into_presentation(self, path: &Path, check_symplectic: bool) -> Result<Presentation, FileError> {
        let violations: Vec<Violation> = self
            .violations()
            .into_iter()
            .filter(|v| check_symplectic || !matches!(v, Violation::Symplectic { .. }))
            .collect();
        let invalid = |violations| FileError::Invalid {
            path: path.to_owned(),
            violations,
        };
        if !violations.is_empty() {
            return Err(invalid(violations));
        }
        let size = self.monodromy.len();
        let matrix = IntMatrix::from_fn(size, size, |i, j| match self.monodromy[i][j] {
            Entry::Int(v) => v,
            Entry::Other(_) => unreachable!("integrality checked above"),
        });
        if check_symplectic {
            Presentation::new(self.name, self.genus, self.handles, matrix).map_err(invalid)
        } else {
            Presentation::new_unchecked(self.name, self.genus, self.handles, matrix).map_err(invalid)
        }
    }
}

/// serde_json appends " at line L column C"; the position is reported separately.
fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

/// Canonical text of a presentation: fixed key order, one matrix row per line.
pub fn render(p: &Presentation) -> String {
    let mut s = String::from("{\n");
    if let Some(name) = p.name() {
        let quoted = serde_json::to_string(name).expect("strings serialize");
        let _ = writeln!(s, "  \"name\": {quoted},");
    }
    let _ = writeln!(s, "  \"genus\": {},", p.genus());
    let _ = writeln!(s, "  \"handles\": {},", p.handles());
    let rows = p.monodromy().matrix().to_rows();
    if rows.is_empty() {
        s.push_str("  \"monodromy\": []\n");
    } else {
        s.push_str("  \"monodromy\": [\n");
        for (i, r) in rows.iter().enumerate() {
            let cells: Vec<String> = r.iter().map(|v| v.to_string()).collect();
            let sep = if i + 1 < rows.len() { "," } else { "" };
            let _ = writeln!(s, "    [{}]{sep}", cells.join(", "));
        }
        s.push_str("  ]\n");
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use swtqft_core::lattice::random_symplectic;
    use swtqft_core::SurfaceModel;

    fn parse(text: &str) -> Result<PresentationFile, FileError> {
        PresentationFile::parse(Path::new("x.json"), text)
    }

    #[test]
    fn round_trip() {
        for (g, n, seed) in [(0, 0, 1), (1, 0, 2), (0, 2, 3), (2, 1, 4)] {
            let a = random_symplectic(SurfaceModel::split(n, g), 7, seed);
            let p = Presentation::from_mapping_class(Some(format!("case \"{seed}\"")), a);
            let text = render(&p);
            let back = parse(&text).unwrap().into_presentation(Path::new("x"), true).unwrap();
            assert_eq!(back, p);
            assert_eq!(render(&back), text);
        }
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse("{\n  \"genus\": 1,\n  \"handles\": \"two\"\n}").unwrap_err();
        match err {
            FileError::Syntax { line, message, .. } => {
                assert_eq!(line, 3);
                assert!(message.contains("invalid type"), "{message}");
            }
            other => panic!("unexpected {other}"),
        }
        let err = parse("{\"genus\": 0, \"handles\": 0, \"monodromy\": [], \"extra\": 1}").unwrap_err();
        assert!(err.to_string().contains("extra"));
    }

    #[test]
    fn fractional_entries_are_integrality_violations() {
        let f = parse("{\"genus\": 1, \"handles\": 0, \"monodromy\": [[1, 0.5], [0, 1]]}").unwrap();
        let v = f.violations();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].name(), "integrality");
    }

    #[test]
    fn unchecked_mode_keeps_shape_checks() {
        let f = parse("{\"genus\": 1, \"handles\": 0, \"monodromy\": [[2, 0], [0, 1]]}").unwrap();
        assert!(f.clone().into_presentation(Path::new("x"), true).is_err());
        assert!(f.into_presentation(Path::new("x"), false).is_ok());
        let f = parse("{\"genus\": 1, \"handles\": 0, \"monodromy\": [[1]]}").unwrap();
        assert!(f.into_presentation(Path::new("x"), false).is_err());
    }
}
