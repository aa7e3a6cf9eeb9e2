//! `swtqft` command-line front end.

pub mod file;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num::BigInt;
use serde_json::{json, Map, Value};
use swtqft_core::intersection::intersection_number;
use swtqft_core::lattice::random_symplectic;
use swtqft_core::torsion::torsion_representative;
use swtqft_core::tqft::{compute_b1, sw_table, trace_kappa_coefficient, verify_main_identity, zeta_series, SwMode};
use swtqft_core::{Presentation, SurfaceModel, TruncSeries};

use crate::file::{render, FileError, PresentationFile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "swtqft", version, about = "Exact torsion, zeta and TQFT-trace invariants of M(g, N, h)")]
struct Cli {
    /// Output format for tables.
    #[arg(long, value_enum, global = true, default_value_t = Format::Tsv)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check shape, integrality and the symplectic condition.
    Validate { file: PathBuf },
    /// Tr κ_n labelled by spin-c degree.
    Sw {
        file: PathBuf,
        #[arg(long)]
        nmax: usize,
    },
    /// Coefficients of the zeta function of the monodromy.
    Zeta {
        file: PathBuf,
        #[arg(long)]
        kmax: usize,
    },
    /// Coefficients of t^N det(d_M).
    Torsion {
        file: PathBuf,
        #[arg(long)]
        kmax: usize,
    },
    /// Compare Tr κ_n with the coefficient of t^{n+N} in ζ · t^N det(d_M).
    Verify {
        file: PathBuf,
        #[arg(long)]
        nmax: usize,
        /// Skip the symplectic check (shape and integrality are still enforced).
        #[arg(long)]
        no_validate: bool,
    },
    /// Compare the intersection number D.Γ with Tr κ_n.
    Intersect {
        file: PathBuf,
        #[arg(long = "n")]
        n: usize,
    },
    /// First Betti number.
    B1 { file: PathBuf },
    /// Write a random presentation.
    Gen {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        handles: usize,
        #[arg(long)]
        words: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        name: Option<String>,
    },
}

#[derive(Clone, Debug)]
enum Cell {
    Int(BigInt),
    Text(String),
    Missing,
}

impl Cell {
    fn tsv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Missing => "-".into(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => match i64::try_from(v) {
                Ok(x) => json!(x),
                Err(_) => json!(v.to_string()),
            },
            Cell::Text(s) => json!(s),
            Cell::Missing => Value::Null,
        }
    }
}

impl<T: Into<BigInt>> From<T> for Cell {
    fn from(v: T) -> Self {
        Cell::Int(v.into())
    }
}

fn text(s: impl Into<String>) -> Cell {
    Cell::Text(s.into())
}

/// Metadata lines plus a table; rendered as TSV (metadata as `#` comments)
/// or as one JSON document.
struct Report {
    meta: Vec<(&'static str, Cell)>,
    columns: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
}

impl Report {
    fn new(columns: Vec<&'static str>) -> Self {
        Self {
            meta: Vec::new(),
            columns,
            rows: Vec::new(),
        }
    }

    fn meta(mut self, key: &'static str, value: impl Into<Cell>) -> Self {
        self.meta.push((key, value.into()));
        self
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Tsv => {
                let mut s = String::new();
                for (k, v) in &self.meta {
                    s.push_str(&format!("# {k}\t{}\n", v.tsv()));
                }
                s.push_str(&self.columns.join("\t"));
                s.push('\n');
                for r in &self.rows {
                    s.push_str(&r.iter().map(Cell::tsv).collect::<Vec<_>>().join("\t"));
                    s.push('\n');
                }
                s
            }
            Format::Json => {
                let meta: Map<String, Value> = self.meta.iter().map(|(k, v)| (k.to_string(), v.json())).collect();
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|r| {
                        let m: Map<String, Value> =
                            self.columns.iter().zip(r).map(|(c, v)| (c.to_string(), v.json())).collect();
                        Value::Object(m)
                    })
                    .collect();
                let doc = json!({ "meta": meta, "columns": self.columns, "rows": rows });
                let mut s = serde_json::to_string_pretty(&doc).expect("values serialize");
                s.push('\n');
                s
            }
        }
    }
}

enum Failure {
    File(FileError),
    Compute(swtqft_core::Error),
    Io(PathBuf, std::io::Error),
}

impl From<FileError> for Failure {
    fn from(e: FileError) -> Self {
        Failure::File(e)
    }
}

impl From<swtqft_core::Error> for Failure {
    fn from(e: swtqft_core::Error) -> Self {
        Failure::Compute(e)
    }
}

fn load(path: &Path, check_symplectic: bool) -> Result<Presentation, Failure> {
    Ok(PresentationFile::read(path)?.into_presentation(path, check_symplectic)?)
}

fn series_rows(s: &TruncSeries) -> Result<Vec<Vec<Cell>>, Failure> {
    let ints = s.to_integers().ok_or_else(|| {
        swtqft_core::Error::InvariantViolation(format!("series with fractional coefficients: {s}"))
    })?;
    Ok(ints.into_iter().enumerate().map(|(k, c)| vec![k.into(), Cell::Int(c)]).collect())
}

fn describe(mut r: Report, p: &Presentation) -> Report {
    if let Some(name) = p.name() {
        r = r.meta("name", text(name));
    }
    r.meta("genus", p.genus()).meta("handles", p.handles())
}

fn execute(cli: Cli) -> Result<(Report, i32), Failure> {
    match cli.command {
        Command::Validate { file } => {
            let parsed = PresentationFile::read(&file)?;
            let violations = parsed.violations();
            let mut r = Report::new(vec!["check", "status"]);
            for check in ["dimension", "integrality", "symplectic"] {
                let found: Vec<String> =
                    violations.iter().filter(|v| v.name() == check).map(|v| v.to_string()).collect();
                let status = match found.first() {
                    None => "ok".to_string(),
                    Some(first) if found.len() == 1 => format!("FAIL {first}"),
                    Some(first) => format!("FAIL {first} (+{} more)", found.len() - 1),
                };
                r.rows.push(vec![text(check), text(status)]);
            }
            let code = if violations.is_empty() { EXIT_OK } else { EXIT_INPUT };
            Ok((r, code))
        }
        Command::B1 { file } => {
            let p = load(&file, true)?;
            let mut r = describe(Report::new(vec!["b1"]), &p);
            r.rows.push(vec![compute_b1(&p)?.into()]);
            Ok((r, EXIT_OK))
        }
        Command::Zeta { file, kmax } => {
            let p = load(&file, true)?;
            let mut r = describe(Report::new(vec!["k", "coefficient"]), &p);
            r.rows = series_rows(&zeta_series(&p, kmax)?)?;
            Ok((r, EXIT_OK))
        }
        Command::Torsion { file, kmax } => {
            let p = load(&file, true)?;
            let mut r = describe(Report::new(vec!["k", "coefficient"]), &p).meta("series", text("t^N det(d_M)"));
            r.rows = series_rows(&torsion_representative(&p, kmax))?;
            Ok((r, EXIT_OK))
        }
        Command::Sw { file, nmax } => {
            let p = load(&file, true)?;
            let table = sw_table(&p, nmax)?;
            let mode = match table.mode {
                SwMode::Single => "b1 = 1: n = g - 1 + m/2",
                SwMode::Multiple => "b1 > 1: n = g - 1 - |m|/2, m reported as |m|",
            };
            let mut r = describe(Report::new(vec!["n", "m", "value"]), &p).meta("b1", table.b1).meta("mode", text(mode));
            for row in table.rows {
                let m = row.m.map_or(Cell::Missing, Cell::from);
                r.rows.push(vec![row.n.into(), m, row.value.into()]);
            }
            Ok((r, EXIT_OK))
        }
        Command::Verify { file, nmax, no_validate } => {
            let p = load(&file, !no_validate)?;
            let report = verify_main_identity(&p, nmax)?;
            let mut r = describe(Report::new(vec!["n", "lhs", "lhs_matrix", "rhs", "status"]), &p)
                .meta("rhs", text("coefficient of t^(n+N) in zeta * t^N det(d_M)"));
            for row in &report.rows {
                let status = if row.matched { "match" } else { "MISMATCH" };
                r.rows.push(vec![
                    row.n.into(),
                    Cell::Int(row.trace.clone()),
                    Cell::Int(row.trace_matrix.clone()),
                    Cell::Int(row.rhs.clone()),
                    text(status),
                ]);
            }
            let code = if report.passed() { EXIT_OK } else { EXIT_MISMATCH };
            Ok((r.meta("result", text(if code == EXIT_OK { "pass" } else { "fail" })), code))
        }
        Command::Intersect { file, n } => {
            let p = load(&file, true)?;
            let dg = intersection_number(&p, n)?;
            let tr = trace_kappa_coefficient(&p, n);
            let mut r = describe(Report::new(vec!["n", "intersection", "trace", "status"]), &p);
            r.rows.push(vec![n.into(), dg.into(), tr.into(), text(if dg == tr { "match" } else { "MISMATCH" })]);
            Ok((r, if dg == tr { EXIT_OK } else { EXIT_MISMATCH }))
        }
        Command::Gen {
            g,
            handles,
            words,
            seed,
            out,
            name,
        } => {
            let a = random_symplectic(SurfaceModel::split(handles, g), words, seed);
            let name = name.unwrap_or_else(|| format!("random-g{g}-n{handles}-w{words}-s{seed}"));
            let p = Presentation::from_mapping_class(Some(name), a);
            std::fs::write(&out, render(&p)).map_err(|e| Failure::Io(out.clone(), e))?;
            let mut r = Report::new(vec!["written"]);
            r.rows.push(vec![text(out.display().to_string())]);
            Ok((r, EXIT_OK))
        }
    }
}

/// Runs the command line `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(rendered.as_bytes()) } else { err.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    let format = cli.format;
    match execute(cli) {
        Ok((report, code)) => {
            let _ = out.write_all(report.render(format).as_bytes());
            code
        }
        Err(Failure::File(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
        Err(Failure::Io(path, e)) => {
            let _ = writeln!(err, "error: {}: {e}", path.display());
            EXIT_INPUT
        }
        Err(Failure::Compute(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}
