//! Command-line front end: interchange documents in, verification reports
//! out.

pub mod commands;
pub mod doc;
pub mod dot;
pub mod error;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use frame_canext::canext::{canonical_extension, DEFAULT_SEED};
use frame_canext::corpus::downset_corpus;
use frame_canext::proximity::{interior_relation, ProximityLattice};
use frame_canext::report::{Report, Status};
use frame_canext::spaces::FiniteSpace;
use frame_canext::sublocales::SUBLOCALE_BOUND;
use frame_canext::suite::SuiteOptions;
use frame_canext::{Bits, FiniteLattice};

use commands::Input;
use doc::{CanExtDoc, Document, LatticeDoc, MapDoc, PolarityDoc, ProximityDoc, SpaceDoc};
pub use error::CliError;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Debug, Parser)]
#[command(
    name = "canext",
    version,
    about = "Canonical extensions of finite frames"
)]
pub struct Cli {
    /// Size ceiling for exhaustive sweeps; larger inputs are skipped.
    #[arg(long, global = true, default_value_t = SUBLOCALE_BOUND)]
    pub bound: usize,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Treat skipped-bound entries as failures.
    #[arg(long, global = true)]
    pub strict: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Order-theoretic predicates of a lattice (or a space).
    Check { file: PathBuf },
    /// Build the canonical extension and check it.
    Canext {
        file: PathBuf,
        /// Write the bundle as a canext document.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Points of a frame and the up-sets of their specialisation order.
    Spectrum { file: PathBuf },
    /// Concept lattice of a polarity.
    Fca { file: PathBuf },
    /// Sublocales, nuclei and the sublocales closed under Sl-joins.
    Subloc { file: PathBuf },
    /// The full suite over documents or a corpus directory.
    Verify {
        files: Vec<PathBuf>,
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
    /// Hasse diagram in DOT.
    Dot { file: PathBuf },
    /// Write the standard corpus as documents into a directory.
    Corpus { dir: PathBuf },
}

/// What one run produced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub kind: &'static str,
    pub version: u32,
    pub command: String,
    pub overall: Status,
    pub reports: Vec<Report>,
}

impl RunReport {
    fn new(command: &str, reports: Vec<Report>) -> RunReport {
        let overall = if reports.iter().all(Report::passed) {
            Status::Pass
        } else {
            Status::Fail
        };
        RunReport {
            kind: "report-set",
            version: doc::FORMAT_VERSION,
            command: command.to_string(),
            overall,
            reports,
        }
    }

    pub fn has_skipped(&self) -> bool {
        self.reports.iter().any(Report::has_skipped)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Structured => {
                let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
                s.push('\n');
                s
            }
            Format::Text => {
                let mut s = String::new();
                for r in &self.reports {
                    s.push_str(&r.to_string());
                }
                let failed = self.reports.iter().filter(|r| !r.passed()).count();
                let skipped = self.reports.iter().filter(|r| r.has_skipped()).count();
                s.push_str(&format!(
                    "{}: {} ({} reports, {} failed, {} with skipped entries)\n",
                    self.command,
                    self.overall,
                    self.reports.len(),
                    failed,
                    skipped
                ));
                s
            }
        }
    }

    pub fn exit_code(&self, strict: bool) -> i32 {
        if self.overall == Status::Fail || (strict && self.has_skipped()) {
            EXIT_FAIL
        } else {
            EXIT_PASS
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn subject_of(path: &Path, doc: &Document) -> String {
    doc.name().map(str::to_string).unwrap_or_else(|| {
        path.file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string())
    })
}

pub fn load(path: &Path) -> Result<(String, Document), CliError> {
    let text = read(path)?;
    let doc = doc::parse(&text).map_err(|e| e.in_file(&path.display().to_string()))?;
    Ok((subject_of(path, &doc), doc))
}

/// `*.json` files of a directory, sorted by file name.
fn corpus_files(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let io = |source| CliError::Io {
        path: dir.display().to_string(),
        source,
    };
    let mut files = Vec::new();
    for entry in std::fs::read_dir(dir).map_err(io)? {
        let p = entry.map_err(io)?.path();
        if p.extension().is_some_and(|e| e == "json") {
            files.push(p);
        }
    }
    files.sort_by(|a, b| a.file_name().cmp(&b.file_name()));
    Ok(files)
}

/// Executes one parsed command line. `Ok(None)` means the command printed
/// its own output and succeeded.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<Option<RunReport>, CliError> {
    let opts = SuiteOptions {
        bound: cli.bound,
        seed: cli.seed,
    };
    let one = |file: &Path| load(file);
    let report = match &cli.command {
        Command::Check { file } => {
            let (s, d) = one(file)?;
            RunReport::new("check", vec![commands::check(&s, &d)?])
        }
        Command::Canext { file, emit } => {
            let (s, d) = one(file)?;
            let (r, b) = commands::canext(&s, &d)?;
            if let (Some(path), Some(b)) = (emit, b) {
                let text = doc::serialize(&Document::Canext(CanExtDoc::from_bundle(Some(&s), &b)));
                write(path, &text)?;
            }
            RunReport::new("canext", vec![r])
        }
        Command::Spectrum { file } => {
            let (s, d) = one(file)?;
            RunReport::new("spectrum", vec![commands::spectrum(&s, &d)?])
        }
        Command::Fca { file } => {
            let (s, d) = one(file)?;
            RunReport::new("fca", vec![commands::fca(&s, &d)?])
        }
        Command::Subloc { file } => {
            let (s, d) = one(file)?;
            RunReport::new("subloc", vec![commands::subloc(&s, &d, opts)?])
        }
        Command::Verify { files, corpus } => {
            let mut paths = files.clone();
            if let Some(dir) = corpus {
                paths.extend(corpus_files(dir)?);
            }
            if paths.is_empty() {
                return Err(CliError::Usage(
                    "verify needs files or --corpus <dir>".into(),
                ));
            }
            let inputs = paths
                .iter()
                .map(|p| load(p).map(|(subject, doc)| Input { subject, doc }))
                .collect::<Result<Vec<_>, _>>()?;
            RunReport::new("verify", commands::verify(&inputs, opts)?)
        }
        Command::Dot { file } => {
            let (s, d) = one(file)?;
            let l = match &d {
                Document::Lattice(ld) => ld.to_lattice()?,
                Document::Canext(cd) => cd.extension.to_lattice()?,
                other => {
                    return Err(CliError::Usage(format!(
                        "dot takes a lattice or canext document, not {}",
                        other.kind()
                    )))
                }
            };
            out.write_all(dot::hasse_dot(&s, &l).as_bytes())
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })?;
            return Ok(None);
        }
        Command::Corpus { dir } => {
            let n = write_corpus(dir)?;
            writeln!(out, "wrote {n} documents to {}", dir.display()).map_err(|source| {
                CliError::Io {
                    path: "<stdout>".into(),
                    source,
                }
            })?;
            return Ok(None);
        }
    };
    out.write_all(report.render(cli.format).as_bytes())
        .map_err(|source| CliError::Io {
            path: "<stdout>".into(),
            source,
        })?;
    Ok(Some(report))
}

/// Parses `args` (including the program name) and runs; returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_PASS
            };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(Some(r)) => r.exit_code(cli.strict),
        Ok(None) => EXIT_PASS,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

/// The standard corpus: every downset frame on at most five points, plus
/// one document of each other kind.
pub fn corpus_documents() -> Vec<(String, Document)> {
    let mut docs: Vec<(String, Document)> = downset_corpus()
        .into_iter()
        .map(|e| {
            let d = LatticeDoc::from_lattice(Some(&e.id), &e.lattice);
            (e.id, Document::Lattice(d))
        })
        .collect();
    let c3 = frame_canext::corpus::c3();
    let b4 = frame_canext::corpus::b4();
    docs.push((
        "map-c3-collapse".into(),
        Document::Map(MapDoc {
            version: doc::FORMAT_VERSION,
            name: Some("map-c3-collapse".into()),
            source: "c3".into(),
            target: "c3".into(),
            table: vec![0, 2, 2],
        }),
    ));
    docs.push((
        "map-b4-c3-meet-failure".into(),
        Document::Map(MapDoc {
            version: doc::FORMAT_VERSION,
            name: Some("map-b4-c3-meet-failure".into()),
            source: "b4".into(),
            target: "c3".into(),
            table: vec![0, 1, 1, 2],
        }),
    ));
    let sierpinski = FiniteSpace::new(2, vec![Bits::EMPTY, Bits::singleton(1), Bits::full(2)])
        .expect("Sierpiński space");
    docs.push((
        "space-sierpinski".into(),
        Document::Space(SpaceDoc::from_space(Some("space-sierpinski"), &sierpinski)),
    ));
    let p = frame_canext::polarity::Polarity::new(3, 3, &[(0, 0), (0, 1), (1, 1), (2, 2)])
        .expect("polarity");
    docs.push((
        "polarity-3x3".into(),
        Document::Polarity(PolarityDoc::from_polarity(Some("polarity-3x3"), &p)),
    ));
    let interior = ProximityLattice::new(
        c3.clone(),
        interior_relation(&c3, Bits::from_indices([0, 2])),
    )
    .expect("interior relation of {0, 1} in C3");
    docs.push((
        "proximity-c3-interior".into(),
        Document::Proximity(ProximityDoc::from_proximity(
            Some("proximity-c3-interior"),
            &interior,
        )),
    ));
    let order = ProximityLattice::from_order(b4.clone()).expect("≤ is a proximity");
    docs.push((
        "proximity-b4-order".into(),
        Document::Proximity(ProximityDoc::from_proximity(
            Some("proximity-b4-order"),
            &order,
        )),
    ));
    let bundle = canonical_extension(&b4).expect("B4 is a frame");
    docs.push((
        "canext-b4".into(),
        Document::Canext(CanExtDoc::from_bundle(Some("canext-b4"), &bundle)),
    ));
    docs
}

pub fn write_corpus(dir: &Path) -> Result<usize, CliError> {
    std::fs::create_dir_all(dir).map_err(|source| CliError::Io {
        path: dir.display().to_string(),
        source,
    })?;
    let docs = corpus_documents();
    for (name, d) in &docs {
        write(&dir.join(format!("{name}.json")), &doc::serialize(d))?;
    }
    Ok(docs.len())
}

/// Lattice documents for a few named lattices, for tests and examples.
pub fn lattice_document(name: &str, l: &FiniteLattice) -> String {
    doc::serialize(&Document::Lattice(LatticeDoc::from_lattice(Some(name), l)))
}
