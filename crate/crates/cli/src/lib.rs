//! The `sphx` command line: document validation and the criteria as subcommands.

pub mod document;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use spherical_core::coloredfan::{wp_tilde_embedding, ColoredCone, ColoredFan, LunaEmbeddingData};
use spherical_core::criteria::{is_smooth_along, is_toric, load_corpus_dir, run_corpus};
use spherical_core::exactgeom::rational::fmt_vec;
use spherical_core::gorensteinify::gorensteinify;
use spherical_core::Error;

use document::{parse_document, serialize_document, trace_value, DocError, Document};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "sphx", version, about = "Exact criteria for spherical varieties")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and validate a document of any kind.
    Validate { doc: PathBuf },
    /// The p-tilde value of a skeleton or an embedding.
    Wp(WpArgs),
    /// Smoothness along one orbit.
    Smooth {
        #[arg(long)]
        embedding: PathBuf,
        /// `open`, `closed`, or the comma-separated generator labels of a cone.
        #[arg(long)]
        orbit: String,
    },
    /// Toricness of a complete embedding.
    Toric {
        #[arg(long)]
        embedding: PathBuf,
    },
    /// Run the pipeline and write the trace.
    Gorensteinify {
        #[arg(long)]
        embedding: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Verify a directory of multiplicity free space cases.
    VerifyMfs {
        #[arg(long)]
        dir: PathBuf,
        #[arg(long)]
        max_rank: Option<usize>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct WpArgs {
    #[arg(long)]
    skeleton: Option<PathBuf>,
    #[arg(long)]
    embedding: Option<PathBuf>,
}

/// Exit code with the text for stdout and stderr.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn fail(code: i32, stderr: impl Into<String>) -> Self {
        let mut stderr = stderr.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Outcome { code, stdout: String::new(), stderr }
    }
}

fn core_failure(e: Error) -> Outcome {
    let code = if matches!(e, Error::Internal(_)) { EXIT_INTERNAL } else { EXIT_INPUT };
    Outcome::fail(code, format!("error: {e}"))
}

fn read_document(path: &Path) -> Result<Document, Outcome> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Outcome::fail(EXIT_INPUT, format!("error: cannot read {}: {e}", path.display())))?;
    parse_document(&text).map_err(|e: DocError| Outcome::fail(EXIT_INPUT, format!("{}: {e}", path.display())))
}

fn read_embedding(path: &Path) -> Result<(LunaEmbeddingData, ColoredFan), Outcome> {
    match read_document(path)? {
        Document::Embedding { data, fan } => Ok((data, fan)),
        other => Err(Outcome::fail(EXIT_INPUT, format!("{}: expected an embedding, found a {}", path.display(), other.kind()))),
    }
}

fn find_orbit(e: &LunaEmbeddingData, f: &ColoredFan, id: &str) -> Result<ColoredCone, Outcome> {
    match id {
        "open" => return Ok(ColoredCone::zero(e.rank())),
        "closed" => {
            let top = f.maximal_cones();
            return match top.as_slice() {
                [c] => Ok((*c).clone()),
                _ => Err(Outcome::fail(EXIT_USAGE, format!("error: {} closed orbits; name one by its generator labels", top.len()))),
            };
        }
        _ => {}
    }
    let mut want: Vec<String> = id.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
    want.sort();
    f.cones
        .iter()
        .find(|c| f.generator_labels(e, c) == want)
        .cloned()
        .ok_or_else(|| Outcome::fail(EXIT_USAGE, format!("error: no cone with generators {}", want.join(","))))
}

fn execute(cmd: Command) -> Result<Outcome, Outcome> {
    let mut out = String::new();
    match cmd {
        Command::Validate { doc } => {
            let d = read_document(&doc)?;
            let _ = writeln!(out, "valid {}", d.kind());
        }
        Command::Wp(args) => {
            let wp = if let Some(p) = args.skeleton {
                match read_document(&p)? {
                    Document::Skeleton(s) => s.wp_tilde().map_err(core_failure)?,
                    other => {
                        return Err(Outcome::fail(EXIT_INPUT, format!("{}: expected a skeleton, found a {}", p.display(), other.kind())))
                    }
                }
            } else {
                let (e, f) = read_embedding(args.embedding.as_deref().expect("clap enforces the group"))?;
                wp_tilde_embedding(&e, &f).map_err(core_failure)?
            };
            let _ = writeln!(out, "{wp}");
        }
        Command::Smooth { embedding, orbit } => {
            let (e, f) = read_embedding(&embedding)?;
            let c = find_orbit(&e, &f, &orbit)?;
            let v = is_smooth_along(&e, &f, &c).map_err(core_failure)?;
            if v.smooth {
                let _ = writeln!(out, "smooth (wp_local = {} < 1)", v.wp);
            } else {
                let _ = writeln!(out, "not smooth (wp_local = {} >= 1)", v.wp);
            }
            let _ = writeln!(out, "divisors containing the orbit: {{{}}}", v.divisors.iter().cloned().collect::<Vec<_>>().join(", "));
        }
        Command::Toric { embedding } => {
            let (e, f) = read_embedding(&embedding)?;
            let v = is_toric(&e, &f).map_err(core_failure)?;
            let _ = writeln!(out, "{} (wp = {})", if v.toric { "toric" } else { "not toric" }, v.wp);
        }
        Command::Gorensteinify { embedding, out: path } => {
            let (e, f) = read_embedding(&embedding)?;
            let t = gorensteinify(&e, &f).map_err(core_failure)?;
            for s in &t.stages {
                let _ = writeln!(out, "{} wp = {} cones = {}", s.name, s.wp, s.fan.cones.len());
            }
            let _ = writeln!(out, "augmented: {}", t.augmented);
            let _ = writeln!(out, "output complete: {}", t.output_complete);
            for (c, cert) in t.output().cones.iter().zip(&t.certificates.certificates) {
                if let Some(v) = cert {
                    let labels = t.output().generator_labels(&t.data, c);
                    let name = if labels.is_empty() { "0".to_string() } else { labels.join(",") };
                    let _ = writeln!(out, "certificate {name}: {}", fmt_vec(v));
                }
            }
            if !t.wp_preserved() || !t.output_complete || !t.certificates.holds() {
                return Err(Outcome::fail(EXIT_INTERNAL, format!("{out}error: pipeline invariant breached")));
            }
            let text = format!("{}\n", serde_json::to_string_pretty(&trace_value(&t)).expect("values serialize"));
            std::fs::write(&path, text)
                .map_err(|err| Outcome::fail(EXIT_INPUT, format!("error: cannot write {}: {err}", path.display())))?;
            let _ = writeln!(out, "trace written to {}", path.display());
        }
        Command::VerifyMfs { dir, max_rank, jobs } => {
            let cases = load_corpus_dir(&dir)
                .map_err(|err| Outcome::fail(EXIT_INPUT, format!("error: cannot read {}: {err}", dir.display())))?;
            let report = run_corpus(cases, max_rank, jobs).map_err(core_failure)?;
            let _ = writeln!(out, "{report}");
        }
    }
    Ok(Outcome::ok(out))
}

/// Runs one command line; `args` starts with the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(cli.command).unwrap_or_else(|o| o),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome::fail(EXIT_USAGE, text)
            } else {
                Outcome::ok(text)
            }
        }
    }
}

/// Reformats a document through parse and serialize.
pub fn normalize(text: &str) -> Result<String, DocError> {
    parse_document(text).map(|d| serialize_document(&d))
}
