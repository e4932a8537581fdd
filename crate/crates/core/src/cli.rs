//! Command-line front end.
//!
//! Exit codes: 0 success or valid, 2 domain-invalid input, 3 parse error,
//! 4 search budget exhausted with undecided candidates.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::arrangement::{from_shape, generate_family, parallel_family, pencil, Arrangement, FamilyKind};
use crate::enumeration::{enumerate, verify_conjecture, EnumerateOptions};
use crate::error::Error;
use crate::io::{read_file, serialize, serialize_shape};
use crate::render::{render_svg, RenderSpec};
use crate::report::{analysis_report, catalog_summary, compare, entry_report, CompareMode};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_UNDECIDED: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "arrangements", version, about = "Arrangements of construction lines and registration marks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ModeArg {
    Incidence,
    Affine,
    Projective,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FamilyArg {
    NearPencil,
    AugmentedNearPencil,
    Railtrack,
    Pencil,
    Parallel,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check both construction rules.
    Validate { path: PathBuf },
    /// Print every comparison measure.
    Analyze { path: PathBuf },
    /// Compare two arrangements.
    Compare {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum, default_value = "incidence")]
        mode: ModeArg,
    },
    /// List every incidence class with exactly `k` marks.
    Enumerate {
        #[arg(long = "points", short = 'k')]
        points: usize,
        /// Largest line count searched; defaults to k + 2.
        #[arg(long = "max-lines")]
        max_lines: Option<usize>,
        /// Write one arrangement file and one report per entry, plus
        /// `catalog_summary.txt`.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also draw each entry.
        #[arg(long)]
        svg: bool,
    },
    /// Search one line past k + 1 for a counterexample.
    Conjecture {
        #[arg(long = "points", short = 'k')]
        points: usize,
        #[arg(long = "max-lines")]
        max_lines: Option<usize>,
    },
    /// Turn a file of segments into an arrangement file.
    Shape {
        path: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print the canonical segments instead.
        #[arg(long)]
        canonical: bool,
    },
    /// Draw an arrangement as SVG.
    Render {
        path: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 400)]
        size: u32,
    },
    /// Write a member of a named family.
    Generate {
        #[arg(value_enum)]
        family: FamilyArg,
        /// Marks for the three named families, lines for pencils and
        /// parallel families.
        #[arg(long, short = 'k')]
        size: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

/// Maps a library error to an exit code, printing it.
fn fail(io: &mut Io, e: &Error) -> i32 {
    let _ = writeln!(io.err, "error: {e}");
    match e {
        Error::Parse { .. } => EXIT_PARSE,
        _ => EXIT_INVALID,
    }
}

fn load(io: &mut Io, path: &Path) -> Result<Arrangement, i32> {
    let file = read_file(path).map_err(|e| fail(io, &e))?;
    file.to_arrangement().map_err(|e| fail(io, &e))
}

fn load_valid(io: &mut Io, path: &Path) -> Result<Arrangement, i32> {
    let a = load(io, path)?;
    let report = a.validate();
    if !report.is_valid() {
        let _ = writeln!(io.err, "{}: invalid arrangement", path.display());
        let _ = write!(io.err, "{report}");
        return Err(EXIT_INVALID);
    }
    Ok(a)
}

fn write_or_print(io: &mut Io, out: &Option<PathBuf>, text: &str) -> Result<(), i32> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| {
            let _ = writeln!(io.err, "error: {}: {e}", path.display());
            EXIT_INVALID
        }),
        None => {
            let _ = io.out.write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn options(io: &mut Io) -> Result<EnumerateOptions, i32> {
    EnumerateOptions::from_env().map_err(|e| fail(io, &e))
}

fn small_k_note(k: usize) -> String {
    match k {
        0 => "k = 0: any number of parallel lines (or none) gives no marks; the family is infinite".into(),
        _ => "k = 1: any pencil of two or more concurrent lines; the family is infinite".into(),
    }
}

fn execute(io: &mut Io, command: Command) -> Result<i32, i32> {
    match command {
        Command::Validate { path } => {
            let a = load(io, &path)?;
            let report = a.validate();
            let _ = write!(io.out, "{report}");
            if report.is_valid() {
                let _ = writeln!(io.out, "{} lines, {} marks", a.num_lines(), a.num_points());
                Ok(EXIT_OK)
            } else {
                Ok(EXIT_INVALID)
            }
        }
        Command::Analyze { path } => {
            let a = load_valid(io, &path)?;
            let text = analysis_report(&a).map_err(|e| fail(io, &e))?;
            let _ = write!(io.out, "{text}");
            Ok(EXIT_OK)
        }
        Command::Compare { a, b, mode } => {
            let (a, b) = (load_valid(io, &a)?, load_valid(io, &b)?);
            let mode = match mode {
                ModeArg::Incidence => CompareMode::Incidence,
                ModeArg::Affine => CompareMode::Affine,
                ModeArg::Projective => CompareMode::Projective,
            };
            let c = compare(&a, &b, mode).map_err(|e| fail(io, &e))?;
            let _ = write!(io.out, "{c}");
            Ok(EXIT_OK)
        }
        Command::Enumerate {
            points,
            max_lines,
            out,
            svg,
        } => {
            if points < 2 {
                let _ = writeln!(io.err, "{}", small_k_note(points));
                return Err(EXIT_INVALID);
            }
            let opts = options(io)?;
            let e = enumerate(points, max_lines.unwrap_or(points + 2), &opts).map_err(|e| fail(io, &e))?;
            let summary = catalog_summary(&e);
            if let Some(dir) = out {
                let written = (|| -> std::io::Result<()> {
                    std::fs::create_dir_all(&dir)?;
                    for entry in &e.entries {
                        let stem = entry.file_stem();
                        std::fs::write(dir.join(format!("{stem}.arr")), serialize(&entry.arrangement))?;
                        std::fs::write(dir.join(format!("{stem}.txt")), entry_report(entry))?;
                        if svg {
                            let drawing = render_svg(&entry.arrangement, &RenderSpec::default());
                            std::fs::write(dir.join(format!("{stem}.svg")), drawing)?;
                        }
                    }
                    std::fs::write(dir.join("catalog_summary.txt"), &summary)
                })();
                if let Err(err) = written {
                    let _ = writeln!(io.err, "error: {}: {err}", dir.display());
                    return Err(EXIT_INVALID);
                }
                let _ = writeln!(io.out, "{} entries written to {}", e.entries.len(), dir.display());
            }
            let _ = write!(io.out, "{summary}");
            Ok(if e.undecided.is_empty() { EXIT_OK } else { EXIT_UNDECIDED })
        }
        Command::Conjecture { points, max_lines } => {
            let opts = options(io)?;
            let r = verify_conjecture(points, max_lines.unwrap_or(points + 2), &opts).map_err(|e| fail(io, &e))?;
            let _ = writeln!(io.out, "{r}");
            Ok(if r.undecided_above_bound > 0 { EXIT_UNDECIDED } else { EXIT_OK })
        }
        Command::Shape { path, out, canonical } => {
            let file = read_file(&path).map_err(|e| fail(io, &e))?;
            let shape = file.to_shape();
            let text = if canonical {
                serialize_shape(&shape)
            } else {
                serialize(&from_shape(&shape))
            };
            write_or_print(io, &out, &text)?;
            Ok(EXIT_OK)
        }
        Command::Render { path, out, size } => {
            let a = load_valid(io, &path)?;
            let svg = render_svg(&a, &RenderSpec { size });
            write_or_print(io, &out, &svg)?;
            Ok(EXIT_OK)
        }
        Command::Generate { family, size, out } => {
            let a = match family {
                FamilyArg::NearPencil => generate_family(FamilyKind::NearPencil, size),
                FamilyArg::AugmentedNearPencil => generate_family(FamilyKind::AugmentedNearPencil, size),
                FamilyArg::Railtrack => generate_family(FamilyKind::Railtrack, size),
                FamilyArg::Pencil => Ok(pencil(size)),
                FamilyArg::Parallel => Ok(parallel_family(size)),
            }
            .map_err(|e| fail(io, &e))?;
            write_or_print(io, &out, &serialize(&a))?;
            Ok(EXIT_OK)
        }
    }
}

/// Parses `args` (program name first) and runs the command, writing to the
/// given streams. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let mut io = Io { out, err };
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(io.err, "{text}");
            } else {
                let _ = write!(io.out, "{text}");
            }
            return code;
        }
    };
    match execute(&mut io, cli.command) {
        Ok(code) | Err(code) => code,
    }
}
