//! Command-line front end.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::blowup::Blowup;
use crate::complex::FaceSet;
use crate::corpus;
use crate::cupi::CupEngine;
use crate::error::{Error, Result};
use crate::filtered::{
    boundary_components, cone, cone_off_boundary, suspension, trivial_filtration, underlying,
    validate_json, FilteredFaceSet, Perversity,
};
use crate::gf2::BitVec;
use crate::squares::{perverse_cohomology, steenrod_square};
use crate::verify::{verify_suite, VerifyConfig};

pub const COHOMOLOGY_HEADER: [&str; 3] = ["perversity", "degree", "dim"];
pub const SQUARES_HEADER: [&str; 6] = [
    "class",
    "i",
    "target_perversity",
    "coords",
    "witness_perverse_degree",
    "image_in_2p",
];

#[derive(Parser, Debug)]
#[command(
    name = "perverse-steenrod",
    version,
    about = "Intersection cohomology and Steenrod squares of filtered face sets"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse and validate a filtered face set.
    Validate { path: PathBuf },
    /// Build a filtered face set from a trivially filtered input or a corpus space.
    Build {
        kind: BuildKind,
        #[command(flatten)]
        source: Source,
        /// Formal dimension of the result.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dimensions of the perverse cohomology groups.
    Cohomology {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        opts: TableOpts,
    },
    /// Steenrod squares of the basis classes.
    Squares {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        opts: TableOpts,
        /// Comma-separated square indices.
        #[arg(long = "i", value_delimiter = ',', default_value = "0,1,2")]
        i: Vec<i64>,
    },
    /// Run the property suite on one complex or on the built-in corpus.
    Verify {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long = "perversity")]
        perversity: Vec<String>,
        #[arg(long, value_parser = parse_degrees)]
        degrees: Option<(usize, usize)>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        pairs: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, hide = true)]
        corrupt_cup: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BuildKind {
    Cone,
    Suspension,
    Coneoff,
    Trivial,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Trivially filtered input file.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Built-in space: point, interval, circle, torus, rp2, klein, mobius.
    #[arg(long)]
    corpus: Option<String>,
}

#[derive(Args, Debug)]
pub struct TableOpts {
    /// Comma list of values for depths 1..n; repeatable.
    #[arg(long = "perversity")]
    perversity: Vec<String>,
    #[arg(long, value_parser = parse_degrees)]
    degrees: Option<(usize, usize)>,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
}

/// Parses `a..b` (inclusive) or a single degree.
pub fn parse_degrees(s: &str) -> std::result::Result<(usize, usize), String> {
    let parse = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|e| format!("bad degree {t:?}: {e}"))
    };
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
        None => {
            let d = parse(s)?;
            (d, d)
        }
    };
    if lo > hi {
        return Err(format!("empty degree range {s}"));
    }
    Ok((lo, hi))
}

/// Exit status of a command.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    Failed = 1,
    InputError = 2,
}

fn status_of(e: &Error) -> Status {
    if e.is_parse() || matches!(e, Error::Perversity(_)) {
        Status::InputError
    } else {
        Status::Failed
    }
}

/// Parses `args` and runs the command, writing the report to `out` (or to
/// `--out`) and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return Status::InputError as i32;
            }
            let _ = write!(out, "{e}");
            return Status::Ok as i32;
        }
    };
    match execute(cli.command, out) {
        Ok(s) => s as i32,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            status_of(&e) as i32
        }
    }
}

fn emit(text: &str, path: Option<&Path>, out: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<Status> {
    match cmd {
        Command::Validate { path } => cmd_validate(&path, out),
        Command::Build {
            kind,
            source,
            n,
            out: path,
        } => {
            let k = cmd_build(kind, &source, n)?;
            match path {
                Some(p) => {
                    k.write(&p)?;
                    writeln!(out, "wrote {} simplices to {}", k.len(), p.display())?;
                }
                None => out.write_all(k.to_json().as_bytes())?,
            }
            Ok(Status::Ok)
        }
        Command::Cohomology { input, opts } => {
            let b = Blowup::new(FilteredFaceSet::read(&input)?)?;
            let text = cohomology_table(
                &b,
                &perversities(&opts.perversity, b.n())?,
                opts.degrees,
                opts.format,
            )?;
            emit(&text, opts.out.as_deref(), out)?;
            Ok(Status::Ok)
        }
        Command::Squares { input, opts, i } => {
            let b = Blowup::new(FilteredFaceSet::read(&input)?)?;
            let text = squares_table(
                &b,
                &perversities(&opts.perversity, b.n())?,
                opts.degrees,
                &i,
                opts.format,
            )?;
            emit(&text, opts.out.as_deref(), out)?;
            Ok(Status::Ok)
        }
        Command::Verify {
            input,
            perversity,
            degrees,
            seed,
            pairs,
            out: path,
            corrupt_cup,
        } => {
            let complexes = match &input {
                Some(p) => vec![(p.display().to_string(), FilteredFaceSet::read(p)?)],
                None => corpus::filtered_corpus(),
            };
            let mut text = String::new();
            let mut failed = 0;
            for (label, k) in complexes {
                let b = Blowup::new(k)?;
                let cfg = VerifyConfig {
                    seed,
                    pairs,
                    degrees,
                    perversities: if perversity.is_empty() {
                        None
                    } else {
                        Some(perversities(&perversity, b.n())?)
                    },
                    engine: if corrupt_cup {
                        CupEngine::Corrupted
                    } else {
                        CupEngine::Standard
                    },
                };
                let report = verify_suite(&label, &b, &cfg)?;
                failed += report.checks.iter().filter(|c| !c.passed()).count();
                text.push_str(&report.to_string());
            }
            if failed == 0 {
                text.push_str("all checks passed\n");
            } else {
                text.push_str(&format!("{failed} checks failed\n"));
            }
            emit(&text, path.as_deref(), out)?;
            Ok(if failed == 0 {
                Status::Ok
            } else {
                Status::Failed
            })
        }
    }
}

/// Validates a file: violations one per line, exit 1 if any.
pub fn cmd_validate(path: &Path, out: &mut dyn Write) -> Result<Status> {
    let text = std::fs::read_to_string(path)?;
    let violations = validate_json(&text)?;
    if violations.is_empty() {
        let k = FilteredFaceSet::from_json(&text)?;
        writeln!(
            out,
            "valid: {} simplices, formal dimension {}",
            k.len(),
            k.n()
        )?;
        Ok(Status::Ok)
    } else {
        for v in &violations {
            writeln!(out, "{v}")?;
        }
        writeln!(out, "{} violations", violations.len())?;
        Ok(Status::Failed)
    }
}

fn source_face_set(source: &Source) -> Result<FaceSet> {
    match (&source.input, &source.corpus) {
        (Some(p), _) => underlying(&FilteredFaceSet::read(p)?),
        (None, Some(name)) => corpus::by_name(name)
            .map(|c| c.to_face_set())
            .ok_or_else(|| Error::Parse(format!("unknown corpus space {name:?}"))),
        (None, None) => Err(Error::Parse("no input given".into())),
    }
}

/// Builds the requested complex. The formal dimension defaults to the
/// input dimension (`+1` for cones); coneoff cones off every detected
/// boundary component.
pub fn cmd_build(kind: BuildKind, source: &Source, n: Option<usize>) -> Result<FilteredFaceSet> {
    let f = source_face_set(source)?;
    let d = f.dim().unwrap_or(0);
    match kind {
        BuildKind::Trivial => Ok(trivial_filtration(&f, n.unwrap_or(d))),
        BuildKind::Cone => cone(&f, n.unwrap_or(d + 1)),
        BuildKind::Suspension => {
            let k = suspension(&f);
            match n {
                Some(n) if n != k.n() => Err(Error::FormalDimension {
                    expected: k.n(),
                    found: n,
                }),
                _ => Ok(k),
            }
        }
        BuildKind::Coneoff => cone_off_boundary(&f, &boundary_components(&f), n.unwrap_or(d)),
    }
}

/// Parses the perversity flags; all constant perversities `0` when none
/// are given.
pub fn perversities(specs: &[String], n: usize) -> Result<Vec<Perversity>> {
    if specs.is_empty() {
        return Ok(vec![Perversity::zero(n)]);
    }
    specs
        .iter()
        .map(|s| Perversity::parse(s, n).map_err(|e| Error::Perversity(format!("{s:?}: {e}"))))
        .collect()
}

fn degree_list(b: &Blowup, degrees: Option<(usize, usize)>) -> Vec<usize> {
    match degrees {
        Some((lo, hi)) => (lo..=hi).collect(),
        None => (0..b.degree_count()).collect(),
    }
}

fn render(header: &[&str], rows: &[Vec<String>], format: Format) -> Result<String> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(header)
                .map_err(|e| Error::Internal(e.to_string()))?;
            for r in rows {
                w.write_record(r)
                    .map_err(|e| Error::Internal(e.to_string()))?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Internal(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| Error::Internal(e.to_string()))
        }
        Format::Table => {
            let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
            for r in rows {
                for (w, c) in widths.iter_mut().zip(r) {
                    *w = (*w).max(c.chars().count());
                }
            }
            let line = |cells: Vec<&str>| {
                let mut s = cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:<w$}"))
                    .collect::<Vec<_>>()
                    .join("  ");
                s.truncate(s.trim_end().len());
                s.push('\n');
                s
            };
            let mut out = line(header.to_vec());
            for r in rows {
                out.push_str(&line(r.iter().map(String::as_str).collect()));
            }
            Ok(out)
        }
    }
}

/// One row per `(p̄, k)` with `dim H^k_p̄`.
pub fn cohomology_table(
    b: &Blowup,
    ps: &[Perversity],
    degrees: Option<(usize, usize)>,
    format: Format,
) -> Result<String> {
    let mut rows = Vec::new();
    for p in ps {
        for k in degree_list(b, degrees) {
            rows.push(vec![
                p.to_string(),
                k.to_string(),
                perverse_cohomology(b, p, k)?.dim().to_string(),
            ]);
        }
    }
    render(&COHOMOLOGY_HEADER, &rows, format)
}

/// Bit string of a coordinate vector, `-` for the zero-dimensional space.
fn bits(v: &BitVec) -> String {
    if v.is_empty() {
        return "-".into();
    }
    v.to_bools()
        .iter()
        .map(|&b| if b { '1' } else { '0' })
        .collect()
}

/// One row per basis class and square index. Classes are written
/// `H^k_p̄[j]`, coordinates as bit strings.
pub fn squares_table(
    b: &Blowup,
    ps: &[Perversity],
    degrees: Option<(usize, usize)>,
    is: &[i64],
    format: Format,
) -> Result<String> {
    let mut rows = Vec::new();
    for p in ps {
        for k in degree_list(b, degrees) {
            let dim = perverse_cohomology(b, p, k)?.dim();
            for j in 0..dim {
                for &i in is {
                    let r = steenrod_square(b, p, k, &BitVec::unit(dim, j), i)?;
                    let degree: Vec<String> =
                        r.witness_degree.iter().map(ToString::to_string).collect();
                    rows.push(vec![
                        format!("H^{k}_{{{p}}}[{j}]"),
                        i.to_string(),
                        r.target_perversity.to_string(),
                        bits(&r.coords),
                        degree.join(","),
                        bits(&r.image_in_2p),
                    ]);
                }
            }
        }
    }
    render(&SQUARES_HEADER, &rows, format)
}
