//! Command-line front end for `fcarel`.
//!
//! Exit codes: 0 success, 1 usage, 2 unreadable or malformed input,
//! 3 degenerate entropy or relevance, 4 size, guard or capacity violation.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use fcarel::experiment::{run_experiment, svg_chart, write_csv, ExperimentConfig};
use fcarel::selection::{Objective, SelectionMethod, SelectionOptions, Selector};
use fcarel::{
    clarify, make_scale, parse_context, reduce, write_context, EntropyKind, Enumerator, Error, FormalContext, Format,
    RelevanceAnalysis, ScaleKind,
};

pub const CONCEPT_CAP_ENV: &str = "FCAREL_CONCEPT_CAP";

#[derive(Parser, Debug)]
#[command(name = "fcarel", version, about = "Attribute relevance in formal contexts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Input {
    /// Context file (.cxt or .csv)
    file: PathBuf,
    /// Input format; guessed from the file extension if omitted
    #[arg(long)]
    format: Option<Format>,
    /// Write the result here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the formal concepts
    Concepts {
        #[command(flatten)]
        input: Input,
        /// Print only the number of concepts
        #[arg(long)]
        count_only: bool,
    },
    /// Shannon object entropy and object entropy
    Entropy {
        #[command(flatten)]
        input: Input,
        /// se or oe; both if omitted
        #[arg(long)]
        kind: Option<EntropyKind>,
        /// Divide the Shannon object entropy by |G|
        #[arg(long)]
        normalized: bool,
    },
    /// Relative relevance of attributes
    Relevance {
        #[command(flatten)]
        input: Input,
        /// Every single attribute (the default)
        #[arg(long)]
        all: bool,
        /// r of this comma-separated attribute set
        #[arg(long, value_delimiter = ',')]
        set: Option<Vec<String>>,
    },
    /// Select attributes of high relevance
    Select {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        size: usize,
        #[arg(long, default_value = "imrs")]
        method: SelectionMethod,
        /// Direction of the entropic search
        #[arg(long, default_value = "max")]
        objective: Objective,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random trials; 10·|M| if omitted
        #[arg(long)]
        trials: Option<usize>,
    },
    /// Sweep sizes 1..=max-size over several methods and write CSV
    Experiment {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        max_size: usize,
        #[arg(long, value_delimiter = ',', default_value = "imrs,era-se,era-oe,random")]
        method: Vec<SelectionMethod>,
        #[arg(long, default_value = "max")]
        objective: Objective,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        trials: Option<usize>,
        /// Also write an SVG line chart
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Merge attributes with equal extents
    Clarify {
        #[command(flatten)]
        input: Input,
    },
    /// Clarify and drop reducible attributes
    Reduce {
        #[command(flatten)]
        input: Input,
    },
    /// Write an ordinal, nominal or contranominal scale
    Scale {
        #[arg(long)]
        kind: ScaleKind,
        #[arg(long)]
        n: usize,
        /// cxt or csv; guessed from --out if omitted
        #[arg(long)]
        format: Option<Format>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Swap objects and attributes
    Transpose {
        #[command(flatten)]
        input: Input,
    },
}

/// Maps a library error to the process exit code.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidUtf8
        | Error::Malformed { .. }
        | Error::DimensionMismatch { .. }
        | Error::IllegalCell { .. }
        | Error::DuplicateName { .. }
        | Error::Csv(_)
        | Error::Io(_) => 2,
        Error::DegenerateEntropy | Error::DegenerateRelevance | Error::EmptyObjectSet => 3,
        Error::SizeOutOfRange { .. } | Error::CombinatorialGuard { .. } | Error::CapacityExceeded { .. } => 4,
        Error::UnknownName { .. }
        | Error::IndexOutOfRange { .. }
        | Error::EmptyScale
        | Error::NotClarified(..)
        | Error::NoTrials => 1,
    }
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Lib(Error::Io(e))
    }
}

/// Runs the command line `args` (including the program name), reading the
/// concept cap from the environment.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cap = std::env::var(CONCEPT_CAP_ENV).ok();
    run_with_cap(args, cap.as_deref(), out, err)
}

pub fn run_with_cap<I, T>(args: I, cap: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = enumerator(cap).and_then(|en| dispatch(cli.command, en, out, err));
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn enumerator(cap: Option<&str>) -> Result<Enumerator, Failure> {
    let en = Enumerator::default();
    match cap {
        None => Ok(en),
        Some(s) => s
            .trim()
            .parse()
            .map(|c| en.cap(c))
            .map_err(|_| Failure::Usage(format!("{CONCEPT_CAP_ENV} must be a non-negative integer, got {s:?}"))),
    }
}

fn load(input: &Input) -> Result<FormalContext, Failure> {
    let bytes = std::fs::read(&input.file).map_err(|e| {
        Failure::Lib(Error::Io(std::io::Error::new(
            e.kind(),
            format!("{}: {e}", input.file.display()),
        )))
    })?;
    let format = input.format.unwrap_or_else(|| Format::from_path(&input.file));
    let ctx = parse_context(&bytes, format)?;
    if ctx.name().is_empty() {
        let stem = input
            .file
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        return Ok(ctx.with_name(stem));
    }
    Ok(ctx)
}

fn emit(out: &mut dyn Write, path: Option<&Path>, bytes: &[u8]) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, bytes)?,
        None => out.write_all(bytes)?,
    }
    Ok(())
}

fn emit_context(out: &mut dyn Write, input: &Input, ctx: &FormalContext) -> Result<(), Failure> {
    let format = output_format(
        input.out.as_deref(),
        input.format.unwrap_or_else(|| Format::from_path(&input.file)),
    );
    emit(out, input.out.as_deref(), &write_context(ctx, format))
}

fn output_format(out: Option<&Path>, fallback: Format) -> Format {
    match out {
        Some(p) if p.extension().is_some() => Format::from_path(p),
        _ => fallback,
    }
}

fn names(ctx: &FormalContext, side: &fcarel::BitSet, objects: bool) -> String {
    let all = if objects { ctx.objects() } else { ctx.attributes() };
    side.iter().map(|i| all[i].as_str()).collect::<Vec<_>>().join(",")
}

fn dispatch(command: Command, en: Enumerator, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let options = SelectionOptions {
        enumerator: en,
        ..SelectionOptions::default()
    };
    match command {
        Command::Concepts { input, count_only } => {
            let ctx = load(&input)?;
            let text = if count_only {
                format!("{}\n", en.count(&ctx)?)
            } else {
                let cs = en.enumerate(&ctx)?;
                let mut text = String::from("extent\tintent\n");
                for c in cs.iter() {
                    text.push_str(&format!(
                        "{{{}}}\t{{{}}}\n",
                        names(&ctx, &c.extent, true),
                        names(&ctx, &c.intent, false)
                    ));
                }
                text
            };
            emit(out, input.out.as_deref(), text.as_bytes())?;
        }
        Command::Entropy {
            input,
            kind,
            normalized,
        } => {
            let ctx = load(&input)?;
            let se = || fcarel::shannon_object_entropy(&ctx, normalized);
            let text = match kind {
                Some(EntropyKind::ShannonObject) => format!("{}\n", se()?),
                Some(EntropyKind::Object) => format!("{}\n", fcarel::object_entropy(&ctx)?),
                None => format!("se\t{}\noe\t{}\n", se()?, fcarel::object_entropy(&ctx)?),
            };
            emit(out, input.out.as_deref(), text.as_bytes())?;
        }
        Command::Relevance { input, all, set } => {
            let ctx = load(&input)?;
            let analysis = RelevanceAnalysis::with_enumerator(&ctx, options.policy, &en)?;
            let mut text = String::new();
            if all || set.is_none() {
                for (m, name) in ctx.attributes().iter().enumerate() {
                    text.push_str(&format!("{name}\t{}\n", analysis.relevance(&[m])?));
                }
            }
            if let Some(set) = set {
                let idx = ctx.attribute_indices(&set)?;
                text.push_str(&format!("{} r={}\n", set.join(","), analysis.relevance(&idx)?));
            }
            emit(out, input.out.as_deref(), text.as_bytes())?;
        }
        Command::Select {
            input,
            size,
            method,
            objective,
            seed,
            trials,
        } => {
            let ctx = load(&input)?;
            let selector = Selector::new(&ctx, options)?;
            let text = match method {
                SelectionMethod::Random => {
                    let trials = trials.unwrap_or_else(|| selector.default_trials());
                    let b = selector.random(size, trials, seed)?;
                    format!("random size={size} trials={trials} mean={} std={}\n", b.mean, b.std)
                }
                _ => {
                    let r = match method {
                        SelectionMethod::Exhaustive => selector.exhaustive(size)?,
                        SelectionMethod::Imrs => selector.imrs(size)?,
                        _ => selector.era(size, method.entropy_kind().expect("entropic method"), objective)?,
                    };
                    let _ = writeln!(err, "evaluations: {}", r.evaluations);
                    match r.era {
                        Some(era) => format!("{} r={} era={era}\n", r.names.join(","), r.relevance),
                        None => format!("{} r={}\n", r.names.join(","), r.relevance),
                    }
                }
            };
            emit(out, input.out.as_deref(), text.as_bytes())?;
        }
        Command::Experiment {
            input,
            max_size,
            method,
            objective,
            seed,
            trials,
            svg,
        } => {
            let ctx = load(&input)?;
            let config = ExperimentConfig {
                max_size,
                methods: method,
                seed,
                trials,
                objective,
                options,
            };
            let outcome = run_experiment(&ctx, &config)?;
            emit(out, input.out.as_deref(), &write_csv(&outcome.records)?)?;
            if let Some(path) = svg {
                std::fs::write(path, svg_chart(&outcome.records))?;
            }
            if let Some(first) = outcome.errors.first() {
                for e in &outcome.errors {
                    let _ = writeln!(err, "error: {e}");
                }
                return Ok(exit_code(first));
            }
        }
        Command::Clarify { input } => {
            let ctx = load(&input)?;
            emit_context(out, &input, &clarify(&ctx).0)?;
        }
        Command::Reduce { input } => {
            let ctx = load(&input)?;
            emit_context(out, &input, &reduce(&ctx))?;
        }
        Command::Transpose { input } => {
            let ctx = load(&input)?;
            emit_context(out, &input, &ctx.transpose())?;
        }
        Command::Scale {
            kind,
            n,
            format,
            out: path,
        } => {
            let ctx = make_scale(kind, n)?;
            let format = format.unwrap_or_else(|| output_format(path.as_deref(), Format::Cxt));
            emit(out, path.as_deref(), &write_context(&ctx, format))?;
        }
    }
    Ok(0)
}
