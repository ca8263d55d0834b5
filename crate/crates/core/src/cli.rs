//! Command-line front end. [`run`] takes the argument list and output
//! streams so it can be driven in-process; the binary only forwards to it.
//!
//! Exit codes: 0 success, 1 usage error, 2 data error. Every failure
//! writes one JSON object on a single line to the error stream.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::clusteval::{
    evaluate_embedding, evaluate_placement, load_external_embedding, EvalConfig, DEFAULT_RESTARTS,
    DEFAULT_SEED,
};
use crate::datagen::{
    gen_billiard, gen_study_dataset, gen_teaser, load_csv, to_csv_string, BilliardConfig,
    StudyDatasetSpec, StudyKind,
};
use crate::error::Error;
use crate::model::{Dataset, Scheme, StrategyKind, Transform};
use crate::placement::PlacementStrategy;
use crate::render::{
    fit_cpp_scale, fit_glyph_scale, render_cpp, render_glyphs, render_pcp, render_rc, RenderStyle,
};

/// Environment variable capping the worker thread count.
pub const THREADS_ENV: &str = "CYCLOPOLY_THREADS";

#[derive(Parser, Debug)]
#[command(
    name = "cyclopoly",
    version,
    about = "Cyclic polygon plots for multi-dimensional data"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a dataset CSV.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Render a dataset as a cyclic polygon plot, parallel coordinates or radar chart.
    Plot(PlotArgs),
    /// Place polygons as glyphs and render the layout.
    Place(PlaceArgs),
    /// Cluster a placement (or an external embedding) and score it against the classes.
    Eval(EvalArgs),
}

#[derive(Subcommand, Debug)]
enum GenKind {
    /// The two six-dimensional example vectors.
    Teaser {
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Phase-space trajectories of billiards in ellipses.
    Billiard {
        #[arg(short, long)]
        output: PathBuf,
        /// Metadata JSON (config, reseeds, boundary residual).
        #[arg(long)]
        meta: Option<PathBuf>,
        /// Semi-major axis of each table, one cluster per value.
        #[arg(long, value_delimiter = ',')]
        a_values: Option<Vec<f64>>,
        #[arg(long)]
        trajectories: Option<usize>,
        #[arg(long)]
        reflections: Option<usize>,
    },
    /// A task dataset for outlier detection, value retrieval or value comparison.
    Study {
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long)]
        meta: Option<PathBuf>,
        #[arg(long, value_enum)]
        task: TaskArg,
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long, default_value_t = 10)]
        members: usize,
        /// Values to insert (one for retrieval, two for comparison).
        #[arg(long, value_delimiter = ',')]
        values: Vec<f64>,
        /// Multiply each dimension by a random factor.
        #[arg(long)]
        scaling: bool,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum TaskArg {
    Od,
    Vr,
    Vc,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ViewArg {
    Cpp,
    Pcp,
    Rc,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SchemeArg {
    Abbc,
    Abcd,
}

impl From<SchemeArg> for Scheme {
    fn from(s: SchemeArg) -> Self {
        match s {
            SchemeArg::Abbc => Scheme::AbBc,
            SchemeArg::Abcd => Scheme::AbCd,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ScaleArg {
    Linear,
    Log,
}

impl From<ScaleArg> for Transform {
    fn from(s: ScaleArg) -> Self {
        match s {
            ScaleArg::Linear => Transform::Linear,
            ScaleArg::Log => Transform::Log10,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum StrategyArg {
    Intrinsic,
    Geometric,
    Angular,
    Statistical,
}

impl From<StrategyArg> for StrategyKind {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Intrinsic => StrategyKind::Intrinsic,
            StrategyArg::Geometric => StrategyKind::Geometric,
            StrategyArg::Angular => StrategyKind::Angular,
            StrategyArg::Statistical => StrategyKind::Statistical,
        }
    }
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Dataset CSV.
    input: PathBuf,
    /// Column holding class labels (default: a column named "class").
    #[arg(long)]
    label_column: Option<String>,
    /// Rescale every dimension to [0, 1] before use.
    #[arg(long)]
    normalize_data: bool,
}

impl InputArgs {
    fn load(&self) -> crate::Result<Dataset> {
        let ds = load_csv(&self.input, self.label_column.as_deref())?;
        Ok(if self.normalize_data {
            ds.minmax_normalized()
        } else {
            ds
        })
    }
}

#[derive(Args, Debug)]
struct StyleArgs {
    /// Hide vertex dots.
    #[arg(long)]
    no_dots: bool,
    /// Hide first-vertex arrows.
    #[arg(long)]
    no_arrows: bool,
    #[arg(long, default_value_t = 600)]
    width: u32,
    #[arg(long, default_value_t = 600)]
    height: u32,
}

impl StyleArgs {
    fn style(&self) -> RenderStyle {
        RenderStyle {
            width: self.width,
            height: self.height,
            show_dots: !self.no_dots,
            show_arrows: !self.no_arrows,
            ..RenderStyle::default()
        }
    }
}

#[derive(Args, Debug)]
struct PlotArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value = "cpp")]
    view: ViewArg,
    #[arg(long, value_enum, default_value = "abbc")]
    scheme: SchemeArg,
    #[arg(long, value_enum, default_value = "linear")]
    scale: ScaleArg,
    /// Scale each parallel-coordinates axis to its own range.
    #[arg(long)]
    per_axis: bool,
    #[command(flatten)]
    style: StyleArgs,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct PlaceArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum)]
    strategy: StrategyArg,
    #[arg(long, value_enum, default_value = "abcd")]
    scheme: SchemeArg,
    #[arg(long, value_enum, default_value = "linear")]
    scale: ScaleArg,
    /// Glyph size relative to the original polygon.
    #[arg(long)]
    scale_factor: Option<f64>,
    #[command(flatten)]
    style: StyleArgs,
    #[arg(long)]
    out: PathBuf,
    /// Also write the placement coordinates as CSV.
    #[arg(long)]
    coords_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, required_unless_present = "embedding")]
    strategy: Option<StrategyArg>,
    #[arg(long, value_enum, default_value = "abcd")]
    scheme: SchemeArg,
    /// Score an externally computed x,y embedding instead of a placement.
    #[arg(long, conflicts_with = "strategy")]
    embedding: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_SEED, conflicts_with = "entropy")]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_RESTARTS)]
    restarts: usize,
    /// Rescale both embedding axes to [0, 1] before clustering.
    #[arg(long)]
    normalize_coords: bool,
    /// Draw the seed from system entropy (the seed used is reported).
    #[arg(long)]
    entropy: bool,
}

#[derive(Serialize)]
struct ErrorLine<'a> {
    error: &'a str,
    message: String,
}

enum Failure {
    Usage(String),
    Data(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Data(e)
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    std::fs::write(path, contents).map_err(|source| {
        Failure::Data(Error::Io {
            path: path.to_path_buf(),
            source,
        })
    })
}

fn write_json(path: &Path, value: &impl Serialize) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(value).expect("metadata serializes");
    text.push('\n');
    write_file(path, &text)
}

/// Applies the thread cap from the environment to the global pool. Only
/// the first call in a process has an effect.
pub fn configure_threads() {
    if let Some(n) = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global();
        }
    }
}

/// Runs one command and returns its exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let message = e.kind().as_str().map_or_else(
                || e.to_string().lines().next().unwrap_or("").to_string(),
                |kind| {
                    let first = e.to_string().lines().next().unwrap_or("").to_string();
                    format!("{kind}: {}", first.trim_start_matches("error: "))
                },
            );
            return fail(err, Failure::Usage(message));
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => 0,
        Err(f) => fail(err, f),
    }
}

fn fail(err: &mut dyn Write, failure: Failure) -> i32 {
    let (kind, message, code) = match failure {
        Failure::Usage(m) => ("usage", m, 1),
        Failure::Data(e) => ("data", e.to_string(), 2),
    };
    let line = ErrorLine {
        error: kind,
        message: message.replace('\n', " "),
    };
    let _ = writeln!(
        err,
        "{}",
        serde_json::to_string(&line).expect("error serializes")
    );
    code
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<(), Failure> {
    match command {
        Command::Gen { kind } => gen(kind),
        Command::Plot(args) => plot(args),
        Command::Place(args) => place(args),
        Command::Eval(args) => eval(args, out),
    }
}

fn gen(kind: GenKind) -> Result<(), Failure> {
    match kind {
        GenKind::Teaser { output } => write_file(&output, &to_csv_string(&gen_teaser())),
        GenKind::Billiard {
            output,
            meta,
            a_values,
            trajectories,
            reflections,
        } => {
            let mut cfg = BilliardConfig::default();
            if let Some(a) = a_values {
                cfg.a_values = a;
            }
            if let Some(t) = trajectories {
                cfg.trajectories_per_cluster = t;
            }
            if let Some(r) = reflections {
                cfg.reflections = r;
            }
            let run = gen_billiard(&cfg)?;
            write_file(&output, &to_csv_string(&run.dataset))?;
            if let Some(meta) = meta {
                write_json(&meta, &run.metadata)?;
            }
            Ok(())
        }
        GenKind::Study {
            output,
            meta,
            task,
            n,
            members,
            values,
            scaling,
            seed,
        } => {
            let spec = StudyDatasetSpec {
                kind: match task {
                    TaskArg::Od => StudyKind::OutlierDetection,
                    TaskArg::Vr => StudyKind::ValueRetrieval,
                    TaskArg::Vc => StudyKind::ValueComparison,
                },
                n,
                members,
                inserted_values: values,
                per_dimension_scaling: scaling,
                seed,
            };
            let (ds, metadata) = gen_study_dataset(&spec)?;
            write_file(&output, &to_csv_string(&ds))?;
            if let Some(meta) = meta {
                write_json(&meta, &metadata)?;
            }
            Ok(())
        }
    }
}

fn plot(args: PlotArgs) -> Result<(), Failure> {
    let ds = args.input.load()?;
    let style = args.style.style();
    let svg = match args.view {
        ViewArg::Cpp => {
            let scheme = args.scheme.into();
            let scale = fit_cpp_scale(&ds, scheme, args.scale.into())?;
            render_cpp(&ds, scheme, &scale, &style)?
        }
        ViewArg::Pcp => render_pcp(&ds, &style, !args.per_axis)?,
        ViewArg::Rc => render_rc(&ds, &style)?,
    };
    write_file(&args.out, &svg)
}

fn strategy(
    kind: StrategyArg,
    scheme: SchemeArg,
    factor: Option<f64>,
) -> Result<PlacementStrategy, Failure> {
    let s = PlacementStrategy::new(kind.into(), scheme.into());
    match factor {
        Some(f) => s
            .with_scale_factor(f)
            .map_err(|e| Failure::Usage(e.to_string())),
        None => Ok(s),
    }
}

fn place(args: PlaceArgs) -> Result<(), Failure> {
    let ds = args.input.load()?;
    let layout = strategy(args.strategy, args.scheme, args.scale_factor)?.place(&ds);
    let scale = fit_glyph_scale(&layout, args.scale.into())?;
    let svg = render_glyphs(&layout, &scale, &args.style.style(), ds.labels.as_deref())?;
    write_file(&args.out, &svg)?;
    if let Some(path) = args.coords_out {
        let mut csv = String::from("x,y");
        if ds.labels.is_some() {
            csv.push_str(",class");
        }
        csv.push('\n');
        for (i, c) in layout.centroids().iter().enumerate() {
            csv.push_str(&format!("{:?},{:?}", c.x, c.y));
            if let Some(labels) = &ds.labels {
                csv.push(',');
                csv.push_str(&labels[i]);
            }
            csv.push('\n');
        }
        write_file(&path, &csv)?;
    }
    Ok(())
}

fn eval(args: EvalArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let ds = args.input.load()?;
    let seed = if args.entropy {
        rand::random()
    } else {
        args.seed
    };
    let cfg = EvalConfig {
        restarts: args.restarts,
        seed,
        normalize_coordinates: args.normalize_coords,
        ..EvalConfig::default()
    };
    let truth = ds.labels.as_deref().ok_or(Error::Unlabeled)?;
    let report = match (&args.embedding, args.strategy) {
        (Some(path), _) => {
            let points = load_external_embedding(path, ds.len())?;
            evaluate_embedding(&points, truth, &cfg)?
        }
        (None, Some(kind)) => {
            let layout = strategy(kind, args.scheme, None)?.place(&ds);
            evaluate_placement(&layout, Some(truth), &cfg)?
        }
        (None, None) => unreachable!("clap requires --strategy or --embedding"),
    };
    let _ = write!(out, "{}", report.to_table());
    let _ = writeln!(out, "{}", report.to_json_line());
    Ok(())
}
