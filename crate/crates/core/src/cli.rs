//! Command-line front end: `eval`, `verify`, `mc` and `krein`.
//!
//! Exit codes: 0 success, 1 failed check or I/O error, 2 usage error,
//! 3 numerical non-convergence.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::diffusion::{Diffusion, Model};
use crate::error::Error;
use crate::localtime::{InverseLocalTime, MixingMeasure, DEFAULT_ATOMS};
use crate::montecarlo::{
    excursion_max_rate, ks_statistic, mean_and_stderr, mean_upward_hitting_time, sample_straddle_euler,
    sample_straddle_exact, williams_durations, McBatch,
};
use crate::straddle::{stationary_delta_density, StraddleLaw};
use crate::verify::{run_all, SuiteOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NONCONVERGED: i32 = 3;

/// Environment variable giving the default worker-thread count.
pub const THREADS_ENV: &str = "EXCURSION_THREADS";

#[derive(Debug, Parser)]
#[command(name = "excursion", version, about = "Excursions of reflected Ornstein-Uhlenbeck and Brownian motion")]
pub struct Cli {
    /// Worker threads (default: $EXCURSION_THREADS, else all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate a density or transform on a grid.
    Eval(EvalArgs),
    /// Run the identity battery.
    Verify(VerifyArgs),
    /// Run a Monte Carlo experiment.
    Mc(McArgs),
    /// Dump the Krein spectral measure.
    Krein(KreinArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelKind {
    Ou,
    Bm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    #[arg(long, value_enum, default_value = "ou")]
    pub model: ModelKind,
    /// Drift rate of the OU model.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub gamma: f64,
}

impl ModelArgs {
    fn build(&self) -> Result<Model, CliError> {
        match self.model {
            ModelKind::Ou => Ok(Model::ou(self.gamma)?),
            ModelKind::Bm => Ok(Model::bm()),
        }
    }

    fn describe(&self) -> String {
        match self.model {
            ModelKind::Ou => format!("ou gamma={}", self.gamma),
            ModelKind::Bm => "bm".into(),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output file (stdout when absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

/// `start:stop:step`, endpoints included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl Grid {
    pub fn points(&self) -> Vec<f64> {
        let n = ((self.stop - self.start) / self.step + 1e-9).floor() as usize;
        (0..=n).map(|i| self.start + i as f64 * self.step).collect()
    }
}

impl std::fmt::Display for Grid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}:{}", self.start, self.stop, self.step)
    }
}

pub fn parse_grid(s: &str) -> Result<Grid, String> {
    let parts: Vec<&str> = s.split([':', ',']).map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!("expected start:stop:step, got '{s}'"));
    }
    let v: Vec<f64> = parts
        .iter()
        .map(|p| p.parse::<f64>().map_err(|e| format!("bad number '{p}': {e}")))
        .collect::<Result<_, _>>()?;
    let g = Grid {
        start: v[0],
        stop: v[1],
        step: v[2],
    };
    if !(g.start.is_finite() && g.stop.is_finite() && g.start < g.stop) {
        return Err(format!("grid needs start < stop, got '{s}'"));
    }
    if !(g.step > 0.0 && g.step.is_finite()) {
        return Err(format!("grid step must be > 0, got '{s}'"));
    }
    Ok(g)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum Quantity {
    Nu,
    NuTail,
    Phi,
    P00,
    Phat,
    FHit,
    Delta,
    TMinusG,
    DMinusT,
    G,
    Joint,
    StationaryDelta,
}

impl Quantity {
    fn name(self) -> &'static str {
        match self {
            Quantity::Nu => "nu",
            Quantity::NuTail => "nu_tail",
            Quantity::Phi => "phi",
            Quantity::P00 => "p00",
            Quantity::Phat => "phat",
            Quantity::FHit => "f_hit",
            Quantity::Delta => "delta",
            Quantity::TMinusG => "t_minus_g",
            Quantity::DMinusT => "d_minus_t",
            Quantity::G => "g",
            Quantity::Joint => "joint",
            Quantity::StationaryDelta => "stationary_delta",
        }
    }

    fn variable(self) -> &'static str {
        match self {
            Quantity::Phi => "lambda",
            Quantity::Delta | Quantity::StationaryDelta => "a",
            Quantity::TMinusG | Quantity::G | Quantity::Joint => "u",
            Quantity::DMinusT => "v",
            _ => "t",
        }
    }

    fn formula(self) -> &'static str {
        match self {
            Quantity::Nu => "Levy density of the inverse local time at 0",
            Quantity::NuTail => "excursion length tail n(zeta > t)",
            Quantity::Phi => "Laplace exponent Phi(lambda) of the inverse local time",
            Quantity::P00 => "transition density p(t;0,0) w.r.t. speed measure",
            Quantity::Phat => "killed transition density phat(t;x,y) w.r.t. speed measure",
            Quantity::FHit => "density of the first hitting time of 0 from x",
            Quantity::Delta => "density of D_T - G_T = (1 - e^{-alpha a}) nu(a) / Phi(alpha)",
            Quantity::TMinusG => "density of T - G_T = alpha e^{-alpha u} nu_tail(u) / Phi(alpha)",
            Quantity::DMinusT => "density of D_T - T",
            Quantity::G => "density of G_T = Phi(alpha) e^{-alpha u} p00(u)",
            Quantity::Joint => "joint density of (T - G_T, D_T - T) = alpha e^{-alpha u} nu(u + v) / Phi(alpha)",
            Quantity::StationaryDelta => "stationary straddle length density a nu(a) / m(R+)",
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct EvalArgs {
    #[arg(value_enum)]
    pub quantity: Quantity,
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub alpha: f64,
    /// Evaluation grid as start:stop:step.
    #[arg(long, value_parser = parse_grid, default_value = "0.5:3:0.5")]
    pub grid: Grid,
    /// Starting point for phat and f_hit.
    #[arg(long, default_value_t = 1.0)]
    pub x: f64,
    /// End point for phat.
    #[arg(long, default_value_t = 1.0)]
    pub y: f64,
    /// Residual life for joint.
    #[arg(long, default_value_t = 1.0)]
    pub v: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub alpha: f64,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Multiply the Lévy density by this factor (test hook).
    #[arg(long, hide = true, default_value_t = 1.0)]
    pub perturb_nu: f64,
    /// Make every tolerance unsatisfiable (test hook).
    #[arg(long, hide = true)]
    pub corrupt_tolerance: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum Experiment {
    StraddleExact,
    StraddleEuler,
    ExcursionMax,
    Williams,
}

#[derive(Debug, Clone, Args)]
pub struct McArgs {
    #[arg(value_enum)]
    pub experiment: Experiment,
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub alpha: f64,
    #[arg(long, default_value_t = 100_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 1e-4)]
    pub dt: f64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Levels for excursion_max (comma separated) or the level for williams.
    #[arg(long, value_delimiter = ',', default_value = "1")]
    pub level: Vec<f64>,
    /// Path length for excursion_max.
    #[arg(long, default_value_t = 1e4)]
    pub horizon: f64,
    /// Independent paths pooled by excursion_max.
    #[arg(long, default_value_t = 1)]
    pub paths: usize,
    /// Occupation band for the local-time estimate.
    #[arg(long, default_value_t = 0.05)]
    pub band: f64,
    /// Starting point of the upward-conditioned legs for williams.
    #[arg(long, default_value_t = 1e-4)]
    pub x0: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct KreinArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Atoms listed for the OU lattice.
    #[arg(long, default_value_t = 10)]
    pub atoms: usize,
    /// Density grid for Brownian motion.
    #[arg(long, value_parser = parse_grid, default_value = "0.5:4:0.5")]
    pub grid: Grid,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numeric(Error),
    Io(std::io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::NonConvergence { .. } | Error::Budget { .. } => CliError::Numeric(e),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Numeric(_) => EXIT_NONCONVERGED,
            CliError::Io(_) => EXIT_CHECK_FAILED,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(s) => write!(f, "{s}"),
            CliError::Numeric(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "I/O error: {e}"),
        }
    }
}

/// Rectangular output with provenance.
#[derive(Debug, Clone, Serialize)]
pub struct Table {
    pub provenance: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

fn num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

fn provenance_json(p: &[(String, String)]) -> Value {
    Value::Object(p.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect())
}

fn csv_header(p: &[(String, String)]) -> String {
    p.iter().map(|(k, v)| format!("# {k}: {v}\n")).collect()
}

impl Table {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => {
                let mut s = csv_header(&self.provenance);
                s.push_str(&self.columns.join(","));
                s.push('\n');
                for r in &self.rows {
                    let cells: Vec<String> = r.iter().map(|&x| num(x)).collect();
                    s.push_str(&cells.join(","));
                    s.push('\n');
                }
                s
            }
            Format::Json => {
                let v = json!({
                    "provenance": provenance_json(&self.provenance),
                    "columns": self.columns,
                    "rows": self.rows,
                });
                serde_json::to_string_pretty(&v).unwrap_or_default() + "\n"
            }
        }
    }
}

fn provenance(command: &str, model: &ModelArgs, extra: &[(&str, String)]) -> Vec<(String, String)> {
    let mut p = vec![
        ("tool".to_string(), format!("excursion {}", env!("CARGO_PKG_VERSION"))),
        ("command".to_string(), command.to_string()),
        ("model".to_string(), model.describe()),
    ];
    p.extend(extra.iter().map(|(k, v)| (k.to_string(), v.clone())));
    p
}

fn emit(out: &OutputArgs, text: &str) -> Result<(), CliError> {
    match &out.out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn check_alpha(alpha: f64) -> Result<(), CliError> {
    if alpha > 0.0 && alpha.is_finite() {
        Ok(())
    } else {
        Err(CliError::Usage(format!("alpha must be > 0, got {alpha}")))
    }
}

pub fn eval_table(args: &EvalArgs) -> Result<Table, CliError> {
    check_alpha(args.alpha)?;
    let model = args.model.build()?;
    let q = args.quantity;
    let law = StraddleLaw::new(model, args.alpha)?;
    let f = |s: f64| -> crate::error::Result<f64> {
        match q {
            Quantity::Nu => model.nu(s),
            Quantity::NuTail => model.nu_tail(s),
            Quantity::Phi => model.phi(s),
            Quantity::P00 => model.p00(s),
            Quantity::Phat => model.phat(s, args.x, args.y),
            Quantity::FHit => model.f_hit(args.x, s),
            Quantity::Delta => law.density_delta(s),
            Quantity::TMinusG => law.density_t_minus_g(s),
            Quantity::DMinusT => law.density_d_minus_t(s),
            Quantity::G => law.density_g(s),
            Quantity::Joint => law.joint_tg_dt(s, args.v),
            Quantity::StationaryDelta => stationary_delta_density(&model, s),
        }
    };
    let mut rows = Vec::new();
    for s in args.grid.points() {
        let value = f(s).map_err(|e| match CliError::from(e) {
            CliError::Usage(m) => CliError::Usage(format!("row {}={s}: {m}", q.variable())),
            other => other,
        })?;
        rows.push(vec![s, value]);
    }
    let mut extra = vec![("quantity", q.name().to_string()), ("formula", q.formula().to_string())];
    match q {
        Quantity::Delta | Quantity::TMinusG | Quantity::DMinusT | Quantity::G | Quantity::Joint => {
            extra.push(("alpha", args.alpha.to_string()))
        }
        _ => {}
    }
    match q {
        Quantity::Phat => {
            extra.push(("x", args.x.to_string()));
            extra.push(("y", args.y.to_string()));
        }
        Quantity::FHit => extra.push(("x", args.x.to_string())),
        Quantity::Joint => extra.push(("v", args.v.to_string())),
        _ => {}
    }
    extra.push(("grid", args.grid.to_string()));
    Ok(Table {
        provenance: provenance("eval", &args.model, &extra),
        columns: vec![q.variable().to_string(), q.name().to_string()],
        rows,
    })
}

/// Runs the battery; returns the rendered report and whether it succeeded.
pub fn verify_report(args: &VerifyArgs) -> Result<(String, i32), CliError> {
    check_alpha(args.alpha)?;
    let model = args.model.build()?;
    let options = SuiteOptions {
        nu_factor: args.perturb_nu,
        tolerance_scale: if args.corrupt_tolerance { -1.0 } else { 1.0 },
    };
    let report = run_all(&[model], &[args.alpha], options);
    let code = if report.failed > 0 {
        EXIT_CHECK_FAILED
    } else if report.non_converged > 0 {
        EXIT_NONCONVERGED
    } else {
        EXIT_OK
    };
    let prov = provenance(
        "verify",
        &args.model,
        &[
            ("alpha", args.alpha.to_string()),
            (
                "summary",
                format!(
                    "passed={} failed={} non_converged={} unavailable={}",
                    report.passed, report.failed, report.non_converged, report.unavailable
                ),
            ),
        ],
    );
    let text = match args.output.format {
        Format::Json => {
            let v = json!({ "provenance": provenance_json(&prov), "report": report });
            serde_json::to_string_pretty(&v).unwrap_or_default() + "\n"
        }
        Format::Csv => {
            let mut s = csv_header(&prov);
            s.push_str("check_id,inputs,lhs,rhs,tolerance,status\n");
            for r in &report.reports {
                let inputs: Vec<String> = r.inputs.iter().map(|(k, v)| format!("{k}={v}")).collect();
                let status = serde_json::to_value(r.status)
                    .ok()
                    .and_then(|v| v.as_str().map(String::from))
                    .unwrap_or_default();
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{}",
                    r.check_id,
                    inputs.join(";"),
                    num(r.lhs),
                    num(r.rhs),
                    num(r.tolerance),
                    status
                );
            }
            s
        }
    };
    Ok((text, code))
}

fn straddle_summary(batch: &McBatch, model: Model) -> Result<Vec<Vec<f64>>, CliError> {
    let law = StraddleLaw::new(model, batch.alpha)?;
    let columns: [(&[f64], &(dyn Fn(f64) -> crate::error::Result<f64> + Sync)); 4] = [
        (&batch.delta, &|x| law.cdf_delta(x)),
        (&batch.t_minus_g, &|x| law.cdf_t_minus_g(x)),
        (&batch.g, &|x| law.cdf_g(x)),
        (&batch.d_minus_t, &|x| law.cdf_d_minus_t(x)),
    ];
    let mut rows = Vec::new();
    for (i, (xs, cdf)) in columns.into_iter().enumerate() {
        let (m, se) = mean_and_stderr(xs);
        let ks = ks_statistic(xs, cdf)?;
        rows.push(vec![i as f64, m, se, ks]);
    }
    Ok(rows)
}

const STRADDLE_VARIABLES: [&str; 4] = ["delta", "t_minus_g", "g", "d_minus_t"];

pub fn mc_table(args: &McArgs) -> Result<Table, CliError> {
    check_alpha(args.alpha)?;
    let model = args.model.build()?;
    let gamma = model.gamma();
    let mut extra = vec![("seed", args.seed.to_string())];
    let (experiment, columns, rows) = match args.experiment {
        Experiment::StraddleExact | Experiment::StraddleEuler => {
            let exact = args.experiment == Experiment::StraddleExact;
            let batch = if exact {
                sample_straddle_exact(gamma, args.alpha, args.samples, args.seed)?
            } else {
                extra.push(("dt", args.dt.to_string()));
                sample_straddle_euler(gamma, args.alpha, args.samples, args.dt, args.seed)?
            };
            extra.push(("alpha", args.alpha.to_string()));
            extra.push(("samples", args.samples.to_string()));
            extra.push(("variable_index", STRADDLE_VARIABLES.join(";")));
            extra.push(("formula", "KS distance against the analytic straddle CDFs".into()));
            let name = if exact { "straddle_exact" } else { "straddle_euler" };
            (
                name,
                vec!["variable", "mean", "stderr", "ks"],
                straddle_summary(&batch, model)?,
            )
        }
        Experiment::ExcursionMax => {
            let est = excursion_max_rate(
                gamma,
                args.dt,
                args.horizon,
                &args.level,
                args.band,
                args.seed,
                args.paths,
            )?;
            extra.push(("dt", args.dt.to_string()));
            extra.push(("horizon", args.horizon.to_string()));
            extra.push(("paths", args.paths.to_string()));
            extra.push(("band", args.band.to_string()));
            extra.push(("local_time", num(est.local_time)));
            extra.push(("formula", "n(M >= a) = 1/S(a)".into()));
            let mut rows = Vec::new();
            for ((&a, &c), r) in est.levels.iter().zip(&est.counts).zip(est.rates()) {
                let target = 1.0 / model.scale(a)?;
                rows.push(vec![a, c as f64, r, target, r / target - 1.0]);
            }
            (
                "excursion_max",
                vec!["level", "count", "estimate", "inverse_scale", "relative_error"],
                rows,
            )
        }
        Experiment::Williams => {
            extra.push(("dt", args.dt.to_string()));
            extra.push(("x0", args.x0.to_string()));
            extra.push(("samples", args.samples.to_string()));
            extra.push(("formula", "mean duration 2 E[H_a] of the upward-conditioned process".into()));
            let mut rows = Vec::new();
            for &a in &args.level {
                let d = williams_durations(gamma, a, args.x0, args.dt, args.samples, args.seed)?;
                let (m, se) = mean_and_stderr(&d);
                rows.push(vec![a, m, se, 2.0 * mean_upward_hitting_time(&model, a)?]);
            }
            ("williams", vec!["level", "mean_duration", "stderr", "oracle_mean"], rows)
        }
    };
    extra.insert(0, ("experiment", experiment.to_string()));
    Ok(Table {
        provenance: provenance("mc", &args.model, &extra),
        columns: columns.into_iter().map(String::from).collect(),
        rows,
    })
}

pub fn krein_table(args: &KreinArgs) -> Result<Table, CliError> {
    let model = args.model.build()?;
    let measure = model.krein_measure()?;
    let rebuilt = measure.laplace(1.0, DEFAULT_ATOMS, 1e-12)?.into_result("krein_reconstruction")?;
    let residual = (rebuilt - model.nu(1.0)?).abs();
    let mut extra = vec![
        ("formula", "nu(t) = int e^{-tz} M(dz)".to_string()),
        ("nu_reconstruction_residual_t1", num(residual)),
    ];
    let (columns, rows) = match measure {
        MixingMeasure::Lattice { .. } => {
            extra.push(("atoms", args.atoms.to_string()));
            let rows = measure
                .atoms(args.atoms)?
                .into_iter()
                .enumerate()
                .map(|(n, (z, w))| vec![n as f64, z, w])
                .collect();
            (vec!["n", "location", "weight"], rows)
        }
        MixingMeasure::Power { .. } => {
            extra.push(("grid", args.grid.to_string()));
            let rows = args
                .grid
                .points()
                .into_iter()
                .map(|z| Ok(vec![z, measure.density(z)?]))
                .collect::<Result<_, Error>>()?;
            (vec!["z", "density"], rows)
        }
    };
    Ok(Table {
        provenance: provenance("krein", &args.model, &extra),
        columns: columns.into_iter().map(String::from).collect(),
        rows,
    })
}

fn configure_threads(flag: Option<usize>) -> Result<(), CliError> {
    let n = match flag {
        Some(n) => Some(n),
        None => match std::env::var(THREADS_ENV) {
            Ok(v) => Some(
                v.trim()
                    .parse::<usize>()
                    .map_err(|_| CliError::Usage(format!("{THREADS_ENV} must be a positive integer, got '{v}'")))?,
            ),
            Err(_) => None,
        },
    };
    if let Some(n) = n {
        if n == 0 {
            return Err(CliError::Usage("thread count must be >= 1".into()));
        }
        // a pool configured earlier in this process keeps its size
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

fn dispatch(cli: &Cli) -> Result<i32, CliError> {
    configure_threads(cli.threads)?;
    match &cli.command {
        Command::Eval(a) => {
            emit(&a.output, &eval_table(a)?.render(a.output.format))?;
            Ok(EXIT_OK)
        }
        Command::Verify(a) => {
            let (text, code) = verify_report(a)?;
            emit(&a.output, &text)?;
            Ok(code)
        }
        Command::Mc(a) => {
            emit(&a.output, &mc_table(a)?.render(a.output.format))?;
            Ok(EXIT_OK)
        }
        Command::Krein(a) => {
            emit(&a.output, &krein_table(a)?.render(a.output.format))?;
            Ok(EXIT_OK)
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
