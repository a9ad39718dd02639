//! Subcommand definitions and dispatch.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use monoboot::{
    confidence_band, coverage_experiment, fit_lse, nw_curve, select_c, slse_curve, uniform_grid,
    BandwidthPlan, BootstrapConfig, EstimatorKind, NwSigma, Scenario, ScenarioSpec, SlseFit,
};

use crate::io::{emit, full_precision, load_sample, Table};
use crate::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "monoboot",
    version,
    about = "Monotone regression with smoothed-bootstrap confidence intervals"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fit the isotonic step function and a smoothed curve on a grid
    Fit(FitArgs),
    /// Pointwise bootstrap confidence band on a grid
    Band(BandArgs),
    /// Pick the bandwidth constant by bootstrap MISE
    Bandwidth(BandwidthArgs),
    /// Monte-Carlo coverage experiment on a synthetic scenario
    Simulate(SimulateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EstimatorArg {
    Slse,
    Nw,
}

impl From<EstimatorArg> for EstimatorKind {
    fn from(e: EstimatorArg) -> Self {
        match e {
            EstimatorArg::Slse => EstimatorKind::Slse,
            EstimatorArg::Nw => EstimatorKind::Nw,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SigmaArg {
    /// Hall-Kay second-order difference estimator
    HallKay,
    /// Root mean square of the centered pilot residuals
    Residual,
}

impl From<SigmaArg> for NwSigma {
    fn from(s: SigmaArg) -> Self {
        match s {
            SigmaArg::HallKay => NwSigma::HallKay,
            SigmaArg::Residual => NwSigma::Residual,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScenarioArg {
    Quadratic,
    Logistic,
}

impl From<ScenarioArg> for Scenario {
    fn from(s: ScenarioArg) -> Self {
        match s {
            ScenarioArg::Quadratic => Scenario::Quadratic,
            ScenarioArg::Logistic => Scenario::Logistic,
        }
    }
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Two-column CSV with header `x,y`
    #[arg(long)]
    pub input: PathBuf,
    /// Treat the input as (year, days) pairs and apply the Mendota
    /// rescale-and-reverse transform before fitting
    #[arg(long)]
    pub mendota: bool,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output file; stdout when omitted
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    #[arg(long, value_enum, default_value = "slse")]
    pub estimator: EstimatorArg,
    /// Constant in the main bandwidth h = c n^(-1/5)
    #[arg(long, default_value_t = 0.5)]
    pub c: f64,
    /// Constant in the pilot bandwidth h0 = c0 n^(-1/9)
    #[arg(long, default_value_t = 0.7)]
    pub c0: f64,
    /// Evaluation grid step; points run step, 2*step, ..., below 1
    #[arg(long, default_value_t = 0.01)]
    pub grid_step: f64,
}

#[derive(Debug, Args)]
pub struct BandArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    #[arg(long, value_enum, default_value = "slse")]
    pub estimator: EstimatorArg,
    /// Studentize the bootstrap differences
    #[arg(long)]
    pub studentized: bool,
    /// Scale estimator for Studentized NW intervals
    #[arg(long, value_enum, default_value = "hall-kay")]
    pub sigma: SigmaArg,
    #[arg(long, default_value_t = 0.5)]
    pub c: f64,
    #[arg(long, default_value_t = 0.7)]
    pub c0: f64,
    /// Bootstrap replications
    #[arg(long = "B", default_value_t = 1000)]
    pub replications: usize,
    #[arg(long, default_value_t = 0.05)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 0.01)]
    pub grid_step: f64,
}

#[derive(Debug, Args)]
pub struct BandwidthArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    #[arg(long, default_value_t = 0.7)]
    pub c0: f64,
    #[arg(long = "B", default_value_t = 1000)]
    pub replications: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Step of the MISE evaluation grid over [0, 1]
    #[arg(long, default_value_t = 0.01)]
    pub grid_step: f64,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub output: OutputArgs,
    #[arg(long, value_enum)]
    pub scenario: ScenarioArg,
    /// Sample size per repetition
    #[arg(long, default_value_t = 100)]
    pub n: usize,
    /// Outer Monte-Carlo repetitions
    #[arg(long = "M", default_value_t = 200)]
    pub outer: usize,
    #[arg(long, value_enum, default_value = "slse")]
    pub estimator: EstimatorArg,
    #[arg(long)]
    pub studentized: bool,
    #[arg(long, value_enum, default_value = "hall-kay")]
    pub sigma: SigmaArg,
    #[arg(long, default_value_t = 0.5)]
    pub c: f64,
    #[arg(long, default_value_t = 0.7)]
    pub c0: f64,
    #[arg(long = "B", default_value_t = 500)]
    pub replications: usize,
    #[arg(long, default_value_t = 0.05)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 0.01)]
    pub grid_step: f64,
}

/// Evaluation grid `step, 2*step, ...` strictly inside (0, 1).
pub fn eval_grid(step: f64) -> Result<Vec<f64>, CliError> {
    if !(step > 0.0 && step < 1.0) {
        return Err(CliError::BadGridStep(step));
    }
    let mut grid = Vec::new();
    let mut k = 1u64;
    loop {
        let t = k as f64 * step;
        if t >= 1.0 - 1e-12 {
            break;
        }
        grid.push(t);
        k += 1;
    }
    if grid.is_empty() {
        return Err(CliError::BadGridStep(step));
    }
    Ok(grid)
}

/// MISE grid `0, step, ..., 1`; the step must divide the unit interval.
pub fn mise_grid(step: f64) -> Result<Vec<f64>, CliError> {
    if !(step > 0.0 && step <= 1.0) {
        return Err(CliError::BadGridStep(step));
    }
    let m = (1.0 / step).round();
    if m < 1.0 || (m * step - 1.0).abs() > 1e-9 {
        return Err(CliError::BadGridStep(step));
    }
    Ok(uniform_grid(m as usize))
}

#[allow(clippy::too_many_arguments)]
fn config_from(
    estimator: EstimatorArg,
    studentized: bool,
    sigma: SigmaArg,
    c: f64,
    c0: f64,
    n: usize,
    replications: usize,
    alpha: f64,
    seed: u64,
) -> Result<BootstrapConfig, CliError> {
    let plan = BandwidthPlan::new(c, c0, n)?;
    let mut config = BootstrapConfig::new(estimator.into(), plan, seed);
    config.studentized = studentized;
    config.nw_sigma = sigma.into();
    config.replications = replications;
    config.alpha = alpha;
    config.validate()?;
    Ok(config)
}

fn render(table: &Table, format: Format) -> String {
    match format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(),
    }
}

fn estimator_name(e: EstimatorArg) -> &'static str {
    match e {
        EstimatorArg::Slse => "slse",
        EstimatorArg::Nw => "nw",
    }
}

fn sigma_name(s: SigmaArg) -> &'static str {
    match s {
        SigmaArg::HallKay => "hall-kay",
        SigmaArg::Residual => "residual",
    }
}

fn run_fit(args: &FitArgs) -> Result<(), CliError> {
    let sample = load_sample(&args.input.input, args.input.mendota)?;
    let plan = BandwidthPlan::new(args.c, args.c0, sample.len())?;
    let grid = eval_grid(args.grid_step)?;
    let lse = fit_lse(&sample);
    let step_values: Vec<f64> = grid.iter().map(|&t| lse.eval(t)).collect();
    let smooth = match args.estimator {
        EstimatorArg::Slse => {
            let fit = SlseFit::new(lse.clone(), plan.h(), plan.h0());
            slse_curve(&fit, &grid)?
        }
        EstimatorArg::Nw => nw_curve(&sample, plan.h(), &grid)?,
    };
    let table = Table {
        meta: vec![
            ("command", "fit".into()),
            ("estimator", estimator_name(args.estimator).into()),
            ("n", sample.len().to_string()),
            ("c", full_precision(args.c)),
            ("c0", full_precision(args.c0)),
            ("h", full_precision(plan.h().get())),
            ("h0", full_precision(plan.h0().get())),
            ("grid_step", full_precision(args.grid_step)),
            ("mendota", args.input.mendota.to_string()),
        ],
        header: vec!["t", "lse", "smooth"],
        columns: vec![grid, step_values, smooth],
    };
    emit(
        args.output.output.as_deref(),
        &render(&table, args.output.format),
    )
}

fn run_band(args: &BandArgs) -> Result<(), CliError> {
    let sample = load_sample(&args.input.input, args.input.mendota)?;
    let config = config_from(
        args.estimator,
        args.studentized,
        args.sigma,
        args.c,
        args.c0,
        sample.len(),
        args.replications,
        args.alpha,
        args.seed,
    )?;
    let grid = eval_grid(args.grid_step)?;
    let band = confidence_band(&sample, &config, &grid)?;
    let table = Table {
        meta: vec![
            ("command", "band".into()),
            ("estimator", estimator_name(args.estimator).into()),
            ("studentized", args.studentized.to_string()),
            ("sigma", sigma_name(args.sigma).into()),
            ("n", sample.len().to_string()),
            ("c", full_precision(args.c)),
            ("c0", full_precision(args.c0)),
            ("h", full_precision(band.meta.h)),
            ("h0", full_precision(band.meta.h0)),
            ("B", args.replications.to_string()),
            ("alpha", full_precision(args.alpha)),
            ("seed", args.seed.to_string()),
            ("grid_step", full_precision(args.grid_step)),
            ("mendota", args.input.mendota.to_string()),
        ],
        header: vec!["t", "estimate", "lower", "upper"],
        columns: vec![band.ts, band.estimate, band.lower, band.upper],
    };
    emit(
        args.output.output.as_deref(),
        &render(&table, args.output.format),
    )
}

fn run_bandwidth(args: &BandwidthArgs) -> Result<(), CliError> {
    let sample = load_sample(&args.input.input, args.input.mendota)?;
    let c_grid: Vec<f64> = (1..=100).map(|i| i as f64 / 100.0).collect();
    let grid = mise_grid(args.grid_step)?;
    let selection = select_c(
        &sample,
        &c_grid,
        args.c0,
        args.replications,
        &grid,
        args.seed,
    )?;
    let table = Table {
        meta: vec![
            ("command", "bandwidth".into()),
            ("n", sample.len().to_string()),
            ("c0", full_precision(args.c0)),
            ("B", args.replications.to_string()),
            ("seed", args.seed.to_string()),
            ("grid_step", full_precision(args.grid_step)),
            ("mendota", args.input.mendota.to_string()),
            ("chosen_c", full_precision(selection.chosen_c)),
            ("h", full_precision(selection.h)),
        ],
        header: vec!["c", "score"],
        columns: vec![selection.c_grid, selection.scores],
    };
    emit(
        args.output.output.as_deref(),
        &render(&table, args.output.format),
    )
}

fn run_simulate(args: &SimulateArgs) -> Result<(), CliError> {
    let spec = ScenarioSpec::new(args.scenario.into(), 0.1, args.n)?;
    let config = config_from(
        args.estimator,
        args.studentized,
        args.sigma,
        args.c,
        args.c0,
        args.n,
        args.replications,
        args.alpha,
        args.seed,
    )?;
    let grid = eval_grid(args.grid_step)?;
    let report = coverage_experiment(&spec, &config, &grid, args.outer, args.seed)?;
    let table = Table {
        meta: vec![
            ("command", "simulate".into()),
            ("scenario", report.scenario.clone()),
            ("sigma0", full_precision(report.sigma0)),
            ("n", args.n.to_string()),
            ("M", args.outer.to_string()),
            ("estimator", estimator_name(args.estimator).into()),
            ("studentized", args.studentized.to_string()),
            ("sigma", sigma_name(args.sigma).into()),
            ("c", full_precision(args.c)),
            ("c0", full_precision(args.c0)),
            ("B", args.replications.to_string()),
            ("alpha", full_precision(args.alpha)),
            ("seed", args.seed.to_string()),
            ("grid_step", full_precision(args.grid_step)),
        ],
        header: vec!["t", "coverage"],
        columns: vec![report.ts, report.coverage],
    };
    emit(
        args.output.output.as_deref(),
        &render(&table, args.output.format),
    )
}

/// Runs one parsed command to completion.
pub fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Fit(args) => run_fit(args),
        Command::Band(args) => run_band(args),
        Command::Bandwidth(args) => run_bandwidth(args),
        Command::Simulate(args) => run_simulate(args),
    }
}
