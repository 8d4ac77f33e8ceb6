//! Command-line front end.

use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::coarsen::{CoarseningParams, Propagation, SeparationMode, TauMode};
use crate::document::{read_rows, read_solution, write_rows, write_solution, SolutionDocument, TrialRow};
use crate::error::Result;
use crate::evaluation::{Metrics, PenaltyWeights};
use crate::graph::{Graph, NominalPolicy};
use crate::heuristics::SolverKind;
use crate::instance::Instance;
use crate::pipeline::{run_baseline, run_pipeline, PipelineRun};
use crate::plot::render_svg;
use crate::report::{compare, format_table};
use crate::tuning::{random_search, SearchSpace};

#[derive(Debug, Parser)]
#[command(name = "vrptw-coarsen", version, about = "Multilevel coarsening for the VRP with time windows")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coarsen, solve, inflate and repair with explicit parameters.
    Solve(SolveArgs),
    /// Solve the original instance without coarsening.
    Baseline(BaselineArgs),
    /// Random search over coarsening parameters.
    Tune(TuneArgs),
    /// Draw a solution document as SVG.
    Plot(PlotArgs),
    /// Compare the best trials with their baselines.
    Report(ReportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SolverArg {
    Greedy,
    Savings,
    Exact,
}

impl From<SolverArg> for SolverKind {
    fn from(s: SolverArg) -> Self {
        match s {
            SolverArg::Greedy => SolverKind::Greedy,
            SolverArg::Savings => SolverKind::Savings,
            SolverArg::Exact => SolverKind::Exact,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PropagationArg {
    Relaxed,
    Conservative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeparationArg {
    Nominal,
    Strict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TauModeArg {
    Midpoint,
    Conservative,
}

impl From<PropagationArg> for Propagation {
    fn from(a: PropagationArg) -> Self {
        match a {
            PropagationArg::Relaxed => Propagation::Relaxed,
            PropagationArg::Conservative => Propagation::Conservative,
        }
    }
}

impl From<SeparationArg> for SeparationMode {
    fn from(a: SeparationArg) -> Self {
        match a {
            SeparationArg::Nominal => SeparationMode::Nominal,
            SeparationArg::Strict => SeparationMode::Strict,
        }
    }
}

impl From<TauModeArg> for TauMode {
    fn from(a: TauModeArg) -> Self {
        match a {
            TauModeArg::Midpoint => TauMode::Midpoint,
            TauModeArg::Conservative => TauMode::Conservative,
        }
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    pub instance: PathBuf,
    #[arg(long, default_value_t = 0.5)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.5)]
    pub beta: f64,
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    #[arg(long, default_value_t = 1.0)]
    pub radius: f64,
    #[arg(long, value_enum, default_value = "savings")]
    pub solver: SolverArg,
    #[arg(long, value_enum, default_value = "relaxed")]
    pub propagation: PropagationArg,
    #[arg(long, value_enum, default_value = "nominal")]
    pub separation: SeparationArg,
    #[arg(long = "tau-mode", value_enum, default_value = "midpoint")]
    pub tau_mode: TauModeArg,
    /// Recorded in the document; the pipeline itself is deterministic.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BaselineArgs {
    pub instance: PathBuf,
    #[arg(long, value_enum, default_value = "savings")]
    pub solver: SolverArg,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TuneArgs {
    pub instance: PathBuf,
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// TOML search space; missing keys keep their defaults.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub propagation: Option<PropagationArg>,
    #[arg(long, value_enum)]
    pub separation: Option<SeparationArg>,
    #[arg(long = "tau-mode", value_enum)]
    pub tau_mode: Option<TauModeArg>,
    #[arg(long = "out-dir", default_value = ".")]
    pub out_dir: PathBuf,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    pub document: PathBuf,
    #[arg(long, short)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// Trial and baseline CSV files.
    #[arg(required = true)]
    pub csv: Vec<PathBuf>,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

fn load(path: &Path) -> Result<(Instance, Graph)> {
    let inst = Instance::from_file(path)?;
    let graph = Graph::from_instance(&inst, NominalPolicy::Midpoint);
    Ok((inst, graph))
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    Ok(BufWriter::new(File::create(path)?))
}

pub fn summary(m: &Metrics) -> String {
    format!(
        "distance={:.2} vehicles={} duration={:.2} tw_violations={} capacity_violations={} feasible={}",
        m.total_distance, m.num_vehicles, m.total_duration, m.tw_violations, m.capacity_violations, m.feasible
    )
}

fn emit(doc: &SolutionDocument, out: Option<&Path>, stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(p) => {
            let mut w = create(p)?;
            write_solution(doc, &mut w)?;
            w.flush()?;
        }
        None => write_solution(doc, &mut *stdout)?,
    }
    Ok(())
}

fn solve(a: &SolveArgs, stdout: &mut dyn Write) -> Result<()> {
    let (inst, graph) = load(&a.instance)?;
    let params = CoarseningParams {
        alpha: a.alpha,
        beta: a.beta,
        p_target: a.p,
        radius_coeff: a.radius,
        propagation: a.propagation.into(),
        separation: a.separation.into(),
        tau_mode: a.tau_mode.into(),
    };
    let run = run_pipeline(&graph, &params, a.solver.into(), &PenaltyWeights::default())?;
    finish(&inst, a.seed, &run, &graph, a.out.as_deref(), stdout)
}

fn baseline(a: &BaselineArgs, stdout: &mut dyn Write) -> Result<()> {
    let (inst, graph) = load(&a.instance)?;
    let run = run_baseline(&graph, a.solver.into(), &PenaltyWeights::default())?;
    finish(&inst, a.seed, &run, &graph, a.out.as_deref(), stdout)
}

fn finish(
    inst: &Instance,
    seed: Option<u64>,
    run: &PipelineRun,
    graph: &Graph,
    out: Option<&Path>,
    stdout: &mut dyn Write,
) -> Result<()> {
    let doc = SolutionDocument::from_run(&inst.name, seed, run, graph)?;
    emit(&doc, out, stdout)?;
    eprintln!("{} {} {}", inst.name, run.solver, summary(&run.metrics));
    Ok(())
}

fn tune(a: &TuneArgs, stdout: &mut dyn Write) -> Result<()> {
    let mut space = match &a.config {
        Some(p) => SearchSpace::from_toml(&fs::read_to_string(p)?)?,
        None => SearchSpace::default(),
    };
    if let Some(v) = a.propagation {
        space.propagation = v.into();
    }
    if let Some(v) = a.separation {
        space.separation = v.into();
    }
    if let Some(v) = a.tau_mode {
        space.tau_mode = v.into();
    }
    let (inst, graph) = load(&a.instance)?;
    let weights = PenaltyWeights::default();
    let outcome = random_search(&graph, &space, a.trials, a.seed, &weights, a.jobs.max(1))?;

    let rows: Vec<TrialRow> = outcome
        .trials
        .iter()
        .map(|t| TrialRow::new(&inst.name, Some(t.trial_index), Some(a.seed), &t.run))
        .collect();
    let mut w = create(&a.out_dir.join("trials.csv"))?;
    write_rows(&rows, &mut w)?;
    w.flush()?;

    let mut base = Vec::new();
    for solver in [SolverKind::Greedy, SolverKind::Savings] {
        base.push(TrialRow::new(&inst.name, None, None, &run_baseline(&graph, solver, &weights)?));
    }
    let mut w = create(&a.out_dir.join("baseline.csv"))?;
    write_rows(&base, &mut w)?;
    w.flush()?;

    let best = outcome.best();
    let doc = SolutionDocument::from_run(&inst.name, Some(a.seed), &best.run, &graph)?;
    emit(&doc, Some(&a.out_dir.join("best.json")), stdout)?;
    writeln!(
        stdout,
        "{} best trial {} ({}) score={:.2} {}",
        inst.name,
        best.trial_index,
        best.run.solver,
        best.run.score,
        summary(&best.run.metrics)
    )?;
    Ok(())
}

fn plot(a: &PlotArgs) -> Result<()> {
    let doc = read_solution(BufReader::new(File::open(&a.document)?))?;
    let mut w = create(&a.out)?;
    w.write_all(render_svg(&doc).as_bytes())?;
    w.flush()?;
    Ok(())
}

fn report(a: &ReportArgs, stdout: &mut dyn Write) -> Result<()> {
    let mut rows = Vec::new();
    for p in &a.csv {
        rows.extend(read_rows(BufReader::new(File::open(p)?))?);
    }
    let table = format_table(&compare(&rows));
    match &a.out {
        Some(p) => {
            let mut w = create(p)?;
            w.write_all(table.as_bytes())?;
            w.flush()?;
        }
        None => stdout.write_all(table.as_bytes())?,
    }
    Ok(())
}

pub fn execute(cli: &Cli, stdout: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::Solve(a) => solve(a, stdout),
        Command::Baseline(a) => baseline(a, stdout),
        Command::Tune(a) => tune(a, stdout),
        Command::Plot(a) => plot(a),
        Command::Report(a) => report(a, stdout),
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit status. Diagnostics go to standard error.
pub fn run_from<I, T>(args: I, stdout: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli, stdout) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn main_exit_code() -> i32 {
    run_from(std::env::args_os(), &mut std::io::stdout().lock())
}

