//! `hierarchy`: solve, sweep, reproduce figure datasets, verify closed forms and replay
//! tasks by simulation. Exit codes: 0 ok, 1 internal, 2 invalid input, 3 verification failure.

mod params;

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hierarchy_core::closed_form::design_at;
use hierarchy_core::extensions::{productivity_demand, productivity_profit, ProductivityConfig};
use hierarchy_core::oracle::{verify_mode, UniformSampler, PROFIT_TOLERANCE, X_TOLERANCE};
use hierarchy_core::simulate::{analytic_targets, run_simulation, Estimate, SimConfig, SimMode};
use hierarchy_core::sweep::{
    evaluate, figure, fmt_num, sweep_table, CsvTable, Model, Scenario, SweepRow, SweepSpec,
    FIGURE_IDS, SWEEP_HEADER,
};
use hierarchy_core::{DeploymentConfig, Error, Mode, OrgDesign};

use params::ParamArgs;

/// Standard errors a simulated mean may sit from its analytic target.
const SIM_Z: f64 = 4.0;

#[derive(Debug)]
pub struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }

    fn internal(message: impl Into<String>) -> Self {
        Self { code: 1, message: message.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Convergence(_) => Self::internal(e.to_string()),
            _ => Self::input(e.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "hierarchy", version, about = "Knowledge-hierarchy design under AI deployment")]
struct Cli {
    /// Worker threads for parallel sweeps and simulation; 0 uses every core.
    #[arg(long, global = true, env = "ORGDESIGN_THREADS", default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve one scenario and print the design, adoption decision and thresholds.
    Solve {
        #[command(flatten)]
        params: ParamArgs,
        /// Write the single-row CSV here instead of after the report.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve on a uniform grid over one input.
    Sweep {
        #[command(flatten)]
        params: ParamArgs,
        /// One of r, h, b, A, c_r, c_h, h_bar0, k, w, t_c.
        #[arg(long)]
        vary: String,
        #[arg(long)]
        lo: f64,
        #[arg(long)]
        hi: f64,
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit the dataset behind one figure.
    Figure {
        #[arg(required_unless_present_any = ["list", "all"])]
        id: Option<String>,
        /// Print the catalog with each entry's printed parameters.
        #[arg(long, conflicts_with = "all")]
        list: bool,
        /// Write every dataset as `<id>.csv` into `--dir`.
        #[arg(long, requires = "dir")]
        all: bool,
        #[arg(long)]
        dir: Option<PathBuf>,
        #[arg(long, conflicts_with = "all")]
        out: Option<PathBuf>,
    },
    /// Compare the closed form against brute-force search on random instances.
    Verify {
        #[arg(long)]
        mode: String,
        #[arg(long, default_value_t = 1000)]
        n: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Draw only instances where the tool is adopted.
        #[arg(long)]
        adopted_only: bool,
    },
    /// Replay tasks through the routing of one design and compare time use with its targets.
    Simulate {
        #[command(flatten)]
        params: ParamArgs,
        /// Worker knowledge; defaults to the solver's optimum.
        #[arg(long)]
        x: Option<f64>,
        /// Expert knowledge.
        #[arg(long, default_value_t = 1.0)]
        y: f64,
        #[arg(long = "n-tasks", visible_alias = "n", default_value_t = 1_000_000)]
        n_tasks: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if cli.threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn run(command: Command) -> Result<u8, CliError> {
    match command {
        Command::Solve { params, out } => cmd_solve(&params, out.as_deref()),
        Command::Sweep { params, vary, lo, hi, steps, out } => {
            let spec =
                SweepSpec { scenario: params.resolve()?, axis: vary.parse()?, lo, hi, steps };
            emit(out.as_deref(), &sweep_table(&spec)?.render())?;
            Ok(0)
        }
        Command::Figure { id, list, all, dir, out } => {
            cmd_figure(id, list, all, dir, out.as_deref())
        }
        Command::Verify { mode, n, seed, adopted_only } => cmd_verify(&mode, n, seed, adopted_only),
        Command::Simulate { params, x, y, n_tasks, seed, out } => {
            cmd_simulate(&params, x, y, n_tasks, seed, out.as_deref())
        }
    }
}

/// Write to `path` through a sibling temporary file, or to stdout.
fn emit(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    let Some(path) = path else {
        return match std::io::stdout().lock().write_all(text.as_bytes()) {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                Err(CliError::internal(e.to_string()))
            }
            _ => Ok(()),
        };
    };
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let io = |e: std::io::Error| CliError::input(format!("cannot write {}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(text.as_bytes()).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

fn single_row(row: &SweepRow) -> String {
    let mut t = CsvTable::new(SWEEP_HEADER);
    t.push(row.cells().split_off(1));
    t.render()
}

fn cmd_solve(params: &ParamArgs, out: Option<&Path>) -> Result<u8, CliError> {
    let s = params.resolve()?;
    let row = evaluate(&s, f64::NAN)?;
    let mut report = String::new();
    let _ = writeln!(report, "model={}", s.model);
    let _ = writeln!(report, "mode={}", s.mode);
    if s.model == Model::Standard && s.mode != Mode::Baseline {
        let config =
            DeploymentConfig::new(s.mode, s.r.unwrap_or(f64::NAN), s.h.unwrap_or(f64::NAN));
        let decision =
            hierarchy_core::solve(&s.params, &config)?.adoption.expect("deployment decides");
        let _ = writeln!(report, "adopt={}", decision.adopt);
        let _ = writeln!(report, "binding_rule={}", decision.binding.as_str());
        let _ = writeln!(report, "profit_with_tool={}", fmt_num(decision.profit_with));
        let _ = writeln!(report, "profit_without_tool={}", fmt_num(decision.profit_without));
    } else if let Some(adopt) = row.adopt {
        let _ = writeln!(report, "adopt={adopt}");
    }
    let cells = row.cells();
    for (name, cell) in SWEEP_HEADER.iter().zip(&cells[1..]).skip(1) {
        let shown = if cell.is_empty() { "n/a" } else { cell.as_str() };
        let _ = writeln!(report, "{name}={shown}");
    }
    let csv = single_row(&row);
    match out {
        Some(path) => {
            emit(None, &report)?;
            emit(Some(path), &csv)?;
        }
        None => emit(None, &format!("{report}\n{csv}"))?,
    }
    Ok(0)
}

fn cmd_figure(
    id: Option<String>,
    list: bool,
    all: bool,
    dir: Option<PathBuf>,
    out: Option<&Path>,
) -> Result<u8, CliError> {
    if list {
        let mut text = String::new();
        for id in FIGURE_IDS {
            let f = figure(id).expect("catalog entry");
            let panel = if f.panel.is_empty() { String::new() } else { format!("; {}", f.panel) };
            let _ = writeln!(text, "{id}\t{}\t({}{panel})", f.description, f.caption);
        }
        emit(None, &text)?;
        return Ok(0);
    }
    if all {
        let dir = dir.expect("clap requires --dir with --all");
        std::fs::create_dir_all(&dir)
            .map_err(|e| CliError::input(format!("cannot create {}: {e}", dir.display())))?;
        for id in FIGURE_IDS {
            let table = figure(id).expect("catalog entry").table()?;
            emit(Some(&dir.join(format!("{id}.csv"))), &table.render())?;
        }
        return Ok(0);
    }
    let id = id.expect("clap requires an id");
    let fig = figure(&id).ok_or_else(|| {
        CliError::input(format!("unknown figure `{id}`; known: {}", FIGURE_IDS.join(", ")))
    })?;
    emit(out, &fig.table()?.render())?;
    Ok(0)
}

fn cmd_verify(mode: &str, n: usize, seed: u64, adopted_only: bool) -> Result<u8, CliError> {
    let mode: Mode = mode.parse()?;
    if n == 0 {
        return Err(CliError::input("--n must be at least 1"));
    }
    let mut sampler = UniformSampler::new(mode, seed);
    if adopted_only {
        sampler = sampler.adopted_only();
    }
    let report = verify_mode(&mut sampler, n);
    let passed = report.passed();
    let mut text = String::new();
    let _ = writeln!(text, "mode={}", report.mode);
    let _ = writeln!(text, "samples={}", report.sample_count);
    let _ = writeln!(text, "adopted={}", report.adopted_count);
    let _ = writeln!(text, "rejected_draws={}", report.rejected_draws);
    let _ = writeln!(text, "adoption_mismatches={}", report.adoption_mismatches);
    let _ =
        writeln!(text, "max_x_deviation={:e} (tolerance {X_TOLERANCE:e})", report.max_x_deviation);
    let _ = writeln!(
        text,
        "max_profit_deviation={:e} (tolerance {PROFIT_TOLERANCE:e})",
        report.max_profit_deviation
    );
    if let Some((p, c)) = report.worst_case {
        let _ = writeln!(text, "worst_case={p:?} {c:?}");
    }
    let _ = writeln!(text, "verdict={}", if passed { "PASS" } else { "FAIL" });
    emit(None, &text)?;
    Ok(if passed { 0 } else { 3 })
}

fn sim_mode(s: &Scenario) -> Result<SimMode, CliError> {
    match s.model {
        Model::Standard if s.mode == Mode::Baseline => {
            Ok(SimMode::Deployment(DeploymentConfig::Baseline))
        }
        Model::Standard => {
            let need = |v: Option<f64>, k: &str| {
                v.ok_or_else(|| CliError::input(format!("missing --{k}")))
            };
            Ok(SimMode::Deployment(DeploymentConfig::new(s.mode, need(s.r, "r")?, need(s.h, "h")?)))
        }
        Model::Productivity => Ok(SimMode::Productivity(ProductivityConfig {
            r_g: s.r.ok_or_else(|| CliError::input("missing --r"))?,
            h: s.h.ok_or_else(|| CliError::input("missing --h"))?,
            a: s.a.ok_or_else(|| CliError::input("missing --A"))?,
        })),
        other => Err(CliError::input(format!(
            "simulation supports the standard and productivity models, not {other}"
        ))),
    }
}

fn design_for(s: &Scenario, mode: &SimMode, x: f64, y: f64) -> OrgDesign {
    let p = &s.params;
    match mode {
        SimMode::Deployment(c) => OrgDesign { y_star: y, ..design_at(p, c, x) },
        SimMode::Productivity(c) => {
            let (wd, ed) = productivity_demand(p, c, x);
            OrgDesign::new(x, y, wd, ed, productivity_profit(p, c, x))
        }
    }
}

fn cmd_simulate(
    params: &ParamArgs,
    x: Option<f64>,
    y: f64,
    n_tasks: u64,
    seed: u64,
    out: Option<&Path>,
) -> Result<u8, CliError> {
    let s = params.resolve()?;
    let mut mode = sim_mode(&s)?;
    let x = match x {
        Some(x) => x,
        None => {
            let row = evaluate(&s, f64::NAN)?;
            if row.adopt == Some(false) {
                emit(None, "note=tool rejected at these inputs; simulating the no-tool optimum\n")?;
                mode = SimMode::Deployment(DeploymentConfig::Baseline);
            }
            row.x_star
        }
    };
    let cfg =
        SimConfig { params: s.params, mode, design: design_for(&s, &mode, x, y), n_tasks, seed };
    let report = run_simulation(&cfg)?;
    let targets = analytic_targets(&cfg);
    emit(None, &format!(
        "mode={} x={} y={} n_tasks={n_tasks} seed={seed}\nescalations={} validations={} hallucinations={} reworks={}\n",
        mode.mode(), fmt_num(x), fmt_num(y), report.escalations, report.validations, report.hallucinations,
        report.reworks
    ))?;
    let mut table = CsvTable::new(["quantity", "mean", "se", "target", "verdict"]);
    let mut failed = false;
    for (name, est, target) in [
        ("worker_time", report.worker_time, targets.worker_time),
        ("expert_time", report.expert_time, targets.expert_time),
        ("output", report.output, targets.output),
        ("profit", report.profit, targets.profit),
    ] {
        let Estimate { mean, se } = est;
        let verdict = match est.covers(target, SIM_Z) {
            Some(true) => "PASS",
            Some(false) => {
                failed = true;
                "FAIL"
            }
            None => "n/a",
        };
        table.push(vec![
            name.into(),
            fmt_num(mean),
            se.map(fmt_num).unwrap_or_else(|| "n/a".into()),
            fmt_num(target),
            verdict.into(),
        ]);
    }
    emit(out, &table.render())?;
    Ok(if failed { 3 } else { 0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use hierarchy_core::sweep::Axis;

    #[test]
    fn axis_names_reach_the_core_parser() {
        assert_eq!("c_r".parse::<Axis>().unwrap(), Axis::CR);
    }

    #[test]
    fn convergence_failures_are_internal() {
        assert_eq!(CliError::from(Error::Convergence("x".into())).code, 1);
        assert_eq!(CliError::from(Error::Infeasible).code, 2);
    }
}
