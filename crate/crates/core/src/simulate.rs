//! Task-level Monte Carlo replay of the routing rules.
//!
//! Each task draws a difficulty `d ~ U[0, 1)` and then one more uniform for the
//! hallucination coin, whether or not the task reaches the tool, so the stream layout does
//! not depend on the mode. Tasks are split into fixed batches; batch `b` reads stream
//! `(seed, b)` and batches are merged in index order, so the report is independent of
//! the thread count.

use rayon::prelude::*;

use crate::closed_form::labor_demand;
use crate::error::{Error, FeasibilityError, Result};
use crate::extensions::{productivity_demand, ProductivityConfig};
use crate::model::{
    open_unit, validate_params, validate_params_relaxed, DeploymentConfig, Mode, ModelParams,
    OrgDesign,
};
use crate::rng::{self, Stream};

/// Tasks per random stream.
pub const BATCH_TASKS: u64 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SimMode {
    Deployment(DeploymentConfig),
    Productivity(ProductivityConfig),
}

impl SimMode {
    pub fn mode(&self) -> Mode {
        match self {
            SimMode::Deployment(c) => c.mode(),
            SimMode::Productivity(_) => Mode::WorkerAug,
        }
    }

    fn lower_bound(&self) -> f64 {
        match self {
            SimMode::Deployment(c) => c.lower_bound(),
            SimMode::Productivity(_) => 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimConfig {
    pub params: ModelParams,
    pub mode: SimMode,
    /// Only `x_star` and `y_star` are read.
    pub design: OrgDesign,
    pub n_tasks: u64,
    pub seed: u64,
}

/// Sample mean with its standard error; no error from a single draw.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub mean: f64,
    pub se: Option<f64>,
}

impl Estimate {
    /// Whether `target` lies within `z` standard errors. A zero error demands equality.
    pub fn covers(&self, target: f64, z: f64) -> Option<bool> {
        self.se.map(|se| (self.mean - target).abs() <= z * se)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimReport {
    pub n_tasks: u64,
    pub worker_time: Estimate,
    pub expert_time: Estimate,
    pub output: Estimate,
    pub profit: Estimate,
    /// Tasks that reached an expert.
    pub escalations: u64,
    /// Tool outputs checked by a human.
    pub validations: u64,
    pub hallucinations: u64,
    /// Hallucinations redone by a human; validation catches all of them.
    pub reworks: u64,
}

/// Expected worker time, expert time, output and profit per task.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Targets {
    pub worker_time: f64,
    pub expert_time: f64,
    pub output: f64,
    pub profit: f64,
}

pub fn analytic_targets(cfg: &SimConfig) -> Targets {
    let (x, y) = (cfg.design.x_star, cfg.design.y_star);
    let p = &cfg.params;
    let (wd, ed) = match &cfg.mode {
        SimMode::Deployment(c) => labor_demand(p, c, x),
        SimMode::Productivity(c) => productivity_demand(p, c, x),
    };
    let profit = y - p.worker_wage(x) * wd - p.expert_wage(y) * ed;
    Targets { worker_time: wd, expert_time: ed, output: y, profit }
}

/// Running moments; merged in a fixed order.
#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    n: f64,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn push(&mut self, v: f64) {
        self.n += 1.0;
        let d = v - self.mean;
        self.mean += d / self.n;
        self.m2 += d * (v - self.mean);
    }

    fn merge(self, o: Moments) -> Moments {
        if self.n == 0.0 {
            return o;
        }
        if o.n == 0.0 {
            return self;
        }
        let n = self.n + o.n;
        let d = o.mean - self.mean;
        Moments { n, mean: self.mean + d * o.n / n, m2: self.m2 + o.m2 + d * d * self.n * o.n / n }
    }

    fn estimate(&self) -> Estimate {
        let se = (self.n > 1.0).then(|| (self.m2 / (self.n - 1.0) / self.n).sqrt());
        Estimate { mean: self.mean, se }
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct Tally {
    worker: Moments,
    expert: Moments,
    output: Moments,
    profit: Moments,
    escalations: u64,
    validations: u64,
    hallucinations: u64,
}

impl Tally {
    fn merge(self, o: Tally) -> Tally {
        Tally {
            worker: self.worker.merge(o.worker),
            expert: self.expert.merge(o.expert),
            output: self.output.merge(o.output),
            profit: self.profit.merge(o.profit),
            escalations: self.escalations + o.escalations,
            validations: self.validations + o.validations,
            hallucinations: self.hallucinations + o.hallucinations,
        }
    }
}

/// Time spent on one task.
#[derive(Debug, Default)]
struct Task {
    worker: f64,
    expert: f64,
    escalated: bool,
    validated: bool,
    hallucinated: bool,
}

/// Expert-side tool use: validate, and redo on a hallucination.
fn tool_check(t: &mut Task, p: &ModelParams, h: f64, u: f64, redo: f64) {
    t.validated = true;
    t.hallucinated = u < h;
    t.expert += p.t_v + if t.hallucinated { redo } else { 0.0 };
}

fn route(p: &ModelParams, mode: &SimMode, x: f64, d: f64, u: f64) -> Task {
    let mut t = Task { worker: 1.0, ..Task::default() };
    let beyond = d > x;
    match *mode {
        SimMode::Deployment(DeploymentConfig::Baseline) => {
            if beyond {
                t.expert = p.t_c;
            }
        }
        SimMode::Deployment(DeploymentConfig::WorkerAuto { r, h }) => {
            if d <= r {
                t.validated = true;
                t.hallucinated = u < h;
                t.worker = p.t_v + if t.hallucinated { p.t_r } else { 0.0 };
            }
            if beyond {
                t.expert = p.t_c;
            }
        }
        SimMode::Deployment(DeploymentConfig::WorkerAug { r, h })
        | SimMode::Productivity(ProductivityConfig { r_g: r, h, .. }) => {
            if let SimMode::Productivity(c) = mode {
                if !beyond {
                    t.worker = 1.0 / (1.0 + c.r_g * c.a);
                }
            }
            if beyond {
                if d <= x + r * (1.0 - x) {
                    tool_check(&mut t, p, h, u, p.t_c);
                } else {
                    t.expert = p.t_c;
                }
            }
        }
        SimMode::Deployment(DeploymentConfig::ExpertAuto { r, h }) => {
            if beyond {
                if d <= r {
                    tool_check(&mut t, p, h, u, p.t_c);
                } else {
                    t.expert = p.t_c;
                }
            }
        }
        SimMode::Deployment(DeploymentConfig::ExpertAug { r, h }) => {
            if beyond {
                t.validated = true;
                t.hallucinated = u < h;
                t.expert = (1.0 - r) * p.t_c + if t.hallucinated { p.t_c } else { 0.0 };
            }
        }
    }
    t.escalated = beyond;
    t
}

fn run_batch(cfg: &SimConfig, batch: u64, tasks: u64) -> Tally {
    let mut g: Stream = rng::stream(cfg.seed, batch);
    let (x, y) = (cfg.design.x_star, cfg.design.y_star);
    let p = &cfg.params;
    let (worker_wage, expert_wage) = (p.worker_wage(x), p.expert_wage(y));
    let mut tally = Tally::default();
    for _ in 0..tasks {
        let d = rng::unit(&mut g);
        let u = rng::unit(&mut g);
        let t = route(p, &cfg.mode, x, d, u);
        let output = if d <= y { 1.0 } else { 0.0 };
        tally.worker.push(t.worker);
        tally.expert.push(t.expert);
        tally.output.push(output);
        tally.profit.push(output - worker_wage * t.worker - expert_wage * t.expert);
        tally.escalations += t.escalated as u64;
        tally.validations += t.validated as u64;
        tally.hallucinations += t.hallucinated as u64;
    }
    tally
}

fn check(cfg: &SimConfig) -> Result<()> {
    if cfg.n_tasks == 0 {
        return Err(Error::InvalidConfig("n_tasks must be at least 1".into()));
    }
    let mode = cfg.mode.mode();
    if cfg.design.y_star < 1.0 {
        validate_params_relaxed(&cfg.params, mode)?;
    } else {
        validate_params(&cfg.params, mode)?;
    }
    match &cfg.mode {
        // A perfectly reliable tool is a valid replay even though the solvers exclude it.
        SimMode::Deployment(c) => {
            if let Some((r, h)) = c.capability_and_hallucination() {
                open_unit("r", r)?;
                if !(0.0..1.0).contains(&h) {
                    return Err(
                        FeasibilityError::OutsideUnitInterval { name: "h", value: h }.into()
                    );
                }
            }
        }
        SimMode::Productivity(c) => c.validate()?,
    }
    let (x, y) = (cfg.design.x_star, cfg.design.y_star);
    let lower = cfg.mode.lower_bound();
    if !(y > 0.0 && y <= 1.0 && x >= lower && x <= y) {
        return Err(FeasibilityError::OperatingPoint { x, lower, upper: y }.into());
    }
    Ok(())
}

pub fn run_simulation(cfg: &SimConfig) -> Result<SimReport> {
    check(cfg)?;
    let batches = cfg.n_tasks.div_ceil(BATCH_TASKS);
    let tallies: Vec<Tally> = (0..batches)
        .into_par_iter()
        .map(|b| {
            let tasks = BATCH_TASKS.min(cfg.n_tasks - b * BATCH_TASKS);
            run_batch(cfg, b, tasks)
        })
        .collect();
    let total = tallies.into_iter().fold(Tally::default(), Tally::merge);
    Ok(SimReport {
        n_tasks: cfg.n_tasks,
        worker_time: total.worker.estimate(),
        expert_time: total.expert.estimate(),
        output: total.output.estimate(),
        profit: total.profit.estimate(),
        escalations: total.escalations,
        validations: total.validations,
        hallucinations: total.hallucinations,
        reworks: total.hallucinations,
    })
}
