//! One-axis parameter sweeps over any solver, CSV rendering, and the figure dataset catalog.

mod csv;
mod figures;

pub use csv::{fmt_num, fmt_opt, CsvTable, COLLAPSED, SIGNIFICANT_DIGITS};
pub use figures::{figure, Field, Figure, Series, FIGURE_IDS};

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::closed_form::{baseline_solve, solve};
use crate::error::{Error, Result};
use crate::extensions::{
    capability_invest_solve, coupled_solve, dual_invest_solve, expert_knowledge_solve,
    productivity_solve, InvestmentCosts, InvestmentDesign, ProductivityConfig,
};
use crate::model::{DeploymentConfig, Mode, ModelParams, OrgDesign, Regime, SolveResult, Span};

/// Which solver a scenario is routed to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Model {
    Standard,
    Productivity,
    Coupled,
    Capability,
    Dual,
    ExpertKnowledge,
}

impl Model {
    pub const ALL: [Model; 6] = [
        Model::Standard,
        Model::Productivity,
        Model::Coupled,
        Model::Capability,
        Model::Dual,
        Model::ExpertKnowledge,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Standard => "standard",
            Self::Productivity => "productivity",
            Self::Coupled => "coupled",
            Self::Capability => "capability",
            Self::Dual => "dual",
            Self::ExpertKnowledge => "expert-knowledge",
        }
    }

    /// Modes the model is defined for.
    pub fn supports(self, mode: Mode) -> bool {
        match self {
            Self::Standard | Self::ExpertKnowledge => true,
            Self::Productivity => mode == Mode::WorkerAug,
            Self::Coupled | Self::Capability => mode != Mode::Baseline,
            Self::Dual => matches!(mode, Mode::WorkerAuto | Mode::WorkerAug),
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown model `{s}`")))
    }
}

/// Everything needed to evaluate one point. Fields a model does not read are ignored; fields
/// it does read must be set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scenario {
    pub model: Model,
    pub mode: Mode,
    pub params: ModelParams,
    pub r: Option<f64>,
    pub h: Option<f64>,
    pub b: Option<f64>,
    pub a: Option<f64>,
    pub c_r: Option<f64>,
    pub c_h: Option<f64>,
    pub h_bar0: Option<f64>,
}

impl Scenario {
    pub fn new(model: Model, mode: Mode, params: ModelParams) -> Self {
        Self {
            model,
            mode,
            params,
            r: None,
            h: None,
            b: None,
            a: None,
            c_r: None,
            c_h: None,
            h_bar0: None,
        }
    }

    pub fn with(mut self, axis: Axis, value: f64) -> Self {
        axis.set(&mut self, value);
        self
    }

    fn need(&self, name: &str, v: Option<f64>) -> Result<f64> {
        v.ok_or_else(|| {
            Error::InvalidConfig(format!(
                "model {} with mode {} needs `{name}`",
                self.model, self.mode
            ))
        })
    }

    /// Names of the scalar inputs the scenario's model reads, besides the parameters.
    pub fn inputs(&self) -> &'static [Axis] {
        let deployed = self.mode != Mode::Baseline;
        match self.model {
            Model::Standard | Model::ExpertKnowledge if deployed => &[Axis::R, Axis::H],
            Model::Standard | Model::ExpertKnowledge => &[],
            Model::Productivity => &[Axis::R, Axis::H, Axis::A],
            Model::Coupled => &[Axis::R, Axis::B],
            Model::Capability => &[Axis::CR, Axis::H],
            Model::Dual => &[Axis::CR, Axis::CH, Axis::HBar0],
        }
    }
}

/// The quantity a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    R,
    H,
    B,
    A,
    CR,
    CH,
    HBar0,
    K,
    W,
    Tc,
}

impl Axis {
    pub const ALL: [Axis; 10] = [
        Axis::R,
        Axis::H,
        Axis::B,
        Axis::A,
        Axis::CR,
        Axis::CH,
        Axis::HBar0,
        Axis::K,
        Axis::W,
        Axis::Tc,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::R => "r",
            Self::H => "h",
            Self::B => "b",
            Self::A => "A",
            Self::CR => "c_r",
            Self::CH => "c_h",
            Self::HBar0 => "h_bar0",
            Self::K => "k",
            Self::W => "w",
            Self::Tc => "t_c",
        }
    }

    pub fn get(self, s: &Scenario) -> Option<f64> {
        match self {
            Self::R => s.r,
            Self::H => s.h,
            Self::B => s.b,
            Self::A => s.a,
            Self::CR => s.c_r,
            Self::CH => s.c_h,
            Self::HBar0 => s.h_bar0,
            Self::K => Some(s.params.k),
            Self::W => Some(s.params.w),
            Self::Tc => Some(s.params.t_c),
        }
    }

    pub fn set(self, s: &mut Scenario, v: f64) {
        match self {
            Self::R => s.r = Some(v),
            Self::H => s.h = Some(v),
            Self::B => s.b = Some(v),
            Self::A => s.a = Some(v),
            Self::CR => s.c_r = Some(v),
            Self::CH => s.c_h = Some(v),
            Self::HBar0 => s.h_bar0 = Some(v),
            Self::K => s.params.k = v,
            Self::W => s.params.w = v,
            Self::Tc => s.params.t_c = v,
        }
    }

    /// Whether varying this axis changes the scenario's outcome.
    pub fn applies_to(self, s: &Scenario) -> bool {
        matches!(self, Self::K | Self::W | Self::Tc) || s.inputs().contains(&self)
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let alias = match s {
            "a" => "A",
            "tc" => "t_c",
            "cr" | "c-r" => "c_r",
            "ch" | "c-h" => "c_h",
            "h-bar0" | "hbar0" => "h_bar0",
            other => other,
        };
        Self::ALL
            .into_iter()
            .find(|a| a.as_str() == alias)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown sweep axis `{s}`")))
    }
}

/// One evaluated point, in the fixed column order of [`SWEEP_HEADER`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub value: f64,
    /// `None` for the baseline, which makes no adoption decision.
    pub adopt: Option<bool>,
    pub x_star: f64,
    pub y_star: f64,
    pub span: Span,
    pub worker_demand: f64,
    pub expert_demand: f64,
    /// Operating profit net of any investment outlay.
    pub profit: f64,
    pub baseline_profit: f64,
    pub capability: Option<f64>,
    pub hallucination: Option<f64>,
    pub investment_cost: f64,
    pub regime: Regime,
    pub h_ceiling: Option<f64>,
    pub r_floor: Option<f64>,
    pub r_turn: Option<f64>,
    pub h_turn: Option<f64>,
}

/// Column names after the leading axis column.
pub const SWEEP_HEADER: [&str; 16] = [
    "adopt",
    "x_star",
    "y_star",
    "span",
    "worker_demand",
    "expert_demand",
    "profit",
    "baseline_profit",
    "capability",
    "hallucination",
    "investment_cost",
    "regime",
    "h_ceiling",
    "r_floor",
    "r_turn",
    "h_turn",
];

impl SweepRow {
    fn from_solve(
        value: f64,
        s: &SolveResult,
        capability: Option<f64>,
        hallucination: Option<f64>,
    ) -> Self {
        let d = &s.design;
        Self {
            value,
            adopt: s.adoption.map(|a| a.adopt),
            x_star: d.x_star,
            y_star: d.y_star,
            span: d.span,
            worker_demand: d.worker_demand,
            expert_demand: d.expert_demand,
            profit: d.profit,
            baseline_profit: s.adoption.map_or(d.profit, |a| a.profit_without),
            capability,
            hallucination,
            investment_cost: 0.0,
            regime: s.regime,
            h_ceiling: s.thresholds.h_ceiling(),
            r_floor: s.thresholds.r_floor(),
            r_turn: s.thresholds.r_turn(),
            h_turn: s.thresholds.h_turn(),
        }
    }

    fn from_investment(value: f64, inv: &InvestmentDesign) -> Self {
        let d = &inv.design;
        Self {
            value,
            adopt: Some(inv.adopt),
            x_star: d.x_star,
            y_star: d.y_star,
            span: d.span,
            worker_demand: d.worker_demand,
            expert_demand: d.expert_demand,
            profit: inv.net_profit,
            baseline_profit: inv.baseline_profit,
            capability: Some(inv.r_star),
            hallucination: Some(inv.h_star),
            investment_cost: inv.total_cost,
            regime: investment_regime(inv),
            h_ceiling: None,
            r_floor: None,
            r_turn: None,
            h_turn: None,
        }
    }

    pub fn cells(&self) -> Vec<String> {
        let span = match self.span {
            Span::Finite(s) => fmt_num(s),
            Span::Collapsed => COLLAPSED.to_string(),
        };
        vec![
            fmt_num(self.value),
            self.adopt.map(|a| a.to_string()).unwrap_or_default(),
            fmt_num(self.x_star),
            fmt_num(self.y_star),
            span,
            fmt_num(self.worker_demand),
            fmt_num(self.expert_demand),
            fmt_num(self.profit),
            fmt_num(self.baseline_profit),
            fmt_opt(self.capability),
            fmt_opt(self.hallucination),
            fmt_num(self.investment_cost),
            self.regime.as_str().to_string(),
            fmt_opt(self.h_ceiling),
            fmt_opt(self.r_floor),
            fmt_opt(self.r_turn),
            fmt_opt(self.h_turn),
        ]
    }
}

fn investment_regime(inv: &InvestmentDesign) -> Regime {
    let d: &OrgDesign = &inv.design;
    if !inv.adopt {
        Regime::NotAdopted
    } else if d.collapsed() {
        Regime::Collapsed
    } else if d.x_star >= 1.0 {
        Regime::SkillCeiling
    } else if inv.mode == Mode::WorkerAuto && d.x_star <= inv.r_star {
        Regime::SkillFloor
    } else {
        Regime::Interior
    }
}

/// Solve one scenario; `value` is echoed into the row's axis column.
pub fn evaluate(s: &Scenario, value: f64) -> Result<SweepRow> {
    if !s.model.supports(s.mode) {
        return Err(Error::InvalidConfig(format!(
            "model {} is not defined for mode {}",
            s.model, s.mode
        )));
    }
    let p = &s.params;
    match s.model {
        Model::Standard if s.mode == Mode::Baseline => {
            Ok(SweepRow::from_solve(value, &baseline_solve(p)?, None, None))
        }
        Model::Standard | Model::ExpertKnowledge => {
            let config = if s.mode == Mode::Baseline {
                DeploymentConfig::Baseline
            } else {
                DeploymentConfig::new(s.mode, s.need("r", s.r)?, s.need("h", s.h)?)
            };
            let result = if s.model == Model::Standard {
                solve(p, &config)?
            } else {
                expert_knowledge_solve(p, &config)?
            };
            let (r, h) = config.capability_and_hallucination().unzip();
            Ok(SweepRow::from_solve(value, &result, r, h))
        }
        Model::Productivity => {
            let cfg = ProductivityConfig {
                r_g: s.need("r", s.r)?,
                h: s.need("h", s.h)?,
                a: s.need("A", s.a)?,
            };
            Ok(SweepRow::from_solve(
                value,
                &productivity_solve(p, &cfg)?,
                Some(cfg.r_g),
                Some(cfg.h),
            ))
        }
        Model::Coupled => {
            let r = s.need("r", s.r)?;
            let c = coupled_solve(p, s.mode, r, s.need("b", s.b)?)?;
            Ok(SweepRow::from_solve(value, &c.result, Some(r), Some(c.implied_h)))
        }
        Model::Capability => {
            let inv = capability_invest_solve(p, s.mode, s.need("c_r", s.c_r)?, s.need("h", s.h)?)?;
            Ok(SweepRow::from_investment(value, &inv))
        }
        Model::Dual => {
            let costs = InvestmentCosts {
                c_r: s.need("c_r", s.c_r)?,
                c_h: s.need("c_h", s.c_h)?,
                h_bar0: s.need("h_bar0", s.h_bar0)?,
            };
            Ok(SweepRow::from_investment(value, &dual_invest_solve(p, s.mode, &costs)?))
        }
    }
}

/// A uniform grid over one axis with both endpoints included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub scenario: Scenario,
    pub axis: Axis,
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if !self.axis.applies_to(&self.scenario) {
            return Err(Error::InvalidConfig(format!(
                "axis {} does not apply to model {} with mode {}",
                self.axis, self.scenario.model, self.scenario.mode
            )));
        }
        if self.steps < 2 {
            return Err(Error::InvalidConfig(format!(
                "a sweep needs at least 2 steps, got {}",
                self.steps
            )));
        }
        if !(self.lo.is_finite() && self.hi.is_finite() && self.lo < self.hi) {
            return Err(Error::InvalidInterval { lo: self.lo, hi: self.hi });
        }
        Ok(())
    }

    /// Grid nodes; the last node is exactly `hi`.
    pub fn grid(&self) -> Vec<f64> {
        grid(self.lo, self.hi, self.steps)
    }
}

pub(crate) fn grid(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    let n = (steps - 1) as f64;
    (0..steps).map(|i| if i + 1 == steps { hi } else { lo + (hi - lo) * (i as f64 / n) }).collect()
}

/// Rows in ascending axis order. Points are solved in parallel; the first failing point in
/// grid order is reported.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    let rows: Vec<Result<SweepRow>> = spec
        .grid()
        .into_par_iter()
        .map(|v| evaluate(&spec.scenario.with(spec.axis, v), v))
        .collect();
    rows.into_iter().collect()
}

pub fn sweep_table(spec: &SweepSpec) -> Result<CsvTable> {
    let rows = run_sweep(spec)?;
    let mut table = CsvTable::new(std::iter::once(spec.axis.as_str()).chain(SWEEP_HEADER));
    for row in rows {
        table.push(row.cells());
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn worker_aug_spec(steps: usize) -> SweepSpec {
        let scenario = Scenario::new(
            Model::Standard,
            Mode::WorkerAug,
            ModelParams::full(0.7, 0.3, 0.7, 0.2, 0.0),
        )
        .with(Axis::H, 0.2);
        SweepSpec { scenario, axis: Axis::R, lo: 0.01, hi: 0.99, steps }
    }

    #[test]
    fn grid_ends_exactly_at_hi() {
        let g = grid(0.01, 0.99, 99);
        assert_eq!(g.len(), 99);
        assert_eq!(g[0], 0.01);
        assert_eq!(g[98], 0.99);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn two_steps_give_two_rows() {
        assert_eq!(run_sweep(&worker_aug_spec(2)).unwrap().len(), 2);
    }

    #[test]
    fn augmentation_deskills_along_the_sweep() {
        let rows = run_sweep(&worker_aug_spec(99)).unwrap();
        let adopted: Vec<_> = rows.iter().filter(|r| r.adopt == Some(true)).collect();
        assert!(adopted.len() > 50);
        assert!(adopted.windows(2).all(|w| w[1].x_star < w[0].x_star));
    }

    #[test]
    fn rejects_bad_specs() {
        let mut spec = worker_aug_spec(1);
        assert!(spec.validate().is_err());
        spec.steps = 5;
        spec.axis = Axis::B;
        assert!(spec.validate().is_err());
        spec.axis = Axis::R;
        spec.lo = 0.5;
        spec.hi = 0.5;
        assert!(spec.validate().is_err());
    }

    #[test]
    fn missing_inputs_are_named() {
        let s = Scenario::new(Model::Coupled, Mode::ExpertAug, ModelParams::new(0.7, 0.4, 0.7))
            .with(Axis::R, 0.5);
        let err = evaluate(&s, 0.5).unwrap_err().to_string();
        assert!(err.contains("`b`"), "{err}");
    }

    #[test]
    fn table_is_deterministic_and_has_fixed_columns() {
        let spec = worker_aug_spec(21);
        let a = sweep_table(&spec).unwrap().render();
        let b = sweep_table(&spec).unwrap().render();
        assert_eq!(a, b);
        let header = a.lines().next().unwrap();
        assert!(header.starts_with("r,adopt,x_star,y_star,span,"));
        assert_eq!(header.split(',').count(), 17);
    }

    #[test]
    fn parses_names() {
        assert_eq!("tc".parse::<Axis>().unwrap(), Axis::Tc);
        assert_eq!("A".parse::<Axis>().unwrap(), Axis::A);
        assert_eq!("expert-knowledge".parse::<Model>().unwrap(), Model::ExpertKnowledge);
        assert!("q".parse::<Axis>().is_err());
    }
}
