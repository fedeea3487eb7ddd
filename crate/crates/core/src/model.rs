//! Economy primitives, deployment configurations and solver outputs.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, FeasibilityError};

/// Profit margin an adoption must clear; exact ties resolve to no adoption.
pub const ADOPTION_TOLERANCE: f64 = 1e-12;

/// Primitives of the two-layer economy.
///
/// `t_v` and `t_r` are only read by modes that route work through an AI tool;
/// other modes accept any value there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    /// Knowledge premium in the convex wage `w + k x^2 / 2`.
    pub k: f64,
    /// Price of one unit of work time.
    pub w: f64,
    /// Expert time consumed by one consultation.
    pub t_c: f64,
    /// Human time to validate one AI output.
    pub t_v: f64,
    /// Worker time to redo a task after a detected hallucination.
    pub t_r: f64,
}

impl ModelParams {
    /// Baseline primitives; validation and rework times are zero until set.
    pub fn new(k: f64, w: f64, t_c: f64) -> Self {
        Self { k, w, t_c, t_v: 0.0, t_r: 0.0 }
    }

    pub fn full(k: f64, w: f64, t_c: f64, t_v: f64, t_r: f64) -> Self {
        Self { k, w, t_c, t_v, t_r }
    }

    pub fn with_validation(mut self, t_v: f64) -> Self {
        self.t_v = t_v;
        self
    }

    pub fn with_rework(mut self, t_r: f64) -> Self {
        self.t_r = t_r;
        self
    }

    /// `k + 2w`, the coefficient that recurs in every first-order condition.
    #[inline]
    pub fn kw(&self) -> f64 {
        self.k + 2.0 * self.w
    }

    /// Upper bound on `t_c` for an interior two-layer baseline.
    #[inline]
    pub fn t_c_bar(&self) -> f64 {
        2.0 * self.k / self.kw()
    }

    #[inline]
    pub fn worker_wage(&self, x: f64) -> f64 {
        self.w + 0.5 * self.k * x * x
    }

    #[inline]
    pub fn expert_wage(&self, y: f64) -> f64 {
        self.w + 0.5 * self.k * y * y
    }

    /// Pre-AI optimal worker knowledge `(k+2w) t_c / (2k)`.
    #[inline]
    pub fn baseline_threshold(&self) -> f64 {
        self.kw() * self.t_c / (2.0 * self.k)
    }
}

/// The deployment architecture in force.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    Baseline,
    WorkerAuto,
    WorkerAug,
    ExpertAuto,
    ExpertAug,
}

impl Mode {
    pub const ALL: [Mode; 5] =
        [Mode::Baseline, Mode::WorkerAuto, Mode::WorkerAug, Mode::ExpertAuto, Mode::ExpertAug];

    pub const DEPLOYMENTS: [Mode; 4] =
        [Mode::WorkerAuto, Mode::WorkerAug, Mode::ExpertAuto, Mode::ExpertAug];

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Baseline => "baseline",
            Mode::WorkerAuto => "worker-auto",
            Mode::WorkerAug => "worker-aug",
            Mode::ExpertAuto => "expert-auto",
            Mode::ExpertAug => "expert-aug",
        }
    }

    pub fn uses_validation(self) -> bool {
        matches!(self, Mode::WorkerAuto | Mode::WorkerAug | Mode::ExpertAuto)
    }

    pub fn uses_rework(self) -> bool {
        self == Mode::WorkerAuto
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Mode::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown mode `{s}`")))
    }
}

/// Active architecture with its capability `r` and hallucination rate `h`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DeploymentConfig {
    Baseline,
    WorkerAuto { r: f64, h: f64 },
    WorkerAug { r: f64, h: f64 },
    ExpertAuto { r: f64, h: f64 },
    ExpertAug { r: f64, h: f64 },
}

impl DeploymentConfig {
    /// `r` and `h` are ignored for [`Mode::Baseline`].
    pub fn new(mode: Mode, r: f64, h: f64) -> Self {
        match mode {
            Mode::Baseline => Self::Baseline,
            Mode::WorkerAuto => Self::WorkerAuto { r, h },
            Mode::WorkerAug => Self::WorkerAug { r, h },
            Mode::ExpertAuto => Self::ExpertAuto { r, h },
            Mode::ExpertAug => Self::ExpertAug { r, h },
        }
    }

    pub fn mode(&self) -> Mode {
        match self {
            Self::Baseline => Mode::Baseline,
            Self::WorkerAuto { .. } => Mode::WorkerAuto,
            Self::WorkerAug { .. } => Mode::WorkerAug,
            Self::ExpertAuto { .. } => Mode::ExpertAuto,
            Self::ExpertAug { .. } => Mode::ExpertAug,
        }
    }

    /// `(r, h)` for deployments, `None` for the baseline.
    pub fn capability_and_hallucination(&self) -> Option<(f64, f64)> {
        match *self {
            Self::Baseline => None,
            Self::WorkerAuto { r, h }
            | Self::WorkerAug { r, h }
            | Self::ExpertAuto { r, h }
            | Self::ExpertAug { r, h } => Some((r, h)),
        }
    }

    /// Smallest admissible worker knowledge: workers must cover the automated range.
    pub fn lower_bound(&self) -> f64 {
        match *self {
            Self::WorkerAuto { r, .. } => r,
            _ => 0.0,
        }
    }

    pub fn validate(&self) -> Result<(), FeasibilityError> {
        if let Some((r, h)) = self.capability_and_hallucination() {
            open_unit("r", r)?;
            open_unit("h", h)?;
        }
        Ok(())
    }
}

fn finite(name: &'static str, value: f64) -> Result<(), FeasibilityError> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(FeasibilityError::NonFinite { name, value })
    }
}

pub(crate) fn positive(name: &'static str, value: f64) -> Result<(), FeasibilityError> {
    finite(name, value)?;
    if value > 0.0 {
        Ok(())
    } else {
        Err(FeasibilityError::NonPositive { name, value })
    }
}

pub(crate) fn open_unit(name: &'static str, value: f64) -> Result<(), FeasibilityError> {
    finite(name, value)?;
    if value > 0.0 && value < 1.0 {
        Ok(())
    } else {
        Err(FeasibilityError::OutsideUnitInterval { name, value })
    }
}

fn validate_with_bound(
    params: &ModelParams,
    mode: Mode,
    t_c_bound: f64,
) -> Result<ModelParams, FeasibilityError> {
    positive("k", params.k)?;
    positive("w", params.w)?;
    positive("t_c", params.t_c)?;
    if params.t_c >= t_c_bound {
        return Err(FeasibilityError::CommunicationCostTooHigh {
            t_c: params.t_c,
            bound: t_c_bound,
        });
    }
    if mode.uses_validation() {
        open_unit("t_v", params.t_v)?;
    }
    if mode.uses_rework() {
        open_unit("t_r", params.t_r)?;
        let sum = params.t_v + params.t_r;
        if sum <= 1.0 {
            return Err(FeasibilityError::OversightTooCheap {
                t_v: params.t_v,
                t_r: params.t_r,
                sum,
            });
        }
    }
    Ok(*params)
}

/// Checks every primitive inequality the given mode reads.
pub fn validate_params(params: &ModelParams, mode: Mode) -> Result<ModelParams, FeasibilityError> {
    validate_with_bound(params, mode, params.t_c_bar())
}

/// As [`validate_params`] but with `t_c < 2`, the bound once expert knowledge is a choice.
pub fn validate_params_relaxed(
    params: &ModelParams,
    mode: Mode,
) -> Result<ModelParams, FeasibilityError> {
    validate_with_bound(params, mode, 2.0)
}

/// Span of control; `Collapsed` when the expert layer vanishes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Span {
    Finite(f64),
    Collapsed,
}

impl Span {
    pub fn value(&self) -> Option<f64> {
        match *self {
            Span::Finite(s) => Some(s),
            Span::Collapsed => None,
        }
    }
}

/// An organization's operating point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrgDesign {
    pub x_star: f64,
    pub y_star: f64,
    pub worker_demand: f64,
    pub expert_demand: f64,
    pub span: Span,
    pub profit: f64,
}

impl OrgDesign {
    /// The span is derived; zero expert demand is the collapse signal.
    pub fn new(
        x_star: f64,
        y_star: f64,
        worker_demand: f64,
        expert_demand: f64,
        profit: f64,
    ) -> Self {
        let span = if expert_demand == 0.0 {
            Span::Collapsed
        } else {
            Span::Finite(worker_demand / expert_demand)
        };
        Self { x_star, y_star, worker_demand, expert_demand, span, profit }
    }

    pub fn collapsed(&self) -> bool {
        self.span == Span::Collapsed
    }
}

/// Thresholds for worker-level automation. `None` marks "not applicable here".
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WorkerAutoThresholds {
    /// Adoption requires `h` below this.
    pub adoption_ceiling: f64,
    /// Collapse requires `h` below this.
    pub collapse_hallucination: Option<f64>,
    /// Collapse requires `r_t` at or above this.
    pub collapse_capability: Option<f64>,
    /// Span turning point along `r_t`.
    pub span_turn_capability: Option<f64>,
    /// Span turning point along `h`.
    pub span_turn_hallucination: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WorkerAugThresholds {
    pub adoption_ceiling: f64,
    pub span_turn_capability: Option<f64>,
    pub span_turn_hallucination: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpertAutoThresholds {
    pub adoption_ceiling: f64,
    /// Adoption requires `r_e` strictly above this.
    pub capability_floor: f64,
    pub span_turn_hallucination: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpertAugThresholds {
    /// Equal to `r_u`.
    pub adoption_ceiling: f64,
    pub span_turn_capability: Option<f64>,
    pub span_turn_hallucination: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ThresholdBundle {
    Baseline,
    WorkerAuto(WorkerAutoThresholds),
    WorkerAug(WorkerAugThresholds),
    ExpertAuto(ExpertAutoThresholds),
    ExpertAug(ExpertAugThresholds),
}

impl ThresholdBundle {
    /// Upper bound on `h` for adoption, if the mode has one.
    pub fn h_ceiling(&self) -> Option<f64> {
        match self {
            Self::Baseline => None,
            Self::WorkerAuto(t) => Some(t.adoption_ceiling),
            Self::WorkerAug(t) => Some(t.adoption_ceiling),
            Self::ExpertAuto(t) => Some(t.adoption_ceiling),
            Self::ExpertAug(t) => Some(t.adoption_ceiling),
        }
    }

    /// Lower bound on capability: the collapse capability under worker automation,
    /// the adoption floor under expert automation.
    pub fn r_floor(&self) -> Option<f64> {
        match self {
            Self::WorkerAuto(t) => t.collapse_capability,
            Self::ExpertAuto(t) => Some(t.capability_floor),
            _ => None,
        }
    }

    pub fn r_turn(&self) -> Option<f64> {
        match self {
            Self::WorkerAuto(t) => t.span_turn_capability,
            Self::WorkerAug(t) => t.span_turn_capability,
            Self::ExpertAug(t) => t.span_turn_capability,
            _ => None,
        }
    }

    pub fn h_turn(&self) -> Option<f64> {
        match self {
            Self::Baseline => None,
            Self::WorkerAuto(t) => t.span_turn_hallucination,
            Self::WorkerAug(t) => t.span_turn_hallucination,
            Self::ExpertAuto(t) => t.span_turn_hallucination,
            Self::ExpertAug(t) => t.span_turn_hallucination,
        }
    }
}

/// The rule that settled an adoption decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdoptionRule {
    HallucinationCeiling,
    CapabilityFloor,
    CostCeiling,
    ProfitMargin,
}

impl AdoptionRule {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::HallucinationCeiling => "hallucination-ceiling",
            Self::CapabilityFloor => "capability-floor",
            Self::CostCeiling => "cost-ceiling",
            Self::ProfitMargin => "profit-margin",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdoptionDecision {
    pub adopt: bool,
    pub binding: AdoptionRule,
    /// Optimal profit of the mode's own program.
    pub profit_with: f64,
    /// Optimal baseline profit.
    pub profit_without: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Baseline,
    NotAdopted,
    Interior,
    /// Worker knowledge pinned at the automated range `x = r_t`.
    SkillFloor,
    /// Worker knowledge pinned at `x = 1` with a residual expert layer.
    SkillCeiling,
    Collapsed,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Baseline => "baseline",
            Self::NotAdopted => "not-adopted",
            Self::Interior => "interior",
            Self::SkillFloor => "skill-floor",
            Self::SkillCeiling => "skill-ceiling",
            Self::Collapsed => "collapsed",
        }
    }
}

/// Outcome of one solve. `design` is the adopted design or the baseline when rejected.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveResult {
    pub mode: Mode,
    pub design: OrgDesign,
    pub adoption: Option<AdoptionDecision>,
    pub thresholds: ThresholdBundle,
    pub regime: Regime,
}

impl SolveResult {
    pub fn adopted(&self) -> bool {
        self.adoption.is_some_and(|a| a.adopt)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figure_two_params_are_feasible() {
        let p = ModelParams::full(0.8, 0.25, 0.8, 0.5, 0.8);
        assert_eq!(validate_params(&p, Mode::WorkerAuto), Ok(p));
        assert!((p.t_c_bar() - 1.6 / 1.3).abs() < 1e-15);
    }

    #[test]
    fn communication_cost_at_bound_is_rejected() {
        let p = ModelParams::new(1.0, 0.5, 1.0);
        let err = validate_params(&p, Mode::Baseline).unwrap_err();
        assert_eq!(err, FeasibilityError::CommunicationCostTooHigh { t_c: 1.0, bound: 1.0 });
        assert!(err.to_string().contains("t_c = 1 >= t_c_bar"));
    }

    #[test]
    fn cheap_oversight_is_rejected_only_under_worker_automation() {
        let p = ModelParams::full(0.8, 0.25, 0.8, 0.6, 0.3);
        let err = validate_params(&p, Mode::WorkerAuto).unwrap_err();
        assert!(
            matches!(err, FeasibilityError::OversightTooCheap { sum, .. } if (sum - 0.9).abs() < 1e-15)
        );
        assert!(err.to_string().contains("<= 1"));
        assert!(validate_params(&p, Mode::WorkerAug).is_ok());
    }

    #[test]
    fn unread_times_are_not_validated() {
        let p = ModelParams::new(0.7, 0.4, 0.7).with_validation(7.0).with_rework(-1.0);
        assert!(validate_params(&p, Mode::ExpertAug).is_ok());
        assert!(validate_params(&p, Mode::Baseline).is_ok());
        assert!(validate_params(&p, Mode::ExpertAuto).is_err());
    }

    #[test]
    fn relaxed_bound_admits_expensive_communication() {
        let p = ModelParams::new(1.0, 0.5, 1.5);
        assert!(validate_params(&p, Mode::Baseline).is_err());
        assert!(validate_params_relaxed(&p, Mode::Baseline).is_ok());
    }

    #[test]
    fn mode_names_round_trip() {
        for m in Mode::ALL {
            assert_eq!(m.as_str().parse::<Mode>().unwrap(), m);
        }
        assert!("worker".parse::<Mode>().is_err());
    }

    #[test]
    fn config_rejects_closed_endpoints() {
        assert!(DeploymentConfig::new(Mode::WorkerAug, 0.0, 0.2).validate().is_err());
        assert!(DeploymentConfig::new(Mode::WorkerAug, 0.5, 1.0).validate().is_err());
        assert!(DeploymentConfig::new(Mode::Baseline, 0.0, 1.0).validate().is_ok());
    }

    #[test]
    fn zero_expert_demand_collapses() {
        let d = OrgDesign::new(1.0, 1.0, 0.9, 0.0, 0.1);
        assert!(d.collapsed());
        assert_eq!(d.span.value(), None);
    }
}
