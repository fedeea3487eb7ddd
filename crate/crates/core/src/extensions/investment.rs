//! Endogenous investment in tool capability and, optionally, reliability.
//!
//! Capability costs `c_r r^2 / 2`. Reliability costs `(c_h / 10)(h_bar0 / h - 1)`, which is
//! zero at `h = h_bar0` and unbounded as `h` falls to zero.

use crate::closed_form::{baseline_design, design_at, profit_unchecked};
use crate::error::{Error, FeasibilityError, Result};
use crate::model::{
    open_unit, positive, validate_params, DeploymentConfig, Mode, ModelParams, OrgDesign,
    ADOPTION_TOLERANCE,
};
use crate::oracle::{golden_section, maximize_pair, maximize_scalar, PairProblem, ScalarProblem};

/// Lowest hallucination rate the reliability search may reach.
pub const RELIABILITY_FLOOR: f64 = 1e-6;

/// Inner and outer searches must agree on the objective to this tolerance.
const NESTED_AGREEMENT: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvestmentCosts {
    pub c_r: f64,
    /// Zero fixes `h` at `h_bar0`.
    pub c_h: f64,
    pub h_bar0: f64,
}

impl InvestmentCosts {
    pub fn validate(&self) -> Result<()> {
        positive("c_r", self.c_r)?;
        if !(self.c_h.is_finite() && self.c_h >= 0.0) {
            return Err(FeasibilityError::Negative { name: "c_h", value: self.c_h }.into());
        }
        open_unit("h_bar0", self.h_bar0)?;
        Ok(())
    }

    pub fn reliability_cost(&self, h: f64) -> f64 {
        if self.c_h == 0.0 {
            0.0
        } else {
            self.c_h / 10.0 * (self.h_bar0 / h - 1.0)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvestmentDesign {
    pub mode: Mode,
    pub adopt: bool,
    /// Zero when the tool is not adopted.
    pub r_star: f64,
    pub h_star: f64,
    /// Operating point; `profit` excludes investment outlays.
    pub design: OrgDesign,
    pub capability_cost: f64,
    pub reliability_cost: f64,
    pub total_cost: f64,
    pub net_profit: f64,
    pub baseline_profit: f64,
}

impl InvestmentDesign {
    fn baseline(mode: Mode, p: &ModelParams, h: f64) -> Self {
        let design = baseline_design(p);
        Self {
            mode,
            adopt: false,
            r_star: 0.0,
            h_star: h,
            design,
            capability_cost: 0.0,
            reliability_cost: 0.0,
            total_cost: 0.0,
            net_profit: design.profit,
            baseline_profit: design.profit,
        }
    }

    fn priced(
        mode: Mode,
        p: &ModelParams,
        r: f64,
        h: f64,
        design: OrgDesign,
        capability_cost: f64,
        reliability_cost: f64,
    ) -> Self {
        let base = baseline_design(p).profit;
        let total_cost = capability_cost + reliability_cost;
        let net_profit = design.profit - total_cost;
        Self {
            mode,
            adopt: r > 0.0 && net_profit - base > ADOPTION_TOLERANCE,
            r_star: r,
            h_star: h,
            design,
            capability_cost,
            reliability_cost,
            total_cost,
            net_profit,
            baseline_profit: base,
        }
    }

    /// Replace a rejected candidate with the no-tool organization.
    fn settled(self, p: &ModelParams, h_idle: f64) -> Self {
        if self.adopt {
            self
        } else {
            Self::baseline(self.mode, p, h_idle)
        }
    }
}

fn tool_gap(p: &ModelParams, h: f64) -> f64 {
    p.t_c - h * p.t_c - p.t_v
}

/// Smallest capability cost coefficient for which the closed form is valid, by mode.
pub fn capability_cost_floor(params: &ModelParams, mode: Mode, h: f64) -> Option<f64> {
    let p = params;
    let (k, w, t_c) = (p.k, p.w, p.t_c);
    let kw = p.kw();
    let g = tool_gap(p, h);
    match mode {
        Mode::WorkerAug => {
            let c1 = kw * kw * g * g / (4.0 * k);
            let c2 = kw * g * (kw * (h * t_c + p.t_v) - 2.0 * k) / (4.0 * k);
            Some(c1.max(c2))
        }
        Mode::ExpertAuto => Some(kw * g / 2.0),
        Mode::ExpertAug => {
            let c3 = kw * kw * t_c * t_c / (4.0 * k);
            let c4 = (2.0 * k * k + 4.0 * k * w - h * kw * kw * t_c) * t_c / (4.0 * k);
            Some(c3.max(c4))
        }
        Mode::Baseline | Mode::WorkerAuto => None,
    }
}

pub fn worker_aug_invest_capability(p: &ModelParams, c_r: f64, h: f64) -> f64 {
    let kw = p.kw();
    let g = tool_gap(p, h);
    kw * (2.0 * p.k - kw * p.t_c) * g / (4.0 * p.k * c_r - kw * kw * g * g)
}

/// Cost coefficient where the span turns under invested augmentation.
pub fn worker_aug_invest_span_turn(p: &ModelParams, h: f64) -> Option<f64> {
    let kw = p.kw();
    let g = tool_gap(p, h);
    (p.t_c > p.k / kw).then(|| kw * kw * g * g / (4.0 * kw * p.t_c - 4.0 * p.k))
}

pub fn expert_auto_invest_capability(p: &ModelParams, c_r: f64, h: f64) -> f64 {
    p.kw() * tool_gap(p, h) / (2.0 * c_r)
}

/// Adoption requires the cost coefficient strictly below this.
pub fn expert_auto_invest_cost_ceiling(p: &ModelParams, h: f64) -> f64 {
    p.k * tool_gap(p, h) / (h * p.t_c + p.t_c + p.t_v)
}

pub fn expert_aug_invest_capability(p: &ModelParams, c_r: f64, h: f64) -> f64 {
    let kw = p.kw();
    kw * (2.0 * p.k - kw * (1.0 + h) * p.t_c) * p.t_c / (4.0 * p.k * c_r - kw * kw * p.t_c * p.t_c)
}

/// Adoption requires `h` strictly below this.
pub fn expert_aug_invest_hallucination_ceiling(p: &ModelParams, c_r: f64) -> f64 {
    let (k, t_c) = (p.k, p.t_c);
    let kw = p.kw();
    let root = (k * c_r * (4.0 * k * c_r - kw * kw * t_c * t_c)).sqrt();
    (2.0 * k - kw * t_c) * (2.0 * k * c_r - root) / (2.0 * k * c_r * kw * t_c)
}

pub fn expert_aug_invest_span_turn(p: &ModelParams, h: f64) -> Option<f64> {
    let kw = p.kw();
    let denom = 4.0 * p.t_c * (1.0 + h) * kw - 4.0 * p.k;
    (denom > 0.0).then(|| kw * kw * p.t_c * p.t_c / denom)
}

/// Interior capability choice for a closed-form mode, whether or not it beats the baseline.
///
/// `r_star` is the first-order solution capped at 1, where net profit, concave in `r`, peaks
/// on the boundary. A nonpositive solution means the tool has no value and yields the baseline.
pub fn capability_invest_candidate(
    params: &ModelParams,
    mode: Mode,
    c_r: f64,
    h: f64,
) -> Result<InvestmentDesign> {
    let p = validate_params(params, mode)?;
    positive("c_r", c_r)?;
    open_unit("h", h)?;
    if let Some(bound) = capability_cost_floor(&p, mode, h) {
        if c_r <= bound {
            return Err(Error::CoefficientTooSmall { c_r, bound });
        }
    }
    let kw = p.kw();
    let (r, x) = match mode {
        Mode::WorkerAug => {
            let r = worker_aug_invest_capability(&p, c_r, h).min(1.0);
            (r, kw * (r * p.t_v + (1.0 + r * h - r) * p.t_c) / (2.0 * p.k))
        }
        Mode::ExpertAuto => (
            expert_auto_invest_capability(&p, c_r, h).min(1.0),
            kw * (p.t_v + h * p.t_c) / (2.0 * p.k),
        ),
        Mode::ExpertAug => {
            let r = expert_aug_invest_capability(&p, c_r, h).min(1.0);
            (r, kw * (1.0 - r + h) * p.t_c / (2.0 * p.k))
        }
        _ => return Err(Error::InvalidConfig(format!("{mode} has no closed-form investment"))),
    };
    if r.is_nan() || r <= 0.0 {
        return Ok(InvestmentDesign::baseline(mode, &p, h));
    }
    let design = design_at(&p, &DeploymentConfig::new(mode, r, h), x.min(1.0));
    let mut out = InvestmentDesign::priced(mode, &p, r, h, design, 0.5 * c_r * r * r, 0.0);
    let rule = match mode {
        Mode::WorkerAug => h < 1.0 - p.t_v / p.t_c,
        Mode::ExpertAuto => h < 1.0 - p.t_v / p.t_c && c_r < expert_auto_invest_cost_ceiling(&p, h),
        _ => h < expert_aug_invest_hallucination_ceiling(&p, c_r),
    };
    out.adopt &= rule;
    Ok(out)
}

/// Optimal capability investment at a fixed hallucination rate.
///
/// Worker automation has no closed form and is solved over `(x, r_t)` with `r_t <= x`.
pub fn capability_invest_solve(
    params: &ModelParams,
    mode: Mode,
    c_r: f64,
    h: f64,
) -> Result<InvestmentDesign> {
    match mode {
        Mode::Baseline => Err(Error::InvalidConfig("investment needs a deployment mode".into())),
        Mode::WorkerAuto => worker_auto_capability_numeric(params, c_r, h),
        _ => Ok(capability_invest_candidate(params, mode, c_r, h)?.settled(params, h)),
    }
}

fn worker_auto_capability_numeric(
    params: &ModelParams,
    c_r: f64,
    h: f64,
) -> Result<InvestmentDesign> {
    let p = validate_params(params, Mode::WorkerAuto)?;
    positive("c_r", c_r)?;
    open_unit("h", h)?;
    let net = |x: f64, r: f64| {
        profit_unchecked(&p, &DeploymentConfig::WorkerAuto { r, h }, x) - 0.5 * c_r * r * r
    };
    let problem = PairProblem::new(net, |x, r| r <= x, (0.0, 1.0), (0.0, 1.0));
    let ((x, r), _) = maximize_pair(&problem)?;
    let design = design_at(&p, &DeploymentConfig::WorkerAuto { r, h }, x);
    Ok(InvestmentDesign::priced(Mode::WorkerAuto, &p, r, h, design, 0.5 * c_r * r * r, 0.0)
        .settled(&p, h))
}

/// Inner optimum over `x`; the profit is concave in `x` for both worker modes.
fn inner_best(p: &ModelParams, config: &DeploymentConfig) -> (f64, f64) {
    let lo = config.lower_bound();
    golden_section(&|x| profit_unchecked(p, config, x), lo, 1.0, 1e-10)
}

/// Joint investment in capability and reliability for the worker-level modes.
pub fn dual_invest_solve(
    params: &ModelParams,
    mode: Mode,
    costs: &InvestmentCosts,
) -> Result<InvestmentDesign> {
    if !matches!(mode, Mode::WorkerAuto | Mode::WorkerAug) {
        return Err(Error::InvalidConfig(format!(
            "dual investment is defined for worker modes, not {mode}"
        )));
    }
    let p = validate_params(params, mode)?;
    costs.validate()?;
    let h_lo = if costs.c_h == 0.0 { costs.h_bar0 } else { RELIABILITY_FLOOR.min(costs.h_bar0) };
    let objective = |r: f64, h: f64| {
        let (_, v) = inner_best(&p, &DeploymentConfig::new(mode, r, h));
        v - 0.5 * costs.c_r * r * r - costs.reliability_cost(h)
    };
    let problem = PairProblem::new(objective, |_, _| true, (0.0, 1.0), (h_lo, costs.h_bar0));
    let ((r, h), v) = maximize_pair(&problem)?;

    let config = DeploymentConfig::new(mode, r, h);
    let (x, _) = inner_best(&p, &config);
    let lo = config.lower_bound();
    let check = if lo < 1.0 {
        maximize_scalar(&ScalarProblem::new(|x| profit_unchecked(&p, &config, x), lo, 1.0))?.1
    } else {
        profit_unchecked(&p, &config, 1.0)
    };
    let cost = 0.5 * costs.c_r * r * r + costs.reliability_cost(h);
    if (check - cost - v).abs() > NESTED_AGREEMENT {
        return Err(Error::Convergence(format!(
            "inner searches disagree at r = {r}, h = {h}: {} vs {v}",
            check - cost
        )));
    }
    let design = design_at(&p, &config, x);
    Ok(InvestmentDesign::priced(
        mode,
        &p,
        r,
        h,
        design,
        0.5 * costs.c_r * r * r,
        costs.reliability_cost(h),
    )
    .settled(&p, costs.h_bar0))
}
