use crate::error::{Error, Result};
use crate::model::{DeploymentConfig, ModelParams, OrgDesign};

/// Worker-time and expert-time demand per unit time when workers hold knowledge `x`.
///
/// Expert-level automation is piecewise: the AI-guided band `(x, r_e]` only exists for `x <= r_e`.
pub fn labor_demand(p: &ModelParams, config: &DeploymentConfig, x: f64) -> (f64, f64) {
    let escalated = 1.0 - x;
    match *config {
        DeploymentConfig::Baseline => (1.0, escalated * p.t_c),
        DeploymentConfig::WorkerAuto { r, h } => {
            ((1.0 - r) + (p.t_v + h * p.t_r) * r, escalated * p.t_c)
        }
        DeploymentConfig::WorkerAug { r, h } => {
            (1.0, escalated * (r * (p.t_v + h * p.t_c) + (1.0 - r) * p.t_c))
        }
        DeploymentConfig::ExpertAuto { r, h } => {
            if x <= r {
                (1.0, (1.0 - r) * p.t_c + (r - x) * (p.t_v + h * p.t_c))
            } else {
                (1.0, escalated * p.t_c)
            }
        }
        DeploymentConfig::ExpertAug { r, h } => (1.0, escalated * ((1.0 - r) * p.t_c + h * p.t_c)),
    }
}

/// Revenue `y` less wages for the given labor demands.
#[inline]
pub fn firm_profit(p: &ModelParams, worker_demand: f64, expert_demand: f64, x: f64, y: f64) -> f64 {
    y - p.worker_wage(x) * worker_demand - p.expert_wage(y) * expert_demand
}

/// Profit without the domain check; `x` outside the feasible interval extrapolates the formula.
#[inline]
pub fn profit_unchecked(p: &ModelParams, config: &DeploymentConfig, x: f64) -> f64 {
    let (wd, ed) = labor_demand(p, config, x);
    firm_profit(p, wd, ed, x, 1.0)
}

/// Profit per unit time at worker knowledge `x`, with experts at full knowledge.
pub fn profit_eval(p: &ModelParams, config: &DeploymentConfig, x: f64) -> Result<f64> {
    ModeProfit::new(*p, *config).eval(x)
}

/// Operating point at worker knowledge `x` with experts at full knowledge.
pub fn design_at(p: &ModelParams, config: &DeploymentConfig, x: f64) -> OrgDesign {
    let (wd, ed) = labor_demand(p, config, x);
    OrgDesign::new(x, 1.0, wd, ed, firm_profit(p, wd, ed, x, 1.0))
}

/// The map `x -> profit` of one mode, defined on `[lower_bound, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeProfit {
    pub params: ModelParams,
    pub config: DeploymentConfig,
}

impl ModeProfit {
    pub fn new(params: ModelParams, config: DeploymentConfig) -> Self {
        Self { params, config }
    }

    pub fn lower_bound(&self) -> f64 {
        self.config.lower_bound()
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        let lower = self.lower_bound();
        if !(x >= lower && x <= 1.0) {
            return Err(Error::Domain { x, lower });
        }
        Ok(profit_unchecked(&self.params, &self.config, x))
    }

    #[inline]
    pub fn eval_unchecked(&self, x: f64) -> f64 {
        profit_unchecked(&self.params, &self.config, x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Mode;

    fn fig2() -> ModelParams {
        ModelParams::full(0.8, 0.25, 0.8, 0.5, 0.8)
    }

    #[test]
    fn baseline_at_zero_knowledge() {
        let v = profit_eval(&fig2(), &DeploymentConfig::Baseline, 0.0).unwrap();
        assert!((v - 0.23).abs() < 1e-15);
    }

    #[test]
    fn baseline_at_full_knowledge_has_no_escalation_cost() {
        let p = fig2();
        let v = profit_eval(&p, &DeploymentConfig::Baseline, 1.0).unwrap();
        assert_eq!(v, 1.0 - (p.w + 0.5 * p.k));
    }

    #[test]
    fn worker_auto_rejects_knowledge_below_automated_range() {
        let cfg = DeploymentConfig::new(Mode::WorkerAuto, 0.5, 0.4);
        assert_eq!(profit_eval(&fig2(), &cfg, 0.4), Err(Error::Domain { x: 0.4, lower: 0.5 }));
        assert!(profit_eval(&fig2(), &cfg, 0.5).is_ok());
        assert!(profit_eval(&fig2(), &cfg, 1.0 + 1e-9).is_err());
        assert!(profit_eval(&fig2(), &cfg, f64::NAN).is_err());
    }

    #[test]
    fn expert_auto_branches_meet_at_capability() {
        let p = ModelParams::new(0.8, 0.25, 0.8).with_validation(0.3);
        let cfg = DeploymentConfig::new(Mode::ExpertAuto, 0.6, 0.1);
        let below = profit_eval(&p, &cfg, 0.6).unwrap();
        let base = profit_eval(&p, &DeploymentConfig::Baseline, 0.6).unwrap();
        assert!((below - base).abs() < 1e-15);
    }
}
