//! Expert knowledge `y` as a second choice variable.
//!
//! Revenue is `y`, experts earn `w + k y^2 / 2`, and expert staffing is unchanged: every
//! escalation still costs expert time whether or not the expert can solve it.

use crate::closed_form::{
    expert_aug_bundle, expert_auto_bundle, labor_demand, worker_aug_bundle, worker_auto_bundle,
};
use crate::error::Result;
use crate::model::{
    validate_params_relaxed, AdoptionDecision, AdoptionRule, DeploymentConfig, Mode, ModelParams,
    OrgDesign, Regime, SolveResult, ThresholdBundle, ADOPTION_TOLERANCE,
};
use crate::oracle::{maximize_pair, PairProblem};

/// Profit at worker knowledge `x` and expert knowledge `y`. Expert automation is read on its
/// guided branch, `x <= r_e`.
pub fn expert_knowledge_profit(p: &ModelParams, config: &DeploymentConfig, x: f64, y: f64) -> f64 {
    let (wd, ed) = labor_demand(p, config, x);
    y - p.worker_wage(x) * wd - p.expert_wage(y) * ed
}

/// Whether `(x, y)` respects the knowledge ordering of the mode.
pub fn expert_knowledge_feasible(config: &DeploymentConfig, x: f64, y: f64) -> bool {
    match *config {
        DeploymentConfig::Baseline | DeploymentConfig::ExpertAug { .. } => x <= y,
        DeploymentConfig::WorkerAuto { r, .. } => r <= x && x <= y,
        // Experts must cover the augmented worker boundary.
        DeploymentConfig::WorkerAug { r, .. } => x + r * (1.0 - x) <= y,
        DeploymentConfig::ExpertAuto { r, .. } => x <= r && r <= y,
    }
}

/// The mode's own optimum over `(x, y)`, without comparing against the baseline.
pub fn expert_knowledge_program(
    params: &ModelParams,
    config: &DeploymentConfig,
) -> Result<OrgDesign> {
    let p = validate_params_relaxed(params, config.mode())?;
    config.validate()?;
    let (x_box, y_box) = match *config {
        DeploymentConfig::WorkerAuto { r, .. } => ((r, 1.0), (r, 1.0)),
        DeploymentConfig::ExpertAuto { r, .. } => ((0.0, r), (r, 1.0)),
        _ => ((0.0, 1.0), (0.0, 1.0)),
    };
    let problem = PairProblem::new(
        |x, y| expert_knowledge_profit(&p, config, x, y),
        |x, y| expert_knowledge_feasible(config, x, y),
        x_box,
        y_box,
    );
    let ((x, y), profit) = maximize_pair(&problem)?;
    let (wd, ed) = labor_demand(&p, config, x);
    Ok(OrgDesign::new(x, y, wd, ed, profit))
}

/// Solve with expert knowledge endogenous; the mode is adopted when its optimum beats the
/// endogenous-knowledge baseline.
///
/// The threshold bundle is the full-knowledge one and is informative only when `y* = 1`.
pub fn expert_knowledge_solve(
    params: &ModelParams,
    config: &DeploymentConfig,
) -> Result<SolveResult> {
    let base = expert_knowledge_program(params, &DeploymentConfig::Baseline)?;
    let mode = config.mode();
    if mode == Mode::Baseline {
        return Ok(SolveResult {
            mode,
            design: base,
            adoption: None,
            thresholds: ThresholdBundle::Baseline,
            regime: Regime::Baseline,
        });
    }
    let candidate = expert_knowledge_program(params, config)?;
    let p = *params;
    let (r, h) = config.capability_and_hallucination().expect("deployment carries r and h");
    let thresholds = match mode {
        Mode::WorkerAuto => ThresholdBundle::WorkerAuto(worker_auto_bundle(&p, r, h)),
        Mode::WorkerAug => ThresholdBundle::WorkerAug(worker_aug_bundle(&p, r, h)),
        Mode::ExpertAuto => ThresholdBundle::ExpertAuto(expert_auto_bundle(&p, r, h)),
        Mode::ExpertAug => ThresholdBundle::ExpertAug(expert_aug_bundle(&p, r, h)),
        Mode::Baseline => unreachable!(),
    };
    let adopt = candidate.profit - base.profit > ADOPTION_TOLERANCE;
    let regime = if !adopt {
        Regime::NotAdopted
    } else if candidate.collapsed() {
        Regime::Collapsed
    } else if candidate.x_star >= candidate.y_star {
        Regime::SkillCeiling
    } else if mode == Mode::WorkerAuto && candidate.x_star <= r {
        Regime::SkillFloor
    } else {
        Regime::Interior
    };
    Ok(SolveResult {
        mode,
        design: if adopt { candidate } else { base },
        adoption: Some(AdoptionDecision {
            adopt,
            binding: AdoptionRule::ProfitMargin,
            profit_with: candidate.profit,
            profit_without: base.profit,
        }),
        thresholds,
        regime,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_form::solve;
    use crate::Error;

    #[test]
    fn moderate_premium_keeps_full_expert_knowledge() {
        let p = ModelParams::new(0.8, 0.2, 0.5);
        let d = expert_knowledge_program(&p, &DeploymentConfig::Baseline).unwrap();
        assert_eq!(d.y_star, 1.0);
        assert!((d.x_star - 0.375).abs() < 1e-6, "{}", d.x_star);
    }

    #[test]
    fn full_knowledge_reproduces_the_main_solver() {
        let p = ModelParams::full(0.8, 0.25, 0.8, 0.5, 0.8);
        for config in [
            DeploymentConfig::WorkerAuto { r: 0.5, h: 0.4 },
            DeploymentConfig::WorkerAuto { r: 0.9, h: 0.1 },
            DeploymentConfig::ExpertAug { r: 0.5, h: 0.2 },
        ] {
            let e = expert_knowledge_solve(&p, &config).unwrap();
            let m = solve(&p, &config).unwrap();
            assert_eq!(e.design.y_star, 1.0);
            assert_eq!(e.adopted(), m.adopted());
            assert!((e.design.x_star - m.design.x_star).abs() < 1e-6);
            assert!((e.design.profit - m.design.profit).abs() < 1e-9);
        }
    }

    #[test]
    fn orderings_hold_at_the_optimum() {
        let p = ModelParams::full(3.0, 0.2, 0.5, 0.3, 0.8);
        for mode in Mode::DEPLOYMENTS {
            let config = DeploymentConfig::new(mode, 0.5, 0.1);
            let d = expert_knowledge_program(&p, &config).unwrap();
            assert!(expert_knowledge_feasible(&config, d.x_star, d.y_star), "{mode}");
        }
    }

    #[test]
    fn high_premium_trims_experts_until_automation_is_capable() {
        let p = ModelParams::full(3.0, 0.2, 0.5, 0.3, 0.8);
        let y = |r| {
            expert_knowledge_program(&p, &DeploymentConfig::WorkerAuto { r, h: 0.1 })
                .unwrap()
                .y_star
        };
        let (low, mid, high) = (y(0.05), y(0.3), y(0.9));
        assert!(low < 1.0, "{low}");
        assert!(mid >= low);
        assert_eq!(high, 1.0);
    }

    #[test]
    fn relaxed_bound_still_rejects_very_costly_communication() {
        let p = ModelParams::new(0.8, 0.2, 2.5);
        let err = expert_knowledge_program(&p, &DeploymentConfig::Baseline).unwrap_err();
        assert!(matches!(err, Error::Feasibility(_)));
    }
}
