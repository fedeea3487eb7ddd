//! Exact optimal designs for the baseline and the four deployment architectures.

mod profit;
mod thresholds;

pub use profit::{design_at, firm_profit, labor_demand, profit_eval, profit_unchecked, ModeProfit};
pub use thresholds::*;

use crate::error::Result;
use crate::model::{
    validate_params, AdoptionDecision, AdoptionRule, DeploymentConfig, Mode, ModelParams,
    OrgDesign, Regime, SolveResult, ThresholdBundle, ADOPTION_TOLERANCE,
};

/// Optimal profit of the pre-AI organization, in its own closed form.
pub fn baseline_profit(p: &ModelParams) -> f64 {
    let k = p.k;
    let gap = 2.0 * k - p.kw() * p.t_c;
    (gap * gap + 4.0 * k * (2.0 - k - 2.0 * p.w)) / (8.0 * k)
}

pub(crate) fn baseline_design(p: &ModelParams) -> OrgDesign {
    design_at(p, &DeploymentConfig::Baseline, p.baseline_threshold())
}

pub fn baseline_solve(params: &ModelParams) -> Result<SolveResult> {
    let p = validate_params(params, Mode::Baseline)?;
    Ok(SolveResult {
        mode: Mode::Baseline,
        design: baseline_design(&p),
        adoption: None,
        thresholds: ThresholdBundle::Baseline,
        regime: Regime::Baseline,
    })
}

/// The mode's own optimum and the rule verdict, turned into a final result.
///
/// `rule` is the rule consulted; `rule_holds` its verdict.
pub(crate) fn settle(
    mode: Mode,
    p: &ModelParams,
    candidate: OrgDesign,
    candidate_regime: Regime,
    rule: AdoptionRule,
    rule_holds: bool,
    thresholds: ThresholdBundle,
) -> SolveResult {
    let base = baseline_design(p);
    let margin_holds = candidate.profit - base.profit > ADOPTION_TOLERANCE;
    let adopt = rule_holds && margin_holds;
    let binding = if rule_holds && !margin_holds { AdoptionRule::ProfitMargin } else { rule };
    SolveResult {
        mode,
        design: if adopt { candidate } else { base },
        adoption: Some(AdoptionDecision {
            adopt,
            binding,
            profit_with: candidate.profit,
            profit_without: base.profit,
        }),
        thresholds,
        regime: if adopt { candidate_regime } else { Regime::NotAdopted },
    }
}

fn checked(p: &ModelParams, config: DeploymentConfig) -> Result<ModelParams> {
    let p = validate_params(p, config.mode())?;
    config.validate()?;
    Ok(p)
}

fn regime_of(design: &OrgDesign, floor: f64) -> Regime {
    if design.collapsed() {
        Regime::Collapsed
    } else if design.x_star >= 1.0 {
        Regime::SkillCeiling
    } else if floor > 0.0 && design.x_star <= floor {
        Regime::SkillFloor
    } else {
        Regime::Interior
    }
}

/// Worker knowledge the firm picks under worker automation, whether or not it adopts.
/// Collapse is tested before the clamp to `[r_t, 1]`.
pub fn worker_auto_knowledge(p: &ModelParams, r_t: f64, h: f64) -> f64 {
    if worker_auto_collapses(p, r_t, h) {
        return 1.0;
    }
    let demand = (1.0 - r_t) + (p.t_v + h * p.t_r) * r_t;
    (p.baseline_threshold() / demand).clamp(r_t, 1.0)
}

pub fn worker_auto_solve(params: &ModelParams, r_t: f64, h: f64) -> Result<SolveResult> {
    let config = DeploymentConfig::WorkerAuto { r: r_t, h };
    let p = checked(params, config)?;
    let bundle = worker_auto_bundle(&p, r_t, h);
    let design = design_at(&p, &config, worker_auto_knowledge(&p, r_t, h));
    Ok(settle(
        Mode::WorkerAuto,
        &p,
        design,
        regime_of(&design, r_t),
        AdoptionRule::HallucinationCeiling,
        h < bundle.adoption_ceiling,
        ThresholdBundle::WorkerAuto(bundle),
    ))
}

pub fn worker_aug_knowledge(p: &ModelParams, r_g: f64, h: f64) -> f64 {
    let raw = p.kw() * (r_g * p.t_v + (1.0 + r_g * h - r_g) * p.t_c) / (2.0 * p.k);
    raw.min(1.0)
}

pub fn worker_aug_solve(params: &ModelParams, r_g: f64, h: f64) -> Result<SolveResult> {
    let config = DeploymentConfig::WorkerAug { r: r_g, h };
    let p = checked(params, config)?;
    let bundle = worker_aug_bundle(&p, r_g, h);
    let design = design_at(&p, &config, worker_aug_knowledge(&p, r_g, h));
    Ok(settle(
        Mode::WorkerAug,
        &p,
        design,
        regime_of(&design, 0.0),
        AdoptionRule::HallucinationCeiling,
        h < bundle.adoption_ceiling,
        ThresholdBundle::WorkerAug(bundle),
    ))
}

/// Interior optimum of the AI-guided branch, independent of `r_e`.
pub fn expert_auto_knowledge(p: &ModelParams, h: f64) -> f64 {
    p.kw() * (p.t_v + h * p.t_c) / (2.0 * p.k)
}

/// Better of the two branch optima of the piecewise expert-automation profit.
fn expert_auto_best(p: &ModelParams, config: &DeploymentConfig, r_e: f64, h: f64) -> OrgDesign {
    let guided = design_at(p, config, expert_auto_knowledge(p, h).clamp(0.0, r_e));
    let unguided = design_at(p, config, p.baseline_threshold().clamp(r_e, 1.0));
    if guided.profit >= unguided.profit {
        guided
    } else {
        unguided
    }
}

pub fn expert_auto_solve(params: &ModelParams, r_e: f64, h: f64) -> Result<SolveResult> {
    let config = DeploymentConfig::ExpertAuto { r: r_e, h };
    let p = checked(params, config)?;
    let bundle = expert_auto_bundle(&p, r_e, h);
    let design = expert_auto_best(&p, &config, r_e, h);
    let below_ceiling = h < bundle.adoption_ceiling;
    let above_floor = r_e > bundle.capability_floor;
    let rule = if !below_ceiling {
        AdoptionRule::HallucinationCeiling
    } else if !above_floor || r_e - bundle.capability_floor < bundle.adoption_ceiling - h {
        AdoptionRule::CapabilityFloor
    } else {
        AdoptionRule::HallucinationCeiling
    };
    Ok(settle(
        Mode::ExpertAuto,
        &p,
        design,
        regime_of(&design, 0.0),
        rule,
        below_ceiling && above_floor,
        ThresholdBundle::ExpertAuto(bundle),
    ))
}

pub fn expert_aug_knowledge(p: &ModelParams, r_u: f64, h: f64) -> f64 {
    (p.kw() * (1.0 - r_u + h) * p.t_c / (2.0 * p.k)).min(1.0)
}

pub fn expert_aug_solve(params: &ModelParams, r_u: f64, h: f64) -> Result<SolveResult> {
    let config = DeploymentConfig::ExpertAug { r: r_u, h };
    let p = checked(params, config)?;
    let bundle = expert_aug_bundle(&p, r_u, h);
    let design = design_at(&p, &config, expert_aug_knowledge(&p, r_u, h));
    Ok(settle(
        Mode::ExpertAug,
        &p,
        design,
        regime_of(&design, 0.0),
        AdoptionRule::HallucinationCeiling,
        h < r_u,
        ThresholdBundle::ExpertAug(bundle),
    ))
}

/// Dispatches on the configured mode.
pub fn solve(params: &ModelParams, config: &DeploymentConfig) -> Result<SolveResult> {
    match *config {
        DeploymentConfig::Baseline => baseline_solve(params),
        DeploymentConfig::WorkerAuto { r, h } => worker_auto_solve(params, r, h),
        DeploymentConfig::WorkerAug { r, h } => worker_aug_solve(params, r, h),
        DeploymentConfig::ExpertAuto { r, h } => expert_auto_solve(params, r, h),
        DeploymentConfig::ExpertAug { r, h } => expert_aug_solve(params, r, h),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Span;

    fn fig2() -> ModelParams {
        ModelParams::full(0.8, 0.25, 0.8, 0.5, 0.8)
    }

    fn span(r: &SolveResult) -> f64 {
        r.design.span.value().unwrap()
    }

    #[test]
    fn baseline_spot_values() {
        let r = baseline_solve(&ModelParams::new(0.8, 0.25, 0.8)).unwrap();
        assert!((r.design.x_star - 0.65).abs() < 1e-15);
        assert!((span(&r) - 1.0 / 0.28).abs() < 1e-12);
        assert!(
            (r.design.profit - baseline_profit(&ModelParams::new(0.8, 0.25, 0.8))).abs() < 1e-15
        );
        let r = baseline_solve(&ModelParams::new(1.0, 0.5, 0.5)).unwrap();
        assert_eq!(r.design.x_star, 0.5);
    }

    #[test]
    fn worker_auto_adopts_at_figure_two_point() {
        let r = worker_auto_solve(&fig2(), 0.5, 0.4).unwrap();
        assert!(r.adopted());
        assert!((r.design.x_star - 0.65 / 0.91).abs() < 1e-15);
        assert!((r.design.worker_demand - 0.91).abs() < 1e-15);
        assert!((span(&r) - 3.98125).abs() < 1e-12);
        let ThresholdBundle::WorkerAuto(t) = r.thresholds else { panic!() };
        assert!((t.adoption_ceiling - 0.625).abs() < 1e-15);
    }

    #[test]
    fn worker_auto_rejects_unreliable_tool() {
        let r = worker_auto_solve(&fig2(), 0.3, 0.7).unwrap();
        assert!(!r.adopted());
        assert_eq!(r.regime, Regime::NotAdopted);
        assert_eq!(r.design, baseline_design(&fig2()));
        assert_eq!(r.adoption.unwrap().binding, AdoptionRule::HallucinationCeiling);
    }

    #[test]
    fn worker_auto_collapses_to_one_layer() {
        let r = worker_auto_solve(&fig2(), 0.9, 0.1).unwrap();
        assert!(r.adopted());
        assert_eq!(r.design.x_star, 1.0);
        assert_eq!(r.design.expert_demand, 0.0);
        assert_eq!(r.design.span, Span::Collapsed);
        assert_eq!(r.regime, Regime::Collapsed);
    }

    #[test]
    fn worker_aug_spot_values() {
        let p = ModelParams::new(0.7, 0.3, 0.7).with_validation(0.2);
        let r = worker_aug_solve(&p, 0.5, 0.2).unwrap();
        assert!(r.adopted());
        assert!((r.design.x_star - 0.482857142857143).abs() < 1e-12);
        assert!((span(&r) - 1.0 / ((1.0 - r.design.x_star) * 0.52)).abs() < 1e-12);
        assert!((span(&r) - 3.71866).abs() < 1e-5);
        assert!(!worker_aug_solve(&p, 0.5, 0.75).unwrap().adopted());
    }

    #[test]
    fn expert_auto_spot_values() {
        let p = ModelParams::new(0.8, 0.25, 0.8).with_validation(0.3);
        let r = expert_auto_solve(&p, 0.8, 0.1).unwrap();
        assert!(r.adopted());
        assert_eq!(r.design.x_star, expert_auto_knowledge(&p, 0.1));
        assert!((r.design.x_star - 0.30875).abs() < 1e-15);
        assert!((span(&r) - 1.0 / 0.346675).abs() < 1e-12);
        let no = expert_auto_solve(&p, 0.4, 0.1).unwrap();
        assert!(!no.adopted());
        assert_eq!(no.adoption.unwrap().binding, AdoptionRule::CapabilityFloor);
        let a = expert_auto_solve(&p, 0.6, 0.1).unwrap().design.x_star;
        let b = expert_auto_solve(&p, 0.9, 0.1).unwrap().design.x_star;
        assert_eq!(a, b);
    }

    #[test]
    fn expert_aug_spot_values() {
        let p = ModelParams::new(0.7, 0.4, 0.7);
        let r = expert_aug_solve(&p, 0.5, 0.2).unwrap();
        assert!(r.adopted());
        assert!((r.design.x_star - 0.525).abs() < 1e-15);
        assert!((span(&r) - 4.29646).abs() < 1e-5);
        let tie = expert_aug_solve(&p, 0.3, 0.3).unwrap();
        assert!(!tie.adopted());
        assert!(!expert_aug_solve(&p, 0.5, 0.6).unwrap().adopted());
    }

    #[test]
    fn solve_dispatches_by_mode() {
        let p = fig2();
        let a = solve(&p, &DeploymentConfig::new(Mode::WorkerAuto, 0.5, 0.4)).unwrap();
        assert_eq!(a, worker_auto_solve(&p, 0.5, 0.4).unwrap());
        assert!(solve(&p, &DeploymentConfig::new(Mode::WorkerAuto, 1.0, 0.4)).is_err());
    }
}
