//! Capability and reliability tied together: `h = b (1 - r)`.

use crate::closed_form::{
    design_at, expert_aug_bundle, expert_auto_bundle, settle, worker_aug_bundle, worker_auto_bundle,
};
use crate::error::{Error, FeasibilityError, Result};
use crate::model::{
    open_unit, validate_params, AdoptionRule, DeploymentConfig, Mode, ModelParams, OrgDesign,
    Regime, SolveResult, ThresholdBundle,
};

/// Thresholds of the coupled model along the capability axis. `None` marks "not applicable".
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoupledThresholds {
    /// Worker automation: adoption needs `b` below this.
    pub coupling_ceiling: Option<f64>,
    /// Other modes: adoption needs `r` strictly above this.
    pub capability_floor: Option<f64>,
    /// Worker automation: collapse once `r_t` reaches this.
    pub collapse_capability: Option<f64>,
    /// Span turning point along `r`.
    pub span_turn_capability: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoupledResult {
    pub b: f64,
    pub implied_h: f64,
    pub result: SolveResult,
    pub coupled: CoupledThresholds,
}

fn inside(v: f64, lo: f64, hi: f64) -> Option<f64> {
    (v.is_finite() && v > lo && v < hi).then_some(v)
}

/// Adoption ceiling on `b` under worker automation.
pub fn coupled_worker_auto_ceiling(p: &ModelParams, r_t: f64) -> f64 {
    let (k, w, t_c, t_v, t_r) = (p.k, p.w, p.t_c, p.t_v, p.t_r);
    let first = (1.0 - t_v) / ((1.0 - r_t) * t_r);
    if r_t <= p.baseline_threshold() {
        return first;
    }
    let gap = 2.0 * k * r_t - k * t_c - 2.0 * w * t_c;
    first - gap * gap / (4.0 * k * r_t * t_r * (1.0 - r_t) * (k * r_t * r_t + 2.0 * w))
}

/// Capability at which worker automation collapses the hierarchy.
pub fn coupled_collapse_capability(p: &ModelParams, b: f64) -> f64 {
    let (k, t_c, t_v, t_r) = (p.k, p.t_c, p.t_v, p.t_r);
    let kw = p.kw();
    let disc = k * k * t_r * t_r * b * b - 2.0 * k * t_r * (kw * t_c - k * (1.0 + t_v)) * b
        + k * k * (1.0 - t_v) * (1.0 - t_v);
    (-k * (1.0 - t_v - b * t_r) + disc.sqrt()) / (2.0 * b * k * t_r)
}

pub fn coupled_worker_auto_knowledge(p: &ModelParams, r_t: f64, b: f64) -> f64 {
    let denom = 1.0 - b * p.t_r * r_t * r_t - (1.0 - p.t_v - b * p.t_r) * r_t;
    let x = p.kw() * p.t_c / (2.0 * p.k * denom);
    x.min(1.0).max(r_t)
}

pub fn coupled_worker_aug_floor(p: &ModelParams, b: f64) -> f64 {
    1.0 - (p.t_c - p.t_v) / (b * p.t_c)
}

pub fn coupled_worker_aug_knowledge(p: &ModelParams, r_g: f64, b: f64) -> f64 {
    let x =
        p.kw() * (r_g * p.t_v + (1.0 - r_g) * p.t_c + b * r_g * (1.0 - r_g) * p.t_c) / (2.0 * p.k);
    x.min(1.0)
}

/// Larger root of the span-derivative quadratic; only meaningful when `t_c > k/(k+2w)`.
pub fn coupled_worker_aug_span_turn(p: &ModelParams, b: f64) -> Option<f64> {
    let kw = p.kw();
    if p.t_c <= p.k / kw {
        return None;
    }
    let qa = kw * b * p.t_c;
    let qb = kw * (p.t_c - b * p.t_c - p.t_v);
    let qc = p.k - kw * p.t_c;
    let disc = qb * qb - 4.0 * qa * qc;
    if disc < 0.0 {
        return None;
    }
    Some((-qb + disc.sqrt()) / (2.0 * qa))
}

pub fn coupled_expert_auto_floor(p: &ModelParams, b: f64) -> f64 {
    let (k, w, t_c, t_v) = (p.k, p.w, p.t_c, p.t_v);
    let reliability = 1.0 - (t_c - t_v) / (b * t_c);
    let profitability =
        p.kw() * (b * t_c + t_c + t_v) / (4.0 * k + b * k * t_c + 2.0 * b * t_c * w);
    reliability.max(profitability)
}

pub fn coupled_expert_auto_knowledge(p: &ModelParams, r_e: f64, b: f64) -> f64 {
    p.kw() * (p.t_v + b * (1.0 - r_e) * p.t_c) / (2.0 * p.k)
}

pub fn coupled_expert_auto_span_turn(p: &ModelParams, b: f64) -> f64 {
    let (k, t_c, t_v) = (p.k, p.t_c, p.t_v);
    let kw = p.kw();
    (t_c * t_c * kw * b * b + t_c * (k + kw * t_v) * b - k * (t_c - t_v))
        / (b * t_c * (2.0 * k + b * kw * t_c))
}

pub fn coupled_expert_aug_floor(b: f64) -> f64 {
    b / (1.0 + b)
}

pub fn coupled_expert_aug_knowledge(p: &ModelParams, r_u: f64, b: f64) -> f64 {
    (p.kw() * (1.0 + b) * (1.0 - r_u) * p.t_c / (2.0 * p.k)).min(1.0)
}

pub fn coupled_expert_aug_span_turn(p: &ModelParams, b: f64) -> f64 {
    let m = (1.0 + b) * p.kw() * p.t_c;
    (m - p.k) / m
}

/// Closed-form solve with the hallucination rate implied by capability.
pub fn coupled_solve(params: &ModelParams, mode: Mode, r: f64, b: f64) -> Result<CoupledResult> {
    if mode == Mode::Baseline {
        return Err(Error::InvalidConfig("coupling needs a deployment mode".into()));
    }
    let p = validate_params(params, mode)?;
    open_unit("r", r)?;
    open_unit("b", b)?;
    let h = b * (1.0 - r);
    if !(h > 0.0 && h < 1.0) {
        return Err(FeasibilityError::ImpliedHallucination { h }.into());
    }
    let config = DeploymentConfig::new(mode, r, h);

    let (design, regime, rule_holds, rule, bundle, coupled) = match mode {
        Mode::WorkerAuto => {
            let ceiling = coupled_worker_auto_ceiling(&p, r);
            let collapse = coupled_collapse_capability(&p, b);
            let collapsed = r >= collapse;
            let x = if collapsed { 1.0 } else { coupled_worker_auto_knowledge(&p, r, b) };
            let design = design_at(&p, &config, x);
            let regime = if collapsed {
                Regime::Collapsed
            } else if x <= r {
                Regime::SkillFloor
            } else {
                Regime::Interior
            };
            (
                design,
                regime,
                b < ceiling,
                AdoptionRule::HallucinationCeiling,
                ThresholdBundle::WorkerAuto(worker_auto_bundle(&p, r, h)),
                CoupledThresholds {
                    coupling_ceiling: Some(ceiling),
                    capability_floor: None,
                    collapse_capability: inside(collapse, 0.0, 1.0),
                    span_turn_capability: None,
                },
            )
        }
        Mode::WorkerAug => {
            let floor = coupled_worker_aug_floor(&p, b);
            let design = design_at(&p, &config, coupled_worker_aug_knowledge(&p, r, b));
            (
                design,
                Regime::Interior,
                r > floor,
                AdoptionRule::CapabilityFloor,
                ThresholdBundle::WorkerAug(worker_aug_bundle(&p, r, h)),
                CoupledThresholds {
                    coupling_ceiling: None,
                    capability_floor: Some(floor),
                    collapse_capability: None,
                    span_turn_capability: coupled_worker_aug_span_turn(&p, b)
                        .and_then(|v| inside(v, floor.max(0.0), 1.0)),
                },
            )
        }
        Mode::ExpertAuto => {
            let floor = coupled_expert_auto_floor(&p, b);
            let x = coupled_expert_auto_knowledge(&p, r, b);
            let guided = design_at(&p, &config, x.clamp(0.0, r));
            let unguided = design_at(&p, &config, p.baseline_threshold().clamp(r, 1.0));
            let design = if guided.profit >= unguided.profit { guided } else { unguided };
            (
                design,
                Regime::Interior,
                r > floor,
                AdoptionRule::CapabilityFloor,
                ThresholdBundle::ExpertAuto(expert_auto_bundle(&p, r, h)),
                CoupledThresholds {
                    coupling_ceiling: None,
                    capability_floor: Some(floor),
                    collapse_capability: None,
                    span_turn_capability: inside(
                        coupled_expert_auto_span_turn(&p, b),
                        floor.max(0.0),
                        1.0,
                    ),
                },
            )
        }
        Mode::ExpertAug => {
            let floor = coupled_expert_aug_floor(b);
            let design = design_at(&p, &config, coupled_expert_aug_knowledge(&p, r, b));
            (
                design,
                Regime::Interior,
                r > floor,
                AdoptionRule::CapabilityFloor,
                ThresholdBundle::ExpertAug(expert_aug_bundle(&p, r, h)),
                CoupledThresholds {
                    coupling_ceiling: None,
                    capability_floor: Some(floor),
                    collapse_capability: None,
                    span_turn_capability: inside(coupled_expert_aug_span_turn(&p, b), floor, 1.0),
                },
            )
        }
        Mode::Baseline => unreachable!(),
    };
    let regime = if design.collapsed() { Regime::Collapsed } else { regime };
    Ok(CoupledResult {
        b,
        implied_h: h,
        result: settle(mode, &p, design, regime, rule, rule_holds, bundle),
        coupled,
    })
}

/// The coupled design of a mode regardless of the adoption verdict.
pub fn coupled_candidate(params: &ModelParams, mode: Mode, r: f64, b: f64) -> Result<OrgDesign> {
    let out = coupled_solve(params, mode, r, b)?;
    if out.result.adopted() {
        return Ok(out.result.design);
    }
    let p = *params;
    let config = DeploymentConfig::new(mode, r, out.implied_h);
    let x = match mode {
        Mode::WorkerAuto => coupled_worker_auto_knowledge(&p, r, b),
        Mode::WorkerAug => coupled_worker_aug_knowledge(&p, r, b),
        Mode::ExpertAuto => coupled_expert_auto_knowledge(&p, r, b).min(r),
        Mode::ExpertAug => coupled_expert_aug_knowledge(&p, r, b),
        Mode::Baseline => p.baseline_threshold(),
    };
    Ok(design_at(&p, &config, x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_form::solve;

    fn figc1() -> ModelParams {
        ModelParams::full(0.8, 0.25, 0.5, 0.3, 0.8)
    }

    #[test]
    fn worker_auto_spot_value() {
        let out = coupled_solve(&figc1(), Mode::WorkerAuto, 0.5, 0.4).unwrap();
        assert!((out.implied_h - 0.2).abs() < 1e-15);
        assert!(out.result.adopted());
        assert!((out.result.design.x_star - 0.40625 / 0.73).abs() < 1e-12);
    }

    #[test]
    fn expert_aug_floor() {
        let p = ModelParams::new(0.7, 0.4, 0.7);
        let yes = coupled_solve(&p, Mode::ExpertAug, 0.5, 0.5).unwrap();
        assert_eq!(yes.coupled.capability_floor, Some(1.0 / 3.0));
        assert!(yes.result.adopted());
        assert!(!coupled_solve(&p, Mode::ExpertAug, 0.3, 0.5).unwrap().result.adopted());
    }

    #[test]
    fn closed_forms_agree_with_main_solver_at_implied_rate() {
        let params = [
            ModelParams::full(0.8, 0.25, 0.5, 0.3, 0.8),
            ModelParams::full(0.7, 0.3, 0.7, 0.2, 0.85),
            ModelParams::full(1.3, 0.5, 0.3, 0.3, 0.8),
        ];
        for p in params {
            for mode in Mode::DEPLOYMENTS {
                for i in 1..50 {
                    let r = i as f64 / 50.0;
                    for b in [0.05, 0.3, 0.6, 0.95] {
                        let c = coupled_solve(&p, mode, r, b).unwrap();
                        let m = solve(&p, &DeploymentConfig::new(mode, r, c.implied_h)).unwrap();
                        assert_eq!(c.result.adopted(), m.adopted(), "{mode} r={r} b={b}");
                        assert!((c.result.design.x_star - m.design.x_star).abs() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn vanishing_coupling_matches_reliable_tool() {
        let p = figc1();
        for mode in Mode::DEPLOYMENTS {
            let c = coupled_solve(&p, mode, 0.6, 1e-9).unwrap();
            let m = solve(&p, &DeploymentConfig::new(mode, 0.6, 1e-9 * 0.4)).unwrap();
            assert!((c.result.design.profit - m.design.profit).abs() < 1e-9);
        }
    }

    #[test]
    fn baseline_is_not_a_coupled_mode() {
        assert!(coupled_solve(&figc1(), Mode::Baseline, 0.5, 0.5).is_err());
    }
}
