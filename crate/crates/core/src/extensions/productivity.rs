//! Worker augmentation that also speeds up the tasks workers solve themselves.

use crate::closed_form::{firm_profit, settle, worker_aug_bundle};
use crate::error::{Error, Result};
use crate::model::{
    open_unit, validate_params, AdoptionRule, Mode, ModelParams, OrgDesign, Regime, SolveResult,
    ThresholdBundle,
};
use crate::oracle::{maximize_scalar, ScalarProblem};

/// Augmentation capability `r_g`, hallucination rate `h` and productivity intensity `a`.
/// Worker productivity on in-knowledge tasks is `1 + r_g a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductivityConfig {
    pub r_g: f64,
    pub h: f64,
    pub a: f64,
}

impl ProductivityConfig {
    pub fn validate(&self) -> Result<()> {
        open_unit("r", self.r_g)?;
        open_unit("h", self.h)?;
        if !(self.a.is_finite() && self.a >= 0.0) {
            return Err(crate::FeasibilityError::Negative { name: "A", value: self.a }.into());
        }
        Ok(())
    }
}

/// Worker and expert time per unit time at worker knowledge `x`.
pub fn productivity_demand(p: &ModelParams, cfg: &ProductivityConfig, x: f64) -> (f64, f64) {
    let (r, h) = (cfg.r_g, cfg.h);
    let worker = x / (1.0 + r * cfg.a) + 1.0 - x;
    let expert = (1.0 - x) * (r * (p.t_v + h * p.t_c) + (1.0 - r) * p.t_c);
    (worker, expert)
}

pub fn productivity_profit(p: &ModelParams, cfg: &ProductivityConfig, x: f64) -> f64 {
    let (wd, ed) = productivity_demand(p, cfg, x);
    firm_profit(p, wd, ed, x, 1.0)
}

/// Numeric optimum over `x` in `[0, 1]`, adopted when it beats the baseline.
///
/// The threshold bundle is that of plain augmentation and is exact only at `a = 0`.
pub fn productivity_solve(params: &ModelParams, cfg: &ProductivityConfig) -> Result<SolveResult> {
    let p = validate_params(params, Mode::WorkerAug)?;
    cfg.validate()?;
    let (x, _) =
        maximize_scalar(&ScalarProblem::new(|x| productivity_profit(&p, cfg, x), 0.0, 1.0))
            .map_err(|e| Error::Convergence(e.to_string()))?;
    let (wd, ed) = productivity_demand(&p, cfg, x);
    let design = OrgDesign::new(x, 1.0, wd, ed, firm_profit(&p, wd, ed, x, 1.0));
    let regime = if design.collapsed() { Regime::Collapsed } else { Regime::Interior };
    Ok(settle(
        Mode::WorkerAug,
        &p,
        design,
        regime,
        AdoptionRule::ProfitMargin,
        true,
        ThresholdBundle::WorkerAug(worker_aug_bundle(&p, cfg.r_g, cfg.h)),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_form::worker_aug_solve;

    fn figb() -> ModelParams {
        ModelParams::new(0.4, 0.2, 0.8).with_validation(0.2)
    }

    #[test]
    fn zero_intensity_reduces_to_plain_augmentation() {
        let p = ModelParams::new(0.7, 0.3, 0.7).with_validation(0.2);
        for (r, h) in [(0.5, 0.2), (0.2, 0.6), (0.9, 0.05), (0.5, 0.75)] {
            let a = productivity_solve(&p, &ProductivityConfig { r_g: r, h, a: 0.0 }).unwrap();
            let b = worker_aug_solve(&p, r, h).unwrap();
            assert_eq!(a.adopted(), b.adopted());
            assert!((a.design.x_star - b.design.x_star).abs() < 1e-6);
            assert!((a.design.profit - b.design.profit).abs() < 1e-9);
        }
    }

    #[test]
    fn strong_productivity_pushes_knowledge_to_full() {
        let p = figb();
        let xs: Vec<f64> = [0.1, 0.3, 0.5, 0.7, 0.9]
            .iter()
            .map(|&r| {
                productivity_solve(&p, &ProductivityConfig { r_g: r, h: 0.1, a: 0.8 })
                    .unwrap()
                    .design
                    .x_star
            })
            .collect();
        assert!(xs.windows(2).all(|w| w[1] >= w[0]), "{xs:?}");
        assert_eq!(*xs.last().unwrap(), 1.0);
    }

    #[test]
    fn moderate_productivity_point_is_frozen() {
        let r =
            productivity_solve(&figb(), &ProductivityConfig { r_g: 0.5, h: 0.1, a: 0.5 }).unwrap();
        assert!(r.adopted());
        assert!((r.design.x_star - FROZEN_X).abs() < 1e-6, "{}", r.design.x_star);
    }

    const FROZEN_X: f64 = 0.863_893_68;

    #[test]
    fn negative_intensity_is_rejected() {
        let cfg = ProductivityConfig { r_g: 0.5, h: 0.1, a: -0.1 };
        assert!(productivity_solve(&figb(), &cfg).is_err());
    }
}
