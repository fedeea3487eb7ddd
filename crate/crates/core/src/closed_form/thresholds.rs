//! Closed-form regime thresholds. Raw values are returned by the scalar functions;
//! the `*_bundle` constructors gate each one to its documented domain.

use crate::model::{
    ExpertAugThresholds, ExpertAutoThresholds, ModelParams, WorkerAugThresholds,
    WorkerAutoThresholds,
};

fn inside(v: f64, lo: f64, hi: f64) -> Option<f64> {
    (v.is_finite() && v > lo && v < hi).then_some(v)
}

/// Worker automation is adopted iff `h` is below this.
pub fn worker_auto_adoption_ceiling(p: &ModelParams, r_t: f64) -> f64 {
    let (k, w, t_c, t_v, t_r) = (p.k, p.w, p.t_c, p.t_v, p.t_r);
    if r_t <= p.baseline_threshold() {
        return (1.0 - t_v) / t_r;
    }
    let kw = p.kw();
    let q = k * r_t * r_t + 2.0 * w;
    let num = -kw * kw * t_c * t_c + 4.0 * k * r_t * kw * t_c
        - 4.0 * k * r_t * (k * r_t - (1.0 - t_v) * q);
    num / (4.0 * k * r_t * t_r * q)
}

/// Collapse needs `h` below this.
pub fn worker_auto_collapse_hallucination(p: &ModelParams) -> f64 {
    (p.kw() * p.t_c - 2.0 * p.k * p.t_v) / (2.0 * p.k * p.t_r)
}

/// Collapse needs `r_t` at or above this. Infinite when the AI saves no worker time.
pub fn worker_auto_collapse_capability(p: &ModelParams, h: f64) -> f64 {
    let saving = 1.0 - p.t_v - h * p.t_r;
    if saving <= 0.0 {
        return f64::INFINITY;
    }
    (2.0 * p.k - p.kw() * p.t_c) / (2.0 * p.k * saving)
}

/// Whether `(r_t, h)` sits in the single-layer regime.
pub fn worker_auto_collapses(p: &ModelParams, r_t: f64, h: f64) -> bool {
    h < worker_auto_collapse_hallucination(p) && r_t >= worker_auto_collapse_capability(p, h)
}

/// Span turning point along `r_t`; `None` when the span only rises with capability.
pub fn worker_auto_span_turn_capability(p: &ModelParams, h: f64) -> Option<f64> {
    let (k, t_c, t_v, t_r) = (p.k, p.t_c, p.t_v, p.t_r);
    let kw = p.kw();
    if t_c >= k / kw {
        return None;
    }
    let saving = 1.0 - t_v - h * t_r;
    if saving <= 0.0 {
        return None;
    }
    let r1a = (k - kw * t_c) / (k * saving);
    let h1b = (2.0 * t_c * (1.0 - t_v) * kw - k) / (2.0 * t_c * t_r * kw);
    let disc = 1.0 - 4.0 * saving * p.baseline_threshold();
    let r1 = if h <= h1b || disc < 0.0 {
        r1a
    } else {
        let r2a = (1.0 - disc.sqrt()) / (2.0 * saving);
        r1a.min(r2a)
    };
    inside(r1, 0.0, 1.0)
}

/// Span turning point along `h`, raw.
pub fn worker_auto_span_turn_hallucination_raw(p: &ModelParams, r_t: f64) -> f64 {
    let (k, t_c, t_v, t_r) = (p.k, p.t_c, p.t_v, p.t_r);
    let kw = p.kw();
    let h2b = (kw * t_c - k + r_t * k * (1.0 - t_v)) / (k * t_r * r_t);
    if r_t <= p.baseline_threshold() {
        h2b
    } else {
        let h1a = (2.0 * k * r_t * r_t * (1.0 - t_v) + kw * t_c - 2.0 * k * r_t)
            / (2.0 * k * t_r * r_t * r_t);
        h2b.min(h1a)
    }
}

pub fn worker_auto_bundle(p: &ModelParams, r_t: f64, h: f64) -> WorkerAutoThresholds {
    let ceiling = worker_auto_adoption_ceiling(p, r_t);
    WorkerAutoThresholds {
        adoption_ceiling: ceiling,
        collapse_hallucination: inside(worker_auto_collapse_hallucination(p), 0.0, 1.0),
        collapse_capability: inside(worker_auto_collapse_capability(p, h), 0.0, 1.0),
        span_turn_capability: worker_auto_span_turn_capability(p, h),
        span_turn_hallucination: inside(
            worker_auto_span_turn_hallucination_raw(p, r_t),
            0.0,
            ceiling.min(1.0),
        ),
    }
}

/// Augmentation (worker or expert automation) is adopted iff `h` is below `1 - t_v/t_c`.
pub fn validation_ceiling(p: &ModelParams) -> f64 {
    1.0 - p.t_v / p.t_c
}

pub fn worker_aug_span_turn_capability_raw(p: &ModelParams, h: f64) -> f64 {
    let kw = p.kw();
    (kw * p.t_c - p.k) / (kw * (p.t_c - p.t_v - h * p.t_c))
}

pub fn worker_aug_span_turn_hallucination_raw(p: &ModelParams, r_g: f64) -> f64 {
    let kw = p.kw();
    (r_g * kw * (p.t_c - p.t_v) - kw * p.t_c + p.k) / (r_g * kw * p.t_c)
}

pub fn worker_aug_bundle(p: &ModelParams, r_g: f64, h: f64) -> WorkerAugThresholds {
    let ceiling = validation_ceiling(p);
    WorkerAugThresholds {
        adoption_ceiling: ceiling,
        span_turn_capability: inside(worker_aug_span_turn_capability_raw(p, h), 0.0, 1.0),
        span_turn_hallucination: inside(
            worker_aug_span_turn_hallucination_raw(p, r_g),
            0.0,
            ceiling.min(1.0),
        ),
    }
}

/// Expert automation needs `r_e` strictly above this.
pub fn expert_auto_capability_floor(p: &ModelParams, h: f64) -> f64 {
    p.kw() * (h * p.t_c + p.t_c + p.t_v) / (4.0 * p.k)
}

pub fn expert_auto_span_turn_hallucination_raw(p: &ModelParams, r_e: f64) -> f64 {
    let kw = p.kw();
    (p.k * r_e - kw * p.t_v) / (kw * p.t_c)
}

pub fn expert_auto_bundle(p: &ModelParams, r_e: f64, h: f64) -> ExpertAutoThresholds {
    let ceiling = validation_ceiling(p);
    ExpertAutoThresholds {
        adoption_ceiling: ceiling,
        capability_floor: expert_auto_capability_floor(p, h),
        span_turn_hallucination: inside(
            expert_auto_span_turn_hallucination_raw(p, r_e),
            0.0,
            ceiling.min(1.0),
        ),
    }
}

pub fn expert_aug_span_turn_capability_raw(p: &ModelParams, h: f64) -> f64 {
    let kw = p.kw();
    (p.t_c * kw * (1.0 + h) - p.k) / (p.t_c * kw)
}

pub fn expert_aug_span_turn_hallucination_raw(p: &ModelParams, r_u: f64) -> f64 {
    let kw = p.kw();
    (p.k - p.t_c * kw * (1.0 - r_u)) / (p.t_c * kw)
}

/// The hallucination ceiling for expert augmentation is the capability itself.
pub fn expert_aug_bundle(p: &ModelParams, r_u: f64, h: f64) -> ExpertAugThresholds {
    ExpertAugThresholds {
        adoption_ceiling: r_u,
        span_turn_capability: inside(expert_aug_span_turn_capability_raw(p, h), 0.0, 1.0),
        span_turn_hallucination: inside(expert_aug_span_turn_hallucination_raw(p, r_u), 0.0, r_u),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig2() -> ModelParams {
        ModelParams::full(0.8, 0.25, 0.8, 0.5, 0.8)
    }

    fn fig3() -> ModelParams {
        ModelParams::full(0.8, 0.25, 0.5, 0.4, 0.8)
    }

    #[test]
    fn collapse_thresholds_at_figure_two_params() {
        let p = fig2();
        assert!((worker_auto_collapse_hallucination(&p) - 0.1875).abs() < 1e-15);
        assert!((worker_auto_collapse_capability(&p, 0.1) - 0.35 / 0.42).abs() < 1e-15);
        assert!(worker_auto_collapses(&p, 0.9, 0.1));
        assert!(!worker_auto_collapses(&p, 0.8, 0.1));
        assert!(!worker_auto_collapses(&p, 0.9, 0.2));
    }

    #[test]
    fn adoption_ceiling_branches_agree_at_the_baseline_threshold() {
        let p = fig2();
        let x0 = p.baseline_threshold();
        let lo = worker_auto_adoption_ceiling(&p, x0);
        let hi = worker_auto_adoption_ceiling(&p, x0 + 1e-9);
        assert!((lo - hi).abs() < 1e-7, "{lo} vs {hi}");
    }

    #[test]
    fn turning_points_at_figure_three_params() {
        let p = fig3();
        let r1 = worker_auto_span_turn_capability(&p, 0.1).unwrap();
        assert!((r1 - 0.15 / 0.416).abs() < 1e-12);
        let h1 = worker_auto_bundle(&p, 0.4, 0.1).span_turn_hallucination.unwrap();
        assert!((h1 - 0.042 / 0.256).abs() < 1e-12);
    }

    #[test]
    fn span_rises_monotonically_when_communication_is_expensive() {
        assert_eq!(worker_auto_span_turn_capability(&fig2(), 0.1), None);
    }

    #[test]
    fn augmentation_turning_points_at_appendix_params() {
        let p = ModelParams::new(0.7, 0.3, 0.7).with_validation(0.2);
        let b = worker_aug_bundle(&p, 0.5, 0.2);
        assert!((b.adoption_ceiling - 5.0 / 7.0).abs() < 1e-15);
        assert!((b.span_turn_capability.unwrap() - 0.21 / 0.468).abs() < 1e-12);
        assert!((b.span_turn_hallucination.unwrap() - 0.115 / 0.455).abs() < 1e-12);

        let q = ModelParams::new(0.7, 0.4, 0.7);
        let e = expert_aug_bundle(&q, 0.5, 0.2);
        assert!((e.span_turn_capability.unwrap() - 0.8 / 1.5).abs() < 1e-12);
        assert!((e.span_turn_hallucination.unwrap() - 0.25 / 1.5).abs() < 1e-12);
    }

    #[test]
    fn expert_auto_floor_and_turn() {
        let p = ModelParams::new(0.8, 0.25, 0.8).with_validation(0.3);
        let b = expert_auto_bundle(&p, 0.8, 0.1);
        assert!((b.capability_floor - 0.479375).abs() < 1e-15);
        assert!((b.adoption_ceiling - 0.625).abs() < 1e-15);
        assert!((b.span_turn_hallucination.unwrap() - 0.25 / 1.04).abs() < 1e-12);
    }
}
