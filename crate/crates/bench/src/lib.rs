//! Parameter fixtures shared by the benchmarks.

use hierarchy_core::ModelParams;

/// Worker-automation parameters with a reachable collapse region.
pub fn worker_auto_params() -> ModelParams {
    ModelParams::full(0.8, 0.25, 0.8, 0.5, 0.8)
}

pub fn worker_aug_params() -> ModelParams {
    ModelParams::new(0.7, 0.3, 0.7).with_validation(0.2)
}

pub fn expert_auto_params() -> ModelParams {
    ModelParams::new(0.8, 0.25, 0.8).with_validation(0.3)
}

pub fn expert_aug_params() -> ModelParams {
    ModelParams::new(0.7, 0.4, 0.7)
}
