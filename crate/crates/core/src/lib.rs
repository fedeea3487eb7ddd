//! Optimal design of two-layer knowledge hierarchies when a firm deploys a generative-AI tool
//! at the worker or expert layer, as an automator or as an augmenter.
//!
//! [`closed_form`] holds the exact solutions, [`oracle`] the independent numeric searches that
//! check them, [`extensions`] the variants that are solved partly or wholly numerically,
//! [`simulate`] a task-level Monte Carlo replay, and [`sweep`] the CSV sweeps and figure datasets.

pub mod closed_form;
pub mod error;
pub mod extensions;
pub mod model;
pub mod oracle;
pub mod rng;
pub mod simulate;
pub mod sweep;

pub use closed_form::{profit_eval, solve};
pub use error::{Error, FeasibilityError, Result};
pub use model::{
    validate_params, AdoptionDecision, AdoptionRule, DeploymentConfig, Mode, ModelParams,
    OrgDesign, Regime, SolveResult, Span, ThresholdBundle,
};
