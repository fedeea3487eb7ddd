use thiserror::Error;

/// A single violated primitive inequality. Every variant echoes the values involved.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum FeasibilityError {
    #[error("{name} = {value} is not a finite number")]
    NonFinite { name: &'static str, value: f64 },

    #[error("{name} = {value} must be > 0")]
    NonPositive { name: &'static str, value: f64 },

    #[error("t_c = {t_c} >= t_c_bar = 2k/(k+2w) = {bound}")]
    CommunicationCostTooHigh { t_c: f64, bound: f64 },

    #[error("{name} = {value} must lie in the open interval (0, 1)")]
    OutsideUnitInterval { name: &'static str, value: f64 },

    #[error("t_v + t_r = {t_v} + {t_r} = {sum} <= 1")]
    OversightTooCheap { t_v: f64, t_r: f64, sum: f64 },

    #[error("{name} = {value} must be >= 0")]
    Negative { name: &'static str, value: f64 },

    #[error("implied hallucination rate h = b(1-r) = {h} must lie in (0, 1)")]
    ImpliedHallucination { h: f64 },

    #[error("x = {x} lies outside the feasible interval [{lower}, {upper}]")]
    OperatingPoint { x: f64, lower: f64, upper: f64 },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Feasibility(#[from] FeasibilityError),

    #[error("x = {x} lies outside the feasible interval [{lower}, 1]")]
    Domain { x: f64, lower: f64 },

    #[error("invalid search interval [{lo}, {hi}]")]
    InvalidInterval { lo: f64, hi: f64 },

    #[error("no grid point satisfies the feasibility constraint")]
    Infeasible,

    #[error("cost coefficient c_r = {c_r} must exceed the lower bound {bound}")]
    CoefficientTooSmall { c_r: f64, bound: f64 },

    #[error("nested search did not converge: {0}")]
    Convergence(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
