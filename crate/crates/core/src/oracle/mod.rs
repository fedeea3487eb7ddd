//! Brute-force numeric optimizers, independent of the closed forms, and the
//! verification harness that pits the two against each other.

mod pair;
mod verify;

pub use pair::{maximize_pair, PairProblem, PAIR_STEP};
pub use verify::{
    oracle_design, verify_mode, FixedSampler, InstanceSampler, UniformSampler, VerificationReport,
    PROFIT_TOLERANCE, X_TOLERANCE,
};

use crate::error::{Error, Result};

/// Default number of coarse grid points for scalar searches.
pub const SCALAR_GRID: usize = 10_001;

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Maximize `objective` over `[lo, hi]`.
#[derive(Debug, Clone, Copy)]
pub struct ScalarProblem<F> {
    pub objective: F,
    pub lo: f64,
    pub hi: f64,
    /// Target width of the final golden-section bracket.
    pub tol: f64,
    /// Coarse grid points, endpoints included.
    pub grid: usize,
}

impl<F: Fn(f64) -> f64> ScalarProblem<F> {
    pub fn new(objective: F, lo: f64, hi: f64) -> Self {
        Self { objective, lo, hi, tol: 1e-12, grid: SCALAR_GRID }
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_grid(mut self, grid: usize) -> Self {
        self.grid = grid;
        self
    }
}

/// NaN compares below everything.
#[inline]
pub(crate) fn score(v: f64) -> f64 {
    if v.is_nan() {
        f64::NEG_INFINITY
    } else {
        v
    }
}

/// Golden-section search on `[a, b]`, returning the best point evaluated, bracket ends included.
/// Ties keep the earlier (leftmost) point.
pub fn golden_section<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> (f64, f64) {
    let (mut a, mut b) = (a, b);
    let (fa, fb) = (score(f(a)), score(f(b)));
    let mut best = if fb > fa { (b, fb) } else { (a, fa) };
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = score(f(c));
    let mut fd = score(f(d));
    let tol = tol.max(f64::EPSILON * (a.abs() + b.abs()));
    while b - a > tol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = score(f(c));
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = score(f(d));
        }
    }
    for (x, v) in [(c, fc), (d, fd)] {
        if v > best.1 || (v == best.1 && x < best.0) {
            best = (x, v);
        }
    }
    best
}

/// Grid scan, then golden-section refinement inside the neighbouring cells of the best node.
///
/// The lowest grid index wins ties, and an endpoint is returned exactly when it is optimal.
pub fn maximize_scalar<F: Fn(f64) -> f64>(p: &ScalarProblem<F>) -> Result<(f64, f64)> {
    let (lo, hi) = (p.lo, p.hi);
    if !(lo.is_finite() && hi.is_finite() && lo < hi) || p.grid < 2 {
        return Err(Error::InvalidInterval { lo, hi });
    }
    let n = p.grid;
    let step = (hi - lo) / (n - 1) as f64;
    let node = |i: usize| if i == n - 1 { hi } else { lo + step * i as f64 };
    let f = &p.objective;

    let mut best_i = 0;
    let mut best_v = score(f(lo));
    for i in 1..n {
        let v = score(f(node(i)));
        if v > best_v {
            best_i = i;
            best_v = v;
        }
    }
    let a = node(best_i.saturating_sub(1));
    let b = node((best_i + 1).min(n - 1));
    let (gx, gv) = golden_section(f, a, b, p.tol);

    let mut best = (node(best_i), best_v);
    if gv > best.1 {
        best = (gx, gv);
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_form::profit_unchecked;
    use crate::model::{DeploymentConfig, ModelParams};
    use proptest::prelude::*;

    #[test]
    fn symmetric_quadratic_peak() {
        let (x, v) = maximize_scalar(
            &ScalarProblem::new(|x: f64| -(x - 0.3).powi(2), 0.0, 1.0).with_tol(1e-8),
        )
        .unwrap();
        assert!((x - 0.3).abs() < 1e-8);
        assert!(v <= 0.0 && v > -1e-15);
    }

    #[test]
    fn baseline_profit_peak() {
        let p = ModelParams::new(0.8, 0.25, 0.8);
        let f = |x| profit_unchecked(&p, &DeploymentConfig::Baseline, x);
        let (x, _) = maximize_scalar(&ScalarProblem::new(f, 0.0, 1.0)).unwrap();
        assert!((x - 0.65).abs() < 1e-7, "{x}");
    }

    #[test]
    fn increasing_objective_returns_upper_endpoint_exactly() {
        let (x, v) = maximize_scalar(&ScalarProblem::new(|x: f64| x.exp(), 0.0, 1.0)).unwrap();
        assert_eq!(x, 1.0);
        assert_eq!(v, 1f64.exp());
        let (x, _) = maximize_scalar(&ScalarProblem::new(|x: f64| -x, 0.2, 0.7)).unwrap();
        assert_eq!(x, 0.2);
    }

    #[test]
    fn constant_objective_prefers_lowest_point() {
        let (x, _) = maximize_scalar(&ScalarProblem::new(|_| 1.0, 0.0, 1.0)).unwrap();
        assert_eq!(x, 0.0);
    }

    #[test]
    fn invalid_intervals_are_rejected() {
        let f = |x: f64| x;
        assert!(maximize_scalar(&ScalarProblem::new(f, 1.0, 1.0)).is_err());
        assert!(maximize_scalar(&ScalarProblem::new(f, 1.0, 0.0)).is_err());
        assert!(maximize_scalar(&ScalarProblem::new(f, 0.0, f64::NAN)).is_err());
    }

    #[test]
    fn kinked_objective_finds_the_kink() {
        let f = |x: f64| -(x - 0.41234567).abs();
        let (x, _) = maximize_scalar(&ScalarProblem::new(f, 0.0, 1.0)).unwrap();
        assert!((x - 0.41234567).abs() < 1e-10);
    }

    proptest! {
        #[test]
        fn concave_optimum_has_vanishing_slope(a in 0.1f64..5.0, c in -0.5f64..1.5, s in -1.0f64..1.0) {
            let f = |x: f64| -a * (x - c).powi(2) + s * x.powi(3) / 10.0;
            let (x, _) = maximize_scalar(&ScalarProblem::new(f, 0.0, 1.0)).unwrap();
            if x > 1e-9 && x < 1.0 - 1e-9 {
                let e = 1e-6;
                let slope = (f(x + e) - f(x - e)) / (2.0 * e);
                prop_assert!(slope.abs() <= 1e-5, "slope {} at {}", slope, x);
            }
        }

        #[test]
        fn denser_grid_never_loses_value(a in 0.1f64..5.0, c in 0.0f64..1.0, b in 0.0f64..3.0) {
            let f = |x: f64| -a * (x - c).powi(2) + b * (7.0 * x).sin() / 10.0;
            let (_, v1) = maximize_scalar(&ScalarProblem::new(f, 0.0, 1.0)).unwrap();
            let (_, v2) = maximize_scalar(&ScalarProblem::new(f, 0.0, 1.0).with_grid(2 * SCALAR_GRID - 1)).unwrap();
            prop_assert!(v2 >= v1 - 1e-10);
        }
    }
}
