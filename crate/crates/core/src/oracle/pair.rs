use rayon::prelude::*;

use super::{golden_section, score};
use crate::error::{Error, Result};

/// Coarse grid spacing per axis.
pub const PAIR_STEP: f64 = 1e-3;

const ZOOM_POINTS: usize = 21;
const ZOOM_SHRINK: f64 = 5.0;

/// Maximize `objective(x, y)` over a box intersected with `feasible`.
#[derive(Debug, Clone, Copy)]
pub struct PairProblem<F, C> {
    pub objective: F,
    pub feasible: C,
    pub x: (f64, f64),
    pub y: (f64, f64),
    pub step: f64,
    pub tol: f64,
}

impl<F, C> PairProblem<F, C>
where
    F: Fn(f64, f64) -> f64 + Sync,
    C: Fn(f64, f64) -> bool + Sync,
{
    pub fn new(objective: F, feasible: C, x: (f64, f64), y: (f64, f64)) -> Self {
        Self { objective, feasible, x, y, step: PAIR_STEP, tol: 1e-10 }
    }

    pub fn with_step(mut self, step: f64) -> Self {
        self.step = step;
        self
    }

    #[inline]
    fn value(&self, x: f64, y: f64) -> f64 {
        if (self.feasible)(x, y) {
            score((self.objective)(x, y))
        } else {
            f64::NEG_INFINITY
        }
    }
}

struct Axis {
    lo: f64,
    hi: f64,
    n: usize,
    step: f64,
}

impl Axis {
    fn new(lo: f64, hi: f64, step: f64) -> Self {
        if hi <= lo {
            return Self { lo, hi: lo, n: 1, step: 0.0 };
        }
        let n = ((hi - lo) / step).ceil() as usize + 1;
        Self { lo, hi, n, step: (hi - lo) / (n - 1) as f64 }
    }

    fn zoom(lo: f64, hi: f64) -> Self {
        if hi > lo {
            Self { lo, hi, n: ZOOM_POINTS, step: (hi - lo) / (ZOOM_POINTS - 1) as f64 }
        } else {
            Self { lo, hi: lo, n: 1, step: 0.0 }
        }
    }

    #[inline]
    fn node(&self, i: usize) -> f64 {
        if i + 1 == self.n {
            self.hi
        } else {
            self.lo + self.step * i as f64
        }
    }
}

/// Best `(i, j, value)` over a grid, lowest `i` then lowest `j` on ties.
fn scan<G>(ax: &Axis, ay: &Axis, g: G, parallel: bool) -> Option<(f64, f64, f64)>
where
    G: Fn(f64, f64) -> f64 + Sync,
{
    let row = |i: usize| {
        let x = ax.node(i);
        let mut best: Option<(usize, f64)> = None;
        for j in 0..ay.n {
            let v = g(x, ay.node(j));
            if v > f64::NEG_INFINITY && best.is_none_or(|(_, b)| v > b) {
                best = Some((j, v));
            }
        }
        best
    };
    let rows: Vec<Option<(usize, f64)>> = if parallel {
        (0..ax.n).into_par_iter().map(row).collect()
    } else {
        (0..ax.n).map(row).collect()
    };
    let mut best: Option<(usize, usize, f64)> = None;
    for (i, r) in rows.into_iter().enumerate() {
        if let Some((j, v)) = r {
            if best.is_none_or(|(_, _, b)| v > b) {
                best = Some((i, j, v));
            }
        }
    }
    best.map(|(i, j, v)| (ax.node(i), ay.node(j), v))
}

/// Coarse grid over the feasible box, then alternating coordinate-wise golden-section
/// passes and shrinking local grids until the window is below `tol`.
///
/// The local grids keep the search moving along constraint ridges, where coordinate
/// moves alone stall.
pub fn maximize_pair<F, C>(p: &PairProblem<F, C>) -> Result<((f64, f64), f64)>
where
    F: Fn(f64, f64) -> f64 + Sync,
    C: Fn(f64, f64) -> bool + Sync,
{
    for (lo, hi) in [p.x, p.y] {
        if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
            return Err(Error::InvalidInterval { lo, hi });
        }
    }
    let ax = Axis::new(p.x.0, p.x.1, p.step);
    let ay = Axis::new(p.y.0, p.y.1, p.step);
    let (mut x, mut y, mut v) =
        scan(&ax, &ay, |x, y| p.value(x, y), true).ok_or(Error::Infeasible)?;

    let mut half = p.step.max(ax.step).max(ay.step);
    while half > p.tol {
        let (xl, xh) = ((x - half).max(p.x.0), (x + half).min(p.x.1));
        if xh > xl {
            let (gx, gv) = golden_section(&|t| p.value(t, y), xl, xh, p.tol);
            if gv > v {
                (x, v) = (gx, gv);
            }
        }
        let (yl, yh) = ((y - half).max(p.y.0), (y + half).min(p.y.1));
        if yh > yl {
            let (gy, gv) = golden_section(&|t| p.value(x, t), yl, yh, p.tol);
            if gv > v {
                (y, v) = (gy, gv);
            }
        }
        let zx = Axis::zoom((x - half).max(p.x.0), (x + half).min(p.x.1));
        let zy = Axis::zoom((y - half).max(p.y.0), (y + half).min(p.y.1));
        if let Some((zx_best, zy_best, zv)) = scan(&zx, &zy, |x, y| p.value(x, y), false) {
            if zv > v {
                (x, y, v) = (zx_best, zy_best, zv);
            }
        }
        half /= ZOOM_SHRINK;
    }
    Ok(((x, y), v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn separable_objective_splits_into_coordinates() {
        let p = PairProblem::new(
            |x: f64, y: f64| -(x - 0.27).powi(2) - 2.0 * (y - 0.81).powi(2),
            |_, _| true,
            (0.0, 1.0),
            (0.0, 1.0),
        );
        let ((x, y), _) = maximize_pair(&p).unwrap();
        assert!((x - 0.27).abs() < 1e-7 && (y - 0.81).abs() < 1e-7, "{x} {y}");
    }

    #[test]
    fn ridge_optimum_sits_on_the_constraint() {
        let p = PairProblem::new(
            |x: f64, y: f64| -(x - 0.8).powi(2) - (y - 0.5).powi(2),
            |x, y| x <= y,
            (0.0, 1.0),
            (0.0, 1.0),
        );
        let ((x, y), _) = maximize_pair(&p).unwrap();
        assert!((x - 0.65).abs() < 1e-7 && (y - 0.65).abs() < 1e-7, "{x} {y}");
        assert!(x <= y);
    }

    #[test]
    fn empty_feasible_set_is_reported() {
        let p = PairProblem::new(|x: f64, y: f64| x + y, |_, _| false, (0.0, 1.0), (0.0, 1.0));
        assert_eq!(maximize_pair(&p), Err(Error::Infeasible));
    }

    #[test]
    fn corner_optimum_is_exact() {
        let p = PairProblem::new(|x: f64, y: f64| x + y, |_, _| true, (0.0, 1.0), (0.0, 1.0));
        assert_eq!(maximize_pair(&p).unwrap().0, (1.0, 1.0));
    }

    #[test]
    fn ties_resolve_to_lowest_coordinates() {
        let p = PairProblem::new(|_: f64, _: f64| 0.0, |_, _| true, (0.2, 1.0), (0.3, 1.0));
        assert_eq!(maximize_pair(&p).unwrap().0, (0.2, 0.3));
    }
}
