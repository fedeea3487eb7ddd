use hierarchy_core::closed_form::{profit_unchecked, worker_aug_solve, worker_auto_solve};
use hierarchy_core::simulate::{analytic_targets, run_simulation, SimConfig, SimMode};
use hierarchy_core::sweep::{fmt_num, Axis, Model, Scenario, SweepSpec};
use hierarchy_core::{solve, validate_params, DeploymentConfig, Mode, ModelParams, Span};
use proptest::prelude::*;
use proptest::strategy::ValueTree;

const DEPLOYMENTS: [Mode; 4] =
    [Mode::WorkerAuto, Mode::WorkerAug, Mode::ExpertAuto, Mode::ExpertAug];

/// Feasible primitives: `t_c` below its ceiling and `t_v + t_r > 1`.
fn params() -> impl Strategy<Value = ModelParams> {
    (0.2f64..2.0, 0.05f64..1.0, 0.02f64..0.98, 0.02f64..0.98, 0.0f64..1.0).prop_map(
        |(k, w, f, t_v, g)| {
            let t_c = f * 2.0 * k / (k + 2.0 * w);
            ModelParams::full(k, w, t_c, t_v, 1.0 - t_v + g * t_v)
        },
    )
}

fn instance() -> impl Strategy<Value = (ModelParams, DeploymentConfig)> {
    (params(), prop::sample::select(DEPLOYMENTS.to_vec()), 0.01f64..0.99, 0.01f64..0.99)
        .prop_map(|(p, m, r, h)| (p, DeploymentConfig::new(m, r, h)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn validation_is_idempotent((p, c) in instance()) {
        if let Ok(v) = validate_params(&p, c.mode()) {
            prop_assert_eq!(validate_params(&v, c.mode()), Ok(v));
        }
    }

    #[test]
    fn adopted_optimum_beats_a_dense_grid((p, c) in instance()) {
        let Ok(s) = solve(&p, &c) else { return Ok(()) };
        if !s.adopted() {
            return Ok(());
        }
        let lo = c.lower_bound();
        let best = s.design.profit;
        for i in 0..=10_000 {
            let x = lo + (1.0 - lo) * i as f64 / 10_000.0;
            prop_assert!(profit_unchecked(&p, &c, x) <= best + 1e-9, "x={} beats x*={}", x, s.design.x_star);
        }
    }

    #[test]
    fn adoption_follows_the_profit_margin((p, c) in instance()) {
        let Ok(s) = solve(&p, &c) else { return Ok(()) };
        let a = s.adoption.unwrap();
        prop_assert_eq!(a.adopt, a.profit_with - a.profit_without > 1e-12);
    }

    #[test]
    fn span_times_experts_is_workers((p, c) in instance()) {
        let Ok(s) = solve(&p, &c) else { return Ok(()) };
        let d = s.design;
        match d.span {
            Span::Finite(span) => prop_assert!((span * d.expert_demand - d.worker_demand).abs() <= 1e-12),
            Span::Collapsed => prop_assert_eq!(d.expert_demand, 0.0),
        }
    }

    #[test]
    fn skill_moves_in_the_mode_direction((p, c) in instance()) {
        let Ok(s) = solve(&p, &c) else { return Ok(()) };
        if !s.adopted() {
            return Ok(());
        }
        let x0 = solve(&p, &DeploymentConfig::Baseline).unwrap().design.x_star;
        let x = s.design.x_star;
        if c.mode() == Mode::WorkerAuto {
            prop_assert!(x > x0 + 1e-12);
        } else {
            prop_assert!(x < x0 - 1e-12);
        }
    }

    #[test]
    fn trivial_tools_reproduce_the_baseline(p in params(), r in 0.01f64..0.99, h in 0.01f64..0.99, x in 0.0f64..1.0) {
        let base = profit_unchecked(&p, &DeploymentConfig::Baseline, x);
        let same = profit_unchecked(&p, &DeploymentConfig::ExpertAug { r, h: r }, x);
        prop_assert!((same - base).abs() <= 1e-12);
        for c in [DeploymentConfig::WorkerAuto { r: 1e-13, h }, DeploymentConfig::WorkerAug { r: 1e-13, h }] {
            prop_assert!((profit_unchecked(&p, &c, x) - base).abs() <= 1e-9);
        }
    }

    #[test]
    fn knowledge_is_monotone_in_capability(p in params(), h in 0.01f64..0.99) {
        let grid: Vec<f64> = (1..=100).map(|i| i as f64 / 101.0).collect();
        let auto: Vec<_> = grid.iter().filter_map(|&r| worker_auto_solve(&p, r, h).ok()).filter(|s| s.adopted()).map(|s| s.design.x_star).collect();
        prop_assert!(auto.windows(2).all(|w| w[1] >= w[0] - 1e-12));
        let aug: Vec<_> = grid.iter().filter_map(|&r| worker_aug_solve(&p, r, h).ok()).filter(|s| s.adopted()).map(|s| s.design.x_star).collect();
        prop_assert!(aug.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn sweep_grid_is_strictly_increasing(lo in 0.01f64..0.5, width in 0.01f64..0.49, steps in 2usize..500) {
        let scenario = Scenario::new(Model::Standard, Mode::WorkerAug, ModelParams::new(0.7, 0.3, 0.7).with_validation(0.2));
        let spec = SweepSpec { scenario, axis: Axis::R, lo, hi: lo + width, steps };
        let g = spec.grid();
        prop_assert_eq!(g.len(), steps);
        prop_assert_eq!((g[0], g[steps - 1]), (lo, lo + width));
        prop_assert!(g.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn formatted_numbers_keep_twelve_digits(v in prop::num::f64::NORMAL) {
        let back: f64 = fmt_num(v).parse().unwrap();
        prop_assert!((back - v).abs() <= 5e-12 * v.abs());
        prop_assert_eq!(fmt_num(back), fmt_num(v));
    }
}

#[test]
fn simulation_tracks_analytic_times() {
    let mut runner = proptest::test_runner::TestRunner::deterministic();
    let strategy = instance();
    let mut checked = 0;
    while checked < 20 {
        let (p, c) = strategy.new_tree(&mut runner).unwrap().current();
        let Ok(s) = solve(&p, &c) else { continue };
        let mode = if s.adopted() { c } else { DeploymentConfig::Baseline };
        let cfg = SimConfig {
            params: p,
            mode: SimMode::Deployment(mode),
            design: s.design,
            n_tasks: 200_000,
            seed: checked,
        };
        let report = run_simulation(&cfg).unwrap();
        assert_eq!(run_simulation(&cfg).unwrap(), report);
        let t = analytic_targets(&cfg);
        for (est, target) in [
            (report.worker_time, t.worker_time),
            (report.expert_time, t.expert_time),
            (report.profit, t.profit),
        ] {
            assert_eq!(
                est.covers(target, 4.0),
                Some(true),
                "{est:?} vs {target} at {p:?} {mode:?}"
            );
        }
        assert_eq!(report.output.mean, 1.0);
        checked += 1;
    }
}
