//! Full-run invariants of the learners and the harness.

use oco_lab::algorithms::{exp_concave_surrogate, strongly_convex_surrogate};
use oco_lab::geometry::gamma_star;
use oco_lab::harness::{run_experiment, run_single, SeedSpec, SetSpec};
use oco_lab::{
    EnvSpec, Environment, ExperimentConfig, FeasibleSet, Learner, LearnerSpec, NoiseSpec, OnlineLearner,
    Vector,
};

fn learners() -> Vec<LearnerSpec> {
    vec![
        LearnerSpec::Ogd { schedule: Default::default(), lipschitz: None },
        LearnerSpec::Ftl { alpha: None },
        LearnerSpec::Ons { epsilon: 1.0, gamma: None, lipschitz: None },
        LearnerSpec::Universal { lipschitz: None },
        LearnerSpec::Oracle,
    ]
}

fn scenarios() -> Vec<(FeasibleSet, EnvSpec)> {
    let w = FeasibleSet::w_lambda(0.5).unwrap();
    vec![
        (w, EnvSpec::BetaBernoulliGrowth { k: 1.0, l: 0.1 }),
        (w, EnvSpec::CorruptedGrowth { k: 1.0, l: 0.1, lambda: 0.5, c: 20.0 }),
        (
            FeasibleSet::lp_ball(3.0, 1.0, 2).unwrap(),
            EnvSpec::StochasticLinear {
                mean: vec![0.0, -0.1],
                noise: NoiseSpec::Rademacher { scales: vec![1.0, 0.0] },
            },
        ),
        (
            FeasibleSet::centered_box(1, 1.0).unwrap(),
            EnvSpec::AlternatingAdversary { first: -0.5, amplitude: 1.0 },
        ),
        (
            w,
            EnvSpec::StochasticQuadratic {
                theta_mean: vec![0.6, 1.2],
                noise: NoiseSpec::Uniform { half_widths: vec![0.5, 0.5] },
                alpha: 1.0,
            },
        ),
        (
            FeasibleSet::simplex(1.0, 2).unwrap(),
            EnvSpec::StochasticSquaredLinear {
                a_mean: vec![1.0, 2.0],
                noise: NoiseSpec::Uniform { half_widths: vec![0.2, 0.2] },
                b: 0.5,
            },
        ),
    ]
}

/// Plays `horizon` rounds and returns the prediction trace.
fn trace(set: &FeasibleSet, spec: &EnvSpec, learner: &LearnerSpec, horizon: usize, seed: u64) -> Vec<Vector> {
    let mut env = Environment::new(spec, set, horizon, seed).unwrap();
    let mut l = Learner::build(learner, &env, horizon).unwrap();
    let mut xs = Vec::with_capacity(horizon);
    for t in 1..=horizon {
        let x = l.predict();
        let round = env.sample_round(t, &x).unwrap();
        let g = round.observed.gradient(&x).unwrap();
        l.update(&g, &x).unwrap();
        xs.push(x);
    }
    xs
}

#[test]
fn every_prediction_is_feasible() {
    for (set, spec) in scenarios() {
        for learner in learners() {
            if matches!(spec, EnvSpec::AlternatingAdversary { .. }) && learner == LearnerSpec::Oracle {
                continue;
            }
            let horizon = if matches!(spec, EnvSpec::CorruptedGrowth { .. }) { 8000 } else { 300 };
            for x in trace(&set, &spec, &learner, horizon, 11) {
                assert!(set.contains(&x).unwrap(), "{} / {}: {x}", spec.label(), learner.label());
            }
        }
    }
}

#[test]
fn prediction_traces_are_bit_identical_per_seed() {
    for (set, spec) in scenarios().into_iter().take(3) {
        let learner = LearnerSpec::Universal { lipschitz: None };
        let h = if matches!(spec, EnvSpec::CorruptedGrowth { .. }) { 8000 } else { 400 };
        assert_eq!(trace(&set, &spec, &learner, h, 5), trace(&set, &spec, &learner, h, 5));
    }
}

#[test]
fn universal_weights_stay_finite_and_surrogates_vanish_at_the_play() {
    for (set, spec) in scenarios() {
        let horizon = if matches!(spec, EnvSpec::CorruptedGrowth { .. }) { 8000 } else { 500 };
        let mut env = Environment::new(&spec, &set, horizon, 2).unwrap();
        let mut learner = Learner::build(&LearnerSpec::Universal { lipschitz: None }, &env, horizon).unwrap();
        let lip = env.lipschitz_bound();
        for t in 1..=horizon {
            let x = learner.predict();
            let g = env.sample_round(t, &x).unwrap().observed.gradient(&x).unwrap();
            let u = learner.as_universal().unwrap();
            for &eta in u.etas() {
                assert_eq!(exp_concave_surrogate(eta, &g, &x, &x), 0.0);
                assert_eq!(strongly_convex_surrogate(eta, lip, &g, &x, &x), 0.0);
            }
            learner.update(&g, &x).unwrap();
            let lw = learner.as_universal().unwrap().log_weights();
            assert!(lw.iter().all(|w| w.is_finite()), "{}: round {t}", spec.label());
            let top = lw.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let lse = top + lw.iter().map(|w| (w - top).exp()).sum::<f64>().ln();
            assert!(lse.is_finite());
        }
    }
}

#[test]
fn mean_pseudo_regret_is_not_significantly_negative() {
    let cfg = ExperimentConfig {
        set: SetSpec::WLambda { lambda: 0.5 },
        env: EnvSpec::BetaBernoulliGrowth { k: 1.0, l: 0.1 },
        learner: LearnerSpec::Universal { lipschitz: None },
        horizons: vec![256, 1024],
        seeds: SeedSpec { count: 16, base: 0 },
        out: None,
    };
    let curve = run_experiment(&cfg).unwrap();
    for &h in &cfg.horizons {
        let runs: Vec<_> = curve.runs_at(h).collect();
        for idx in 0..runs[0].checkpoints.len() {
            let xs: Vec<f64> = runs.iter().map(|r| r.checkpoints[idx].cum_pseudo_regret.unwrap()).collect();
            let (m, se) = oco_lab::harness::mean_se(&xs);
            assert!(m >= -3.0 * se - 1e-12, "T={h} checkpoint {idx}: {m} < -3*{se}");
        }
    }
}

#[test]
fn sphere_enclosed_runs_satisfy_the_quadratic_lower_bound() {
    let set = FeasibleSet::w_lambda(0.5).unwrap();
    let spec = EnvSpec::BetaBernoulliGrowth { k: 1.0, l: 0.1 };
    for learner in [LearnerSpec::Universal { lipschitz: None }, LearnerSpec::Ogd { schedule: Default::default(), lipschitz: None }] {
        for seed in 0..4 {
            let horizon = 2000;
            let r = run_single(&set, &spec, &learner, horizon, seed).unwrap();
            let g_star = r.mean_gradient_at_opt.unwrap();
            let gamma = gamma_star(&set, &r.comparator, &g_star).unwrap();
            let lhs = r.mean_gap.unwrap();
            assert!(
                lhs >= gamma * r.v_t - 1e-6 * horizon as f64,
                "seed {seed}: {lhs} < {gamma} * {}",
                r.v_t
            );
        }
    }
}

#[test]
fn lp_runs_satisfy_the_uniform_convexity_lower_bound() {
    let spec = EnvSpec::StochasticLinear {
        mean: vec![0.0, -0.1],
        noise: NoiseSpec::Rademacher { scales: vec![1.0, 0.0] },
    };
    for p in [2.0, 3.0, 4.0] {
        let set = FeasibleSet::lp_ball(p, 1.0, 2).unwrap();
        let uc = set.uniform_convexity().unwrap();
        let horizon = 2000;
        let env = Environment::new(&spec, &set, horizon, 0).unwrap();
        let (x_star, g_star) = env.optimal_point().unwrap();
        let xs = trace(&set, &spec, &LearnerSpec::Universal { lipschitz: None }, horizon, 0);
        let gap: f64 = xs.iter().map(|x| g_star.dot(&(*x - x_star))).sum();
        let v_t: f64 = xs.iter().map(|x| x.dist_sq(&x_star)).sum();
        let dual = g_star.norm_p(p / (p - 1.0));
        let t = horizon as f64;
        let bound = uc.kappa / (4.0 * set.xi().powf(uc.q)) * dual * t.powf(1.0 - uc.q / 2.0) * v_t.powf(uc.q / 2.0);
        assert!(gap >= bound - 1e-9 * t, "p={p}: {gap} < {bound}");
    }
}
