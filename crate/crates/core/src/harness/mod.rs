//! The simulation loop, regret bookkeeping and aggregation across seeds.

mod stats;

pub use stats::{
    bernstein_check, bound61_ratio, fit_growth_exponent, hindsight_minimizer, polar_grid,
    BernsteinReport, GrowthFit,
};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algorithms::{Learner, LearnerSpec, OnlineLearner};
use crate::environments::{EnvSpec, Environment};
use crate::geometry::FeasibleSet;
use crate::linalg::Vector;
use crate::losses::LossAccumulator;
use crate::{OcoError, Result};

/// Serializable feasible-set description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params", rename_all = "snake_case", deny_unknown_fields)]
pub enum SetSpec {
    EuclideanBall { center: Vec<f64>, radius: f64 },
    AxisEllipsoid { semi_axes: Vec<f64> },
    /// `W_λ`, the ellipsoid with semi-axes `(1, λ)`.
    WLambda { lambda: f64 },
    LpBall { p: f64, radius: f64, dim: usize },
    Box { lo: Vec<f64>, hi: Vec<f64> },
    Simplex { scale: f64, dim: usize },
}

impl SetSpec {
    pub fn build(&self) -> Result<FeasibleSet> {
        let vec = |v: &[f64]| Vector::try_from_slice(v);
        match self {
            SetSpec::EuclideanBall { center, radius } => FeasibleSet::ball(vec(center)?, *radius),
            SetSpec::AxisEllipsoid { semi_axes } => FeasibleSet::ellipsoid(vec(semi_axes)?),
            SetSpec::WLambda { lambda } => FeasibleSet::w_lambda(*lambda),
            SetSpec::LpBall { p, radius, dim } => FeasibleSet::lp_ball(*p, *radius, *dim),
            SetSpec::Box { lo, hi } => FeasibleSet::cuboid(vec(lo)?, vec(hi)?),
            SetSpec::Simplex { scale, dim } => FeasibleSet::simplex(*scale, *dim),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeedSpec {
    pub count: usize,
    #[serde(default)]
    pub base: u64,
}

impl Default for SeedSpec {
    fn default() -> Self {
        Self { count: 32, base: 0 }
    }
}

impl SeedSpec {
    pub fn seeds(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.count as u64).map(move |i| self.base + i)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutSpec {
    pub dir: String,
}

/// One experiment: a set, an environment, a learner, horizons and seeds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub set: SetSpec,
    pub env: EnvSpec,
    pub learner: LearnerSpec,
    pub horizons: Vec<usize>,
    #[serde(default)]
    pub seeds: SeedSpec,
    #[serde(default)]
    pub out: Option<OutSpec>,
}

impl ExperimentConfig {
    /// Structural checks plus a dry construction of every horizon's environment.
    pub fn validate(&self) -> Result<FeasibleSet> {
        let set = self
            .set
            .build()
            .map_err(|e| OcoError::Config(format!("set: {e}")))?;
        if self.horizons.is_empty() {
            return Err(OcoError::Config("horizons must not be empty".into()));
        }
        if self.horizons[0] == 0 || self.horizons.windows(2).any(|w| w[0] >= w[1]) {
            return Err(OcoError::Config(format!(
                "horizons must be positive and strictly increasing, got {:?}",
                self.horizons
            )));
        }
        if self.seeds.count == 0 {
            return Err(OcoError::Config("seed count must be at least 1".into()));
        }
        for &t in &self.horizons {
            let env = Environment::new(&self.env, &set, t, self.seeds.base).map_err(config_error)?;
            Learner::build(&self.learner, &env, t).map_err(config_error)?;
        }
        Ok(set)
    }
}

fn config_error(e: OcoError) -> OcoError {
    match e {
        OcoError::Config(_) => e,
        other => OcoError::Config(other.to_string()),
    }
}

/// Dyadic rounds `1, 2, 4, …` up to `horizon`, plus `horizon` itself.
pub fn checkpoints(horizon: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut t = 1usize;
    while t < horizon {
        out.push(t);
        t *= 2;
    }
    out.push(horizon);
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Checkpoint {
    pub t: usize,
    pub cum_pseudo_regret: Option<f64>,
    pub cum_realized_regret: f64,
    /// `||x_t − x★||²`, against the hindsight minimizer when there is no mean.
    pub dist_to_opt_sq: f64,
}

/// Everything recorded from one `(horizon, seed)` run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub horizon: usize,
    pub seed: u64,
    pub pseudo_regret: Option<f64>,
    pub realized_regret: f64,
    /// `Σ<g_t, x_t − x★>` with observed gradients.
    pub linearized_regret: f64,
    /// `Σ<∇f°(x★), x_t − x★>`; absent without a mean function.
    pub mean_gap: Option<f64>,
    /// `V_T = Σ||x_t − x★||²`.
    pub v_t: f64,
    pub comparator: Vector,
    pub mean_gradient_at_opt: Option<Vector>,
    pub lipschitz: f64,
    pub diameter: f64,
    pub bound61_ratio: f64,
    pub corruption_used: f64,
    pub checkpoints: Vec<Checkpoint>,
}

/// Per-horizon aggregate across seeds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HorizonSummary {
    pub horizon: usize,
    pub seeds: usize,
    pub mean_pseudo_regret: Option<f64>,
    pub se_pseudo_regret: Option<f64>,
    pub mean_realized_regret: f64,
    pub se_realized_regret: f64,
    /// Largest ratio over seeds.
    pub bound61_ratio: f64,
}

impl HorizonSummary {
    /// The primary metric: pseudo-regret when a mean exists, else realized.
    pub fn primary(&self) -> (f64, f64) {
        match (self.mean_pseudo_regret, self.se_pseudo_regret) {
            (Some(m), Some(s)) => (m, s),
            _ => (self.mean_realized_regret, self.se_realized_regret),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegretCurve {
    pub env: String,
    pub set: String,
    pub learner: String,
    pub horizons: Vec<HorizonSummary>,
    /// Ordered by horizon, then seed.
    pub runs: Vec<RunResult>,
}

impl RegretCurve {
    pub fn fit(&self) -> Result<GrowthFit> {
        let pts: Vec<(f64, f64)> = self
            .horizons
            .iter()
            .map(|h| (h.horizon as f64, h.primary().0))
            .collect();
        fit_growth_exponent(&pts)
    }

    pub fn summary(&self, horizon: usize) -> Option<&HorizonSummary> {
        self.horizons.iter().find(|h| h.horizon == horizon)
    }

    pub fn runs_at(&self, horizon: usize) -> impl Iterator<Item = &RunResult> {
        self.runs.iter().filter(move |r| r.horizon == horizon)
    }

    pub fn max_bound61_ratio(&self) -> f64 {
        self.runs.iter().map(|r| r.bound61_ratio).fold(0.0, f64::max)
    }
}

/// Thread count from `OCO_LAB_THREADS`, defaulting to the available cores.
pub fn thread_count() -> usize {
    std::env::var("OCO_LAB_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|n| *n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

/// Runs every `(horizon, seed)` pair, in parallel across pairs.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<RegretCurve> {
    let set = cfg.validate()?;
    let jobs: Vec<(usize, u64)> = cfg
        .horizons
        .iter()
        .flat_map(|&t| cfg.seeds.seeds().map(move |s| (t, s)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(thread_count())
        .build()
        .map_err(|e| OcoError::Config(format!("thread pool: {e}")))?;
    // Longest runs first for better load balance; order restored below.
    let mut order: Vec<usize> = (0..jobs.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(jobs[i].0));
    let results: Vec<(usize, Result<RunResult>)> = pool.install(|| {
        order
            .par_iter()
            .map(|&i| (i, run_single(&set, &cfg.env, &cfg.learner, jobs[i].0, jobs[i].1)))
            .collect()
    });
    let mut runs: Vec<Option<RunResult>> = vec![None; jobs.len()];
    for (i, r) in results {
        runs[i] = Some(r?);
    }
    let runs: Vec<RunResult> = runs.into_iter().map(|r| r.expect("every job ran")).collect();
    let horizons = cfg
        .horizons
        .iter()
        .map(|&t| summarize(t, runs.iter().filter(|r| r.horizon == t)))
        .collect();
    Ok(RegretCurve {
        env: cfg.env.label(),
        set: set.label(),
        learner: cfg.learner.label(),
        horizons,
        runs,
    })
}

fn summarize<'a>(horizon: usize, runs: impl Iterator<Item = &'a RunResult>) -> HorizonSummary {
    let runs: Vec<&RunResult> = runs.collect();
    let realized: Vec<f64> = runs.iter().map(|r| r.realized_regret).collect();
    let pseudo: Option<Vec<f64>> = runs.iter().map(|r| r.pseudo_regret).collect();
    let (mean_realized_regret, se_realized_regret) = mean_se(&realized);
    let (mean_pseudo_regret, se_pseudo_regret) = match pseudo {
        Some(p) => {
            let (m, s) = mean_se(&p);
            (Some(m), Some(s))
        }
        None => (None, None),
    };
    HorizonSummary {
        horizon,
        seeds: runs.len(),
        mean_pseudo_regret,
        se_pseudo_regret,
        mean_realized_regret,
        se_realized_regret,
        bound61_ratio: runs.iter().map(|r| r.bound61_ratio).fold(0.0, f64::max),
    }
}

/// Sample mean and standard error (zero for a single value).
pub fn mean_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Simulates one run: predict, draw, suffer, update.
pub fn run_single(
    set: &FeasibleSet,
    env_spec: &EnvSpec,
    learner_spec: &LearnerSpec,
    horizon: usize,
    seed: u64,
) -> Result<RunResult> {
    let mut env = Environment::new(env_spec, set, horizon, seed)?;
    let mut learner = Learner::build(learner_spec, &env, horizon)?;
    let mean = env.conditional_mean_function();
    let opt = match mean {
        Some(_) => Some(env.conditional_optimal_point()?),
        None => None,
    };
    let f_opt = match (&mean, &opt) {
        (Some(m), Some((x, _))) => m.value_unchecked(x),
        _ => 0.0,
    };
    let d = set.dim();
    let marks = checkpoints(horizon);
    let mut next_mark = 0;

    let mut acc = LossAccumulator::new(d);
    let mut cum_loss = 0.0;
    let mut cum_pseudo = 0.0;
    let mut mean_gap = 0.0;
    // Sums against x★ (with a mean), plus raw sums for a hindsight comparator.
    let mut lin_star = 0.0;
    let mut v_star = 0.0;
    let mut sum_gx = 0.0;
    let mut sum_g = Vector::zeros(d);
    let mut sum_x = Vector::zeros(d);
    let mut sum_xx = 0.0;
    let mut hindsight = set.canonical_center();
    let mut out_marks = Vec::with_capacity(marks.len());

    for t in 1..=horizon {
        let x = learner.predict();
        if !set.contains_unchecked(&x) {
            return Err(OcoError::Invariant(format!(
                "{} predicted {x} outside K at round {t}",
                learner.name()
            )));
        }
        let round = env.sample_round(t, &x)?;
        let f = round.observed;
        let g = f.gradient_unchecked(&x);
        cum_loss += f.value_unchecked(&x);
        acc.push(&f)?;
        sum_gx += g.dot(&x);
        sum_g += g;
        sum_x += x;
        sum_xx += x.norm_sq();
        if let (Some(m), Some((xs, gs))) = (&mean, &opt) {
            cum_pseudo += m.value_unchecked(&x) - f_opt;
            let diff = x - *xs;
            mean_gap += gs.dot(&diff);
            lin_star += g.dot(&diff);
            v_star += diff.norm_sq();
        }
        learner.update(&g, &x)?;

        if next_mark < marks.len() && t == marks[next_mark] {
            next_mark += 1;
            hindsight = acc.minimize(set, Some(&hindsight))?;
            let realized = cum_loss - acc.value(&hindsight);
            let reference = opt.map_or(hindsight, |o| o.0);
            out_marks.push(Checkpoint {
                t,
                cum_pseudo_regret: mean.map(|_| cum_pseudo),
                cum_realized_regret: realized,
                dist_to_opt_sq: x.dist_sq(&reference),
            });
        }
    }

    let lipschitz = env.lipschitz_bound();
    let diameter = set.diameter();
    let (comparator, linearized, v_t) = match &opt {
        Some((xs, _)) => (*xs, lin_star, v_star),
        None => {
            let xh = hindsight;
            let lin = sum_gx - sum_g.dot(&xh);
            let v = sum_xx - 2.0 * sum_x.dot(&xh) + horizon as f64 * xh.norm_sq();
            (xh, lin, v.max(0.0))
        }
    };
    let bound61 = if horizon >= 2 {
        stats::bound61_from_sums(linearized, v_t, lipschitz, diameter, horizon)?
    } else {
        0.0
    };
    let last = out_marks.last().expect("horizon checkpoint");
    Ok(RunResult {
        horizon,
        seed,
        pseudo_regret: last.cum_pseudo_regret,
        realized_regret: last.cum_realized_regret,
        linearized_regret: linearized,
        mean_gap: mean.map(|_| mean_gap),
        v_t,
        comparator,
        mean_gradient_at_opt: opt.map(|o| o.1),
        lipschitz,
        diameter,
        bound61_ratio: bound61,
        corruption_used: env.corruption_used(),
        checkpoints: out_marks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::environments::NoiseSpec;

    #[test]
    fn dyadic_checkpoints() {
        assert_eq!(checkpoints(1), vec![1]);
        assert_eq!(checkpoints(8), vec![1, 2, 4, 8]);
        assert_eq!(checkpoints(10), vec![1, 2, 4, 8, 10]);
    }

    #[test]
    fn oracle_has_zero_pseudo_regret() {
        let set = FeasibleSet::w_lambda(0.5).unwrap();
        let env = EnvSpec::StochasticLinear {
            mean: vec![0.0, -0.1],
            noise: NoiseSpec::Rademacher { scales: vec![1.0, 0.0] },
        };
        let r = run_single(&set, &env, &LearnerSpec::Oracle, 256, 0).unwrap();
        assert_eq!(r.pseudo_regret, Some(0.0));
        assert_eq!(r.v_t, 0.0);
    }

    #[test]
    fn mean_and_se() {
        let (m, s) = mean_se(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(m, 2.5);
        assert!((s - (5.0f64 / 12.0).sqrt()).abs() < 1e-15);
    }
}
