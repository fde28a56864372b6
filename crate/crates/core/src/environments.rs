//! Loss-sequence generators: stochastic, adversarial and corrupted.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Beta, Distribution};
use serde::{Deserialize, Serialize};

use crate::geometry::{minimize_quadratic, FeasibleSet, SetKind};
use crate::linalg::Vector;
use crate::losses::LossFn;
use crate::{check_dim, OcoError, Result};

/// Symmetric bounded per-coordinate perturbation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params", rename_all = "snake_case", deny_unknown_fields)]
pub enum NoiseSpec {
    None,
    /// Independent `±scale_i` signs.
    Rademacher { scales: Vec<f64> },
    /// Independent uniform draws on `[−h_i, h_i]`.
    Uniform { half_widths: Vec<f64> },
}

impl Default for NoiseSpec {
    fn default() -> Self {
        NoiseSpec::None
    }
}

impl NoiseSpec {
    fn validate(&self, dim: usize) -> Result<()> {
        let widths = match self {
            NoiseSpec::None => return Ok(()),
            NoiseSpec::Rademacher { scales } => scales,
            NoiseSpec::Uniform { half_widths } => half_widths,
        };
        if widths.len() != dim {
            return Err(OcoError::Config(format!(
                "noise has {} coordinates, mean has {dim}",
                widths.len()
            )));
        }
        if widths.iter().any(|w| !(*w >= 0.0 && w.is_finite())) {
            return Err(OcoError::Config("noise widths must be finite and >= 0".into()));
        }
        Ok(())
    }

    fn widths(&self, dim: usize) -> Vector {
        match self {
            NoiseSpec::None => Vector::zeros(dim),
            NoiseSpec::Rademacher { scales } => Vector::from_slice(scales),
            NoiseSpec::Uniform { half_widths } => Vector::from_slice(half_widths),
        }
    }

    /// Per-coordinate variances.
    fn variances(&self, dim: usize) -> Vector {
        match self {
            NoiseSpec::None => Vector::zeros(dim),
            NoiseSpec::Rademacher { scales } => Vector::from_slice(scales).map(|s| s * s),
            NoiseSpec::Uniform { half_widths } => {
                Vector::from_slice(half_widths).map(|h| h * h / 3.0)
            }
        }
    }

    fn sample(&self, dim: usize, rng: &mut ChaCha8Rng) -> Vector {
        let mut v = Vector::zeros(dim);
        match self {
            NoiseSpec::None => {}
            NoiseSpec::Rademacher { scales } => {
                for i in 0..dim {
                    v[i] = if rng.random_bool(0.5) { scales[i] } else { -scales[i] };
                }
            }
            NoiseSpec::Uniform { half_widths } => {
                for i in 0..dim {
                    v[i] = half_widths[i] * (2.0 * rng.random::<f64>() - 1.0);
                }
            }
        }
        v
    }
}

fn default_beta_k() -> f64 {
    1.0
}

/// Serializable environment description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params", rename_all = "snake_case", deny_unknown_fields)]
pub enum EnvSpec {
    StochasticLinear {
        mean: Vec<f64>,
        #[serde(default)]
        noise: NoiseSpec,
    },
    /// `h_t = (2X_t − 1, −L)` with `X_t ~ Bernoulli(P)`, `P ~ Beta(k, k)`.
    BetaBernoulliGrowth {
        #[serde(default = "default_beta_k")]
        k: f64,
        #[serde(alias = "L")]
        l: f64,
    },
    /// The growth construction with the second coordinate replaced by
    /// `−L̂` for the first `τ` rounds. Requires `K = W_λ`.
    CorruptedGrowth {
        #[serde(default = "default_beta_k")]
        k: f64,
        #[serde(alias = "L")]
        l: f64,
        lambda: f64,
        #[serde(alias = "C")]
        c: f64,
    },
    /// One-dimensional `g_1 = first`, then `+amplitude, −amplitude, …`.
    AlternatingAdversary { first: f64, amplitude: f64 },
    StochasticQuadratic {
        theta_mean: Vec<f64>,
        #[serde(default)]
        noise: NoiseSpec,
        alpha: f64,
    },
    /// `(<a_t, x> − b)²` with `a_t = a_mean + noise`.
    StochasticSquaredLinear {
        a_mean: Vec<f64>,
        #[serde(default)]
        noise: NoiseSpec,
        b: f64,
    },
}

impl EnvSpec {
    pub fn label(&self) -> String {
        match self {
            EnvSpec::StochasticLinear { mean, .. } => format!("stochastic_linear({})", join(mean)),
            EnvSpec::BetaBernoulliGrowth { k, l } => format!("beta_bernoulli_growth(k={k};L={l})"),
            EnvSpec::CorruptedGrowth { k, l, lambda, c } => {
                format!("corrupted_growth(k={k};L={l};lambda={lambda};C={c})")
            }
            EnvSpec::AlternatingAdversary { first, amplitude } => {
                format!("alternating_adversary(first={first};amp={amplitude})")
            }
            EnvSpec::StochasticQuadratic { theta_mean, alpha, .. } => {
                format!("stochastic_quadratic({};alpha={alpha})", join(theta_mean))
            }
            EnvSpec::StochasticSquaredLinear { a_mean, b, .. } => {
                format!("stochastic_squared_linear({};b={b})", join(a_mean))
            }
        }
    }
}

fn join(v: &[f64]) -> String {
    v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(";")
}

/// Derived constants of the corrupted construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorruptionPlan {
    /// `L̂` with `λL̂ = √(λL/C)`.
    pub l_hat: f64,
    /// Number of corrupted rounds, `⌈C/(λL)⌉`.
    pub tau: usize,
    /// Per-round sup-norm corruption `λ|L − L̂|`.
    pub per_round: f64,
    pub budget: f64,
}

impl CorruptionPlan {
    /// Validates `C >= 1/(λL)` and `T >= C/(λL)²` and derives `(L̂, τ)`.
    pub fn new(l: f64, lambda: f64, c: f64, horizon: usize) -> Result<Self> {
        if !(l > 0.0 && l < 1.0) {
            return Err(OcoError::Precondition(format!(
                "growth level L must lie in (0, 1), got {l}"
            )));
        }
        if !(lambda > 0.0 && lambda < 1.0) {
            return Err(OcoError::Precondition(format!(
                "lambda must lie in (0, 1), got {lambda}"
            )));
        }
        let ll = lambda * l;
        if !(c.is_finite() && c * ll >= 1.0 - 1e-12) {
            return Err(OcoError::Precondition(format!(
                "corruption level C must be at least 1/(lambda*L) = {}, got C = {c}",
                1.0 / ll
            )));
        }
        let min_horizon = c / (ll * ll);
        if (horizon as f64) < min_horizon * (1.0 - 1e-12) {
            return Err(OcoError::Precondition(format!(
                "horizon T must be at least C/(lambda*L)^2 = {min_horizon}, got T = {horizon}"
            )));
        }
        let l_hat = (ll / c).sqrt() / lambda;
        Ok(Self {
            l_hat,
            tau: ceil_guarded(c / ll),
            per_round: lambda * (l - l_hat).abs(),
            budget: c,
        })
    }

    pub fn total(&self) -> f64 {
        self.tau as f64 * self.per_round
    }
}

/// `⌈x⌉` that treats values within `1e-9` relative of an integer as that integer.
fn ceil_guarded(x: f64) -> usize {
    let r = x.round();
    if (x - r).abs() <= 1e-9 * x.abs().max(1.0) {
        r as usize
    } else {
        x.ceil() as usize
    }
}

/// One round's losses: what the learner sees and the clean counterpart.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Round {
    pub observed: LossFn,
    pub clean: LossFn,
}

#[derive(Debug, Clone)]
enum State {
    StochasticLinear { mean: Vector, noise: NoiseSpec },
    Growth { p: f64, l: f64 },
    Corrupted { p: f64, l: f64, plan: CorruptionPlan },
    Alternating { first: f64, amplitude: f64 },
    Quadratic { theta: Vector, noise: NoiseSpec, alpha: f64 },
    SquaredLinear { a: Vector, noise: NoiseSpec, b: f64 },
}

/// A seeded environment instance bound to one feasible set and horizon.
#[derive(Debug, Clone)]
pub struct Environment {
    spec: EnvSpec,
    set: FeasibleSet,
    state: State,
    rng: ChaCha8Rng,
    round: usize,
    corruption_used: f64,
    gradient_sum: Vector,
}

impl Environment {
    pub fn new(spec: &EnvSpec, set: &FeasibleSet, horizon: usize, seed: u64) -> Result<Self> {
        let d = set.dim();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mean_vec = |v: &[f64], what: &str| -> Result<Vector> {
            let v = Vector::try_from_slice(v)
                .map_err(|e| OcoError::Config(format!("{what}: {e}")))?;
            check_dim(d, v.dim()).map_err(|e| OcoError::Config(format!("{what}: {e}")))?;
            Ok(v)
        };
        let draw_p = |k: f64, rng: &mut ChaCha8Rng| -> Result<f64> {
            let beta = Beta::new(k, k)
                .map_err(|e| OcoError::Config(format!("Beta({k}, {k}): {e}")))?;
            Ok(beta.sample(rng))
        };
        let need_plane = |what: &str| -> Result<()> {
            if d != 2 {
                return Err(OcoError::Config(format!("{what} needs a 2-D feasible set")));
            }
            Ok(())
        };
        let state = match spec {
            EnvSpec::StochasticLinear { mean, noise } => {
                let mean = mean_vec(mean, "stochastic_linear mean")?;
                noise.validate(d)?;
                State::StochasticLinear {
                    mean,
                    noise: noise.clone(),
                }
            }
            EnvSpec::BetaBernoulliGrowth { k, l } => {
                need_plane("beta_bernoulli_growth")?;
                if !(*l > 0.0 && *l < 1.0) {
                    return Err(OcoError::Config(format!("L must lie in (0, 1), got {l}")));
                }
                State::Growth {
                    p: draw_p(*k, &mut rng)?,
                    l: *l,
                }
            }
            EnvSpec::CorruptedGrowth { k, l, lambda, c } => {
                need_plane("corrupted_growth")?;
                match set.kind() {
                    SetKind::AxisEllipsoid { semi_axes }
                        if semi_axes[0] == 1.0 && (semi_axes[1] - lambda).abs() <= 1e-12 => {}
                    _ => {
                        return Err(OcoError::Config(format!(
                            "corrupted_growth requires the ellipsoid W_lambda with semi-axes (1, {lambda}), got {}",
                            set.label()
                        )))
                    }
                }
                let plan = CorruptionPlan::new(*l, *lambda, *c, horizon)?;
                State::Corrupted {
                    p: draw_p(*k, &mut rng)?,
                    l: *l,
                    plan,
                }
            }
            EnvSpec::AlternatingAdversary { first, amplitude } => {
                if d != 1 {
                    return Err(OcoError::Config(
                        "alternating_adversary needs a 1-D feasible set".into(),
                    ));
                }
                if !(first.is_finite() && amplitude.is_finite()) {
                    return Err(OcoError::Config("adversary parameters must be finite".into()));
                }
                State::Alternating {
                    first: *first,
                    amplitude: *amplitude,
                }
            }
            EnvSpec::StochasticQuadratic {
                theta_mean,
                noise,
                alpha,
            } => {
                if !(*alpha > 0.0 && alpha.is_finite()) {
                    return Err(OcoError::Config(format!("alpha must be positive, got {alpha}")));
                }
                noise.validate(d)?;
                State::Quadratic {
                    theta: mean_vec(theta_mean, "stochastic_quadratic theta_mean")?,
                    noise: noise.clone(),
                    alpha: *alpha,
                }
            }
            EnvSpec::StochasticSquaredLinear { a_mean, noise, b } => {
                noise.validate(d)?;
                if !b.is_finite() {
                    return Err(OcoError::Config("b must be finite".into()));
                }
                State::SquaredLinear {
                    a: mean_vec(a_mean, "stochastic_squared_linear a_mean")?,
                    noise: noise.clone(),
                    b: *b,
                }
            }
        };
        Ok(Self {
            spec: spec.clone(),
            set: *set,
            state,
            rng,
            round: 0,
            corruption_used: 0.0,
            gradient_sum: Vector::zeros(d),
        })
    }

    pub fn spec(&self) -> &EnvSpec {
        &self.spec
    }

    pub fn set(&self) -> &FeasibleSet {
        &self.set
    }

    /// The Beta draw `P` of the growth constructions.
    pub fn bernoulli_p(&self) -> Option<f64> {
        match &self.state {
            State::Growth { p, .. } | State::Corrupted { p, .. } => Some(*p),
            _ => None,
        }
    }

    pub fn corruption_plan(&self) -> Option<CorruptionPlan> {
        match &self.state {
            State::Corrupted { plan, .. } => Some(*plan),
            _ => None,
        }
    }

    pub fn corruption_used(&self) -> f64 {
        self.corruption_used
    }

    /// Sum of the observed linear gradients so far (zero for non-linear kinds).
    pub fn gradient_sum(&self) -> Vector {
        self.gradient_sum
    }

    pub fn rounds_played(&self) -> usize {
        self.round
    }

    /// Draws round `t` (1-based, consecutive). Loss draws do not depend on `x_t`.
    pub fn sample_round(&mut self, t: usize, x_t: &Vector) -> Result<Round> {
        check_dim(self.set.dim(), x_t.dim())?;
        if t != self.round + 1 {
            return Err(OcoError::InvalidParameter(format!(
                "rounds must be drawn in order: expected t = {}, got {t}",
                self.round + 1
            )));
        }
        self.round = t;
        let d = self.set.dim();
        let round = match &self.state {
            State::StochasticLinear { mean, noise } => {
                let f = LossFn::linear(*mean + noise.sample(d, &mut self.rng));
                Round { observed: f, clean: f }
            }
            State::Growth { p, l } => {
                let x = if self.rng.random_bool(*p) { 1.0 } else { 0.0 };
                let f = LossFn::linear(Vector::from_slice(&[2.0 * x - 1.0, -l]));
                Round { observed: f, clean: f }
            }
            State::Corrupted { p, l, plan } => {
                let x = if self.rng.random_bool(*p) { 1.0 } else { 0.0 };
                let clean = LossFn::linear(Vector::from_slice(&[2.0 * x - 1.0, -l]));
                if t <= plan.tau {
                    let observed = LossFn::linear(Vector::from_slice(&[2.0 * x - 1.0, -plan.l_hat]));
                    let used = self.corruption_used + sup_difference(&self.set, &observed, &clean)?;
                    if used > plan.budget * (1.0 + 1e-12) {
                        return Err(OcoError::BudgetOverflow {
                            used,
                            budget: plan.budget,
                        });
                    }
                    self.corruption_used = used;
                    Round { observed, clean }
                } else {
                    Round { observed: clean, clean }
                }
            }
            State::Alternating { first, amplitude } => {
                let g = if t == 1 {
                    *first
                } else if t % 2 == 0 {
                    *amplitude
                } else {
                    -amplitude
                };
                let f = LossFn::linear(Vector::from_slice(&[g]));
                Round { observed: f, clean: f }
            }
            State::Quadratic { theta, noise, alpha } => {
                let f = LossFn::Quadratic {
                    theta: *theta + noise.sample(d, &mut self.rng),
                    alpha: *alpha,
                };
                Round { observed: f, clean: f }
            }
            State::SquaredLinear { a, noise, b } => {
                let f = LossFn::SquaredLinear {
                    a: *a + noise.sample(d, &mut self.rng),
                    b: *b,
                };
                Round { observed: f, clean: f }
            }
        };
        if let LossFn::Linear { g } = &round.observed {
            self.gradient_sum += *g;
        }
        Ok(round)
    }

    /// `f°` in closed form; for the corrupted kind the clean mean `f̃°`.
    pub fn mean_function(&self) -> Option<LossFn> {
        let d = self.set.dim();
        match &self.state {
            State::StochasticLinear { mean, .. } => Some(LossFn::linear(*mean)),
            State::Growth { l, .. } | State::Corrupted { l, .. } => {
                Some(LossFn::linear(Vector::from_slice(&[0.0, -l])))
            }
            State::Alternating { .. } => None,
            State::Quadratic { theta, alpha, .. } => Some(LossFn::Quadratic {
                theta: *theta,
                alpha: *alpha,
            }),
            State::SquaredLinear { a, noise, b } => Some(LossFn::SquaredLinearMean {
                a: *a,
                b: *b,
                var: noise.variances(d),
            }),
        }
    }

    /// Mean of `f̃_t` given this run's latent draw.
    ///
    /// The growth kinds fix `P` once per run, so given `P` the rounds are
    /// i.i.d. with mean `(2P − 1, −L)`. Regret against
    /// [`mean_function`](Self::mean_function) would charge the learner for
    /// not knowing `P`. Every other kind returns the plain mean.
    pub fn conditional_mean_function(&self) -> Option<LossFn> {
        match &self.state {
            State::Growth { p, l } | State::Corrupted { p, l, .. } => {
                Some(LossFn::linear(Vector::from_slice(&[2.0 * p - 1.0, -l])))
            }
            _ => self.mean_function(),
        }
    }

    /// Mean and per-coordinate variance of the observed linear gradients.
    ///
    /// Coordinates are independent, so `E<g, v>² = <g°, v>² + Σ var_i v_i²`.
    pub fn linear_moments(&self) -> Option<(Vector, Vector)> {
        let d = self.set.dim();
        match &self.state {
            State::StochasticLinear { mean, noise } => Some((*mean, noise.variances(d))),
            // (2X − 1)² = 1 and E[2X − 1] = 0 marginally over P ~ Beta(k, k).
            State::Growth { l, .. } => Some((
                Vector::from_slice(&[0.0, -l]),
                Vector::from_slice(&[1.0, 0.0]),
            )),
            _ => None,
        }
    }

    /// `(x★, ∇f°(x★))` for the mean function.
    pub fn optimal_point(&self) -> Result<(Vector, Vector)> {
        let mean = self.mean_function().ok_or_else(|| self.no_mean())?;
        self.minimize_mean(&mean)
    }

    /// `(x★, ∇f°(x★))` for [`conditional_mean_function`](Self::conditional_mean_function).
    pub fn conditional_optimal_point(&self) -> Result<(Vector, Vector)> {
        let mean = self.conditional_mean_function().ok_or_else(|| self.no_mean())?;
        self.minimize_mean(&mean)
    }

    fn no_mean(&self) -> OcoError {
        OcoError::Unsupported(format!("{} has no mean function", self.spec.label()))
    }

    fn minimize_mean(&self, mean: &LossFn) -> Result<(Vector, Vector)> {
        let x = match mean {
            LossFn::Linear { g } => self.set.linear_minimizer(g)?,
            LossFn::Quadratic { theta, .. } => self.set.project(theta)?,
            other => {
                let form = other.quadratic_form();
                let out = minimize_quadratic(&self.set, &form.q, &form.c, None, 100_000)?;
                if out.gap > 1e-10 {
                    return Err(OcoError::NonConvergence {
                        what: "mean-function minimizer",
                        residual: out.gap,
                    });
                }
                out.point
            }
        };
        Ok((x, mean.gradient_unchecked(&x)))
    }

    /// An upper bound `G` on the observed gradient norms over `K`.
    pub fn lipschitz_bound(&self) -> f64 {
        let d = self.set.dim();
        let envelope = |mean: &Vector, noise: &NoiseSpec| -> Vector {
            let w = noise.widths(d);
            let mut v = *mean;
            for i in 0..d {
                v[i] = mean[i].abs() + w[i];
            }
            v
        };
        match &self.state {
            State::StochasticLinear { mean, noise } => envelope(mean, noise).norm(),
            State::Growth { l, .. } => (1.0 + l * l).sqrt(),
            State::Corrupted { l, plan, .. } => (1.0 + l.max(plan.l_hat).powi(2)).sqrt(),
            State::Alternating { first, amplitude } => first.abs().max(amplitude.abs()),
            State::Quadratic { theta, noise, alpha } => {
                alpha * (envelope(theta, noise).norm() + self.set.max_norm())
            }
            State::SquaredLinear { a, noise, b } => {
                let a = envelope(a, noise).norm();
                2.0 * (a * self.set.max_norm() + b.abs()) * a
            }
        }
    }
}

/// `sup_{x ∈ K} |f(x) − g(x)|` for two linear losses.
fn sup_difference(k: &FeasibleSet, f: &LossFn, g: &LossFn) -> Result<f64> {
    match (f, g) {
        (LossFn::Linear { g: a }, LossFn::Linear { g: b }) => {
            let delta = *a - *b;
            Ok(k.support(&delta).max(k.support(&-delta)).max(0.0))
        }
        _ => Err(OcoError::Unsupported(
            "corruption is only measured between linear losses".into(),
        )),
    }
}

/// `min_t (||g_1 + … + g_t||_2 − tL)` over all prefixes.
pub fn growth_margin(gradients: &[Vector], l: f64) -> f64 {
    let Some(first) = gradients.first() else {
        return f64::INFINITY;
    };
    // Prefix sums carried as double-doubles (TwoSum), so drift from adding
    // `−L` thousands of times cannot eat into the margin.
    let d = first.dim();
    let mut hi = Vector::zeros(d);
    let mut lo = Vector::zeros(d);
    let mut worst = f64::INFINITY;
    for (t, g) in gradients.iter().enumerate() {
        let mut sum = Vector::zeros(d);
        for i in 0..d {
            let s = hi[i] + g[i];
            let bb = s - hi[i];
            let err = (hi[i] - (s - bb)) + (g[i] - bb);
            hi[i] = s;
            lo[i] += err;
            sum[i] = hi[i] + lo[i];
        }
        worst = worst.min(sum.norm() - (t + 1) as f64 * l);
    }
    worst
}

/// `Σ_t sup_K |f_t − f̃_t|`, checked against the budget `C`.
pub fn corruption_budget_used(rounds: &[Round], k: &FeasibleSet, budget: f64) -> Result<f64> {
    let mut used = 0.0;
    for r in rounds {
        used += sup_difference(k, &r.observed, &r.clean)?;
    }
    if used > budget {
        return Err(OcoError::BudgetOverflow { used, budget });
    }
    Ok(used)
}
