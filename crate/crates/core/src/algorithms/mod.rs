//! Online learners behind one predict/update interface.

mod basic;
mod universal;

pub use basic::{Fixed, Ftl, Ogd, Ons, StepSchedule};
pub use universal::{
    exp_concave_surrogate, maler_constants, strongly_convex_surrogate, BoundConstants, Universal,
};

use serde::{Deserialize, Serialize};

use crate::environments::Environment;
use crate::geometry::FeasibleSet;
use crate::linalg::Vector;
use crate::{OcoError, Result};

/// Gradient-feedback online learner.
pub trait OnlineLearner {
    /// The decision for the current round; always a member of `K`.
    fn predict(&self) -> Vector;
    /// Feeds `g_t = ∇f_t(x_t)` where `x_t` is the last prediction.
    fn update(&mut self, grad: &Vector, x_t: &Vector) -> Result<()>;
    fn name(&self) -> &'static str;
}

/// Serializable learner description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params", rename_all = "snake_case", deny_unknown_fields)]
pub enum LearnerSpec {
    Ogd {
        #[serde(default)]
        schedule: StepSchedule,
        /// Overrides the environment's gradient bound.
        #[serde(default)]
        lipschitz: Option<f64>,
    },
    Ftl {
        /// Quadratic leader `(α/2)||x − θ_t||²`; linear losses when absent.
        #[serde(default)]
        alpha: Option<f64>,
    },
    Ons {
        #[serde(default = "default_epsilon")]
        epsilon: f64,
        #[serde(default)]
        gamma: Option<f64>,
        #[serde(default)]
        lipschitz: Option<f64>,
    },
    Universal {
        #[serde(default)]
        lipschitz: Option<f64>,
    },
    /// Always plays the mean-function minimizer.
    Oracle,
}

fn default_epsilon() -> f64 {
    1.0
}

impl LearnerSpec {
    pub fn label(&self) -> String {
        match self {
            LearnerSpec::Ogd { schedule, .. } => format!("ogd({})", schedule.label()),
            LearnerSpec::Ftl { alpha: None } => "ftl".into(),
            LearnerSpec::Ftl { alpha: Some(a) } => format!("ftl(quadratic;alpha={a})"),
            LearnerSpec::Ons { .. } => "ons".into(),
            LearnerSpec::Universal { .. } => "universal".into(),
            LearnerSpec::Oracle => "oracle".into(),
        }
    }
}

#[derive(Debug, Clone)]
pub enum Learner {
    Ogd(Ogd),
    Ftl(Ftl),
    Ons(Ons),
    Universal(Box<Universal>),
    Fixed(Fixed),
}

impl Learner {
    /// Instantiates a learner for `env` on its set over `horizon` rounds.
    pub fn build(spec: &LearnerSpec, env: &Environment, horizon: usize) -> Result<Self> {
        let set: &FeasibleSet = env.set();
        let g_of = |over: &Option<f64>| -> Result<f64> {
            let g = over.unwrap_or_else(|| env.lipschitz_bound());
            if g > 0.0 && g.is_finite() {
                Ok(g)
            } else {
                Err(OcoError::Config(format!("gradient bound must be positive, got {g}")))
            }
        };
        Ok(match spec {
            LearnerSpec::Ogd { schedule, lipschitz } => {
                Learner::Ogd(Ogd::new(set, *schedule, g_of(lipschitz)?)?)
            }
            LearnerSpec::Ftl { alpha } => Learner::Ftl(Ftl::new(set, *alpha)?),
            LearnerSpec::Ons {
                epsilon,
                gamma,
                lipschitz,
            } => {
                let g = g_of(lipschitz)?;
                let gamma = gamma.unwrap_or_else(|| Ons::default_gamma(g, set.diameter()));
                Learner::Ons(Ons::new(set, *epsilon, gamma)?)
            }
            LearnerSpec::Universal { lipschitz } => {
                Learner::Universal(Box::new(Universal::new(set, g_of(lipschitz)?, horizon)?))
            }
            LearnerSpec::Oracle => Learner::Fixed(Fixed::new(set, env.conditional_optimal_point()?.0)?),
        })
    }

    pub fn as_universal(&self) -> Option<&Universal> {
        match self {
            Learner::Universal(u) => Some(u),
            _ => None,
        }
    }

    /// Nominal bound constants; only defined for the universal learner.
    pub fn bound_constants(&self) -> Result<BoundConstants> {
        self.as_universal()
            .map(|u| u.bound_constants())
            .ok_or_else(|| OcoError::Unsupported(format!("bound constants for {}", self.name())))
    }
}

impl OnlineLearner for Learner {
    fn predict(&self) -> Vector {
        match self {
            Learner::Ogd(l) => l.predict(),
            Learner::Ftl(l) => l.predict(),
            Learner::Ons(l) => l.predict(),
            Learner::Universal(l) => l.predict(),
            Learner::Fixed(l) => l.predict(),
        }
    }

    fn update(&mut self, grad: &Vector, x_t: &Vector) -> Result<()> {
        match self {
            Learner::Ogd(l) => l.update(grad, x_t),
            Learner::Ftl(l) => l.update(grad, x_t),
            Learner::Ons(l) => l.update(grad, x_t),
            Learner::Universal(l) => l.update(grad, x_t),
            Learner::Fixed(l) => l.update(grad, x_t),
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Learner::Ogd(l) => l.name(),
            Learner::Ftl(l) => l.name(),
            Learner::Ons(l) => l.name(),
            Learner::Universal(l) => l.name(),
            Learner::Fixed(l) => l.name(),
        }
    }
}

pub(crate) fn check_gradient(dim: usize, grad: &Vector, x_t: &Vector) -> Result<()> {
    crate::check_dim(dim, grad.dim())?;
    crate::check_dim(dim, x_t.dim())?;
    if !grad.is_finite() {
        return Err(OcoError::NonFinite(format!("gradient {grad}")));
    }
    Ok(())
}
