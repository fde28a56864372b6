//! OGD, FTL, ONS and a fixed-point stub.

use serde::{Deserialize, Serialize};

use super::{check_gradient, OnlineLearner};
use crate::geometry::{fw, FeasibleSet};
use crate::linalg::{Matrix, Vector};
use crate::{OcoError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum StepSchedule {
    /// `η_t = D / (G √t)`.
    #[default]
    General,
    /// `η_t = 1 / (α t)`.
    StronglyConvex { alpha: f64 },
    Constant { eta: f64 },
}

impl StepSchedule {
    pub fn label(&self) -> String {
        match self {
            StepSchedule::General => "general".into(),
            StepSchedule::StronglyConvex { alpha } => format!("strongly_convex;alpha={alpha}"),
            StepSchedule::Constant { eta } => format!("constant;eta={eta}"),
        }
    }
}

/// Projected online gradient descent.
#[derive(Debug, Clone)]
pub struct Ogd {
    set: FeasibleSet,
    x: Vector,
    t: usize,
    schedule: StepSchedule,
    g: f64,
    d: f64,
}

impl Ogd {
    pub fn new(set: &FeasibleSet, schedule: StepSchedule, g: f64) -> Result<Self> {
        if !(g > 0.0 && g.is_finite()) {
            return Err(OcoError::InvalidParameter(format!("G must be positive, got {g}")));
        }
        match schedule {
            StepSchedule::StronglyConvex { alpha } if !(alpha > 0.0) => {
                return Err(OcoError::InvalidParameter(format!("alpha must be positive, got {alpha}")))
            }
            StepSchedule::Constant { eta } if !(eta > 0.0) => {
                return Err(OcoError::InvalidParameter(format!("eta must be positive, got {eta}")))
            }
            _ => {}
        }
        Ok(Self {
            set: *set,
            x: set.canonical_center(),
            t: 0,
            schedule,
            g,
            d: set.diameter(),
        })
    }

    /// Starts from `x` instead of the canonical center.
    pub fn with_start(mut self, x: Vector) -> Result<Self> {
        self.x = self.set.project(&x)?;
        Ok(self)
    }

    fn step(&self, t: usize) -> f64 {
        match self.schedule {
            StepSchedule::General => self.d / (self.g * (t as f64).sqrt()),
            StepSchedule::StronglyConvex { alpha } => 1.0 / (alpha * t as f64),
            StepSchedule::Constant { eta } => eta,
        }
    }
}

impl OnlineLearner for Ogd {
    fn predict(&self) -> Vector {
        self.x
    }

    fn update(&mut self, grad: &Vector, x_t: &Vector) -> Result<()> {
        check_gradient(self.set.dim(), grad, x_t)?;
        self.t += 1;
        self.x = self.set.project(&self.x.axpy(-self.step(self.t), grad))?;
        Ok(())
    }

    fn name(&self) -> &'static str {
        "ogd"
    }
}

/// Follow the leader for linear losses, or for `(α/2)||x − θ_t||²` losses
/// where `θ_t = x_t − g_t/α` is recovered from the gradient.
#[derive(Debug, Clone)]
pub struct Ftl {
    set: FeasibleSet,
    sum: Vector,
    rounds: usize,
    alpha: Option<f64>,
    leader: Vector,
}

impl Ftl {
    pub fn new(set: &FeasibleSet, alpha: Option<f64>) -> Result<Self> {
        if let Some(a) = alpha {
            if !(a > 0.0 && a.is_finite()) {
                return Err(OcoError::InvalidParameter(format!("alpha must be positive, got {a}")));
            }
        }
        Ok(Self {
            set: *set,
            sum: Vector::zeros(set.dim()),
            rounds: 0,
            alpha,
            leader: set.canonical_center(),
        })
    }

    /// `Θ_t`: the gradient sum (linear) or the sum of recovered `θ_s` (quadratic).
    pub fn cumulative(&self) -> Vector {
        self.sum
    }
}

impl OnlineLearner for Ftl {
    fn predict(&self) -> Vector {
        self.leader
    }

    fn update(&mut self, grad: &Vector, x_t: &Vector) -> Result<()> {
        check_gradient(self.set.dim(), grad, x_t)?;
        self.rounds += 1;
        match self.alpha {
            None => {
                self.sum += *grad;
                self.leader = self.set.linear_minimizer_unchecked(&self.sum);
            }
            Some(alpha) => {
                self.sum += x_t.axpy(-1.0 / alpha, grad);
                self.leader = self.set.project(&self.sum.scale(1.0 / self.rounds as f64))?;
            }
        }
        Ok(())
    }

    fn name(&self) -> &'static str {
        "ftl"
    }
}

/// Online Newton step with `A_0 = εI` and Mahalanobis projections.
#[derive(Debug, Clone)]
pub struct Ons {
    set: FeasibleSet,
    x: Vector,
    a: Matrix,
    gamma: f64,
    /// Largest Frank–Wolfe gap accepted so far.
    worst_gap: f64,
}

impl Ons {
    pub fn new(set: &FeasibleSet, epsilon: f64, gamma: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon.is_finite()) {
            return Err(OcoError::InvalidParameter(format!("epsilon must be positive, got {epsilon}")));
        }
        if !(gamma > 0.0 && gamma.is_finite()) {
            return Err(OcoError::InvalidParameter(format!("gamma must be positive, got {gamma}")));
        }
        Ok(Self {
            set: *set,
            x: set.canonical_center(),
            a: Matrix::scaled_identity(set.dim(), epsilon),
            gamma,
            worst_gap: 0.0,
        })
    }

    /// `½ min{1/(4 G D), 1}` for gradients bounded by `G`.
    pub fn default_gamma(g: f64, d: f64) -> f64 {
        0.5 * (1.0 / (4.0 * g * d)).min(1.0)
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn matrix(&self) -> &Matrix {
        &self.a
    }

    pub fn worst_gap(&self) -> f64 {
        self.worst_gap
    }
}

impl OnlineLearner for Ons {
    fn predict(&self) -> Vector {
        self.x
    }

    fn update(&mut self, grad: &Vector, x_t: &Vector) -> Result<()> {
        check_gradient(self.set.dim(), grad, x_t)?;
        if grad.norm_inf() == 0.0 {
            return Ok(());
        }
        self.a.add_outer(grad, 1.0);
        let dir = self.a.solve_spd(grad).ok_or_else(|| {
            OcoError::NonFinite("ONS matrix lost positive definiteness".into())
        })?;
        let y = self.x.axpy(-1.0 / self.gamma, &dir);
        let out = fw::mahalanobis_project_unchecked(&self.set, &y, &self.a, Some(&self.x))?;
        self.worst_gap = self.worst_gap.max(out.gap);
        self.x = out.point;
        Ok(())
    }

    fn name(&self) -> &'static str {
        "ons"
    }
}

/// Plays one fixed point every round.
#[derive(Debug, Clone)]
pub struct Fixed {
    x: Vector,
}

impl Fixed {
    pub fn new(set: &FeasibleSet, x: Vector) -> Result<Self> {
        if !set.contains(&x)? {
            return Err(OcoError::InvalidParameter(format!("fixed point {x} is outside K")));
        }
        Ok(Self { x })
    }
}

impl OnlineLearner for Fixed {
    fn predict(&self) -> Vector {
        self.x
    }

    fn update(&mut self, grad: &Vector, x_t: &Vector) -> Result<()> {
        check_gradient(self.x.dim(), grad, x_t)
    }

    fn name(&self) -> &'static str {
        "oracle"
    }
}
