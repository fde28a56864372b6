//! Loss families with value and gradient oracles.

use serde::{Deserialize, Serialize};

use crate::geometry::FeasibleSet;
use crate::linalg::{Matrix, Vector};
use crate::{check_dim, OcoError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LossFn {
    /// `f(x) = <g, x>`.
    Linear { g: Vector },
    /// `f(x) = (α/2) ||x − θ||²`.
    Quadratic { theta: Vector, alpha: f64 },
    /// `f(x) = (<a, x> − b)²`.
    SquaredLinear { a: Vector, b: f64 },
    /// Mean of `SquaredLinear` under independent coordinate noise on `a`:
    /// `(<a, x> − b)² + Σ var_i x_i²`.
    SquaredLinearMean { a: Vector, b: f64, var: Vector },
}

impl LossFn {
    pub fn linear(g: Vector) -> Self {
        LossFn::Linear { g }
    }

    pub fn dim(&self) -> usize {
        match self {
            LossFn::Linear { g } => g.dim(),
            LossFn::Quadratic { theta, .. } => theta.dim(),
            LossFn::SquaredLinear { a, .. } | LossFn::SquaredLinearMean { a, .. } => a.dim(),
        }
    }

    pub fn value(&self, x: &Vector) -> Result<f64> {
        check_dim(self.dim(), x.dim())?;
        Ok(self.value_unchecked(x))
    }

    pub fn gradient(&self, x: &Vector) -> Result<Vector> {
        check_dim(self.dim(), x.dim())?;
        Ok(self.gradient_unchecked(x))
    }

    #[inline]
    pub(crate) fn value_unchecked(&self, x: &Vector) -> f64 {
        match self {
            LossFn::Linear { g } => g.dot(x),
            LossFn::Quadratic { theta, alpha } => 0.5 * alpha * x.dist_sq(theta),
            LossFn::SquaredLinear { a, b } => (a.dot(x) - b).powi(2),
            LossFn::SquaredLinearMean { a, b, var } => {
                (a.dot(x) - b).powi(2) + x.iter().zip(var.iter()).map(|(xi, v)| v * xi * xi).sum::<f64>()
            }
        }
    }

    #[inline]
    pub(crate) fn gradient_unchecked(&self, x: &Vector) -> Vector {
        match self {
            LossFn::Linear { g } => *g,
            LossFn::Quadratic { theta, alpha } => (*x - *theta).scale(*alpha),
            LossFn::SquaredLinear { a, b } => a.scale(2.0 * (a.dot(x) - b)),
            LossFn::SquaredLinearMean { a, b, var } => {
                let mut grad = a.scale(2.0 * (a.dot(x) - b));
                for i in 0..grad.dim() {
                    grad[i] += 2.0 * var[i] * x[i];
                }
                grad
            }
        }
    }

    /// Upper bound on `sup_{x ∈ K} ||∇f(x)||_2`.
    pub fn lipschitz_bound(&self, k: &FeasibleSet) -> Result<f64> {
        check_dim(k.dim(), self.dim())?;
        Ok(match self {
            LossFn::Linear { g } => g.norm(),
            LossFn::Quadratic { theta, alpha } => alpha * (theta.norm() + k.max_norm()),
            LossFn::SquaredLinear { a, b } => 2.0 * max_abs_residual(k, a, *b) * a.norm(),
            LossFn::SquaredLinearMean { a, b, var } => {
                2.0 * max_abs_residual(k, a, *b) * a.norm() + 2.0 * var.norm_inf() * k.max_norm()
            }
        })
    }

    /// Exp-concavity label `β = 1/(2 sup_K f)` for squared-linear losses.
    ///
    /// Only used for reporting; no learner is tuned with it.
    pub fn exp_concavity_label(&self, k: &FeasibleSet) -> Option<f64> {
        match self {
            LossFn::SquaredLinear { a, b } => {
                let sup = max_abs_residual(k, a, *b).powi(2);
                (sup > 0.0).then(|| 0.5 / sup)
            }
            _ => None,
        }
    }

    /// `(Q, c, e)` with `f(x) = ½ xᵀQx + <c, x> + e`.
    pub fn quadratic_form(&self) -> QuadraticForm {
        let d = self.dim();
        match self {
            LossFn::Linear { g } => QuadraticForm {
                q: Matrix::scaled_identity(d, 0.0),
                c: *g,
                e: 0.0,
            },
            LossFn::Quadratic { theta, alpha } => QuadraticForm {
                q: Matrix::scaled_identity(d, *alpha),
                c: theta.scale(-alpha),
                e: 0.5 * alpha * theta.norm_sq(),
            },
            LossFn::SquaredLinear { a, b } => {
                let mut q = Matrix::scaled_identity(d, 0.0);
                q.add_outer(a, 2.0);
                QuadraticForm {
                    q,
                    c: a.scale(-2.0 * b),
                    e: b * b,
                }
            }
            LossFn::SquaredLinearMean { a, b, var } => {
                let var2: Vec<f64> = var.iter().map(|v| 2.0 * v).collect();
                let mut q = Matrix::diagonal(&var2);
                q.add_outer(a, 2.0);
                QuadraticForm {
                    q,
                    c: a.scale(-2.0 * b),
                    e: b * b,
                }
            }
        }
    }
}

/// `max_{x ∈ K} |<a, x> − b|`.
fn max_abs_residual(k: &FeasibleSet, a: &Vector, b: f64) -> f64 {
    (k.support(a) - b).abs().max((-k.support(&-*a) - b).abs())
}

/// `½ xᵀQx + <c, x> + e`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticForm {
    pub q: Matrix,
    pub c: Vector,
    pub e: f64,
}

impl QuadraticForm {
    pub fn value(&self, x: &Vector) -> f64 {
        0.5 * self.q.quad_form(x) + self.c.dot(x) + self.e
    }
}

/// Running sum of losses, kept as one quadratic form.
///
/// Tracks whether the sum is purely linear or an isotropic quadratic so
/// the minimizer can use the cheap oracles.
#[derive(Debug, Clone)]
pub struct LossAccumulator {
    dim: usize,
    c: Vector,
    e: f64,
    iso: f64,
    general: Option<Matrix>,
    count: usize,
}

impl LossAccumulator {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            c: Vector::zeros(dim),
            e: 0.0,
            iso: 0.0,
            general: None,
            count: 0,
        }
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn push(&mut self, f: &LossFn) -> Result<()> {
        check_dim(self.dim, f.dim())?;
        self.count += 1;
        match f {
            LossFn::Linear { g } => self.c += *g,
            LossFn::Quadratic { theta, alpha } => {
                self.iso += alpha;
                self.c = self.c.axpy(-alpha, theta);
                self.e += 0.5 * alpha * theta.norm_sq();
                if let Some(m) = self.general.as_mut() {
                    m.add_scaled_identity(*alpha);
                }
            }
            _ => {
                let form = f.quadratic_form();
                let m = self
                    .general
                    .get_or_insert_with(|| Matrix::scaled_identity(self.dim, self.iso));
                m.add_assign(&form.q);
                self.c += form.c;
                self.e += form.e;
            }
        }
        Ok(())
    }

    pub fn value(&self, x: &Vector) -> f64 {
        let quad = match &self.general {
            Some(m) => 0.5 * m.quad_form(x),
            None => 0.5 * self.iso * x.norm_sq(),
        };
        quad + self.c.dot(x) + self.e
    }

    /// `argmin_{x ∈ K}` of the accumulated loss.
    pub fn minimize(&self, k: &FeasibleSet, start: Option<&Vector>) -> Result<Vector> {
        check_dim(k.dim(), self.dim)?;
        match &self.general {
            None if self.iso == 0.0 => k.linear_minimizer(&self.c),
            None => k.project(&self.c.scale(-1.0 / self.iso)),
            Some(m) => {
                let out = crate::geometry::minimize_quadratic(k, m, &self.c, start, 20_000)?;
                if out.gap > 1e-6 * (1.0 + self.count as f64) {
                    return Err(OcoError::NonConvergence {
                        what: "hindsight quadratic minimization",
                        residual: out.gap,
                    });
                }
                Ok(out.point)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[f64]) -> Vector {
        Vector::from_slice(c)
    }

    #[test]
    fn value_and_gradient_examples() {
        let lin = LossFn::linear(v(&[1.0, -0.1]));
        assert!((lin.value(&v(&[0.0, 0.5])).unwrap() + 0.05).abs() < 1e-15);
        let q = LossFn::Quadratic { theta: v(&[0.0, 0.0]), alpha: 2.0 };
        assert_eq!(q.value(&v(&[1.0, 0.0])).unwrap(), 1.0);
        assert_eq!(q.gradient(&v(&[1.0, 0.0])).unwrap(), v(&[2.0, 0.0]));
        let s = LossFn::SquaredLinear { a: v(&[1.0, 0.0]), b: 0.0 };
        assert_eq!(s.value(&v(&[0.5, 3.0])).unwrap(), 0.25);
        assert_eq!(s.gradient(&v(&[0.5, 3.0])).unwrap(), v(&[1.0, 0.0]));
    }

    #[test]
    fn lipschitz_examples() {
        let ball = FeasibleSet::unit_ball(2);
        let lin = LossFn::linear(v(&[1.0, -0.1]));
        assert!((lin.lipschitz_bound(&ball).unwrap() - 1.01f64.sqrt()).abs() < 1e-15);
        let q = LossFn::Quadratic { theta: v(&[0.0, 2.0]), alpha: 1.0 };
        assert!(q.lipschitz_bound(&ball).unwrap() <= 3.0 + 1e-15);
        let s = LossFn::SquaredLinear { a: v(&[1.0, 0.0]), b: 0.0 };
        assert!((s.lipschitz_bound(&ball).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn quadratic_form_matches_value() {
        let x = v(&[0.3, -0.7]);
        for f in [
            LossFn::linear(v(&[1.0, 2.0])),
            LossFn::Quadratic { theta: v(&[0.5, 1.0]), alpha: 3.0 },
            LossFn::SquaredLinear { a: v(&[1.0, -2.0]), b: 0.5 },
            LossFn::SquaredLinearMean { a: v(&[1.0, -2.0]), b: 0.5, var: v(&[0.25, 0.1]) },
        ] {
            assert!((f.quadratic_form().value(&x) - f.value(&x).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn accumulator_minimizers() {
        let w = FeasibleSet::w_lambda(0.5).unwrap();
        let mut acc = LossAccumulator::new(2);
        acc.push(&LossFn::linear(v(&[1.0, -0.1]))).unwrap();
        acc.push(&LossFn::linear(v(&[-1.0, -0.1]))).unwrap();
        assert!(acc.minimize(&w, None).unwrap().dist(&v(&[0.0, 0.5])) < 1e-12);

        let mut acc = LossAccumulator::new(2);
        acc.push(&LossFn::Quadratic { theta: v(&[0.0, 2.0]), alpha: 1.0 }).unwrap();
        let x = acc.minimize(&FeasibleSet::unit_ball(2), None).unwrap();
        assert!(x.dist(&v(&[0.0, 1.0])) < 1e-12);

        let mut acc = LossAccumulator::new(2);
        acc.push(&LossFn::linear(v(&[0.0, 0.0]))).unwrap();
        assert_eq!(acc.minimize(&w, None).unwrap(), w.canonical_center());
    }

    #[test]
    fn accumulator_value_matches_sum() {
        let fs = [
            LossFn::Quadratic { theta: v(&[0.5, 1.0]), alpha: 3.0 },
            LossFn::SquaredLinear { a: v(&[1.0, -2.0]), b: 0.5 },
            LossFn::linear(v(&[1.0, 2.0])),
            LossFn::Quadratic { theta: v(&[-0.5, 0.0]), alpha: 1.0 },
        ];
        let mut acc = LossAccumulator::new(2);
        for f in &fs {
            acc.push(f).unwrap();
        }
        let x = v(&[0.2, 0.9]);
        let direct: f64 = fs.iter().map(|f| f.value(&x).unwrap()).sum();
        assert!((acc.value(&x) - direct).abs() < 1e-12);
    }
}
