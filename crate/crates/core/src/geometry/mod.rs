//! Convex bodies and the operations the learners and diagnostics need.
//!
//! Every [`FeasibleSet`] supports membership, Euclidean projection, a
//! linear-minimization oracle, its diameter, a Minkowski gauge around its
//! canonical center and ray casting. Curvature diagnostics (enclosing
//! spheres, `γ★`, uniform-convexity witnesses) are built on those
//! primitives in the submodules.

pub(crate) mod fw;
mod metric;
mod project;
mod sphere;
mod uniform;

pub use fw::{mahalanobis_project, minimize_quadratic, FwOutcome, FW_GAP_TOL, FW_MAX_ITERS};
pub use sphere::{gamma_star, min_enclosing_sphere_facing, SphereFacing, SphereFit};
pub use uniform::{uniform_convexity_witness, Violation, WitnessReport};

use serde::{Deserialize, Serialize};

use crate::linalg::Vector;
use crate::{check_dim, OcoError, Result};

/// Norm in which a set's curvature metadata is expressed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormTag {
    L2,
    Lp(f64),
}

impl NormTag {
    pub fn exponent(&self) -> f64 {
        match self {
            NormTag::L2 => 2.0,
            NormTag::Lp(p) => *p,
        }
    }

    pub fn norm(&self, v: &Vector) -> f64 {
        v.norm_p(self.exponent())
    }

    /// Dual norm `sup { <v, y> : ||y|| <= 1 }`.
    pub fn dual_norm(&self, v: &Vector) -> f64 {
        let p = self.exponent();
        if p == 1.0 {
            v.norm_inf()
        } else {
            v.norm_p(p / (p - 1.0))
        }
    }

    /// A unit vector (in this norm) maximizing `<v, z>`.
    pub fn dual_direction(&self, v: &Vector) -> Vector {
        let p = self.exponent();
        if p == 2.0 {
            return v.normalized().unwrap_or_else(|| Vector::basis(v.dim(), 0));
        }
        if v.norm_inf() == 0.0 {
            let e = Vector::basis(v.dim(), 0);
            return e.scale(1.0 / self.norm(&e));
        }
        if p == 1.0 {
            let (k, _) = v
                .iter()
                .enumerate()
                .fold((0, f64::MIN), |acc, (i, c)| if c.abs() > acc.1 { (i, c.abs()) } else { acc });
            let mut z = Vector::zeros(v.dim());
            z[k] = v[k].signum();
            return z;
        }
        let dual = p / (p - 1.0);
        let z = v.map(|c| c.signum() * c.abs().powf(dual - 1.0));
        z.scale(1.0 / self.norm(&z))
    }
}

/// `(κ, q)` uniform convexity in the sense
/// `θx + (1−θ)y + θ(1−θ) κ ||x−y||^q · B ⊆ K`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformConvexity {
    pub kappa: f64,
    pub q: f64,
    pub norm: NormTag,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SetKind {
    EuclideanBall { center: Vector, radius: f64 },
    /// `{ x : Σ x_i² / a_i² <= 1 }`, centered at the origin.
    AxisEllipsoid { semi_axes: Vector },
    /// `{ x : ||x||_p <= radius }` in `dim` dimensions.
    LpBall { p: f64, radius: f64, dim: usize },
    Box { lo: Vector, hi: Vector },
    /// Corner simplex `{ x >= 0 : Σ x_i <= scale }`.
    Simplex { scale: f64, dim: usize },
}

/// A convex body with optional curvature metadata.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeasibleSet {
    kind: SetKind,
    uniform_convexity: Option<UniformConvexity>,
    xi: f64,
}

impl FeasibleSet {
    pub fn ball(center: Vector, radius: f64) -> Result<Self> {
        positive("radius", radius)?;
        // Def-4 constant of a Euclidean ball of radius r is 1/(2r).
        Ok(Self {
            kind: SetKind::EuclideanBall { center, radius },
            uniform_convexity: Some(UniformConvexity {
                kappa: 0.5 / radius,
                q: 2.0,
                norm: NormTag::L2,
            }),
            xi: 1.0,
        })
    }

    pub fn unit_ball(dim: usize) -> Self {
        Self::ball(Vector::zeros(dim), 1.0).expect("unit ball")
    }

    pub fn ellipsoid(semi_axes: Vector) -> Result<Self> {
        if semi_axes.iter().any(|a| !(*a > 0.0 && a.is_finite())) {
            return Err(OcoError::InvalidParameter(format!(
                "ellipsoid semi-axes must be positive, got {semi_axes}"
            )));
        }
        let a_min = semi_axes.iter().cloned().fold(f64::INFINITY, f64::min);
        let a_max = semi_axes.iter().cloned().fold(0.0, f64::max);
        Ok(Self {
            kind: SetKind::AxisEllipsoid { semi_axes },
            uniform_convexity: Some(UniformConvexity {
                kappa: a_min / (2.0 * a_max * a_max),
                q: 2.0,
                norm: NormTag::L2,
            }),
            xi: 1.0,
        })
    }

    /// `W_λ = { (x, y) : x² + y²/λ² <= 1 }`.
    pub fn w_lambda(lambda: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda < 1.0) {
            return Err(OcoError::InvalidParameter(format!(
                "W_lambda requires lambda in (0, 1), got {lambda}"
            )));
        }
        Self::ellipsoid(Vector::from_slice(&[1.0, lambda]))
    }

    pub fn lp_ball(p: f64, radius: f64, dim: usize) -> Result<Self> {
        if !(p >= 1.0 && p.is_finite()) {
            return Err(OcoError::InvalidParameter(format!(
                "lp ball needs finite p >= 1, got {p}"
            )));
        }
        positive("radius", radius)?;
        if !(1..=crate::linalg::MAX_DIM).contains(&dim) {
            return Err(OcoError::InvalidParameter(format!("dimension {dim}")));
        }
        let (uniform_convexity, xi) = if p >= 2.0 {
            (
                Some(UniformConvexity {
                    kappa: (1.0 / p) / radius.powf(p - 1.0),
                    q: p,
                    norm: NormTag::Lp(p),
                }),
                (dim as f64).powf(0.5 - 1.0 / p),
            )
        } else {
            (None, 1.0)
        };
        Ok(Self {
            kind: SetKind::LpBall { p, radius, dim },
            uniform_convexity,
            xi,
        })
    }

    pub fn cuboid(lo: Vector, hi: Vector) -> Result<Self> {
        check_dim(lo.dim(), hi.dim())?;
        if lo.iter().zip(hi.iter()).any(|(l, h)| !(l < h)) {
            return Err(OcoError::InvalidParameter(format!(
                "box needs lo < hi coordinatewise, got lo={lo} hi={hi}"
            )));
        }
        Ok(Self {
            kind: SetKind::Box { lo, hi },
            uniform_convexity: None,
            xi: 1.0,
        })
    }

    /// `[-half_width, half_width]^dim`.
    pub fn centered_box(dim: usize, half_width: f64) -> Result<Self> {
        Self::cuboid(
            Vector::filled(dim, -half_width),
            Vector::filled(dim, half_width),
        )
    }

    pub fn simplex(scale: f64, dim: usize) -> Result<Self> {
        positive("scale", scale)?;
        if !(1..=crate::linalg::MAX_DIM).contains(&dim) {
            return Err(OcoError::InvalidParameter(format!("dimension {dim}")));
        }
        Ok(Self {
            kind: SetKind::Simplex { scale, dim },
            uniform_convexity: None,
            xi: 1.0,
        })
    }

    pub fn kind(&self) -> &SetKind {
        &self.kind
    }

    pub fn uniform_convexity(&self) -> Option<UniformConvexity> {
        self.uniform_convexity
    }

    /// Norm-equivalence constant with `||x||_2 <= ξ ||x||` for the native norm.
    pub fn xi(&self) -> f64 {
        self.xi
    }

    pub fn dim(&self) -> usize {
        match &self.kind {
            SetKind::EuclideanBall { center, .. } => center.dim(),
            SetKind::AxisEllipsoid { semi_axes } => semi_axes.dim(),
            SetKind::LpBall { dim, .. } | SetKind::Simplex { dim, .. } => *dim,
            SetKind::Box { lo, .. } => lo.dim(),
        }
    }

    /// The set's native norm (`ℓp` for `ℓp` balls, `ℓ2` otherwise).
    pub fn native_norm(&self) -> NormTag {
        match self.kind {
            SetKind::LpBall { p, .. } if p != 2.0 => NormTag::Lp(p),
            _ => NormTag::L2,
        }
    }

    /// Short label used in CSV output.
    pub fn label(&self) -> String {
        match &self.kind {
            SetKind::EuclideanBall { radius, .. } => format!("ball(r={radius})"),
            SetKind::AxisEllipsoid { semi_axes } => {
                let axes: Vec<String> = semi_axes.iter().map(|a| a.to_string()).collect();
                format!("ellipsoid({})", axes.join(";"))
            }
            SetKind::LpBall { p, radius, dim } => format!("lp_ball(p={p};r={radius};d={dim})"),
            SetKind::Box { lo, hi } => {
                let lo: Vec<String> = lo.iter().map(|a| a.to_string()).collect();
                let hi: Vec<String> = hi.iter().map(|a| a.to_string()).collect();
                format!("box([{}];[{}])", lo.join(";"), hi.join(";"))
            }
            SetKind::Simplex { scale, dim } => format!("simplex(s={scale};d={dim})"),
        }
    }

    /// Ball/ellipsoid center, box midpoint, simplex barycenter.
    pub fn canonical_center(&self) -> Vector {
        match &self.kind {
            SetKind::EuclideanBall { center, .. } => *center,
            SetKind::AxisEllipsoid { semi_axes } => Vector::zeros(semi_axes.dim()),
            SetKind::LpBall { dim, .. } => Vector::zeros(*dim),
            SetKind::Box { lo, hi } => (*lo + *hi) * 0.5,
            SetKind::Simplex { scale, dim } => Vector::filled(*dim, scale / (*dim as f64 + 1.0)),
        }
    }

    /// Exact membership test (closed set, no tolerance).
    pub fn contains(&self, x: &Vector) -> Result<bool> {
        check_dim(self.dim(), x.dim())?;
        Ok(self.contains_unchecked(x))
    }

    pub(crate) fn contains_unchecked(&self, x: &Vector) -> bool {
        match &self.kind {
            SetKind::EuclideanBall { center, radius } => x.dist_sq(center) <= radius * radius,
            SetKind::AxisEllipsoid { semi_axes } => ellipsoid_level(semi_axes, x) <= 1.0,
            SetKind::LpBall { p, radius, .. } => x.norm_p(*p) <= *radius,
            SetKind::Box { lo, hi } => x
                .iter()
                .zip(lo.iter().zip(hi.iter()))
                .all(|(c, (l, h))| l <= c && c <= h),
            SetKind::Simplex { scale, .. } => {
                x.iter().all(|c| *c >= 0.0) && x.iter().sum::<f64>() <= *scale
            }
        }
    }

    /// Minkowski gauge around the canonical center; `K = { gauge <= 1 }`.
    pub fn gauge(&self, x: &Vector) -> f64 {
        match &self.kind {
            SetKind::EuclideanBall { center, radius } => x.dist(center) / radius,
            SetKind::AxisEllipsoid { semi_axes } => ellipsoid_level(semi_axes, x).sqrt(),
            SetKind::LpBall { p, radius, .. } => x.norm_p(*p) / radius,
            SetKind::Box { lo, hi } => x
                .iter()
                .zip(lo.iter().zip(hi.iter()))
                .map(|(c, (l, h))| (2.0 * c - l - h).abs() / (h - l))
                .fold(0.0, f64::max),
            SetKind::Simplex { scale, dim } => {
                let b = scale / (*dim as f64 + 1.0);
                let sum: f64 = x.iter().sum();
                x.iter()
                    .map(|c| (b - c) / b)
                    .fold((sum - *dim as f64 * b) / b, f64::max)
            }
        }
    }

    /// An outward (sub)gradient of the gauge at `x`.
    pub fn outward_normal(&self, x: &Vector) -> Vector {
        match &self.kind {
            SetKind::EuclideanBall { center, .. } => *x - *center,
            SetKind::AxisEllipsoid { semi_axes } => {
                let mut n = *x;
                for i in 0..n.dim() {
                    n[i] /= semi_axes[i] * semi_axes[i];
                }
                n
            }
            SetKind::LpBall { p, .. } => x.map(|c| c.signum() * c.abs().powf(p - 1.0)),
            SetKind::Box { lo, hi } => {
                let mut best = (0, f64::MIN);
                for i in 0..x.dim() {
                    let v = (2.0 * x[i] - lo[i] - hi[i]).abs() / (hi[i] - lo[i]);
                    if v > best.1 {
                        best = (i, v);
                    }
                }
                let mut n = Vector::zeros(x.dim());
                n[best.0] = (2.0 * x[best.0] - lo[best.0] - hi[best.0]).signum();
                n
            }
            SetKind::Simplex { scale, dim } => {
                let b = scale / (*dim as f64 + 1.0);
                let sum: f64 = x.iter().sum();
                let mut best = (None, (sum - *dim as f64 * b) / b);
                for i in 0..x.dim() {
                    let v = (b - x[i]) / b;
                    if v > best.1 {
                        best = (Some(i), v);
                    }
                }
                match best.0 {
                    Some(i) => -Vector::basis(x.dim(), i),
                    None => Vector::filled(x.dim(), 1.0),
                }
            }
        }
    }

    /// Boundary point reached from the canonical center along `direction`.
    pub fn boundary_point(&self, direction: &Vector) -> Vector {
        let c = self.canonical_center();
        let gauge = self.gauge(&(c + *direction));
        c + direction.scale(1.0 / gauge)
    }

    /// Largest `s >= 0` with `u + s·w ∈ K`, for `u ∈ K`.
    pub fn exit_distance(&self, u: &Vector, w: &Vector) -> f64 {
        let s = match &self.kind {
            SetKind::EuclideanBall { center, radius } => {
                let d = *u - *center;
                quadratic_exit(w.norm_sq(), d.dot(w), d.norm_sq() - radius * radius)
            }
            SetKind::AxisEllipsoid { semi_axes } => {
                let (mut a, mut b) = (0.0, 0.0);
                for i in 0..u.dim() {
                    let inv = 1.0 / (semi_axes[i] * semi_axes[i]);
                    a += w[i] * w[i] * inv;
                    b += u[i] * w[i] * inv;
                }
                quadratic_exit(a, b, ellipsoid_level(semi_axes, u) - 1.0)
            }
            SetKind::LpBall { p, radius, .. } => lp_exit(*p, *radius, u, w),
            SetKind::Box { lo, hi } => {
                let mut s = f64::INFINITY;
                for i in 0..u.dim() {
                    if w[i] > 0.0 {
                        s = s.min((hi[i] - u[i]) / w[i]);
                    } else if w[i] < 0.0 {
                        s = s.min((lo[i] - u[i]) / w[i]);
                    }
                }
                s
            }
            SetKind::Simplex { scale, .. } => {
                let mut s = f64::INFINITY;
                for i in 0..u.dim() {
                    if w[i] < 0.0 {
                        s = s.min(-u[i] / w[i]);
                    }
                }
                let rate: f64 = w.iter().sum();
                if rate > 0.0 {
                    s = s.min((scale - u.iter().sum::<f64>()) / rate);
                }
                s
            }
        };
        s.max(0.0)
    }

    /// `D = max_{x,y ∈ K} ||x − y||_2`, in closed form.
    pub fn diameter(&self) -> f64 {
        match &self.kind {
            SetKind::EuclideanBall { radius, .. } => 2.0 * radius,
            SetKind::AxisEllipsoid { semi_axes } => 2.0 * semi_axes.norm_inf(),
            SetKind::LpBall { p, radius, dim } => 2.0 * radius * max_l2_over_unit_lp(*p, *dim),
            SetKind::Box { lo, hi } => lo.dist(hi),
            SetKind::Simplex { scale, dim } => {
                if *dim == 1 {
                    *scale
                } else {
                    scale * std::f64::consts::SQRT_2
                }
            }
        }
    }

    /// `max_{x ∈ K} ||x||_2`.
    pub fn max_norm(&self) -> f64 {
        match &self.kind {
            SetKind::EuclideanBall { center, radius } => center.norm() + radius,
            SetKind::AxisEllipsoid { semi_axes } => semi_axes.norm_inf(),
            SetKind::LpBall { p, radius, dim } => radius * max_l2_over_unit_lp(*p, *dim),
            SetKind::Box { lo, hi } => lo
                .iter()
                .zip(hi.iter())
                .map(|(l, h)| l.abs().max(h.abs()).powi(2))
                .sum::<f64>()
                .sqrt(),
            SetKind::Simplex { scale, .. } => *scale,
        }
    }

    /// `sup_{x ∈ K} <v, x>`.
    pub fn support(&self, v: &Vector) -> f64 {
        v.dot(&self.linear_minimizer_unchecked(&-*v))
    }

    /// `argmin_{x ∈ K} <θ, x>`.
    ///
    /// Ties are broken toward the canonical center: `θ = 0` returns the
    /// center, and zero coordinates of `θ` on a box take the midpoint.
    pub fn linear_minimizer(&self, theta: &Vector) -> Result<Vector> {
        check_dim(self.dim(), theta.dim())?;
        if !theta.is_finite() {
            return Err(OcoError::NonFinite(format!("linear objective {theta}")));
        }
        Ok(self.linear_minimizer_unchecked(theta))
    }

    pub(crate) fn linear_minimizer_unchecked(&self, theta: &Vector) -> Vector {
        if theta.norm_inf() == 0.0 {
            return self.canonical_center();
        }
        let x = match &self.kind {
            SetKind::EuclideanBall { center, radius } => {
                center.axpy(-radius / theta.norm(), theta)
            }
            SetKind::AxisEllipsoid { semi_axes } => {
                let mut x = *theta;
                let mut s = 0.0;
                for i in 0..x.dim() {
                    let a2 = semi_axes[i] * semi_axes[i];
                    x[i] = -a2 * theta[i];
                    s += a2 * theta[i] * theta[i];
                }
                x.scale(1.0 / s.sqrt())
            }
            SetKind::LpBall { p, radius, dim } => {
                if *p == 1.0 {
                    let m = theta.norm_inf();
                    let ties: Vec<usize> = (0..*dim).filter(|&i| theta[i].abs() == m).collect();
                    let mut x = Vector::zeros(*dim);
                    for &i in &ties {
                        x[i] = -theta[i].signum() * radius / ties.len() as f64;
                    }
                    x
                } else {
                    let dual = p / (p - 1.0);
                    let m = theta.norm_inf();
                    let u = theta.map(|c| -c.signum() * (c.abs() / m).powf(dual - 1.0));
                    u.scale(radius / u.norm_p(*p))
                }
            }
            SetKind::Box { lo, hi } => {
                let mut x = *lo;
                for i in 0..x.dim() {
                    x[i] = if theta[i] > 0.0 {
                        lo[i]
                    } else if theta[i] < 0.0 {
                        hi[i]
                    } else {
                        0.5 * (lo[i] + hi[i])
                    };
                }
                x
            }
            SetKind::Simplex { scale, dim } => {
                let m = theta.iter().cloned().fold(f64::INFINITY, f64::min);
                let mut x = Vector::zeros(*dim);
                if m < 0.0 {
                    let ties: Vec<usize> = (0..*dim).filter(|&i| theta[i] == m).collect();
                    for &i in &ties {
                        x[i] = scale / ties.len() as f64;
                    }
                } else if m == 0.0 {
                    let b = scale / (*dim as f64 + 1.0);
                    for i in 0..*dim {
                        if theta[i] == 0.0 {
                            x[i] = b;
                        }
                    }
                }
                x
            }
        };
        self.pull_inside(x)
    }

    /// Euclidean projection `argmin_{x ∈ K} ||x − z||_2`.
    pub fn project(&self, z: &Vector) -> Result<Vector> {
        check_dim(self.dim(), z.dim())?;
        if !z.is_finite() {
            return Err(OcoError::NonFinite(format!("projection input {z}")));
        }
        if self.contains_unchecked(z) {
            return Ok(*z);
        }
        let x = project::project_outside(self, z)?;
        Ok(self.pull_inside(x))
    }

    /// Moves `x` toward the center by a few ulps until exact membership holds.
    pub(crate) fn pull_inside(&self, x: Vector) -> Vector {
        if self.contains_unchecked(&x) {
            return x;
        }
        let c = self.canonical_center();
        let mut shrink = f64::EPSILON;
        for _ in 0..64 {
            let y = c.axpy(1.0 - shrink, &(x - c));
            if self.contains_unchecked(&y) {
                return y;
            }
            shrink *= 2.0;
        }
        c
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(OcoError::InvalidParameter(format!(
            "{name} must be positive and finite, got {v}"
        )))
    }
}

#[inline]
fn ellipsoid_level(semi_axes: &Vector, x: &Vector) -> f64 {
    x.iter()
        .zip(semi_axes.iter())
        .map(|(c, a)| (c / a) * (c / a))
        .sum()
}

/// `max ||x||_2` over the unit `ℓp` ball in `dim` dimensions.
fn max_l2_over_unit_lp(p: f64, dim: usize) -> f64 {
    if p <= 2.0 {
        1.0
    } else {
        (dim as f64).powf(0.5 - 1.0 / p)
    }
}

/// Largest root of `a s² + 2 b s + c = 0` (with `c <= 0` for interior starts).
fn quadratic_exit(a: f64, b: f64, c: f64) -> f64 {
    if a <= 0.0 {
        return 0.0;
    }
    let disc = (b * b - a * c).max(0.0).sqrt();
    if b <= 0.0 {
        (disc - b) / a
    } else {
        // Stable form; equals -c / (disc + b).
        let denom = disc + b;
        if denom == 0.0 {
            0.0
        } else {
            -c / denom
        }
    }
}

/// Largest root of `||u + s w||_p = r` by Newton iteration from the right.
fn lp_exit(p: f64, radius: f64, u: &Vector, w: &Vector) -> f64 {
    let wn = w.norm_p(p);
    if wn == 0.0 {
        return 0.0;
    }
    let mut s = (radius + u.norm_p(p)) / wn * (1.0 + 1e-12) + 1e-300;
    for _ in 0..200 {
        let y = u.axpy(s, w);
        let ny = y.norm_p(p);
        let phi = ny - radius;
        if phi <= 0.0 {
            break;
        }
        let slope = if p == 1.0 {
            y.iter().zip(w.iter()).map(|(yi, wi)| yi.signum() * wi).sum::<f64>()
        } else {
            y.iter()
                .zip(w.iter())
                .map(|(yi, wi)| yi.signum() * (yi.abs() / ny).powf(p - 1.0) * wi)
                .sum::<f64>()
        };
        if slope <= 0.0 {
            return 0.0;
        }
        let step = phi / slope;
        s -= step;
        if s <= 0.0 {
            return 0.0;
        }
        if step <= 1e-15 * s {
            break;
        }
    }
    // Newton from the right can stop a hair outside; back off onto K.
    let mut y = u.axpy(s, w);
    let mut guard = 0;
    while y.norm_p(p) > radius && guard < 64 {
        s *= 1.0 - f64::EPSILON * (1u64 << guard.min(52)) as f64;
        y = u.axpy(s, w);
        guard += 1;
    }
    s
}

/// Minimum of `<grad, y − x>` over sampled boundary points `y`.
///
/// Nonnegative (up to sampling) when `x` is a first-order optimal point
/// for a loss with gradient `grad` at `x`.
pub fn first_order_slack(k: &FeasibleSet, x: &Vector, grad: &Vector, samples: usize) -> f64 {
    sample_boundary(k, samples, 0x5eed)
        .iter()
        .map(|y| grad.dot(&(*y - *x)))
        .fold(f64::INFINITY, f64::min)
}

/// Deterministic boundary samples: an angle grid in 2-D, Gaussian directions otherwise.
pub(crate) fn sample_boundary(k: &FeasibleSet, count: usize, seed: u64) -> Vec<Vector> {
    use rand::SeedableRng;
    use rand_distr::{Distribution, StandardNormal};
    let d = k.dim();
    match d {
        1 => vec![
            k.boundary_point(&Vector::from_slice(&[1.0])),
            k.boundary_point(&Vector::from_slice(&[-1.0])),
        ],
        2 => (0..count)
            .map(|i| {
                let a = std::f64::consts::TAU * (i as f64 + 0.5) / count as f64;
                k.boundary_point(&Vector::from_slice(&[a.cos(), a.sin()]))
            })
            .collect(),
        _ => {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            (0..count)
                .map(|_| {
                    let mut w = Vector::zeros(d);
                    for i in 0..d {
                        w[i] = StandardNormal.sample(&mut rng);
                    }
                    k.boundary_point(&w)
                })
                .collect()
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
    fn contains_examples() {
        let w = FeasibleSet::w_lambda(0.5).unwrap();
        assert!(w.contains(&v(&[0.5, 0.25])).unwrap());
        assert!(FeasibleSet::unit_ball(2).contains(&v(&[1.0, 0.0])).unwrap());
        let b = FeasibleSet::centered_box(2, 1.0).unwrap();
        assert!(!b.contains(&v(&[0.0, 1.5])).unwrap());
    }

    #[test]
    fn contains_rejects_dimension_mismatch() {
        let b = FeasibleSet::unit_ball(2);
        assert!(matches!(
            b.contains(&v(&[0.0, 0.0, 0.0])),
            Err(OcoError::DimensionMismatch { expected: 2, got: 3 })
        ));
    }

    #[test]
    fn invalid_parameters_are_rejected() {
        assert!(FeasibleSet::ball(v(&[0.0]), 0.0).is_err());
        assert!(FeasibleSet::ellipsoid(v(&[1.0, -1.0])).is_err());
        assert!(FeasibleSet::cuboid(v(&[0.0, 1.0]), v(&[1.0, 1.0])).is_err());
        assert!(FeasibleSet::lp_ball(0.5, 1.0, 2).is_err());
        assert!(FeasibleSet::simplex(-1.0, 3).is_err());
        assert!(FeasibleSet::w_lambda(1.0).is_err());
    }

    #[test]
    fn projection_examples() {
        let ball = FeasibleSet::unit_ball(2);
        let p = ball.project(&v(&[3.0, 4.0])).unwrap();
        assert!((p[0] - 0.6).abs() < 1e-15 && (p[1] - 0.8).abs() < 1e-15);

        let w = FeasibleSet::w_lambda(0.5).unwrap();
        let p = w.project(&v(&[0.0, 2.0])).unwrap();
        assert!(p[0].abs() < 1e-12 && (p[1] - 0.5).abs() < 1e-12, "{p}");

        let lp = FeasibleSet::lp_ball(4.0, 1.0, 2).unwrap();
        let p = lp.project(&v(&[2.0, 0.0])).unwrap();
        assert!((p[0] - 1.0).abs() < 1e-12 && p[1].abs() < 1e-12, "{p}");
    }

    #[test]
    fn linear_minimizer_examples() {
        let ball = FeasibleSet::unit_ball(2);
        let x = ball.linear_minimizer(&v(&[3.0, 4.0])).unwrap();
        assert!((x[0] + 0.6).abs() < 1e-15 && (x[1] + 0.8).abs() < 1e-15);

        let e = FeasibleSet::ellipsoid(v(&[1.0, 0.5])).unwrap();
        let x = e.linear_minimizer(&v(&[0.0, 1.0])).unwrap();
        assert!(x[0].abs() < 1e-15 && (x[1] + 0.5).abs() < 1e-15);

        let s = FeasibleSet::simplex(1.0, 3).unwrap();
        let x = s.linear_minimizer(&v(&[0.2, -1.0, 3.0])).unwrap();
        assert_eq!(x, v(&[0.0, 1.0, 0.0]));
    }

    #[test]
    fn linear_minimizer_zero_objective_returns_center() {
        for k in [
            FeasibleSet::unit_ball(2),
            FeasibleSet::w_lambda(0.3).unwrap(),
            FeasibleSet::cuboid(v(&[0.0, 0.0]), v(&[2.0, 4.0])).unwrap(),
            FeasibleSet::simplex(1.0, 3).unwrap(),
            FeasibleSet::lp_ball(3.0, 1.0, 2).unwrap(),
        ] {
            let zero = Vector::zeros(k.dim());
            assert_eq!(k.linear_minimizer(&zero).unwrap(), k.canonical_center());
        }
    }

    #[test]
    fn box_facet_tie_break_is_facet_point_nearest_center() {
        let b = FeasibleSet::centered_box(2, 1.0).unwrap();
        assert_eq!(b.linear_minimizer(&v(&[0.0, -0.1])).unwrap(), v(&[0.0, 1.0]));
    }

    #[test]
    fn diameter_examples() {
        assert_eq!(FeasibleSet::w_lambda(0.5).unwrap().diameter(), 2.0);
        assert_eq!(FeasibleSet::lp_ball(4.0, 1.0, 1).unwrap().diameter(), 2.0);
        let d2 = FeasibleSet::lp_ball(4.0, 1.0, 2).unwrap().diameter();
        assert!((d2 - 2.0 * 2f64.powf(0.25)).abs() < 1e-15);
        let cube = FeasibleSet::cuboid(Vector::zeros(3), Vector::filled(3, 1.0)).unwrap();
        assert!((cube.diameter() - 3f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn lp_metadata_matches_closed_form() {
        let k = FeasibleSet::lp_ball(4.0, 1.0, 2).unwrap();
        let uc = k.uniform_convexity().unwrap();
        assert_eq!((uc.kappa, uc.q), (0.25, 4.0));
        assert!((k.xi() - 2f64.powf(0.25)).abs() < 1e-15);
        assert!(FeasibleSet::lp_ball(1.5, 1.0, 2).unwrap().uniform_convexity().is_none());
    }

    #[test]
    fn exit_distance_from_center_reaches_boundary() {
        let k = FeasibleSet::lp_ball(3.0, 1.0, 2).unwrap();
        let w = v(&[0.6, 0.8]);
        let s = k.exit_distance(&Vector::zeros(2), &w);
        assert!((w.scale(s).norm_p(3.0) - 1.0).abs() < 1e-12);
        assert!(k.contains(&w.scale(s)).unwrap());
    }

    #[test]
    fn gauge_is_one_on_boundary_points() {
        for k in [
            FeasibleSet::ball(v(&[1.0, -1.0]), 2.0).unwrap(),
            FeasibleSet::w_lambda(0.25).unwrap(),
            FeasibleSet::cuboid(v(&[-1.0, 0.0]), v(&[3.0, 1.0])).unwrap(),
            FeasibleSet::simplex(2.0, 2).unwrap(),
            FeasibleSet::lp_ball(4.0, 1.5, 2).unwrap(),
        ] {
            for y in sample_boundary(&k, 64, 1) {
                assert!((k.gauge(&y) - 1.0).abs() < 1e-12, "{} {y}", k.label());
            }
        }
    }
}
