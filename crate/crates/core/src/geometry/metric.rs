//! Exact Mahalanobis projections onto sets `{ x : Σ w_i |x_i − c_i|^p <= 1 }`.
//!
//! The minimizer of `(x − z)ᵀM(x − z) + μ h(x)` moves monotonically into the
//! set as `μ` grows, so the projection is `x(μ)` at the root of `h(x(μ)) = 1`.
//! For `p = 2` that root is a trust-region secular equation in the
//! eigenbasis of the rescaled metric.

use super::fw::FwOutcome;
use super::project::secular_root;
use super::{FeasibleSet, SetKind};
use crate::linalg::{pow_abs, Matrix, Vector};

const OUTER_ITERS: usize = 200;
const NEWTON_ITERS: usize = 60;

struct Separable {
    p: f64,
    c: Vector,
    w: Vector,
}

impl Separable {
    fn of(k: &FeasibleSet) -> Option<Self> {
        let d = k.dim();
        match *k.kind() {
            SetKind::EuclideanBall { center, radius } => Some(Self {
                p: 2.0,
                c: center,
                w: Vector::filled(d, 1.0 / (radius * radius)),
            }),
            SetKind::AxisEllipsoid { semi_axes } => Some(Self {
                p: 2.0,
                c: Vector::zeros(d),
                w: semi_axes.map(|a| 1.0 / (a * a)),
            }),
            SetKind::LpBall { p, radius, .. } if p >= 2.0 => Some(Self {
                p,
                c: Vector::zeros(d),
                w: Vector::filled(d, radius.powf(-p)),
            }),
            _ => None,
        }
    }

    fn h(&self, x: &Vector) -> f64 {
        let mut s = 0.0;
        for i in 0..x.dim() {
            s += self.w[i] * pow_abs(x[i] - self.c[i], self.p);
        }
        s
    }

    /// `p = 2`: with `s = √w`, `y = s ⊙ (x − c)` and `M' = S⁻¹MS⁻¹ = QΛQᵀ`,
    /// `y(μ) = Q (Λ + μ)⁻¹ Λ Qᵀ y_z`.
    fn quadratic(&self, k: &FeasibleSet, z: &Vector, m: &Matrix) -> Option<Vector> {
        let d = z.dim();
        let s = self.w.map(f64::sqrt);
        let mut scaled = m.clone();
        for i in 0..d {
            for j in 0..d {
                scaled.set(i, j, m.get(i, j) / (s[i] * s[j]));
            }
        }
        let (lam, q) = scaled.symmetric_eigen();
        if lam.iter().any(|l| !(*l > 0.0)) {
            return None;
        }
        let mut yz = *z;
        for i in 0..d {
            yz[i] = s[i] * (z[i] - self.c[i]);
        }
        let mut c = Vector::zeros(d);
        for j in 0..d {
            let mut b = 0.0;
            for i in 0..d {
                b += q.get(i, j) * yz[i];
            }
            c[j] = lam[j] * b;
        }
        let mu = secular_root(&c, &lam).ok()?;
        let mut y = Vector::zeros(d);
        for j in 0..d {
            let coef = c[j] / (lam[j] + mu);
            for i in 0..d {
                y[i] += q.get(i, j) * coef;
            }
        }
        let norm = y.norm();
        if norm > 1.0 {
            y = y.scale(1.0 / norm);
        }
        let mut x = self.c;
        for i in 0..d {
            x[i] += y[i] / s[i];
        }
        Some(k.pull_inside(x))
    }

    /// Newton on `2M(x − z) + μ∇h(x) = 0`, `h(x) = 1` from a point near the
    /// boundary. `None` if it does not settle, so the caller can fall back
    /// to the bracketed search.
    fn kkt_newton(&self, m: &Matrix, mz: &Vector, z: &Vector, x0: &Vector) -> Option<(Vector, usize)> {
        let d = z.dim();
        let p = self.p;
        let mut x = *x0;
        let mut mu = f64::NAN;
        for it in 0..40 {
            let mut grad_h = Vector::zeros(d);
            let mut curv = Vector::zeros(d);
            let mut r0 = -1.0;
            for i in 0..d {
                let r = x[i] - self.c[i];
                let a_pm2 = pow_abs(r, p - 2.0);
                grad_h[i] = p * self.w[i] * a_pm2 * r;
                curv[i] = p * (p - 1.0) * self.w[i] * a_pm2;
                r0 += self.w[i] * a_pm2 * r * r;
            }
            let pull = (m.mul_vec(&x) - *mz).scale(2.0);
            if it == 0 {
                // Least-squares multiplier for the starting point.
                mu = (-pull.dot(&grad_h) / grad_h.norm_sq()).max(0.0);
                if !mu.is_finite() {
                    return None;
                }
            }
            let r = pull.axpy(mu, &grad_h);
            // H = 2M + μ diag(curv); solve with M + μ curv / 2 and halve.
            let shift = curv.scale(0.5 * mu);
            let h_inv_r = m.solve_spd_shifted(&shift, &r)?.scale(0.5);
            let h_inv_g = m.solve_spd_shifted(&shift, &grad_h)?.scale(0.5);
            let den = grad_h.dot(&h_inv_g);
            if !(den > 0.0) {
                return None;
            }
            let dmu = (r0 - grad_h.dot(&h_inv_r)) / den;
            let dx = (h_inv_r + h_inv_g.scale(dmu)).scale(-1.0);
            x += dx;
            mu += dmu;
            if !(x.is_finite() && mu.is_finite() && mu >= 0.0) {
                return None;
            }
            if dx.norm_inf() <= 8.0 * f64::EPSILON * (1.0 + x.norm_inf()) && r0.abs() <= 1e-12 {
                return Some((x, it + 1));
            }
        }
        None
    }

    /// `argmin (x − z)ᵀM(x − z) + μ h(x)`, warm-started at `x0`.
    fn penalized(&self, m: &Matrix, mz: &Vector, z: &Vector, mu: f64, x0: &Vector) -> Option<Vector> {
        let d = z.dim();
        if self.p == 2.0 {
            let shift = self.w.scale(mu);
            let mut rhs = *mz;
            for i in 0..d {
                rhs[i] += shift[i] * self.c[i];
            }
            return m.solve_spd_shifted(&shift, &rhs);
        }
        let p = self.p;
        let objective = |x: &Vector| m.quad_form(&(*x - *z)) + mu * self.h(x);
        let mut x = *x0;
        let mut fx = objective(&x);
        for _ in 0..NEWTON_ITERS {
            let mut grad = (m.mul_vec(&x) - *mz).scale(2.0);
            let mut curv = Vector::zeros(d);
            for i in 0..d {
                let r = x[i] - self.c[i];
                let a_pm2 = pow_abs(r, p - 2.0);
                grad[i] += mu * p * self.w[i] * a_pm2 * r;
                curv[i] = mu * p * (p - 1.0) * self.w[i] * a_pm2;
            }
            // Hessian 2M + diag(curv): solve (M + curv/2) s = grad/2.
            let step = m.solve_spd_shifted(&curv.scale(0.5), &grad.scale(0.5))?;
            let decrement = grad.dot(&step);
            if !(decrement > 1e-30 * (1.0 + fx.abs())) {
                break;
            }
            // Near the optimum the Armijo test drowns in rounding; take
            // full steps there.
            if decrement < 1e-9 * (1.0 + fx.abs()) {
                x = x.axpy(-1.0, &step);
                fx = objective(&x);
                if step.norm_inf() <= 1e-16 * (1.0 + x.norm_inf()) {
                    break;
                }
                continue;
            }
            let mut t = 1.0;
            let mut accepted = false;
            for _ in 0..60 {
                let cand = x.axpy(-t, &step);
                let fc = objective(&cand);
                if fc <= fx - 0.25 * t * decrement {
                    x = cand;
                    fx = fc;
                    accepted = true;
                    break;
                }
                t *= 0.5;
            }
            if !accepted || step.norm_inf() * t <= 1e-16 * (1.0 + x.norm_inf()) {
                break;
            }
        }
        Some(x)
    }
}

/// Exact projection for balls, axis ellipsoids and `ℓp` balls with `p >= 2`.
/// Returns `None` for other kinds or if the metric is not positive definite.
pub(crate) fn separable_project(
    k: &FeasibleSet,
    z: &Vector,
    m: &Matrix,
    start: Option<&Vector>,
) -> Option<FwOutcome> {
    let sep = Separable::of(k)?;
    let mz = m.mul_vec(z);
    let mut x_lo = *z;
    let mut f_lo = sep.h(z) - 1.0;
    if f_lo <= 0.0 {
        return Some(FwOutcome {
            point: *z,
            gap: 0.0,
            iterations: 0,
            converged: true,
        });
    }
    if sep.p == 2.0 {
        let point = sep.quadratic(k, z, m)?;
        return Some(outcome(k, m, &mz, point, 1, true));
    }
    let x0 = match start {
        Some(s) if sep.h(s) > 0.5 => *s,
        _ => k.project(z).ok()?,
    };
    if let Some((x, iterations)) = sep.kkt_newton(m, &mz, z, &x0) {
        return Some(outcome(k, m, &mz, k.pull_inside(x), iterations, true));
    }
    let (mut lo, mut hi) = (0.0, 1.0);
    let mut x_hi = sep.penalized(m, &mz, z, hi, &sep.c)?;
    let mut f_hi = sep.h(&x_hi) - 1.0;
    let mut iterations = 1;
    while f_hi > 0.0 {
        lo = hi;
        x_lo = x_hi;
        f_lo = f_hi;
        hi *= 4.0;
        x_hi = sep.penalized(m, &mz, z, hi, &x_hi)?;
        f_hi = sep.h(&x_hi) - 1.0;
        iterations += 1;
        if !hi.is_finite() {
            return None;
        }
    }
    // Illinois regula falsi on the bracket [lo, hi].
    let mut side = 0i8;
    let mut converged = f_hi == 0.0;
    let mut last = x_hi;
    while !converged && iterations < OUTER_ITERS {
        iterations += 1;
        let mut mu = (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
        if !(mu > lo && mu < hi) {
            mu = 0.5 * (lo + hi);
        }
        let warm = if f_lo.abs() < f_hi.abs() { x_lo } else { x_hi };
        let x = sep.penalized(m, &mz, z, mu, &warm)?;
        let f = sep.h(&x) - 1.0;
        last = x;
        if f > 0.0 {
            lo = mu;
            x_lo = x;
            f_lo = f;
            if side == -1 {
                f_hi *= 0.5;
            }
            side = -1;
        } else {
            hi = mu;
            x_hi = x;
            f_hi = f;
            if side == 1 {
                f_lo *= 0.5;
            }
            side = 1;
        }
        converged = f.abs() <= 1e-14 || hi - lo <= 1e-15 * hi;
    }
    let point = if converged { last } else { x_hi };
    Some(outcome(k, m, &mz, k.pull_inside(point), iterations, converged))
}

fn outcome(k: &FeasibleSet, m: &Matrix, mz: &Vector, point: Vector, iterations: usize, converged: bool) -> FwOutcome {
    let grad = (m.mul_vec(&point) - *mz).scale(2.0);
    let s = k.linear_minimizer_unchecked(&grad);
    FwOutcome {
        point,
        gap: grad.dot(&(point - s)).max(0.0),
        iterations,
        converged,
    }
}
