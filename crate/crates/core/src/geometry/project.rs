//! Euclidean projections for points outside the set.

use super::{FeasibleSet, SetKind};
use crate::linalg::{pow_abs, Vector};
use crate::{OcoError, Result};

const KKT_TOL: f64 = 1e-8;
const MAX_ITERS: usize = 200;

pub(super) fn project_outside(k: &FeasibleSet, z: &Vector) -> Result<Vector> {
    match k.kind() {
        SetKind::EuclideanBall { center, radius } => {
            let d = *z - *center;
            Ok(center.axpy(radius / d.norm(), &d))
        }
        SetKind::AxisEllipsoid { semi_axes } => ellipsoid(semi_axes, z),
        SetKind::LpBall { p, radius, .. } => {
            if *p == 2.0 {
                Ok(z.scale(radius / z.norm()))
            } else if *p == 1.0 {
                Ok(l1_ball(z, *radius))
            } else {
                lp_ball(*p, *radius, z)
            }
        }
        SetKind::Box { lo, hi } => {
            let mut x = *z;
            for i in 0..x.dim() {
                x[i] = x[i].clamp(lo[i], hi[i]);
            }
            Ok(x)
        }
        SetKind::Simplex { scale, .. } => {
            let clipped = z.map(|c| c.max(0.0));
            if clipped.iter().sum::<f64>() <= *scale {
                Ok(clipped)
            } else {
                Ok(capped_simplex(z, *scale))
            }
        }
    }
}

/// The root `μ >= 0` of `Σ c_i² / (λ_i + μ)² = 1`, given `λ_i > 0` and a
/// value above 1 at `μ = 0`.
///
/// Newton on `1/√S(μ) − 1`, which is concave and increasing, so the
/// iterates climb monotonically to the root.
pub(super) fn secular_root(c: &Vector, lam: &Vector) -> Result<f64> {
    let eval = |mu: f64| -> (f64, f64) {
        let mut s = 0.0;
        let mut ds = 0.0;
        for i in 0..c.dim() {
            let r = c[i] / (lam[i] + mu);
            s += r * r;
            ds -= 2.0 * r * r / (lam[i] + mu);
        }
        (s, ds)
    };
    let mut mu = 0.0;
    for _ in 0..MAX_ITERS {
        let (s, ds) = eval(mu);
        if s <= 1.0 {
            return Ok(mu);
        }
        let phi = 1.0 / s.sqrt();
        let dphi = -0.5 * ds / (s * s.sqrt());
        let step = (1.0 - phi) / dphi;
        if !(step.is_finite() && step >= 0.0) {
            break;
        }
        let next = mu + step;
        if next <= mu * (1.0 + 4.0 * f64::EPSILON) {
            return Ok(next);
        }
        mu = next;
    }
    Err(OcoError::NonConvergence {
        what: "secular equation",
        residual: eval(mu).0 - 1.0,
    })
}

/// `x_i = a_i² z_i / (a_i² + μ)` at the root of `Σ a_i² z_i² / (a_i² + μ)² = 1`.
fn ellipsoid(semi_axes: &Vector, z: &Vector) -> Result<Vector> {
    let a2 = semi_axes.map(|a| a * a);
    let mut c = *z;
    for i in 0..c.dim() {
        c[i] *= semi_axes[i];
    }
    let mu = secular_root(&c, &a2)?;
    let mut x = *z;
    let mut level = 0.0;
    for i in 0..x.dim() {
        x[i] = a2[i] * z[i] / (a2[i] + mu);
        level += x[i] * x[i] / a2[i];
    }
    // The Newton iterate can sit a rounding error outside.
    if level > 1.0 {
        x = x.scale(1.0 / level.sqrt());
    }
    Ok(x)
}

/// Projection onto `{ x >= 0 : Σ x = scale }` (sort-based).
pub(super) fn capped_simplex(z: &Vector, scale: f64) -> Vector {
    let mut sorted: Vec<f64> = z.to_vec();
    sorted.sort_by(|a, b| b.partial_cmp(a).expect("finite"));
    let mut cumulative = 0.0;
    let mut tau = 0.0;
    for (j, s) in sorted.iter().enumerate() {
        cumulative += s;
        let candidate = (cumulative - scale) / (j as f64 + 1.0);
        if s - candidate > 0.0 {
            tau = candidate;
        }
    }
    z.map(|c| (c - tau).max(0.0))
}

fn l1_ball(z: &Vector, radius: f64) -> Vector {
    let abs = z.map(f64::abs);
    let proj = capped_simplex(&abs, radius);
    let mut x = proj;
    for i in 0..x.dim() {
        x[i] *= z[i].signum();
    }
    x
}

/// `ℓp` projection for `p ∉ {1, 2}` through the KKT system
/// `x_i + μ p x_i^{p−1} = |z_i|`, `Σ x_i^p = r^p`.
fn lp_ball(p: f64, radius: f64, z: &Vector) -> Result<Vector> {
    // Work on the unit ball and rescale at the end.
    let y = z.map(|c| c.abs() / radius);
    let (x, mu) = match (p >= 2.0).then(|| lp_kkt_newton(p, &y)).flatten() {
        Some(found) => found,
        None => lp_bracketed(p, &y)?,
    };
    // KKT certificate on the unit-ball problem.
    let primal = (x.norm_p(p) - 1.0).abs();
    let stationarity = (0..y.dim())
        .map(|i| (x[i] + mu * p * pow_abs(x[i], p - 1.0) - y[i]).abs())
        .fold(0.0, f64::max);
    let residual = primal.max(stationarity);
    if residual > KKT_TOL {
        return Err(OcoError::NonConvergence {
            what: "lp projection",
            residual,
        });
    }
    let mut out = x.scale(radius);
    for i in 0..out.dim() {
        out[i] *= z[i].signum();
    }
    Ok(out)
}

/// Newton on the joint system `x + μ q(x) = y`, `Σ x^p = 1` with
/// `q = p x^{p−1}`, started from the radial point. The Jacobian is an
/// arrowhead, so each step costs `O(d)`. `None` if it does not settle.
fn lp_kkt_newton(p: f64, y: &Vector) -> Option<(Vector, f64)> {
    let d = y.dim();
    let mut x = y.scale(1.0 / y.norm_p(p));
    let mut q = Vector::zeros(d);
    for i in 0..d {
        q[i] = p * pow_abs(x[i], p - 1.0);
    }
    let qq = q.norm_sq();
    let mut mu = ((*y - x).dot(&q) / qq).max(0.0);
    for _ in 0..50 {
        let mut r = Vector::zeros(d);
        let mut diag = Vector::zeros(d);
        let mut r0 = -1.0;
        let mut worst: f64 = 0.0;
        for i in 0..d {
            let xp2 = pow_abs(x[i], p - 2.0);
            let xp1 = xp2 * x[i];
            q[i] = p * xp1;
            r[i] = x[i] + mu * q[i] - y[i];
            diag[i] = 1.0 + mu * p * (p - 1.0) * xp2;
            r0 += xp1 * x[i];
            worst = worst.max(r[i].abs());
        }
        worst = worst.max(r0.abs());
        if worst <= 1e-15 {
            return Some((x, mu));
        }
        let mut num = r0;
        let mut den = 0.0;
        for i in 0..d {
            num -= q[i] * r[i] / diag[i];
            den += q[i] * q[i] / diag[i];
        }
        if !(den > 0.0) {
            return None;
        }
        let dmu = num / den;
        let mut dx = Vector::zeros(d);
        let mut t: f64 = 1.0;
        for i in 0..d {
            dx[i] = -(r[i] + q[i] * dmu) / diag[i];
            if dx[i] < 0.0 && x[i] > 0.0 {
                t = t.min(0.9 * x[i] / -dx[i]);
            }
        }
        x = x.axpy(t, &dx).map(|c| c.max(0.0));
        mu += t * dmu;
        if !(mu >= 0.0 && x.is_finite()) {
            return None;
        }
    }
    None
}

/// Multiplier search with per-coordinate Newton, for any `p > 1`.
fn lp_bracketed(p: f64, y: &Vector) -> Result<(Vector, f64)> {
    let y = *y;
    let total = |mu: f64| -> (f64, f64, Vector) {
        // Returns (Σ x^p − 1, d/dμ Σ x^p, x).
        let mut x = y;
        let mut sum = 0.0;
        let mut deriv = 0.0;
        for i in 0..y.dim() {
            let xi = coordinate(p, mu, y[i]);
            x[i] = xi;
            if xi > 0.0 {
                let xp2 = pow_abs(xi, p - 2.0);
                let xp1 = xp2 * xi;
                sum += xp1 * xi;
                let dx = -p * xp1 / (1.0 + mu * p * (p - 1.0) * xp2);
                deriv += p * xp1 * dx;
            }
        }
        (sum - 1.0, deriv, x)
    };

    // Bracket μ: F(0) > 0 because z is outside.
    let mut lo = 0.0;
    let mut hi = 1.0;
    while total(hi).0 > 0.0 {
        lo = hi;
        hi *= 4.0;
        if hi > 1e300 {
            return Err(OcoError::NonConvergence {
                what: "lp projection bracket",
                residual: f64::INFINITY,
            });
        }
    }
    let mut mu = 0.5 * (lo + hi);
    let mut x = y;
    for _ in 0..MAX_ITERS {
        let (f, df, xs) = total(mu);
        x = xs;
        if f.abs() <= 1e-15 {
            break;
        }
        if f > 0.0 {
            lo = mu;
        } else {
            hi = mu;
        }
        let newton = if df < 0.0 { mu - f / df } else { f64::NAN };
        mu = if newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if hi - lo <= 1e-16 * hi {
            let (_, _, xs) = total(hi);
            x = xs;
            mu = hi;
            break;
        }
    }
    Ok((x, mu))
}

/// Root of `x + μ p x^{p−1} = y` on `[0, y]`, safeguarded Newton.
fn coordinate(p: f64, mu: f64, y: f64) -> f64 {
    if y == 0.0 {
        return 0.0;
    }
    if mu == 0.0 {
        return y;
    }
    let h = |x: f64| x + mu * p * pow_abs(x, p - 1.0) - y;
    let (mut lo, mut hi) = (0.0, y);
    // Start from the right end for p > 2 (h convex), else the midpoint.
    let mut x = if p > 2.0 { y } else { 0.5 * y };
    for _ in 0..100 {
        let hx = h(x);
        if hx > 0.0 {
            hi = x;
        } else {
            lo = x;
        }
        let dh = 1.0 + mu * p * (p - 1.0) * pow_abs(x, p - 2.0);
        let next = x - hx / dh;
        let next = if next > lo && next < hi && dh.is_finite() {
            next
        } else {
            0.5 * (lo + hi)
        };
        if (next - x).abs() <= 4.0 * f64::EPSILON * y {
            return next;
        }
        x = next;
    }
    x
}
