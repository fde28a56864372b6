//! Smallest sphere through a boundary point that encloses `K` and whose
//! center lies along a given direction, and the matching constant `γ★`.
//!
//! For an anchor `u ∈ bd(K)` and unit direction `ĝ`, a ball centered at
//! `u + rĝ` with radius `r` contains `x` iff `||x−u||² <= 2r<ĝ, x−u>`. The
//! smallest such `r` is the supremum of `||x−u||² / (2<ĝ, x−u>)` over `K`.
//! Along a ray `u + s·w` the ratio grows with `s`, so it suffices to scan
//! unit directions `w` into the half-space `<ĝ, w> > 0` and use the exit
//! distance `s(w)`: the ratio becomes `s(w) / (2<ĝ, w>)`.
//!
//! The scan is a 4096-angle grid with golden-section refinement in 2-D and
//! 65536 random directions with 64 Nelder–Mead refinements above that. The
//! supremum on curved boundaries is typically approached only in the
//! tangent limit, so the 2-D grid includes directions within `1e-12` rad
//! of the tangent line.

use rand::SeedableRng;
use rand_distr::{Distribution, StandardNormal};

use super::{sample_boundary, FeasibleSet, SetKind};
use crate::linalg::Vector;
use crate::{check_dim, OcoError, Result};

const GRID_2D: usize = 4096;
const RANDOM_DIRECTIONS: usize = 65536;
const REFINEMENTS: usize = 64;
const TANGENT_EDGE: f64 = 1e-12;
const BOUNDARY_TOL: f64 = 1e-9;
/// Ratios beyond `DIVERGENCE_FACTOR · diam` count as a divergent supremum.
pub const DIVERGENCE_FACTOR: f64 = 1e6;
const SEARCH_SEED: u64 = 0x00c0_ffee;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereFacing {
    pub center: Vector,
    pub radius: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SphereFit {
    Enclosed(SphereFacing),
    /// The defining supremum diverges (e.g. the anchor lies inside a facet).
    NotSphereEnclosed { ratio: f64 },
}

impl SphereFit {
    pub fn sphere(&self) -> Option<&SphereFacing> {
        match self {
            SphereFit::Enclosed(s) => Some(s),
            SphereFit::NotSphereEnclosed { .. } => None,
        }
    }
}

/// Smallest sphere through `u` enclosing `K` with center on the ray `u + r·g`.
pub fn min_enclosing_sphere_facing(k: &FeasibleSet, u: &Vector, g: &Vector) -> Result<SphereFit> {
    let ghat = check_anchor(k, u, g)?;
    let sup = search_max(k, u, &ghat, |w, s| {
        let c = ghat.dot(w);
        if c > 0.0 {
            s / (2.0 * c)
        } else {
            0.0
        }
    });
    if !(sup <= DIVERGENCE_FACTOR * k.diameter()) {
        return Ok(SphereFit::NotSphereEnclosed { ratio: sup });
    }
    Ok(SphereFit::Enclosed(SphereFacing {
        center: u.axpy(sup, &ghat),
        radius: sup,
    }))
}

/// `γ★ = inf_{x ∈ K, x ≠ x★} <grad, x − x★> / ||x − x★||²`; zero when `K` is
/// not sphere-enclosed facing `x★`.
pub fn gamma_star(k: &FeasibleSet, x_star: &Vector, grad: &Vector) -> Result<f64> {
    let ghat = check_anchor(k, x_star, grad)?;
    let gnorm = grad.norm();
    // Maximize the negated ratio <grad, w>/s(w) over ray directions.
    let best = search_max(k, x_star, &ghat, |w, s| {
        if s > 0.0 {
            -gnorm * ghat.dot(w) / s
        } else {
            f64::NEG_INFINITY
        }
    });
    let gamma = -best;
    let floor = gnorm / (2.0 * DIVERGENCE_FACTOR * k.diameter());
    Ok(if gamma.is_finite() && gamma >= floor {
        gamma
    } else {
        0.0
    })
}

fn check_anchor(k: &FeasibleSet, u: &Vector, g: &Vector) -> Result<Vector> {
    check_dim(k.dim(), u.dim())?;
    check_dim(k.dim(), g.dim())?;
    let ghat = g
        .normalized()
        .ok_or_else(|| OcoError::Precondition("direction g must be nonzero and finite".into()))?;
    let gauge = k.gauge(u);
    if (gauge - 1.0).abs() > BOUNDARY_TOL {
        return Err(OcoError::Precondition(format!(
            "anchor {u} is not on the boundary (gauge {gauge})"
        )));
    }
    let count = if k.dim() == 2 { GRID_2D } else { RANDOM_DIRECTIONS / 16 };
    for y in sample_boundary(k, count, SEARCH_SEED) {
        let side = ghat.dot(&(y - *u));
        if side < -BOUNDARY_TOL {
            return Err(OcoError::Precondition(format!(
                "direction {g} does not face K from {u}: <g, y − u> = {side:e} at y = {y}"
            )));
        }
    }
    Ok(ghat)
}

/// Exit distance for rays leaving an anchor that sits on the boundary.
fn anchored_exit(k: &FeasibleSet, u: &Vector, w: &Vector) -> f64 {
    match k.kind() {
        // Treat the anchor as exactly on the quadric: s = −2b/a.
        SetKind::EuclideanBall { center, .. } => {
            let b = (*u - *center).dot(w);
            (-2.0 * b / w.norm_sq()).max(0.0)
        }
        SetKind::AxisEllipsoid { semi_axes } => {
            let (mut a, mut b) = (0.0, 0.0);
            for i in 0..u.dim() {
                let inv = 1.0 / (semi_axes[i] * semi_axes[i]);
                a += w[i] * w[i] * inv;
                b += u[i] * w[i] * inv;
            }
            (-2.0 * b / a).max(0.0)
        }
        _ => k.exit_distance(u, w),
    }
}

/// Maximizes `objective(w, s(w))` over unit directions with `<ĝ, w> > 0`.
fn search_max(
    k: &FeasibleSet,
    u: &Vector,
    ghat: &Vector,
    objective: impl Fn(&Vector, f64) -> f64,
) -> f64 {
    let eval = |w: &Vector| objective(w, anchored_exit(k, u, w));
    match k.dim() {
        1 => eval(ghat),
        2 => {
            let perp = Vector::from_slice(&[-ghat[1], ghat[0]]);
            let dir = |psi: f64| ghat.scale(psi.cos()).axpy(psi.sin(), &perp);
            let f = |psi: f64| eval(&dir(psi));
            let lo = -std::f64::consts::FRAC_PI_2 + TANGENT_EDGE;
            let hi = std::f64::consts::FRAC_PI_2 - TANGENT_EDGE;
            let step = (hi - lo) / (GRID_2D - 1) as f64;
            let angle = |i: usize| if i == GRID_2D - 1 { hi } else { lo + i as f64 * step };
            let (mut best_i, mut best) = (0, f64::NEG_INFINITY);
            for i in 0..GRID_2D {
                let v = f(angle(i));
                if v > best {
                    best = v;
                    best_i = i;
                }
            }
            let a = angle(best_i.saturating_sub(1));
            let b = angle((best_i + 1).min(GRID_2D - 1));
            best.max(golden_max(&f, a, b))
        }
        d => {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(SEARCH_SEED);
            let mut scored: Vec<(f64, Vector)> = Vec::with_capacity(RANDOM_DIRECTIONS);
            for _ in 0..RANDOM_DIRECTIONS {
                let mut w = Vector::zeros(d);
                for i in 0..d {
                    w[i] = StandardNormal.sample(&mut rng);
                }
                let Some(mut w) = w.normalized() else { continue };
                if ghat.dot(&w) < 0.0 {
                    w = -w;
                }
                if ghat.dot(&w) > 0.0 {
                    scored.push((eval(&w), w));
                }
            }
            scored.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap_or(std::cmp::Ordering::Equal));
            let basis = orthonormal_complement(ghat);
            let mut best = scored.first().map_or(f64::NEG_INFINITY, |s| s.0);
            for (_, w) in scored.iter().take(REFINEMENTS) {
                let c = ghat.dot(w);
                let v0: Vec<f64> = basis.iter().map(|e| e.dot(w) / c).collect();
                let to_dir = |v: &[f64]| {
                    let mut w = *ghat;
                    for (e, vi) in basis.iter().zip(v) {
                        w = w.axpy(*vi, e);
                    }
                    w.normalized().unwrap_or(*ghat)
                };
                let value = nelder_mead_max(|v| eval(&to_dir(v)), &v0, 200);
                best = best.max(value);
            }
            best
        }
    }
}

fn golden_max(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    let mut best = f(a).max(f(b)).max(fc).max(fd);
    for _ in 0..200 {
        if (b - a).abs() <= 1e-18 {
            break;
        }
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
            best = best.max(fc);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
            best = best.max(fd);
        }
    }
    best
}

fn orthonormal_complement(ghat: &Vector) -> Vec<Vector> {
    let d = ghat.dim();
    let mut basis: Vec<Vector> = Vec::with_capacity(d - 1);
    for i in 0..d {
        let mut e = Vector::basis(d, i);
        e = e.axpy(-e.dot(ghat), ghat);
        for b in &basis {
            e = e.axpy(-e.dot(b), b);
        }
        if let Some(e) = e.normalized().filter(|_| e.norm() > 1e-8) {
            basis.push(e);
        }
        if basis.len() == d - 1 {
            break;
        }
    }
    basis
}

/// Plain Nelder–Mead maximization; returns the best value seen.
fn nelder_mead_max(f: impl Fn(&[f64]) -> f64, x0: &[f64], iters: usize) -> f64 {
    let n = x0.len();
    let scale = 0.1 * (1.0 + x0.iter().map(|c| c * c).sum::<f64>().sqrt());
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    simplex.push((x0.to_vec(), -f(x0)));
    for i in 0..n {
        let mut x = x0.to_vec();
        x[i] += scale;
        let v = -f(&x);
        simplex.push((x, v));
    }
    let mut best = -simplex
        .iter()
        .map(|s| s.1)
        .fold(f64::INFINITY, f64::min);
    for _ in 0..iters {
        simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(std::cmp::Ordering::Equal));
        best = best.max(-simplex[0].1);
        let centroid: Vec<f64> = (0..n)
            .map(|j| simplex[..n].iter().map(|s| s.0[j]).sum::<f64>() / n as f64)
            .collect();
        let worst = simplex[n].clone();
        let along = |t: f64| -> Vec<f64> {
            (0..n).map(|j| centroid[j] + t * (worst.0[j] - centroid[j])).collect()
        };
        let xr = along(-1.0);
        let fr = -f(&xr);
        if fr < simplex[0].1 {
            let xe = along(-2.0);
            let fe = -f(&xe);
            simplex[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
        } else if fr < simplex[n - 1].1 {
            simplex[n] = (xr, fr);
        } else {
            let xc = along(0.5);
            let fc = -f(&xc);
            if fc < worst.1 {
                simplex[n] = (xc, fc);
            } else {
                let x_best = simplex[0].0.clone();
                for s in simplex.iter_mut().skip(1) {
                    for j in 0..n {
                        s.0[j] = x_best[j] + 0.5 * (s.0[j] - x_best[j]);
                    }
                    s.1 = -f(&s.0);
                }
            }
        }
    }
    simplex
        .iter()
        .map(|s| -s.1)
        .fold(best, f64::max)
}
