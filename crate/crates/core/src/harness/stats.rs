//! Slope fits and inequality diagnostics.

use crate::environments::Environment;
use crate::geometry::{sample_boundary, FeasibleSet};
use crate::linalg::Vector;
use crate::losses::{LossAccumulator, LossFn};
use crate::{OcoError, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    /// Number of points with positive regret that entered the fit.
    pub points: usize,
}

/// OLS of `ln R` on `ln T`. Points with `R <= 0` are dropped; at least
/// four must remain.
pub fn fit_growth_exponent(points: &[(f64, f64)]) -> Result<GrowthFit> {
    let used: Vec<(f64, f64)> = points
        .iter()
        .filter(|(t, r)| *t > 0.0 && *r > 0.0 && r.is_finite())
        .map(|(t, r)| (t.ln(), r.ln()))
        .collect();
    if used.len() < 4 {
        return Err(OcoError::InvalidParameter(format!(
            "need at least 4 horizons with positive regret, got {}",
            used.len()
        )));
    }
    let n = used.len() as f64;
    let mx = used.iter().map(|p| p.0).sum::<f64>() / n;
    let my = used.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = used.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = used.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = used.iter().map(|p| (p.1 - my).powi(2)).sum();
    if sxx == 0.0 {
        return Err(OcoError::InvalidParameter("horizons must not all be equal".into()));
    }
    let slope = sxy / sxx;
    let r_squared = if syy == 0.0 { 1.0 } else { (sxy * sxy) / (sxx * syy) };
    Ok(GrowthFit {
        slope,
        intercept: my - slope * mx,
        r_squared,
        points: used.len(),
    })
}

/// `Σ<g_t, x_t − x★> / (G √(V_T ln T) + G D ln T)` with `V_T = Σ||x_t − x★||²`.
///
/// `trace` holds `(x_t, g_t)` pairs. Zero when the numerator is not positive.
pub fn bound61_ratio(trace: &[(Vector, Vector)], x_star: &Vector, g: f64, d: f64, horizon: usize) -> Result<f64> {
    let mut num = 0.0;
    let mut v = 0.0;
    for (x, grad) in trace {
        crate::check_dim(x_star.dim(), x.dim())?;
        num += grad.dot(&(*x - *x_star));
        v += x.dist_sq(x_star);
    }
    bound61_from_sums(num, v, g, d, horizon)
}

pub(crate) fn bound61_from_sums(num: f64, v: f64, g: f64, d: f64, horizon: usize) -> Result<f64> {
    if horizon < 2 {
        return Err(OcoError::InvalidParameter(format!(
            "bound ratio needs T >= 2 (ln T > 0), got T = {horizon}"
        )));
    }
    if num <= 0.0 {
        return Ok(0.0);
    }
    let log_t = (horizon as f64).ln();
    Ok(num / (g * (v.max(0.0) * log_t).sqrt() + g * d * log_t))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BernsteinReport {
    pub holds: bool,
    /// `min_x (B <g°, x − x★> − E<g, x − x★>²)`.
    pub worst_slack: f64,
    pub worst_point: Vector,
    pub samples: usize,
}

/// Checks `E<g_t, x − x★>² <= B <g°, x − x★>` over a polar grid of `K`.
pub fn bernstein_check(env: &Environment, b_claim: f64, samples: usize) -> Result<BernsteinReport> {
    let (mean, var) = env.linear_moments().ok_or_else(|| {
        OcoError::Unsupported(format!(
            "Bernstein check needs a stochastic linear environment, got {}",
            env.spec().label()
        ))
    })?;
    if mean.norm_inf() == 0.0 {
        return Err(OcoError::Precondition("mean gradient must be nonzero".into()));
    }
    let k = env.set();
    let (x_star, _) = env.optimal_point()?;
    let mut report = BernsteinReport {
        holds: true,
        worst_slack: f64::INFINITY,
        worst_point: x_star,
        samples: 0,
    };
    for x in polar_grid(k, samples).into_iter().chain(std::iter::once(x_star)) {
        let v = x - x_star;
        let lin = mean.dot(&v);
        let second = lin * lin + v.iter().zip(var.iter()).map(|(a, s)| s * a * a).sum::<f64>();
        let slack = b_claim * lin - second;
        report.samples += 1;
        if slack < report.worst_slack {
            report.worst_slack = slack;
            report.worst_point = x;
        }
    }
    report.holds = report.worst_slack >= -1e-9;
    Ok(report)
}

/// About `count` points of `K`: boundary samples scaled toward the center.
pub fn polar_grid(k: &FeasibleSet, count: usize) -> Vec<Vector> {
    let m = (count as f64).sqrt().ceil().max(1.0) as usize;
    let c = k.canonical_center();
    let boundary = sample_boundary(k, m, 0xb0b);
    let mut out = Vec::with_capacity(m * boundary.len());
    for i in 1..=m {
        let r = i as f64 / m as f64;
        for b in &boundary {
            out.push(k.pull_inside(c.axpy(r, &(*b - c))));
        }
    }
    out
}

/// Best fixed decision in hindsight for linear or quadratic losses.
pub fn hindsight_minimizer(losses: &[LossFn], k: &FeasibleSet) -> Result<Vector> {
    let mut linear = false;
    let mut quadratic = false;
    let mut acc = LossAccumulator::new(k.dim());
    for f in losses {
        match f {
            LossFn::Linear { .. } => linear = true,
            LossFn::Quadratic { .. } => quadratic = true,
            _ => {
                return Err(OcoError::Unsupported(
                    "hindsight minimizer takes linear or quadratic losses".into(),
                ))
            }
        }
        if linear && quadratic {
            return Err(OcoError::InvalidParameter(
                "hindsight minimizer needs losses of one kind, got linear and quadratic".into(),
            ));
        }
        acc.push(f)?;
    }
    acc.minimize(k, None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_slopes() {
        let grid: Vec<f64> = (10..=17).map(|e| 2f64.powi(e)).collect();
        let sqrt: Vec<_> = grid.iter().map(|t| (*t, t.sqrt())).collect();
        assert!((fit_growth_exponent(&sqrt).unwrap().slope - 0.5).abs() < 1e-12);
        let lin: Vec<_> = grid.iter().map(|t| (*t, *t)).collect();
        assert!((fit_growth_exponent(&lin).unwrap().slope - 1.0).abs() < 1e-12);
    }

    #[test]
    fn too_few_points() {
        let pts = [(1.0, 1.0), (2.0, 0.0), (4.0, -1.0), (8.0, 3.0), (16.0, 4.0)];
        assert!(fit_growth_exponent(&pts).is_err());
    }

    #[test]
    fn bound_ratio_zero_and_guard() {
        let xs = Vector::from_slice(&[0.0, 0.5]);
        let trace = vec![(xs, Vector::from_slice(&[1.0, -0.1])); 5];
        assert_eq!(bound61_ratio(&trace, &xs, 1.0, 2.0, 5).unwrap(), 0.0);
        assert!(bound61_ratio(&trace, &xs, 1.0, 2.0, 1).is_err());
    }
}
