//! Randomized search for counterexamples to `(κ, q)` uniform convexity.
//!
//! Two checks run per trial:
//!
//! - the definition: `θx + (1−θ)y + θ(1−θ) κ ||x−y||^q z ∈ K` for a unit `z`;
//! - the linear-minimizer growth inequality
//!   `<g, y − y★> >= (κ/4) ||y − y★||^q ||g||_*` with `y★ = argmin_K <g, ·>`.
//!
//! Sample pairs are biased toward the boundary and toward nearby boundary
//! pairs, where both checks are tightest, and `z` is often the outward
//! direction at the combined point.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::{FeasibleSet, NormTag};
use crate::linalg::Vector;
use crate::{OcoError, Result};

const TOL: f64 = 1e-9;
pub const DEFAULT_WITNESS_SEED: u64 = 0x0c0_c0a;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Violation {
    /// The perturbed convex combination left `K` (`gauge > 1 + 1e-9`).
    Definition {
        x: Vector,
        y: Vector,
        theta: f64,
        z: Vector,
        gauge: f64,
    },
    /// The growth inequality failed by more than `1e-9`.
    LinearGrowth {
        g: Vector,
        y: Vector,
        y_star: Vector,
        margin: f64,
    },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::Definition { x, y, theta, z, gauge } => write!(
                f,
                "definition: x={x} y={y} theta={theta} z={z} gives gauge {gauge:.12}"
            ),
            Violation::LinearGrowth { g, y, y_star, margin } => write!(
                f,
                "linear growth: g={g} y={y} y*={y_star} margin {margin:e}"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WitnessReport {
    pub holds: bool,
    /// Smallest `1 − gauge` seen in the definition check.
    pub definition_margin: f64,
    /// Smallest slack seen in the growth inequality (with `||g||_* = 1`).
    pub growth_margin: f64,
    pub trials: usize,
    pub first_definition_violation: Option<Violation>,
    pub first_growth_violation: Option<Violation>,
}

impl WitnessReport {
    pub fn worst_margin(&self) -> f64 {
        self.definition_margin.min(self.growth_margin)
    }

    pub fn definition_holds(&self) -> bool {
        self.first_definition_violation.is_none()
    }

    pub fn growth_holds(&self) -> bool {
        self.first_growth_violation.is_none()
    }

    pub fn first_violation(&self) -> Option<&Violation> {
        self.first_definition_violation
            .as_ref()
            .or(self.first_growth_violation.as_ref())
    }
}

/// Runs `trials` rounds of both checks with the default seed.
pub fn uniform_convexity_witness(
    k: &FeasibleSet,
    kappa: f64,
    q: f64,
    norm: NormTag,
    trials: usize,
) -> Result<WitnessReport> {
    uniform_convexity_witness_seeded(k, kappa, q, norm, trials, DEFAULT_WITNESS_SEED)
}

pub fn uniform_convexity_witness_seeded(
    k: &FeasibleSet,
    kappa: f64,
    q: f64,
    norm: NormTag,
    trials: usize,
    seed: u64,
) -> Result<WitnessReport> {
    if trials == 0 {
        return Err(OcoError::InvalidParameter("trials must be at least 1".into()));
    }
    if !(kappa >= 0.0 && kappa.is_finite() && q >= 1.0 && q.is_finite()) {
        return Err(OcoError::InvalidParameter(format!(
            "need kappa >= 0 and q >= 1, got ({kappa}, {q})"
        )));
    }
    if norm != NormTag::L2 && norm != k.native_norm() {
        return Err(OcoError::Unsupported(format!(
            "norm {norm:?} for set {}",
            k.label()
        )));
    }
    let d = k.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = WitnessReport {
        holds: true,
        definition_margin: f64::INFINITY,
        growth_margin: f64::INFINITY,
        trials,
        first_definition_violation: None,
        first_growth_violation: None,
    };

    for _ in 0..trials {
        // Definition check.
        let (x, y) = sample_pair(k, &mut rng);
        let theta = if rng.random_bool(0.4) { 0.5 } else { rng.random::<f64>() };
        let base = x.scale(theta) + y.scale(1.0 - theta);
        let z = if rng.random_bool(0.5) {
            norm.dual_direction(&k.outward_normal(&base))
        } else {
            let g = gaussian(d, &mut rng);
            g.scale(1.0 / norm.norm(&g).max(f64::MIN_POSITIVE))
        };
        let bump = theta * (1.0 - theta) * kappa * norm.norm(&(x - y)).powf(q);
        let point = base.axpy(bump, &z);
        let gauge = k.gauge(&point);
        report.definition_margin = report.definition_margin.min(1.0 - gauge);
        if gauge > 1.0 + TOL && report.first_definition_violation.is_none() {
            report.first_definition_violation = Some(Violation::Definition {
                x,
                y,
                theta,
                z,
                gauge,
            });
        }

        // Growth inequality.
        let g = gaussian(d, &mut rng);
        let g = g.scale(1.0 / norm.dual_norm(&g).max(f64::MIN_POSITIVE));
        let y_star = k.linear_minimizer_unchecked(&g);
        let y = if rng.random_bool(0.5) {
            near(k, &y_star, &mut rng)
        } else {
            sample_point(k, &mut rng)
        };
        let margin = g.dot(&(y - y_star)) - 0.25 * kappa * norm.norm(&(y - y_star)).powf(q);
        report.growth_margin = report.growth_margin.min(margin);
        if margin < -TOL && report.first_growth_violation.is_none() {
            report.first_growth_violation = Some(Violation::LinearGrowth {
                g,
                y,
                y_star,
                margin,
            });
        }
    }
    report.holds = report.first_violation().is_none();
    Ok(report)
}

fn gaussian(d: usize, rng: &mut ChaCha8Rng) -> Vector {
    let mut v = Vector::zeros(d);
    for i in 0..d {
        v[i] = StandardNormal.sample(rng);
    }
    v
}

fn boundary(k: &FeasibleSet, rng: &mut ChaCha8Rng) -> Vector {
    k.pull_inside(k.boundary_point(&gaussian(k.dim(), rng)))
}

/// A point of `K`: on the boundary, near it, or deep inside.
fn sample_point(k: &FeasibleSet, rng: &mut ChaCha8Rng) -> Vector {
    let b = boundary(k, rng);
    let c = k.canonical_center();
    let s: f64 = match rng.random_range(0..3) {
        0 => 1.0,
        1 => 1.0 - 10f64.powf(-rng.random_range(1.0..6.0)),
        _ => rng.random::<f64>(),
    };
    k.pull_inside(c.axpy(s, &(b - c)))
}

/// A boundary point close to `anchor` (itself on the boundary).
fn near(k: &FeasibleSet, anchor: &Vector, rng: &mut ChaCha8Rng) -> Vector {
    let c = k.canonical_center();
    let spread = 10f64.powf(-rng.random_range(0.0..4.0));
    let dir = (*anchor - c) + gaussian(k.dim(), rng).scale(spread * k.diameter());
    k.pull_inside(k.boundary_point(&dir))
}

fn sample_pair(k: &FeasibleSet, rng: &mut ChaCha8Rng) -> (Vector, Vector) {
    match rng.random_range(0..3) {
        0 => (boundary(k, rng), boundary(k, rng)),
        1 => {
            let x = boundary(k, rng);
            let y = near(k, &x, rng);
            (x, y)
        }
        _ => (sample_point(k, rng), sample_point(k, rng)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euclidean_ball_half_curvature_holds() {
        let k = FeasibleSet::unit_ball(2);
        let r = uniform_convexity_witness(&k, 0.5, 2.0, NormTag::L2, 1000).unwrap();
        assert!(r.holds, "{:?}", r.first_violation());
    }

    #[test]
    fn box_is_found_flat() {
        let k = FeasibleSet::centered_box(2, 1.0).unwrap();
        let r = uniform_convexity_witness(&k, 0.1, 2.0, NormTag::L2, 1000).unwrap();
        assert!(!r.holds);
        assert!(!r.definition_holds());
    }

    #[test]
    fn mismatched_norm_is_unsupported() {
        let k = FeasibleSet::lp_ball(3.0, 1.0, 2).unwrap();
        assert!(matches!(
            uniform_convexity_witness(&k, 0.1, 3.0, NormTag::Lp(4.0), 10),
            Err(OcoError::Unsupported(_))
        ));
        assert!(uniform_convexity_witness(&k, 0.1, 3.0, NormTag::Lp(3.0), 0).is_err());
    }

    #[test]
    fn same_seed_same_report() {
        let k = FeasibleSet::lp_ball(4.0, 1.0, 2).unwrap();
        let a = uniform_convexity_witness(&k, 0.1, 4.0, NormTag::Lp(4.0), 200).unwrap();
        let b = uniform_convexity_witness(&k, 0.1, 4.0, NormTag::Lp(4.0), 200).unwrap();
        assert_eq!(a, b);
    }
}
