//! Frank–Wolfe minimization of convex quadratics over a feasible set.

use super::FeasibleSet;
use crate::linalg::{Matrix, Vector};
use crate::{check_dim, OcoError, Result};

pub const FW_GAP_TOL: f64 = 1e-12;
pub const FW_MAX_ITERS: usize = 200;

#[derive(Debug, Clone, Copy)]
pub struct FwOutcome {
    pub point: Vector,
    /// Final Frank–Wolfe duality gap (an upper bound on suboptimality).
    pub gap: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// `argmin_{x ∈ K} (x − z)ᵀ M (x − z)` for symmetric positive-definite `M`.
///
/// Starts from `start` when given (it must lie in `K`), otherwise from the
/// Euclidean projection of `z`. If the iteration budget runs out the
/// outcome carries `converged = false` and the achieved gap.
pub fn mahalanobis_project(
    k: &FeasibleSet,
    z: &Vector,
    m: &Matrix,
    start: Option<&Vector>,
) -> Result<FwOutcome> {
    check_dim(k.dim(), z.dim())?;
    check_dim(k.dim(), m.dim())?;
    if !m.is_positive_definite() {
        return Err(OcoError::InvalidParameter(
            "Mahalanobis metric must be symmetric positive definite".into(),
        ));
    }
    mahalanobis_project_unchecked(k, z, m, start)
}

pub(crate) fn mahalanobis_project_unchecked(
    k: &FeasibleSet,
    z: &Vector,
    m: &Matrix,
    start: Option<&Vector>,
) -> Result<FwOutcome> {
    if k.contains_unchecked(z) {
        return Ok(FwOutcome {
            point: *z,
            gap: 0.0,
            iterations: 0,
            converged: true,
        });
    }
    if let Some(out) = super::metric::separable_project(k, z, m, start) {
        return Ok(out);
    }
    let x0 = match start {
        Some(s) => *s,
        None => k.project(z)?,
    };
    Ok(fw_project(k, z, m, x0))
}

/// Frank–Wolfe only, bypassing the exact path.
pub(crate) fn fw_project(k: &FeasibleSet, z: &Vector, m: &Matrix, x0: Vector) -> FwOutcome {
    // f(x) = (x−z)ᵀM(x−z): Hessian 2M, linear term −2Mz.
    let mz = m.mul_vec(z);
    frank_wolfe(k, m, 2.0, &mz.scale(-2.0), x0, FW_GAP_TOL, FW_MAX_ITERS)
}

/// `argmin_{x ∈ K} ½ xᵀ Q x + <c, x>` for symmetric positive-semidefinite `Q`.
pub fn minimize_quadratic(
    k: &FeasibleSet,
    q: &Matrix,
    c: &Vector,
    start: Option<&Vector>,
    max_iters: usize,
) -> Result<FwOutcome> {
    check_dim(k.dim(), c.dim())?;
    check_dim(k.dim(), q.dim())?;
    let x0 = match start {
        Some(s) => *s,
        None => k.canonical_center(),
    };
    Ok(frank_wolfe(k, q, 1.0, c, x0, FW_GAP_TOL, max_iters))
}

/// Frank–Wolfe with exact line search on `½ xᵀ (s·Q) x + <c, x>`.
fn frank_wolfe(
    k: &FeasibleSet,
    q: &Matrix,
    q_scale: f64,
    c: &Vector,
    mut x: Vector,
    tol: f64,
    max_iters: usize,
) -> FwOutcome {
    let mut qx = q.mul_vec(&x).scale(q_scale);
    let mut gap = f64::INFINITY;
    for it in 0..max_iters {
        let grad = qx + *c;
        let s = k.linear_minimizer_unchecked(&grad);
        let d = s - x;
        gap = -grad.dot(&d);
        if gap <= tol {
            return FwOutcome {
                point: k.pull_inside(x),
                gap,
                iterations: it,
                converged: true,
            };
        }
        let qd = q.mul_vec(&d).scale(q_scale);
        let curv = d.dot(&qd);
        let step = if curv > 0.0 { (gap / curv).min(1.0) } else { 1.0 };
        x = x.axpy(step, &d);
        qx = qx.axpy(step, &qd);
    }
    FwOutcome {
        point: k.pull_inside(x),
        gap,
        iterations: max_iters,
        converged: false,
    }
}
