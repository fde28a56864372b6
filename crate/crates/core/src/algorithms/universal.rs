//! Multi-rate universal learner in the style of Maler.
//!
//! For each rate `η_i = 2^{−i} / (5GD)`, `i = 0..=⌈½ log₂ T⌉`, two experts run
//! on surrogates built from `r(x) = <g_t, x_t − x>`:
//!
//! - ONS on `ℓ^η(x) = −η r(x) + η² r(x)²`,
//! - OGD with step `1/(2η²G²t)` on `s^η(x) = −η r(x) + η² G² ||x − x_t||²`,
//!
//! plus one OGD expert on the linear loss with step `D/(G√t)`. The meta
//! learner keeps exponential weights in the log domain, charging every
//! expert its own surrogate at its own point, and predicts the
//! `η`-tilted average `Σ w η x / Σ w η`.

use super::basic::{Ogd, Ons, StepSchedule};
use super::{check_gradient, OnlineLearner};
use crate::geometry::FeasibleSet;
use crate::linalg::Vector;
use crate::{OcoError, Result};

/// `ℓ^η(x) = −η<g, x_t − x> + η²<g, x_t − x>²`.
pub fn exp_concave_surrogate(eta: f64, g: &Vector, x_t: &Vector, x: &Vector) -> f64 {
    let r = g.dot(&(*x_t - *x));
    -eta * r + eta * eta * r * r
}

/// `s^η(x) = −η<g, x_t − x> + η²G²||x − x_t||²`.
pub fn strongly_convex_surrogate(eta: f64, lipschitz: f64, g: &Vector, x_t: &Vector, x: &Vector) -> f64 {
    let r = g.dot(&(*x_t - *x));
    -eta * r + eta * eta * lipschitz * lipschitz * x.dist_sq(x_t)
}

/// Nominal constants `(C_sc, C_sc', C_ec, C_ec', C_g)` of the bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundConstants {
    pub c_sc: f64,
    pub c_sc_prime: f64,
    pub c_ec: f64,
    pub c_ec_prime: f64,
    pub c_g: f64,
}

/// `(G, GD, √d, GD + d, 1)`.
pub fn maler_constants(g: f64, d: f64, dim: usize) -> Result<BoundConstants> {
    if !(d > 0.0 && d.is_finite()) {
        return Err(OcoError::InvalidParameter(format!("diameter must be positive, got {d}")));
    }
    if !(g > 0.0 && g.is_finite()) {
        return Err(OcoError::InvalidParameter(format!("G must be positive, got {g}")));
    }
    Ok(BoundConstants {
        c_sc: g,
        c_sc_prime: g * d,
        c_ec: (dim as f64).sqrt(),
        c_ec_prime: g * d + dim as f64,
        c_g: 1.0,
    })
}

#[derive(Debug, Clone)]
struct ScExpert {
    x: Vector,
    t: usize,
}

#[derive(Debug, Clone)]
pub struct Universal {
    set: FeasibleSet,
    g: f64,
    d: f64,
    horizon: usize,
    etas: Vec<f64>,
    ons: Vec<Ons>,
    sc: Vec<ScExpert>,
    plain: Ogd,
    plain_eta: f64,
    /// Log-weights in the order ONS experts, OGD-surrogate experts, plain.
    log_w: Vec<f64>,
    x: Vector,
}

impl Universal {
    pub fn new(set: &FeasibleSet, g: f64, horizon: usize) -> Result<Self> {
        if horizon == 0 {
            return Err(OcoError::InvalidParameter("horizon must be at least 1".into()));
        }
        let d = set.diameter();
        maler_constants(g, d, set.dim())?;
        let levels = rate_levels(horizon);
        let etas: Vec<f64> = (0..levels)
            .map(|i| 0.5f64.powi(i as i32) / (5.0 * g * d))
            .collect();
        let ons = etas
            .iter()
            .map(|&eta| {
                let g_l = eta * g * (1.0 + 2.0 * eta * g * d);
                Ons::new(set, 1.0, 0.5 * (1.0 / (4.0 * g_l * d)).min(1.0))
            })
            .collect::<Result<Vec<_>>>()?;
        let center = set.canonical_center();
        let sc = etas.iter().map(|_| ScExpert { x: center, t: 0 }).collect();
        let plain_eta = *etas.last().expect("at least one level");
        Ok(Self {
            set: *set,
            g,
            d,
            horizon,
            log_w: vec![0.0; 2 * levels + 1],
            etas,
            ons,
            sc,
            plain: Ogd::new(set, StepSchedule::General, g)?,
            plain_eta,
            x: center,
        })
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn etas(&self) -> &[f64] {
        &self.etas
    }

    pub fn expert_count(&self) -> usize {
        self.log_w.len()
    }

    pub fn log_weights(&self) -> &[f64] {
        &self.log_w
    }

    /// Points of every expert, in log-weight order.
    pub fn expert_points(&self) -> Vec<Vector> {
        self.ons
            .iter()
            .map(|e| e.predict())
            .chain(self.sc.iter().map(|e| e.x))
            .chain(std::iter::once(self.plain.predict()))
            .collect()
    }

    fn expert_etas(&self) -> impl Iterator<Item = f64> + '_ {
        self.etas
            .iter()
            .chain(self.etas.iter())
            .copied()
            .chain(std::iter::once(self.plain_eta))
    }

    pub fn bound_constants(&self) -> BoundConstants {
        maler_constants(self.g, self.d, self.set.dim()).expect("validated at construction")
    }

    fn aggregate(&self) -> Vector {
        let top = self.log_w.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let mut num = Vector::zeros(self.set.dim());
        let mut den = 0.0;
        for ((lw, eta), x) in self.log_w.iter().zip(self.expert_etas()).zip(self.expert_points()) {
            let w = (lw - top).exp() * eta;
            num = num.axpy(w, &x);
            den += w;
        }
        self.set.pull_inside(num.scale(1.0 / den))
    }
}

/// `⌈½ log₂ T⌉ + 1`.
pub(crate) fn rate_levels(horizon: usize) -> usize {
    let mut bits = 0usize;
    while (1usize << bits) < horizon {
        bits += 1;
    }
    let half = if horizon.is_power_of_two() {
        bits.div_ceil(2)
    } else {
        (0.5 * (horizon as f64).log2()).ceil() as usize
    };
    half + 1
}

impl OnlineLearner for Universal {
    fn predict(&self) -> Vector {
        self.x
    }

    fn update(&mut self, grad: &Vector, x_t: &Vector) -> Result<()> {
        check_gradient(self.set.dim(), grad, x_t)?;
        let levels = self.etas.len();
        let g2 = self.g * self.g;

        // Meta losses at the experts' current points.
        for i in 0..levels {
            let eta = self.etas[i];
            let x_on = self.ons[i].predict();
            self.log_w[i] -= exp_concave_surrogate(eta, grad, x_t, &x_on);
            self.log_w[levels + i] -=
                strongly_convex_surrogate(eta, self.g, grad, x_t, &self.sc[i].x);
        }
        let x_plain = self.plain.predict();
        self.log_w[2 * levels] -= exp_concave_surrogate(self.plain_eta, grad, x_t, &x_plain);
        let top = self.log_w.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        if !top.is_finite() {
            return Err(OcoError::NonFinite("meta log-weights".into()));
        }
        for lw in &mut self.log_w {
            *lw -= top;
        }

        // Expert updates on their surrogate gradients.
        for i in 0..levels {
            let eta = self.etas[i];
            let x_on = self.ons[i].predict();
            let r = grad.dot(&(*x_t - x_on));
            let surrogate = grad.scale(eta * (1.0 - 2.0 * eta * r));
            self.ons[i].update(&surrogate, &x_on)?;

            let e = &mut self.sc[i];
            e.t += 1;
            let sgrad = grad.scale(eta).axpy(2.0 * eta * eta * g2, &(e.x - *x_t));
            let step = 1.0 / (2.0 * eta * eta * g2 * e.t as f64);
            e.x = self.set.project(&e.x.axpy(-step, &sgrad))?;
        }
        self.plain.update(grad, x_t)?;
        self.x = self.aggregate();
        Ok(())
    }

    fn name(&self) -> &'static str {
        "universal"
    }
}
