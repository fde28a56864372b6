//! Strongly convex losses whose unconstrained minimizer lies outside `K`:
//! the optimum sits on the boundary of `W_0.5`.
//!
//! `cargo run --release --example quadratic`

use oco_lab::harness::{run_experiment, SeedSpec, SetSpec};
use oco_lab::{EnvSpec, ExperimentConfig, LearnerSpec, NoiseSpec};

fn main() -> oco_lab::Result<()> {
    let cfg = ExperimentConfig {
        set: SetSpec::WLambda { lambda: 0.5 },
        env: EnvSpec::StochasticQuadratic {
            theta_mean: vec![0.0, 2.0],
            noise: NoiseSpec::Uniform { half_widths: vec![0.5, 0.5] },
            alpha: 1.0,
        },
        learner: LearnerSpec::Universal { lipschitz: None },
        horizons: (8..=12).map(|e| 1usize << e).collect(),
        seeds: SeedSpec { count: 4, base: 0 },
        out: None,
    };
    let curve = run_experiment(&cfg)?;
    println!("x* = {}", curve.runs[0].comparator);
    for h in &curve.horizons {
        println!("  T={:>5}  pseudo-regret {:.4}", h.horizon, h.primary().0);
    }
    let fit = curve.fit()?;
    println!("exponent {:.3} (R² {:.3})", fit.slope, fit.r_squared);
    Ok(())
}
