//! Regret exponents on `ℓp` balls move from logarithmic (`p = 2`) toward
//! `T^{(p−2)/(2(p−1))}` as `p` grows.
//!
//! `cargo run --release --example lp_interpolation`

use oco_lab::harness::{run_experiment, SeedSpec, SetSpec};
use oco_lab::{EnvSpec, ExperimentConfig, LearnerSpec, NoiseSpec};

fn main() -> oco_lab::Result<()> {
    for p in [2.0, 3.0, 4.0] {
        let cfg = ExperimentConfig {
            set: SetSpec::LpBall { p, radius: 1.0, dim: 2 },
            env: EnvSpec::StochasticLinear {
                mean: vec![0.0, -0.1],
                noise: NoiseSpec::Rademacher { scales: vec![1.0, 0.0] },
            },
            learner: LearnerSpec::Universal { lipschitz: None },
            horizons: (9..=13).map(|e| 1usize << e).collect(),
            seeds: SeedSpec { count: 4, base: 0 },
            out: None,
        };
        let curve = run_experiment(&cfg)?;
        let fit = curve.fit()?;
        let theory = (p - 2.0) / (2.0 * (p - 1.0));
        println!("p={p}: exponent {:.3} (R² {:.3}), worst-case rate {theory:.3}", fit.slope, fit.r_squared);
    }
    Ok(())
}
