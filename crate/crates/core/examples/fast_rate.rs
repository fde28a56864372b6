//! Logarithmic pseudo-regret on the growth construction over `W_0.5`.
//!
//! The universal learner is compared with plain OGD; the fitted exponent of
//! the universal curve stays near zero while OGD grows like `√T`.
//!
//! `cargo run --release --example fast_rate`

use oco_lab::harness::{run_experiment, SeedSpec, SetSpec};
use oco_lab::{EnvSpec, ExperimentConfig, LearnerSpec};

fn main() -> oco_lab::Result<()> {
    for learner in [
        LearnerSpec::Universal { lipschitz: None },
        LearnerSpec::Ogd { schedule: Default::default(), lipschitz: None },
    ] {
        let cfg = ExperimentConfig {
            set: SetSpec::WLambda { lambda: 0.5 },
            env: EnvSpec::BetaBernoulliGrowth { k: 1.0, l: 0.1 },
            learner,
            horizons: (8..=13).map(|e| 1usize << e).collect(),
            seeds: SeedSpec { count: 8, base: 0 },
            out: None,
        };
        let curve = run_experiment(&cfg)?;
        println!("{}", curve.learner);
        for h in &curve.horizons {
            let (m, se) = h.primary();
            println!("  T={:>6}  pseudo-regret {m:>9.3} ± {se:.3}", h.horizon);
        }
        let fit = curve.fit()?;
        println!("  exponent {:.3} (R² {:.3})", fit.slope, fit.r_squared);
    }
    Ok(())
}
