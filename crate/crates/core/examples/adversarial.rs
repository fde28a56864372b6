//! FTL against the alternating adversary on `[−1, 1]`, next to the
//! universal learner.
//!
//! `cargo run --release --example adversarial`

use oco_lab::harness::run_single;
use oco_lab::{EnvSpec, FeasibleSet, LearnerSpec};

fn main() -> oco_lab::Result<()> {
    let set = FeasibleSet::centered_box(1, 1.0)?;
    let env = EnvSpec::AlternatingAdversary { first: -0.5, amplitude: 1.0 };
    let horizon = 10_000;
    for learner in [LearnerSpec::Ftl { alpha: None }, LearnerSpec::Universal { lipschitz: None }] {
        let run = run_single(&set, &env, &learner, horizon, 0)?;
        println!("{}: realized regret {:.2} after {horizon} rounds", learner.label(), run.realized_regret);
        for c in run.checkpoints.iter().filter(|c| c.t >= 256) {
            println!("    t={:>6}  {:.2}", c.t, c.cum_realized_regret);
        }
    }
    let t = horizon as f64;
    println!("reference 5 sqrt(T log T) = {:.1}", 5.0 * (t * t.ln()).sqrt());
    Ok(())
}
