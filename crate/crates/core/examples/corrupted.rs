//! The corrupted growth construction: budget arithmetic and a short run.
//!
//! `cargo run --release --example corrupted`

use oco_lab::environments::{corruption_budget_used, CorruptionPlan};
use oco_lab::harness::run_single;
use oco_lab::{EnvSpec, Environment, FeasibleSet, LearnerSpec};

fn main() -> oco_lab::Result<()> {
    let (lambda, l, c, horizon) = (0.5, 0.1, 40.0, 1usize << 15);
    let plan = CorruptionPlan::new(l, lambda, c, horizon)?;
    println!("tau = {}, L_hat = {:.9}, per-round {:.6}, total {:.6}", plan.tau, plan.l_hat, plan.per_round, plan.total());

    // C below 1/(λL) is rejected with the violated precondition.
    if let Err(e) = CorruptionPlan::new(l, lambda, 10.0, horizon) {
        println!("C = 10: {e}");
    }

    let set = FeasibleSet::w_lambda(lambda)?;
    let spec = EnvSpec::CorruptedGrowth { k: 1.0, l, lambda, c };
    let mut env = Environment::new(&spec, &set, horizon, 0)?;
    let x = set.canonical_center();
    let rounds = (1..=horizon)
        .map(|t| env.sample_round(t, &x))
        .collect::<oco_lab::Result<Vec<_>>>()?;
    println!("measured corruption {:.6} <= C = {c}", corruption_budget_used(&rounds, &set, c)?);

    let run = run_single(&set, &spec, &LearnerSpec::Universal { lipschitz: None }, horizon, 0)?;
    println!(
        "universal at T = {horizon}: pseudo-regret {:.3}, realized {:.3}",
        run.pseudo_regret.unwrap_or(f64::NAN),
        run.realized_regret
    );
    Ok(())
}
