//! The Bernstein-type inequality `E<g, x − x★>² <= B <g°, x − x★>` on the
//! growth construction, with `B = 2G²ρ/||g°||`.
//!
//! `cargo run --example bernstein`

use oco_lab::geometry::{min_enclosing_sphere_facing, SphereFit};
use oco_lab::harness::bernstein_check;
use oco_lab::{EnvSpec, Environment, FeasibleSet};

fn main() -> oco_lab::Result<()> {
    let set = FeasibleSet::w_lambda(0.5)?;
    let env = Environment::new(&EnvSpec::BetaBernoulliGrowth { k: 1.0, l: 0.1 }, &set, 1000, 0)?;
    let (x_star, g) = env.optimal_point()?;
    let rho = match min_enclosing_sphere_facing(&set, &x_star, &g)? {
        SphereFit::Enclosed(s) => s.radius,
        SphereFit::NotSphereEnclosed { .. } => unreachable!("ellipsoids are sphere-enclosed"),
    };
    let g_max = env.lipschitz_bound();
    let b = 2.0 * g_max * g_max * rho / g.norm();
    println!("x* = {x_star}, rho = {rho:.6}, G^2 = {:.4}, B = {b:.4}", g_max * g_max);
    for claim in [b, 0.5 * b, 0.1 * b] {
        let r = bernstein_check(&env, claim, 10_000)?;
        println!(
            "B = {claim:>8.4}: holds {} (worst slack {:.3e} at {})",
            r.holds, r.worst_slack, r.worst_point
        );
    }
    Ok(())
}
