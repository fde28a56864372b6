//! Randomized checks of `(κ, q)`-uniform convexity and its linear-growth
//! consequence on `ℓp` balls, the disk and a box.
//!
//! `cargo run --example uniform_convexity`

use oco_lab::cli::cmd_property_test;

fn main() -> oco_lab::Result<()> {
    for outcome in cmd_property_test("all", 1000)? {
        println!("{outcome}");
    }
    Ok(())
}
