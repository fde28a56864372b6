//! Enclosing spheres and `γ★` at boundary points.
//!
//! `cargo run --example geometry_check`

use oco_lab::cli::cmd_geometry_check;
use oco_lab::{FeasibleSet, Vector};

fn main() -> oco_lab::Result<()> {
    for lambda in [0.25, 0.5, 0.8] {
        let w = FeasibleSet::w_lambda(lambda)?;
        let report = cmd_geometry_check(&w, &Vector::from_slice(&[0.0, -lambda]), &Vector::from_slice(&[0.0, 1.0]))?;
        println!("{report}\n");
    }

    // A flat facet has no finite enclosing sphere.
    let square = FeasibleSet::centered_box(2, 1.0)?;
    let report = cmd_geometry_check(&square, &Vector::from_slice(&[0.3, 1.0]), &Vector::from_slice(&[0.0, -1.0]))?;
    println!("{report}");
    Ok(())
}
