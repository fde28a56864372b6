//! Euclidean and Mahalanobis projections and the linear minimization oracle.
//!
//! `cargo run --example projections`

use oco_lab::geometry::mahalanobis_project;
use oco_lab::{FeasibleSet, Matrix, Vector};

fn main() -> oco_lab::Result<()> {
    let z = Vector::from_slice(&[1.4, 1.1]);
    let theta = Vector::from_slice(&[1.0, -2.0]);
    let sets = [
        FeasibleSet::unit_ball(2),
        FeasibleSet::w_lambda(0.5)?,
        FeasibleSet::lp_ball(1.0, 1.0, 2)?,
        FeasibleSet::lp_ball(4.0, 1.0, 2)?,
        FeasibleSet::centered_box(2, 1.0)?,
        FeasibleSet::simplex(1.0, 2)?,
    ];
    let metric = Matrix::from_rows(&[&[4.0, 1.0], &[1.0, 1.0]]);
    for k in &sets {
        let p = k.project(&z)?;
        let lm = k.linear_minimizer(&theta)?;
        let m = mahalanobis_project(k, &z, &metric, None)?;
        println!("{}", k.label());
        println!("  diameter {:.6}", k.diameter());
        println!("  project {z} -> {p}");
        println!("  argmin <{theta}, x> = {lm}");
        println!("  Mahalanobis projection {} (gap {:.1e})", m.point, m.gap);
    }
    Ok(())
}
