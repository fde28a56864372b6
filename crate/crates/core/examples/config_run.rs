//! Runs a JSON config the same way `oco-lab run` does, then fits it.
//!
//! `cargo run --release --example config_run -- configs/adversarial_universal.json /tmp/oco-out`

use std::path::PathBuf;

use oco_lab::cli::{cmd_fit, load_config, run_config};

fn main() -> oco_lab::Result<()> {
    let mut args = std::env::args().skip(1);
    let config = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("configs/adversarial_universal.json"));
    let out = args.next().map(PathBuf::from).unwrap_or_else(|| std::env::temp_dir().join("oco-lab-example"));

    let mut cfg = load_config(&config)?;
    println!("{}", serde_json::to_string_pretty(&cfg).expect("configs serialize"));
    cfg.seeds.count = cfg.seeds.count.min(4);
    let outcome = run_config(&cfg, Some(&out))?;
    println!("wrote {} and {} traces", outcome.summary_path.display(), outcome.trace_paths.len());
    print!("{}", std::fs::read_to_string(&outcome.summary_path)?);
    if cfg.horizons.len() >= 4 {
        for row in cmd_fit(&outcome.summary_path)? {
            println!("{row}");
        }
    }
    Ok(())
}
