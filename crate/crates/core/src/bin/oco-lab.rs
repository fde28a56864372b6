use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use oco_lab::cli::{self, EXIT_OK, EXIT_PROPERTY_FAILURE};
use oco_lab::harness::SetSpec;
use oco_lab::{FeasibleSet, OcoError, Vector};

#[derive(Parser)]
#[command(name = "oco-lab", about = "Online convex optimization experiments over curved sets")]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a JSON-configured experiment and write summary/trace CSVs.
    Run {
        config: PathBuf,
        /// Overrides `out.dir` from the config.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fit regret growth exponents from a summary.csv.
    Fit { summary: PathBuf },
    /// Enclosing sphere and gamma_star at a boundary point.
    GeometryCheck {
        /// Set as JSON, e.g. '{"kind":"w_lambda","params":{"lambda":0.5}}'.
        #[arg(long, conflicts_with = "lambda")]
        set: Option<String>,
        /// Shorthand for the ellipsoid with semi-axes (1, lambda).
        #[arg(long)]
        lambda: Option<f64>,
        /// Comma-separated anchor coordinates.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        anchor: Vec<f64>,
        /// Comma-separated gradient coordinates.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        grad: Vec<f64>,
    },
    /// Uniform-convexity property suites.
    PropertyTest {
        #[arg(default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
}

fn main() -> ExitCode {
    let args = Args::parse();
    match dispatch(args.command) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(cli::exit_code(&e) as u8)
        }
    }
}

fn dispatch(command: Command) -> Result<i32, OcoError> {
    match command {
        Command::Run { config, out } => {
            let outcome = cli::cmd_run(&config, out.as_deref())?;
            println!("wrote {}", outcome.summary_path.display());
            println!("wrote {} trace files", outcome.trace_paths.len());
            Ok(EXIT_OK)
        }
        Command::Fit { summary } => {
            for row in cli::cmd_fit(&summary)? {
                println!("{row}");
            }
            Ok(EXIT_OK)
        }
        Command::GeometryCheck {
            set,
            lambda,
            anchor,
            grad,
        } => {
            let set = match (set, lambda) {
                (Some(json), _) => serde_json::from_str::<SetSpec>(&json)
                    .map_err(|e| OcoError::Config(format!("--set: {e}")))?
                    .build()?,
                (None, Some(l)) => FeasibleSet::w_lambda(l)?,
                (None, None) => return Err(OcoError::Config("pass --set or --lambda".into())),
            };
            let anchor = Vector::try_from_slice(&anchor)?;
            let grad = Vector::try_from_slice(&grad)?;
            println!("{}", cli::cmd_geometry_check(&set, &anchor, &grad)?);
            Ok(EXIT_OK)
        }
        Command::PropertyTest { suite, trials } => {
            let outcomes = cli::cmd_property_test(&suite, trials)?;
            for o in &outcomes {
                println!("{o}");
            }
            Ok(if outcomes.iter().all(|o| o.passed) {
                EXIT_OK
            } else {
                EXIT_PROPERTY_FAILURE
            })
        }
    }
}
