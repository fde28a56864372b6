//! Command implementations behind the `oco-lab` binary.
//!
//! Each command returns data; printing and exit codes live in the binary so
//! the same entry points are usable from tests and examples.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use crate::geometry::{
    gamma_star, min_enclosing_sphere_facing, uniform_convexity_witness, FeasibleSet, NormTag,
    SetKind, SphereFit, Violation,
};
use crate::harness::{fit_growth_exponent, run_experiment, ExperimentConfig, GrowthFit, RegretCurve};
use crate::linalg::Vector;
use crate::{OcoError, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PROPERTY_FAILURE: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;

/// Maps an error to the documented process exit code.
pub fn exit_code(e: &OcoError) -> i32 {
    match e {
        OcoError::Invariant(_)
        | OcoError::BudgetOverflow { .. }
        | OcoError::NonConvergence { .. }
        | OcoError::NonFinite(_) => EXIT_INVARIANT,
        _ => EXIT_CONFIG,
    }
}

pub fn load_config(path: &Path) -> Result<ExperimentConfig> {
    let text = fs::read_to_string(path)
        .map_err(|e| OcoError::Config(format!("cannot read {}: {e}", path.display())))?;
    parse_config(&text)
}

pub fn parse_config(text: &str) -> Result<ExperimentConfig> {
    serde_json::from_str(text).map_err(|e| OcoError::Config(format!("invalid config: {e}")))
}

/// Formats a number with 17 significant digits.
pub fn fmt_num(x: f64) -> String {
    format!("{x:.16e}")
}

pub const SUMMARY_HEADER: [&str; 8] = [
    "env",
    "set",
    "learner",
    "T",
    "mean_pseudo_regret",
    "se",
    "mean_realized_regret",
    "bound61_ratio",
];

pub const TRACE_HEADER: [&str; 4] = ["t", "cum_pseudo_regret", "cum_realized_regret", "dist_to_opt_sq"];

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub curve: RegretCurve,
    pub summary_path: PathBuf,
    pub trace_paths: Vec<PathBuf>,
}

/// Runs the configured experiment and writes `summary.csv` plus one
/// `trace_<seed>.csv` per seed (checkpoints of the largest horizon).
pub fn cmd_run(config_path: &Path, out_override: Option<&Path>) -> Result<RunOutcome> {
    let cfg = load_config(config_path)?;
    run_config(&cfg, out_override)
}

pub fn run_config(cfg: &ExperimentConfig, out_override: Option<&Path>) -> Result<RunOutcome> {
    let dir: PathBuf = match (out_override, &cfg.out) {
        (Some(p), _) => p.to_path_buf(),
        (None, Some(o)) => PathBuf::from(&o.dir),
        (None, None) => return Err(OcoError::Config("config has no out.dir".into())),
    };
    let curve = run_experiment(cfg)?;
    fs::create_dir_all(&dir)?;

    let summary_path = dir.join("summary.csv");
    write_atomic(&summary_path, &summary_csv(&curve)?)?;

    let largest = *cfg.horizons.last().expect("validated");
    let mut trace_paths = Vec::new();
    for run in curve.runs_at(largest) {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(TRACE_HEADER)?;
        for c in &run.checkpoints {
            w.write_record([
                c.t.to_string(),
                c.cum_pseudo_regret.map(fmt_num).unwrap_or_default(),
                fmt_num(c.cum_realized_regret),
                fmt_num(c.dist_to_opt_sq),
            ])?;
        }
        let path = dir.join(format!("trace_{}.csv", run.seed));
        write_atomic(&path, &finish(w)?)?;
        trace_paths.push(path);
    }
    Ok(RunOutcome {
        curve,
        summary_path,
        trace_paths,
    })
}

pub fn summary_csv(curve: &RegretCurve) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(SUMMARY_HEADER)?;
    for h in &curve.horizons {
        let (_, se) = h.primary();
        w.write_record([
            curve.env.clone(),
            curve.set.clone(),
            curve.learner.clone(),
            h.horizon.to_string(),
            h.mean_pseudo_regret.map(fmt_num).unwrap_or_default(),
            fmt_num(se),
            fmt_num(h.mean_realized_regret),
            fmt_num(h.bound61_ratio),
        ])?;
    }
    finish(w)
}

fn finish(w: csv::Writer<Vec<u8>>) -> Result<Vec<u8>> {
    w.into_inner()
        .map_err(|e| OcoError::Io(std::io::Error::other(e.to_string())))
}

/// Writes through a temporary sibling and renames over the target.
fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let tmp = path.with_extension("csv.tmp");
    fs::write(&tmp, bytes)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitRow {
    pub env: String,
    pub set: String,
    pub learner: String,
    pub fit: GrowthFit,
}

impl fmt::Display for FitRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}\t{}\t{}\tslope={:.6}\tR2={:.6}\tpoints={}",
            self.env, self.set, self.learner, self.fit.slope, self.fit.r_squared, self.fit.points
        )
    }
}

/// Fits the growth exponent per `(env, set, learner)` group of a summary file.
pub fn cmd_fit(summary: &Path) -> Result<Vec<FitRow>> {
    let malformed = |what: String| OcoError::Config(format!("{}: {what}", summary.display()));
    let mut reader = csv::Reader::from_path(summary).map_err(|e| malformed(e.to_string()))?;
    let headers = reader.headers().map_err(|e| malformed(e.to_string()))?.clone();
    if headers.iter().collect::<Vec<_>>() != SUMMARY_HEADER {
        return Err(malformed(format!("unexpected header {headers:?}")));
    }
    let mut order: Vec<(String, String, String)> = Vec::new();
    let mut groups: BTreeMap<(String, String, String), Vec<(f64, f64)>> = BTreeMap::new();
    for rec in reader.records() {
        let rec = rec.map_err(|e| malformed(e.to_string()))?;
        let key = (rec[0].to_string(), rec[1].to_string(), rec[2].to_string());
        let t: f64 = rec[3].parse().map_err(|_| malformed(format!("bad T {:?}", &rec[3])))?;
        let value = if rec[4].is_empty() { &rec[6] } else { &rec[4] };
        let r: f64 = value
            .parse()
            .map_err(|_| malformed(format!("bad regret {value:?}")))?;
        if !groups.contains_key(&key) {
            order.push(key.clone());
        }
        groups.entry(key).or_default().push((t, r));
    }
    if order.is_empty() {
        return Err(malformed("no rows".into()));
    }
    order
        .into_iter()
        .map(|key| {
            let fit = fit_growth_exponent(&groups[&key])
                .map_err(|e| malformed(format!("group {key:?}: {e}")))?;
            Ok(FitRow {
                env: key.0,
                set: key.1,
                learner: key.2,
                fit,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeometryReport {
    pub set: String,
    pub anchor: Vector,
    pub grad: Vector,
    pub fit: SphereFit,
    pub gamma_star: f64,
    /// Closed-form `(center, radius)` for `W_λ` anchors on the minor axis.
    pub analytic: Option<(Vector, f64)>,
}

impl GeometryReport {
    /// Largest deviation of the sampled sphere from the closed form.
    pub fn analytic_error(&self) -> Option<f64> {
        let (c, r) = self.analytic?;
        let s = self.fit.sphere()?;
        Some(s.center.dist(&c).max((s.radius - r).abs()))
    }
}

impl fmt::Display for GeometryReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "set: {}", self.set)?;
        writeln!(f, "anchor: {}  grad: {}", self.anchor, self.grad)?;
        match &self.fit {
            SphereFit::Enclosed(s) => {
                writeln!(f, "center: {}", s.center)?;
                writeln!(f, "radius: {:.12}", s.radius)?;
            }
            SphereFit::NotSphereEnclosed { ratio } => {
                writeln!(f, "not sphere-enclosed (ratio {ratio:e})")?;
            }
        }
        write!(f, "gamma_star: {:.12}", self.gamma_star)?;
        if let Some((c, r)) = &self.analytic {
            write!(f, "\nanalytic center: {c}  analytic radius: {r:.12}")?;
            if let Some(e) = self.analytic_error() {
                write!(f, "\nmax deviation: {e:e}")?;
            }
        }
        Ok(())
    }
}

pub fn cmd_geometry_check(set: &FeasibleSet, anchor: &Vector, grad: &Vector) -> Result<GeometryReport> {
    let fit = min_enclosing_sphere_facing(set, anchor, grad)?;
    let gamma = gamma_star(set, anchor, grad)?;
    let analytic = match set.kind() {
        SetKind::AxisEllipsoid { semi_axes }
            if semi_axes.dim() == 2 && semi_axes[0] == 1.0 && semi_axes[1] < 1.0 && anchor[0] == 0.0 =>
        {
            let lambda = semi_axes[1];
            let ghat = grad.normalized();
            ghat.filter(|g| g[0] == 0.0).map(|g| {
                // Center sits 1/λ from the anchor along ĝ: (0, ±(1−λ²)/λ).
                (anchor.axpy(1.0 / lambda, &g), 1.0 / lambda)
            })
        }
        _ => None,
    };
    Ok(GeometryReport {
        set: set.label(),
        anchor: *anchor,
        grad: *grad,
        fit,
        gamma_star: gamma,
        analytic,
    })
}

/// One property case: a set with claimed `(κ, q)`.
#[derive(Debug, Clone)]
pub struct PropertyCase {
    pub name: String,
    pub set: FeasibleSet,
    pub kappa: f64,
    pub q: f64,
    pub norm: NormTag,
    /// `true` when the suite expects a counterexample.
    pub expect_violation: bool,
}

#[derive(Debug, Clone)]
pub struct CaseOutcome {
    pub name: String,
    pub definition_holds: bool,
    pub growth_holds: bool,
    pub definition_margin: f64,
    pub growth_margin: f64,
    pub passed: bool,
    pub counterexample: Option<Violation>,
}

impl fmt::Display for CaseOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: definition {} (margin {:e}), linear growth {} (margin {:e})",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            if self.definition_holds { "holds" } else { "violated" },
            self.definition_margin,
            if self.growth_holds { "holds" } else { "violated" },
            self.growth_margin,
        )?;
        if let Some(v) = &self.counterexample {
            write!(f, "\n    counterexample: {v}")?;
        }
        Ok(())
    }
}

pub const SUITES: [&str; 4] = ["lp-balls", "euclidean-ball", "box-counterexample", "all"];

pub fn suite_cases(suite: &str) -> Result<Vec<PropertyCase>> {
    let lp = || -> Result<Vec<PropertyCase>> {
        [2.0, 3.0, 4.0]
            .iter()
            .map(|&p| {
                Ok(PropertyCase {
                    name: format!("lp_ball(p={p}) kappa=1/{p} q={p}"),
                    set: FeasibleSet::lp_ball(p, 1.0, 2)?,
                    kappa: 1.0 / p,
                    q: p,
                    norm: if p == 2.0 { NormTag::L2 } else { NormTag::Lp(p) },
                    expect_violation: false,
                })
            })
            .collect()
    };
    let ball = || PropertyCase {
        name: "euclidean_ball(r=1) kappa=1 q=2".into(),
        set: FeasibleSet::unit_ball(2),
        kappa: 1.0,
        q: 2.0,
        norm: NormTag::L2,
        expect_violation: false,
    };
    let boxed = || -> Result<PropertyCase> {
        Ok(PropertyCase {
            name: "box([-1,1]^2) kappa=0.1 q=2".into(),
            set: FeasibleSet::centered_box(2, 1.0)?,
            kappa: 0.1,
            q: 2.0,
            norm: NormTag::L2,
            expect_violation: true,
        })
    };
    Ok(match suite {
        "lp-balls" => lp()?,
        "euclidean-ball" => vec![ball()],
        "box-counterexample" => vec![boxed()?],
        "all" => {
            let mut v = lp()?;
            v.push(ball());
            v.push(boxed()?);
            v
        }
        other => {
            return Err(OcoError::Config(format!(
                "unknown suite {other:?}; expected one of {SUITES:?}"
            )))
        }
    })
}

pub fn run_case(case: &PropertyCase, trials: usize) -> Result<CaseOutcome> {
    let r = uniform_convexity_witness(&case.set, case.kappa, case.q, case.norm, trials)?;
    let passed = if case.expect_violation { !r.holds } else { r.holds };
    Ok(CaseOutcome {
        name: case.name.clone(),
        definition_holds: r.definition_holds(),
        growth_holds: r.growth_holds(),
        definition_margin: r.definition_margin,
        growth_margin: r.growth_margin,
        passed,
        counterexample: r.first_violation().copied(),
    })
}

/// Runs a property suite; the process should exit 0 iff every case passes.
pub fn cmd_property_test(suite: &str, trials: usize) -> Result<Vec<CaseOutcome>> {
    suite_cases(suite)?
        .iter()
        .map(|c| run_case(c, trials))
        .collect()
}
