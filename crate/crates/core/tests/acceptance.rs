//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary (`harness = false`) so every line is printed even
//! when earlier criteria fail. Experiment criteria go through the same path
//! as `oco-lab run` / `oco-lab fit`, using the JSON files under `configs/`.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use oco_lab::cli::{self, FitRow};
use oco_lab::environments::{corruption_budget_used, growth_margin, CorruptionPlan};
use oco_lab::geometry::{gamma_star, min_enclosing_sphere_facing, SphereFit};
use oco_lab::harness::{bernstein_check, fit_growth_exponent, ExperimentConfig};
use oco_lab::{EnvSpec, Environment, FeasibleSet, RegretCurve, Vector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SPHERE_TOL: f64 = 1e-6;
const GAMMA_REL_TOL: f64 = 1e-3;
const PROPERTY_TRIALS: usize = 1000;
const L_HAT_TOL: f64 = 1e-9;
const FAST_SLOPE_MAX: f64 = 0.15;
const LOG_RATIO_MAX: f64 = 1.8;
const CORRUPTED_SLOPE_MAX: f64 = 0.25;
const P4_SLOPE_RANGE: (f64, f64) = (0.15, 0.45);
const BOUND61_C: f64 = 10.0;
const FTL_LINEAR_FRACTION: f64 = 0.3;
const ADVERSARIAL_SLOPE_MAX: f64 = 0.6;
const BERNSTEIN_B: f64 = 40.4;
const BERNSTEIN_GRID: usize = 10_000;
const BERNSTEIN_SLACK_MIN: f64 = -1e-9;
const GEOMETRY_CASES: usize = 1000;
const GEOMETRY_TOL: f64 = 1e-9;

struct Suite {
    scratch: tempfile::TempDir,
    lines: Vec<(usize, bool, String)>,
}

impl Suite {
    fn record(&mut self, id: usize, started: Instant, outcome: Result<(bool, String), String>) {
        let (ok, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
        let line = format!(
            "{} criterion {id:>2}: {detail} [{:.1}s]",
            if ok { "PASS" } else { "FAIL" },
            started.elapsed().as_secs_f64()
        );
        println!("{line}");
        self.lines.push((id, ok, line));
    }

    fn out_dir(&self, name: &str) -> PathBuf {
        self.scratch.path().join(name)
    }
}

fn config_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("configs")
        .join(format!("{name}.json"))
}

fn load(name: &str) -> Result<ExperimentConfig, String> {
    cli::load_config(&config_path(name)).map_err(|e| e.to_string())
}

struct Experiment {
    curve: RegretCurve,
    fit: FitRow,
}

/// `oco-lab run <config> --out <scratch>` followed by `oco-lab fit`.
fn run_and_fit(suite: &Suite, name: &str) -> Result<Experiment, String> {
    let cfg = load(name)?;
    let outcome = cli::run_config(&cfg, Some(&suite.out_dir(name))).map_err(|e| e.to_string())?;
    let mut rows = cli::cmd_fit(&outcome.summary_path).map_err(|e| e.to_string())?;
    if rows.len() != 1 {
        return Err(format!("{name}: expected one fit group, got {}", rows.len()));
    }
    Ok(Experiment {
        curve: outcome.curve,
        fit: rows.remove(0),
    })
}

fn v(c: &[f64]) -> Vector {
    Vector::from_slice(c)
}

fn criterion_1_2(suite: &mut Suite) {
    let started = Instant::now();
    let mut worst_sphere = 0.0f64;
    let mut worst_gamma = 0.0f64;
    let mut failure = None;
    for lambda in [0.25, 0.5, 0.8] {
        let set = match FeasibleSet::w_lambda(lambda) {
            Ok(s) => s,
            Err(e) => {
                failure = Some(e.to_string());
                break;
            }
        };
        for (anchor, grad) in [
            (v(&[0.0, -lambda]), v(&[0.0, 1.0])),
            (v(&[0.0, lambda]), v(&[0.0, -1.0])),
            (v(&[0.0, -lambda]), v(&[0.0, 0.1])),
        ] {
            let report = match cli::cmd_geometry_check(&set, &anchor, &grad) {
                Ok(r) => r,
                Err(e) => {
                    failure = Some(e.to_string());
                    break;
                }
            };
            // Closed form, independent of the library's own analytic field.
            let side = -anchor[1].signum();
            let center = v(&[0.0, side * (1.0 - lambda * lambda) / lambda]);
            let radius = 1.0 / lambda;
            let err = match report.fit.sphere() {
                Some(s) => s.center.dist(&center).max((s.radius - radius).abs()),
                None => f64::INFINITY,
            };
            worst_sphere = worst_sphere.max(err);

            let expected = grad.norm() * lambda / 2.0;
            let cross = match min_enclosing_sphere_facing(&set, &anchor, &grad) {
                Ok(SphereFit::Enclosed(s)) => grad.norm() / (2.0 * s.radius),
                _ => f64::NAN,
            };
            let direct = gamma_star(&set, &anchor, &grad).unwrap_or(f64::NAN);
            let rel = ((report.gamma_star - expected).abs() / expected)
                .max((direct - expected).abs() / expected)
                .max((cross - expected).abs() / expected);
            worst_gamma = worst_gamma.max(if rel.is_nan() { f64::INFINITY } else { rel });
        }
    }
    let detail = |what: &str, worst: f64, tol: f64| match &failure {
        Some(e) => Err(e.clone()),
        None => Ok((
            worst <= tol,
            format!("{what}: worst deviation {worst:.3e} (tol {tol:e}) over lambda in {{0.25,0.5,0.8}} incl. mirrored anchors"),
        )),
    };
    suite.record(1, started, detail("enclosing sphere of W_lambda", worst_sphere, SPHERE_TOL));
    suite.record(2, started, detail("gamma_star = |g| lambda / 2 (relative)", worst_gamma, GAMMA_REL_TOL));
}

fn criterion_3(suite: &mut Suite) {
    let started = Instant::now();
    let outcome = cli::cmd_property_test("all", PROPERTY_TRIALS)
        .map_err(|e| e.to_string())
        .map(|cases| {
            for c in &cases {
                println!("    {c}");
            }
            let failed: Vec<&str> = cases.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
            let detail = if failed.is_empty() {
                format!("{} cases, {PROPERTY_TRIALS} trials each", cases.len())
            } else {
                format!("{} of {} cases failed: {}", failed.len(), cases.len(), failed.join(", "))
            };
            (failed.is_empty(), detail)
        });
    suite.record(3, started, outcome);
}

fn criterion_4(suite: &mut Suite) {
    let started = Instant::now();
    let set = FeasibleSet::w_lambda(0.5).expect("valid");
    let horizon = 1 << 14;
    let outcome = (|| -> Result<(bool, String), String> {
        let mut worst = f64::INFINITY;
        for l in [0.05, 0.1] {
            let spec = EnvSpec::BetaBernoulliGrowth { k: 1.0, l };
            for seed in 0..32 {
                let mut env = Environment::new(&spec, &set, horizon, seed).map_err(|e| e.to_string())?;
                let x = set.canonical_center();
                let mut grads = Vec::with_capacity(horizon);
                for t in 1..=horizon {
                    let round = env.sample_round(t, &x).map_err(|e| e.to_string())?;
                    grads.push(round.observed.gradient(&x).map_err(|e| e.to_string())?);
                }
                worst = worst.min(growth_margin(&grads, l));
            }
        }
        Ok((
            worst >= 0.0,
            format!("min prefix growth margin {worst:.3e} over 32 seeds, T=2^14, L in {{0.05,0.1}}"),
        ))
    })();
    suite.record(4, started, outcome);
}

fn criterion_5(suite: &mut Suite) {
    let started = Instant::now();
    let (lambda, l, c, horizon) = (0.5, 0.1, 40.0, 1usize << 15);
    let outcome = (|| -> Result<(bool, String), String> {
        let set = FeasibleSet::w_lambda(lambda).map_err(|e| e.to_string())?;
        let plan = CorruptionPlan::new(l, lambda, c, horizon).map_err(|e| e.to_string())?;
        // L̂ from λL̂ = √(λL/C), computed here by hand.
        let l_hat = (lambda * l / c).sqrt() / lambda;
        let expected_budget = 800.0 * lambda * (l - l_hat);
        let spec = EnvSpec::CorruptedGrowth { k: 1.0, l, lambda, c };
        let mut worst_used = 0.0f64;
        for seed in 0..32 {
            let mut env = Environment::new(&spec, &set, horizon, seed).map_err(|e| e.to_string())?;
            let x = set.canonical_center();
            let rounds: Vec<_> = (1..=horizon)
                .map(|t| env.sample_round(t, &x))
                .collect::<Result<_, _>>()
                .map_err(|e| e.to_string())?;
            let used = corruption_budget_used(&rounds, &set, c).map_err(|e| e.to_string())?;
            worst_used = worst_used.max(used);
        }
        let budget_ok = (worst_used - expected_budget).abs() <= 1e-3 && worst_used <= c;
        let ok = plan.tau == 800 && (plan.l_hat - 0.070711).abs() <= 5e-7 && (plan.l_hat - l_hat).abs() <= L_HAT_TOL && budget_ok;
        Ok((
            ok,
            format!(
                "tau={} L_hat={:.9} budget used {:.6} (expected {:.6}, C={c}) on 32 seeds",
                plan.tau, plan.l_hat, worst_used, expected_budget
            ),
        ))
    })();
    suite.record(5, started, outcome);
}

fn primary_at(curve: &RegretCurve, horizon: usize) -> Result<f64, String> {
    curve
        .summary(horizon)
        .map(|h| h.primary().0)
        .ok_or_else(|| format!("missing horizon {horizon}"))
}

fn criterion_6(suite: &mut Suite, runs: &mut Vec<(String, f64)>) {
    let started = Instant::now();
    let outcome = run_and_fit(suite, "fast_rate").and_then(|e| {
        runs.push(("fast_rate".into(), e.curve.max_bound61_ratio()));
        let ratio = primary_at(&e.curve, 1 << 17)? / primary_at(&e.curve, 1 << 13)?;
        let f = e.fit.fit;
        Ok((
            f.slope <= FAST_SLOPE_MAX && ratio <= LOG_RATIO_MAX,
            format!(
                "exponent {:.4} (max {FAST_SLOPE_MAX}, R^2 {:.4}); R(2^17)/R(2^13) = {ratio:.4} (max {LOG_RATIO_MAX})",
                f.slope, f.r_squared
            ),
        ))
    });
    suite.record(6, started, outcome);
}

fn criterion_8(suite: &mut Suite, runs: &mut Vec<(String, f64)>) {
    let started = Instant::now();
    let outcome = run_and_fit(suite, "corrupted").map(|e| {
        runs.push(("corrupted".into(), e.curve.max_bound61_ratio()));
        let f = e.fit.fit;
        (
            f.slope <= CORRUPTED_SLOPE_MAX,
            format!("exponent {:.4} (max {CORRUPTED_SLOPE_MAX}, R^2 {:.4}) over T=2^14..2^17", f.slope, f.r_squared),
        )
    });
    suite.record(8, started, outcome);
}

fn criterion_9(suite: &mut Suite, runs: &mut Vec<(String, f64)>) {
    let started = Instant::now();
    let outcome = (|| -> Result<(bool, String), String> {
        let mut slopes = Vec::new();
        for p in [2, 3, 4] {
            let name = format!("lp_interpolation_p{p}");
            let e = run_and_fit(suite, &name)?;
            runs.push((name, e.curve.max_bound61_ratio()));
            println!("    p={p}: exponent {:.4} (R^2 {:.4})", e.fit.fit.slope, e.fit.fit.r_squared);
            slopes.push(e.fit.fit.slope);
        }
        let monotone = slopes.windows(2).all(|w| w[0] <= w[1]);
        let p2 = slopes[0] <= FAST_SLOPE_MAX;
        let p4 = (P4_SLOPE_RANGE.0..=P4_SLOPE_RANGE.1).contains(&slopes[2]);
        Ok((
            monotone && p2 && p4,
            format!(
                "exponents p=2,3,4: {:.4}, {:.4}, {:.4}; monotone {monotone}; p=2 <= {FAST_SLOPE_MAX} {p2}; p=4 in [{}, {}] {p4}",
                slopes[0], slopes[1], slopes[2], P4_SLOPE_RANGE.0, P4_SLOPE_RANGE.1
            ),
        ))
    })();
    suite.record(9, started, outcome);
}

fn criterion_10(suite: &mut Suite, runs: &mut Vec<(String, f64)>) {
    let started = Instant::now();
    let outcome = (|| -> Result<(bool, String), String> {
        let run = |name: &str| -> Result<RegretCurve, String> {
            let cfg = load(name)?;
            cli::run_config(&cfg, Some(&suite.out_dir(name)))
                .map(|o| o.curve)
                .map_err(|e| e.to_string())
        };
        let horizon = 10_000usize;
        let ftl = run("adversarial_ftl")?;
        let uni = run("adversarial_universal")?;
        runs.push(("adversarial_universal".into(), uni.max_bound61_ratio()));
        let ftl_r = ftl.summary(horizon).ok_or("missing horizon")?.mean_realized_regret;
        let uni_r = uni.summary(horizon).ok_or("missing horizon")?.mean_realized_regret;
        let t = horizon as f64;
        let cap = 5.0 * (t * t.ln()).sqrt();
        let trace = &uni.runs_at(horizon).next().ok_or("no runs")?.checkpoints;
        let pts: Vec<(f64, f64)> = trace.iter().map(|c| (c.t as f64, c.cum_realized_regret)).collect();
        let fit = fit_growth_exponent(&pts).map_err(|e| e.to_string())?;
        Ok((
            ftl_r >= FTL_LINEAR_FRACTION * t && uni_r <= cap && fit.slope <= ADVERSARIAL_SLOPE_MAX,
            format!(
                "FTL regret {ftl_r:.1} (min {:.0}); universal regret {uni_r:.2} (max {cap:.1}), prefix exponent {:.4} (max {ADVERSARIAL_SLOPE_MAX})",
                FTL_LINEAR_FRACTION * t,
                fit.slope
            ),
        ))
    })();
    suite.record(10, started, outcome);
}

fn criterion_7(suite: &mut Suite, runs: &[(String, f64)]) {
    let started = Instant::now();
    let outcome = if runs.is_empty() {
        Err("no universal runs recorded".into())
    } else {
        let (name, worst) = runs
            .iter()
            .cloned()
            .fold((String::new(), 0.0f64), |acc, r| if r.1 > acc.1 { r } else { acc });
        Ok((
            runs.len() == 6 && worst <= BOUND61_C,
            format!(
                "max bound ratio {worst:.4} ({name}) over {} universal experiments, c = {BOUND61_C}",
                runs.len()
            ),
        ))
    };
    suite.record(7, started, outcome);
}

fn criterion_11(suite: &mut Suite) {
    let started = Instant::now();
    let outcome = run_and_fit(suite, "quadratic").map(|e| {
        let x_star = e.curve.runs.first().map(|r| r.comparator);
        let f = e.fit.fit;
        (
            f.slope <= FAST_SLOPE_MAX,
            format!(
                "exponent {:.4} (max {FAST_SLOPE_MAX}, R^2 {:.4}); x* = {}",
                f.slope,
                f.r_squared,
                x_star.map(|x| x.to_string()).unwrap_or_default()
            ),
        )
    });
    suite.record(11, started, outcome);
}

fn criterion_12(suite: &mut Suite) {
    let started = Instant::now();
    let outcome = (|| -> Result<(bool, String), String> {
        let set = FeasibleSet::w_lambda(0.5).map_err(|e| e.to_string())?;
        let spec = EnvSpec::BetaBernoulliGrowth { k: 1.0, l: 0.1 };
        let env = Environment::new(&spec, &set, 1 << 10, 0).map_err(|e| e.to_string())?;
        // B = 2 G² ρ / ||g°|| with G² = 1 + L², ρ = 1/λ, ||g°|| = L.
        let b = 2.0 * (1.0 + 0.01) * 2.0 / 0.1;
        if (b - BERNSTEIN_B).abs() > 1e-12 {
            return Err(format!("B recomputed as {b}"));
        }
        let r = bernstein_check(&env, BERNSTEIN_B, BERNSTEIN_GRID).map_err(|e| e.to_string())?;
        Ok((
            r.worst_slack >= BERNSTEIN_SLACK_MIN && r.samples >= BERNSTEIN_GRID,
            format!(
                "B = {BERNSTEIN_B}: worst slack {:.3e} at {} over {} points",
                r.worst_slack, r.worst_point, r.samples
            ),
        ))
    })();
    suite.record(12, started, outcome);
}

/// Direction with i.i.d. N(0,1)-ish coordinates (sum of uniforms is enough here).
fn random_direction(rng: &mut ChaCha8Rng, d: usize) -> Vector {
    let mut w = Vector::zeros(d);
    for i in 0..d {
        w[i] = (0..4).map(|_| rng.random::<f64>() - 0.5).sum();
    }
    w
}

/// Random point of `K`: a boundary point pulled toward the center.
fn random_member(k: &FeasibleSet, rng: &mut ChaCha8Rng) -> Vector {
    let c = k.canonical_center();
    let b = k.boundary_point(&random_direction(rng, k.dim()));
    c.axpy(rng.random::<f64>(), &(b - c))
}

fn geometry_sets() -> Vec<FeasibleSet> {
    vec![
        FeasibleSet::ball(v(&[0.3, -0.2, 0.1]), 1.5).unwrap(),
        FeasibleSet::ellipsoid(v(&[1.0, 0.5, 0.2])).unwrap(),
        FeasibleSet::w_lambda(0.5).unwrap(),
        FeasibleSet::lp_ball(1.5, 1.0, 3).unwrap(),
        FeasibleSet::lp_ball(3.0, 1.0, 2).unwrap(),
        FeasibleSet::lp_ball(4.0, 2.0, 3).unwrap(),
        FeasibleSet::lp_ball(1.0, 1.0, 3).unwrap(),
        FeasibleSet::cuboid(v(&[-1.0, 0.0, -0.5]), v(&[1.0, 2.0, 0.5])).unwrap(),
        FeasibleSet::simplex(1.0, 3).unwrap(),
    ]
}

/// Counts failures of projection and linear-minimizer oracles on one set.
fn geometry_failures(k: &FeasibleSet, seed: u64) -> Result<(usize, String), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let scale = k.diameter();
    let probes: Vec<Vector> = (0..256).map(|_| random_member(k, &mut rng)).collect();
    let mut failures = 0usize;
    let mut first = String::new();
    let mut fail = |what: String, failures: &mut usize| {
        if *failures == 0 {
            first = what;
        }
        *failures += 1;
    };
    for case in 0..GEOMETRY_CASES {
        let z = k.canonical_center().axpy(2.0 * scale * rng.random::<f64>(), &random_direction(&mut rng, k.dim()));
        let x = k.project(&z).map_err(|e| e.to_string())?;
        if !k.contains(&x).map_err(|e| e.to_string())? {
            fail(format!("case {case}: projection {x} of {z} is outside"), &mut failures);
            continue;
        }
        let again = k.project(&x).map_err(|e| e.to_string())?;
        if again.dist(&x) > GEOMETRY_TOL * scale {
            fail(format!("case {case}: projection not idempotent at {x}"), &mut failures);
        }
        // Variational inequality <z − x, y − x> <= 0 for members y.
        let r = z - x;
        let worst = probes.iter().map(|y| r.dot(&(*y - x))).fold(f64::NEG_INFINITY, f64::max);
        if worst > 1e-7 * (1.0 + r.norm()) * scale {
            fail(format!("case {case}: projection of {z} violates optimality by {worst:e}"), &mut failures);
        }

        let theta = random_direction(&mut rng, k.dim());
        let lm = k.linear_minimizer(&theta).map_err(|e| e.to_string())?;
        if !k.contains(&lm).map_err(|e| e.to_string())? {
            fail(format!("case {case}: linear minimizer {lm} is outside"), &mut failures);
            continue;
        }
        let value = theta.dot(&lm);
        let grid_best = probes
            .iter()
            .chain(std::iter::once(&x))
            .map(|y| theta.dot(y))
            .fold(f64::INFINITY, f64::min);
        if value > grid_best + GEOMETRY_TOL * (1.0 + theta.norm() * scale) {
            fail(format!("case {case}: grid beats linear minimizer for {theta}"), &mut failures);
        }
        // The minimizer is a member, so a boundary ray toward it cannot do better either.
        let ray = k.boundary_point(&(lm - k.canonical_center()));
        if theta.dot(&ray) < value - 1e-7 * (1.0 + theta.norm() * scale) {
            fail(format!("case {case}: boundary ray beats linear minimizer for {theta}"), &mut failures);
        }
    }
    Ok((failures, first))
}

fn criterion_13(suite: &mut Suite) {
    let started = Instant::now();
    let outcome = (|| -> Result<(bool, String), String> {
        let sets = geometry_sets();
        let mut total = 0;
        for (i, k) in sets.iter().enumerate() {
            let (n, first) = geometry_failures(k, 1000 + i as u64)?;
            if n > 0 {
                println!("    {}: {n} failures, first: {first}", k.label());
            }
            total += n;
        }
        Ok((
            total == 0,
            format!("{total} failures over {} sets x {GEOMETRY_CASES} cases", sets.len()),
        ))
    })();
    suite.record(13, started, outcome);
}

fn snapshot(dir: &Path) -> Result<Vec<(String, Vec<u8>)>, String> {
    let mut files: Vec<(String, Vec<u8>)> = std::fs::read_dir(dir)
        .map_err(|e| e.to_string())?
        .map(|entry| {
            let path = entry.map_err(|e| e.to_string())?.path();
            let bytes = std::fs::read(&path).map_err(|e| e.to_string())?;
            Ok((path.file_name().unwrap().to_string_lossy().into_owned(), bytes))
        })
        .collect::<Result<_, String>>()?;
    files.sort();
    Ok(files)
}

fn criterion_14(suite: &mut Suite) {
    let started = Instant::now();
    let outcome = (|| -> Result<(bool, String), String> {
        let mut checked = 0;
        for name in ["fast_rate", "adversarial_universal", "quadratic"] {
            let mut cfg = load(name)?;
            // A short prefix of the config keeps this quick; the code path is the same.
            let first = cfg.horizons[0];
            cfg.horizons.retain(|&t| t <= (1 << 12).max(first));
            cfg.seeds.count = cfg.seeds.count.min(4);
            let a = suite.out_dir(&format!("{name}_determinism_a"));
            let b = suite.out_dir(&format!("{name}_determinism_b"));
            cli::run_config(&cfg, Some(&a)).map_err(|e| e.to_string())?;
            cli::run_config(&cfg, Some(&b)).map_err(|e| e.to_string())?;
            // Overwriting an existing output directory must also reproduce it.
            cli::run_config(&cfg, Some(&b)).map_err(|e| e.to_string())?;
            let (sa, sb) = (snapshot(&a)?, snapshot(&b)?);
            if sa != sb {
                return Ok((false, format!("{name}: outputs differ between reruns")));
            }
            checked += sa.len();
        }
        Ok((true, format!("{checked} CSV files byte-identical across reruns")))
    })();
    suite.record(14, started, outcome);
}

fn main() -> ExitCode {
    let mut suite = Suite {
        scratch: tempfile::tempdir().expect("scratch directory"),
        lines: Vec::new(),
    };
    println!("acceptance suite ({} threads)", oco_lab::harness::thread_count());
    criterion_1_2(&mut suite);
    criterion_3(&mut suite);
    criterion_4(&mut suite);
    criterion_5(&mut suite);
    let mut universal_runs = Vec::new();
    criterion_6(&mut suite, &mut universal_runs);
    criterion_8(&mut suite, &mut universal_runs);
    criterion_9(&mut suite, &mut universal_runs);
    criterion_10(&mut suite, &mut universal_runs);
    criterion_7(&mut suite, &universal_runs);
    criterion_11(&mut suite);
    criterion_12(&mut suite);
    criterion_13(&mut suite);
    criterion_14(&mut suite);

    suite.lines.sort_by_key(|l| l.0);
    println!("\nsummary:");
    for (_, _, line) in &suite.lines {
        println!("{line}");
    }
    let failed = suite.lines.iter().filter(|l| !l.1).count();
    println!("{} of {} criteria passed", suite.lines.len() - failed, suite.lines.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
