//! Command-line front end: `construct`, `verify`, `fuzz` and `audit`.
//!
//! Exit codes: 0 on success, 1 when a check fails, 2 on bad usage or
//! degenerate input.

pub mod document;
pub mod svg;

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use simson_core::verify::{audit_printed_formulas, audit_sample, fuzz, run_checks, FuzzConfig};
use simson_core::{build_scene, Float, Params, Rational, Scalar, Scene, SceneError, Tolerance};

pub use document::{DocumentError, SceneDocument};
pub use svg::render_svg;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "simson",
    version,
    about = "Oblique Wallace-Simson line constructions in exact arithmetic"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the scene and print every point, line and circle.
    Construct(ConstructArgs),
    /// Build the scene and run all checks.
    Verify(SceneArgs),
    /// Run the checks on seeded random instances.
    Fuzz(FuzzArgs),
    /// Compare the published closed forms with the constructed objects.
    Audit(AuditArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Exact,
    Float,
}

#[derive(Debug, Clone, Args)]
pub struct SceneArgs {
    /// Parameter of vertex A (integer, p/q or decimal).
    #[arg(long, allow_hyphen_values = true)]
    pub a: String,
    #[arg(long, allow_hyphen_values = true)]
    pub b: String,
    #[arg(long, allow_hyphen_values = true)]
    pub c: String,
    /// Obliquity; 0 gives the classical Simson line.
    #[arg(long, allow_hyphen_values = true)]
    pub t: String,
    #[arg(long, value_enum, default_value = "exact")]
    pub backend: BackendArg,
    /// Absolute tolerance of the float backend.
    #[arg(long, default_value_t = 1e-9)]
    pub eps: f64,
}

#[derive(Debug, Clone, Args)]
pub struct ConstructArgs {
    #[command(flatten)]
    pub scene: SceneArgs,
    /// Write the scene as JSON.
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Write an SVG figure.
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct FuzzArgs {
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub count: usize,
    /// Bound on numerators.
    #[arg(long, default_value_t = 10)]
    pub max_mag: u64,
    /// Bound on denominators.
    #[arg(long, default_value_t = 10)]
    pub max_den: u64,
    /// Never force t = 0.
    #[arg(long)]
    pub no_t_zero: bool,
    /// Print every instance, not only failures.
    #[arg(long)]
    pub verbose: bool,
}

#[derive(Debug, Clone, Args)]
pub struct AuditArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<String>,
    /// Seed for sampled audits (used when no parameters are given).
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub count: usize,
    #[arg(long, default_value_t = 10)]
    pub max_mag: u64,
    #[arg(long, default_value_t = 10)]
    pub max_den: u64,
}

/// Input problems reported with exit code 2.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

fn parse_params<S: Scalar>([a, b, c, t]: [&str; 4], ctx: &S::Context) -> anyhow::Result<Params<S>> {
    let p = |name: &str, text: &str| {
        S::parse(text, ctx).map_err(|e| usage(format!("invalid --{name} {text:?}: {e}")))
    };
    let params = Params::new(p("a", a)?, p("b", b)?, p("c", c)?, p("t", t)?)
        .map_err(|e| usage(e.to_string()))?;
    Ok(params)
}

fn scene_for<S: Scalar>(args: &SceneArgs, ctx: &S::Context) -> anyhow::Result<Scene<S>> {
    let params = parse_params([&args.a, &args.b, &args.c, &args.t], ctx)?;
    build_scene(&params).map_err(scene_error)
}

/// Bad input is a usage error; anything else means a theorem failed to
/// hold during construction.
fn scene_error(e: SceneError) -> anyhow::Error {
    match e {
        SceneError::DegenerateTriangle(_) | SceneError::JEqualsH => usage(e.to_string()),
        other => anyhow::Error::new(other).context("verification failed"),
    }
}

fn tolerance(eps: f64) -> anyhow::Result<Tolerance> {
    Tolerance::new(eps).map_err(|e| usage(e.to_string()))
}

/// Human-readable listing of a scene.
pub fn scene_summary<S: Scalar>(scene: &Scene<S>) -> String {
    let p = &scene.params;
    let mut out = format!(
        "params: a={} b={} c={} t={} ({})\n",
        p.a,
        p.b,
        p.c,
        p.t,
        S::BACKEND.as_str()
    );
    out.push_str("points:\n");
    for (name, pt) in scene.points() {
        out.push_str(&format!("  {name:<8} {pt}\n"));
    }
    out.push_str("lines (ax + by + c = 0):\n");
    for (name, l) in scene.lines() {
        out.push_str(&format!("  {name:<8} [{}, {}, {}]\n", l.a, l.b, l.c));
    }
    out.push_str("circles (x^2 + y^2 + dx + ey + f = 0):\n");
    for (name, c) in scene.circles() {
        out.push_str(&format!("  {name:<8} [{}, {}, {}]\n", c.d, c.e, c.f));
    }
    let flags: Vec<String> = scene.flags.iter().map(ToString::to_string).collect();
    if flags.is_empty() {
        out.push_str("flags: none\n");
    } else {
        out.push_str(&format!("flags: {}\n", flags.join(", ")));
    }
    out
}

fn construct_with<S: Scalar>(
    args: &ConstructArgs,
    ctx: &S::Context,
    out: &mut dyn Write,
) -> anyhow::Result<i32> {
    let scene = scene_for::<S>(&args.scene, ctx)?;
    write!(out, "{}", scene_summary(&scene))?;
    if let Some(path) = &args.json {
        std::fs::write(path, SceneDocument::from_scene(&scene).to_json())
            .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
    }
    if let Some(path) = &args.svg {
        std::fs::write(path, render_svg(&scene))
            .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(EXIT_OK)
}

fn verify_with<S: Scalar>(
    args: &SceneArgs,
    ctx: &S::Context,
    out: &mut dyn Write,
) -> anyhow::Result<i32> {
    let scene = scene_for::<S>(args, ctx)?;
    let report = run_checks(&scene);
    writeln!(out, "{report}")?;
    Ok(if report.all_pass() {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    })
}

fn run_fuzz(args: &FuzzArgs, out: &mut dyn Write) -> anyhow::Result<i32> {
    let config = FuzzConfig {
        seed: args.seed,
        count: args.count,
        max_mag: args.max_mag,
        max_den: args.max_den,
        include_t_zero: !args.no_t_zero,
    };
    let report = fuzz(&config).map_err(|e| usage(e.to_string()))?;
    if args.verbose {
        for instance in &report.instances {
            writeln!(out, "{instance}")?;
        }
        writeln!(out, "{}", report.summary())?;
    } else {
        writeln!(out, "{report}")?;
    }
    Ok(if report.all_pass() {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    })
}

fn run_audit(args: &AuditArgs, out: &mut dyn Write) -> anyhow::Result<i32> {
    let given = [&args.a, &args.b, &args.c, &args.t];
    let count = given.iter().filter(|v| v.is_some()).count();
    if count == 4 {
        let texts = given.map(|v| v.as_deref().unwrap_or_default());
        let params = parse_params::<Rational>(texts, &())?;
        let report = audit_printed_formulas(&params).map_err(scene_error)?;
        write!(out, "{report}")?;
        return Ok(EXIT_OK);
    }
    if count != 0 {
        return Err(usage("audit needs all of --a --b --c --t, or none of them"));
    }
    let config = FuzzConfig {
        seed: args.seed,
        count: args.count,
        max_mag: args.max_mag,
        max_den: args.max_den,
        include_t_zero: true,
    };
    let reports = audit_sample(&config).map_err(|e| usage(e.to_string()))?;
    writeln!(
        out,
        "audit seed={} count={} max-mag={} max-den={}",
        config.seed, config.count, config.max_mag, config.max_den
    )?;
    let names: Vec<&str> = simson_core::verify::Formula::ALL
        .iter()
        .map(|f| f.name())
        .collect();
    writeln!(out, "columns: {}", names.join(" "))?;
    let mut tally: BTreeMap<String, usize> = BTreeMap::new();
    for (i, result) in reports.iter().enumerate() {
        let line = match result {
            Ok(report) => {
                let [a, b, c, t] = &report.params;
                let pattern = report.pattern();
                *tally.entry(pattern.clone()).or_default() += 1;
                format!("#{i:<5} a={a} b={b} c={c} t={t}: {pattern}")
            }
            Err(e) => {
                *tally.entry(format!("skipped ({e})")).or_default() += 1;
                format!("#{i:<5} skipped: {e}")
            }
        };
        writeln!(out, "{line}")?;
    }
    writeln!(out, "tally:")?;
    let mut rows: Vec<(&String, &usize)> = tally.iter().collect();
    rows.sort_by(|x, y| y.1.cmp(x.1).then(x.0.cmp(y.0)));
    for (pattern, n) in rows {
        writeln!(out, "{n:>6}  {pattern}")?;
    }
    Ok(EXIT_OK)
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> anyhow::Result<i32> {
    match &cli.command {
        Command::Construct(args) => match args.scene.backend {
            BackendArg::Exact => construct_with::<Rational>(args, &(), out),
            BackendArg::Float => construct_with::<Float>(args, &tolerance(args.scene.eps)?, out),
        },
        Command::Verify(args) => match args.backend {
            BackendArg::Exact => verify_with::<Rational>(args, &(), out),
            BackendArg::Float => verify_with::<Float>(args, &tolerance(args.eps)?, out),
        },
        Command::Fuzz(args) => run_fuzz(args, out),
        Command::Audit(args) => run_audit(args, out),
    }
}

/// Runs a parsed command, writing results to `out` and diagnostics to
/// `err`. Returns the process exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let code = if e.downcast_ref::<UsageError>().is_some() {
                EXIT_USAGE
            } else {
                EXIT_CHECK_FAILED
            };
            let _ = writeln!(err, "simson: {e:#}");
            code
        }
    }
}
