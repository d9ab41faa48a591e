//! `stickdist <triangle|quad|ngon> <command> [flags]`
//!
//! Results go to stdout as one JSON object or as CSV; diagnostics go to
//! stderr. Exit status is 0 on success, 2 on a usage error and 1 when a
//! computation fails.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod output;

use std::f64::consts::PI;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use num_traits::ToPrimitive;
use serde_json::Value;
use stickdist::montecarlo::SampleStats;
use stickdist::ngon::{self, PieceVector};
use stickdist::quadrilateral::{self as quad, MedianMode, QuadSides};
use stickdist::triangle::{self, StickConvention, TriangleSides};

use output::{num, nums, Object, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Triangle,
    Quad,
    Ngon,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Command {
    Pdf,
    Cdf,
    Median,
    Moments,
    Simulate,
    AngleDensity,
    Tent,
    Omega,
    Prob,
    Area,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Numeric,
    Mc,
}

/// Area and angle distributions of polygons made from a randomly broken stick.
#[derive(Debug, Parser)]
#[command(name = "stickdist", version)]
struct Cli {
    family: Family,
    command: Command,

    /// Stick length L; areas scale by (L/2)².
    #[arg(long, default_value_t = 2.0)]
    stick_length: f64,

    /// Target tolerance. Quadrilateral integrals use at least 1e-7.
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,

    /// Monte Carlo trials.
    #[arg(long)]
    samples: Option<u64>,

    #[arg(long, env = "STICKDIST_SEED", default_value_t = 0)]
    seed: u64,

    /// Monte Carlo streams; output depends on it, not on the machine.
    #[arg(long, default_value_t = 4)]
    workers: usize,

    /// Grid start, in output units.
    #[arg(long)]
    from: Option<f64>,

    /// Grid end, in output units.
    #[arg(long)]
    to: Option<f64>,

    /// Grid points, endpoints included.
    #[arg(long)]
    steps: Option<usize>,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Significant digits in CSV output.
    #[arg(long, default_value_t = 17)]
    precision: usize,

    /// Number of pieces.
    #[arg(long)]
    n: Option<u32>,

    /// Comma-separated side lengths.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    sides: Option<Vec<f64>>,

    /// Squared area in canonical (L = 2) units.
    #[arg(long)]
    r1: Option<f64>,

    /// Fixes the first angle for `quad tent`.
    #[arg(long)]
    alpha1: Option<f64>,

    #[arg(long, value_enum, default_value_t = Mode::Numeric)]
    mode: Mode,

    /// `quad simulate`: sample the angle α₁ instead of the area.
    #[arg(long)]
    angle: bool,
}

enum Failure {
    Usage(String),
    Numeric(stickdist::Error),
    Io(io::Error),
}

impl From<stickdist::Error> for Failure {
    fn from(e: stickdist::Error) -> Self {
        Failure::Numeric(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type Outcome<T> = Result<T, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

enum Report {
    Json(Value),
    Table(Table, Object),
}

const DEFAULT_STEPS: usize = 101;
const DEFAULT_SAMPLES: u64 = 1_000_000;
const QUAD_TOL_FLOOR: f64 = 1e-7;
const MEDIAN_Z: f64 = 3.0;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Numeric(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> Outcome<()> {
    validate(cli)?;
    let report = match cli.family {
        Family::Triangle => triangle_cmd(cli)?,
        Family::Quad => quad_cmd(cli)?,
        Family::Ngon => ngon_cmd(cli)?,
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match (report, cli.format) {
        (Report::Json(v), _) => output::write_json(&mut out, &v)?,
        (Report::Table(t, extra), Format::Json) => output::write_json(&mut out, &t.to_json(extra))?,
        (Report::Table(t, _), Format::Csv) => t.write_csv(&mut out, cli.precision)?,
    }
    out.flush()?;
    Ok(())
}

fn validate(cli: &Cli) -> Outcome<()> {
    if !(cli.stick_length > 0.0 && cli.stick_length.is_finite()) {
        return Err(usage(format!(
            "--stick-length must be positive, got {}",
            cli.stick_length
        )));
    }
    if !(cli.tol > 0.0) {
        return Err(usage(format!("--tol must be positive, got {}", cli.tol)));
    }
    if cli.samples == Some(0) {
        return Err(usage("--samples must be at least 1"));
    }
    if cli.workers == 0 {
        return Err(usage("--workers must be at least 1"));
    }
    if cli.steps.is_some_and(|s| s < 2) {
        return Err(usage("--steps must be at least 2"));
    }
    if !(1..=17).contains(&cli.precision) {
        return Err(usage("--precision must be between 1 and 17"));
    }
    Ok(())
}

fn unsupported(family: &str, cmd: Command, supported: &str) -> Failure {
    let name = cmd.to_possible_value().expect("no skipped variants");
    usage(format!(
        "`{family} {}` is not a command; {family} supports {supported}",
        name.get_name()
    ))
}

/// Inclusive linear grid from `--from/--to/--steps` with the given defaults.
fn grid(cli: &Cli, lo: f64, hi: f64) -> Outcome<Vec<f64>> {
    let from = cli.from.unwrap_or(lo);
    let to = cli.to.unwrap_or(hi);
    if !(from < to) {
        return Err(usage(format!("--from ({from}) must be below --to ({to})")));
    }
    let steps = cli.steps.unwrap_or(DEFAULT_STEPS);
    let h = (to - from) / (steps - 1) as f64;
    Ok((0..steps)
        .map(|i| {
            if i == steps - 1 {
                to
            } else {
                from + h * i as f64
            }
        })
        .collect())
}

fn convention(cli: &Cli) -> Outcome<StickConvention> {
    StickConvention::new(cli.stick_length).map_err(|e| usage(format!("--stick-length: {e}")))
}

fn samples(cli: &Cli) -> u64 {
    cli.samples.unwrap_or(DEFAULT_SAMPLES)
}

/// Sides scaled to a stick of length 2.
fn canonical_sides(cli: &Cli, count: usize) -> Outcome<Vec<f64>> {
    let sides = cli.sides.as_ref().ok_or_else(|| {
        usage(format!(
            "--sides is required ({count} comma-separated lengths)"
        ))
    })?;
    if sides.len() != count {
        return Err(usage(format!(
            "--sides needs {count} lengths, got {}",
            sides.len()
        )));
    }
    let scale = 2.0 / cli.stick_length;
    Ok(sides.iter().map(|s| s * scale).collect())
}

fn stats_json(stats: &SampleStats, conv: StickConvention, cli: &Cli, value: &str) -> Object {
    let f = conv.area_factor();
    let (lo, hi) = stats.median_interval(MEDIAN_Z);
    Object::new()
        .put("quantity", value)
        .put("trials", stats.trials)
        .put("accepted", stats.accepted)
        .put("failures", stats.failures)
        .num("acceptance", stats.acceptance())
        .num("mean", stats.mean * f)
        .num("mean_se", stats.mean_se() * f)
        .num("variance", stats.variance() * f * f)
        .num("median", stats.median() * f)
        .put("median_interval", nums(&[lo * f, hi * f]))
        .num("min", stats.min * f)
        .num("max", stats.max * f)
        .put("seed", cli.seed)
        .put("workers", cli.workers as u64)
        .num("stick_length", cli.stick_length)
}

/// JSON summary, or the histogram density as CSV.
fn stats_report(
    stats: &SampleStats,
    conv: StickConvention,
    cli: &Cli,
    value: &'static str,
) -> Report {
    match cli.format {
        Format::Json => Report::Json(stats_json(stats, conv, cli, value).into_value()),
        Format::Csv => {
            let f = conv.area_factor();
            let mut t = Table::new(vec![value, "density"]);
            for (x, d) in stats.density() {
                t.push(vec![x * f, d / f]);
            }
            Report::Table(t, Object::new())
        }
    }
}

fn triangle_cmd(cli: &Cli) -> Outcome<Report> {
    let conv = convention(cli)?;
    let f = conv.area_factor();
    let echo = || Object::new().num("stick_length", cli.stick_length);
    Ok(match cli.command {
        Command::Pdf => {
            let mut t = Table::new(vec!["zeta", "pdf"]);
            for x in grid(cli, 0.0, triangle::ZETA_MAX * f)? {
                t.push(vec![x, triangle::pdf_or_zero(x / f) / f]);
            }
            Report::Table(t, echo())
        }
        Command::Cdf => {
            let mut t = Table::new(vec!["zeta", "cdf"]);
            for x in grid(cli, 0.0, triangle::ZETA_MAX * f)? {
                let z = x / f;
                let p = if z <= 0.0 {
                    0.0
                } else if z >= triangle::ZETA_MAX {
                    1.0
                } else {
                    triangle::cdf(z)?
                };
                t.push(vec![x, p]);
            }
            Report::Table(t, echo())
        }
        Command::Median => {
            let m = triangle::median_for(conv, cli.tol)?;
            Report::Json(
                Object::new()
                    .num("median", m)
                    .num("stick_length", cli.stick_length)
                    .into_value(),
            )
        }
        Command::Moments => {
            let mean = triangle::moment(1)?;
            let mean_sq = triangle::moment(2)?;
            Report::Json(
                Object::new()
                    .num("mean", mean * f)
                    .num("mean_square", mean_sq * f * f)
                    .num("mean_exact", 4.0 * PI / 105.0 * f)
                    .num("mean_square_exact", f * f / 60.0)
                    .num("stick_length", cli.stick_length)
                    .into_value(),
            )
        }
        Command::Simulate => {
            let stats = triangle::sample_parallel(cli.seed, samples(cli), cli.workers);
            stats_report(&stats, conv, cli, "area")
        }
        Command::Area => {
            let s = canonical_sides(cli, 3)?;
            let sides =
                TriangleSides::new(s[0], s[1], s[2]).map_err(|e| usage(format!("--sides: {e}")))?;
            Report::Json(
                Object::new()
                    .num("area", sides.area() * f)
                    .num("stick_length", cli.stick_length)
                    .into_value(),
            )
        }
        other => {
            return Err(unsupported(
                "triangle",
                other,
                "pdf, cdf, median, moments, simulate, area",
            ))
        }
    })
}

fn quad_cmd(cli: &Cli) -> Outcome<Report> {
    let conv = convention(cli)?;
    let f = conv.area_factor();
    let tol = cli.tol.max(QUAD_TOL_FLOOR);
    let echo = || {
        Object::new()
            .num("stick_length", cli.stick_length)
            .num("tol", tol)
    };
    Ok(match cli.command {
        Command::Pdf => {
            let mut t = Table::new(vec!["area", "pdf"]);
            for x in grid(cli, 0.0, quad::AREA_MAX * f)? {
                let a = x / f;
                let d = if a > 0.0 && a < quad::AREA_MAX {
                    quad::area_density(a, tol)?
                } else {
                    0.0
                };
                t.push(vec![x, d / f]);
            }
            Report::Table(t, echo())
        }
        Command::Cdf => {
            // one full integral, then increments between grid points
            let mut t = Table::new(vec!["area", "cdf"]);
            let mut last: Option<(f64, f64)> = None;
            for x in grid(cli, 0.0, quad::AREA_MAX * f)? {
                let a = (x / f).clamp(0.0, quad::AREA_MAX);
                let p = match last {
                    None => quad::area_cdf(a, tol)?,
                    Some((a0, p0)) => (p0 + quad::area_probability_between(a0, a, tol)?).min(1.0),
                };
                last = Some((a, p));
                t.push(vec![x, p]);
            }
            Report::Table(t, echo())
        }
        Command::Median => {
            let mode = match cli.mode {
                Mode::Numeric => MedianMode::Numeric { tol: cli.tol },
                Mode::Mc => MedianMode::MonteCarlo {
                    samples: samples(cli),
                    seed: cli.seed,
                    workers: cli.workers,
                },
            };
            let est = quad::quad_median_area(mode)?;
            let mut obj = Object::new()
                .num("median", est.median * f)
                .num("error_bar", est.error_bar * f)
                .put(
                    "mode",
                    if cli.mode == Mode::Numeric {
                        "numeric"
                    } else {
                        "mc"
                    },
                );
            if let Some(stats) = &est.stats {
                obj = obj
                    .put("samples", stats.trials)
                    .put("seed", cli.seed)
                    .put("workers", cli.workers as u64);
            }
            Report::Json(obj.num("stick_length", cli.stick_length).into_value())
        }
        Command::Moments => {
            let m = quad::area_moments(tol)?;
            Report::Json(
                Object::new()
                    .num("total", m.total)
                    .num("mean", m.mean_area * f)
                    .num("mean_square", m.mean_area_sq * f * f)
                    .num("mean_exact", quad::MEAN_AREA * f)
                    .num("mean_square_exact", quad::MEAN_AREA_SQ * f * f)
                    .num("stick_length", cli.stick_length)
                    .num("tol", tol)
                    .into_value(),
            )
        }
        Command::Simulate => {
            if cli.angle {
                let stats = quad::sample_angles_parallel(cli.seed, samples(cli), cli.workers);
                let unit = StickConvention::default();
                stats_report(&stats, unit, cli, "alpha")
            } else {
                let stats = quad::sample_parallel(cli.seed, samples(cli), cli.workers);
                stats_report(&stats, conv, cli, "area")
            }
        }
        Command::AngleDensity => {
            let mut t = Table::new(vec!["alpha", "density"]);
            for x in grid(cli, 0.0, PI)? {
                let d = if x > 0.0 && x < PI {
                    quad::angle_density(x)?
                } else {
                    0.0
                };
                t.push(vec![x, d]);
            }
            Report::Table(t, Object::new())
        }
        Command::Tent => {
            let xs = grid(cli, 0.0, PI)?;
            let tent = |x: f64, y: f64| -> Outcome<f64> {
                let inside = x > 0.0 && x < PI && y > 0.0 && y < PI;
                Ok(if inside {
                    quad::tent_density(x, y)?
                } else {
                    0.0
                })
            };
            match cli.alpha1 {
                Some(a1) => {
                    let mut t = Table::new(vec!["alpha2", "density"]);
                    for &y in &xs {
                        t.push(vec![y, tent(a1, y)?]);
                    }
                    Report::Table(t, Object::new().num("alpha1", a1))
                }
                None => {
                    let mut t = Table::new(vec!["alpha1", "alpha2", "density"]);
                    for &x in &xs {
                        for &y in &xs {
                            t.push(vec![x, y, tent(x, y)?]);
                        }
                    }
                    Report::Table(t, Object::new())
                }
            }
        }
        Command::Omega => {
            let r1 = cli.r1.ok_or_else(|| usage("--r1 is required"))?;
            let omega =
                quad::omega_interval(r1, cli.tol).map_err(|e| usage(format!("--r1: {e}")))?;
            let (lo, hi) = match omega.bounds {
                Some((lo, hi)) => (num(lo), num(hi)),
                None => (Value::Null, Value::Null),
            };
            Report::Json(
                Object::new()
                    .num("r1", r1)
                    .put("empty", omega.is_empty())
                    .put("lower", lo)
                    .put("upper", hi)
                    .into_value(),
            )
        }
        Command::Area => {
            let s = canonical_sides(cli, 4)?;
            let sides = QuadSides::new(s[0], s[1], s[2], s[3])
                .map_err(|e| usage(format!("--sides: {e}")))?;
            let area = quad::brahmagupta_area(&sides)?;
            let angles = quad::angles_from_sides(&sides)?;
            Report::Json(
                Object::new()
                    .num("area", area * f)
                    .put(
                        "angles",
                        nums(&[
                            angles.alpha1,
                            angles.alpha2,
                            angles.alpha3(),
                            angles.alpha4(),
                        ]),
                    )
                    .num("stick_length", cli.stick_length)
                    .into_value(),
            )
        }
        other => {
            return Err(unsupported(
                "quad",
                other,
                "pdf, cdf, median, moments, simulate, angle-density, tent, omega, area",
            ))
        }
    })
}

fn ngon_n(cli: &Cli) -> Outcome<u32> {
    match cli.n {
        Some(n) if n >= 3 => Ok(n),
        Some(n) => Err(usage(format!("--n must be at least 3, got {n}"))),
        None => Err(usage("--n is required")),
    }
}

fn ngon_cmd(cli: &Cli) -> Outcome<Report> {
    let conv = convention(cli)?;
    Ok(match cli.command {
        Command::Prob => {
            let n = ngon_n(cli)?;
            let p = ngon::formable_probability(n)?;
            let decimal = p.to_f64().unwrap_or(f64::NAN);
            Report::Json(
                Object::new()
                    .put("probability", p.to_string())
                    .num("decimal", decimal)
                    .into_value(),
            )
        }
        Command::Simulate => {
            let n = ngon_n(cli)?;
            let stats =
                ngon::simulate_ngon_parallel(n as usize, cli.seed, samples(cli), cli.workers)?;
            match cli.format {
                Format::Json => {
                    let p = ngon::formable_probability(n)?;
                    let expected = p.to_f64().unwrap_or(f64::NAN);
                    let obj = stats_json(&stats, conv, cli, "area")
                        .put("n", n)
                        .num("expected_acceptance", expected)
                        .num("acceptance_se", stats.acceptance_se(expected));
                    Report::Json(obj.into_value())
                }
                Format::Csv => stats_report(&stats, conv, cli, "area"),
            }
        }
        Command::Area => {
            let sides = cli
                .sides
                .clone()
                .ok_or_else(|| usage("--sides is required"))?;
            let pieces = PieceVector::new(sides).map_err(|e| usage(format!("--sides: {e}")))?;
            let sol =
                ngon::cyclic_polygon_area(&pieces, cli.tol.max(1e-14)).map_err(|e| match e {
                    stickdist::Error::NotFormable { .. } => usage(format!("--sides: {e}")),
                    e => Failure::Numeric(e),
                })?;
            Report::Json(
                Object::new()
                    .num("area", sol.area)
                    .num("circumradius", sol.circumradius)
                    .put("center_inside", sol.center_inside)
                    .put("central_angles", nums(&sol.central_angles))
                    .num("residual", sol.residual)
                    .into_value(),
            )
        }
        other => return Err(unsupported("ngon", other, "prob, simulate, area")),
    })
}
