//! Command-line interface.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error,
//! 3 domain or physics error. Inputs are in atomic units; `--units`
//! converts results for presentation only.

pub mod render;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use crate::actions::{max_pairwise_deviation, radial_action, ActionMethod};
use crate::constants::{fine_structure_constant, AtomicScales, ConstantsRecord, PhysicalConstants, ELECTRON_VOLT_J};
use crate::error::{Error, Result};
use crate::orbit::{ellipse_from_energy, kepler_position};
use crate::quantize::{degenerate_states, energy_closed, energy_numeric, QuantumNumbers};
use crate::spectrum::{check_z_limit, series, SeriesName, ZLimit};
use crate::verify;

pub use render::{format_number, Cell, OutputFormat, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "sommerfeld", version, about = "Phase-space quantization of hydrogen-like atoms")]
pub struct Cli {
    /// Constants file (`name = value # unit`) overriding the bundled SI values.
    #[arg(long, global = true, env = "SOMMERFELD_CONSTANTS")]
    pub constants: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value = "table")]
    pub format: OutputFormat,

    /// Presentation units; computation always runs in atomic units.
    #[arg(long, global = true, value_enum, default_value = "atomic")]
    pub units: Units,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Units {
    Atomic,
    Si,
    Ev,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Direct,
    Theta,
    Time,
    Residue,
    Closed,
    All,
}

impl MethodArg {
    fn methods(self) -> Vec<ActionMethod> {
        match self {
            MethodArg::Direct => vec![ActionMethod::Direct],
            MethodArg::Theta => vec![ActionMethod::Theta],
            MethodArg::Time => vec![ActionMethod::Time],
            MethodArg::Residue => vec![ActionMethod::Residue],
            MethodArg::Closed => vec![ActionMethod::Closed],
            MethodArg::All => ActionMethod::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeriesArg {
    Lyman,
    Balmer,
    Paschen,
    Brackett,
}

impl From<SeriesArg> for SeriesName {
    fn from(s: SeriesArg) -> Self {
        match s {
            SeriesArg::Lyman => SeriesName::Lyman,
            SeriesArg::Balmer => SeriesName::Balmer,
            SeriesArg::Paschen => SeriesName::Paschen,
            SeriesArg::Brackett => SeriesName::Brackett,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Energy levels for every (n_r, n_theta) with n <= n-max.
    Levels(LevelsArgs),
    /// Radial action of one orbit.
    Action(ActionArgs),
    /// Orbit geometry and a sampled trajectory over one period.
    Orbit(OrbitArgs),
    /// Lines of a named spectral series.
    Spectrum(SpectrumArgs),
    /// Run the cross-verification suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct LevelsArgs {
    #[arg(long = "Z", default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub z: u32,
    #[arg(long = "n-max", value_parser = clap::value_parser!(u32).range(1..))]
    pub n_max: u32,
    #[arg(long, value_enum, default_value = "direct")]
    pub method: MethodArg,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct ActionArgs {
    #[arg(long = "Z", default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub z: u32,
    /// Orbit energy (atomic units).
    #[arg(long = "E", allow_negative_numbers = true)]
    pub e: f64,
    /// Angular momentum (atomic units).
    #[arg(long = "L", allow_negative_numbers = true)]
    pub l: f64,
    #[arg(long, value_enum, default_value = "all")]
    pub method: MethodArg,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct OrbitArgs {
    #[arg(long = "Z", default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub z: u32,
    #[arg(long = "nr")]
    pub n_r: u32,
    #[arg(long = "ntheta", value_parser = clap::value_parser!(u32).range(1..))]
    pub n_theta: u32,
    #[arg(long, default_value_t = 16, value_parser = clap::value_parser!(u64).range(2..))]
    pub samples: u64,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[arg(long, value_enum)]
    pub series: SeriesArg,
    #[arg(long = "n-upper-max")]
    pub n_upper_max: u32,
    #[arg(long = "Z", default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub z: u32,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Tolerance scale; 1e-8 applies every check's reference tolerance.
    #[arg(long, default_value_t = verify::REFERENCE_SCALE)]
    pub tol: f64,
}

/// Constants for computation (atomic) and for presentation (SI scales).
struct Context {
    atomic: PhysicalConstants,
    scales: AtomicScales,
    units: Units,
    format: OutputFormat,
}

impl Context {
    fn new(cli: &Cli) -> Result<Self> {
        let (atomic, si) = match &cli.constants {
            None => (PhysicalConstants::atomic(), PhysicalConstants::si()),
            Some(path) => {
                let record = ConstantsRecord::from_file(path)?;
                let si = crate::constants::make_unit_system(crate::UnitSystemKind::Si, Some(&record))?;
                let atomic = crate::constants::make_unit_system(
                    crate::UnitSystemKind::Atomic,
                    Some(&ConstantsRecord {
                        speed_of_light: Some(1.0 / fine_structure_constant(&si)),
                        ..Default::default()
                    }),
                )?;
                (atomic, si)
            }
        };
        Ok(Context {
            atomic,
            scales: AtomicScales::from_constants(&si),
            units: cli.units,
            format: cli.format,
        })
    }

    fn energy(&self, x: f64) -> f64 {
        match self.units {
            Units::Atomic => x,
            Units::Si => x * self.scales.energy,
            Units::Ev => x * self.scales.energy / ELECTRON_VOLT_J,
        }
    }

    fn length(&self, x: f64) -> f64 {
        match self.units {
            Units::Atomic => x,
            _ => x * self.scales.length,
        }
    }

    fn time(&self, x: f64) -> f64 {
        match self.units {
            Units::Atomic => x,
            _ => x * self.scales.time,
        }
    }

    fn action(&self, x: f64) -> f64 {
        match self.units {
            Units::Atomic => x,
            _ => x * self.scales.action,
        }
    }

    fn units_label(&self) -> &'static str {
        match self.units {
            Units::Atomic => "atomic",
            Units::Si => "si",
            Units::Ev => "ev",
        }
    }

    fn report(&self, command: &str, columns: &[&str]) -> Report {
        let mut r = Report::new(columns);
        r.meta("version", env!("CARGO_PKG_VERSION"))
            .meta("command", command)
            .meta("units", self.units_label());
        r
    }

    fn warn_charge(&self, z: u32, err: &mut dyn Write) {
        if let ZLimit::Warning { alpha_inverse } = check_z_limit(z, &self.atomic) {
            let _ = writeln!(err, "warning: Z = {z} is not below 1/alpha = {alpha_inverse:.6}");
        }
    }
}

/// Parses `args` and runs the command, writing to the given streams.
pub fn run_with_io<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    match execute(&cli, err) {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Validation { .. } | Error::ConstantsFile(_) => EXIT_USAGE,
                _ => EXIT_DOMAIN,
            }
        }
    }
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with_io(args, &mut stdout.lock(), &mut stderr.lock())
}

fn execute(cli: &Cli, err: &mut dyn Write) -> Result<(String, i32)> {
    let ctx = Context::new(cli)?;
    match &cli.command {
        Command::Levels(a) => cmd_levels(&ctx, a, err),
        Command::Action(a) => cmd_action(&ctx, a, err),
        Command::Orbit(a) => cmd_orbit(&ctx, a, err),
        Command::Spectrum(a) => cmd_spectrum(&ctx, a, err),
        Command::Verify(a) => cmd_verify(&ctx, a),
    }
}

fn single_method(arg: MethodArg) -> Result<ActionMethod> {
    match arg.methods().as_slice() {
        [m] => Ok(*m),
        _ => Err(Error::validation("method", "`all` is not valid here")),
    }
}

fn cmd_levels(ctx: &Context, a: &LevelsArgs, err: &mut dyn Write) -> Result<(String, i32)> {
    ctx.warn_charge(a.z, err);
    let method = single_method(a.method)?;
    let c = &ctx.atomic;
    let states: Vec<QuantumNumbers> = (1..=a.n_max).flat_map(degenerate_states).collect();

    // Independent states are solved concurrently; results keep the input order.
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(states.len().max(1));
    let chunk = states.len().div_ceil(workers).max(1);
    let solved: Vec<Result<(f64, f64)>> = std::thread::scope(|s| {
        let handles: Vec<_> = states
            .chunks(chunk)
            .map(|part| {
                s.spawn(move || {
                    part.iter()
                        .map(|&q| {
                            let closed = energy_closed(q, a.z, c)?.energy;
                            let numeric = if method == ActionMethod::Closed {
                                closed
                            } else {
                                energy_numeric(q, a.z, c, a.tol, method)?.energy
                            };
                            Ok((closed, numeric))
                        })
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("levels worker")).collect()
    });

    let mut report = ctx.report(
        "levels",
        &["n", "n_r", "n_theta", "E_closed", "E_numeric", "rel_deviation", "L", "eccentricity", "a"],
    );
    report.meta("Z", a.z).meta("method", method.name()).meta("tol", a.tol);
    for (q, res) in states.iter().zip(solved) {
        let (closed, numeric) = res?;
        let l = q.angular_momentum(c);
        let g = ellipse_from_energy(closed, l, a.z, c)?;
        report.row(vec![
            q.principal().into(),
            q.n_r().into(),
            q.n_theta().into(),
            ctx.energy(closed).into(),
            ctx.energy(numeric).into(),
            ((numeric - closed) / closed).abs().into(),
            ctx.action(l).into(),
            g.eccentricity.into(),
            ctx.length(g.semi_major).into(),
        ]);
    }
    Ok((report.render(ctx.format)?, EXIT_OK))
}

fn cmd_action(ctx: &Context, a: &ActionArgs, err: &mut dyn Write) -> Result<(String, i32)> {
    ctx.warn_charge(a.z, err);
    let c = &ctx.atomic;
    let mut report = ctx.report("action", &["method", "value", "value_over_h", "error_estimate"]);
    report.meta("Z", a.z).meta("E", a.e).meta("L", a.l).meta("tol", a.tol);
    let mut values = Vec::new();
    for m in a.method.methods() {
        let r = radial_action(m, a.e, a.l, a.z, c, a.tol)?;
        values.push(r.value);
        report.row(vec![
            m.name().into(),
            ctx.action(r.value).into(),
            r.in_planck_units(c).into(),
            ctx.action(r.error_estimate).into(),
        ]);
    }
    if values.len() > 1 {
        report.summary(
            "max_pairwise_relative_deviation",
            max_pairwise_deviation(&values, 1e-12 * c.planck_h),
        );
    }
    Ok((report.render(ctx.format)?, EXIT_OK))
}

fn cmd_orbit(ctx: &Context, a: &OrbitArgs, err: &mut dyn Write) -> Result<(String, i32)> {
    ctx.warn_charge(a.z, err);
    let c = &ctx.atomic;
    let q = QuantumNumbers::new(a.n_r, a.n_theta)?;
    let level = energy_closed(q, a.z, c)?;
    let g = ellipse_from_energy(level.energy, level.angular_momentum, a.z, c)?;
    let mut report = ctx.report(
        "orbit",
        &["t", "r", "theta", "r_dot", "theta_dot", "kinetic", "potential", "total_energy"],
    );
    report.meta("Z", a.z).meta("n_r", a.n_r).meta("n_theta", a.n_theta).meta("samples", Value::from(a.samples));
    report
        .header("E", ctx.energy(g.energy))
        .header("L", ctx.action(g.angular_momentum))
        .header("a", ctx.length(g.semi_major))
        .header("eccentricity", g.eccentricity)
        .header("r_min", ctx.length(g.r_min))
        .header("r_max", ctx.length(g.r_max))
        .header("T", ctx.time(g.period));
    let velocity = |v: f64| ctx.length(v) / ctx.time(1.0);
    let rate = |w: f64| w / ctx.time(1.0);
    for k in 0..a.samples {
        let t = g.period * k as f64 / a.samples as f64;
        let s = kepler_position(&g, t, c)?;
        report.row(vec![
            ctx.time(s.t).into(),
            ctx.length(s.r).into(),
            s.theta.into(),
            velocity(s.r_dot).into(),
            rate(s.theta_dot).into(),
            ctx.energy(s.kinetic).into(),
            ctx.energy(s.potential).into(),
            ctx.energy(s.total_energy()).into(),
        ]);
    }
    Ok((report.render(ctx.format)?, EXIT_OK))
}

fn cmd_spectrum(ctx: &Context, a: &SpectrumArgs, err: &mut dyn Write) -> Result<(String, i32)> {
    ctx.warn_charge(a.z, err);
    let c = &ctx.atomic;
    let name: SeriesName = a.series.into();
    let lines = series(name, a.n_upper_max, a.z, c)?;
    let mut report = ctx.report(
        "spectrum",
        &["n_upper", "n_lower", "delta_energy", "frequency", "wavelength", "wavelength_nm"],
    );
    report.meta("Z", a.z).meta("series", name.name());
    for line in lines {
        report.row(vec![
            line.n_upper.into(),
            line.n_lower.into(),
            ctx.energy(line.delta_energy).into(),
            (line.frequency / ctx.time(1.0)).into(),
            ctx.length(line.wavelength).into(),
            (line.wavelength * ctx.scales.length * 1e9).into(),
        ]);
    }
    Ok((report.render(ctx.format)?, EXIT_OK))
}

fn cmd_verify(ctx: &Context, a: &VerifyArgs) -> Result<(String, i32)> {
    if !(a.tol.is_finite() && a.tol > 0.0) {
        return Err(Error::validation("tol", format!("must be positive, got {}", a.tol)));
    }
    let outcome = verify::run(a.tol);
    let mut report = ctx.report("verify", &["criterion", "check", "residual", "tolerance", "status"]);
    report.meta("tolerance_scale", a.tol);
    for check in &outcome.checks {
        report.row(vec![
            Cell::Int(check.criterion as i64),
            check.name.clone().into(),
            check.residual.into(),
            check.tolerance.into(),
            (if check.passed { "pass" } else { "FAIL" }).into(),
        ]);
    }
    let failed = outcome.failures().count();
    report
        .summary("checks", outcome.checks.len())
        .summary("failed", failed)
        .summary("passed", failed == 0);
    let code = if outcome.all_passed() { EXIT_OK } else { EXIT_VERIFY_FAILED };
    Ok((report.render(ctx.format)?, code))
}
