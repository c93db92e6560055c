//! `maxform` — command-line front end for the exterior-calculus
//! electromagnetics toolkit.
//!
//! The binary groups three kinds of subcommands:
//!
//! * **operators** over form literals (`deriv`, `star`, `codiff`, `wedge`,
//!   `laplacian`) that print the resulting form;
//! * **verifications** over JSON documents (`verify`, `lorenz3`, `lorenz4`,
//!   `boost`, `continuity`, `bundle-check`) that print one
//!   `EQ <name> <status>` line per equation and encode the aggregate
//!   verdict in the exit code;
//! * **numerics** (`simulate`, `wave-speed`) that run the staggered-grid
//!   solver and print CSV diagnostics or a speed measurement.
//!
//! Exit codes: `0` all verified, `1` at least one refuted, `2` undecided
//! only, `64` usage error, `65` input parse error. Refutation is proved
//! nonzeroness; an undecided zero-test is reported as `inconclusive` and
//! never conflated with refutation.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use maxform_core::forms::{Chart, DifferentialForm, FormDoc};

pub mod commands;
pub mod documents;
pub mod report;

use report::{Report, EXIT_USAGE};

/// A failed invocation: either the command line itself is wrong, or an
/// input (file or inline expression) does not parse or validate.
#[derive(Clone, Debug)]
pub enum Failure {
    Usage(String),
    Input(String),
}

impl Failure {
    pub fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Input(m) => m,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => report::EXIT_USAGE,
            Failure::Input(_) => report::EXIT_INPUT,
        }
    }
}

/// Coordinate chart selected with the global `--chart` flag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ChartArg {
    /// Coordinates x1, x2, x3 with an external time parameter t.
    Euclidean3,
    /// Coordinates x0..x3 with signature (+, −, −, −) and x0 = ct.
    Minkowski4,
}

impl ChartArg {
    pub fn chart(self) -> Chart {
        match self {
            ChartArg::Euclidean3 => Chart::Euclidean3,
            ChartArg::Minkowski4 => Chart::Minkowski4,
        }
    }
}

/// Output format selected with the global `--format` flag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Line-oriented plain text (`EQ` lines, form literals).
    Text,
    /// Pretty-printed JSON documents.
    Json,
}

/// Grid axis argument for `wave-speed`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AxisArg {
    X,
    Y,
    Z,
}

impl AxisArg {
    fn axis(self) -> maxform_dec::Axis {
        match self {
            AxisArg::X => maxform_dec::Axis::X,
            AxisArg::Y => maxform_dec::Axis::Y,
            AxisArg::Z => maxform_dec::Axis::Z,
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "maxform",
    version,
    about = "Exterior-calculus electromagnetics: symbolic verification and a staggered-grid solver",
    propagate_version = true
)]
pub struct Cli {
    /// Chart for command-line form literals and gauge functions.
    #[arg(long, global = true, value_enum, default_value = "euclidean3")]
    pub chart: ChartArg,

    /// Output format for results and reports.
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exterior derivative of a form literal.
    Deriv {
        /// Form literal, e.g. "x1 dx2" or "sin(x1 - c*t) dx2^dx3".
        form: String,
    },
    /// Hodge star of a form literal.
    Star {
        /// Form literal, e.g. "dx0^dx1".
        form: String,
    },
    /// Codifferential (star-d-star with the chart's signs) of a form literal.
    Codiff {
        /// Form literal of degree at least 1.
        form: String,
    },
    /// Wedge product of two form literals.
    Wedge {
        /// Left factor.
        left: String,
        /// Right factor.
        right: String,
    },
    /// Laplacian of a form literal (euclidean3 chart only).
    Laplacian {
        /// Form literal.
        form: String,
    },
    /// Verify a field or potential document equation-by-equation.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Apply A' = A + dLambda, Phi' = Phi - dLambda/dt to a 3D potential document.
    Gauge3 {
        /// Gauge function of x1..x3 and t.
        #[arg(long)]
        lambda: String,
        /// Potential document (JSON).
        file: PathBuf,
    },
    /// Apply I' = I + dLambda to a spacetime potential document.
    Gauge4 {
        /// Gauge function of x0..x3.
        #[arg(long)]
        lambda: String,
        /// Potential document (JSON).
        file: PathBuf,
    },
    /// Check the Lorenz condition div A + (1/c^2) dPhi/dt = 0 for a 3D potential document.
    Lorenz3 {
        /// Potential document (JSON).
        file: PathBuf,
    },
    /// Check the Lorenz scalar of a spacetime potential document.
    Lorenz4 {
        /// Potential document (JSON).
        file: PathBuf,
    },
    /// Pull a spacetime field document back along a rapidity-zeta boost and
    /// verify covariance.
    Boost {
        /// Boost rapidity as an exact rational, e.g. "1/2".
        #[arg(long)]
        zeta: String,
        /// Field document (JSON).
        file: PathBuf,
    },
    /// Check charge conservation (vanishing codifferential of the
    /// four-current) for a spacetime field document.
    Continuity {
        /// Field document (JSON).
        file: PathBuf,
    },
    /// Check cover compatibility and curvature agreement for a bundle
    /// document.
    BundleCheck {
        /// Bundle document (JSON).
        file: PathBuf,
    },
    /// Run a staggered-grid simulation and stream CSV diagnostics.
    Simulate {
        /// Simulation config (JSON).
        #[arg(long)]
        config: PathBuf,
        /// Write the CSV here instead of standard output.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Write final field dumps to `<prefix>-e.decf` / `<prefix>-b.decf`.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Measure plane-wave propagation speed against the dispersion
    /// prediction.
    WaveSpeed {
        /// Propagation axis.
        #[arg(long, value_enum, default_value = "x")]
        axis: AxisArg,
        /// Spatial resolution of the wave.
        #[arg(long, default_value_t = 16)]
        cells_per_wavelength: u32,
        /// Whole wavelengths along the propagation axis.
        #[arg(long, default_value_t = 4)]
        wavelengths: u32,
        /// Grid extent along the two transverse axes.
        #[arg(long, default_value_t = 8)]
        transverse: u32,
        /// Grid spacing.
        #[arg(long, default_value_t = 1.0)]
        spacing: f64,
        /// Time step as a fraction of the stability bound.
        #[arg(long, default_value_t = 0.5)]
        courant: f64,
        /// Whole periods to track before reading off the speed.
        #[arg(long, default_value_t = 4)]
        periods: u32,
    },
}

#[derive(Subcommand, Debug)]
pub enum VerifyCommand {
    /// The four 3D field equations of a field document.
    Maxwell3 { file: PathBuf },
    /// The two spacetime identities of a field document.
    Maxwell4 { file: PathBuf },
    /// The coupled second-order potential equations of a 3D potential
    /// document.
    Potential3 { file: PathBuf },
    /// The decoupled wave equations of a 3D potential document.
    Wave3 { file: PathBuf },
}

/// Prints a form result in the requested format.
pub(crate) fn emit_form(form: &DifferentialForm, format: Format) {
    match format {
        Format::Text => println!("{}", form),
        Format::Json => emit_json(&FormDoc::from_form(form)),
    }
}

/// Prints any serializable payload as pretty JSON with a trailing newline.
pub(crate) fn emit_json<T: Serialize>(payload: &T) {
    let mut text = serde_json::to_string_pretty(payload).expect("payload serialization");
    text.push('\n');
    print!("{}", text);
}

/// Prints a verification report and returns its exit code.
pub(crate) fn emit_report(report: &Report, format: Format) -> i32 {
    match format {
        Format::Text => print!("{}", report.render_text()),
        Format::Json => print!("{}", report.render_json()),
    }
    report.exit_code()
}

fn dispatch(cli: &Cli) -> Result<i32, Failure> {
    let chart = cli.chart.chart();
    let format = cli.format;
    match &cli.command {
        Command::Deriv { form } => commands::forms::deriv(chart, format, form),
        Command::Star { form } => commands::forms::star(chart, format, form),
        Command::Codiff { form } => commands::forms::codiff(chart, format, form),
        Command::Wedge { left, right } => commands::forms::wedge(chart, format, left, right),
        Command::Laplacian { form } => commands::forms::laplacian(chart, format, form),
        Command::Verify(which) => match which {
            VerifyCommand::Maxwell3 { file } => commands::verify::maxwell3(format, file),
            VerifyCommand::Maxwell4 { file } => commands::verify::maxwell4(format, file),
            VerifyCommand::Potential3 { file } => commands::verify::potential3(format, file),
            VerifyCommand::Wave3 { file } => commands::verify::wave3(format, file),
        },
        Command::Gauge3 { lambda, file } => commands::gauge::gauge3(format, lambda, file),
        Command::Gauge4 { lambda, file } => commands::gauge::gauge4(format, lambda, file),
        Command::Lorenz3 { file } => commands::verify::lorenz3(format, file),
        Command::Lorenz4 { file } => commands::verify::lorenz4(format, file),
        Command::Boost { zeta, file } => commands::boost::boost(format, zeta, file),
        Command::Continuity { file } => commands::verify::continuity(format, file),
        Command::BundleCheck { file } => commands::bundle::bundle_check(format, file),
        Command::Simulate { config, csv, dump } => {
            commands::dec::simulate(config, csv.as_deref(), dump.as_deref())
        }
        Command::WaveSpeed {
            axis,
            cells_per_wavelength,
            wavelengths,
            transverse,
            spacing,
            courant,
            periods,
        } => commands::dec::wave_speed(
            format,
            &commands::dec::WaveSpeedArgs {
                axis: axis.axis(),
                cells_per_wavelength: *cells_per_wavelength,
                wavelengths: *wavelengths,
                transverse: *transverse,
                spacing: *spacing,
                courant: *courant,
                periods: *periods,
            },
        ),
    }
}

/// Parses `argv` and runs the selected subcommand, returning the process
/// exit code. Help and version requests exit zero; other parse failures
/// exit with the usage code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            failure.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn the_command_grammar_is_internally_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn every_subcommand_documents_itself() {
        for sub in Cli::command().get_subcommands() {
            assert!(
                sub.get_about().is_some(),
                "subcommand `{}` is missing help text",
                sub.get_name()
            );
        }
    }

    #[test]
    fn global_flags_parse_in_either_position() {
        let before = Cli::try_parse_from([
            "maxform", "--chart", "minkowski4", "star", "dx0^dx1",
        ])
        .expect("flag before subcommand");
        assert_eq!(before.chart, ChartArg::Minkowski4);

        let after = Cli::try_parse_from([
            "maxform", "star", "--chart", "minkowski4", "dx0^dx1",
        ])
        .expect("flag after subcommand");
        assert_eq!(after.chart, ChartArg::Minkowski4);
    }
}
