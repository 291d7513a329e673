mod commands;
mod config;
mod error;

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "risradar", version, about = "Link budget and SNR for radar detection through one or two RIS panels")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one scenario and print received power, SNR and path loss.
    Snr(SnrArgs),
    /// Print the five-configuration panel table (size, far field, effect).
    Table2(Table2Args),
    /// Sweep one parameter and write CSV (and optionally SVG).
    Sweep(SweepArgs),
    /// Check a config file without evaluating it.
    Validate { config: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    ElementSum,
    ClosedForm,
}

impl From<MethodArg> for ris_radar::sweep::Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::ElementSum => Self::ElementSum,
            MethodArg::ClosedForm => Self::ClosedForm,
        }
    }
}

#[derive(Args)]
struct Overrides {
    /// Transmit power, dBW.
    #[arg(long)]
    pt_dbw: Option<f64>,
    /// Integrated pulses.
    #[arg(long)]
    pulses: Option<u32>,
    /// Wavelength, metres (cell spacing follows it).
    #[arg(long)]
    wavelength_m: Option<f64>,
    /// Resize every panel to N x N cells.
    #[arg(long, value_name = "N")]
    cells: Option<usize>,
}

#[derive(Args)]
struct SnrArgs {
    config: PathBuf,
    #[command(flatten)]
    overrides: Overrides,
    #[arg(long, value_enum, default_value = "element-sum")]
    method: MethodArg,
}

#[derive(Args)]
struct Table2Args {
    /// Compare against the reference values; exit 1 on mismatch.
    #[arg(long)]
    check: bool,
    #[arg(long, default_value_t = ris_radar::DEFAULT_WAVELENGTH)]
    wavelength_m: f64,
}

#[derive(Args)]
struct SweepArgs {
    config: PathBuf,
    /// r2 (ris_target_distance), r1, r_ris, cells (cells_per_side) or pulses.
    #[arg(long)]
    axis: String,
    #[arg(long, requires_all = ["to", "points"], conflicts_with = "values")]
    from: Option<f64>,
    #[arg(long)]
    to: Option<f64>,
    #[arg(long)]
    points: Option<usize>,
    /// Even spacing between --from and --to (default is logarithmic).
    #[arg(long)]
    linear: bool,
    /// Explicit comma-separated axis values.
    #[arg(long, value_delimiter = ',')]
    values: Option<Vec<f64>>,
    /// CSV destination; stdout when omitted.
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Also evaluate the single-panel counterpart of a dual scenario.
    #[arg(long)]
    compare_single_dual: bool,
    /// Omit the far-field markers from the plot.
    #[arg(long)]
    no_far_field_markers: bool,
    #[arg(long, value_enum, default_value = "element-sum")]
    method: MethodArg,
    #[command(flatten)]
    overrides: Overrides,
}

/// Parses `args` and runs the command, returning the process exit code.
fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return e.exit_code() as u8;
        }
    };
    let result = match cli.command {
        Command::Snr(a) => commands::snr(&a, out),
        Command::Table2(a) => commands::table2(&a, out),
        Command::Sweep(a) => commands::sweep(&a, out, err),
        Command::Validate { config } => commands::validate(&config, out),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "risradar: {e}");
            e.exit_code()
        }
    }
}

fn main() -> ExitCode {
    let code = run(std::env::args_os(), &mut io::stdout().lock(), &mut io::stderr().lock());
    ExitCode::from(code)
}

#[cfg(test)]
mod tests;
