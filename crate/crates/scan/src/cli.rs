use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pdc_core::{DetuningUnit, SidebandComponent};

use crate::emit::{self, Format};
use crate::error::{Result, ScanError};
use crate::scenario::{load_scenario, Scenario};
use crate::{
    paper_check, run_angle_sweep, run_detuning_sweep, run_intensity_sweep, run_propagation,
    run_spectrum,
};

#[derive(Debug, Parser)]
#[command(
    name = "pdc-scan",
    version,
    about = "Down-conversion gain spectra, sweeps and propagation in a dressed two-level gas"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Gain coefficients over the scenario's signal-frequency grid.
    Spectrum(Common),
    /// Gain coefficients against pump intensity at a fixed signal frequency.
    SweepIntensity(Common),
    /// Gain coefficients against the superposition angle theta in [0, pi/2].
    SweepAngle {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 181)]
        count: usize,
    },
    /// Gain coefficients against |detuning| on a log grid; the sign follows the scenario.
    SweepDetuning {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        start: f64,
        #[arg(long)]
        stop: f64,
        #[arg(long, default_value_t = 61)]
        count: usize,
        /// Unit of --start/--stop.
        #[arg(long, value_enum)]
        unit: UnitArg,
    },
    /// Analytic and integrated signal/idler growth over the cell.
    Propagate(Common),
    /// Breakdown of the 1 kW/cm^2 sideband estimate under every unit interpretation.
    PaperCheck(Common),
}

#[derive(Debug, Args)]
pub struct Common {
    /// Scenario file, or a preset name (paper_s3, resonant_symmetric, weak_pump).
    #[arg(long, default_value = "paper_s3")]
    pub scenario: String,
    /// Defaults to all for sweeps and blue for propagate.
    #[arg(long, value_enum)]
    pub component: Option<ComponentArg>,
    /// Output path; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Defaults to csv for sweeps and propagate, text for paper-check.
    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,
    #[arg(long)]
    pub allow_degenerate: bool,
    /// Reinterpret the scenario's detuning value in this unit.
    #[arg(long, value_enum)]
    pub detuning_unit: Option<UnitArg>,
    /// Use Omega' instead of Omega in the red-sideband frequency factor.
    #[arg(long)]
    pub red_alt_form: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ComponentArg {
    Ordinary,
    Blue,
    Red,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
    Plotdata,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum UnitArg {
    Hz,
    Rads,
}

impl From<UnitArg> for DetuningUnit {
    fn from(u: UnitArg) -> Self {
        match u {
            UnitArg::Hz => DetuningUnit::Hz,
            UnitArg::Rads => DetuningUnit::RadPerSecond,
        }
    }
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
            FormatArg::Plotdata => Format::Plotdata,
            FormatArg::Text => Format::Text,
        }
    }
}

fn single(c: ComponentArg) -> Option<SidebandComponent> {
    match c {
        ComponentArg::Ordinary => Some(SidebandComponent::Ordinary),
        ComponentArg::Blue => Some(SidebandComponent::Blue),
        ComponentArg::Red => Some(SidebandComponent::Red),
        ComponentArg::All => None,
    }
}

/// Loads the scenario and applies the command-line overrides.
pub fn prepare(common: &Common) -> Result<Scenario> {
    let mut s = load_scenario(&common.scenario)?;
    if let Some(u) = common.detuning_unit {
        s = s.with_detuning_unit(u.into());
    }
    if common.allow_degenerate {
        s.signal_grid.allow_degenerate = true;
    }
    if common.red_alt_form {
        s.gain_options.red_alt_form = true;
    }
    if let Some(c) = common.component {
        s.components = match single(c) {
            Some(one) => vec![one],
            None => SidebandComponent::ALL.to_vec(),
        };
    }
    Ok(s)
}

fn format_or(common: &Common, default: Format) -> Format {
    common.format.map(Format::from).unwrap_or(default)
}

/// Runs one command and writes its output.
pub fn run(cli: &Cli) -> Result<()> {
    let (common, text) = match &cli.command {
        Command::Spectrum(c) => (
            c,
            emit::render_sweep(&run_spectrum(&prepare(c)?)?, format_or(c, Format::Csv))?,
        ),
        Command::SweepIntensity(c) => (
            c,
            emit::render_sweep(
                &run_intensity_sweep(&prepare(c)?)?,
                format_or(c, Format::Csv),
            )?,
        ),
        Command::SweepAngle { common, count } => (
            common,
            emit::render_sweep(
                &run_angle_sweep(&prepare(common)?, *count)?,
                format_or(common, Format::Csv),
            )?,
        ),
        Command::SweepDetuning {
            common,
            start,
            stop,
            count,
            unit,
        } => {
            let s = prepare(common)?;
            if !(*start > 0.0 && start < stop) || *count < 2 {
                return Err(ScanError::Scenario(
                    "sweep-detuning needs 0 < start < stop and count >= 2".into(),
                ));
            }
            let sign = s.detuning().signum();
            let scale = pdc_core::units::detuning_to_angular(1.0, DetuningUnit::from(*unit));
            let grid: Vec<f64> = (0..*count)
                .map(|k| {
                    let t = k as f64 / (*count - 1) as f64;
                    sign * scale * (start.ln() + t * (stop / start).ln()).exp()
                })
                .collect();
            (
                common,
                emit::render_sweep(
                    &run_detuning_sweep(&s, &grid)?,
                    format_or(common, Format::Csv),
                )?,
            )
        }
        Command::Propagate(c) => {
            let component = match c.component.map(single) {
                None => SidebandComponent::Blue,
                Some(Some(one)) => one,
                Some(None) => {
                    return Err(ScanError::Scenario(
                        "propagate takes a single component".into(),
                    ))
                }
            };
            let s = prepare(c)?;
            (
                c,
                emit::render_propagation(
                    &run_propagation(&s, component)?,
                    format_or(c, Format::Csv),
                )?,
            )
        }
        Command::PaperCheck(c) => (
            c,
            emit::render_paper_check(&paper_check(&prepare(c)?)?, format_or(c, Format::Text))?,
        ),
    };
    emit::write_output(&text, common.out.as_deref())
}
