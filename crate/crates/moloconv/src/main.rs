use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use moloconv::commands::{self, FreqGrid, Model, Status};
use moloconv::reproduce::{reproduce, Figure};
use moloconv::table::Table;
use moloconv::{config, presets, CliError, Result};
use moloconv_core::axis::AxisSpec;
use moloconv_core::dynmat::RwaKind;
use moloconv_core::sweep::Metric;
use moloconv_core::SystemParams;

#[derive(Parser)]
#[command(name = "moloconv", version, about = "Frequency-domain IR to visible upconversion in a molecular optomechanical cavity")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Detuning {
    Red,
    Blue,
}

#[derive(Args)]
struct Source {
    /// JSON parameter file
    #[arg(long, conflicts_with = "preset", required_unless_present = "preset")]
    config: Option<PathBuf>,
    /// Built-in parameter set
    #[arg(long)]
    preset: Option<String>,
    /// Set the detuning to +omega_b (red) or -omega_b (blue)
    #[arg(long, value_enum)]
    detuning: Option<Detuning>,
    /// Override the enhanced coupling |G_a| in THz
    #[arg(long = "g-a", allow_negative_numbers = true)]
    g_a: Option<f64>,
}

impl Source {
    fn load(&self) -> Result<SystemParams> {
        let mut p = match (&self.config, &self.preset) {
            (Some(path), _) => config::load(path).map_err(|source| CliError::Config { path: path.clone(), source })?,
            (None, Some(name)) => presets::find(name).map(|p| p.params()).ok_or_else(|| {
                let known: Vec<_> = presets::names().collect();
                CliError::Usage(format!("unknown preset {name:?}; known presets: {}", known.join(", ")))
            })?,
            (None, None) => return Err(CliError::Usage("one of --config or --preset is required".into())),
        };
        if let Some(d) = self.detuning {
            let kind = match d {
                Detuning::Red => RwaKind::RedDetuned,
                Detuning::Blue => RwaKind::BlueDetuned,
            };
            commands::set_detuning(&mut p, kind);
        }
        if let Some(g) = self.g_a {
            commands::set_g_a(&mut p, g)?;
        }
        p.validate().map_err(moloconv_core::Error::from)?;
        Ok(p)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Scattering probabilities over a Fourier-frequency grid (CSV)
    Spectrum {
        #[command(flatten)]
        source: Source,
        /// Lower grid bound in THz [default: -1.2 omega_b]
        #[arg(long, allow_negative_numbers = true)]
        omega_min: Option<f64>,
        /// Upper grid bound in THz [default: 1.2 omega_b]
        #[arg(long, allow_negative_numbers = true)]
        omega_max: Option<f64>,
        #[arg(long, default_value_t = 2001)]
        points: usize,
        #[arg(long, value_enum, default_value = "full")]
        model: Model,
        /// Output file; standard output when absent
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Conversion efficiency and added noise at both sidebands (JSON)
    Sidebands {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value = "full")]
        model: Model,
    },
    /// Metrics over one or two parameter axes (CSV)
    Sweep {
        #[command(flatten)]
        source: Source,
        /// name:start:stop:points[:lin|:log], repeat for a second axis
        #[arg(long = "axis", required = true)]
        axes: Vec<AxisSpec>,
        /// Comma-separated metric names
        #[arg(long = "metric", value_delimiter = ',', default_value = "t_ac_AS,t_ac_S,n_add_AS,n_add_S")]
        metrics: Vec<Metric>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Stability classification over two parameter axes (CSV)
    StabilityMap {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        x: AxisSpec,
        #[arg(long)]
        y: AxisSpec,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Mean-field branches for a physical pump (JSON)
    SteadyState {
        #[command(flatten)]
        source: Source,
    },
    /// Drift and coupling matrices (JSON)
    DumpMatrix {
        #[command(flatten)]
        source: Source,
    },
    /// Write every data file behind a figure
    Reproduce {
        #[arg(value_enum)]
        figure: Figure,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
}

fn emit_table(table: &Table, out: Option<&Path>, p: &SystemParams) -> Result<()> {
    match out {
        Some(path) => commands::write_table(table, path, p),
        None => table
            .write(io::stdout().lock())
            .map_err(|source| CliError::Csv { path: "<stdout>".into(), source }),
    }
}

fn emit_json(v: &serde_json::Value) -> Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, v)
        .map_err(io::Error::from)
        .and_then(|()| writeln!(out))
        .map_err(|e| CliError::io("<stdout>", e))
}

fn run(cmd: Command) -> Result<Status> {
    match cmd {
        Command::Spectrum { source, omega_min, omega_max, points, model, out } => {
            let p = source.load()?;
            let wb = p.omega_b.value();
            let default = FreqGrid::around(wb);
            let grid = FreqGrid { min: omega_min.unwrap_or(default.min), max: omega_max.unwrap_or(default.max), points };
            let (table, status) = match model {
                Model::Full => commands::spectrum(&p, &grid)?,
                Model::Rwa => (commands::rwa_spectrum(&p, &grid)?, Status::Complete),
            };
            emit_table(&table, out.as_deref(), &p)?;
            Ok(status)
        }
        Command::Sidebands { source, model } => {
            emit_json(&commands::sidebands(&source.load()?, model)?)?;
            Ok(Status::Complete)
        }
        Command::Sweep { source, axes, metrics, out } => {
            let p = source.load()?;
            let (table, status) = commands::sweep(&p, &axes, &metrics)?;
            emit_table(&table, out.as_deref(), &p)?;
            Ok(status)
        }
        Command::StabilityMap { source, x, y, out } => {
            let p = source.load()?;
            let (table, status) = commands::stability_map(&p, &x, &y)?;
            emit_table(&table, out.as_deref(), &p)?;
            Ok(status)
        }
        Command::SteadyState { source } => {
            emit_json(&commands::steady_state(&source.load()?)?)?;
            Ok(Status::Complete)
        }
        Command::DumpMatrix { source } => {
            emit_json(&commands::dump_matrix(&source.load()?)?)?;
            Ok(Status::Complete)
        }
        Command::Reproduce { figure, out_dir } => {
            let (files, status) = reproduce(figure, &out_dir)?;
            for f in files {
                println!("{}", f.display());
            }
            Ok(status)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = moloconv::init_threads().and_then(|()| run(cli.command));
    match result {
        Ok(status) => ExitCode::from(status.exit_code()),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
