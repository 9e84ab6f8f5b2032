use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qetsim::io::{self, Command, Format};
use qetsim::model::UnitMode;
use qetsim::{Error, Result};

#[derive(Parser)]
#[command(
    name = "qetsim",
    version,
    about = "Negative-energy curvature simulator and figure-data generator"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Sweep a scalar model over one or two parameters.
    SnrSweep(RunArgs),
    /// Static curvature profiles of source arrays.
    CurvatureProfile(RunArgs),
    /// Retarded curvature of a timed event chain.
    QixSim(RunArgs),
    /// Detector observables for one curvature amplitude.
    Observables(RunArgs),
    /// Time-gated curvature pulse series.
    GatedPulse(RunArgs),
    /// Regenerate the data behind a figure.
    Recipe {
        name: String,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// List figure recipes.
    ListRecipes,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Comma-separated subset of csv, json, gnuplot.
    #[arg(long, value_delimiter = ',')]
    format: Option<Vec<String>>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    units: Option<String>,
}

fn run_command(command: Command, args: &RunArgs) -> Result<Vec<PathBuf>> {
    let text = std::fs::read_to_string(&args.config).map_err(|e| Error::Io {
        path: args.config.clone(),
        source: e,
    })?;
    let mut overrides = toml::Table::new();
    if let Some(out) = &args.out {
        overrides.insert("output_dir".into(), out.display().to_string().into());
    }
    if let Some(formats) = &args.format {
        let parsed = formats
            .iter()
            .map(|f| f.parse::<Format>())
            .collect::<Result<Vec<_>>>()?;
        let names = parsed
            .iter()
            .map(|f| toml::Value::try_from(f).expect("format serializes"))
            .collect();
        overrides.insert("formats".into(), toml::Value::Array(names));
    }
    if let Some(seed) = args.seed {
        let seed = i64::try_from(seed).map_err(|_| Error::Validation {
            what: "seed".into(),
            reason: "must fit in a signed 64-bit integer".into(),
        })?;
        overrides.insert("seed".into(), seed.into());
    }
    if let Some(units) = &args.units {
        let mode: UnitMode = units.parse()?;
        overrides.insert("units".into(), toml::Value::try_from(mode).expect("units serialize"));
    }
    let parsed = io::parse_config_with(&text, &overrides)?;
    if parsed.config.command != command {
        return Err(Error::ConfigSchema {
            key: "command".into(),
            message: format!(
                "config is for `{}` but `{}` was invoked",
                parsed.config.command.id(),
                command.id()
            ),
        });
    }
    io::run_config(&parsed, &command.id().replace('-', "_"), &toml::Table::new())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Cmd::SnrSweep(a) => run_command(Command::SnrSweep, a),
        Cmd::CurvatureProfile(a) => run_command(Command::CurvatureProfile, a),
        Cmd::QixSim(a) => run_command(Command::QixSim, a),
        Cmd::Observables(a) => run_command(Command::Observables, a),
        Cmd::GatedPulse(a) => run_command(Command::GatedPulse, a),
        Cmd::Recipe { name, out } => io::run_recipe(name, out),
        Cmd::ListRecipes => {
            for r in io::list_recipes() {
                println!("{:<6} {}", r.name, r.description);
            }
            Ok(Vec::new())
        }
    };
    match result {
        Ok(paths) => {
            for p in paths {
                println!("{}", p.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
