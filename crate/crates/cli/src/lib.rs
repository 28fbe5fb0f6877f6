//! Command-line driver for the `fracspec` library: regenerates the coefficient
//! and spectral tables, eigenfunction and potential data, and the
//! verification report.

pub mod branch;
pub mod config;
pub mod error;
pub mod modes;
pub mod output;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::Parser;

pub use config::{Format, Mode, RunConfig, Settings};
pub use error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(
    name = "fracspec",
    version,
    about = "Fractional Kratzer-Fues spectra as CSV or JSON"
)]
pub struct Cli {
    /// `key = value` file with the same keys as the flags; flags win.
    #[arg(long, env = "FRACSPEC_CONFIG")]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub settings: Settings,
}

/// Resolves the configuration file layer and the flags into a [`RunConfig`].
pub fn resolve(cli: Cli) -> CliResult<RunConfig> {
    let base = match &cli.config {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| CliError::io(p, e))?;
            config::parse_config(&text, &p.display().to_string())?
        }
        None => Settings::default(),
    };
    RunConfig::from_settings(base.overlay(cli.settings))
}

/// Writes every output of a run. Directories for per-tuple files are created.
pub fn execute(cfg: &RunConfig) -> CliResult<modes::Rendered> {
    let rendered = modes::render(cfg)?;
    if cfg.mode == Mode::Wavefunction {
        if let Some(dir) = &cfg.output_path {
            std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        }
    }
    for (path, text) in &rendered.outputs {
        output::emit(path.as_deref(), text)?;
    }
    Ok(rendered)
}

/// Parses arguments, runs, and returns the process exit code.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = resolve(cli).and_then(|cfg| execute(&cfg));
    match result {
        Ok(r) => {
            for w in &r.warnings {
                eprintln!("{w}");
            }
            if r.unexpected_failures > 0 {
                let err = CliError::Verification(r.unexpected_failures);
                eprintln!("{err}");
                return err.exit_code();
            }
            0
        }
        Err(e) => {
            eprintln!("fracspec: {e}");
            e.exit_code()
        }
    }
}
