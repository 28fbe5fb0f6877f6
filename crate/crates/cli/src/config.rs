//! Run configuration: defaults, `key=value` files and command-line flags.

use std::path::PathBuf;

use clap::{Args, ValueEnum};
use fracspec::laplace::DEFAULT_DELTA;
use fracspec::reference::{ALPHAS, ELL};
use fracspec::spectrum::{KScan, ModelParams};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Table1,
    Table2,
    Spectrum,
    Wavefunction,
    Potential,
    Roots,
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Optional settings shared by flags and config files. Unset fields fall back
/// to the next layer.
#[derive(Debug, Clone, Default, PartialEq, Args)]
pub struct Settings {
    #[arg(long, value_enum)]
    pub mode: Option<Mode>,
    /// Fractional order; repeatable or comma separated.
    #[arg(long, value_delimiter = ',')]
    pub alpha: Vec<f64>,
    /// Spatial dimension N; repeatable or comma separated.
    #[arg(long, value_delimiter = ',')]
    pub dim: Vec<u32>,
    /// Radial quantum number; repeatable or comma separated.
    #[arg(long, value_delimiter = ',')]
    pub n: Vec<u32>,
    #[arg(long)]
    pub ell: Option<u32>,
    /// Reduced mass M in GeV.
    #[arg(long)]
    pub mass: Option<f64>,
    /// Well depth D0 in GeV.
    #[arg(long)]
    pub d0: Option<f64>,
    /// Equilibrium distance r0 in GeV^-1.
    #[arg(long)]
    pub r0: Option<f64>,
    /// Constant term C of the potential in GeV.
    #[arg(long)]
    pub c: Option<f64>,
    /// Branch parameter delta in (-1, 0).
    #[arg(long, allow_hyphen_values = true)]
    pub delta: Option<f64>,
    #[arg(long)]
    pub rmin: Option<f64>,
    #[arg(long)]
    pub rmax: Option<f64>,
    #[arg(long)]
    pub points: Option<usize>,
    /// Upper end of the k* scan.
    #[arg(long)]
    pub kmax: Option<f64>,
    /// File of `N, alpha = root index` lines overriding the branch selector.
    #[arg(long = "branch-file")]
    pub branch_file: Option<PathBuf>,
    /// Output file, or directory for wavefunction mode. Standard output if unset.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Scales every tau in the verify report; fault injection only.
    #[arg(long = "tau-scale", hide = true)]
    pub tau_scale: Option<f64>,
}

fn replace<T>(base: &mut Option<T>, over: Option<T>) {
    if over.is_some() {
        *base = over;
    }
}

fn replace_list<T>(base: &mut Vec<T>, over: Vec<T>) {
    if !over.is_empty() {
        *base = over;
    }
}

impl Settings {
    /// Fields set in `over` win.
    pub fn overlay(mut self, over: Settings) -> Settings {
        replace(&mut self.mode, over.mode);
        replace_list(&mut self.alpha, over.alpha);
        replace_list(&mut self.dim, over.dim);
        replace_list(&mut self.n, over.n);
        replace(&mut self.ell, over.ell);
        replace(&mut self.mass, over.mass);
        replace(&mut self.d0, over.d0);
        replace(&mut self.r0, over.r0);
        replace(&mut self.c, over.c);
        replace(&mut self.delta, over.delta);
        replace(&mut self.rmin, over.rmin);
        replace(&mut self.rmax, over.rmax);
        replace(&mut self.points, over.points);
        replace(&mut self.kmax, over.kmax);
        replace(&mut self.branch_file, over.branch_file);
        replace(&mut self.out, over.out);
        replace(&mut self.format, over.format);
        replace(&mut self.tau_scale, over.tau_scale);
        self
    }
}

fn parse_value<T: std::str::FromStr>(key: &str, raw: &str) -> Result<T, String> {
    raw.parse::<T>()
        .map_err(|_| format!("invalid value {raw:?} for {key}"))
}

fn parse_list<T: std::str::FromStr>(key: &str, raw: &str) -> Result<Vec<T>, String> {
    raw.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse_value(key, s))
        .collect()
}

fn parse_enum<T: ValueEnum>(key: &str, raw: &str) -> Result<T, String> {
    T::from_str(raw, true).map_err(|_| format!("invalid value {raw:?} for {key}"))
}

fn apply(s: &mut Settings, key: &str, raw: &str) -> Result<(), String> {
    match key {
        "mode" => s.mode = Some(parse_enum(key, raw)?),
        "alpha" => s.alpha.extend(parse_list::<f64>(key, raw)?),
        "dim" => s.dim.extend(parse_list::<u32>(key, raw)?),
        "n" => s.n.extend(parse_list::<u32>(key, raw)?),
        "ell" => s.ell = Some(parse_value(key, raw)?),
        "mass" => s.mass = Some(parse_value(key, raw)?),
        "d0" => s.d0 = Some(parse_value(key, raw)?),
        "r0" => s.r0 = Some(parse_value(key, raw)?),
        "c" => s.c = Some(parse_value(key, raw)?),
        "delta" => s.delta = Some(parse_value(key, raw)?),
        "rmin" => s.rmin = Some(parse_value(key, raw)?),
        "rmax" => s.rmax = Some(parse_value(key, raw)?),
        "points" => s.points = Some(parse_value(key, raw)?),
        "kmax" => s.kmax = Some(parse_value(key, raw)?),
        "branch-file" => s.branch_file = Some(PathBuf::from(raw)),
        "out" => s.out = Some(PathBuf::from(raw)),
        "format" => s.format = Some(parse_enum(key, raw)?),
        "tau-scale" => s.tau_scale = Some(parse_value(key, raw)?),
        _ => return Err(format!("unknown key {key:?}")),
    }
    Ok(())
}

/// Parses `key = value` lines. `#` starts a comment; list keys accumulate.
pub fn parse_config(text: &str, origin: &str) -> CliResult<Settings> {
    let mut s = Settings::default();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| CliError::Parse {
            path: origin.to_string(),
            line: i + 1,
            msg,
        };
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| err(format!("expected key = value, got {line:?}")))?;
        let key = key.trim().trim_start_matches("--");
        apply(&mut s, key, value.trim()).map_err(err)?;
    }
    Ok(s)
}

/// Physical inputs from which the α-dependent coefficients are built.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelInputs {
    pub mass: f64,
    pub d0: f64,
    pub r0: f64,
    pub c: f64,
    pub delta: f64,
}

impl Default for ModelInputs {
    fn default() -> Self {
        ModelInputs {
            mass: ModelParams::DIATOMIC_MASS,
            d0: ModelParams::DIATOMIC_D0,
            r0: ModelParams::DIATOMIC_R0,
            c: 0.0,
            delta: DEFAULT_DELTA,
        }
    }
}

impl ModelInputs {
    /// Kratzer-Fues coefficients at order `alpha` shifted by `C`.
    pub fn params(&self, alpha: f64) -> fracspec::Result<ModelParams> {
        let kf = ModelParams::kratzer_fues(alpha, self.mass, self.d0, self.r0, self.delta)?;
        ModelParams::new(
            kf.mass, kf.d0, kf.r0, kf.coeff_a, kf.coeff_b, self.c, kf.delta,
        )
    }
}

/// Fully resolved settings for one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub mode: Mode,
    pub model: ModelInputs,
    pub alpha_list: Vec<f64>,
    pub dims: Vec<u32>,
    pub n_list: Vec<u32>,
    pub ell: u32,
    pub r_min: f64,
    pub r_max: f64,
    pub r_points: usize,
    pub scan: KScan,
    pub branch_file: Option<PathBuf>,
    pub output_path: Option<PathBuf>,
    pub format: Format,
    pub tau_scale: f64,
}

pub const DEFAULT_DIMS: [u32; 3] = [3, 4, 5];
pub const DEFAULT_STATES: [u32; 2] = [1, 2];

// Default radial windows in units of r0.
fn default_window(mode: Mode) -> (f64, f64, usize) {
    match mode {
        Mode::Potential => (0.2, 5.0, 2000),
        _ => (0.01, 10.0, 1000),
    }
}

impl RunConfig {
    pub fn from_settings(s: Settings) -> CliResult<RunConfig> {
        let cfg_err = |m: String| Err(CliError::Config(m));
        let mode = s.mode.unwrap_or(Mode::Table2);
        let d = ModelInputs::default();
        let model = ModelInputs {
            mass: s.mass.unwrap_or(d.mass),
            d0: s.d0.unwrap_or(d.d0),
            r0: s.r0.unwrap_or(d.r0),
            c: s.c.unwrap_or(d.c),
            delta: s.delta.unwrap_or(d.delta),
        };
        let alpha_list = if s.alpha.is_empty() {
            ALPHAS.to_vec()
        } else {
            s.alpha
        };
        if let Some(a) = alpha_list.iter().find(|a| !(**a > 0.0 && **a <= 1.0)) {
            return cfg_err(format!("alpha {a} not in (0, 1]"));
        }
        let dims = if s.dim.is_empty() {
            DEFAULT_DIMS.to_vec()
        } else {
            s.dim
        };
        if let Some(n) = dims.iter().find(|n| **n < 2) {
            return cfg_err(format!("dimension {n} must be at least 2"));
        }
        let n_list = if s.n.is_empty() {
            DEFAULT_STATES.to_vec()
        } else {
            s.n
        };
        let (lo, hi, pts) = default_window(mode);
        let r_min = s.rmin.unwrap_or(lo * model.r0);
        let r_max = s.rmax.unwrap_or(hi * model.r0);
        let r_points = s.points.unwrap_or(pts);
        if matches!(mode, Mode::Wavefunction | Mode::Potential) {
            if !(r_min > 0.0 && r_min < r_max && r_max.is_finite()) {
                return cfg_err(format!("need 0 < rmin < rmax (got {r_min}, {r_max})"));
            }
            if r_points < 2 {
                return cfg_err("points must be at least 2".into());
            }
        }
        let scan = KScan {
            k_max: s.kmax.unwrap_or(KScan::default().k_max),
            ..KScan::default()
        };
        if !(scan.k_max > scan.grid_step && scan.k_max.is_finite()) {
            return cfg_err(format!(
                "kmax {} must exceed {}",
                scan.k_max, scan.grid_step
            ));
        }
        let tau_scale = s.tau_scale.unwrap_or(1.0);
        if !tau_scale.is_finite() {
            return cfg_err("tau-scale must be finite".into());
        }
        model
            .params(alpha_list[0])
            .map_err(|e| CliError::Config(e.to_string()))?;
        Ok(RunConfig {
            mode,
            model,
            alpha_list,
            dims,
            n_list,
            ell: s.ell.unwrap_or(ELL),
            r_min,
            r_max,
            r_points,
            scan,
            branch_file: s.branch_file,
            output_path: s.out,
            format: s.format.unwrap_or_default(),
            tau_scale,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_syntax() {
        let text = "# diatomic run\nmode = spectrum\nalpha = 0.9, 0.8\nalpha=1\n--dim = 4\nmass = 0.5 # GeV\n\nformat = JSON\n";
        let s = parse_config(text, "t").unwrap();
        assert_eq!(s.mode, Some(Mode::Spectrum));
        assert_eq!(s.alpha, vec![0.9, 0.8, 1.0]);
        assert_eq!(s.dim, vec![4]);
        assert_eq!(s.mass, Some(0.5));
        assert_eq!(s.format, Some(Format::Json));
    }

    #[test]
    fn parse_errors_carry_line() {
        match parse_config("mode = table1\nbogus = 1\n", "cfg") {
            Err(CliError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!(parse_config("alpha 0.5", "cfg").is_err());
        assert!(parse_config("dim = -3", "cfg").is_err());
        assert!(parse_config("mode = nothing", "cfg").is_err());
    }

    #[test]
    fn overlay_prefers_later_layer() {
        let file = parse_config("alpha = 0.9\nell = 2\nmass = 1", "f").unwrap();
        let flags = Settings {
            alpha: vec![0.7],
            mass: Some(2.0),
            ..Settings::default()
        };
        let s = file.overlay(flags);
        assert_eq!(s.alpha, vec![0.7]);
        assert_eq!(s.ell, Some(2));
        assert_eq!(s.mass, Some(2.0));
    }

    #[test]
    fn defaults_and_validation() {
        let cfg = RunConfig::from_settings(Settings::default()).unwrap();
        assert_eq!(cfg.mode, Mode::Table2);
        assert_eq!(cfg.alpha_list.len(), 7);
        assert_eq!(cfg.dims, vec![3, 4, 5]);
        let bad = |s: Settings| RunConfig::from_settings(s).unwrap_err().exit_code();
        assert_eq!(
            bad(Settings {
                alpha: vec![1.2],
                ..Settings::default()
            }),
            2
        );
        assert_eq!(
            bad(Settings {
                dim: vec![1],
                ..Settings::default()
            }),
            2
        );
        assert_eq!(
            bad(Settings {
                delta: Some(0.3),
                ..Settings::default()
            }),
            2
        );
        let window = Settings {
            mode: Some(Mode::Potential),
            rmin: Some(5.0),
            rmax: Some(1.0),
            ..Settings::default()
        };
        assert_eq!(bad(window), 2);
    }
}
