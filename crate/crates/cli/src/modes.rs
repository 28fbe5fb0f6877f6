//! One function per run mode. Rows are computed in parallel and collected in
//! input order, so output is independent of scheduling.

use std::path::PathBuf;

use fracspec::laplace::tau_factor;
use fracspec::reference::{EV_PER_GEV, TABLE2};
use fracspec::specfun::SeriesControl;
use fracspec::spectrum::{
    energy, nu_product, potential, q1, radial_wavefunction, select_branch, solve_kstar,
    solve_state, KRoot, ModelParams, QuantumNumbers, SpectralSolution,
};
use fracspec::verify::{linear_grid, run_all, VerifyOptions};
use rayon::prelude::*;
use serde::Serialize;

use crate::branch::{parse_branch_file, BranchEntry, BranchOverrides};
use crate::config::{Format, Mode, RunConfig};
use crate::error::{CliError, CliResult};
use crate::output::{format_real, json_string, Cell, Precision, Table};

/// Text destined for one output, plus anything to report on standard error.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Rendered {
    /// `(path, contents)`; `None` means standard output.
    pub outputs: Vec<(Option<PathBuf>, String)>,
    pub warnings: Vec<String>,
    /// Checks failing outside the known-discrepancy list.
    pub unexpected_failures: usize,
}

impl Rendered {
    fn single(cfg: &RunConfig, text: String) -> Self {
        Rendered {
            outputs: vec![(cfg.output_path.clone(), text)],
            ..Rendered::default()
        }
    }
}

/// Roots of one `(N, α)` row and the one chosen for it.
#[derive(Debug, Clone, PartialEq)]
pub struct RootSet {
    pub params: ModelParams,
    pub tau: f64,
    pub nu_product: f64,
    pub roots: Vec<KRoot>,
    pub selected: usize,
}

impl RootSet {
    pub fn k_star(&self) -> f64 {
        self.roots[self.selected].k
    }
}

pub fn load_overrides(cfg: &RunConfig) -> CliResult<BranchOverrides> {
    match &cfg.branch_file {
        None => Ok(BranchOverrides::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| CliError::io(p, e))?;
            parse_branch_file(&text, &p.display().to_string())
        }
    }
}

/// Scans `Q2` for the row and applies the override or the default selector.
pub fn root_set(
    cfg: &RunConfig,
    overrides: &BranchOverrides,
    dim: u32,
    alpha: f64,
) -> CliResult<RootSet> {
    let params = cfg.model.params(alpha)?;
    let tau = params.tau(alpha)?;
    let q = QuantumNumbers::new(0, cfg.ell, dim)?;
    let nu = nu_product(alpha, &q, params.mass, params.coeff_a)?;
    let roots = solve_kstar(alpha, dim, nu, tau, &cfg.scan)?;
    let selected = match overrides.lookup(dim, alpha) {
        Some(i) if i < roots.len() => i,
        Some(i) => {
            return Err(CliError::Config(format!(
                "branch override N={dim}, alpha={alpha} asks for root {i} but only {} exist",
                roots.len()
            )))
        }
        None => select_branch(&roots).ok_or(fracspec::Error::NoRoot {
            k_max: cfg.scan.k_max,
        })?,
    };
    Ok(RootSet {
        params,
        tau,
        nu_product: nu,
        roots,
        selected,
    })
}

fn row_keys(cfg: &RunConfig) -> Vec<(u32, f64)> {
    cfg.dims
        .iter()
        .flat_map(|&d| cfg.alpha_list.iter().map(move |&a| (d, a)))
        .collect()
}

fn state_keys(cfg: &RunConfig) -> Vec<(u32, f64, u32)> {
    row_keys(cfg)
        .into_iter()
        .flat_map(|(d, a)| cfg.n_list.iter().map(move |&n| (d, a, n)))
        .collect()
}

pub fn run_table1(cfg: &RunConfig) -> CliResult<Rendered> {
    let mut t = Table::new(&["alpha", "A", "B", "tau"], Precision::Table);
    for &alpha in &cfg.alpha_list {
        let p = cfg.model.params(alpha)?;
        let tau = tau_factor(alpha, p.delta)?;
        t.push(vec![
            alpha.into(),
            p.coeff_a.into(),
            p.coeff_b.into(),
            tau.into(),
        ]);
    }
    Ok(Rendered::single(cfg, t.render(cfg.format)?))
}

fn table2_row(cfg: &RunConfig, overrides: &BranchOverrides, dim: u32, alpha: f64) -> Vec<Cell> {
    let mut row: Vec<Cell> = vec![dim.into(), alpha.into()];
    let nan_tail = |row: &mut Vec<Cell>, note: String| {
        row.extend((0..3 + cfg.n_list.len()).map(|_| Cell::Real(f64::NAN)));
        row.push(Cell::Text(note));
    };
    let set = match root_set(cfg, overrides, dim, alpha) {
        Ok(s) => s,
        Err(e) => {
            nan_tail(&mut row, e.to_string());
            return row;
        }
    };
    let k = set.k_star();
    let q1v = q1(alpha, k, dim).unwrap_or(f64::NAN);
    row.push(k.into());
    row.push(q1v.into());
    row.push(set.roots[set.selected].gamma_alpha.into());
    let mut note = String::new();
    for &n in &cfg.n_list {
        let e =
            QuantumNumbers::new(n, cfg.ell, dim).and_then(|q| energy(alpha, &q, &set.params, k));
        match e {
            Ok(e) => row.push((e * EV_PER_GEV).into()),
            Err(err) => {
                row.push(Cell::Real(f64::NAN));
                note = format!("n={n}: {err}");
            }
        }
    }
    row.push(Cell::Text(note));
    row
}

pub fn run_table2(cfg: &RunConfig) -> CliResult<Rendered> {
    let overrides = load_overrides(cfg)?;
    let mut columns = vec![
        "N".to_string(),
        "alpha".into(),
        "k_star".into(),
        "Q1".into(),
        "gamma_alpha".into(),
    ];
    columns.extend(cfg.n_list.iter().map(|n| format!("E_n{n}_eV")));
    columns.push("note".into());
    let cols: Vec<&str> = columns.iter().map(String::as_str).collect();
    let mut t = Table::new(&cols, Precision::Table);
    let rows: Vec<Vec<Cell>> = row_keys(cfg)
        .par_iter()
        .map(|&(d, a)| table2_row(cfg, &overrides, d, a))
        .collect();
    let failed = rows
        .iter()
        .filter(|r| matches!(r.last(), Some(Cell::Text(s)) if !s.is_empty()))
        .count();
    for r in rows {
        t.push(r);
    }
    let mut out = Rendered::single(cfg, t.render(cfg.format)?);
    if failed > 0 {
        out.warnings.push(format!(
            "{failed} rows carry NaN entries; see the note column"
        ));
    }
    Ok(out)
}

pub fn solve_states(cfg: &RunConfig) -> CliResult<Vec<SpectralSolution>> {
    let overrides = load_overrides(cfg)?;
    let sets: Vec<((u32, f64), RootSet)> = row_keys(cfg)
        .par_iter()
        .map(|&(d, a)| root_set(cfg, &overrides, d, a).map(|s| ((d, a), s)))
        .collect::<CliResult<_>>()?;
    state_keys(cfg)
        .par_iter()
        .map(|&(d, a, n)| {
            let set = &sets
                .iter()
                .find(|((sd, sa), _)| *sd == d && *sa == a)
                .expect("every state key has a row")
                .1;
            let q = QuantumNumbers::new(n, cfg.ell, d)?;
            Ok(solve_state(a, &q, &set.params, set.k_star())?)
        })
        .collect()
}

pub const SPECTRUM_COLUMNS: [&str; 11] = [
    "alpha",
    "dim",
    "n",
    "ell",
    "k_star",
    "q1",
    "gamma_alpha",
    "beta_alpha",
    "epsilon_alpha",
    "energy",
    "nu_product",
];

pub fn run_spectrum(cfg: &RunConfig) -> CliResult<Rendered> {
    let sols = solve_states(cfg)?;
    let text = match cfg.format {
        Format::Json => json_string(&sols)?,
        Format::Csv => {
            let mut t = Table::new(&SPECTRUM_COLUMNS, Precision::Data);
            for s in &sols {
                t.push(vec![
                    s.alpha.into(),
                    s.dim.into(),
                    s.n.into(),
                    s.ell.into(),
                    s.k_star.into(),
                    s.q1.into(),
                    s.gamma_alpha.into(),
                    s.beta_alpha.into(),
                    s.epsilon_alpha.into(),
                    s.energy.into(),
                    s.nu_product.into(),
                ]);
            }
            t.to_csv()?
        }
    };
    Ok(Rendered::single(cfg, text))
}

#[derive(Debug, Clone, Serialize)]
struct WaveRecord<'a> {
    dim: u32,
    alpha: f64,
    n: u32,
    ell: u32,
    dropped: usize,
    r_values: &'a [f64],
    #[serde(rename = "R_values")]
    radial_values: &'a [f64],
}

pub fn wavefunction_file_name(dim: u32, alpha: f64, n: u32, format: Format) -> String {
    let ext = match format {
        Format::Csv => "csv",
        Format::Json => "json",
    };
    format!(
        "wavefunction_N{dim}_alpha{}_n{n}.{ext}",
        format_real(alpha, 4)
    )
}

pub fn run_wavefunction(cfg: &RunConfig) -> CliResult<Rendered> {
    let sols = solve_states(cfg)?;
    let grid = linear_grid(cfg.r_min, cfg.r_max, cfg.r_points);
    let ctrl = SeriesControl::default();
    let samples = sols
        .par_iter()
        .map(|s| radial_wavefunction(s, &grid, &ctrl).map_err(CliError::from))
        .collect::<CliResult<Vec<_>>>()?;
    let mut out = Rendered::default();
    let dropped: usize = samples.iter().map(|s| s.dropped).sum();
    if dropped > 0 {
        out.warnings.push(format!(
            "{dropped} grid points dropped by the overflow guard"
        ));
    }
    match &cfg.output_path {
        Some(dir) => {
            for (s, w) in sols.iter().zip(&samples) {
                let path = dir.join(wavefunction_file_name(s.dim, s.alpha, s.n, cfg.format));
                let text = match cfg.format {
                    Format::Json => json_string(&WaveRecord {
                        dim: s.dim,
                        alpha: s.alpha,
                        n: s.n,
                        ell: s.ell,
                        dropped: w.dropped,
                        r_values: &w.r_values,
                        radial_values: &w.radial_values,
                    })?,
                    Format::Csv => {
                        let mut t = Table::new(&["r", "R"], Precision::Data);
                        for (&r, &v) in w.r_values.iter().zip(&w.radial_values) {
                            t.push(vec![r.into(), v.into()]);
                        }
                        t.to_csv()?
                    }
                };
                out.outputs.push((Some(path), text));
            }
        }
        None => {
            let mut t = Table::new(&["N", "alpha", "n", "r", "R"], Precision::Data);
            for (s, w) in sols.iter().zip(&samples) {
                for (&r, &v) in w.r_values.iter().zip(&w.radial_values) {
                    t.push(vec![
                        s.dim.into(),
                        s.alpha.into(),
                        s.n.into(),
                        r.into(),
                        v.into(),
                    ]);
                }
            }
            out.outputs.push((None, t.render(cfg.format)?));
        }
    }
    Ok(out)
}

/// `V(r)` on the configured grid with its second difference; ends carry NaN.
pub fn potential_curve(cfg: &RunConfig, alpha: f64) -> CliResult<Vec<[f64; 3]>> {
    let p = cfg.model.params(alpha)?;
    let grid = linear_grid(cfg.r_min, cfg.r_max, cfg.r_points);
    let v = grid
        .iter()
        .map(|&r| potential(&p, alpha, r))
        .collect::<fracspec::Result<Vec<f64>>>()?;
    let h = grid[1] - grid[0];
    Ok((0..grid.len())
        .map(|i| {
            let d2 = if i == 0 || i + 1 == grid.len() {
                f64::NAN
            } else {
                (v[i + 1] - 2.0 * v[i] + v[i - 1]) / (h * h)
            };
            [grid[i], v[i], d2]
        })
        .collect())
}

pub fn run_potential(cfg: &RunConfig) -> CliResult<Rendered> {
    let curves = cfg
        .alpha_list
        .par_iter()
        .map(|&a| potential_curve(cfg, a))
        .collect::<CliResult<Vec<_>>>()?;
    let mut t = Table::new(&["alpha", "r", "V", "d2V"], Precision::Data);
    for (&a, curve) in cfg.alpha_list.iter().zip(&curves) {
        for &[r, v, d2] in curve {
            t.push(vec![a.into(), r.into(), v.into(), d2.into()]);
        }
    }
    Ok(Rendered::single(cfg, t.render(cfg.format)?))
}

pub fn run_roots(cfg: &RunConfig) -> CliResult<Rendered> {
    let overrides = load_overrides(cfg)?;
    let sets = row_keys(cfg)
        .par_iter()
        .map(|&(d, a)| root_set(cfg, &overrides, d, a).map(|s| (d, a, s)))
        .collect::<CliResult<Vec<_>>>()?;
    let mut t = Table::new(
        &[
            "N",
            "alpha",
            "index",
            "k",
            "q1",
            "gamma_alpha",
            "growth_exponent",
            "selected",
        ],
        Precision::Data,
    );
    for (d, a, set) in &sets {
        for (i, r) in set.roots.iter().enumerate() {
            t.push(vec![
                (*d).into(),
                (*a).into(),
                i.into(),
                r.k.into(),
                r.q1.into(),
                r.gamma_alpha.into(),
                r.growth_exponent.into(),
                (i == set.selected).into(),
            ]);
        }
    }
    Ok(Rendered::single(cfg, t.render(cfg.format)?))
}

/// Root indices that reproduce the published `k*` of every reference row.
pub fn reference_branches(cfg: &RunConfig) -> CliResult<BranchOverrides> {
    let none = BranchOverrides::default();
    TABLE2
        .iter()
        .map(|row| {
            let set = root_set(cfg, &none, row.dim, row.alpha)?;
            let index = set
                .roots
                .iter()
                .enumerate()
                .min_by(|a, b| {
                    (a.1.k - row.k_star)
                        .abs()
                        .total_cmp(&(b.1.k - row.k_star).abs())
                })
                .map(|(i, _)| i)
                .ok_or(fracspec::Error::NoRoot {
                    k_max: cfg.scan.k_max,
                })?;
            Ok(BranchEntry {
                dim: row.dim,
                alpha: row.alpha,
                index,
            })
        })
        .collect()
}

pub fn run_verify(cfg: &RunConfig) -> CliResult<Rendered> {
    let reports = run_all(&VerifyOptions {
        tau_scale: cfg.tau_scale,
    });
    let text = match cfg.format {
        Format::Json => json_string(&reports)?,
        Format::Csv => {
            let mut t = Table::new(
                &[
                    "criterion",
                    "check",
                    "measured",
                    "tolerance",
                    "pass",
                    "known_discrepancy",
                    "detail",
                ],
                Precision::Data,
            );
            for r in &reports {
                for c in &r.checks {
                    t.push(vec![
                        Cell::Text(r.id.clone()),
                        Cell::Text(c.name.clone()),
                        c.measured.into(),
                        c.tolerance.into(),
                        c.pass.into(),
                        c.known_discrepancy.into(),
                        Cell::Text(c.detail.clone()),
                    ]);
                }
            }
            t.to_csv()?
        }
    };
    let mut out = Rendered::single(cfg, text);
    for r in &reports {
        let tag = match (r.passed(), r.acceptable()) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known discrepancies only)",
            (false, false) => "FAIL",
        };
        out.warnings.push(format!("{tag} [{}] {}", r.id, r.title));
    }
    out.unexpected_failures = reports
        .iter()
        .flat_map(|r| &r.checks)
        .filter(|c| !c.pass && !c.known_discrepancy)
        .count();
    Ok(out)
}

pub fn render(cfg: &RunConfig) -> CliResult<Rendered> {
    match cfg.mode {
        Mode::Table1 => run_table1(cfg),
        Mode::Table2 => run_table2(cfg),
        Mode::Spectrum => run_spectrum(cfg),
        Mode::Wavefunction => run_wavefunction(cfg),
        Mode::Potential => run_potential(cfg),
        Mode::Roots => run_roots(cfg),
        Mode::Verify => run_verify(cfg),
    }
}
