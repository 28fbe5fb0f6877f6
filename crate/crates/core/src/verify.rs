//! Reproduction criteria and structural invariants as pass/fail checks.
//!
//! Each criterion returns a [`CriterionReport`] listing every measured error
//! against its pinned tolerance. Nothing here panics on numerical failure; an
//! error becomes a failing check carrying the message.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::jumarie::{frac_deriv_power, gl_frac_deriv, GlConfig};
use crate::laplace::{
    laplace_numeric, ml_deriv_transform, ml_transform, ml_transform_pair, power_transform,
    tau_factor, QuadratureConfig, DEFAULT_DELTA,
};
use crate::reference::{Table2Row, ALPHAS, ELL, ENERGY_STATES, EV_PER_GEV, TABLE1, TABLE2};
use crate::specfun::{
    frac_cos, frac_sin, gamma_ratio, gamma_real, mittag_leffler, mittag_leffler_deriv,
    ml_deriv_series, SeriesControl,
};
use crate::spectrum::{
    closed_form_kstar_alpha1, energy, kummer_sign_changes, nu_product, potential, q1, q2,
    radial_value, radial_wavefunction, solve_kstar, solve_state, KRoot, KScan, ModelParams,
    QuantumNumbers, SpectralSolution, TransformedSolution, ROOT_CERTIFICATE,
};

/// One measured quantity against its tolerance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub measured: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// Listed in [`KNOWN_DISCREPANCIES`].
    pub known_discrepancy: bool,
    pub detail: String,
}

impl Check {
    pub fn within(name: impl Into<String>, measured: f64, tolerance: f64) -> Check {
        Check {
            name: name.into(),
            measured,
            tolerance,
            pass: measured.is_finite() && measured <= tolerance,
            known_discrepancy: false,
            detail: String::new(),
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Check {
        self.detail = detail.into();
        self
    }

    fn failed(name: impl Into<String>, err: &Error) -> Check {
        Check {
            name: name.into(),
            measured: f64::NAN,
            tolerance: 0.0,
            pass: false,
            known_discrepancy: false,
            detail: err.to_string(),
        }
    }

    fn from_result(name: impl Into<String>, tolerance: f64, r: Result<f64>) -> Check {
        let name = name.into();
        match r {
            Ok(v) => Check::within(name, v, tolerance),
            Err(e) => Check::failed(name, &e),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match (self.pass, self.known_discrepancy) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => "FAIL",
        };
        write!(
            f,
            "{tag} {}: measured {:.3e}, tolerance {:.1e}",
            self.name, self.measured, self.tolerance
        )?;
        if !self.detail.is_empty() {
            write!(f, " ({})", self.detail)?;
        }
        Ok(())
    }
}

/// All checks belonging to one criterion or invariant suite.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionReport {
    pub id: String,
    pub title: String,
    pub checks: Vec<Check>,
}

impl CriterionReport {
    fn new(id: &str, title: &str, mut checks: Vec<Check>) -> Self {
        for c in &mut checks {
            c.known_discrepancy = KNOWN_DISCREPANCIES.contains(&c.name.as_str());
        }
        CriterionReport {
            id: id.into(),
            title: title.into(),
            checks,
        }
    }

    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.pass)
    }

    /// Every check passes or fails only as a listed discrepancy.
    pub fn acceptable(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.pass || c.known_discrepancy)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ok = self.checks.iter().filter(|c| c.pass).count();
        let tag = if self.passed() { "PASS" } else { "FAIL" };
        writeln!(
            f,
            "{tag} [{}] {} ({ok}/{} checks)",
            self.id,
            self.title,
            self.checks.len()
        )?;
        for c in &self.checks {
            writeln!(f, "    {c}")?;
        }
        Ok(())
    }
}

/// Checks whose printed reference values disagree with the model that
/// produced them. They stay in every report as failures.
pub const KNOWN_DISCREPANCIES: &[&str] = &[
    "A[alpha=0.75]",
    "tau[alpha=0.85]",
    "gamma[N=3,alpha=0.85]",
    "gamma[N=4,alpha=0.85]",
    "gamma[N=5,alpha=0.85]",
    "E[N=3,alpha=0.85,n=1]",
    "E[N=3,alpha=0.85,n=2]",
    "E[N=4,alpha=0.85,n=1]",
    "E[N=4,alpha=0.85,n=2]",
    "E[N=5,alpha=0.75,n=1]",
    "E[N=5,alpha=0.85,n=1]",
    "E[N=5,alpha=0.85,n=2]",
];

/// Knobs for fault injection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    /// Multiplies every `τ` reported for the coefficient table.
    pub tau_scale: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { tau_scale: 1.0 }
    }
}

fn rel(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs()
}

fn ctl() -> SeriesControl {
    SeriesControl::default()
}

// Purely relative truncation, for oracles that compare against exponentially small values.
fn relative_ctl() -> SeriesControl {
    SeriesControl {
        abs_tol: 0.0,
        rel_tol: 1e-15,
        ..SeriesControl::default()
    }
}

fn half_unit_4sig(printed: f64) -> f64 {
    0.5e-3 * 10f64.powf(printed.abs().log10().floor()) * (1.0 + 1e-9)
}

fn row_label(row: &Table2Row) -> String {
    format!("N={},alpha={:.2}", row.dim, row.alpha)
}

fn table_roots(row: &Table2Row) -> Result<(ModelParams, f64, f64, Vec<KRoot>)> {
    let p = ModelParams::diatomic(row.alpha)?;
    let tau = p.tau(row.alpha)?;
    let q = QuantumNumbers::new(1, ELL, row.dim)?;
    let nu = nu_product(row.alpha, &q, p.mass, p.coeff_a)?;
    let roots = solve_kstar(row.alpha, row.dim, nu, tau, &KScan::default())?;
    Ok((p, tau, nu, roots))
}

fn nearest_root(roots: &[KRoot], k: f64) -> Option<&KRoot> {
    roots
        .iter()
        .min_by(|a, b| (a.k - k).abs().total_cmp(&(b.k - k).abs()))
}

/// Coefficients `A`, `B` and branch factor `τ` per order.
pub fn criterion_table1(opts: &VerifyOptions) -> CriterionReport {
    let mut checks = Vec::new();
    for row in &TABLE1 {
        let a = row.alpha;
        match ModelParams::diatomic(a) {
            Ok(p) => {
                checks.push(Check::within(
                    format!("A[alpha={a:.2}]"),
                    (p.coeff_a - row.coeff_a).abs(),
                    half_unit_4sig(row.coeff_a),
                ));
                checks.push(Check::within(
                    format!("B[alpha={a:.2}]"),
                    (p.coeff_b - row.coeff_b).abs(),
                    half_unit_4sig(row.coeff_b),
                ));
            }
            Err(e) => checks.push(Check::failed(format!("A,B[alpha={a:.2}]"), &e)),
        }
        let name = format!("tau[alpha={a:.2}]");
        match tau_factor(a, DEFAULT_DELTA) {
            Ok(t) => {
                let t = t * opts.tau_scale;
                let diff = (t - row.tau).abs();
                let mut c = Check::within(name, diff, 1e-4);
                if diff > 1e-3 {
                    c = c.with_detail(format!(
                        "printed {} but formula gives {t:.4}: discrepancy above 1e-3",
                        row.tau
                    ));
                }
                checks.push(c);
            }
            Err(e) => checks.push(Check::failed(name, &e)),
        }
    }
    CriterionReport::new("1", "coefficient table A, B, tau", checks)
}

/// `k*` membership plus `Q1` and `γ_α` at the printed root.
pub fn criterion_table2_structure() -> CriterionReport {
    let mut checks = Vec::new();
    for row in &TABLE2 {
        let label = row_label(row);
        let (tau, roots) = match table_roots(row) {
            Ok((_, tau, _, roots)) => (tau, roots),
            Err(e) => {
                checks.push(Check::failed(format!("kstar[{label}]"), &e));
                continue;
            }
        };
        let dist =
            nearest_root(&roots, row.k_star).map_or(f64::INFINITY, |r| (r.k - row.k_star).abs());
        checks.push(
            Check::within(format!("kstar[{label}]"), dist, 1e-4)
                .with_detail(format!("{} roots in (0, 12]", roots.len())),
        );
        match q1(row.alpha, row.k_star, row.dim) {
            Ok(q) => {
                checks.push(Check::within(
                    format!("Q1[{label}]"),
                    (q - row.q1).abs(),
                    2e-3,
                ));
                let g = crate::spectrum::gamma_alpha(row.alpha, q, tau);
                checks.push(Check::from_result(
                    format!("gamma[{label}]"),
                    2e-3,
                    g.map(|g| (g - row.gamma_alpha).abs()),
                ));
            }
            Err(e) => checks.push(Check::failed(format!("Q1[{label}]"), &e)),
        }
    }
    CriterionReport::new("2", "spectral table k*, Q1, gamma", checks)
}

/// Energies for `n = 1, 2` at the printed `k*`, in eV.
pub fn criterion_table2_energies() -> CriterionReport {
    let mut checks = Vec::new();
    for row in &TABLE2 {
        for (i, &n) in ENERGY_STATES.iter().enumerate() {
            let name = format!("E[{},n={n}]", row_label(row));
            let want = row.energy_ev[i];
            let got = ModelParams::diatomic(row.alpha).and_then(|p| {
                let q = QuantumNumbers::new(n, ELL, row.dim)?;
                energy(row.alpha, &q, &p, row.k_star)
            });
            checks.push(match got {
                Ok(e) => Check::within(name, rel(e * EV_PER_GEV, want), 0.05)
                    .with_detail(format!("{:.5e} eV vs printed {want}", e * EV_PER_GEV)),
                Err(e) => Check::failed(name, &e),
            });
        }
    }
    CriterionReport::new("3", "spectral table energies", checks)
}

fn coulomb_max_error() -> Result<f64> {
    let (mass, b) = (0.31, -4e-4);
    let p = ModelParams::coulomb(mass, b)?;
    let scan = KScan {
        k_max: 20.0,
        grid_step: 1e-3,
    };
    let mut worst: f64 = 0.0;
    for dim in 3..=7 {
        for ell in 0..=3 {
            let nu = nu_product(1.0, &QuantumNumbers::new(0, ell, dim)?, mass, 0.0)?;
            let roots = solve_kstar(1.0, dim, nu, 1.0, &scan)?;
            if roots.len() != 1 {
                return Err(Error::Domain(format!(
                    "expected one root, found {}",
                    roots.len()
                )));
            }
            for n in 0..=5 {
                let q = QuantumNumbers::new(n, ell, dim)?;
                let e = energy(1.0, &q, &p, roots[0].k)?;
                let principal = f64::from(n + ell) + 0.5 * (f64::from(dim) - 1.0);
                worst = worst.max(rel(e, -0.5 * mass * (b / principal).powi(2)));
            }
        }
    }
    Ok(worst)
}

fn mie_max_error() -> Result<f64> {
    let p = ModelParams::diatomic(1.0)?;
    let mut worst: f64 = 0.0;
    for dim in 3..=7 {
        for ell in 0..=3 {
            for n in 0..=5 {
                let q = QuantumNumbers::new(n, ell, dim)?;
                let k = closed_form_kstar_alpha1(dim, nu_product(1.0, &q, p.mass, p.coeff_a)?)?;
                let e = energy(1.0, &q, &p, k)?;
                let den = f64::from(n) + k + 0.5 * (3.0 - f64::from(dim));
                let want = p.coeff_c - 0.5 * p.mass * (p.coeff_b / den).powi(2);
                worst = worst.max(rel(e, want));
            }
        }
    }
    Ok(worst)
}

/// Coulomb and Mie energies at α = 1 against their closed forms.
pub fn criterion_closed_forms() -> CriterionReport {
    CriterionReport::new(
        "4",
        "alpha = 1 closed-form energies",
        vec![
            Check::from_result(
                "coulomb energies N=3..7, n<=5, l<=3",
                1e-12,
                coulomb_max_error(),
            ),
            Check::from_result("mie energies N=3..7, n<=5, l<=3", 1e-12, mie_max_error()),
        ],
    )
}

// 2/√π ∫_0^x e^{-t²} dt by composite Simpson.
fn erf_simpson(x: f64) -> f64 {
    let m = 4000;
    let h = x / m as f64;
    let f = |t: f64| (-t * t).exp();
    let mut s = f(0.0) + f(x);
    for i in 1..m {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(i as f64 * h);
    }
    s * h / 3.0 * 2.0 / std::f64::consts::PI.sqrt()
}

fn exp_max_error() -> Result<f64> {
    let mut worst: f64 = 0.0;
    for i in -40..=40 {
        let z = 0.5 * f64::from(i);
        worst = worst.max(rel(mittag_leffler(1.0, 1.0, z, &relative_ctl())?, z.exp()));
    }
    Ok(worst)
}

fn m_independence_error() -> Result<f64> {
    let mut worst: f64 = 0.0;
    for m in [0.0, 0.5, 1.0, 2.5, 7.655, 13.3, 20.0] {
        for i in -20..=20 {
            let z = f64::from(i);
            worst = worst.max(rel(ml_deriv_series(1.0, m, z, &relative_ctl())?, z.exp()));
        }
    }
    Ok(worst)
}

fn trig_max_error() -> Result<f64> {
    let mut worst: f64 = 0.0;
    for i in -40..=40 {
        let x = 0.25 * f64::from(i);
        worst = worst.max((frac_cos(1.0, x, &ctl())? - x.cos()).abs());
        worst = worst.max((frac_sin(1.0, x, &ctl())? - x.sin()).abs());
    }
    Ok(worst)
}

/// Series evaluators against exponential, erfc and trigonometric oracles.
pub fn criterion_special_functions() -> CriterionReport {
    let e = std::f64::consts::E;
    let oracle = e * (1.0 + erf_simpson(1.0));
    let half = mittag_leffler(0.5, 1.0, 1.0, &ctl()).map(|v| rel(v, oracle));
    CriterionReport::new(
        "5",
        "special-function oracles",
        vec![
            Check::from_result(
                "E_{1,1}(z) vs exp(z), |z|<=20, relative",
                1e-12,
                exp_max_error(),
            ),
            Check::from_result("E_{1/2}(1) vs e*erfc(-1)", 1e-10, half),
            Check::from_result(
                "E^(m)_{1,1}(z) vs exp(z), m<=20, |z|<=20",
                1e-10,
                m_independence_error(),
            ),
            Check::from_result("cos_1, sin_1 vs cos, sin, |x|<=10", 1e-12, trig_max_error()),
        ],
    )
}

const PAIR_ALPHAS: [f64; 3] = [0.8, 0.9, 1.0];
const PAIR_S: [f64; 3] = [1.5, 2.0, 3.0];
const PAIR_A: [f64; 3] = [-1.0, -0.5, 0.5];
const QUAD_TOL: f64 = 1e-10;

fn quad(s: f64, growth: f64, z_cap: f64, singular: Option<f64>) -> QuadratureConfig {
    let cfg = QuadratureConfig {
        upper_cut: (45.0 / (s - growth)).min(z_cap),
        rel_tol: QUAD_TOL,
        ..QuadratureConfig::default()
    };
    match singular {
        Some(p) => cfg.with_singular_power(p),
        None => cfg,
    }
}

fn ml_cap(alpha: f64, a: f64) -> f64 {
    (50.0 / a.abs()).powf(1.0 / alpha)
}

fn pair_power() -> Result<f64> {
    let mut worst: f64 = 0.0;
    for alpha in PAIR_ALPHAS {
        for s in PAIR_S {
            let v = laplace_numeric(
                |x| x.powf(alpha),
                s,
                &quad(s, 0.0, f64::INFINITY, Some(alpha)),
            )?;
            worst = worst.max(rel(v, power_transform(alpha, s)?));
        }
    }
    Ok(worst)
}

fn pair_ml() -> Result<f64> {
    let mut worst: f64 = 0.0;
    for alpha in PAIR_ALPHAS {
        for s in PAIR_S {
            for a in PAIR_A {
                let f = |x: f64| {
                    mittag_leffler(alpha, 1.0, a * x.powf(alpha), &ctl()).unwrap_or(f64::NAN)
                };
                let growth = a.max(0.0).powf(1.0 / alpha);
                let v = laplace_numeric(f, s, &quad(s, growth, ml_cap(alpha, a), Some(0.0)))?;
                worst = worst.max(rel(v, ml_transform(alpha, a, s)?));
            }
        }
    }
    Ok(worst)
}

fn pair_ml_deriv() -> Result<f64> {
    let mut worst: f64 = 0.0;
    for alpha in PAIR_ALPHAS {
        for s in PAIR_S {
            for k in 0..=1u32 {
                let f = |x: f64| {
                    let z = -x.powf(alpha);
                    if k == 0 {
                        mittag_leffler(alpha, 1.0, z, &ctl()).unwrap_or(f64::NAN)
                    } else {
                        -alpha
                            * x.powf(alpha - 1.0)
                            * mittag_leffler_deriv(alpha, 1.0, 1.0, z, &ctl()).unwrap_or(f64::NAN)
                    }
                };
                let singular = if k == 0 { 0.0 } else { alpha - 1.0 };
                let v = laplace_numeric(f, s, &quad(s, 0.0, ml_cap(alpha, 1.0), Some(singular)))?;
                worst = worst.max(rel(v, ml_deriv_transform(alpha, k, s)?));
            }
        }
    }
    Ok(worst)
}

fn pair_general() -> Result<f64> {
    let mut worst: f64 = 0.0;
    for alpha in PAIR_ALPHAS {
        for beta in [alpha, 1.0] {
            for s in PAIR_S {
                for k in 0..=1u32 {
                    for a in PAIR_A {
                        let power = alpha * f64::from(k) + beta - 1.0;
                        let f = |x: f64| {
                            let e = mittag_leffler_deriv(
                                alpha,
                                beta,
                                f64::from(k),
                                a * x.powf(alpha),
                                &ctl(),
                            );
                            x.powf(power) * e.unwrap_or(f64::NAN)
                        };
                        let growth = a.max(0.0).powf(1.0 / alpha);
                        let cfg = quad(s, growth, ml_cap(alpha, a), Some(power));
                        let v = laplace_numeric(f, s, &cfg)?;
                        worst = worst.max(rel(v, ml_transform_pair(alpha, beta, k, a, s)?));
                    }
                }
            }
        }
    }
    Ok(worst)
}

fn tau_witness() -> Result<f64> {
    let delta = DEFAULT_DELTA;
    let norm = gamma_real(-delta)?;
    let mut worst: f64 = 0.0;
    for alpha in [0.7, 0.9] {
        let tau = tau_factor(alpha, delta)?;
        for s in [1.0, 2.0, 4.0] {
            let p = alpha - delta - 1.0;
            let lhs = laplace_numeric(
                |x| x.powf(p) / norm,
                s,
                &quad(s, 0.0, f64::INFINITY, Some(p)),
            )?;
            let rhs = -tau * frac_deriv_power(alpha, delta, s)?;
            worst = worst.max(rel(lhs, rhs));
        }
    }
    Ok(worst)
}

/// Closed-form transform pairs and the `τ` rule against quadrature.
pub fn criterion_laplace() -> CriterionReport {
    CriterionReport::new(
        "6",
        "Laplace pairs and tau rule",
        vec![
            Check::from_result(
                "L{x^alpha} = Gamma(1+alpha)/s^(1+alpha)",
                1e-5,
                pair_power(),
            ),
            Check::from_result("L{E_alpha(a x^alpha)}", 1e-5, pair_ml()),
            Check::from_result(
                "L{d^k/dx^k E_alpha(-x^alpha)}, k=0,1",
                1e-5,
                pair_ml_deriv(),
            ),
            Check::from_result(
                "L{x^(alpha k+beta-1) E^(k)_{alpha,beta}(a x^alpha)}",
                1e-5,
                pair_general(),
            ),
            Check::from_result(
                "tau rule witness x^alpha * x^(-delta-1)/Gamma(-delta)",
                3.0 * QUAD_TOL,
                tau_witness(),
            ),
        ],
    )
}

fn grunwald_power_error() -> Result<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let mut worst: f64 = 0.0;
    for _ in 0..30 {
        let alpha: f64 = rng.gen_range(0.5..=1.0);
        let beta: f64 = rng.gen_range((alpha - 0.9).max(0.1)..3.0);
        let x: f64 = rng.gen_range(0.5..2.0);
        let est = gl_frac_deriv(
            alpha,
            |t| t.powf(beta),
            x,
            &GlConfig::covering(x, GlConfig::DEFAULT_STEP),
        )?;
        worst = worst.max(rel(est.value, frac_deriv_power(alpha, beta, x)?));
    }
    Ok(worst)
}

fn eigenfunction_error() -> Result<f64> {
    let mut worst: f64 = 0.0;
    for alpha in [0.8, 0.9] {
        for a in [-1.0, -0.5] {
            let f =
                |t: f64| mittag_leffler(alpha, 1.0, a * t.powf(alpha), &ctl()).unwrap_or(f64::NAN);
            for x in [0.5, 1.0, 2.0] {
                let est =
                    gl_frac_deriv(alpha, f, x, &GlConfig::covering(x, GlConfig::DEFAULT_STEP))?;
                worst = worst.max(rel(est.value, a * f(x)));
            }
        }
    }
    Ok(worst)
}

/// Grünwald-Letnikov estimates against the closed-form derivative rules.
pub fn criterion_derivative_rules() -> CriterionReport {
    CriterionReport::new(
        "7",
        "fractional derivative rules",
        vec![
            Check::from_result(
                "power rule vs Grunwald, 30 random cases",
                1e-2,
                grunwald_power_error(),
            ),
            Check::from_result(
                "D^alpha E_alpha(a x^alpha) = a E_alpha(a x^alpha)",
                2e-2,
                eigenfunction_error(),
            ),
        ],
    )
}

/// Relative residual of the α = 1 radial equation at `r`.
pub fn radial_ode_residual(
    params: &ModelParams,
    sol: &SpectralSolution,
    r: f64,
    h: f64,
) -> Result<f64> {
    let f = |x: f64| radial_value(sol, x, &ctl());
    let (lo, mid, hi) = (f(r - h)?, f(r)?, f(r + h)?);
    let d2 = (hi - 2.0 * mid + lo) / (h * h);
    let d1 = (hi - lo) / (2.0 * h);
    let dim = f64::from(sol.dim);
    let ell = f64::from(sol.ell);
    let two_m = 2.0 * params.mass;
    let terms = [
        d2,
        (dim - 1.0) / r * d1,
        -ell * (ell + dim - 2.0) / (r * r) * mid,
        two_m * (sol.energy - params.coeff_c) * mid,
        -two_m * (params.coeff_a / (r * r) + params.coeff_b / r) * mid,
    ];
    let scale: f64 = terms.iter().map(|t| t.abs()).sum();
    Ok(terms.iter().sum::<f64>().abs() / scale)
}

fn ode_max_residual(params: &ModelParams) -> Result<f64> {
    let r0 = params.r0;
    let mut worst: f64 = 0.0;
    for n in [1, 2] {
        for ell in [0, 1] {
            let q = QuantumNumbers::new(n, ell, 3)?;
            let k = closed_form_kstar_alpha1(3, nu_product(1.0, &q, params.mass, params.coeff_a)?)?;
            let sol = solve_state(1.0, &q, params, k)?;
            for i in 0..=100 {
                let r = r0 * (0.3 + 2.7 * f64::from(i) / 100.0);
                worst = worst.max(radial_ode_residual(params, &sol, r, 1e-4 * r0)?);
            }
        }
    }
    Ok(worst)
}

fn transformed_max_residual(params: &ModelParams) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for n in [0, 1, 2, 3] {
        let q = QuantumNumbers::new(n, ELL, 3)?;
        let k = closed_form_kstar_alpha1(3, nu_product(1.0, &q, params.mass, params.coeff_a)?)?;
        let sol = solve_state(1.0, &q, params, k)?;
        let t = TransformedSolution::new(&sol, params.tau(1.0)?);
        let eps = sol.epsilon_alpha;
        for i in 0..=80 {
            let s = eps * (2.0 + 8.0 * f64::from(i) / 80.0);
            let h = 1e-3 * s;
            let d = (-t.zeta(s + 2.0 * h) + 8.0 * t.zeta(s + h) - 8.0 * t.zeta(s - h)
                + t.zeta(s - 2.0 * h))
                / (12.0 * h);
            let ez = t.eta(s) * t.zeta(s);
            worst = worst.max((d + ez).abs() / (d.abs() + ez.abs()));
        }
    }
    Ok(worst)
}

/// Residuals of the α = 1 radial equation and of the transformed-space equation.
pub fn criterion_ode_residuals() -> CriterionReport {
    let coulomb = ModelParams::coulomb(0.31, -4e-4);
    let kratzer = ModelParams::diatomic(1.0);
    let run = |p: &Result<ModelParams>, f: fn(&ModelParams) -> Result<f64>| match p {
        Ok(p) => f(p),
        Err(e) => Err(e.clone()),
    };
    CriterionReport::new(
        "8",
        "alpha = 1 differential-equation residuals",
        vec![
            Check::from_result(
                "radial equation, Coulomb N=3, n=1,2",
                1e-5,
                run(&coulomb, ode_max_residual),
            ),
            Check::from_result(
                "radial equation, Kratzer-Fues N=3, n=1,2",
                1e-5,
                run(&kratzer, ode_max_residual),
            ),
            Check::from_result(
                "transformed equation d zeta/ds + eta zeta = 0",
                1e-8,
                run(&kratzer, transformed_max_residual),
            ),
        ],
    )
}

/// Linear grid of `points` samples on `[lo, hi]`.
pub fn linear_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    if points < 2 {
        return vec![lo];
    }
    (0..points)
        .map(|i| lo + (hi - lo) * i as f64 / (points - 1) as f64)
        .collect()
}

fn potential_minimum_checks() -> Vec<Check> {
    let mut checks = Vec::new();
    for alpha in ALPHAS {
        let name = format!("potential minimum at r0 [alpha={alpha:.2}]");
        let result = ModelParams::diatomic(alpha).and_then(|p| {
            let grid = linear_grid(0.2 * p.r0, 5.0 * p.r0, 2001);
            let dr = grid[1] - grid[0];
            let mut best = (f64::INFINITY, 0.0);
            for &r in &grid {
                let v = potential(&p, alpha, r)?;
                if v < best.0 {
                    best = (v, r);
                }
            }
            let curvature = 2.0 * p.d0 * alpha * alpha / (p.r0 * p.r0);
            let depth_err = (best.0 + p.d0).abs();
            let at_r0 = (potential(&p, alpha, p.r0)? + p.d0).abs() / p.d0;
            let ok = (best.1 - p.r0).abs() <= dr
                && depth_err <= curvature * dr * dr
                && best.0 >= -p.d0 * (1.0 + 1e-12);
            Ok((if ok { at_r0 } else { f64::INFINITY }, best.1 / p.r0))
        });
        checks.push(match result {
            Ok((err, at)) => {
                Check::within(name, err, 1e-12).with_detail(format!("grid minimum at {at:.4} r0"))
            }
            Err(e) => Check::failed(name, &e),
        });
    }
    checks
}

fn curvature_ordering() -> Result<f64> {
    let mut prev = 0.0;
    let mut worst: f64 = 0.0;
    for alpha in ALPHAS {
        let p = ModelParams::diatomic(alpha)?;
        let h = 1e-3 * p.r0;
        let d2 = (potential(&p, alpha, p.r0 + h)? - 2.0 * potential(&p, alpha, p.r0)?
            + potential(&p, alpha, p.r0 - h)?)
            / (h * h);
        if !(d2 > prev) {
            return Ok(f64::INFINITY);
        }
        prev = d2;
        worst = worst.max(rel(d2, 2.0 * p.d0 * alpha * alpha / (p.r0 * p.r0)));
    }
    Ok(worst)
}

// r^(k+2-N) e^{-εr} 1F1(-n; 2k-N+3; 2εr) with the Kummer sum written out.
fn mie_closed_form(params: &ModelParams, q: &QuantumNumbers, r: f64) -> Result<f64> {
    let nu = nu_product(1.0, q, params.mass, params.coeff_a)?;
    let k = closed_form_kstar_alpha1(q.dim, nu)?;
    let dim = f64::from(q.dim);
    let g = 2.0 * k - dim + 3.0;
    let eps = params.mass * params.coeff_b.abs() / (f64::from(q.n) + k + 0.5 * (3.0 - dim));
    let y = 2.0 * eps * r;
    let mut poly = 0.0;
    for j in 0..=q.n {
        let binom = (0..j).fold(1.0, |acc, i| acc * f64::from(q.n - i) / f64::from(i + 1));
        let poch = (0..j).fold(1.0, |acc, i| acc * (g + f64::from(i)));
        poly += binom * (-y).powi(j as i32) / poch;
    }
    Ok(r.powf(k + 2.0 - dim) * (-eps * r).exp() * poly)
}

/// Default radial window for the eigenfunction data, in units of `r0`.
pub const FIGURE_R_RANGE: (f64, f64) = (0.01, 10.0);
pub const FIGURE_POINTS: usize = 1000;

fn figure_grid(params: &ModelParams) -> Vec<f64> {
    linear_grid(
        FIGURE_R_RANGE.0 * params.r0,
        FIGURE_R_RANGE.1 * params.r0,
        FIGURE_POINTS,
    )
}

fn table_solution(alpha: f64, n: u32, dim: u32) -> Result<(ModelParams, SpectralSolution)> {
    let row = TABLE2
        .iter()
        .find(|r| r.dim == dim && (r.alpha - alpha).abs() < 1e-9)
        .ok_or_else(|| Error::Domain(format!("no reference row for N={dim}, alpha={alpha}")))?;
    let (p, _, _, roots) = table_roots(row)?;
    let k = nearest_root(&roots, row.k_star)
        .ok_or(Error::NoRoot { k_max: 12.0 })?
        .k;
    let sol = solve_state(alpha, &QuantumNumbers::new(n, ELL, dim)?, &p, k)?;
    Ok((p, sol))
}

fn figure_alpha1(n: u32) -> Result<(f64, usize)> {
    let (p, sol) = table_solution(1.0, n, 3)?;
    let q = QuantumNumbers::new(n, ELL, 3)?;
    let grid = figure_grid(&p);
    let sample = radial_wavefunction(&sol, &grid, &ctl())?;
    let mut max_diff: f64 = 0.0;
    let mut max_ref: f64 = 0.0;
    for (&r, &v) in sample.r_values.iter().zip(&sample.radial_values) {
        let want = mie_closed_form(&p, &q, r)?;
        max_diff = max_diff.max((v - want).abs());
        max_ref = max_ref.max(want.abs());
    }
    let nodes = sample
        .radial_values
        .windows(2)
        .filter(|w| (w[0] < 0.0) != (w[1] < 0.0))
        .count();
    Ok((max_diff / max_ref, nodes))
}

fn low_alpha_smoke() -> Result<(usize, usize)> {
    let mut points = 0;
    let mut dropped = 0;
    for alpha in [0.95, 0.90, 0.85] {
        for n in [1, 2] {
            let (p, sol) = table_solution(alpha, n, 3)?;
            let s = radial_wavefunction(&sol, &figure_grid(&p), &ctl())?;
            if s.radial_values.iter().any(|v| !v.is_finite()) {
                return Err(Error::Domain(format!(
                    "non-finite sample at alpha={alpha}, n={n}"
                )));
            }
            points += s.r_values.len();
            dropped += s.dropped;
        }
    }
    Ok((points, dropped))
}

/// Potential curves and α = 1 eigenfunction data.
pub fn criterion_figure_data() -> CriterionReport {
    let mut checks = potential_minimum_checks();
    checks.push(Check::from_result(
        "curvature at r0 increases with alpha as 2 D0 alpha^2/r0^2",
        1e-4,
        curvature_ordering(),
    ));
    for n in [1, 2] {
        match figure_alpha1(n) {
            Ok((err, nodes)) => {
                checks.push(Check::within(
                    format!("alpha=1 N=3 n={n} eigenfunction vs closed form (sup-norm)"),
                    err,
                    1e-10,
                ));
                checks.push(
                    Check::within(
                        format!("alpha=1 N=3 n={n} node count"),
                        (nodes as f64 - f64::from(n)).abs(),
                        0.0,
                    )
                    .with_detail(format!("{nodes} sign changes")),
                );
            }
            Err(e) => checks.push(Check::failed(
                format!("alpha=1 N=3 n={n} eigenfunction"),
                &e,
            )),
        }
    }
    checks.push(match low_alpha_smoke() {
        Ok((pts, dropped)) => Check::within("alpha<1 N=3 eigenfunction samples finite", 0.0, 0.0)
            .with_detail(format!(
                "{pts} finite samples, {dropped} dropped by overflow guard"
            )),
        Err(e) => Check::failed("alpha<1 N=3 eigenfunction samples finite", &e),
    });
    CriterionReport::new("9", "figure data", checks)
}

fn root_certificates() -> Result<f64> {
    let mut worst: f64 = 0.0;
    for row in &TABLE2 {
        let (_, _, nu, roots) = table_roots(row)?;
        for r in &roots {
            worst = worst.max(q2(row.alpha, r.k, row.dim, nu)?.abs());
        }
    }
    Ok(worst)
}

fn alpha1_equivalence() -> Result<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    let scan = KScan {
        k_max: 20.0,
        grid_step: 1e-3,
    };
    let mut worst: f64 = 0.0;
    for dim in 3..=5 {
        for _ in 0..20 {
            let nu: f64 = rng.gen_range(0.0..50.0);
            let roots = solve_kstar(1.0, dim, nu, 1.0, &scan)?;
            let k = closed_form_kstar_alpha1(dim, nu)?;
            let d = nearest_root(&roots, k).map_or(f64::INFINITY, |r| (r.k - k).abs());
            worst = worst.max(d);
        }
    }
    Ok(worst)
}

fn quantization_identity() -> Result<f64> {
    let mut worst: f64 = 0.0;
    for row in &TABLE2 {
        for n in ENERGY_STATES {
            let (p, sol) = table_solution(row.alpha, n, row.dim)?;
            let g = gamma_real(1.0 + row.alpha)?;
            let via_eps = p.coeff_c - sol.epsilon_alpha.powi(2) / (2.0 * p.mass * g * g);
            worst = worst.max(rel(via_eps, sol.energy));
            if !(sol.energy < p.coeff_c) {
                return Ok(f64::INFINITY);
            }
        }
    }
    Ok(worst)
}

fn hydrogen_ratio() -> Result<f64> {
    let p = ModelParams::coulomb(0.31, -4e-4)?;
    let e = |n| -> Result<f64> {
        let q = QuantumNumbers::new(n, 0, 3)?;
        energy(1.0, &q, &p, closed_form_kstar_alpha1(3, 0.0)?)
    };
    Ok(rel(e(1)? / e(0)?, 0.25))
}

fn node_count_error() -> Result<f64> {
    let mut worst: f64 = 0.0;
    for n in 0..=4 {
        let (_, sol) = table_solution(1.0, n, 3)?;
        let y_max = 4.0 * (f64::from(n) + sol.gamma_alpha) + 20.0;
        let c = kummer_sign_changes(n, sol.gamma_alpha, y_max, 20_000)?;
        worst = worst.max((c as f64 - f64::from(n)).abs());
    }
    Ok(worst)
}

fn tau_reduction() -> Result<f64> {
    let mut worst: f64 = 0.0;
    for i in 0..50 {
        let delta = -0.01 - 0.98 * f64::from(i) / 49.0;
        worst = worst.max((tau_factor(1.0, delta)? - 1.0).abs());
    }
    Ok(worst)
}

fn euler_relation() -> Result<f64> {
    let mut worst: f64 = 0.0;
    for alpha in [0.8, 0.9, 1.0] {
        for i in 0..=30 {
            let x = 0.1 * f64::from(i);
            let u = x.powf(alpha);
            let (mut re, mut im) = (0.0, 0.0);
            for kappa in 0..90 {
                let t = u.powi(kappa) / gamma_real(alpha * f64::from(kappa) + 1.0)?;
                match kappa % 4 {
                    0 => re += t,
                    1 => im += t,
                    2 => re -= t,
                    _ => im -= t,
                }
            }
            worst = worst.max((re - frac_cos(alpha, x, &ctl())?).abs());
            worst = worst.max((im - frac_sin(alpha, x, &ctl())?).abs());
        }
    }
    Ok(worst)
}

fn trig_rule_coefficients() -> Result<f64> {
    let mut worst: f64 = 0.0;
    for alpha in [0.6, 0.8, 0.9, 1.0] {
        for kappa in 1..=40 {
            let p = 2.0 * alpha * f64::from(kappa);
            let applied = frac_deriv_power(alpha, p, 1.0)? / gamma_real(1.0 + p)?;
            let sine = 1.0 / gamma_real(1.0 + f64::from(2 * kappa - 1) * alpha)?;
            worst = worst.max(rel(applied, sine));
        }
    }
    Ok(worst)
}

fn product_rule_alpha1() -> Result<f64> {
    let (alpha, s) = (1.0, 2.0);
    let tau = tau_factor(alpha, DEFAULT_DELTA)?;
    let mut worst: f64 = 0.0;
    for beta in [0.5, 0.9, 1.0] {
        for p in [0.5, 1.5, 2.5] {
            let coef = gamma_ratio(1.0 + p, 1.0 + p - beta)?;
            let power = alpha + p - beta;
            let lhs = laplace_numeric(
                |x| coef * x.powf(power),
                s,
                &quad(s, 0.0, f64::INFINITY, Some(power)),
            )?;
            let big_f = gamma_real(1.0 + p)? / s.powf(p + 1.0);
            let d_big_f =
                gamma_real(1.0 + p)? * gamma_ratio(-p, -p - alpha)? * s.powf(-p - 1.0 - alpha);
            let rhs = -tau
                * (big_f * gamma_ratio(1.0 + beta, 1.0 + beta - alpha)? * s.powf(beta - alpha)
                    + s.powf(beta) * d_big_f);
            worst = worst.max(rel(lhs, rhs));
        }
    }
    Ok(worst)
}

fn grunwald_linearity() -> Result<f64> {
    let (alpha, x) = (0.7, 1.3);
    let cfg = GlConfig::covering(x, GlConfig::DEFAULT_STEP);
    let f = |t: f64| t.powf(1.4);
    let g = |t: f64| (0.5 * t).sin();
    let both = gl_frac_deriv(alpha, |t| 2.5 * f(t) - 1.5 * g(t), x, &cfg)?.value;
    let ef = gl_frac_deriv(alpha, f, x, &cfg)?.value;
    let eg = gl_frac_deriv(alpha, g, x, &cfg)?.value;
    Ok((both - (2.5 * ef - 1.5 * eg)).abs() / (2.5 * ef.abs() + 1.5 * eg.abs()))
}

/// Structural invariants of every layer.
pub fn invariants() -> CriterionReport {
    CriterionReport::new(
        "inv",
        "module invariants",
        vec![
            Check::from_result("tau(1, delta) = 1 for 50 delta", 1e-14, tau_reduction()),
            Check::from_result(
                "Euler relation E_alpha(i x^alpha) = cos_alpha + i sin_alpha",
                1e-12,
                euler_relation(),
            ),
            Check::from_result(
                "trig rule coefficient-wise, 40 terms",
                1e-12,
                trig_rule_coefficients(),
            ),
            Check::from_result("Grunwald linearity", 1e-12, grunwald_linearity()),
            Check::from_result("product rule at alpha=1", 1e-4, product_rule_alpha1()),
            Check::from_result(
                "root certificate |Q2| on all table roots",
                ROOT_CERTIFICATE,
                root_certificates(),
            ),
            Check::from_result(
                "alpha=1 scan contains closed-form k*, 60 random nu",
                1e-9,
                alpha1_equivalence(),
            ),
            Check::from_result(
                "C - eps^2/(2M Gamma(1+alpha)^2) = E, table rows",
                1e-12,
                quantization_identity(),
            ),
            Check::from_result("hydrogen E(n=1)/E(n=0) = 1/4", 1e-12, hydrogen_ratio()),
            Check::from_result("Kummer node count = n, n<=4", 0.0, node_count_error()),
        ],
    )
}

/// Every criterion followed by the invariant suite.
pub fn run_all(opts: &VerifyOptions) -> Vec<CriterionReport> {
    vec![
        criterion_table1(opts),
        criterion_table2_structure(),
        criterion_table2_energies(),
        criterion_closed_forms(),
        criterion_special_functions(),
        criterion_laplace(),
        criterion_derivative_rules(),
        criterion_ode_residuals(),
        criterion_figure_data(),
        invariants(),
    ]
}
