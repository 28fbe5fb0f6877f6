//! Bound states of the fractional Mie-type potential: the indicial equation
//! `Q2 = 0`, the quantization condition, energies and radial eigenfunctions.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::laplace::{tau_factor, DEFAULT_DELTA};
use crate::specfun::{factorial_frac, gamma_ratio, hyp1f1_frac, ml_deriv_series, SeriesControl};

/// Molecular constants and potential coefficients in GeV natural units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub mass: f64,
    pub d0: f64,
    pub r0: f64,
    pub coeff_a: f64,
    pub coeff_b: f64,
    pub coeff_c: f64,
    pub delta: f64,
}

impl ModelParams {
    pub const DIATOMIC_MASS: f64 = 0.31;
    pub const DIATOMIC_D0: f64 = 2e-9;
    pub const DIATOMIC_R0: f64 = 1e5;

    /// Explicit coefficients `A`, `B`, `C`.
    pub fn new(
        mass: f64,
        d0: f64,
        r0: f64,
        coeff_a: f64,
        coeff_b: f64,
        coeff_c: f64,
        delta: f64,
    ) -> Result<Self> {
        let p = ModelParams {
            mass,
            d0,
            r0,
            coeff_a,
            coeff_b,
            coeff_c,
            delta,
        };
        p.validate()?;
        Ok(p)
    }

    /// Kratzer-Fues coefficients `A = D0 r0^(2α)`, `B = -2 D0 r0^α`, `C = 0`.
    pub fn kratzer_fues(alpha: f64, mass: f64, d0: f64, r0: f64, delta: f64) -> Result<Self> {
        check_order(alpha)?;
        let ra = r0.powf(alpha);
        ModelParams::new(mass, d0, r0, d0 * ra * ra, -2.0 * d0 * ra, 0.0, delta)
    }

    /// The diatomic molecule used for the reference tables.
    pub fn diatomic(alpha: f64) -> Result<Self> {
        ModelParams::kratzer_fues(
            alpha,
            Self::DIATOMIC_MASS,
            Self::DIATOMIC_D0,
            Self::DIATOMIC_R0,
            DEFAULT_DELTA,
        )
    }

    /// Pure Coulomb case `A = C = 0`.
    pub fn coulomb(mass: f64, coeff_b: f64) -> Result<Self> {
        ModelParams::new(
            mass,
            Self::DIATOMIC_D0,
            Self::DIATOMIC_R0,
            0.0,
            coeff_b,
            0.0,
            DEFAULT_DELTA,
        )
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [("mass", self.mass), ("D0", self.d0), ("r0", self.r0)];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return domain(format!("{name} must be positive and finite (got {v})"));
            }
        }
        if !(self.coeff_a.is_finite() && self.coeff_c.is_finite() && self.coeff_b.is_finite()) {
            return domain("potential coefficients must be finite");
        }
        if self.coeff_b == 0.0 {
            return domain("coefficient B must be non-zero");
        }
        if !(self.delta > -1.0 && self.delta < 0.0) {
            return domain(format!("branch parameter {} not in (-1, 0)", self.delta));
        }
        Ok(())
    }

    pub fn tau(&self, alpha: f64) -> Result<f64> {
        tau_factor(alpha, self.delta)
    }
}

/// Radial index `n`, orbital number `ℓ` and dimension `N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuantumNumbers {
    pub n: u32,
    pub ell: u32,
    pub dim: u32,
}

impl QuantumNumbers {
    pub fn new(n: u32, ell: u32, dim: u32) -> Result<Self> {
        if dim < 2 {
            return domain(format!("dimension {dim} must be at least 2"));
        }
        Ok(QuantumNumbers { n, ell, dim })
    }
}

fn check_order(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return domain(format!("fractional order {alpha} not in (0, 1]"));
    }
    Ok(())
}

/// `V(r) = A r^(-2α) + B r^(-α) + C`.
pub fn potential(params: &ModelParams, alpha: f64, r: f64) -> Result<f64> {
    if !(r > 0.0) {
        return domain(format!("radius {r} must be positive"));
    }
    let ra = r.powf(-alpha);
    Ok(params.coeff_a * ra * ra + params.coeff_b * ra + params.coeff_c)
}

/// `ν(ν+1) = ℓ(ℓ+N-2) Γ(1+α)² + 2M Γ(1+α)² A`.
pub fn nu_product(alpha: f64, q: &QuantumNumbers, mass: f64, coeff_a: f64) -> Result<f64> {
    let g = factorial_frac(alpha)?;
    let ell = f64::from(q.ell);
    let dim = f64::from(q.dim);
    Ok(g * g * (ell * (ell + dim - 2.0) + 2.0 * mass * coeff_a))
}

fn dim_ratio(alpha: f64, dim: u32) -> Result<f64> {
    let dim = f64::from(dim);
    gamma_ratio(1.0 + alpha * (dim - 1.0), 1.0 + alpha * (dim - 2.0))
}

/// `Q1 = 2Γ(1-αk)/Γ(1-αk-α) + Γ(1+α(N-1))/Γ(1+α(N-2))`.
pub fn q1(alpha: f64, k: f64, dim: u32) -> Result<f64> {
    check_order(alpha)?;
    let x = 1.0 - alpha * k;
    Ok(2.0 * gamma_ratio(x, x - alpha)? + dim_ratio(alpha, dim)?)
}

/// `Q2 = Γ(1-αk)/Γ(1-αk-α) [Γ(1-αk-α)/Γ(1-αk-2α) + Γ(1+α(N-1))/Γ(1+α(N-2))] - ν(ν+1)`.
///
/// The product of the first two ratios is taken as the single ratio
/// `Γ(1-αk)/Γ(1-αk-2α)`, which stays finite through the pole of `Γ(1-αk-α)`.
pub fn q2(alpha: f64, k: f64, dim: u32, nu_prod: f64) -> Result<f64> {
    check_order(alpha)?;
    let x = 1.0 - alpha * k;
    let outer = gamma_ratio(x, x - 2.0 * alpha)?;
    let inner = gamma_ratio(x, x - alpha)?;
    Ok(outer + inner * dim_ratio(alpha, dim)? - nu_prod)
}

/// Grid and range for the `k*` scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KScan {
    pub k_max: f64,
    pub grid_step: f64,
}

impl Default for KScan {
    fn default() -> Self {
        KScan {
            k_max: 12.0,
            grid_step: 1e-3,
        }
    }
}

/// Root of `Q2 = 0` with its branch diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KRoot {
    pub k: f64,
    pub q1: f64,
    pub gamma_alpha: f64,
    /// Small-r power of the radial function, `α(γ_α - k) - 1`.
    pub growth_exponent: f64,
}

/// Largest `|Q2|` accepted at a refined root.
pub const ROOT_CERTIFICATE: f64 = 1e-10;

fn refine(f: &dyn Fn(f64) -> Result<f64>, mut a: f64, mut b: f64, mut fa: f64) -> Option<f64> {
    let mut fb = f(b).ok()?;
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let fm = f(mid).ok()?;
        if fm == 0.0 {
            return Some(mid);
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
            fb = fm;
        }
    }
    let (k, fk) = if fa.abs() <= fb.abs() {
        (a, fa)
    } else {
        (b, fb)
    };
    (fk.abs() < ROOT_CERTIFICATE).then_some(k)
}

/// All roots of `Q2(α, k, N, ν) = 0` on `(grid_step, k_max]`, ascending.
///
/// Sign changes across a pole fail the `|Q2|` certificate after bisection and
/// are dropped.
pub fn solve_kstar(
    alpha: f64,
    dim: u32,
    nu_prod: f64,
    tau: f64,
    scan: &KScan,
) -> Result<Vec<KRoot>> {
    check_order(alpha)?;
    if !(scan.k_max > 0.0 && scan.grid_step > 0.0) || scan.grid_step >= scan.k_max {
        return domain("scan needs 0 < grid_step < k_max");
    }
    let f = |k: f64| q2(alpha, k, dim, nu_prod);
    let steps = (scan.k_max / scan.grid_step + 1e-9).floor() as usize;
    let mut ks = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    for i in 1..=steps {
        let k = i as f64 * scan.grid_step;
        let Ok(v) = f(k) else {
            prev = None;
            continue;
        };
        if v == 0.0 {
            ks.push(k);
        } else if let Some((pk, pv)) = prev {
            if (pv < 0.0) != (v < 0.0) && pv != 0.0 {
                if let Some(root) = refine(&f, pk, k, pv) {
                    ks.push(root);
                }
            }
        }
        prev = Some((k, v));
    }
    if ks.is_empty() {
        return Err(Error::NoRoot { k_max: scan.k_max });
    }
    ks.iter().map(|&k| annotate(alpha, k, dim, tau)).collect()
}

fn annotate(alpha: f64, k: f64, dim: u32, tau: f64) -> Result<KRoot> {
    let (q1v, g) = match q1(alpha, k, dim) {
        Ok(q) => (q, gamma_alpha(alpha, q, tau)?),
        Err(_) => (f64::NAN, f64::NAN),
    };
    Ok(KRoot {
        k,
        q1: q1v,
        gamma_alpha: g,
        growth_exponent: alpha * (g - k) - 1.0,
    })
}

/// Index of the default branch.
///
/// Among roots with finite positive `γ_α` whose radial function vanishes at the
/// origin (positive growth exponent), picks the smallest exponent. Falls back to
/// the smallest exponent over all finite `γ_α` when none vanishes.
pub fn select_branch(roots: &[KRoot]) -> Option<usize> {
    let best = |pred: &dyn Fn(&KRoot) -> bool| {
        roots
            .iter()
            .enumerate()
            .filter(|(_, r)| r.gamma_alpha.is_finite() && pred(r))
            .min_by(|a, b| a.1.growth_exponent.total_cmp(&b.1.growth_exponent))
            .map(|(i, _)| i)
    };
    best(&|r| r.gamma_alpha > 0.0 && r.growth_exponent > 0.0).or_else(|| best(&|_| true))
}

/// Positive root of `k² + (2-N)k - ν = 0`.
pub fn closed_form_kstar_alpha1(dim: u32, nu_prod: f64) -> Result<f64> {
    if !(nu_prod >= 0.0) {
        return domain(format!("nu product {nu_prod} must be non-negative"));
    }
    let a = f64::from(dim) - 2.0;
    Ok(0.5 * (a + (a * a + 4.0 * nu_prod).sqrt()))
}

/// `γ_α = Γ(1+2α)/Γ(1+α) - Q1/τ`.
pub fn gamma_alpha(alpha: f64, q1_val: f64, tau: f64) -> Result<f64> {
    if tau == 0.0 {
        return Err(Error::DivisionByZero("tau".into()));
    }
    Ok(gamma_ratio(1.0 + 2.0 * alpha, 1.0 + alpha)? - q1_val / tau)
}

/// `β_α = -2M Γ(1+α)² B`.
pub fn beta_alpha(alpha: f64, mass: f64, coeff_b: f64) -> Result<f64> {
    let g = factorial_frac(alpha)?;
    Ok(-2.0 * mass * g * g * coeff_b)
}

/// `ε_α = β_α / (τ (2n + γ_α))` from the quantization condition.
pub fn epsilon_from_quantization(n: u32, gamma_a: f64, beta_a: f64, tau: f64) -> Result<f64> {
    if !(beta_a > 0.0) || !(tau > 0.0) {
        return domain(format!("beta ({beta_a}) and tau ({tau}) must be positive"));
    }
    let den = 2.0 * f64::from(n) + gamma_a;
    if !(den > 0.0) {
        return domain(format!("2n + gamma = {den} admits no bound state"));
    }
    Ok(beta_a / (tau * den))
}

/// `E = C - M Γ(1+α)²/(2τ²) [B / (n + Γ(1+2α)/(2Γ(1+α)) - Q1/(2τ))]²` in GeV.
pub fn energy(alpha: f64, q: &QuantumNumbers, params: &ModelParams, k_star: f64) -> Result<f64> {
    let tau = params.tau(alpha)?;
    let g = factorial_frac(alpha)?;
    let q1v = q1(alpha, k_star, q.dim)?;
    let den =
        f64::from(q.n) + 0.5 * gamma_ratio(1.0 + 2.0 * alpha, 1.0 + alpha)? - q1v / (2.0 * tau);
    if den == 0.0 || !den.is_finite() {
        return Err(Error::DivisionByZero("energy denominator".into()));
    }
    let b = params.coeff_b / den;
    Ok(params.coeff_c - params.mass * g * g / (2.0 * tau * tau) * b * b)
}

/// One solved state: a row of the spectral table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralSolution {
    pub alpha: f64,
    pub dim: u32,
    pub n: u32,
    pub ell: u32,
    pub k_star: f64,
    pub q1: f64,
    pub gamma_alpha: f64,
    pub beta_alpha: f64,
    pub epsilon_alpha: f64,
    pub energy: f64,
    pub nu_product: f64,
}

impl SpectralSolution {
    /// `Q2` at the stored root.
    pub fn q2_residual(&self) -> Result<f64> {
        q2(self.alpha, self.k_star, self.dim, self.nu_product)
    }
}

/// Full state for a chosen root `k*`.
pub fn solve_state(
    alpha: f64,
    q: &QuantumNumbers,
    params: &ModelParams,
    k_star: f64,
) -> Result<SpectralSolution> {
    params.validate()?;
    let tau = params.tau(alpha)?;
    let nu = nu_product(alpha, q, params.mass, params.coeff_a)?;
    let q1v = q1(alpha, k_star, q.dim)?;
    let g = gamma_alpha(alpha, q1v, tau)?;
    let beta = beta_alpha(alpha, params.mass, params.coeff_b)?;
    let eps = epsilon_from_quantization(q.n, g, beta, tau)?;
    Ok(SpectralSolution {
        alpha,
        dim: q.dim,
        n: q.n,
        ell: q.ell,
        k_star,
        q1: q1v,
        gamma_alpha: g,
        beta_alpha: beta,
        epsilon_alpha: eps,
        energy: energy(alpha, q, params, k_star)?,
        nu_product: nu,
    })
}

/// Unnormalized radial samples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialSample {
    pub r_values: Vec<f64>,
    #[serde(rename = "R_values")]
    pub radial_values: Vec<f64>,
    pub normalized: bool,
    /// Grid points skipped because |R| exceeded the overflow guard.
    pub dropped: usize,
}

/// Largest |R| kept in a sample.
pub const OVERFLOW_GUARD: f64 = 1e300;

/// `R(r) = r^(α(γ-k*)-1) E^(γ-1)_α(-ε r^α) 1F1(-n; γ; 2ε r^α)` with unit normalization.
pub fn radial_value(sol: &SpectralSolution, r: f64, ctrl: &SeriesControl) -> Result<f64> {
    if !(r > 0.0) || !r.is_finite() {
        return domain(format!("radius {r} must be positive and finite"));
    }
    let alpha = sol.alpha;
    let g = sol.gamma_alpha;
    let ra = r.powf(alpha);
    let ml = ml_deriv_series(alpha, g - 1.0, -sol.epsilon_alpha * ra, ctrl)?;
    let hy = hyp1f1_frac(sol.n, g, 2.0 * sol.epsilon_alpha * ra)?;
    if ml == 0.0 || hy == 0.0 {
        return Ok(0.0);
    }
    let ln_mag = (alpha * (g - sol.k_star) - 1.0) * r.ln() + ml.abs().ln() + hy.abs().ln();
    if !(ln_mag < OVERFLOW_GUARD.ln()) {
        return Err(Error::Overflow(r));
    }
    Ok(ln_mag.exp() * ml.signum() * hy.signum())
}

/// Samples of [`radial_value`] on an increasing grid, dropping overflowed points.
pub fn radial_wavefunction(
    sol: &SpectralSolution,
    r_grid: &[f64],
    ctrl: &SeriesControl,
) -> Result<RadialSample> {
    if r_grid.windows(2).any(|w| !(w[0] < w[1])) {
        return domain("radial grid must be strictly increasing");
    }
    let mut out = RadialSample {
        r_values: Vec::new(),
        radial_values: Vec::new(),
        normalized: false,
        dropped: 0,
    };
    for &r in r_grid {
        match radial_value(sol, r, ctrl) {
            Ok(v) => {
                out.r_values.push(r);
                out.radial_values.push(v);
            }
            Err(Error::Overflow(_)) => out.dropped += 1,
            Err(e) => return Err(e),
        }
    }
    if out.r_values.is_empty() && !r_grid.is_empty() {
        return Err(Error::Overflow(r_grid[0]));
    }
    Ok(out)
}

/// Sign changes of `1F1(-n; γ; y)` on `(0, y_max]` sampled on `samples` points.
pub fn kummer_sign_changes(n: u32, gamma: f64, y_max: f64, samples: usize) -> Result<usize> {
    let mut count = 0;
    let mut prev = hyp1f1_frac(n, gamma, 0.0)?;
    for i in 1..=samples {
        let v = hyp1f1_frac(n, gamma, y_max * i as f64 / samples as f64)?;
        if v != 0.0 {
            if (v < 0.0) != (prev < 0.0) {
                count += 1;
            }
            prev = v;
        }
    }
    Ok(count)
}

/// The transformed-space solution `ζ(s)` and its coefficient `η(s)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformedSolution {
    pub alpha: f64,
    pub epsilon: f64,
    pub gamma_alpha: f64,
    pub lambda1: f64,
    pub lambda2: f64,
}

impl TransformedSolution {
    pub fn new(sol: &SpectralSolution, tau: f64) -> Self {
        let ratio = sol.beta_alpha / (tau * sol.epsilon_alpha);
        TransformedSolution {
            alpha: sol.alpha,
            epsilon: sol.epsilon_alpha,
            gamma_alpha: sol.gamma_alpha,
            lambda1: 0.5 * (sol.gamma_alpha + ratio),
            lambda2: 0.5 * (sol.gamma_alpha - ratio),
        }
    }

    /// `ζ(s) = (s^α + ε)^(-γ) ((s^α - ε)/(s^α + ε))^(-λ2)`.
    pub fn zeta(&self, s: f64) -> f64 {
        let sa = s.powf(self.alpha);
        let (p, m) = (sa + self.epsilon, sa - self.epsilon);
        p.powf(-self.gamma_alpha) * (m / p).powf(-self.lambda2)
    }

    /// `η(s) = λ1/(s^α + ε) + λ2/(s^α - ε)`.
    pub fn eta(&self, s: f64) -> f64 {
        let sa = s.powf(self.alpha);
        self.lambda1 / (sa + self.epsilon) + self.lambda2 / (sa - self.epsilon)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn q(n: u32, ell: u32, dim: u32) -> QuantumNumbers {
        QuantumNumbers::new(n, ell, dim).unwrap()
    }

    #[test]
    fn potential_minimum() {
        for alpha in [0.7, 0.85, 1.0] {
            let p = ModelParams::diatomic(alpha).unwrap();
            assert_relative_eq!(
                potential(&p, alpha, p.r0).unwrap(),
                -p.d0,
                max_relative = 1e-12
            );
            assert_relative_eq!(
                potential(&p, alpha, 1.0).unwrap(),
                p.coeff_a + p.coeff_b + p.coeff_c,
                max_relative = 1e-15
            );
        }
        let p = ModelParams::diatomic(1.0).unwrap();
        assert!(potential(&p, 1.0, 0.0).is_err());
    }

    #[test]
    fn nu_values() {
        assert_relative_eq!(
            nu_product(1.0, &q(0, 1, 3), 0.31, 20.0).unwrap(),
            14.4,
            max_relative = 1e-15
        );
        assert_eq!(nu_product(1.0, &q(0, 2, 5), 0.31, 0.0).unwrap(), 10.0);
        assert_relative_eq!(
            nu_product(0.5, &q(0, 0, 3), 1.0, 1.0).unwrap(),
            std::f64::consts::FRAC_PI_2,
            max_relative = 1e-14
        );
    }

    #[test]
    fn q_reductions_at_alpha_one() {
        for k in [0.4, 1.0, 2.0, 4.327_531, 7.9] {
            for dim in 2..=7u32 {
                let n = f64::from(dim);
                assert_relative_eq!(
                    q1(1.0, k, dim).unwrap(),
                    -2.0 * k + n - 1.0,
                    epsilon = 1e-12
                );
                let nu = 3.3;
                assert_relative_eq!(
                    q2(1.0, k, dim, nu).unwrap(),
                    k * k + (2.0 - n) * k - nu,
                    epsilon = 1e-11
                );
            }
        }
        assert!((q1(1.0, 4.327531, 3).unwrap() + 6.6551).abs() < 1e-4);
        assert!((q1(0.9, 2.030419, 3).unwrap() + 3.1805).abs() < 1e-4);
    }

    #[test]
    fn table_row_root() {
        let tau = 1.0;
        let roots = solve_kstar(1.0, 3, 14.4, tau, &KScan::default()).unwrap();
        assert_eq!(roots.len(), 1);
        assert_relative_eq!(roots[0].k, 4.327_531_841_800_927_5, max_relative = 1e-14);
        assert_relative_eq!(
            closed_form_kstar_alpha1(3, 14.4).unwrap(),
            roots[0].k,
            max_relative = 1e-15
        );
        assert_eq!(closed_form_kstar_alpha1(4, 0.0).unwrap(), 2.0);
        assert!(q2(1.0, 4.327531, 3, 14.4).unwrap().abs() < 1e-5);
    }

    #[test]
    fn fractional_row_root() {
        let alpha = 0.95;
        let p = ModelParams::diatomic(alpha).unwrap();
        let nu = nu_product(alpha, &q(0, 1, 3), p.mass, p.coeff_a).unwrap();
        let roots = solve_kstar(alpha, 3, nu, p.tau(alpha).unwrap(), &KScan::default()).unwrap();
        assert!(roots.iter().any(|r| (r.k - 5.452018).abs() < 1e-4));
        for r in &roots {
            assert!(q2(alpha, r.k, 3, nu).unwrap().abs() < ROOT_CERTIFICATE);
        }
        assert!(roots.windows(2).all(|w| w[0].k < w[1].k));
    }

    #[test]
    fn no_root() {
        let r = solve_kstar(1.0, 3, 500.0, 1.0, &KScan::default());
        assert!(matches!(r, Err(Error::NoRoot { .. })));
    }

    #[test]
    fn gamma_and_epsilon() {
        assert_relative_eq!(
            gamma_alpha(1.0, -6.6551, 1.0).unwrap(),
            8.6551,
            max_relative = 1e-14
        );
        assert_eq!(gamma_alpha(1.0, 0.0, 1.0).unwrap(), 2.0);
        assert!((gamma_alpha(0.9, -3.1805, 1.0515).unwrap() - 4.7679).abs() < 2e-3);
        assert_relative_eq!(
            epsilon_from_quantization(1, 8.6551, 2.48e-4, 1.0).unwrap(),
            2.48e-4 / 10.6551,
            max_relative = 1e-15
        );
        assert!(matches!(
            epsilon_from_quantization(0, -1.0, 1e-4, 1.0),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn coulomb_energy() {
        let p = ModelParams::coulomb(0.31, -4e-4).unwrap();
        for (n, ell) in [(0, 0), (1, 0), (2, 1)] {
            let qn = q(n, ell, 3);
            let k =
                closed_form_kstar_alpha1(3, nu_product(1.0, &qn, p.mass, 0.0).unwrap()).unwrap();
            let e = energy(1.0, &qn, &p, k).unwrap();
            let pn = f64::from(n + ell + 1);
            assert_relative_eq!(e, -0.5 * 0.31 * (4e-4 / pn).powi(2), max_relative = 1e-13);
        }
    }

    #[test]
    fn coulomb_wavefunction() {
        let p = ModelParams::coulomb(0.31, -4e-4).unwrap();
        let qn = q(1, 1, 3);
        let k = closed_form_kstar_alpha1(3, 2.0).unwrap();
        let sol = solve_state(1.0, &qn, &p, k).unwrap();
        let ctl = SeriesControl::default();
        let eps = sol.epsilon_alpha;
        for r in [1e3, 2e4, 1e5, 3e5] {
            let want = r * (-eps * r).exp() * (1.0 - 2.0 * eps * r / 4.0);
            assert_relative_eq!(
                radial_value(&sol, r, &ctl).unwrap(),
                want,
                max_relative = 1e-11
            );
        }
    }

    #[test]
    fn overflow_is_dropped() {
        let p = ModelParams::diatomic(1.0).unwrap();
        let mut sol = solve_state(1.0, &q(0, 1, 3), &p, 4.327_531_841_800_927_5).unwrap();
        sol.k_star = -400.0;
        let ctl = SeriesControl::default();
        let sample = radial_wavefunction(&sol, &[1e-3, 1e3, 1e5], &ctl).unwrap();
        assert_eq!(sample.dropped, 2);
        assert_eq!(sample.r_values, vec![1e-3]);
        assert!(radial_wavefunction(&sol, &[2.0, 1.0], &ctl).is_err());
    }

    #[test]
    fn node_counts() {
        for n in 0..=4 {
            assert_eq!(
                kummer_sign_changes(n, 8.6551, 80.0, 20_000).unwrap(),
                n as usize
            );
        }
    }

    #[test]
    fn branch_selector_prefers_vanishing_origin() {
        let roots = [
            KRoot {
                k: 1.0,
                q1: 0.0,
                gamma_alpha: 1.5,
                growth_exponent: -0.5,
            },
            KRoot {
                k: 2.0,
                q1: 0.0,
                gamma_alpha: 6.0,
                growth_exponent: 3.0,
            },
            KRoot {
                k: 3.0,
                q1: 0.0,
                gamma_alpha: 5.0,
                growth_exponent: 1.0,
            },
            KRoot {
                k: 4.0,
                q1: 0.0,
                gamma_alpha: f64::NAN,
                growth_exponent: f64::NAN,
            },
        ];
        assert_eq!(select_branch(&roots), Some(2));
        assert_eq!(select_branch(&roots[..1]), Some(0));
        assert_eq!(select_branch(&roots[3..]), None);
    }

    #[test]
    fn invalid_params() {
        assert!(ModelParams::new(0.31, 2e-9, 1e5, 1.0, 0.0, 0.0, -0.5).is_err());
        assert!(ModelParams::new(-1.0, 2e-9, 1e5, 1.0, -1.0, 0.0, -0.5).is_err());
        assert!(ModelParams::new(0.31, 2e-9, 1e5, 1.0, -1.0, 0.0, 0.0).is_err());
        assert!(QuantumNumbers::new(0, 0, 1).is_err());
    }

    proptest! {
        #[test]
        fn closed_form_is_in_root_set(dim in 3u32..=5, nu in 0.0f64..50.0) {
            let roots = solve_kstar(1.0, dim, nu, 1.0, &KScan { k_max: 20.0, grid_step: 1e-3 }).unwrap();
            let k = closed_form_kstar_alpha1(dim, nu).unwrap();
            prop_assert!(roots.iter().any(|r| (r.k - k).abs() < 1e-9));
        }

        #[test]
        fn energy_matches_quantization(alpha in 0.7f64..=1.0, n in 0u32..4, dim in 3u32..=5) {
            let p = ModelParams::diatomic(alpha).unwrap();
            let qn = q(n, 1, dim);
            let nu = nu_product(alpha, &qn, p.mass, p.coeff_a).unwrap();
            let tau = p.tau(alpha).unwrap();
            let roots = solve_kstar(alpha, dim, nu, tau, &KScan::default()).unwrap();
            for r in roots.iter().filter(|r| r.gamma_alpha + 2.0 * f64::from(n) > 0.0) {
                let sol = solve_state(alpha, &qn, &p, r.k).unwrap();
                let g = factorial_frac(alpha).unwrap();
                let via_eps = p.coeff_c - sol.epsilon_alpha.powi(2) / (2.0 * p.mass * g * g);
                prop_assert!((via_eps - sol.energy).abs() <= 1e-12 * sol.energy.abs());
                prop_assert!(sol.energy < p.coeff_c);
            }
        }
    }
}
