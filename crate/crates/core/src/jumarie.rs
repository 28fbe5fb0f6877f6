//! Jumarie (modified Riemann-Liouville) derivative of order α in (0, 1].

use crate::error::{domain, Result};
use crate::specfun::gamma_ratio;

fn check_order(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return domain(format!("fractional order {alpha} not in (0, 1]"));
    }
    Ok(())
}

/// Power rule `D^α x^β = Γ(1+β)/Γ(1+β-α) · x^(β-α)` for `x > 0`.
///
/// Constants have zero derivative, so `β = 0` returns 0.
pub fn frac_deriv_power(alpha: f64, beta: f64, x: f64) -> Result<f64> {
    check_order(alpha)?;
    if !(beta > -1.0) {
        return domain(format!("power {beta} must exceed -1"));
    }
    if !(x > 0.0) {
        return domain(format!("abscissa {x} must be positive"));
    }
    if beta == 0.0 {
        return Ok(0.0);
    }
    Ok(gamma_ratio(1.0 + beta, 1.0 + beta - alpha)? * x.powf(beta - alpha))
}

/// Grünwald-Letnikov discretisation settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GlConfig {
    pub step_h: f64,
    pub n_terms: usize,
}

impl GlConfig {
    pub const DEFAULT_STEP: f64 = 1e-3;

    /// Step `h` with enough terms to reach back to the origin from `x`.
    pub fn covering(x: f64, step_h: f64) -> GlConfig {
        let n = (x / step_h).ceil().max(0.0) as usize + 1;
        GlConfig { step_h, n_terms: n }
    }
}

/// Result of a Grünwald-Letnikov evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GlEstimate {
    pub value: f64,
    /// Set when the last retained term exceeds 1e-10 of the sum.
    pub truncated: bool,
}

/// Shifted Grünwald-Letnikov estimate of the Jumarie derivative of `f` at `x`.
///
/// Works on `f(t) - f(0)`, extended by zero for `t < 0`, with the stencil
/// centred at `x + αh`. First order in `h`.
pub fn gl_frac_deriv<F>(alpha: f64, f: F, x: f64, cfg: &GlConfig) -> Result<GlEstimate>
where
    F: Fn(f64) -> f64,
{
    check_order(alpha)?;
    if !(x > 0.0) {
        return domain(format!("abscissa {x} must be positive"));
    }
    if !(cfg.step_h > 0.0 && cfg.step_h < 1.0) || cfg.n_terms == 0 {
        return domain("step_h must lie in (0, 1) and n_terms must be positive");
    }
    let f0 = f(0.0);
    if !f0.is_finite() {
        return domain("f(0) must be finite");
    }
    let h = cfg.step_h;
    let mut w = 1.0;
    let mut sum = 0.0;
    let mut comp = 0.0;
    let mut last = 0.0;
    for i in 0..=cfg.n_terms {
        if i > 0 {
            w *= (i as f64 - 1.0 - alpha) / i as f64;
        }
        let t = x + (alpha - i as f64) * h;
        let g = if t < 0.0 { 0.0 } else { f(t) - f0 };
        last = w * g;
        let y = last - comp;
        let s = sum + y;
        comp = (s - sum) - y;
        sum = s;
    }
    Ok(GlEstimate {
        value: sum / h.powf(alpha),
        truncated: last.abs() > 1e-10 * sum.abs(),
    })
}
