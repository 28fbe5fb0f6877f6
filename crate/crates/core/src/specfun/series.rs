use serde::{Deserialize, Serialize};

use super::dd::Dd;
use super::gamma::{gamma_ratio, gamma_real};
use crate::error::{domain, Error, Result};

/// Largest |z| accepted by the power-series evaluators.
pub const Z_MAX: f64 = 50.0;

/// Truncation control for the power series.
///
/// Summation stops once three consecutive terms fall below
/// `abs_tol + rel_tol * |partial sum|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesControl {
    pub max_terms: usize,
    pub abs_tol: f64,
    pub rel_tol: f64,
}

impl Default for SeriesControl {
    fn default() -> Self {
        SeriesControl {
            max_terms: 500,
            abs_tol: 1e-16,
            rel_tol: 1e-14,
        }
    }
}

impl SeriesControl {
    pub fn validate(&self) -> Result<()> {
        if self.max_terms == 0 {
            return domain("max_terms must be positive");
        }
        if !(self.abs_tol >= 0.0 && self.rel_tol >= 0.0) || self.abs_tol + self.rel_tol <= 0.0 {
            return domain("series tolerances must be non-negative and not both zero");
        }
        Ok(())
    }
}

/// Arguments of the two-parameter Mittag-Leffler function `E_{α,β}(z)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MLParams {
    pub alpha: f64,
    pub beta: f64,
    pub z: f64,
}

impl MLParams {
    pub fn evaluate(&self, ctrl: &SeriesControl) -> Result<f64> {
        mittag_leffler(self.alpha, self.beta, self.z, ctrl)
    }
}

// Γ(x) / Γ(x + d), exact in double-double when d is a small integer.
fn step_ratio(x: f64, d: f64) -> Result<Dd> {
    if d.fract() == 0.0 && (1.0..=16.0).contains(&d) {
        let mut prod = Dd::ONE;
        for i in 0..d as usize {
            let f = Dd::new(x) + i as f64;
            if f.hi == 0.0 {
                return Err(Error::Pole(x));
            }
            prod = prod * f;
        }
        return Ok(Dd::ONE / prod);
    }
    Ok(Dd::new(gamma_ratio(x, x + d)?))
}

fn sum_terms<F>(first: Dd, ctrl: &SeriesControl, mut next: F) -> Result<f64>
where
    F: FnMut(usize, Dd) -> Result<Dd>,
{
    ctrl.validate()?;
    let mut sum = first;
    let mut term = first;
    let mut quiet = 0;
    for k in 0..ctrl.max_terms {
        term = next(k, term)?;
        if !term.is_finite() {
            return Err(Error::Convergence {
                terms: k + 1,
                last_term: term.hi,
            });
        }
        sum = sum + term;
        let t = term.hi.abs();
        if t == 0.0 || t < ctrl.abs_tol + ctrl.rel_tol * sum.hi.abs() {
            quiet += 1;
            if quiet == 3 {
                return Ok(sum.to_f64());
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::Convergence {
        terms: ctrl.max_terms,
        last_term: term.hi,
    })
}

fn check_argument(z: f64) -> Result<()> {
    if !z.is_finite() || z.abs() > Z_MAX {
        return domain(format!("series argument {z} outside [-{Z_MAX}, {Z_MAX}]"));
    }
    Ok(())
}

/// `E_{α,β}(z) = Σ z^k / Γ(αk + β)`.
pub fn mittag_leffler(alpha: f64, beta: f64, z: f64, ctrl: &SeriesControl) -> Result<f64> {
    if !(alpha > 0.0 && beta > 0.0) {
        return domain(format!(
            "Mittag-Leffler needs alpha > 0, beta > 0 (got {alpha}, {beta})"
        ));
    }
    check_argument(z)?;
    let first = Dd::new(1.0 / gamma_real(beta)?);
    let zd = Dd::new(z);
    sum_terms(first, ctrl, |k, t| {
        Ok(t * zd * step_ratio(alpha * k as f64 + beta, alpha)?)
    })
}

/// Derivative of order `m` of the Mittag-Leffler series,
/// `Σ_p Γ(p+m+1)/Γ(p+1) · z^p / Γ(α(p+m) + β)`.
///
/// For integer `m` this is `d^m/dz^m E_{α,β}(z)`; real `m > -1` continues it.
pub fn mittag_leffler_deriv(
    alpha: f64,
    beta: f64,
    m: f64,
    z: f64,
    ctrl: &SeriesControl,
) -> Result<f64> {
    if !(alpha > 0.0 && beta > 0.0) {
        return domain(format!(
            "Mittag-Leffler needs alpha > 0, beta > 0 (got {alpha}, {beta})"
        ));
    }
    if !(m > -1.0) || !m.is_finite() {
        return domain(format!("derivative order {m} must exceed -1"));
    }
    check_argument(z)?;
    let first = Dd::new(gamma_ratio(m + 1.0, alpha * m + beta)?);
    let zd = Dd::new(z);
    sum_terms(first, ctrl, |p, t| {
        let pm = p as f64 + m;
        let up = Dd::new(pm + 1.0) / Dd::new(p as f64 + 1.0);
        Ok(t * zd * up * step_ratio(alpha * pm + beta, alpha)?)
    })
}

/// `E^{(m)}_{α,α}(z)`, the series that carries the radial wavefunction.
pub fn ml_deriv_series(alpha: f64, m: f64, z: f64, ctrl: &SeriesControl) -> Result<f64> {
    mittag_leffler_deriv(alpha, alpha, m, z, ctrl)
}

fn frac_power(alpha: f64, x: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return domain(format!("fractional order {alpha} not in (0, 1]"));
    }
    let u = x.signum() * x.abs().powf(alpha);
    check_argument(u)?;
    Ok(u)
}

/// Fractional cosine `Σ (-1)^k x^{2αk} / Γ(1 + 2αk)`.
///
/// Negative `x` uses `sign(x)·|x|^α` as the power.
pub fn frac_cos(alpha: f64, x: f64, ctrl: &SeriesControl) -> Result<f64> {
    let u = frac_power(alpha, x)?;
    let w = -(Dd::new(u) * Dd::new(u));
    sum_terms(Dd::ONE, ctrl, |k, t| {
        Ok(t * w * step_ratio(1.0 + 2.0 * alpha * k as f64, 2.0 * alpha)?)
    })
}

/// Fractional sine `Σ (-1)^k x^{(2k+1)α} / Γ(1 + (2k+1)α)`.
pub fn frac_sin(alpha: f64, x: f64, ctrl: &SeriesControl) -> Result<f64> {
    let u = frac_power(alpha, x)?;
    let w = -(Dd::new(u) * Dd::new(u));
    let first = Dd::new(u) / Dd::new(gamma_real(1.0 + alpha)?);
    sum_terms(first, ctrl, |k, t| {
        Ok(t * w * step_ratio(1.0 + (2 * k + 1) as f64 * alpha, 2.0 * alpha)?)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn ctl() -> SeriesControl {
        SeriesControl::default()
    }

    #[test]
    fn frozen_mittag_leffler() {
        let cases = [
            (0.5, 1.0, 1.0, 5.008_980_080_762_283),
            (0.9, 1.0, -1.0, 0.376_066_021_424_641_9),
            (0.8, 0.7, 2.5, 40.908_395_223_949_25),
            (0.6, 1.0, -3.0, 0.159_703_480_265_091_2),
        ];
        for (a, b, z, want) in cases {
            assert_relative_eq!(
                mittag_leffler(a, b, z, &ctl()).unwrap(),
                want,
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn exponential_limit() {
        for z in [-20.0, -7.5, -1.0, 0.0, 0.3, 4.0, 12.0] {
            let e = mittag_leffler(1.0, 1.0, z, &ctl()).unwrap();
            assert_relative_eq!(e, f64::exp(z), max_relative = 1e-12);
        }
    }

    #[test]
    fn derivative_of_exponential_is_exponential() {
        for m in [0.0, 1.0, 3.7, 7.655] {
            let v = ml_deriv_series(1.0, m, -12.0, &ctl()).unwrap();
            assert_relative_eq!(v, f64::exp(-12.0), max_relative = 1e-12);
        }
    }

    #[test]
    fn frozen_derivative() {
        let v = ml_deriv_series(0.9, 2.5, -1.5, &ctl()).unwrap();
        assert_relative_eq!(v, 0.226_223_625_109_679_27, max_relative = 1e-12);
    }

    #[test]
    fn integer_derivative_matches_difference() {
        let h = 1e-4;
        let (a, b, z) = (0.8, 1.2, 0.7);
        let fd = (mittag_leffler(a, b, z + h, &ctl()).unwrap()
            - mittag_leffler(a, b, z - h, &ctl()).unwrap())
            / (2.0 * h);
        let d1 = mittag_leffler_deriv(a, b, 1.0, z, &ctl()).unwrap();
        assert_relative_eq!(d1, fd, max_relative = 1e-7);
    }

    #[test]
    fn frozen_trig() {
        assert_relative_eq!(
            frac_cos(0.8, 2.0, &ctl()).unwrap(),
            -0.212_117_000_971_284_83,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            frac_sin(0.8, 2.0, &ctl()).unwrap(),
            0.642_548_483_893_211_1,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            frac_cos(1.0, std::f64::consts::PI, &ctl()).unwrap(),
            -1.0,
            max_relative = 1e-14
        );
    }

    #[test]
    fn argument_limits() {
        assert!(matches!(
            mittag_leffler(0.5, 1.0, 60.0, &ctl()),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            mittag_leffler(0.0, 1.0, 1.0, &ctl()),
            Err(Error::Domain(_))
        ));
        assert!(matches!(frac_cos(1.2, 1.0, &ctl()), Err(Error::Domain(_))));
        let tight = SeriesControl {
            max_terms: 5,
            ..ctl()
        };
        assert!(matches!(
            mittag_leffler(0.5, 1.0, 3.0, &tight),
            Err(Error::Convergence { .. })
        ));
    }
}
