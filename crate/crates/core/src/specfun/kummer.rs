use super::gamma::near_pole;
use crate::error::{Error, Result};

/// Terminating Kummer function `1F1(-n; γ; y) = Σ_j C(n,j) (-1)^j y^j / (γ)_j`.
///
/// Terms come from the ratio recurrence and are added with Kahan compensation.
pub fn hyp1f1_frac(n: u32, gamma: f64, y: f64) -> Result<f64> {
    if !gamma.is_finite() || !y.is_finite() {
        return Err(Error::Domain(format!(
            "hyp1f1 arguments must be finite ({gamma}, {y})"
        )));
    }
    let mut sum = 1.0;
    let mut comp = 0.0;
    let mut term = 1.0;
    for j in 0..n {
        let c = gamma + j as f64;
        if near_pole(c) {
            return Err(Error::Pole(c));
        }
        term *= -((n - j) as f64) * y / ((j + 1) as f64 * c);
        let t = term - comp;
        let s = sum + t;
        comp = (s - sum) - t;
        sum = s;
    }
    Ok(sum)
}
