//! Special functions: gamma, Mittag-Leffler series, fractional trigonometric
//! functions and the terminating Kummer polynomial.

mod dd;
mod gamma;
mod kummer;
mod series;

pub use gamma::{
    cos_pi, factorial_frac, gamma_ratio, gamma_real, ln_gamma_signed, near_pole, sin_pi, POLE_GUARD,
};
pub use kummer::hyp1f1_frac;
pub use series::{
    frac_cos, frac_sin, mittag_leffler, mittag_leffler_deriv, ml_deriv_series, MLParams,
    SeriesControl, Z_MAX,
};
