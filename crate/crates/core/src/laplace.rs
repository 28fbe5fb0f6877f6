//! Fractional Laplace transform layer: the branch factor `τ`, closed-form
//! transform pairs and an adaptive Gauss-Kronrod quadrature on `[0, U]`.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::specfun::{cos_pi, gamma_real, sin_pi};

/// Default Laplace branch parameter.
pub const DEFAULT_DELTA: f64 = -0.5;

/// Fractional order together with the branch parameter `δ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BranchParams {
    pub delta: f64,
    pub alpha: f64,
}

impl BranchParams {
    pub fn new(alpha: f64, delta: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return domain(format!("fractional order {alpha} not in (0, 1]"));
        }
        check_delta(delta)?;
        Ok(BranchParams { delta, alpha })
    }

    pub fn tau(&self) -> Result<f64> {
        tau_factor(self.alpha, self.delta)
    }
}

fn check_delta(delta: f64) -> Result<()> {
    if !(delta > -1.0 && delta < 0.0) {
        return domain(format!("branch parameter {delta} not in (-1, 0)"));
    }
    Ok(())
}

/// `τ = -sin(-δπ) / sin((α-δ)π)`, equal to 1 at α = 1.
pub fn tau_factor(alpha: f64, delta: f64) -> Result<f64> {
    check_delta(delta)?;
    let den = sin_pi(alpha) * cos_pi(delta) - cos_pi(alpha) * sin_pi(delta);
    if den.abs() < 1e-12 {
        return Err(Error::Singularity(format!(
            "sin((α-δ)π) vanishes for α={alpha}, δ={delta}"
        )));
    }
    Ok(-sin_pi(-delta) / den)
}

/// `L{x^p} = Γ(1+p) / s^(1+p)` for `p > -1`.
pub fn power_transform(p: f64, s: f64) -> Result<f64> {
    if !(p > -1.0) || !(s > 0.0) {
        return domain(format!(
            "power transform needs p > -1 and s > 0 (got {p}, {s})"
        ));
    }
    Ok(gamma_real(1.0 + p)? / s.powf(1.0 + p))
}

/// `L{E_α(a x^α)} = s^(α-1) / (s^α - a)`.
pub fn ml_transform(alpha: f64, a: f64, s: f64) -> Result<f64> {
    ml_transform_pair(alpha, 1.0, 0, a, s)
}

/// Transform of `d^k/dx^k E_α(-x^α)` for `k ∈ {0, 1}`:
/// `s^(α+k-1)/(s^α+1)`, minus the boundary value `E_α(0) = 1` when `k = 1`.
pub fn ml_deriv_transform(alpha: f64, k: u32, s: f64) -> Result<f64> {
    if k > 1 {
        return domain(format!("derivative order {k} not in {{0, 1}}"));
    }
    let base = ml_transform_pair(alpha, 1.0, 0, -1.0, s)? * s.powi(k as i32);
    Ok(base - k as f64)
}

/// `L{x^(αk+β-1) E^(k)_{α,β}(a x^α)} = k! s^(α-β) / (s^α - a)^(k+1)`.
///
/// Pass `a = -ε` for the `(s^α + ε)` branch.
pub fn ml_transform_pair(alpha: f64, beta: f64, k: u32, a: f64, s: f64) -> Result<f64> {
    if !(alpha > 0.0 && beta > 0.0 && s > 0.0) {
        return domain(format!(
            "transform pair needs alpha, beta, s > 0 (got {alpha}, {beta}, {s})"
        ));
    }
    let sa = s.powf(alpha);
    if sa <= a.abs() {
        return domain(format!(
            "s^alpha = {sa} outside region of convergence |a| = {}",
            a.abs()
        ));
    }
    let fact: f64 = (1..=k).map(f64::from).product();
    Ok(fact * s.powf(alpha - beta) / (sa - a).powi(k as i32 + 1))
}

/// Settings for [`laplace_numeric`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    pub upper_cut: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
    /// Leading power `p̂ > -1` of `f` at the origin, if any.
    pub singular_power: Option<f64>,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            upper_cut: 50.0,
            rel_tol: 1e-10,
            max_subdivisions: 4000,
            singular_power: None,
        }
    }
}

impl QuadratureConfig {
    pub fn with_upper_cut(mut self, upper_cut: f64) -> Self {
        self.upper_cut = upper_cut;
        self
    }

    pub fn with_singular_power(mut self, p: f64) -> Self {
        self.singular_power = Some(p);
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.upper_cut > 0.0 && self.rel_tol > 0.0) || self.max_subdivisions == 0 {
            return domain("quadrature needs upper_cut > 0, rel_tol > 0, max_subdivisions > 0");
        }
        if let Some(p) = self.singular_power {
            if !(p > -1.0) {
                return domain(format!("singular power {p} must exceed -1"));
            }
        }
        Ok(())
    }
}

const XGK: [f64; 11] = [
    0.995_657_163_025_808_1,
    0.973_906_528_517_171_7,
    0.930_157_491_355_708_2,
    0.865_063_366_688_984_5,
    0.780_817_726_586_416_9,
    0.679_409_568_299_024_4,
    0.562_757_134_668_604_7,
    0.433_395_394_129_247_2,
    0.294_392_862_701_460_2,
    0.148_874_338_981_631_2,
    0.0,
];

const WG: [f64; 5] = [
    0.066_671_344_308_688_14,
    0.149_451_349_150_580_6,
    0.219_086_362_515_982_04,
    0.269_266_719_309_996_35,
    0.295_524_224_714_752_9,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874,
    0.032_558_162_307_964_73,
    0.054_755_896_574_352,
    0.075_039_674_810_919_95,
    0.093_125_454_583_697_6,
    0.109_387_158_802_297_64,
    0.123_491_976_262_065_85,
    0.134_709_217_311_473_33,
    0.142_775_938_577_060_08,
    0.147_739_104_901_338_5,
    0.149_445_554_002_916_9,
];

// 21-point Kronrod estimate and |Kronrod - Gauss|.
fn gk21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = fc * WGK[10];
    let mut gauss = 0.0;
    for j in 0..10 {
        let dx = h * XGK[j];
        let pair = f(c - dx) + f(c + dx);
        kron += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    (kron * h, ((kron - gauss) * h).abs())
}

struct Segment {
    piece: usize,
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

/// `∫_0^U e^{-sx} f(x) dx` by globally adaptive Gauss-Kronrod 21.
///
/// A declared singular power `p̂` maps `[0, min(1, U)]` through
/// `x = u^(1/(1+p̂))`, which removes an `x^p̂` endpoint singularity.
pub fn laplace_numeric<F>(f: F, s: f64, cfg: &QuadratureConfig) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    cfg.validate()?;
    if !(s > 0.0) {
        return domain(format!("transform variable {s} must be positive"));
    }
    let upper = cfg.upper_cut;
    let kernel = |x: f64| (-s * x).exp() * f(x);

    let split = cfg.singular_power.map(|p| (p, upper.min(1.0)));
    let q = split.map_or(1.0, |(p, _)| 1.0 / (1.0 + p));
    let mapped = |u: f64| {
        let x = u.powf(q);
        kernel(x) * q * u.powf(q - 1.0)
    };
    let eval = |piece: usize, a: f64, b: f64| {
        if piece == 0 {
            gk21(&mapped, a, b)
        } else {
            gk21(&kernel, a, b)
        }
    };

    let mut heap = BinaryHeap::new();
    let push = |heap: &mut BinaryHeap<Segment>, piece, a, b| {
        let (value, err) = eval(piece, a, b);
        heap.push(Segment {
            piece,
            a,
            b,
            value,
            err,
        });
    };
    match split {
        Some((p, c)) => {
            push(&mut heap, 0, 0.0, c.powf(1.0 + p));
            if upper > c {
                push(&mut heap, 1, c, upper);
            }
        }
        None => push(&mut heap, 1, 0.0, upper),
    }

    let mut subdivisions = 0;
    loop {
        let total: f64 = heap.iter().map(|s| s.value).sum();
        let err: f64 = heap.iter().map(|s| s.err).sum();
        if !total.is_finite() {
            return Err(Error::NonConvergence(
                "integrand produced a non-finite value".into(),
            ));
        }
        if err <= cfg.rel_tol * total.abs() || err < f64::MIN_POSITIVE {
            let tail = (kernel(upper)).abs();
            if !(tail <= cfg.rel_tol * total.abs()) {
                return Err(Error::NonConvergence(format!(
                    "integrand tail {tail:e} at upper cut {upper} exceeds tolerance"
                )));
            }
            return Ok(total);
        }
        if subdivisions >= cfg.max_subdivisions {
            return Err(Error::NonConvergence(format!(
                "error estimate {err:e} above target after {subdivisions} subdivisions"
            )));
        }
        let worst = heap.pop().expect("heap holds at least one segment");
        let mid = 0.5 * (worst.a + worst.b);
        push(&mut heap, worst.piece, worst.a, mid);
        push(&mut heap, worst.piece, mid, worst.b);
        subdivisions += 1;
    }
}
