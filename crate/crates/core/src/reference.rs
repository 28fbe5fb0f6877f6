//! Published reference values for the diatomic molecule
//! (M = 0.31 GeV, D0 = 2e-9 GeV, r0 = 1e5 GeV⁻¹, C = 0, δ = -0.5, ℓ = 1).

#![allow(clippy::approx_constant)]

/// Potential coefficients and branch factor per fractional order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Table1Row {
    pub alpha: f64,
    pub coeff_a: f64,
    pub coeff_b: f64,
    pub tau: f64,
}

/// Spectral columns per dimension and order; energies in eV for n = 1, 2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Table2Row {
    pub dim: u32,
    pub alpha: f64,
    pub k_star: f64,
    pub q1: f64,
    pub gamma_alpha: f64,
    pub energy_ev: [f64; 2],
}

pub const ELL: u32 = 1;
pub const ENERGY_STATES: [u32; 2] = [1, 2];
pub const ALPHAS: [f64; 7] = [0.70, 0.75, 0.80, 0.85, 0.90, 0.95, 1.0];

pub const TABLE1: [Table1Row; 7] = [
    Table1Row {
        alpha: 0.70,
        coeff_a: 0.0200,
        coeff_b: -1.2649e-5,
        tau: 1.7013,
    },
    Table1Row {
        alpha: 0.75,
        coeff_a: 0.0632,
        coeff_b: -2.2494e-5,
        tau: 1.4142,
    },
    Table1Row {
        alpha: 0.80,
        coeff_a: 0.2000,
        coeff_b: -4.0e-5,
        tau: 1.2361,
    },
    Table1Row {
        alpha: 0.85,
        coeff_a: 0.6325,
        coeff_b: -7.1131e-5,
        tau: 1.2223,
    },
    Table1Row {
        alpha: 0.90,
        coeff_a: 2.000,
        coeff_b: -1.2649e-4,
        tau: 1.0515,
    },
    Table1Row {
        alpha: 0.95,
        coeff_a: 6.3246,
        coeff_b: -2.2494e-4,
        tau: 1.0125,
    },
    Table1Row {
        alpha: 1.0,
        coeff_a: 20.0,
        coeff_b: -4.0e-4,
        tau: 1.0,
    },
];

const fn row(
    dim: u32,
    alpha: f64,
    k_star: f64,
    q1: f64,
    gamma_alpha: f64,
    e1: f64,
    e2: f64,
) -> Table2Row {
    Table2Row {
        dim,
        alpha,
        k_star,
        q1,
        gamma_alpha,
        energy_ev: [e1, e2],
    }
}

pub const TABLE2: [Table2Row; 21] = [
    row(3, 0.70, 1.401540, -24.0199, 15.4856, -8.9562e-5, -7.212e-5),
    row(3, 0.75, 1.277020, -9.2051, 7.9555, -0.0013, -8.9706e-4),
    row(3, 0.80, 2.280294, -3.9385, 4.7212, -0.0121, -0.0072),
    row(3, 0.85, 2.118725, -3.2152, 4.2640, -0.0463, -0.0266),
    row(3, 0.90, 2.030419, -3.1805, 4.7679, -0.1753, -0.1045),
    row(3, 0.95, 5.452018, -5.1659, 6.9670, -0.3536, -0.2364),
    row(3, 1.0, 4.327531, -6.6551, 8.6551, -0.8456, -0.5994),
    row(4, 0.70, 8.293139, -9.9419, 7.2108, -3.2277e-4, -2.1788e-4),
    row(4, 0.75, 1.324563, -61.9221, 45.2324, -5.7474e-5, -5.29e-5),
    row(4, 0.80, 2.382292, -6.7296, 6.9792, -0.0068, -0.0045),
    row(4, 0.85, 6.463783, -5.1534, 5.8497, -0.0295, -0.0187),
    row(4, 0.90, 2.128283, -4.8426, 6.3486, -0.1152, -0.0750),
    row(4, 0.95, 5.529740, -5.3053, 7.1047, -0.3430, -0.2306),
    row(4, 1.0, 5.0496913, -7.0994, 9.0994, -0.7792, -0.5595),
    row(5, 0.70, 8.352522, -12.3138, 8.6049, -2.4348e-4, -1.7235e-4),
    row(5, 0.75, 7.687194, -8.5297, 7.4779, -0.0014, -9.7326e-4),
    row(5, 0.80, 7.095835, -6.6828, 6.9413, -0.0068, -0.0046),
    row(5, 0.85, 4.425374, -5.4828, 6.1192, -0.0276, -0.0177),
    row(5, 0.90, 7.1076947, -5.7343, 7.1966, -0.0950, -0.0641),
    row(5, 0.95, 5.6810119, -5.6611, 7.4561, -0.3180, -0.2167),
    row(5, 1.0, 5.818564, -7.6371, 9.6371, -0.7089, -0.5162),
];

/// GeV to eV.
pub const EV_PER_GEV: f64 = 1e9;
