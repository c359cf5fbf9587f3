//! Position-space eigenfunctions of the solvable nonpolynomial oscillator,
//! the potential at its solvable point, orthonormality quadrature, and the
//! differential realizations of the deformed ladder operators.

use crate::error::{Error, Result};
use crate::fock::FockIndex;
use crate::phermite::{self, EvalRoute};
use crate::special::{self, QuadratureSpec};

/// Potential parameters. Only the solvable point omega = 1, a^2 = 1/2,
/// g_a = 2 omega a^2 (1 + 2 omega a^2) = 2 carries eigenfunctions; general
/// values are evaluable for display only.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialParams {
    pub omega: f64,
    pub a_sq: f64,
    pub g_a: f64,
}

impl PotentialParams {
    /// The exactly solvable specialization.
    pub fn solvable() -> Self {
        Self {
            omega: 1.0,
            a_sq: 0.5,
            g_a: 2.0,
        }
    }

    /// Display-only general parameters; no eigenfunction support.
    pub fn display_only(omega: f64, a_sq: f64, g_a: f64) -> Self {
        Self { omega, a_sq, g_a }
    }

    /// V(x) = (omega^2 x^2 + 2 g_a (x^2 - a^2)/(x^2 + a^2)^2) / 2.
    pub fn evaluate(&self, x: f64) -> f64 {
        let x2 = x * x;
        0.5 * (self.omega * self.omega * x2
            + 2.0 * self.g_a * (x2 - self.a_sq) / (x2 + self.a_sq).powi(2))
    }
}

/// A bound state of the solvable oscillator with its derived constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorEigenstate {
    pub n: FockIndex,
    pub normalization: f64,
    pub energy: f64,
}

impl OscillatorEigenstate {
    pub fn new(n: FockIndex) -> Self {
        Self {
            n,
            normalization: norm_constant(n),
            energy: energy(n),
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        psi(self.n, x)
    }
}

/// ln of the normalization constant N_n = [(n-1)(n-2) / (2^n n! sqrt(pi))]^{1/2}.
fn ln_norm_constant(n: u32) -> f64 {
    let ni = n as i64;
    let top = ((ni - 1) * (ni - 2)) as f64; // positive for n = 0 and n >= 3
    let lg = special::log_gamma(n as f64 + 1.0).expect("n+1 > 0");
    0.5 * (top.ln() - n as f64 * 2.0_f64.ln() - lg - 0.5 * std::f64::consts::PI.ln())
}

/// N_n of the bound-state family.
pub fn norm_constant(n: FockIndex) -> f64 {
    ln_norm_constant(n.value()).exp()
}

/// Gaussian-rational envelope e^{-x^2/2}/(1+2x^2) shared by all states.
fn envelope(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (1.0 + 2.0 * x * x)
}

pub(crate) fn psi_raw(n: u32, x: f64) -> f64 {
    ln_norm_constant(n).exp() * phermite::p_hermite_raw(n, x, EvalRoute::Definition) * envelope(x)
}

/// Normalized eigenfunction psi_n(x) = N_n P_n(x) e^{-x^2/2}/(1+2x^2).
pub fn psi(n: FockIndex, x: f64) -> f64 {
    psi_raw(n.value(), x)
}

/// psi'_n, analytic: the envelope differentiates to -phi(x) times itself.
pub(crate) fn psi_deriv_raw(n: u32, x: f64) -> f64 {
    let p = phermite::p_hermite_raw(n, x, EvalRoute::Definition);
    let dp = phermite::p_hermite_deriv_raw(n, x);
    ln_norm_constant(n).exp() * (dp - phermite::phi(x) * p) * envelope(x)
}

pub fn psi_deriv(n: FockIndex, x: f64) -> f64 {
    psi_deriv_raw(n.value(), x)
}

/// psi''_n, analytic.
pub(crate) fn psi_second_deriv_raw(n: u32, x: f64) -> f64 {
    let p = phermite::p_hermite_raw(n, x, EvalRoute::Definition);
    let dp = phermite::p_hermite_deriv_raw(n, x);
    let d2p = phermite::p_hermite_second_deriv_raw(n, x);
    let ph = phermite::phi(x);
    let u = 1.0 + 2.0 * x * x;
    let dphi = 1.0 + 4.0 * (1.0 - 2.0 * x * x) / (u * u);
    ln_norm_constant(n).exp() * (d2p - 2.0 * ph * dp + (ph * ph - dphi) * p) * envelope(x)
}

pub fn psi_second_deriv(n: FockIndex, x: f64) -> f64 {
    psi_second_deriv_raw(n.value(), x)
}

/// E_n = n - 3/2.
pub fn energy(n: FockIndex) -> f64 {
    n.value() as f64 - 1.5
}

/// The solvable potential (x^2 + 8(2x^2-1)/(2x^2+1)^2) / 2.
pub fn potential(x: f64) -> f64 {
    let x2 = x * x;
    0.5 * (x2 + 8.0 * (2.0 * x2 - 1.0) / (2.0 * x2 + 1.0).powi(2))
}

/// |psi'' + (2E - 2V) psi| relative to the magnitudes of its terms.
pub fn schrodinger_residual(n: FockIndex, x: f64) -> f64 {
    let t1 = psi_second_deriv_raw(n.value(), x);
    let t2 = 2.0 * (energy(n) - potential(x)) * psi_raw(n.value(), x);
    (t1 + t2).abs() / t1.abs().max(t2.abs()).max(f64::MIN_POSITIVE)
}

/// <psi_n | psi_m> by quadrature over the real line.
pub fn overlap(n: FockIndex, m: FockIndex) -> Result<f64> {
    let (a, b) = (n.value(), m.value());
    let q = special::integrate(
        |x| psi_raw(a, x) * psi_raw(b, x),
        &QuadratureSpec::real_line(1e-11),
    )?;
    Ok(q.value)
}

/// Default evaluation grid for pointwise ladder contracts.
pub fn default_grid() -> Vec<f64> {
    grid(-6.0, 6.0, 1201)
}

pub fn grid(x_min: f64, x_max: f64, points: usize) -> Vec<f64> {
    assert!(points >= 2, "grid needs at least two points");
    let step = (x_max - x_min) / (points - 1) as f64;
    (0..points).map(|k| x_min + k as f64 * step).collect()
}

/// The annihilation side of the differential ladder pair:
/// sqrt(2) A = [B - 1](d/dx + phi) + (d/dx + x) n. Pointwise it equals
/// sqrt(n) f(n) psi_{n-1}.
pub fn apply_a_differential(n: FockIndex, grid: &[f64]) -> Result<Vec<f64>> {
    let nv = n.value();
    if nv < 4 {
        return Err(Error::InvalidArgument(format!(
            "differential annihilator needs n >= 4 (image lives at n-1 >= 3), got {nv}"
        )));
    }
    Ok(grid
        .iter()
        .map(|&x| {
            let p = psi_raw(nv, x);
            let dp = psi_deriv_raw(nv, x);
            let b = phermite::curvature_b(x);
            ((b - 1.0) * (dp + phermite::phi(x) * p) + (dp + x * p) * nv as f64)
                * std::f64::consts::FRAC_1_SQRT_2
        })
        .collect())
}

/// The creation side: sqrt(2) A+ = -B(d/dx + phi) + (-d/dx + x) n; equals
/// sqrt(n+1) f(n+1) psi_{n+1} pointwise. Accepts n = 0, where both the
/// algebra (f(1) = 0) and the differential form give zero; callers report
/// that case rather than asserting a ladder contract.
pub fn apply_adag_differential(n: FockIndex, grid: &[f64]) -> Vec<f64> {
    let nv = n.value();
    grid.iter()
        .map(|&x| {
            let p = psi_raw(nv, x);
            let dp = psi_deriv_raw(nv, x);
            let b = phermite::curvature_b(x);
            (-b * (dp + phermite::phi(x) * p) + (-dp + x * p) * nv as f64)
                * std::f64::consts::FRAC_1_SQRT_2
        })
        .collect()
}
