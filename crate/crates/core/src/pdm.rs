//! Position-dependent-mass extension: mass profiles, the deformation
//! coordinate eta(y) with d eta/dy = sqrt(m), PDM eigenfunctions
//! psi~_n = N_n m^{1/4} P_n(eta) e^{-eta^2/2}/(1+2 eta^2), the PDM ladder
//! operators, and synthesis of every coherent-state family over them.
//!
//! The ladder operators act as the m^{1/4}-conjugated image of the
//! constant-mass pair, i.e. the derivative slot is
//! m^{-1/2}(d/dy - m'/(4m)); that is the reading under which the ladder
//! contract holds pointwise. Likewise the printed PDM potential carries a
//! +3/2 offset against the point-canonical image of the constant-mass
//! problem, so the eigenvalue entering its Schroedinger residual is
//! E_n + 3/2 = n while the spectrum itself stays at n - 3/2.

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::FockIndex;
use crate::phermite::{curvature_b, phi};
use crate::special::{self, QuadratureSpec};
use crate::states::StateVector;
use crate::wavefunctions::{self, energy};

const FD_STEP: f64 = 1e-4;

/// Spatially varying effective mass. The rational example
/// m(y) = (gamma + y^2)^2/(1 + y^2)^2 carries exact derivatives and a
/// closed-form eta; custom profiles fall back to finite differences and
/// quadrature.
#[derive(Clone)]
pub enum MassProfile {
    Rational { gamma_mass: f64 },
    Custom(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl std::fmt::Debug for MassProfile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MassProfile::Rational { gamma_mass } => {
                write!(f, "MassProfile::Rational {{ gamma_mass: {gamma_mass} }}")
            }
            MassProfile::Custom(_) => write!(f, "MassProfile::Custom(..)"),
        }
    }
}

impl MassProfile {
    pub fn rational(gamma_mass: f64) -> Result<Self> {
        if gamma_mass.is_nan() || gamma_mass <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "rational profile needs gamma_mass > 0 for a positive mass, got {gamma_mass}"
            )));
        }
        Ok(Self::Rational { gamma_mass })
    }

    pub fn custom(m: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self::Custom(Arc::new(m))
    }

    pub fn mass(&self, y: f64) -> Result<f64> {
        let v = match self {
            MassProfile::Rational { gamma_mass } => {
                let u = (gamma_mass + y * y) / (1.0 + y * y);
                u * u
            }
            MassProfile::Custom(m) => m(y),
        };
        if v > 0.0 {
            Ok(v)
        } else {
            Err(Error::InvalidArgument(format!(
                "mass profile non-positive at y = {y}: m = {v}"
            )))
        }
    }

    pub fn mass_deriv(&self, y: f64) -> Result<f64> {
        match self {
            MassProfile::Rational { gamma_mass } => {
                let den = 1.0 + y * y;
                let u = (gamma_mass + y * y) / den;
                let du = 2.0 * y * (1.0 - gamma_mass) / (den * den);
                Ok(2.0 * u * du)
            }
            MassProfile::Custom(m) => {
                let h = FD_STEP;
                Ok((-m(y + 2.0 * h) + 8.0 * m(y + h) - 8.0 * m(y - h) + m(y - 2.0 * h))
                    / (12.0 * h))
            }
        }
    }

    pub fn mass_second_deriv(&self, y: f64) -> Result<f64> {
        match self {
            MassProfile::Rational { gamma_mass } => {
                let den = 1.0 + y * y;
                let u = (gamma_mass + y * y) / den;
                let du = 2.0 * y * (1.0 - gamma_mass) / (den * den);
                let d2u = 2.0 * (1.0 - gamma_mass) * (1.0 - 3.0 * y * y) / den.powi(3);
                Ok(2.0 * (du * du + u * d2u))
            }
            MassProfile::Custom(m) => {
                let h = FD_STEP;
                Ok((-m(y + 2.0 * h) + 16.0 * m(y + h) - 30.0 * m(y) + 16.0 * m(y - h)
                    - m(y - 2.0 * h))
                    / (12.0 * h * h))
            }
        }
    }
}

/// eta(y) = int_0^y sqrt(m); strictly increasing. Closed form
/// y + (gamma - 1) atan(y) for the rational example.
pub fn eta(profile: &MassProfile, y: f64) -> Result<f64> {
    match profile {
        MassProfile::Rational { gamma_mass } => Ok(y + (gamma_mass - 1.0) * y.atan()),
        MassProfile::Custom(_) => {
            if y == 0.0 {
                return Ok(0.0);
            }
            let (lo, hi, sign) = if y > 0.0 { (0.0, y, 1.0) } else { (y, 0.0, -1.0) };
            let q = special::integrate(
                |s| profile.mass(s).map(f64::sqrt).unwrap_or(f64::NAN),
                &QuadratureSpec::finite(lo, hi, 1e-12),
            )?;
            // a NaN from non-positive mass is skipped by the integrator, so
            // re-check the endpoint here
            profile.mass(y)?;
            Ok(sign * q.value)
        }
    }
}

/// A PDM bound state; its energy coincides with the constant-mass spectrum.
#[derive(Debug, Clone)]
pub struct PdmEigenstate {
    pub n: FockIndex,
    pub profile: MassProfile,
}

impl PdmEigenstate {
    pub fn energy(&self) -> f64 {
        energy(self.n)
    }

    pub fn eval(&self, y: f64) -> Result<f64> {
        pdm_psi(self.n, &self.profile, y)
    }
}

/// psi~_n(y) = N_n m^{1/4}(y) P_n(eta) e^{-eta^2/2}/(1+2 eta^2).
pub fn pdm_psi(n: FockIndex, profile: &MassProfile, y: f64) -> Result<f64> {
    let m = profile.mass(y)?;
    let e = eta(profile, y)?;
    Ok(m.powf(0.25) * wavefunctions::psi_raw(n.value(), e))
}

/// d psi~_n/dy, analytic through the product and chain rules.
pub fn pdm_psi_deriv(n: FockIndex, profile: &MassProfile, y: f64) -> Result<f64> {
    let m = profile.mass(y)?;
    let dm = profile.mass_deriv(y)?;
    let e = eta(profile, y)?;
    let u = wavefunctions::psi_raw(n.value(), e);
    let du = wavefunctions::psi_deriv_raw(n.value(), e);
    Ok(0.25 * m.powf(-0.75) * dm * u + m.powf(0.75) * du)
}

/// The PDM potential exactly as displayed:
/// (eta^2 + 8(2 eta^2 - 1)/(1+2 eta^2)^2 + 3)/2 + m''/(8m^2) - 7 m'^2/(32 m^3).
pub fn pdm_potential(profile: &MassProfile, y: f64) -> Result<f64> {
    let m = profile.mass(y)?;
    let dm = profile.mass_deriv(y)?;
    let d2m = profile.mass_second_deriv(y)?;
    let e = eta(profile, y)?;
    let e2 = e * e;
    let bracket = e2 + 8.0 * (2.0 * e2 - 1.0) / (1.0 + 2.0 * e2).powi(2) + 3.0;
    Ok(0.5 * bracket + d2m / (8.0 * m * m) - 7.0 * dm * dm / (32.0 * m * m * m))
}

/// Residual of the PDM Schroedinger equation
/// -(psi~'/m)'/2 + (V~ - E) psi~ = 0 against pdm_psi, relative to the term
/// magnitudes. The +3/2 offset the printed potential carries is absorbed
/// into the eigenvalue here: E = energy(n) + 3/2 = n.
pub fn pdm_schrodinger_residual(n: FockIndex, profile: &MassProfile, y: f64) -> Result<f64> {
    let m = profile.mass(y)?;
    let dm = profile.mass_deriv(y)?;
    let d2m = profile.mass_second_deriv(y)?;
    let e = eta(profile, y)?;
    let nv = n.value();
    let u = wavefunctions::psi_raw(nv, e);
    let du = wavefunctions::psi_deriv_raw(nv, e);
    let d2u = wavefunctions::psi_second_deriv_raw(nv, e);

    let psi = m.powf(0.25) * u;
    let dpsi = 0.25 * m.powf(-0.75) * dm * u + m.powf(0.75) * du;
    let d2psi = -3.0 / 16.0 * m.powf(-1.75) * dm * dm * u
        + 0.25 * m.powf(-0.75) * d2m * u
        + m.powf(-0.25) * dm * du
        + m.powf(1.25) * d2u;

    let kinetic = -0.5 * (d2psi / m - dm * dpsi / (m * m));
    let potential_term = (pdm_potential(profile, y)? - (energy(n) + 1.5)) * psi;
    let scale = kinetic.abs().max(potential_term.abs()).max(f64::MIN_POSITIVE);
    Ok((kinetic + potential_term).abs() / scale)
}

fn pdm_ladder_common(
    n: u32,
    profile: &MassProfile,
    y: f64,
) -> Result<(f64, f64, f64, f64, f64)> {
    let m = profile.mass(y)?;
    let dm = profile.mass_deriv(y)?;
    let e = eta(profile, y)?;
    let idx = FockIndex::new(n).expect("caller-validated index");
    let psi = pdm_psi(idx, profile, y)?;
    let dpsi = pdm_psi_deriv(idx, profile, y)?;
    // conjugated derivative slot: m^{-1/2}(d/dy - m'/(4m)) on psi~
    let d = (dpsi - dm / (4.0 * m) * psi) / m.sqrt();
    Ok((psi, d, e, curvature_b(e), phi(e)))
}

/// PDM annihilation image; equals sqrt(n) f(n) psi~_{n-1} pointwise.
pub fn pdm_apply_a(n: FockIndex, profile: &MassProfile, grid: &[f64]) -> Result<Vec<f64>> {
    let nv = n.value();
    if nv < 4 {
        return Err(Error::InvalidArgument(format!(
            "PDM annihilator needs n >= 4, got {nv}"
        )));
    }
    grid.iter()
        .map(|&y| {
            let (psi, d, e, b, ph) = pdm_ladder_common(nv, profile, y)?;
            Ok(((b - 1.0) * (d + ph * psi) + (d + e * psi) * nv as f64)
                * std::f64::consts::FRAC_1_SQRT_2)
        })
        .collect()
}

/// PDM creation image; equals sqrt(n+1) f(n+1) psi~_{n+1} pointwise.
pub fn pdm_apply_adag(n: FockIndex, profile: &MassProfile, grid: &[f64]) -> Result<Vec<f64>> {
    let nv = n.value();
    grid.iter()
        .map(|&y| {
            let (psi, d, e, b, ph) = pdm_ladder_common(nv, profile, y)?;
            Ok((-b * (d + ph * psi) + (-d + e * psi) * nv as f64)
                * std::f64::consts::FRAC_1_SQRT_2)
        })
        .collect()
}

/// Position profile of a coherent state over the PDM eigenfunctions. The
/// Fock-space coefficients are profile-independent (f(n) is unchanged), so
/// any state built by the constant-mass builders synthesizes directly.
pub fn pdm_state(
    state: &StateVector,
    profile: &MassProfile,
    grid: &[f64],
) -> Result<Vec<Complex64>> {
    grid.iter()
        .map(|&y| {
            let m = profile.mass(y)?;
            let e = eta(profile, y)?;
            let envelope = m.powf(0.25);
            Ok(state
                .amplitudes()
                .map(|(n, c)| c * envelope * wavefunctions::psi_raw(n, e))
                .sum())
        })
        .collect()
}

/// <psi~_n | psi~_m> by quadrature in y.
pub fn pdm_overlap(n: FockIndex, m: FockIndex, profile: &MassProfile) -> Result<f64> {
    let (a, b) = (n, m);
    let q = special::integrate(
        |y| match (pdm_psi(a, profile, y), pdm_psi(b, profile, y)) {
            (Ok(u), Ok(v)) => u * v,
            _ => f64::NAN,
        },
        &QuadratureSpec::real_line(1e-10),
    )?;
    Ok(q.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::f_raw;
    use crate::states::{build_gk, build_nlcs, synthesize_position, DEFAULT_N_MAX};
    use crate::wavefunctions::{apply_a_differential, default_grid, grid, potential, psi};

    fn idx(n: u32) -> FockIndex {
        FockIndex::new(n).unwrap()
    }

    fn rational(g: f64) -> MassProfile {
        MassProfile::rational(g).unwrap()
    }

    #[test]
    fn rational_profile_validation() {
        assert!(MassProfile::rational(0.0).is_err());
        assert!(MassProfile::rational(-1.0).is_err());
        let p = rational(2.0);
        assert!((p.mass(0.0).unwrap() - 4.0).abs() < 1e-15);
        assert!((p.mass(1e6).unwrap() - 1.0).abs() < 1e-5);
    }

    #[test]
    fn eta_closed_forms() {
        let unit = rational(1.0);
        for &y in &[0.0, 0.3, -2.0, 5.0] {
            assert_eq!(eta(&unit, y).unwrap(), y);
        }
        let two = rational(2.0);
        let expect = 1.0 + std::f64::consts::FRAC_PI_4;
        assert!((eta(&two, 1.0).unwrap() - expect).abs() < 1e-15);
    }

    #[test]
    fn eta_quadrature_route_matches_closed_form() {
        let g = 2.0;
        let custom = MassProfile::custom(move |y: f64| {
            let u = (g + y * y) / (1.0 + y * y);
            u * u
        });
        for &y in &[0.5_f64, 1.0, -3.0, 4.2] {
            let closed = y + (g - 1.0) * y.atan();
            let quad = eta(&custom, y).unwrap();
            assert!((quad - closed).abs() <= 1e-10 * closed.abs(), "y = {y}");
        }
    }

    #[test]
    fn custom_derivatives_match_exact() {
        let g = 2.0;
        let exact = rational(g);
        let custom = MassProfile::custom(move |y: f64| {
            let u = (g + y * y) / (1.0 + y * y);
            u * u
        });
        for &y in &[0.0, 0.7, -1.4, 3.0] {
            let d = custom.mass_deriv(y).unwrap();
            let d2 = custom.mass_second_deriv(y).unwrap();
            assert!((d - exact.mass_deriv(y).unwrap()).abs() < 1e-8, "y = {y}");
            assert!((d2 - exact.mass_second_deriv(y).unwrap()).abs() < 1e-6, "y = {y}");
        }
    }

    #[test]
    fn unit_mass_reduces_to_constant_mass_eigenfunctions() {
        let p = rational(1.0);
        for n in [0u32, 3, 4, 7] {
            for &y in &[0.0, 0.9, -2.7] {
                let a = pdm_psi(idx(n), &p, y).unwrap();
                let b = psi(idx(n), y);
                assert!((a - b).abs() <= 1e-10 * b.abs().max(1e-12), "n = {n}, y = {y}");
            }
        }
    }

    #[test]
    fn pdm_psi_parity_zero() {
        assert_eq!(pdm_psi(idx(3), &rational(2.0), 0.0).unwrap(), 0.0);
    }

    #[test]
    fn pdm_normalization_by_quadrature() {
        let p = rational(2.0);
        for n in [0u32, 3, 4] {
            let norm = pdm_overlap(idx(n), idx(n), &p).unwrap();
            assert!((norm - 1.0).abs() < 1e-7, "n = {n}: {norm}");
        }
    }

    #[test]
    fn pdm_orthogonality_sample() {
        let p = rational(2.0);
        assert!(pdm_overlap(idx(0), idx(4), &p).unwrap().abs() < 1e-7);
        assert!(pdm_overlap(idx(3), idx(5), &p).unwrap().abs() < 1e-7);
    }

    #[test]
    fn potential_reduction_keeps_printed_offset() {
        let p = rational(1.0);
        for &y in &[0.0, 1.1, -2.2] {
            let v = pdm_potential(&p, y).unwrap();
            assert!((v - potential(y) - 1.5).abs() < 1e-12, "y = {y}");
        }
    }

    #[test]
    fn mass_correction_at_origin() {
        // m'' /(8 m^2) at 0 equals -(gamma-1)/(2 gamma^3) = -1/16 for gamma = 2
        let p = rational(2.0);
        let eta0: f64 = 0.0;
        let bracket = 0.5 * (eta0 - 8.0 + 3.0);
        let v = pdm_potential(&p, 0.0).unwrap();
        assert!((v - bracket - (-1.0 / 16.0)).abs() < 1e-14);
    }

    #[test]
    fn printed_rational_mass_term_matches_generic_correction() {
        let g = 2.0;
        let p = rational(g);
        for &y in &[0.0, 0.7, -1.3, 2.9] {
            let m = p.mass(y).unwrap();
            let dm = p.mass_deriv(y).unwrap();
            let d2m = p.mass_second_deriv(y).unwrap();
            let generic = d2m / (8.0 * m * m) - 7.0 * dm * dm / (32.0 * m * m * m);
            let printed = (g - 1.0) * (3.0 * y.powi(4) + 2.0 * (2.0 - g) * y * y - g)
                / (2.0 * (g + y * y).powi(4));
            assert!((generic - printed).abs() <= 1e-12 * printed.abs().max(1e-12), "y = {y}");
        }
    }

    #[test]
    fn pdm_schrodinger_residuals() {
        let p = rational(2.0);
        for n in [0u32, 3, 4, 6, 8] {
            for k in 0..21 {
                let y = -5.0 + 0.5 * k as f64;
                let r = pdm_schrodinger_residual(idx(n), &p, y).unwrap();
                assert!(r < 1e-6, "n = {n}, y = {y}: {r:.2e}");
            }
        }
    }

    #[test]
    fn unit_mass_ladder_reduction_is_exact() {
        let p = rational(1.0);
        let g = default_grid();
        for n in [4u32, 6] {
            let a = pdm_apply_a(idx(n), &p, &g).unwrap();
            let b = apply_a_differential(idx(n), &g).unwrap();
            let peak = b.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
            for i in 0..g.len() {
                assert!((a[i] - b[i]).abs() <= 1e-10 * peak);
            }
        }
    }

    #[test]
    fn pdm_ladder_contracts() {
        let p = rational(2.0);
        let g = grid(-5.0, 5.0, 501);
        // annihilation: n = 4 -> 2 sqrt(3) psi~_3
        let img = pdm_apply_a(idx(4), &p, &g).unwrap();
        let w = 2.0 * 3.0_f64.sqrt();
        let target: Vec<f64> = g.iter().map(|&y| w * pdm_psi(idx(3), &p, y).unwrap()).collect();
        let peak = target.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        for i in 0..g.len() {
            assert!((img[i] - target[i]).abs() <= 1e-6 * peak, "y = {}", g[i]);
        }
        // creation: n = 3 -> 2 sqrt(3) psi~_4
        let img = pdm_apply_adag(idx(3), &p, &g).unwrap();
        let target: Vec<f64> = g.iter().map(|&y| w * pdm_psi(idx(4), &p, y).unwrap()).collect();
        let peak = target.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        for i in 0..g.len() {
            assert!((img[i] - target[i]).abs() <= 1e-6 * peak, "y = {}", g[i]);
        }
        // creation at n = 4 -> sqrt(5) f(5) psi~_5
        let img = pdm_apply_adag(idx(4), &p, &g).unwrap();
        let w5 = 5.0_f64.sqrt() * f_raw(5);
        let target: Vec<f64> = g.iter().map(|&y| w5 * pdm_psi(idx(5), &p, y).unwrap()).collect();
        let peak = target.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        for i in 0..g.len() {
            assert!((img[i] - target[i]).abs() <= 1e-6 * peak);
        }
    }

    #[test]
    fn pdm_recurrences_hold_under_substitution() {
        use crate::phermite::{recurrence_residual_down, recurrence_residual_up};
        let p = rational(2.0);
        for n in 4..=12u32 {
            for k in 0..21 {
                let y = -5.0 + 0.5 * k as f64;
                let e = eta(&p, y).unwrap();
                assert!(recurrence_residual_down(idx(n), e).unwrap() < 1e-9);
                assert!(recurrence_residual_up(idx(n), e).unwrap() < 1e-9);
            }
        }
    }

    #[test]
    fn pdm_state_base_case_and_reduction() {
        let g = grid(-4.0, 4.0, 201);
        let p2 = rational(2.0);
        let s0 = build_nlcs(num_complex::Complex64::new(0.0, 0.0), DEFAULT_N_MAX);
        let prof = pdm_state(&s0, &p2, &g).unwrap();
        for (i, &y) in g.iter().enumerate() {
            let expect = pdm_psi(idx(3), &p2, y).unwrap();
            assert!((prof[i].re - expect).abs() < 1e-12 && prof[i].im.abs() < 1e-15);
        }

        let p1 = rational(1.0);
        let s = build_nlcs(num_complex::Complex64::new(1.0, 0.5), DEFAULT_N_MAX);
        let reduced = pdm_state(&s, &p1, &g).unwrap();
        let constant = synthesize_position(&s, &g);
        for i in 0..g.len() {
            assert!((reduced[i] - constant[i]).norm() < 1e-10);
        }
    }

    #[test]
    fn pdm_gk_state_unit_norm() {
        let p = rational(2.0);
        let s = build_gk(num_complex::Complex64::new(1.0, 0.0), 0.3, DEFAULT_N_MAX);
        let q = special::integrate(
            |y| {
                let m = p.mass(y).unwrap_or(f64::NAN);
                let e = eta(&p, y).unwrap_or(f64::NAN);
                let v: Complex64 = s
                    .amplitudes()
                    .map(|(n, c)| c * m.powf(0.25) * wavefunctions::psi_raw(n, e))
                    .sum();
                v.norm_sqr()
            },
            &QuadratureSpec::real_line(1e-9),
        )
        .unwrap();
        assert!((q.value - 1.0).abs() < 1e-6, "norm = {}", q.value);
    }
}
