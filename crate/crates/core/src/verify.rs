//! Machine-checkable residual suites covering every documented invariant;
//! the CLI `verify` command wraps these into a JSON report with one
//! pass/fail row per check. Random abscissae come from a seeded generator
//! recorded in the report so identical configurations produce identical
//! output.

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fock::{
    self, apply_ladder, commutator_check, deformation_f, deformed_energy, f_tilde_sq,
    tilde_factorial, uncertainty_report, FockIndex, LadderKind,
};
use crate::pdm::{self, MassProfile};
use crate::phermite::{self, EvalRoute};
use crate::special::{self, HypergeometricSpec, QuadratureSpec};
use crate::states::{
    build_even, build_gis, build_gk, build_nlcs, build_odd, gk_evolve, synthesize_position,
    GisParameters, StateVector, DEFAULT_N_MAX,
};
use crate::statistics::{self, Parity};
use crate::wavefunctions::{
    self, apply_a_differential, apply_adag_differential, default_grid, energy, grid, overlap, psi,
    schrodinger_residual,
};

pub const SUITE_NAMES: &[&str] = &[
    "algebra",
    "special",
    "phermite",
    "wavefunctions",
    "states",
    "statistics",
    "completeness",
    "pdm",
];

pub const DEFAULT_SEED: u64 = 7;

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    /// informational rows (paper anomalies, detached-index behaviour) carry
    /// a note and never fail the suite
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<CheckResult>,
    pub checks_run: usize,
    pub max_residual: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub gamma_mass: f64,
    pub suites: Vec<SuiteReport>,
    pub passed: bool,
}

fn check(name: impl Into<String>, residual: f64, tolerance: f64) -> CheckResult {
    CheckResult {
        name: name.into(),
        residual,
        tolerance,
        passed: residual.is_finite() && residual <= tolerance,
        note: None,
    }
}

fn report_row(name: impl Into<String>, residual: f64, note: impl Into<String>) -> CheckResult {
    CheckResult {
        name: name.into(),
        residual,
        tolerance: f64::INFINITY,
        passed: true,
        note: Some(note.into()),
    }
}

fn suite_report(suite: &str, checks: Vec<CheckResult>) -> SuiteReport {
    let max_residual = checks
        .iter()
        .filter(|c| c.note.is_none())
        .map(|c| c.residual)
        .fold(0.0_f64, f64::max);
    let passed = checks.iter().all(|c| c.passed);
    SuiteReport {
        suite: suite.to_string(),
        checks_run: checks.len(),
        checks,
        max_residual,
        passed,
    }
}

fn idx(n: u32) -> FockIndex {
    FockIndex::new(n).expect("valid index")
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

fn max_norm_rel(got: &[f64], want: &[f64]) -> f64 {
    let peak = want.iter().fold(0.0_f64, |m, v| m.max(v.abs())).max(f64::MIN_POSITIVE);
    got.iter()
        .zip(want)
        .map(|(g, w)| (g - w).abs())
        .fold(0.0_f64, f64::max)
        / peak
}

fn algebra_suite() -> Result<Vec<CheckResult>> {
    let mut checks = Vec::new();

    let mut worst = 0.0_f64;
    for n in 4..=120u32 {
        let lhs = fock::f_sq_raw(n).ln() + f_tilde_sq(idx(n - 1))?.ln_abs;
        let rhs = f_tilde_sq(idx(n))?.ln_abs;
        worst = worst.max((lhs - rhs).abs() / rhs.abs().max(1.0));
    }
    checks.push(check("telescoping f(n)^2 product, n <= 120", worst, 1e-14));

    let mut worst = 0.0_f64;
    let mut fact: u128 = 6;
    for n in 3..=20u32 {
        if n > 3 {
            fact *= n as u128;
        }
        worst = worst.max(rel(tilde_factorial(idx(n))?.value() * 6.0, fact as f64));
    }
    checks.push(check("tilde-n! * 6 = n!, n <= 20", worst, 1e-12));

    let mut worst = 0.0_f64;
    for n in 4..=60u32 {
        let lhs = deformed_energy(idx(n)).ln()
            - tilde_factorial(idx(n))?.ln_abs
            - f_tilde_sq(idx(n))?.ln_abs;
        let rhs = -tilde_factorial(idx(n - 1))?.ln_abs - f_tilde_sq(idx(n - 1))?.ln_abs;
        worst = worst.max((lhs - rhs).abs() / rhs.abs().max(1.0));
    }
    checks.push(check("action-identity telescoping of e(n)", worst, 1e-13));

    let mut worst = 0.0_f64;
    for n in [3u32, 4, 6, 9, 12] {
        let s = StateVector::unit(n)?;
        let down = apply_ladder(LadderKind::DeformedA, &s, 0.0)?;
        let back = apply_ladder(LadderKind::DeformedADagger, &down, 0.0)?;
        let expect = (n as f64) * fock::f_sq_raw(n);
        worst = worst.max((back.amplitude(n).re - expect).abs() / expect.max(1.0));
    }
    checks.push(check("A+ A |n> = n f(n)^2 |n>", worst, 1e-12));

    let mut worst = 0.0_f64;
    for n in 4..=12u32 {
        let r = commutator_check(idx(n))?;
        worst = worst.max(r[0]).max(r[1]).max(r[2]);
    }
    checks.push(check("Heisenberg algebra residuals, n in [4,12]", worst, 1e-12));

    let r3 = commutator_check(idx(3))?;
    checks.push(report_row(
        "commutator at detached n = 3",
        r3[0],
        "f(3) = 0 detaches |3>; [a,a+]|3> = 4|3>, reported without assertion",
    ));

    let u4 = uncertainty_report(&StateVector::unit(4)?)?;
    checks.push(check(
        "uncertainty bound on |4>",
        (-u4.saturation_residual).max(0.0),
        1e-12,
    ));

    let mut worst = 0.0_f64;
    for alpha in [1.0, 2.0] {
        for lambda in [0.3, 0.5, 2.0] {
            let s = build_gis(
                GisParameters {
                    alpha: Complex64::new(alpha, 0.0),
                    lambda: Complex64::new(lambda, 0.0),
                },
                DEFAULT_N_MAX,
            )?;
            let u = uncertainty_report(&s)?;
            worst = worst.max(u.saturation_residual.abs());
        }
    }
    checks.push(check(
        "intelligent-state saturation |dW dP - |<G>|/2|",
        worst,
        1e-6,
    ));

    let nlcs = build_nlcs(Complex64::new(1.0, 0.0), DEFAULT_N_MAX);
    let u = uncertainty_report(&nlcs)?;
    checks.push(check("dW = dP at lambda = 1", (u.dw - u.dp).abs(), 1e-8));

    Ok(checks)
}

/// Independent pFq route: every term assembled from log-gamma ratios rather
/// than the production term recursion.
fn pfq_via_gammas(num: &[f64], den: &[f64], x: f64, terms: usize) -> f64 {
    let lg = |v: f64| special::log_gamma(v).expect("positive");
    let mut sum = 0.0;
    for k in 0..terms {
        let kf = k as f64;
        let mut ln_t = kf * x.abs().max(f64::MIN_POSITIVE).ln() - lg(kf + 1.0);
        for &a in num {
            ln_t += lg(a + kf) - lg(a);
        }
        for &b in den {
            ln_t -= lg(b + kf) - lg(b);
        }
        let sign = if x < 0.0 && k % 2 == 1 { -1.0 } else { 1.0 };
        sum += sign * ln_t.exp();
    }
    sum
}

fn special_suite() -> Result<Vec<CheckResult>> {
    let mut checks = Vec::new();

    let mut worst = 0.0_f64;
    let mut fact = 1.0_f64;
    for n in 1..=20u32 {
        fact *= n as f64;
        worst = worst.max(rel(special::log_gamma(n as f64 + 1.0)?, fact.ln()));
    }
    checks.push(check("log_gamma against factorials", worst, 1e-13));

    let mut worst = 0.0_f64;
    for z in [0.17, 0.6, 1.3, 2.8, 4.4, 7.9] {
        let lhs = special::log_gamma(2.0 * z)?;
        let rhs = (2.0 * z - 1.0) * 2.0_f64.ln() + special::log_gamma(z)?
            + special::log_gamma(z + 0.5)?
            - 0.5 * std::f64::consts::PI.ln();
        worst = worst.max((lhs - rhs).abs() / lhs.abs().max(1.0));
    }
    checks.push(check("log_gamma duplication identity", worst, 1e-12));

    let tuples: &[(&[f64], &[f64])] = &[
        (&[3.0], &[3.0, 3.0, 4.0]),
        (&[4.0], &[3.0, 3.0, 4.0]),
        (&[4.0], &[3.0, 3.0, 3.0]),
        (&[], &[2.0, 3.0, 1.5, 2.5, 2.5]),
        (&[], &[2.0, 2.0, 1.5, 2.5, 2.5]),
        (&[3.0], &[2.0, 2.0, 2.0, 1.5, 2.5, 2.5]),
        (&[], &[2.0, 2.0, 0.5, 1.5, 2.5]),
        (&[], &[2.0, 2.0, 0.5, 1.5, 1.5]),
        (&[2.5], &[2.0, 2.0, 0.5, 1.5, 1.5, 1.5]),
    ];
    let mut worst = 0.0_f64;
    for (num, den) in tuples {
        for &x in &[0.5, 1.0, 5.0, 20.0] {
            let got = special::pfq(&HypergeometricSpec::new(num, den, x)?)?;
            let oracle = pfq_via_gammas(num, den, x, 80);
            worst = worst.max(rel(got, oracle));
        }
    }
    checks.push(check(
        "pFq term recursion vs log-gamma route, all report tuples",
        worst,
        1e-11,
    ));

    let mut worst = 0.0_f64;
    for &nu in &[0.5, 1.0, 1.5, 2.0, 3.3, 6.0] {
        for &x in &[0.5, 1.0, 2.0, 5.0, 10.0] {
            let lhs = special::bessel_k(nu + 1.0, x)?;
            let rhs = special::bessel_k(nu - 1.0, x)? + 2.0 * nu / x * special::bessel_k(nu, x)?;
            worst = worst.max(rel(lhs, rhs));
        }
    }
    checks.push(check("bessel K recurrence lattice", worst, 1e-9));

    let mut worst = 0.0_f64;
    for &x in &[0.4, 1.0, 3.0, 8.0] {
        let k_half = (std::f64::consts::PI / (2.0 * x)).sqrt() * (-x).exp();
        worst = worst.max(rel(special::bessel_k(0.5, x)?, k_half));
        let k_three_halves = k_half * (1.0 + 1.0 / x);
        worst = worst.max(rel(special::bessel_k(1.5, x)?, k_three_halves));
    }
    checks.push(check("bessel K half-integer closed forms", worst, 1e-10));

    let q = special::integrate(|x| (-x * x).exp(), &QuadratureSpec::real_line(1e-13))?;
    checks.push(check(
        "Gaussian integral",
        (q.value - std::f64::consts::PI.sqrt()).abs(),
        1e-12,
    ));

    let spec = QuadratureSpec::real_line(1e-12);
    let f = |x: f64| (-x * x).exp();
    let g = |x: f64| (-0.5 * x * x).exp() * x.cos();
    let (a, b) = (1.7, -0.4);
    let qf = special::integrate(f, &spec)?;
    let qg = special::integrate(g, &spec)?;
    let qc = special::integrate(|x| a * f(x) + b * g(x), &spec)?;
    let lin = (qc.value - a * qf.value - b * qg.value).abs();
    let budget = qc.error_estimate + a.abs() * qf.error_estimate + b.abs() * qg.error_estimate;
    checks.push(check("quadrature linearity", lin, budget.max(1e-12)));

    Ok(checks)
}

fn phermite_suite(rng: &mut StdRng) -> Result<Vec<CheckResult>> {
    let mut checks = Vec::new();
    let xs: Vec<f64> = (0..100).map(|_| rng.gen_range(-5.0..5.0)).collect();

    let mut worst = 0.0_f64;
    for n in 3..=20u32 {
        for &x in &xs {
            let a = phermite::p_hermite(idx(n), x, EvalRoute::Definition);
            let b = phermite::p_hermite(idx(n), x, EvalRoute::Reduced);
            worst = worst.max((a - b).abs() / a.abs().max(b.abs()).max(1.0));
        }
    }
    checks.push(check("definition vs reduced routes", worst, 1e-10));

    let mut worst = 0.0_f64;
    for n in 4..=20u32 {
        for &x in &xs {
            worst = worst.max(phermite::recurrence_residual_down(idx(n), x)?);
        }
    }
    checks.push(check("downward recurrence residual", worst, 1e-9));

    let mut worst = 0.0_f64;
    for n in 3..=20u32 {
        for &x in &xs {
            worst = worst.max(phermite::recurrence_residual_up(idx(n), x)?);
        }
    }
    checks.push(check("upward recurrence residual", worst, 1e-9));

    let mut worst = 0.0_f64;
    for n in 3..=12u32 {
        for &x in &xs {
            let u = 1.0 + 2.0 * x * x;
            let lhs =
                phermite::p_hermite(idx(n), x, EvalRoute::Definition) * (-x * x).exp() / (u * u);
            let dh = if n == 3 {
                0.0
            } else {
                2.0 * (n as f64 - 3.0) * phermite::hermite(n - 4, x)
            };
            let inner =
                (dh - phermite::hermite(n - 3, x) * (2.0 * x + 4.0 * x / u)) * (-x * x).exp() / u;
            let scale = lhs.abs().max((2.0 * inner).abs()).max(f64::MIN_POSITIVE);
            worst = worst.max((lhs + 2.0 * inner).abs() / scale);
        }
    }
    checks.push(check("derivative product identity", worst, 1e-9));

    let mut worst = 0.0_f64;
    let h = 1e-3;
    for n in 3..=12u32 {
        for &x in xs.iter().take(25) {
            let p = |y: f64| phermite::p_hermite(idx(n), y, EvalRoute::Definition);
            let stencil = (-p(x + 2.0 * h) + 8.0 * p(x + h) - 8.0 * p(x - h) + p(x - 2.0 * h))
                / (12.0 * h);
            let got = phermite::p_hermite_deriv(idx(n), x);
            worst = worst.max((got - stencil).abs() / got.abs().max(1.0));
        }
    }
    checks.push(check("analytic derivative vs 5-point stencil", worst, 1e-7));

    Ok(checks)
}

fn wavefunctions_suite(rng: &mut StdRng) -> Result<Vec<CheckResult>> {
    let mut checks = Vec::new();
    let family: Vec<u32> = std::iter::once(0).chain(3..=12).collect();

    let mut worst = 0.0_f64;
    for (i, &n) in family.iter().enumerate() {
        for &m in &family[i..] {
            let delta = if n == m { 1.0 } else { 0.0 };
            worst = worst.max((overlap(idx(n), idx(m))? - delta).abs());
        }
    }
    checks.push(check("orthonormality, n,m in {0,3..12}", worst, 1e-8));

    let g = default_grid();
    let mut worst = 0.0_f64;
    for &n in &family {
        for &x in &g {
            worst = worst.max(schrodinger_residual(idx(n), x));
        }
    }
    checks.push(check("Schroedinger equation residual", worst, 1e-6));

    let g5 = grid(-5.0, 5.0, 1001);
    let mut worst = 0.0_f64;
    for n in 4..=10u32 {
        let got = apply_a_differential(idx(n), &g5)?;
        let w = (n as f64).sqrt() * deformation_f(idx(n));
        let want: Vec<f64> = g5.iter().map(|&x| w * psi(idx(n - 1), x)).collect();
        worst = worst.max(max_norm_rel(&got, &want));
    }
    checks.push(check("differential annihilator vs Fock action", worst, 1e-7));

    let mut worst = 0.0_f64;
    for n in 3..=10u32 {
        let got = apply_adag_differential(idx(n), &g5);
        let w = ((n + 1) as f64).sqrt() * deformation_f(idx(n + 1));
        let want: Vec<f64> = g5.iter().map(|&x| w * psi(idx(n + 1), x)).collect();
        worst = worst.max(max_norm_rel(&got, &want));
    }
    checks.push(check("differential creator vs Fock action", worst, 1e-7));

    let mut worst = 0.0_f64;
    for n in 4..=8u32 {
        for _ in 0..20 {
            let x: f64 = rng.gen_range(-5.0..5.0);
            let b = phermite::curvature_b(x);
            let assembled = ((b - 1.0)
                * (wavefunctions::psi_deriv(idx(n), x) + phermite::phi(x) * psi(idx(n), x))
                + (wavefunctions::psi_deriv(idx(n), x) + x * psi(idx(n), x)) * n as f64)
                * std::f64::consts::FRAC_1_SQRT_2;
            let coefficientwise = ((n as f64 - 1.0 + b) * wavefunctions::psi_deriv(idx(n), x)
                + (n as f64 * x + (b - 1.0) * phermite::phi(x)) * psi(idx(n), x))
                * std::f64::consts::FRAC_1_SQRT_2;
            worst =
                worst.max((assembled - coefficientwise).abs() / assembled.abs().max(1e-6));
        }
    }
    checks.push(check("operator expansion matches recurrence form", worst, 1e-10));

    let img = apply_adag_differential(idx(0), &g);
    let peak = img.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    checks.push(report_row(
        "creation action on detached ground state",
        peak,
        "no ladder contract is asserted at n = 0; f(1) = 0 makes both sides vanish",
    ));

    checks.push(check(
        "ground state energy below harmonic minimum",
        (energy(idx(0)) + 1.5).abs(),
        0.0,
    ));

    Ok(checks)
}

fn states_suite() -> Result<Vec<CheckResult>> {
    let mut checks = Vec::new();

    let mut worst = 0.0_f64;
    for alpha in [
        Complex64::new(0.5, 0.0),
        Complex64::new(2.0, 1.0),
        Complex64::new(0.0, 5.0),
        Complex64::new(-3.5, 1.2),
    ] {
        let s = build_nlcs(alpha, DEFAULT_N_MAX);
        let img = apply_ladder(LadderKind::DeformedA, &s, 0.0)?;
        worst = worst.max(img.sub(&s.scaled(alpha)).norm());
    }
    checks.push(check("NLCS eigen-residual, |alpha| <= 5", worst, 1e-10));

    let alpha = Complex64::new(2.0, 0.0);
    let gis1 = build_gis(
        GisParameters {
            alpha,
            lambda: Complex64::new(1.0, 0.0),
        },
        DEFAULT_N_MAX,
    )?;
    let nlcs = build_nlcs(alpha, DEFAULT_N_MAX);
    let mut collapse = 0.0_f64;
    for (n, c) in gis1.amplitudes() {
        collapse = collapse.max((c - nlcs.amplitude(n)).norm());
    }
    checks.push(check("GIS collapse to NLCS at lambda = 1 (exact)", collapse, 0.0));

    let mut worst = 0.0_f64;
    for ar in [1.0, 2.0] {
        for lr in [0.3, 0.5, 2.0] {
            let alpha = Complex64::new(ar, 0.0);
            let lambda = Complex64::new(lr, 0.0);
            let s = build_gis(GisParameters { alpha, lambda }, DEFAULT_N_MAX)?;
            let a = apply_ladder(LadderKind::DeformedA, &s, 0.0)?;
            let ad = apply_ladder(LadderKind::DeformedADagger, &s, 0.0)?;
            let one = Complex64::new(1.0, 0.0);
            let res = ad
                .scaled(one - lambda)
                .add(&a.scaled(one + lambda))
                .sub(&s.scaled(2.0 * alpha))
                .norm();
            worst = worst.max(res);
        }
    }
    checks.push(check("GIS eigenvalue-equation residual", worst, 1e-8));

    let even = build_even(Complex64::new(2.0, 0.0), DEFAULT_N_MAX);
    let odd = build_odd(Complex64::new(2.0, 0.0), DEFAULT_N_MAX);
    checks.push(check(
        "even/odd orthogonality (disjoint support)",
        even.inner(&odd).norm(),
        0.0,
    ));

    let mut worst = 0.0_f64;
    for s in [&even, &odd] {
        let once = apply_ladder(LadderKind::DeformedA, s, 0.0)?;
        let twice = apply_ladder(LadderKind::DeformedA, &once, 0.0)?;
        worst = worst.max(twice.sub(&s.scaled(Complex64::new(2.0, 0.0))).norm());
    }
    checks.push(check("cat-state A^2 eigen-residual", worst, 1e-9));

    let mut worst = 0.0_f64;
    for r in [0.5, 1.0, 3.0] {
        let z = Complex64::new(r, 0.0);
        let s = build_gk(z, 0.25, DEFAULT_N_MAX);
        let evolved = gk_evolve(&s, 0.5)?;
        let rebuilt = build_gk(z, 0.75, DEFAULT_N_MAX);
        for (n, c) in evolved.amplitudes() {
            worst = worst.max((c - rebuilt.amplitude(n)).norm());
        }
    }
    checks.push(check("GK temporal stability per amplitude", worst, 1e-14));

    let a = build_gk(Complex64::new(1.5, 0.0), 0.0, DEFAULT_N_MAX);
    let b = build_gk(Complex64::new(1.5, 0.0), 0.3, DEFAULT_N_MAX);
    let mut worst = 0.0_f64;
    for (n, c) in a.amplitudes() {
        worst = worst.max((c.norm() - b.amplitude(n).norm()).abs());
    }
    checks.push(check("GK magnitudes independent of gamma", worst, 1e-15));

    let s = build_gis(
        GisParameters {
            alpha: Complex64::new(1.0, 0.0),
            lambda: Complex64::new(0.5, 0.0),
        },
        DEFAULT_N_MAX,
    )?;
    let c3 = s.amplitude(3);
    let mut worst = 0.0_f64;
    for (n, c) in s.amplitudes() {
        let b_tilde = c / c3;
        let half_log = 0.5 * tilde_factorial(idx(n))?.ln_abs + 0.5 * f_tilde_sq(idx(n))?.ln_abs;
        let reconstructed = b_tilde * half_log.exp() * (-half_log).exp();
        worst = worst.max((reconstructed - b_tilde).norm() / b_tilde.norm().max(1e-30));
    }
    checks.push(check("ratio-constant renaming is the identity", worst, 1e-13));

    let s = build_nlcs(Complex64::new(1.0, 0.0), DEFAULT_N_MAX);
    let q = special::integrate(
        |x| {
            let v: Complex64 = s
                .amplitudes()
                .map(|(n, c)| c * wavefunctions::psi_raw(n, x))
                .sum();
            v.norm_sqr()
        },
        &QuadratureSpec::real_line(1e-9),
    )?;
    checks.push(check(
        "synthesized NLCS profile unit norm",
        (q.value - 1.0).abs(),
        1e-6,
    ));

    let base = synthesize_position(&build_nlcs(Complex64::new(0.0, 0.0), 16), &[0.25, 1.5]);
    let direct = [psi(idx(3), 0.25), psi(idx(3), 1.5)];
    let mut worst = 0.0_f64;
    for (got, want) in base.iter().zip(direct) {
        worst = worst.max((got.re - want).abs().max(got.im.abs()));
    }
    checks.push(check("synthesis base case is psi_3", worst, 1e-15));

    Ok(checks)
}

fn statistics_suite() -> Result<Vec<CheckResult>> {
    let mut checks = Vec::new();

    let mut worst = 0.0_f64;
    for x in [0.25, 1.0, 4.0, 9.0, 16.0, 20.0] {
        let cf = statistics::nlcs_closed_forms(x)?;
        for state in [
            build_nlcs(Complex64::new(x.sqrt(), 0.0), DEFAULT_N_MAX),
            build_gk(Complex64::new(x.sqrt(), 0.0), 0.4, DEFAULT_N_MAX),
        ] {
            let m = statistics::moments(&state);
            worst = worst
                .max(rel(m.mean_n, cf.mean_n))
                .max(rel(m.mean_n2, cf.mean_n2.unwrap()))
                .max(rel(statistics::mandel_q(&state), cf.mandel_q))
                .max(rel(statistics::g2(&state), cf.g2));
        }
    }
    checks.push(check("closed forms vs direct sums (NLCS, GK)", worst, 1e-10));

    let mut violation = 0.0_f64;
    let mut r = 0.1_f64;
    while r <= 20.0 + 1e-9 {
        let alpha = Complex64::new(r.sqrt(), 0.0);
        for s in [
            build_nlcs(alpha, DEFAULT_N_MAX),
            build_gk(alpha, 0.2, DEFAULT_N_MAX),
        ] {
            violation = violation
                .max(statistics::mandel_q(&s))
                .max(statistics::g2(&s) - 1.0);
        }
        r += 0.1;
    }
    checks.push(check(
        "sub-Poissonian (Q < 0) and antibunched (g2 < 1) on (0, 20]",
        violation.max(0.0),
        0.0,
    ));

    let even0 = statistics::cat_closed_forms(0.0, Parity::Even)?;
    let odd0 = statistics::cat_closed_forms(0.0, Parity::Odd)?;
    let anchor = (even0.mean_n - 4.0)
        .abs()
        .max((even0.mandel_q + 1.0).abs())
        .max((even0.g2 - 0.75).abs())
        .max((odd0.mean_n - 3.0).abs())
        .max((odd0.mandel_q + 1.0).abs())
        .max((odd0.g2 - 2.0 / 3.0).abs());
    checks.push(check("cat-state closed-form anchors at r = 0", anchor, 1e-12));

    let mut violation = 0.0_f64;
    let mut cat_mismatch = 0.0_f64;
    let mut r = 0.1_f64;
    while r <= 20.0 + 1e-9 {
        let alpha = Complex64::new(r.sqrt(), 0.0);
        for (s, parity) in [
            (build_even(alpha, DEFAULT_N_MAX), Parity::Even),
            (build_odd(alpha, DEFAULT_N_MAX), Parity::Odd),
        ] {
            violation = violation.max(statistics::mandel_q(&s));
            let cf = statistics::cat_closed_forms(r, parity)?;
            let m = statistics::moments(&s);
            cat_mismatch = cat_mismatch
                .max(rel(m.mean_n, cf.mean_n))
                .max(rel(statistics::mandel_q(&s), cf.mandel_q))
                .max(rel(statistics::g2(&s), cf.g2));
        }
        r += 0.1;
    }
    checks.push(check("cat-state Q < 0 on (0, 20] (direct route)", violation.max(0.0), 0.0));
    checks.push(report_row(
        "printed cat closed forms vs direct sums",
        cat_mismatch,
        if cat_mismatch >= 1e-8 {
            format!("DISCREPANCY: printed 0F5/1F6 forms deviate by {cat_mismatch:.3e} (>= 1e-8)")
        } else {
            format!("printed 0F5/1F6 forms agree to {cat_mismatch:.3e}; no discrepancy flagged")
        },
    ));

    let mut worst = 0.0_f64;
    for y in [1.0, 10.0] {
        let a = statistics::stats_from_normalization(y)?;
        let b = statistics::nlcs_closed_forms(y)?;
        worst = worst
            .max((a.mean_n - b.mean_n).abs() / b.mean_n)
            .max((a.mandel_q - b.mandel_q).abs() / b.mandel_q.abs())
            .max((a.g2 - b.g2).abs() / b.g2);
    }
    checks.push(check("normalization-derivative route agreement", worst, 1e-6));

    let mut worst = 0.0_f64;
    for r in [0.5, 1.0, 3.0] {
        let s = build_gk(Complex64::new(r, 0.0), 0.3, DEFAULT_N_MAX);
        worst = worst.max((statistics::gk_action_mean(&s) - r * r).abs() / (r * r));
    }
    checks.push(check("GK action identity <H~> = |z|^2", worst, 1e-10));

    let mut worst = 0.0_f64;
    for s in [
        build_nlcs(Complex64::new(2.0, 0.0), DEFAULT_N_MAX),
        build_even(Complex64::new(3.0, 0.0), DEFAULT_N_MAX),
    ] {
        let m = statistics::moments(&s);
        worst = worst.max((m.mean_n * m.mean_n - m.mean_n2).max(0.0));
        let total: f64 = statistics::photon_distribution(&s).values().sum();
        worst = worst.max((total - 1.0).abs());
    }
    checks.push(check("moment inequality and unit total probability", worst, 1e-10));

    Ok(checks)
}

fn completeness_suite() -> Result<Vec<CheckResult>> {
    let mut checks = Vec::new();
    let mut worst = 0.0_f64;
    for n in 3..=6u32 {
        let c = statistics::completeness_integral(idx(n))?;
        worst = worst.max(rel(c.numeric, c.gamma_form));
        if n == 3 {
            checks.push(report_row(
                "printed gamma factor at n = 3",
                c.numeric,
                "Gamma(n^2-4n+3) diverges at n = 3 while the quadrature is finite (1.5); \
                 suspected typo for Gamma((n-2)^2), which the numeric value confirms",
            ));
        } else if let Some(p) = c.paper_form {
            checks.push(report_row(
                format!("printed vs corrected gamma form, n = {n}"),
                rel(p, c.gamma_form),
                format!("printed form {p:.6e} vs projector-consistent {0:.6e}", c.gamma_form),
            ));
        }
    }
    checks.push(check(
        "weight integral equals Gamma((n-2)^2) Gamma(n+1)/4, n in [3,6]",
        worst,
        1e-8,
    ));
    Ok(checks)
}

fn pdm_suite(gamma_mass: f64) -> Result<Vec<CheckResult>> {
    let mut checks = Vec::new();
    let unit = MassProfile::rational(1.0)?;
    let profile = MassProfile::rational(gamma_mass)?;
    let g = grid(-5.0, 5.0, 501);
    let family: Vec<u32> = std::iter::once(0).chain(3..=8).collect();

    let mut worst = 0.0_f64;
    for &n in &family {
        for &y in &g {
            let a = pdm::pdm_psi(idx(n), &unit, y)?;
            let b = psi(idx(n), y);
            worst = worst.max((a - b).abs());
        }
    }
    checks.push(check("gamma_mass = 1 eigenfunction reduction", worst, 1e-10));

    let mut worst = 0.0_f64;
    for n in [4u32, 6] {
        let a = pdm::pdm_apply_a(idx(n), &unit, &g)?;
        let b = apply_a_differential(idx(n), &g)?;
        worst = worst.max(
            a.iter()
                .zip(&b)
                .map(|(x, y)| (x - y).abs())
                .fold(0.0_f64, f64::max),
        );
    }
    checks.push(check("gamma_mass = 1 ladder reduction", worst, 1e-10));

    let s = build_nlcs(Complex64::new(1.0, 0.5), DEFAULT_N_MAX);
    let reduced = pdm::pdm_state(&s, &unit, &g)?;
    let constant = synthesize_position(&s, &g);
    let worst = reduced
        .iter()
        .zip(&constant)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0_f64, f64::max);
    checks.push(check("gamma_mass = 1 synthesized-state reduction", worst, 1e-10));

    let mut worst = 0.0_f64;
    {
        let img = pdm::pdm_apply_a(idx(4), &profile, &g)?;
        let w = 2.0 * 3.0_f64.sqrt();
        let want: Vec<f64> = g
            .iter()
            .map(|&y| pdm::pdm_psi(idx(3), &profile, y).map(|v| w * v))
            .collect::<Result<_>>()?;
        worst = worst.max(max_norm_rel(&img, &want));
        let img = pdm::pdm_apply_adag(idx(3), &profile, &g)?;
        let want: Vec<f64> = g
            .iter()
            .map(|&y| pdm::pdm_psi(idx(4), &profile, y).map(|v| w * v))
            .collect::<Result<_>>()?;
        worst = worst.max(max_norm_rel(&img, &want));
        let img = pdm::pdm_apply_adag(idx(4), &profile, &g)?;
        let w5 = 5.0_f64.sqrt() * deformation_f(idx(5));
        let want: Vec<f64> = g
            .iter()
            .map(|&y| pdm::pdm_psi(idx(5), &profile, y).map(|v| w5 * v))
            .collect::<Result<_>>()?;
        worst = worst.max(max_norm_rel(&img, &want));
    }
    checks.push(check("PDM ladder contracts", worst, 1e-6));

    let mut worst = 0.0_f64;
    for (i, &n) in family.iter().enumerate() {
        for &m in &family[i..] {
            let delta = if n == m { 1.0 } else { 0.0 };
            worst = worst.max((pdm::pdm_overlap(idx(n), idx(m), &profile)? - delta).abs());
        }
    }
    checks.push(check("PDM orthonormality, n,m in {0,3..8}", worst, 1e-7));

    let mut worst = 0.0_f64;
    for &n in &family {
        for &y in g.iter().step_by(25) {
            worst = worst.max(pdm::pdm_schrodinger_residual(idx(n), &profile, y)?);
        }
    }
    checks.push(check("PDM Schroedinger residual", worst, 1e-6));

    let mut worst = 0.0_f64;
    for n in 4..=12u32 {
        for &y in g.iter().step_by(25) {
            let e = pdm::eta(&profile, y)?;
            worst = worst
                .max(phermite::recurrence_residual_down(idx(n), e)?)
                .max(phermite::recurrence_residual_up(idx(n), e)?);
        }
    }
    checks.push(check("recurrences under eta substitution", worst, 1e-9));

    let mut min_step = f64::INFINITY;
    let mut prev = pdm::eta(&profile, g[0])?;
    for &y in &g[1..] {
        let cur = pdm::eta(&profile, y)?;
        min_step = min_step.min(cur - prev);
        prev = cur;
    }
    checks.push(check(
        "eta strictly increasing at grid resolution",
        (-min_step).max(0.0),
        0.0,
    ));

    // the Fock-space coefficients are profile-independent, so photon
    // statistics carry over exactly; the quadrature norm of the synthesized
    // profile confirms the shared coefficients stay a unit vector over the
    // PDM eigenbasis
    let s = build_even(Complex64::new(2.0, 0.0), DEFAULT_N_MAX);
    let q = special::integrate(
        |y| {
            let m = profile.mass(y).unwrap_or(f64::NAN);
            let e = match pdm::eta(&profile, y) {
                Ok(v) => v,
                Err(_) => return f64::NAN,
            };
            let v: Complex64 = s
                .amplitudes()
                .map(|(n, c)| c * m.powf(0.25) * wavefunctions::psi_raw(n, e))
                .sum();
            v.norm_sqr()
        },
        &QuadratureSpec::real_line(1e-9),
    )?;
    checks.push(check(
        "PDM profile norm matches shared Fock coefficients",
        (q.value - 1.0).abs(),
        1e-6,
    ));

    Ok(checks)
}

pub fn run_suite(name: &str, seed: u64, gamma_mass: f64) -> Result<SuiteReport> {
    let mut rng = StdRng::seed_from_u64(seed);
    let checks = match name {
        "algebra" => algebra_suite()?,
        "special" => special_suite()?,
        "phermite" => phermite_suite(&mut rng)?,
        "wavefunctions" => wavefunctions_suite(&mut rng)?,
        "states" => states_suite()?,
        "statistics" => statistics_suite()?,
        "completeness" => completeness_suite()?,
        "pdm" => pdm_suite(gamma_mass)?,
        other => {
            return Err(Error::InvalidArgument(format!(
                "unknown suite '{other}'; available: {SUITE_NAMES:?}"
            )))
        }
    };
    Ok(suite_report(name, checks))
}

pub fn run_all(seed: u64, gamma_mass: f64) -> Result<VerifyReport> {
    let mut suites = Vec::new();
    for name in SUITE_NAMES {
        suites.push(run_suite(name, seed, gamma_mass)?);
    }
    let passed = suites.iter().all(|s| s.passed);
    Ok(VerifyReport {
        seed,
        gamma_mass,
        suites,
        passed,
    })
}

/// Applies a blanket tolerance override to every asserting check.
pub fn apply_tolerance_override(report: &mut VerifyReport, tol: f64) {
    for suite in &mut report.suites {
        for c in &mut suite.checks {
            if c.note.is_none() {
                c.tolerance = tol;
                c.passed = c.residual.is_finite() && c.residual <= tol;
            }
        }
        suite.passed = suite.checks.iter().all(|c| c.passed);
    }
    report.passed = report.suites.iter().all(|s| s.passed);
}
