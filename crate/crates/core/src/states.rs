//! Construction of the coherent-state families as normalized amplitude
//! vectors over the broken Fock set: generalized intelligent states,
//! nonlinear coherent states, Gazeau-Klauder states and the even/odd cat
//! states, plus position-space synthesis.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{self, FockIndex};
use crate::wavefunctions;

/// Hard cap on the adaptive truncation.
pub const DEFAULT_N_MAX: u32 = 512;

// stop once |c_n|^2 falls below 1e-30 of the running norm for 5 straight
// indices; the factorial-cubed decay then leaves a tail far below the 1e-14
// budget and keeps ladder residuals at the 1e-12 level
const TAIL_LOG2_CUTOFF: f64 = -69.07755278982137; // ln(1e-30)
const TAIL_STREAK: u32 = 5;

/// Which family a state was built as, with its construction parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    Gis { alpha: Complex64, lambda: Complex64 },
    Nlcs { alpha: Complex64 },
    Gk { z: Complex64, gamma_phase: f64 },
    Even { alpha: Complex64 },
    Odd { alpha: Complex64 },
    Raw,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Gis { .. } => "gis",
            Family::Nlcs { .. } => "nlcs",
            Family::Gk { .. } => "gk",
            Family::Even { .. } => "even",
            Family::Odd { .. } => "odd",
            Family::Raw => "raw",
        }
    }
}

/// Sparse complex amplitude map over the allowed Fock indices.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: BTreeMap<u32, Complex64>,
    n_max: u32,
    truncation_tail: f64,
    family: Family,
}

impl StateVector {
    /// Builds an untagged state from raw (index, amplitude) pairs. Indices
    /// 1 and 2 are rejected; exact zeros are dropped.
    pub fn raw(amps: impl IntoIterator<Item = (u32, Complex64)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (n, c) in amps {
            if n == 1 || n == 2 {
                return Err(Error::InvalidFockIndex(n));
            }
            if c != Complex64::new(0.0, 0.0) {
                *map.entry(n).or_insert(Complex64::new(0.0, 0.0)) += c;
            }
        }
        map.retain(|_, c| *c != Complex64::new(0.0, 0.0));
        let n_max = map.keys().next_back().copied().unwrap_or(0);
        Ok(Self {
            amplitudes: map,
            n_max,
            truncation_tail: 0.0,
            family: Family::Raw,
        })
    }

    /// Unit amplitude on a single basis index.
    pub fn unit(n: u32) -> Result<Self> {
        FockIndex::new(n)?;
        Self::raw([(n, Complex64::new(1.0, 0.0))])
    }

    fn with_family(mut self, family: Family, truncation_tail: f64) -> Self {
        self.family = family;
        self.truncation_tail = truncation_tail;
        self
    }

    pub fn amplitude(&self, n: u32) -> Complex64 {
        self.amplitudes
            .get(&n)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn amplitudes(&self) -> impl Iterator<Item = (u32, Complex64)> + '_ {
        self.amplitudes.iter().map(|(&n, &c)| (n, c))
    }

    pub fn support_len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn n_max(&self) -> u32 {
        self.n_max
    }

    pub fn truncation_tail(&self) -> f64 {
        self.truncation_tail
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn norm_sq(&self) -> f64 {
        self.amplitudes.values().map(|c| c.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// <self|other>
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.amplitudes
            .iter()
            .map(|(n, c)| c.conj() * other.amplitude(*n))
            .sum()
    }

    pub fn check_normalized(&self, tol: f64) -> Result<()> {
        let dev = (self.norm_sq() - 1.0).abs();
        if dev > tol {
            Err(Error::Unnormalized(dev))
        } else {
            Ok(())
        }
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        let mut out = self.clone();
        for v in out.amplitudes.values_mut() {
            *v *= c;
        }
        out.family = Family::Raw;
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut map = self.amplitudes.clone();
        for (n, c) in other.amplitudes() {
            *map.entry(n).or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        let n_max = map.keys().next_back().copied().unwrap_or(0);
        Self {
            amplitudes: map,
            n_max,
            truncation_tail: 0.0,
            family: Family::Raw,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scaled(Complex64::new(-1.0, 0.0)))
    }

    fn normalized(mut self) -> Self {
        let norm = self.norm();
        if norm > 0.0 {
            for c in self.amplitudes.values_mut() {
                *c /= norm;
            }
        }
        self
    }

    /// Serializable dump in the wire format consumed by the CLI.
    pub fn dump(&self) -> StateDump {
        let mut parameters = BTreeMap::new();
        match &self.family {
            Family::Gis { alpha, lambda } => {
                parameters.insert("alpha_re".into(), alpha.re);
                parameters.insert("alpha_im".into(), alpha.im);
                parameters.insert("lambda_re".into(), lambda.re);
                parameters.insert("lambda_im".into(), lambda.im);
            }
            Family::Nlcs { alpha } | Family::Even { alpha } | Family::Odd { alpha } => {
                parameters.insert("alpha_re".into(), alpha.re);
                parameters.insert("alpha_im".into(), alpha.im);
            }
            Family::Gk { z, gamma_phase } => {
                parameters.insert("z_re".into(), z.re);
                parameters.insert("z_im".into(), z.im);
                parameters.insert("gamma_phase".into(), *gamma_phase);
            }
            Family::Raw => {}
        }
        StateDump {
            family: self.family.name().to_string(),
            parameters,
            n_max: self.n_max,
            amplitudes: self.amplitudes().map(|(n, c)| (n, c.re, c.im)).collect(),
            truncation_tail: self.truncation_tail,
        }
    }
}

/// JSON wire format of a state: {family, parameters, n_max,
/// amplitudes: [[n, re, im], ...], truncation_tail}.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StateDump {
    pub family: String,
    pub parameters: BTreeMap<String, f64>,
    pub n_max: u32,
    pub amplitudes: Vec<(u32, f64, f64)>,
    pub truncation_tail: f64,
}

/// Shared closed-form builder: amplitudes |c_k| = exp(L_k) relative to the
/// running peak, with per-index phases. `step` returns the log-magnitude
/// increment and phase for the next index.
struct LogSeries {
    indices: Vec<u32>,
    log_mags: Vec<f64>,
    phases: Vec<f64>,
}

fn accumulate_log_series(
    base_index: u32,
    index_step: u32,
    n_max: u32,
    mut log_increment: impl FnMut(u32) -> f64,
    mut phase_of: impl FnMut(u32) -> f64,
) -> LogSeries {
    let mut indices = vec![base_index];
    let mut log_mags = vec![0.0_f64];
    let mut phases = vec![phase_of(base_index)];
    let mut peak = 0.0_f64;
    let mut streak = 0;
    let mut n = base_index;
    while n + index_step <= n_max {
        n += index_step;
        let l = log_mags.last().unwrap() + log_increment(n);
        indices.push(n);
        log_mags.push(l);
        phases.push(phase_of(n));
        if l > peak {
            peak = l;
            streak = 0;
        } else if 2.0 * (l - peak) < TAIL_LOG2_CUTOFF {
            streak += 1;
            if streak >= TAIL_STREAK {
                break;
            }
        } else {
            streak = 0;
        }
    }
    LogSeries {
        indices,
        log_mags,
        phases,
    }
}

fn state_from_log_series(series: LogSeries, family: Family) -> StateVector {
    let peak = series
        .log_mags
        .iter()
        .cloned()
        .fold(f64::NEG_INFINITY, f64::max);
    let weights: Vec<f64> = series.log_mags.iter().map(|l| (l - peak).exp()).collect();
    let total: f64 = weights.iter().map(|w| w * w).sum();
    let tail = {
        let m = weights.len();
        if m >= 2 && weights[m - 1] > 0.0 {
            let rho = (weights[m - 1] / weights[m - 2]).powi(2);
            if rho < 1.0 {
                weights[m - 1].powi(2) * rho / (1.0 - rho) / total
            } else {
                weights[m - 1].powi(2) / total
            }
        } else {
            0.0
        }
    };
    let scale = total.sqrt();
    let amps = series
        .indices
        .iter()
        .zip(weights.iter().zip(series.phases.iter()))
        .map(|(&n, (&w, &ph))| (n, Complex64::from_polar(w / scale, ph)));
    StateVector::raw(amps)
        .expect("valid indices by construction")
        .with_family(family, tail)
}

/// Nonlinear coherent state: c_n proportional to
/// alpha^{n-3} / (sqrt(tilde-n!) tilde-f(n)!), n >= 3.
pub fn build_nlcs(alpha: Complex64, n_max: u32) -> StateVector {
    let family = Family::Nlcs { alpha };
    if alpha == Complex64::new(0.0, 0.0) {
        return StateVector::unit(3).unwrap().with_family(family, 0.0);
    }
    let (ln_r, theta) = (alpha.norm().ln(), alpha.arg());
    let series = accumulate_log_series(
        3,
        1,
        n_max.max(3),
        |n| ln_r - 0.5 * ((n as f64).ln() + fock::f_sq_raw(n).ln()),
        |n| (n as f64 - 3.0) * theta,
    );
    state_from_log_series(series, family)
}

/// Gazeau-Klauder state: NLCS magnitudes with the temporal phases
/// exp(-i gamma e_n) attached (e_3 = 0 anchors the overall phase).
pub fn build_gk(z: Complex64, gamma_phase: f64, n_max: u32) -> StateVector {
    let family = Family::Gk { z, gamma_phase };
    if z == Complex64::new(0.0, 0.0) {
        return StateVector::unit(3).unwrap().with_family(family, 0.0);
    }
    let (ln_r, theta) = (z.norm().ln(), z.arg());
    let series = accumulate_log_series(
        3,
        1,
        n_max.max(3),
        |n| ln_r - 0.5 * ((n as f64).ln() + fock::f_sq_raw(n).ln()),
        |n| (n as f64 - 3.0) * theta - gamma_phase * fock::e_raw(n),
    );
    state_from_log_series(series, family)
}

/// Parameters of a generalized intelligent state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GisParameters {
    pub alpha: Complex64,
    pub lambda: Complex64,
}

/// Generalized intelligent state: the eigenvalue problem
/// [(1-lambda) A+ + (1+lambda) A] |psi> = 2 alpha |psi> solved by the
/// forward amplitude recursion seeded at c_3 (the innermost rung of the
/// equivalent continued fraction). lambda = 1 collapses coefficient-wise to
/// the nonlinear coherent state and is delegated to that builder.
pub fn build_gis(params: GisParameters, n_max: u32) -> Result<StateVector> {
    let GisParameters { alpha, lambda } = params;
    let one = Complex64::new(1.0, 0.0);
    if lambda == -one {
        return Err(Error::InvalidArgument(
            "lambda = -1 annihilates the A coefficient; no intelligent state exists".into(),
        ));
    }
    let family = Family::Gis { alpha, lambda };
    if lambda == one {
        let nlcs = build_nlcs(alpha, n_max);
        let tail = nlcs.truncation_tail();
        return Ok(nlcs.with_family(family, tail));
    }

    let n_max = n_max.max(4);
    let mut indices = vec![3u32];
    let mut amps = vec![one];
    let two_alpha = 2.0 * alpha;
    let one_plus = one + lambda;
    let one_minus = one - lambda;
    // c_4 from the n = 3 row, where f(3) = 0 removes the lower neighbour
    let step4 = 2.0 * fock::f_raw(4);
    indices.push(4);
    amps.push(two_alpha / (one_plus * step4));

    let mut norm_sq = amps[0].norm_sqr() + amps[1].norm_sqr();
    let mut streak = 0;
    let mut n = 4u32;
    while n < n_max {
        let prev = amps[amps.len() - 2];
        let cur = amps[amps.len() - 1];
        let down = (n as f64).sqrt() * fock::f_raw(n);
        let up = ((n + 1) as f64).sqrt() * fock::f_raw(n + 1);
        let next = (two_alpha * cur - one_minus * down * prev) / (one_plus * up);
        n += 1;
        indices.push(n);
        amps.push(next);
        let mag2 = next.norm_sqr();
        norm_sq += mag2;
        if mag2 < 1e-30 * norm_sq {
            streak += 1;
            if streak >= TAIL_STREAK {
                break;
            }
        } else {
            streak = 0;
        }
        // exact power-of-two rescale keeps the recursion finite for huge alpha
        if mag2 > 1e280 {
            let s = 2.0_f64.powi(-512);
            for a in amps.iter_mut() {
                *a *= s;
            }
            norm_sq *= s * s;
        }
    }

    let tail = {
        let m = amps.len();
        let last = amps[m - 1].norm_sqr();
        let prev = amps[m - 2].norm_sqr();
        if last > 0.0 && prev > 0.0 && last < prev {
            let rho = last / prev;
            last * rho / (1.0 - rho) / norm_sq
        } else {
            last / norm_sq.max(f64::MIN_POSITIVE)
        }
    };
    Ok(StateVector::raw(indices.into_iter().zip(amps))?
        .normalized()
        .with_family(family, tail))
}

/// Even cat state: eigenstate of A^2 supported on {4, 6, 8, ...} with
/// c_{2n} proportional to alpha^{n-2} / (sqrt((2n)~!!) tilde-F(2n-2)!!).
pub fn build_even(alpha: Complex64, n_max: u32) -> StateVector {
    let family = Family::Even { alpha };
    if alpha == Complex64::new(0.0, 0.0) {
        return StateVector::unit(4).unwrap().with_family(family, 0.0);
    }
    let (ln_r, theta) = (alpha.norm().ln(), alpha.arg());
    let series = accumulate_log_series(
        4,
        2,
        n_max.max(5),
        |m| ln_r - 0.5 * (m as f64).ln() - fock::cat_f(m - 2).ln(),
        |m| ((m - 4) / 2) as f64 * theta,
    );
    state_from_log_series(series, family)
}

/// Odd cat state: eigenstate of A^2 supported on {3, 5, 7, ...} with
/// c_{2n+1} proportional to alpha^{n-1} / (sqrt((2n+1)~!!) tilde-F(2n-1)!!).
pub fn build_odd(alpha: Complex64, n_max: u32) -> StateVector {
    let family = Family::Odd { alpha };
    if alpha == Complex64::new(0.0, 0.0) {
        return StateVector::unit(3).unwrap().with_family(family, 0.0);
    }
    let (ln_r, theta) = (alpha.norm().ln(), alpha.arg());
    let series = accumulate_log_series(
        3,
        2,
        n_max.max(5),
        |m| ln_r - 0.5 * (m as f64).ln() - fock::cat_f(m - 2).ln(),
        |m| ((m - 3) / 2) as f64 * theta,
    );
    state_from_log_series(series, family)
}

/// Unitary time step of a Gazeau-Klauder state: multiplies c_n by
/// exp(-i e_n t), which coincides amplitude-for-amplitude with rebuilding at
/// the shifted phase parameter.
pub fn gk_evolve(state: &StateVector, t: f64) -> Result<StateVector> {
    let (z, gamma_phase) = match state.family() {
        Family::Gk { z, gamma_phase } => (*z, *gamma_phase),
        other => {
            return Err(Error::FamilyMismatch {
                expected: "gk",
                found: other.name(),
            })
        }
    };
    let tail = state.truncation_tail();
    let amps = state
        .amplitudes()
        .map(|(n, c)| (n, c * Complex64::new(0.0, -fock::e_raw(n) * t).exp()));
    Ok(StateVector::raw(amps)?.with_family(
        Family::Gk {
            z,
            gamma_phase: gamma_phase + t,
        },
        tail,
    ))
}

/// Position-space profile: Psi(x) = sum_n c_n psi_n(x) on the given grid.
pub fn synthesize_position(state: &StateVector, grid: &[f64]) -> Vec<Complex64> {
    grid.iter()
        .map(|&x| {
            state
                .amplitudes()
                .map(|(n, c)| c * wavefunctions::psi_raw(n, x))
                .sum()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{apply_ladder, LadderKind};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn eigen_residual_a(state: &StateVector, alpha: Complex64) -> f64 {
        let img = apply_ladder(LadderKind::DeformedA, state, 0.0).unwrap();
        img.sub(&state.scaled(alpha)).norm()
    }

    #[test]
    fn nlcs_at_zero_is_base_state() {
        let s = build_nlcs(c(0.0, 0.0), DEFAULT_N_MAX);
        assert_eq!(s.support_len(), 1);
        assert!((s.amplitude(3).re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn nlcs_coefficient_ratio() {
        let s = build_nlcs(c(1.0, 0.0), DEFAULT_N_MAX);
        let ratio = s.amplitude(4) / s.amplitude(3);
        let expect = 1.0 / (2.0 * 3.0_f64.sqrt());
        assert!((ratio.re - expect).abs() < 1e-14 && ratio.im.abs() < 1e-16);
    }

    #[test]
    fn nlcs_normalized_and_eigenstate() {
        for alpha in [c(2.0, 0.0), c(1.1, -2.3), c(0.0, 5.0)] {
            let s = build_nlcs(alpha, DEFAULT_N_MAX);
            assert!((s.norm_sq() - 1.0).abs() < 1e-12);
            assert!(s.truncation_tail() < 1e-14);
            assert!(eigen_residual_a(&s, alpha) < 1e-10, "alpha = {alpha}");
        }
    }

    #[test]
    fn gis_rejects_lambda_minus_one() {
        assert!(build_gis(
            GisParameters {
                alpha: c(1.0, 0.0),
                lambda: c(-1.0, 0.0)
            },
            64
        )
        .is_err());
    }

    #[test]
    fn gis_collapses_to_nlcs_at_lambda_one() {
        let alpha = c(2.0, 0.0);
        let gis = build_gis(
            GisParameters {
                alpha,
                lambda: c(1.0, 0.0),
            },
            DEFAULT_N_MAX,
        )
        .unwrap();
        let nlcs = build_nlcs(alpha, DEFAULT_N_MAX);
        assert_eq!(gis.support_len(), nlcs.support_len());
        for (n, a) in gis.amplitudes() {
            assert_eq!(a, nlcs.amplitude(n), "n = {n}");
        }
    }

    #[test]
    fn gis_satisfies_eigenvalue_relation() {
        for (ar, lr) in [(1.0, 0.5), (2.0, 0.3), (1.0, 2.0)] {
            let alpha = c(ar, 0.0);
            let lambda = c(lr, 0.0);
            let s = build_gis(GisParameters { alpha, lambda }, DEFAULT_N_MAX).unwrap();
            let a = apply_ladder(LadderKind::DeformedA, &s, 0.0).unwrap();
            let ad = apply_ladder(LadderKind::DeformedADagger, &s, 0.0).unwrap();
            let lhs = ad
                .scaled(c(1.0, 0.0) - lambda)
                .add(&a.scaled(c(1.0, 0.0) + lambda));
            let res = lhs.sub(&s.scaled(2.0 * alpha)).norm();
            assert!(res < 1e-8, "alpha {ar} lambda {lr}: {res:.3e}");
        }
    }

    #[test]
    fn gis_at_zero_alpha_alternating_support() {
        let s = build_gis(
            GisParameters {
                alpha: c(0.0, 0.0),
                lambda: c(0.5, 0.0),
            },
            DEFAULT_N_MAX,
        )
        .unwrap();
        assert_eq!(s.amplitude(4), c(0.0, 0.0));
        assert!(s.amplitude(3).norm() > 0.5); // |3>-dominant
        let a = apply_ladder(LadderKind::DeformedA, &s, 0.0).unwrap();
        let ad = apply_ladder(LadderKind::DeformedADagger, &s, 0.0).unwrap();
        let res = ad
            .scaled(c(0.5, 0.0))
            .add(&a.scaled(c(1.5, 0.0)))
            .norm();
        assert!(res < 1e-8, "{res:.3e}");
    }

    #[test]
    fn gk_at_zero_is_base_state() {
        let s = build_gk(c(0.0, 0.0), 0.7, DEFAULT_N_MAX);
        assert_eq!(s.support_len(), 1);
        assert!((s.amplitude(3).re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn gk_evolve_at_zero_time_is_identity() {
        let s = build_gk(c(1.0, 0.3), 0.2, DEFAULT_N_MAX);
        let evolved = gk_evolve(&s, 0.0).unwrap();
        for (n, a) in s.amplitudes() {
            assert_eq!(a, evolved.amplitude(n), "n = {n}");
        }
    }

    #[test]
    fn gk_matches_nlcs_at_zero_phase() {
        let z = c(1.3, 0.4);
        let gk = build_gk(z, 0.0, DEFAULT_N_MAX);
        let nlcs = build_nlcs(z, DEFAULT_N_MAX);
        for (n, a) in gk.amplitudes() {
            assert!((a - nlcs.amplitude(n)).norm() < 1e-15, "n = {n}");
        }
    }

    #[test]
    fn gk_magnitudes_phase_independent() {
        let a = build_gk(c(1.5, 0.0), 0.0, DEFAULT_N_MAX);
        let b = build_gk(c(1.5, 0.0), 0.3, DEFAULT_N_MAX);
        for (n, v) in a.amplitudes() {
            assert!((v.norm() - b.amplitude(n).norm()).abs() < 1e-15, "n = {n}");
        }
    }

    #[test]
    fn gk_evolution_is_phase_bookkeeping() {
        let z = c(1.0, 0.0);
        let s = build_gk(z, 0.2, DEFAULT_N_MAX);
        let evolved = gk_evolve(&s, 0.5).unwrap();
        let rebuilt = build_gk(z, 0.7, DEFAULT_N_MAX);
        for (n, a) in evolved.amplitudes() {
            assert!((a - rebuilt.amplitude(n)).norm() < 1e-14, "n = {n}");
            assert!((a.norm() - s.amplitude(n).norm()).abs() < 1e-15);
        }
        match evolved.family() {
            Family::Gk { gamma_phase, .. } => assert!((gamma_phase - 0.7).abs() < 1e-15),
            _ => panic!("family lost"),
        }
    }

    #[test]
    fn gk_evolve_rejects_other_families() {
        let s = build_nlcs(c(1.0, 0.0), 64);
        assert!(gk_evolve(&s, 0.1).is_err());
    }

    #[test]
    fn cat_states_at_zero_alpha() {
        let even = build_even(c(0.0, 0.0), DEFAULT_N_MAX);
        assert_eq!(even.support_len(), 1);
        assert!((even.amplitude(4).re - 1.0).abs() < 1e-15);
        let odd = build_odd(c(0.0, 0.0), DEFAULT_N_MAX);
        assert_eq!(odd.support_len(), 1);
        assert!((odd.amplitude(3).re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn cat_states_support_parity_and_orthogonality() {
        let even = build_even(c(2.0, 0.0), DEFAULT_N_MAX);
        let odd = build_odd(c(2.0, 0.0), DEFAULT_N_MAX);
        assert!(even.amplitudes().all(|(n, _)| n % 2 == 0 && n >= 4));
        assert!(odd.amplitudes().all(|(n, _)| n % 2 == 1 && n >= 3));
        assert_eq!(even.inner(&odd), c(0.0, 0.0));
    }

    #[test]
    fn cat_states_are_a_squared_eigenstates() {
        for alpha in [c(2.0, 0.0), c(1.0, 1.0)] {
            for s in [
                build_even(alpha, DEFAULT_N_MAX),
                build_odd(alpha, DEFAULT_N_MAX),
            ] {
                assert!((s.norm_sq() - 1.0).abs() < 1e-12);
                let once = apply_ladder(LadderKind::DeformedA, &s, 0.0).unwrap();
                let twice = apply_ladder(LadderKind::DeformedA, &once, 0.0).unwrap();
                let res = twice.sub(&s.scaled(alpha)).norm();
                assert!(res < 1e-9, "alpha = {alpha}: {res:.3e}");
            }
        }
    }

    #[test]
    fn renamed_ratio_constants_reproduce_recursion() {
        // with A~_n! := B~_{n-1}! sqrt(tilde-n!) f~(n)!, the closed display
        // c_n = c_3 A~_n!/(sqrt(tilde-n!) f~(n)!) is the recursion verbatim
        let s = build_gis(
            GisParameters {
                alpha: c(1.0, 0.0),
                lambda: c(0.5, 0.0),
            },
            DEFAULT_N_MAX,
        )
        .unwrap();
        let c3 = s.amplitude(3);
        for (n, a) in s.amplitudes() {
            let b_tilde = a / c3;
            let tn = fock::tilde_factorial(FockIndex::new(n).unwrap()).unwrap();
            let fs = fock::f_tilde_sq(FockIndex::new(n).unwrap()).unwrap();
            let a_tilde = b_tilde * (0.5 * tn.ln_abs + 0.5 * fs.ln_abs).exp();
            let back = a_tilde * (-0.5 * tn.ln_abs - 0.5 * fs.ln_abs).exp();
            assert!((back - b_tilde).norm() <= 1e-13 * b_tilde.norm().max(1e-30), "n = {n}");
        }
    }

    #[test]
    fn dump_roundtrip_shape() {
        let s = build_gk(c(1.0, 0.5), 0.3, 64);
        let d = s.dump();
        assert_eq!(d.family, "gk");
        assert_eq!(d.parameters["gamma_phase"], 0.3);
        assert_eq!(d.amplitudes.len(), s.support_len());
        let json = serde_json::to_string(&d).unwrap();
        let back: StateDump = serde_json::from_str(&json).unwrap();
        assert_eq!(back.amplitudes, d.amplitudes);
    }
}
