//! Photon statistics of every state family by independent routes: direct
//! sums over amplitudes, the hypergeometric closed forms, and the
//! normalization-derivative formulas, plus the completeness-integral checks.
//!
//! Direct sums are the source of truth; closed forms are verification
//! targets whose mismatch is recorded in the report, never reconciled.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::fock::{self, FockIndex};
use crate::special::{self, HypergeometricSpec, QuadratureSpec};
use crate::states::{Family, StateVector};

/// P(n) = |c_n|^2.
pub fn photon_distribution(state: &StateVector) -> BTreeMap<u32, f64> {
    state.amplitudes().map(|(n, c)| (n, c.norm_sqr())).collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moments {
    pub mean_n: f64,
    pub mean_n2: f64,
}

pub fn moments(state: &StateVector) -> Moments {
    let mut mean_n = 0.0;
    let mut mean_n2 = 0.0;
    for (n, c) in state.amplitudes() {
        let p = c.norm_sqr();
        mean_n += n as f64 * p;
        mean_n2 += (n as f64) * (n as f64) * p;
    }
    Moments { mean_n, mean_n2 }
}

/// Q = <n^2>/<n> - <n> - 1. The mean cannot vanish on states supported at
/// n >= 3.
pub fn mandel_q(state: &StateVector) -> f64 {
    let m = moments(state);
    m.mean_n2 / m.mean_n - m.mean_n - 1.0
}

/// g2(0) = (<n^2> - <n>)/<n>^2.
pub fn g2(state: &StateVector) -> f64 {
    let m = moments(state);
    (m.mean_n2 - m.mean_n) / (m.mean_n * m.mean_n)
}

/// The four hypergeometric ratios for nonlinear coherent and Gazeau-Klauder
/// states at x = |alpha|^2 (resp. |z|^2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormStats {
    pub mean_n: f64,
    pub mean_n2: Option<f64>,
    pub mandel_q: f64,
    pub g2: f64,
}

fn f13(a: f64, b: [f64; 3], x: f64) -> Result<f64> {
    special::pfq(&HypergeometricSpec::new(&[a], &b, x)?)
}

/// mean = 3 1F3(4;3,3,4;x)/1F3(3;3,3,4;x), <n^2> = 9 1F3(4;3,3,3;x)/1F3(3;3,3,4;x),
/// with Q and g2 assembled exactly as printed.
pub fn nlcs_closed_forms(abs_alpha_sq: f64) -> Result<ClosedFormStats> {
    if abs_alpha_sq < 0.0 {
        return Err(Error::Domain(abs_alpha_sq, "|alpha|^2 must be >= 0"));
    }
    let x = abs_alpha_sq;
    let f0 = f13(3.0, [3.0, 3.0, 4.0], x)?;
    let f2 = f13(4.0, [3.0, 3.0, 4.0], x)?;
    let f1 = f13(4.0, [3.0, 3.0, 3.0], x)?;
    Ok(ClosedFormStats {
        mean_n: 3.0 * f2 / f0,
        mean_n2: Some(9.0 * f1 / f0),
        mandel_q: 3.0 * (f1 / f2 - f2 / f0) - 1.0,
        g2: (f0 / f2) * (f1 / f2 - 1.0 / 3.0),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// The printed 0F5/1F6 ratios for the cat states, evaluated at argument
/// x/64 exactly as displayed.
pub fn cat_closed_forms(abs_alpha_sq: f64, parity: Parity) -> Result<ClosedFormStats> {
    if abs_alpha_sq < 0.0 {
        return Err(Error::Domain(abs_alpha_sq, "|alpha|^2 must be >= 0"));
    }
    let u = abs_alpha_sq / 64.0;
    let f05 = |b: [f64; 5]| -> Result<f64> {
        special::pfq(&HypergeometricSpec::new(&[], &b, u)?)
    };
    let f16 = |a: f64, b: [f64; 6]| -> Result<f64> {
        special::pfq(&HypergeometricSpec::new(&[a], &b, u)?)
    };
    let (pref, den, num, m2) = match parity {
        Parity::Even => (
            4.0,
            f05([2.0, 3.0, 1.5, 2.5, 2.5])?,
            f05([2.0, 2.0, 1.5, 2.5, 2.5])?,
            f16(3.0, [2.0, 2.0, 2.0, 1.5, 2.5, 2.5])?,
        ),
        Parity::Odd => (
            3.0,
            f05([2.0, 2.0, 0.5, 1.5, 2.5])?,
            f05([2.0, 2.0, 0.5, 1.5, 1.5])?,
            f16(2.5, [2.0, 2.0, 0.5, 1.5, 1.5, 1.5])?,
        ),
    };
    Ok(ClosedFormStats {
        mean_n: pref * num / den,
        mean_n2: None,
        mandel_q: pref * (m2 / num - num / den) - 1.0,
        g2: (den / num) * (m2 / num - 1.0 / pref),
    })
}

/// The normalization sum N(y) = sum_p 12 y^p / (p!(p+2)!(p+3)!) whose
/// inverse square root normalizes the NLCS and GK families; the quantity the
/// derivative formulas differentiate.
pub fn normalization_sum(y: f64) -> f64 {
    let mut term = 1.0_f64;
    let mut sum = 1.0_f64;
    for p in 0..500u32 {
        let pf = p as f64;
        term *= y / ((pf + 1.0) * (pf + 3.0) * (pf + 4.0));
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

/// Statistics recovered from derivatives of the normalization sum:
/// <n> = y N'/N + 3 and the matching printed Q and g2 expressions,
/// differentiated by Richardson-extrapolated central differences.
pub fn stats_from_normalization(y: f64) -> Result<ClosedFormStats> {
    if y <= 0.0 {
        return Err(Error::Domain(y, "derivative formulas need y > 0"));
    }
    let h = (1e-4 * y).max(1e-5);
    let d1 = |h: f64| (normalization_sum(y + h) - normalization_sum(y - h)) / (2.0 * h);
    let d2 = |h: f64| {
        (normalization_sum(y + h) - 2.0 * normalization_sum(y) + normalization_sum(y - h))
            / (h * h)
    };
    let s = normalization_sum(y);
    let sp = (4.0 * d1(0.5 * h) - d1(h)) / 3.0;
    let spp = (4.0 * d2(0.5 * h) - d2(h)) / 3.0;

    let mean_n = y * sp / s + 3.0;
    let a = (y * y * spp + 4.0 * y * sp) / (y * sp + 3.0 * s);
    let mandel_q = a - y * sp / s - 1.0;
    let g2 = (s / (y * sp + 3.0 * s)) * (a + 2.0);
    Ok(ClosedFormStats {
        mean_n,
        mean_n2: None,
        mandel_q,
        g2,
    })
}

/// Full per-state report: the direct-route quantities, the family's closed
/// forms where the family has them, and their maximum relative discrepancy.
#[derive(Debug, Clone)]
pub struct StatisticsReport {
    pub pn: BTreeMap<u32, f64>,
    pub mean_n: f64,
    pub mean_n2: f64,
    pub mandel_q: f64,
    pub g2: f64,
    pub closed_form: Option<ClosedFormStats>,
    pub discrepancy: Option<f64>,
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(f64::MIN_POSITIVE)
}

pub fn report(state: &StateVector) -> Result<StatisticsReport> {
    state.check_normalized(1e-10)?;
    let pn = photon_distribution(state);
    let m = moments(state);
    let q = mandel_q(state);
    let g = g2(state);

    let closed_form = match state.family() {
        Family::Nlcs { alpha } => Some(nlcs_closed_forms(alpha.norm_sqr())?),
        Family::Gk { z, .. } => Some(nlcs_closed_forms(z.norm_sqr())?),
        Family::Even { alpha } => Some(cat_closed_forms(alpha.norm_sqr(), Parity::Even)?),
        Family::Odd { alpha } => Some(cat_closed_forms(alpha.norm_sqr(), Parity::Odd)?),
        Family::Gis { .. } | Family::Raw => None,
    };
    let discrepancy = closed_form.map(|cf| {
        let mut d = rel(m.mean_n, cf.mean_n).max(rel(q, cf.mandel_q)).max(rel(g, cf.g2));
        if let Some(m2) = cf.mean_n2 {
            d = d.max(rel(m.mean_n2, m2));
        }
        d
    });
    Ok(StatisticsReport {
        pn,
        mean_n: m.mean_n,
        mean_n2: m.mean_n2,
        mandel_q: q,
        g2: g,
        closed_form,
        discrepancy,
    })
}

/// <H~> = sum e_n P(n); equal to |z|^2 on Gazeau-Klauder states by the
/// telescoping action identity.
pub fn gk_action_mean(state: &StateVector) -> f64 {
    state
        .amplitudes()
        .map(|(n, c)| fock::e_raw(n) * c.norm_sqr())
        .sum()
}

/// The weight integral behind the resolution of identity, checked in three
/// forms. `numeric` is the quadrature of x^{n^2-3n+4} K_{|n^2-5n+3|}(2x)
/// over (0, inf); `gamma_form` is Gamma((n-2)^2) Gamma(n+1) / 4, the value
/// the Mellin transform gives and the value the projector identity needs;
/// `paper_form` is the printed Gamma(n^2-4n+3) Gamma(n+1) / 4, absent at
/// n = 3 where its leading gamma diverges.
#[derive(Debug, Clone, Copy)]
pub struct CompletenessCheck {
    pub numeric: f64,
    pub gamma_form: f64,
    pub paper_form: Option<f64>,
}

pub fn completeness_integral(n: FockIndex) -> Result<CompletenessCheck> {
    let nv = n.value() as i64;
    if nv < 3 {
        return Err(Error::InvalidArgument(format!(
            "completeness integral defined for n >= 3, got {nv}"
        )));
    }
    let power = (nv * nv - 3 * nv + 4) as f64;
    let order = (nv * nv - 5 * nv + 3).unsigned_abs() as f64;

    let integrand = move |x: f64| -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        // assembled in log space; the scaled Bessel keeps the small-x growth
        // representable and the leading-order form covers where it cannot
        let ln_k = match special::bessel_k_scaled(order, 2.0 * x) {
            Ok(v) if v.is_finite() && v > 0.0 => v.ln() - 2.0 * x,
            _ => {
                if order == 0.0 {
                    return 0.0;
                }
                0.5_f64.ln() + special::log_gamma(order).unwrap_or(f64::NEG_INFINITY)
                    - order * x.ln()
            }
        };
        (power * x.ln() + ln_k).exp()
    };
    let quad = special::integrate(integrand, &QuadratureSpec::semi_infinite(1e-11))?;

    let lg = |v: f64| special::log_gamma(v).expect("positive gamma argument");
    let gamma_form = 0.25 * (lg(((nv - 2) * (nv - 2)) as f64) + lg((nv + 1) as f64)).exp();
    let printed = nv * nv - 4 * nv + 3;
    let paper_form = if printed > 0 {
        Some(0.25 * (lg(printed as f64) + lg((nv + 1) as f64)).exp())
    } else {
        None
    };
    Ok(CompletenessCheck {
        numeric: quad.value,
        gamma_form,
        paper_form,
    })
}
