//! Hermite and P-Hermite polynomial evaluation, analytic derivatives, and
//! the two recurrence identities that generate the ladder operators.
//!
//! P_n = H_n + 4n H_{n-2} + 4n(n-3) H_{n-4} for n >= 3, with P_0 = 1 so the
//! detached ground state fits the same eigenfunction template; degrees 1 and
//! 2 do not exist.

use crate::error::{Error, Result};
use crate::fock::FockIndex;

/// Physicists' Hermite polynomial H_n(x) by the forward three-term
/// recurrence (stable for the degrees and |x| used here).
pub fn hermite(n: u32, x: f64) -> f64 {
    match n {
        0 => 1.0,
        1 => 2.0 * x,
        _ => {
            let mut hm = 1.0;
            let mut h = 2.0 * x;
            for k in 1..n {
                let next = 2.0 * x * h - 2.0 * (k as f64) * hm;
                hm = h;
                h = next;
            }
            h
        }
    }
}

/// Which algebraic route evaluates P_n; the two must agree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalRoute {
    /// H_n + 4n H_{n-2} + 4n(n-3) H_{n-4} (H of negative index = 0)
    Definition,
    /// 2(1+2x^2) H_{n-2} + 8x H_{n-3}
    Reduced,
}

pub(crate) fn p_hermite_raw(n: u32, x: f64, route: EvalRoute) -> f64 {
    debug_assert!(n == 0 || n >= 3);
    if n == 0 {
        return 1.0;
    }
    match route {
        EvalRoute::Definition => {
            let nf = n as f64;
            let mut v = hermite(n, x) + 4.0 * nf * hermite(n - 2, x);
            if n >= 4 {
                v += 4.0 * nf * (nf - 3.0) * hermite(n - 4, x);
            }
            v
        }
        EvalRoute::Reduced => {
            2.0 * (1.0 + 2.0 * x * x) * hermite(n - 2, x) + 8.0 * x * hermite(n - 3, x)
        }
    }
}

/// P_n(x) for n = 0 or n >= 3.
pub fn p_hermite(n: FockIndex, x: f64, route: EvalRoute) -> f64 {
    p_hermite_raw(n.value(), x, route)
}

/// P'_n(x) = 4n(1+2x^2) H_{n-3}(x); zero for n = 0.
pub(crate) fn p_hermite_deriv_raw(n: u32, x: f64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    4.0 * n as f64 * (1.0 + 2.0 * x * x) * hermite(n - 3, x)
}

pub fn p_hermite_deriv(n: FockIndex, x: f64) -> f64 {
    p_hermite_deriv_raw(n.value(), x)
}

/// P''_n(x) = 4n [4x H_{n-3} + 2(n-3)(1+2x^2) H_{n-4}]; zero for n = 0.
pub(crate) fn p_hermite_second_deriv_raw(n: u32, x: f64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let nf = n as f64;
    let mut v = 4.0 * x * hermite(n - 3, x);
    if n >= 4 {
        v += 2.0 * (nf - 3.0) * (1.0 + 2.0 * x * x) * hermite(n - 4, x);
    }
    4.0 * nf * v
}

pub fn p_hermite_second_deriv(n: FockIndex, x: f64) -> f64 {
    p_hermite_second_deriv_raw(n.value(), x)
}

pub(crate) fn phi(x: f64) -> f64 {
    x + 4.0 * x / (1.0 + 2.0 * x * x)
}

pub(crate) fn curvature_b(x: f64) -> f64 {
    2.0 * (2.0 * x * x - 1.0) / (1.0 + 2.0 * x * x).powi(2)
}

fn rel_residual(terms: &[f64]) -> f64 {
    let sum: f64 = terms.iter().sum();
    let scale = terms
        .iter()
        .fold(0.0_f64, |m, t| m.max(t.abs()))
        .max(f64::MIN_POSITIVE);
    sum.abs() / scale
}

/// Residual of the downward recurrence
/// [n-1+B] P'_n + n(x-phi) P_n - 2n(n-3) P_{n-1} = 0, n >= 4,
/// relative to the largest term magnitude.
pub fn recurrence_residual_down(n: FockIndex, x: f64) -> Result<f64> {
    let n = n.value();
    if n < 4 {
        return Err(Error::InvalidArgument(format!(
            "downward recurrence requires n >= 4, got {n}"
        )));
    }
    let nf = n as f64;
    let t1 = (nf - 1.0 + curvature_b(x)) * p_hermite_deriv_raw(n, x);
    let t2 = nf * (x - phi(x)) * p_hermite_raw(n, x, EvalRoute::Definition);
    let t3 = -2.0 * nf * (nf - 3.0) * p_hermite_raw(n - 1, x, EvalRoute::Definition);
    Ok(rel_residual(&[t1, t2, t3]))
}

/// Residual of the upward recurrence
/// -[n+B] P'_n + n(x+phi) P_n - n P_{n+1} = 0, n >= 3.
pub fn recurrence_residual_up(n: FockIndex, x: f64) -> Result<f64> {
    let n = n.value();
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "upward recurrence requires n >= 3, got {n}"
        )));
    }
    let nf = n as f64;
    let t1 = -(nf + curvature_b(x)) * p_hermite_deriv_raw(n, x);
    let t2 = nf * (x + phi(x)) * p_hermite_raw(n, x, EvalRoute::Definition);
    let t3 = -nf * p_hermite_raw(n + 1, x, EvalRoute::Definition);
    Ok(rel_residual(&[t1, t2, t3]))
}

/// Evaluation context bounded by a maximum degree.
#[derive(Debug, Clone, Copy)]
pub struct PHermiteBasis {
    pub max_degree: u32,
}

impl PHermiteBasis {
    pub fn new(max_degree: u32) -> Self {
        Self { max_degree }
    }

    pub fn eval(&self, n: FockIndex, x: f64, route: EvalRoute) -> Result<f64> {
        if n.value() > self.max_degree {
            return Err(Error::InvalidArgument(format!(
                "degree {} exceeds basis bound {}",
                n,
                self.max_degree
            )));
        }
        Ok(p_hermite(n, x, route))
    }

    pub fn deriv(&self, n: FockIndex, x: f64) -> Result<f64> {
        if n.value() > self.max_degree {
            return Err(Error::InvalidArgument(format!(
                "degree {} exceeds basis bound {}",
                n,
                self.max_degree
            )));
        }
        Ok(p_hermite_deriv(n, x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(n: u32) -> FockIndex {
        FockIndex::new(n).unwrap()
    }

    #[test]
    fn hermite_low_orders() {
        assert_eq!(hermite(0, 1.7), 1.0);
        assert_eq!(hermite(3, 1.0), -4.0); // 8 - 12
        assert_eq!(hermite(4, 1.0), -20.0); // 16 - 48 + 12
    }

    #[test]
    fn p_hermite_pinned_values() {
        // P_3 = 8x^3 + 12x, P_4 = 16x^4 + 16x^2 - 4 (exact coefficients)
        for route in [EvalRoute::Definition, EvalRoute::Reduced] {
            assert_eq!(p_hermite(idx(3), 1.0, route), 20.0);
            assert_eq!(p_hermite(idx(4), 0.0, route), -4.0);
            assert_eq!(p_hermite(idx(4), 1.0, route), 28.0);
        }
        assert_eq!(p_hermite(idx(0), 2.5, EvalRoute::Definition), 1.0);
    }

    #[test]
    fn routes_agree_everywhere() {
        for n in (3..=20u32).chain([0]) {
            for k in 0..40 {
                let x = -5.0 + 0.25 * k as f64 + 0.013;
                let a = p_hermite_raw(n, x, EvalRoute::Definition);
                let b = p_hermite_raw(n, x, EvalRoute::Reduced);
                let scale = a.abs().max(b.abs()).max(1.0);
                assert!((a - b).abs() <= 1e-10 * scale, "n = {n}, x = {x}");
            }
        }
    }

    #[test]
    fn derivative_pinned_values() {
        assert_eq!(p_hermite_deriv(idx(4), 1.0), 96.0); // 32x(1+2x^2) at 1
        assert_eq!(p_hermite_deriv(idx(3), 0.0), 12.0);
    }

    #[test]
    fn derivative_matches_finite_differences() {
        // 5-point stencil oracle
        let h = 1e-3;
        for n in 3..=12u32 {
            for k in 0..20 {
                let x = -4.0 + 0.4 * k as f64 + 0.037;
                let num = (-p_hermite_raw(n, x + 2.0 * h, EvalRoute::Definition)
                    + 8.0 * p_hermite_raw(n, x + h, EvalRoute::Definition)
                    - 8.0 * p_hermite_raw(n, x - h, EvalRoute::Definition)
                    + p_hermite_raw(n, x - 2.0 * h, EvalRoute::Definition))
                    / (12.0 * h);
                let got = p_hermite_deriv_raw(n, x);
                let scale = got.abs().max(1.0);
                assert!((got - num).abs() <= 1e-7 * scale, "n = {n}, x = {x}");
            }
        }
    }

    #[test]
    fn second_derivative_matches_finite_differences() {
        let h = 1e-3;
        for n in 3..=10u32 {
            for k in 0..10 {
                let x = -3.0 + 0.6 * k as f64 + 0.021;
                let p = |y: f64| p_hermite_raw(n, y, EvalRoute::Definition);
                let num = (-p(x + 2.0 * h) + 16.0 * p(x + h) - 30.0 * p(x)
                    + 16.0 * p(x - h)
                    - p(x - 2.0 * h))
                    / (12.0 * h * h);
                let got = p_hermite_second_deriv_raw(n, x);
                assert!(
                    (got - num).abs() <= 1e-5 * got.abs().max(1.0),
                    "n = {n}, x = {x}"
                );
            }
        }
    }

    #[test]
    fn recurrences_vanish() {
        assert!(recurrence_residual_down(idx(4), 0.7).unwrap() < 1e-9);
        assert!(recurrence_residual_down(idx(10), -2.3).unwrap() < 1e-9);
        assert!(recurrence_residual_down(idx(5), 0.0).unwrap() < 1e-12);
        assert!(recurrence_residual_up(idx(3), 1.1).unwrap() < 1e-9);
        assert!(recurrence_residual_up(idx(8), 4.0).unwrap() < 1e-9);
        assert!(recurrence_residual_up(idx(3), 0.0).unwrap() < 1e-12);
    }

    #[test]
    fn recurrence_domain_bounds() {
        assert!(recurrence_residual_down(idx(3), 0.5).is_err());
        assert!(recurrence_residual_up(idx(0), 0.5).is_err());
    }

    #[test]
    fn derivative_product_identity() {
        // P_n e^{-x^2}/(1+2x^2)^2 + 2 d/dx[H_{n-3} e^{-x^2}/(1+2x^2)] = 0
        for n in 3..=12u32 {
            for k in 0..30 {
                let x = -4.5 + 0.3 * k as f64 + 0.017;
                let u = 1.0 + 2.0 * x * x;
                let lhs = p_hermite_raw(n, x, EvalRoute::Definition) * (-x * x).exp() / (u * u);
                let dh = if n == 3 {
                    0.0
                } else {
                    2.0 * (n as f64 - 3.0) * hermite(n - 4, x)
                };
                let inner = (dh - hermite(n - 3, x) * (2.0 * x + 4.0 * x / u)) * (-x * x).exp() / u;
                let term = lhs + 2.0 * inner;
                let scale = lhs.abs().max((2.0 * inner).abs()).max(f64::MIN_POSITIVE);
                assert!(term.abs() / scale < 1e-9, "n = {n}, x = {x}");
            }
        }
    }

    #[test]
    fn basis_bounds_degree() {
        let basis = PHermiteBasis::new(6);
        assert!(basis.eval(idx(6), 0.5, EvalRoute::Definition).is_ok());
        assert!(basis.eval(idx(7), 0.5, EvalRoute::Definition).is_err());
    }
}
