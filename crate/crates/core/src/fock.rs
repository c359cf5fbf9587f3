//! The deformed oscillator algebra on the truncated Fock index set
//! {0, 3, 4, ...}: the deformation function f(n) = sqrt((n-1)(n-3)), the
//! deformed energies e(n) = n f(n)^2, the factorial-like products every
//! coherent-state family is built from, ladder actions, commutator checks
//! and the Hermitian quadrature pair W, P.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::states::StateVector;

/// Index into the broken Fock space. n = 1 and n = 2 do not exist in the
/// spectrum and are rejected at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FockIndex(u32);

impl FockIndex {
    pub fn new(n: u32) -> Result<Self> {
        if n == 1 || n == 2 {
            Err(Error::InvalidFockIndex(n))
        } else {
            Ok(Self(n))
        }
    }

    pub fn value(self) -> u32 {
        self.0
    }
}

impl std::fmt::Display for FockIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl TryFrom<u32> for FockIndex {
    type Error = Error;
    fn try_from(n: u32) -> Result<Self> {
        Self::new(n)
    }
}

/// A product kept as log-magnitude plus sign, finite for indices up to 1e4.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignedLog {
    pub ln_abs: f64,
    pub sign: i8,
}

impl SignedLog {
    pub fn one() -> Self {
        Self {
            ln_abs: 0.0,
            sign: 1,
        }
    }

    pub fn zero() -> Self {
        Self {
            ln_abs: f64::NEG_INFINITY,
            sign: 0,
        }
    }

    pub fn from_value(v: f64) -> Self {
        if v == 0.0 {
            Self::zero()
        } else {
            Self {
                ln_abs: v.abs().ln(),
                sign: if v > 0.0 { 1 } else { -1 },
            }
        }
    }

    pub fn value(self) -> f64 {
        self.sign as f64 * self.ln_abs.exp()
    }

}

impl std::ops::Mul for SignedLog {
    type Output = Self;

    fn mul(self, other: Self) -> Self {
        if self.sign == 0 || other.sign == 0 {
            return Self::zero();
        }
        Self {
            ln_abs: self.ln_abs + other.ln_abs,
            sign: self.sign * other.sign,
        }
    }
}

/// f(n)^2 = (n-1)(n-3), defined for every index in the broken Fock space.
pub(crate) fn f_sq_raw(n: u32) -> f64 {
    let ni = n as i64;
    ((ni - 1) * (ni - 3)) as f64
}

pub(crate) fn f_raw(n: u32) -> f64 {
    f_sq_raw(n).max(0.0).sqrt()
}

/// e(n) = n(n-1)(n-3), zero at n = 0, 1 and 3.
pub(crate) fn e_raw(n: u32) -> f64 {
    let ni = n as i64;
    (ni * (ni - 1) * (ni - 3)) as f64
}

/// The deformation function f(n) = sqrt((n-1)(n-3)).
pub fn deformation_f(n: FockIndex) -> f64 {
    f_raw(n.value())
}

/// The deformed energy e(n) = n f(n)^2 = n(n-1)(n-3).
pub fn deformed_energy(n: FockIndex) -> f64 {
    e_raw(n.value())
}

/// tilde-n! = n (n-1) ... 4 = n!/6 for n >= 3, with tilde-3! = 1.
pub fn tilde_factorial(n: FockIndex) -> Result<SignedLog> {
    let n = n.value();
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "tilde_factorial requires n >= 3, got {n}"
        )));
    }
    let mut ln = 0.0;
    for k in 4..=n {
        ln += (k as f64).ln();
    }
    Ok(SignedLog { ln_abs: ln, sign: 1 })
}

/// [tilde-f(n)!]^2 = prod_{k=4}^{n} (k-1)(k-3) = (n-1)!(n-3)!/2, value 1 at n = 3.
pub fn f_tilde_sq(n: FockIndex) -> Result<SignedLog> {
    let n = n.value();
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "f_tilde_sq requires n >= 3, got {n}"
        )));
    }
    let mut ln = 0.0;
    for k in 4..=n {
        ln += f_sq_raw(k).ln();
    }
    Ok(SignedLog { ln_abs: ln, sign: 1 })
}

/// F(n) = sqrt(n+1) f(n+1) f(n+2), the two-step quotient entering the cat
/// states. Zero factors from f(1) and f(3) short-circuit before f(2) (which
/// would be imaginary) is ever formed.
pub fn cat_f(n: u32) -> f64 {
    if n + 1 == 1 || n + 1 == 3 || n + 2 == 3 {
        return 0.0;
    }
    (((n + 1) as f64) * f_sq_raw(n + 1) * f_sq_raw(n + 2)).sqrt()
}

/// (2n)~!! = 2n (2n-2) ... 6, empty (= 1) for n = 2.
pub fn even_tilde_dfact(n: u32) -> Result<SignedLog> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "even_tilde_dfact requires n >= 2, got {n}"
        )));
    }
    let mut ln = 0.0;
    for j in 3..=n {
        ln += (2.0 * j as f64).ln();
    }
    Ok(SignedLog { ln_abs: ln, sign: 1 })
}

/// (2n+1)~!! = (2n+1)(2n-1) ... 5, empty (= 1) for n = 1.
pub fn odd_tilde_dfact(n: u32) -> Result<SignedLog> {
    if n < 1 {
        return Err(Error::InvalidArgument(
            "odd_tilde_dfact requires n >= 1".into(),
        ));
    }
    let mut ln = 0.0;
    for j in 2..=n {
        ln += ((2 * j + 1) as f64).ln();
    }
    Ok(SignedLog { ln_abs: ln, sign: 1 })
}

/// [tilde-F(2n-2)!!]^2 = prod_{j=2}^{n-1} F(2j)^2, value 1 at n = 2.
pub fn cat_f_even_sq(n: u32) -> Result<SignedLog> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "cat_f_even_sq requires n >= 2, got {n}"
        )));
    }
    let mut ln = 0.0;
    for j in 2..n {
        let m = 2 * j;
        ln += (((m + 1) as f64) * f_sq_raw(m + 1) * f_sq_raw(m + 2)).ln();
    }
    Ok(SignedLog { ln_abs: ln, sign: 1 })
}

/// [tilde-F(2n-1)!!]^2 = prod_{j=1}^{n-1} F(2j+1)^2, value 1 at n = 1.
pub fn cat_f_odd_sq(n: u32) -> Result<SignedLog> {
    if n < 1 {
        return Err(Error::InvalidArgument(
            "cat_f_odd_sq requires n >= 1".into(),
        ));
    }
    let mut ln = 0.0;
    for j in 1..n {
        let m = 2 * j + 1;
        ln += (((m + 1) as f64) * f_sq_raw(m + 1) * f_sq_raw(m + 2)).ln();
    }
    Ok(SignedLog { ln_abs: ln, sign: 1 })
}

/// The six ladder actions on the number basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LadderKind {
    DeformedA,
    DeformedADagger,
    UndeformedA,
    UndeformedADagger,
    GazeauB,
    GazeauBDagger,
}

/// Amplitude-wise image of a state under the named ladder operator.
///
/// `phase_gamma` enters only through the Gazeau kinds. A zero produced by
/// f(1) = f(3) = 0 in the deformed numerator yields amplitude 0 before the
/// undeformed division is attempted; a nonzero amplitude over a vanishing
/// divisor raises `DegenerateDivision`.
pub fn apply_ladder(kind: LadderKind, state: &StateVector, phase_gamma: f64) -> Result<StateVector> {
    let mut out: Vec<(u32, Complex64)> = Vec::with_capacity(state.support_len());
    for (n, c) in state.amplitudes() {
        let mapped: Option<(u32, Complex64)> = match kind {
            LadderKind::DeformedA => {
                let w = (n as f64).sqrt() * f_raw(n);
                (w != 0.0).then(|| (n - 1, c * w))
            }
            LadderKind::DeformedADagger => {
                let w = ((n + 1) as f64).sqrt() * f_raw(n + 1);
                (w != 0.0).then(|| (n + 1, c * w))
            }
            LadderKind::UndeformedA => {
                let num = (n as f64).sqrt() * f_raw(n);
                if num == 0.0 {
                    None
                } else if f_raw(n) == 0.0 {
                    return Err(Error::DegenerateDivision { n });
                } else {
                    Some((n - 1, c * (num / f_raw(n))))
                }
            }
            LadderKind::UndeformedADagger => {
                let num = ((n + 1) as f64).sqrt() * f_raw(n + 1);
                if num == 0.0 {
                    None
                } else if f_raw(n + 1) == 0.0 {
                    return Err(Error::DegenerateDivision { n: n + 1 });
                } else {
                    Some((n + 1, c * (num / f_raw(n + 1))))
                }
            }
            LadderKind::GazeauB => {
                let w = e_raw(n).sqrt();
                (w != 0.0).then(|| {
                    let phase = phase_gamma * (e_raw(n) - e_raw(n - 1));
                    (n - 1, c * w * Complex64::new(0.0, phase).exp())
                })
            }
            LadderKind::GazeauBDagger => {
                let w = e_raw(n + 1).sqrt();
                (w != 0.0).then(|| {
                    let phase = -phase_gamma * (e_raw(n + 1) - e_raw(n));
                    (n + 1, c * w * Complex64::new(0.0, phase).exp())
                })
            }
        };
        if let Some((t, a)) = mapped {
            debug_assert!(t != 1 && t != 2, "ladder image at invalid index {t}");
            out.push((t, a));
        }
    }
    StateVector::raw(out)
}

/// Multiplies every amplitude by its index (the number operator).
fn apply_number(state: &StateVector) -> StateVector {
    StateVector::raw(state.amplitudes().map(|(n, c)| (n, c * n as f64)))
        .expect("indices unchanged")
}

/// Residual norms of the Heisenberg-algebra identities on |n>, evaluated
/// through `apply_ladder`:
/// ([a, a+] - 1)|n>,  ([n, a] + a)|n>,  ([n, a+] - a+)|n>.
///
/// All three vanish to rounding for n >= 4; at n = 3 the first is finite
/// because f(3) = 0 detaches |3> from below, so callers report rather than
/// assert there.
pub fn commutator_check(n: FockIndex) -> Result<[f64; 3]> {
    let n = n.value();
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "commutator_check requires n >= 3, got {n}"
        )));
    }
    let basis = StateVector::unit(n)?;
    let a = |s: &StateVector| apply_ladder(LadderKind::UndeformedA, s, 0.0);
    let ad = |s: &StateVector| apply_ladder(LadderKind::UndeformedADagger, s, 0.0);

    let a_psi = a(&basis)?;
    let ad_psi = ad(&basis)?;

    // [a, a+]|n> - |n>
    let r1 = a(&ad_psi)?
        .sub(&ad(&a_psi)?)
        .sub(&basis)
        .norm();
    // [n, a]|n> + a|n>
    let r2 = apply_number(&a_psi)
        .sub(&a(&apply_number(&basis))?)
        .add(&a_psi)
        .norm();
    // [n, a+]|n> - a+|n>
    let r3 = apply_number(&ad_psi)
        .sub(&ad(&apply_number(&basis))?)
        .sub(&ad_psi)
        .norm();
    Ok([r1, r2, r3])
}

/// Moments of the Hermitian quadratures W = (A + A+)/sqrt2 and
/// P = i(A+ - A)/sqrt2, with G their commutator mean.
#[derive(Debug, Clone, Copy)]
pub struct UncertaintyReport {
    pub dw: f64,
    pub dp: f64,
    pub mean_g: f64,
    /// dW dP - |<G>|/2; non-negative up to rounding by the uncertainty
    /// relation, and ~0 on intelligent states.
    pub saturation_residual: f64,
}

pub fn uncertainty_report(state: &StateVector) -> Result<UncertaintyReport> {
    state.check_normalized(1e-10)?;
    let a_psi = apply_ladder(LadderKind::DeformedA, state, 0.0)?;
    let ad_psi = apply_ladder(LadderKind::DeformedADagger, state, 0.0)?;

    let inv_sqrt2 = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let w_psi = a_psi.add(&ad_psi).scaled(inv_sqrt2);
    let p_psi = ad_psi
        .sub(&a_psi)
        .scaled(Complex64::new(0.0, std::f64::consts::FRAC_1_SQRT_2));

    let mean_w = state.inner(&w_psi).re;
    let mean_p = state.inner(&p_psi).re;
    let var_w = w_psi.norm_sq() - mean_w * mean_w;
    let var_p = p_psi.norm_sq() - mean_p * mean_p;
    let dw = var_w.max(0.0).sqrt();
    let dp = var_p.max(0.0).sqrt();
    // <[A, A+]> = |A+ psi|^2 - |A psi|^2, real by construction
    let mean_g = ad_psi.norm_sq() - a_psi.norm_sq();
    Ok(UncertaintyReport {
        dw,
        dp,
        mean_g,
        saturation_residual: dw * dp - 0.5 * mean_g.abs(),
    })
}
