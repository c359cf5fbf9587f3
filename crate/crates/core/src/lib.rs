//! Numerics for the exactly solvable nonpolynomial nonlinear oscillator
//! sitting between the harmonic and isotonic oscillators: its deformed
//! ladder algebra on the broken Fock set {0, 3, 4, ...}, the P-Hermite
//! eigenfunctions, four coherent-state families (generalized intelligent,
//! nonlinear coherent, Gazeau-Klauder, even/odd cat), their photon
//! statistics by independent routes, completeness-weight integrals, and the
//! position-dependent-mass extension of the whole construction.

pub mod error;
pub mod fock;
pub mod pdm;
pub mod phermite;
pub mod special;
pub mod states;
pub mod statistics;
pub mod verify;
pub mod wavefunctions;

pub use error::{Error, Result};
pub use fock::{FockIndex, LadderKind, SignedLog};
pub use states::{Family, GisParameters, StateDump, StateVector};
