//! Independent verification of the circle-action model on CP^n.
//!
//! The barrier invariants in `barrier-gauge-core` rest on a concrete
//! construction: every flat `v` of an arrangement carries a circle action
//! rotating the orthogonal complement of `v` with period one, generated by
//! the radial Hamiltonian `r_v([z]) = |proj_{v^perp}(z)|^2 / |z|^2`, and
//! nested flats give commuting actions. This crate checks those claims two
//! independent ways:
//!
//! * structurally, over exact rationals: the orthogonal splitting
//!   `u + (u^perp ∩ v) + v^perp` is computed and certified exactly, which
//!   proves commutation for nested pairs outright ([`action`]);
//! * numerically, in floating point: moment values, flows, isotropy
//!   weights, Poisson brackets and the Hamiltonian equation are sampled on
//!   random points with seeded randomness ([`chart`], [`verify`]).
//!
//! Conventions, fixed once: the Fubini-Study form is normalized so a line
//! has area one (Kahler potential `log|z|^2 / 2pi`), and Hamiltonian vector
//! fields satisfy `iota_{X_H} omega = -dH`. Under these, the generator of
//! the period-one rotation is the Hamiltonian field of `r_v`, which
//! [`chart::hamiltonian_consistency`] verifies against symbolic expectations.

pub mod action;
pub mod chart;
pub mod projective;
pub mod verify;

pub use action::{CircleActionSpec, Splitting};
pub use projective::ProjectivePoint;
pub use verify::{run_verification, VerificationReport, VerifyConfig};

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum LabError {
    #[error("projective point needs a nonzero coordinate vector")]
    ZeroVector,
    #[error("coordinate vector has {got} entries, expected {expected}")]
    WrongLength { expected: usize, got: usize },
    #[error("subspace blocks are not orthogonal or do not span")]
    BadSplitting,
    #[error("flats are not strictly nested")]
    NotNested,
    #[error("point is not on the fixed locus (moment value {0:.3e})")]
    NotOnFixedLocus(f64),
    #[error("point too close to the chart boundary (coordinate magnitude {0:.3e})")]
    ChartDegeneracy(f64),
}
