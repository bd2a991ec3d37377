//! Exact combinatorics and symplectic invariants of hyperplane arrangements
//! in complex projective space.
//!
//! The crate decides, by exact rational arithmetic, whether the Lagrangian
//! skeleton of the complement of an arrangement divisor in CP^n is a
//! Lagrangian barrier, and computes the associated Gromov-width bounds:
//!
//! * [`arrangement`] — validated arrangements of rational hyperplanes,
//!   JSON input/output, and the built-in example catalog ([`named`]);
//! * [`lattice`] — the intersection lattice of flats, built by incremental
//!   intersection with canonical echelon keys (never by subset enumeration);
//! * [`invariants`] — the critical ratio `sigma_crit`, the minimal action
//!   `kappa_min`, the crossing ratio `m(D)`, the width bounds, and the
//!   barrier verdict;
//! * [`lp`] — an exact rational simplex solver searching the cone of
//!   admissible divisor coefficients for a certificate;
//! * [`abstract_divisor`] — the same pipeline for declared stratifications
//!   (e.g. a smooth hypersurface of degree `d`), with no geometry computed;
//! * [`report`] — the analysis report, its JSON form and text renderer.
//!
//! All lattice and invariant computations are exact: scalars are
//! arbitrary-precision rationals ([`Rat`]) and no floating point is used
//! anywhere in this crate. The linear algebra in [`linalg`] is generic over
//! the scalar type so the same kernels serve both the exact core here and
//! the floating-point verification lab built on top of it.

pub mod abstract_divisor;
pub mod arrangement;
pub mod invariants;
pub mod lattice;
pub mod linalg;
pub mod lp;
pub mod named;
pub mod rational;
pub mod report;
pub mod scalar;

/// Arbitrary-precision integer used throughout the exact core.
pub type Int = num_bigint::BigInt;

/// Exact rational scalar: always reduced, positive denominator, no rounding.
pub type Rat = num_rational::BigRational;

pub use arrangement::{parse_arrangement, Arrangement, ArrangementError, Hyperplane};
pub use invariants::{
    kappa_min, m_of_d, pair_embedding_lower_bound, sigma_crit, width_bound_projective,
    width_bound_sublevel, CoefficientSystem, StratumInvariants,
};
pub use lattice::{build_lattice, Flat, IntersectionLattice};
pub use report::{analyze_arrangement, AnalyzeOptions, BarrierReport, Verdict, WidthBound};
