//! Exact calculator for equivariant higher analytic torsion of circle and
//! torus actions.
//!
//! The torsion of a closed manifold with a compact connected group action
//! depends only on its equivariant Euler characteristic, so it can be
//! computed combinatorially: take the signed cell count with isotropy types
//! ([`euler::chi_equivariant`]) and apply the torsion homomorphism
//! ([`torsion::t_s1`], [`torsion::t_torus`]). Values live in a graded
//! series whose grade-`k` coefficients are exact rationals carrying the
//! implicit factor `zeta(2k+1) / pi^(2k)` ([`series::TorsionSeries`]).
//!
//! On top of the forward calculus the crate provides the doubling and
//! gluing rules for manifolds with corner singularities
//! ([`torsion::CornerChi`]) and the inverse problem of recovering the orbit
//! structure from a torsion series by exact moment recovery ([`inverse`]).

pub mod error;
pub mod euler;
pub mod inverse;
pub mod lattice;
pub mod poly;
pub mod series;
pub mod solve;
pub mod torsion;

pub use error::{Error, Result};
pub use euler::{
    chi_equivariant, chi_gamma, restrict_torus_to_circle, ClassFunction, EulerElement, GCWComplex,
    GammaCWComplex, Group, OrbitType,
};
pub use inverse::{chi_from_invariants, power_sums, prony_recover, OrbitSpectrum, PowerSums};
pub use lattice::{IntMatrix, RankOneGenerator};
pub use series::{circle_grade_coefficient, zeta_odd, TorsionSeries, ZetaValue};
pub use torsion::{
    corner_torsion, rank1_symmetric_space, t_s1, t_torus, torsion_closed, CornerChi,
    SymmetricSpaceData,
};
