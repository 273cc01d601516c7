//! Exact computations on toric Fano varieties and pencils of quadrics.
//!
//! * [`lattice`]: lattice vectors, unimodular maps, normal forms of 2D cones.
//! * [`polytope`]: Fano polytopes, duals, degree, Ehrhart counts, barycenters.
//! * [`singularities`]: cyclic quotient singularities of toric surfaces.
//! * [`ke`]: Kähler–Einstein tests and volume obstructions.
//! * [`classify`]: enumeration of toric log del Pezzo surfaces.
//! * [`pencil`]: GIT stability of pencils of quadrics via their discriminant.
//! * [`report`]: per-variety reports and the JSON file formats.
//!
//! No floating point is used anywhere: integers are `i64` with checked
//! narrowing and rationals are `BigRational`.

pub mod classify;
pub mod error;
pub mod ke;
pub mod lattice;
pub mod pencil;
pub mod polytope;
pub mod rational;
pub mod report;
pub mod singularities;

pub use error::{FanoError, Result};
pub use lattice::{CyclicQuotientType, LatticeVector, RationalVector, UnimodularMap};
pub use polytope::{DualPolytope, FanoPolytope, PolytopeSummary};
