//! Exact combinatorics of the positive tropical Grassmannian.
//!
//! The crate computes, in exact rational arithmetic throughout:
//!
//! - the planar basis of kinematic invariants (height vectors `h_J`,
//!   kinematic blades `eta_{(S,r)}`, the subset/DOSP bijection);
//! - tropicalized Pluecker coordinates from the positive parametrization,
//!   the positive tropical Pluecker test, generalized positive roots;
//! - exact polyhedral cones (double description), f-vectors, regular
//!   positroidal subdivisions of hypersimplices, coarsest-ray tests, and
//!   Newton-polytope faces;
//! - factorization channels (blade collections, propagator tables) and
//!   CEGM generalized biadjoint amplitudes via the global Schwinger fan,
//!   with an iterated-residue engine for factorization checks.
//!
//! Start with the `examples/` directory: each example is a runnable tour of
//! one capability. A thin `tropfact` binary exposes the same entry points.

pub mod error;
pub mod rat;
pub mod linalg;
pub mod modsolve;
pub mod subsets;
pub mod dosp;
pub mod wsep;
pub mod blades;
pub mod grid;
pub mod monomial;
pub mod trop;
pub mod cone;
pub mod subdiv;
pub mod fan;

pub use error::TropError;
pub use rat::Q;
