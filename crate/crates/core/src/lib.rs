//! Arithmetic genus and `h^{p,0}` data for generic complete intersections
//! in tori and spherical homogeneous spaces, computed from lattice points of
//! moment and Newton-Okounkov polytopes.
//!
//! All arithmetic is exact. Weights use the increasing convention for type
//! A: `lambda` is dominant when `lambda_1 <= ... <= lambda_n`.

pub mod chains;
pub mod counts;
pub mod dd;
pub mod error;
pub mod genus;
pub mod lattice;
pub mod linalg;
pub mod polytope;
pub mod random;
pub mod rational;
pub mod verify;
pub mod weyl;

pub use chains::ConvexChain;
pub use error::{Error, Result};
pub use genus::{genus, GenusReport, Scenario};
pub use lattice::ShiftedLattice;
pub use polytope::{AffineSpan, Halfspace, Hyperplane, Mode, Polytope};
pub use rational::{Rational, Vector};
