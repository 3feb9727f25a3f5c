//! Exactly computable curve complexes and the machinery around them.
//!
//! The supported surfaces are those whose curve complex is the Farey graph
//! (torus, once-punctured torus, the sphere with four order-two cone points)
//! together with the annulus. On these models the crate provides exact
//! distances, annular projections, lattice covers, antichains of annuli and
//! a flat-torus Teichmüller engine, plus a seeded experiment harness that
//! checks the coarse inequalities relating them.

pub mod annular;
pub mod antichain;
pub mod covers;
pub mod error;
pub mod experiments;
pub mod farey;
pub mod par;
pub mod teich;

pub use error::{Error, Result};
pub use farey::{Slope, SurfaceModel, UnimodularMatrix};
