//! Cluster automorphisms from Legendrian loops.
//!
//! Exact Laurent arithmetic, quiver mutation and finite-type detection,
//! plabic fences and their moves, compiled loops, folding by group actions,
//! Grassmannian braid actions, Nielsen-Thurston style classification and
//! positive fixed points.

pub mod dynamics;
pub mod fence;
pub mod fixpoint;
pub mod folding;
pub mod grassmann;
pub mod laurent;
pub mod loops;
pub mod quiver;
pub mod seed;

pub use laurent::LaurentPoly;
pub use quiver::{FiniteType, Quiver};
pub use seed::{ClusterAutomorphism, Order, Seed};
