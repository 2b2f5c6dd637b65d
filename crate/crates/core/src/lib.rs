//! Optimal multipackings and dominating broadcasts on grid graphs.
//!
//! [`constructions::build_multipacking`] produces a multipacking of maximum
//! size for any `n x m` grid, [`multipacking`] and [`broadcast`] validate
//! witnesses exactly, [`certificate`] pairs them into optimality proofs and
//! [`oracles`] solves small instances from scratch for cross-checking.

pub mod broadcast;
pub mod certificate;
pub mod cli;
pub mod constructions;
pub mod document;
pub mod error;
pub mod graph;
pub mod multipacking;
pub mod oracles;

pub use broadcast::{Broadcast, UncoveredWitness};
pub use certificate::{certify_optimality, DualityCertificate, Mismatch};
pub use constructions::{build_multipacking, mp_value, ConstructionPlan, GridMultipacking, Method};
pub use error::{Error, Result};
pub use graph::{GeneralGraph, GraphMetric, GridShape, Universe, Vertex};
pub use multipacking::{Multipacking, ViolationWitness};
