//! Exact minimal faithful permutation degrees of explicit finite groups.
//!
//! The minimal degree `mu(G)` is the least total index of a collection of
//! subgroups whose cores intersect trivially. This crate materializes
//! permutation groups, enumerates their subgroups and normal subgroups,
//! and solves the resulting covering problem exactly.

pub mod construct;
pub mod deadline;
pub mod error;
pub mod ff;
pub mod formulas;
pub mod group;
pub mod normal;
pub mod perm;
pub mod schreier;
pub mod solver;

pub use construct::{construct, Construction, GroupSpec, NamedElements};
pub use deadline::Deadline;
pub use error::{Error, Result};
pub use group::{PermGroup, Subgroup};
pub use normal::NormalLattice;
pub use perm::Perm;
pub use schreier::StabChain;
