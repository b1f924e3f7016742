//! Amenability constants of the centre of the group algebra of a finite group.
//!
//! Groups are held as dense multiplication tables ([`group::GroupTable`]).
//! Character tables are computed numerically by the Burnside class-matrix
//! method ([`char_table`]) and fed into the general class-sum formula, the
//! direct `ℓ¹`-norm oracle, and the two-character-degree formula
//! ([`amenability`]). Named families ([`families`]) also carry exact closed
//! forms, so every route can be cross-checked against the others.

pub mod amenability;
pub mod char_table;
pub mod cli;
pub mod error;
pub mod families;
pub mod field;
pub mod group;
pub mod rational;
pub mod verify;

pub use amenability::{AmenabilityReport, Method};
pub use char_table::CharTable;
pub use error::{Error, ErrorKind, Result};
pub use families::{Family, FrobeniusSpec};
pub use field::FieldSpec;
pub use group::{ConjClassPartition, GroupTable, Permutation, SubgroupHandle};
pub use rational::ExactRational;

/// Largest group order accepted unless a caller raises it.
pub const DEFAULT_ORDER_CAP: usize = 4096;
