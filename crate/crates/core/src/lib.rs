//! Finite permutation groups and the calculus of powerfully embedded
//! subgroups: `η(P)`, the upper `η`-series, powerful class and height,
//! potent filtrations, together with the Sylow, transfer and fusion
//! machinery needed to check statements about them on concrete groups.

pub mod corpus;
pub mod error;
pub mod fusion;
pub mod group;
pub mod iso;
pub mod lattice;
pub mod perm;
pub mod powerful;
pub mod psylow;
pub mod quotient;
pub mod series;
pub mod subgroup;
pub mod verify;

pub use error::{GroupError, Result};
pub use group::{Group, DEFAULT_ENUMERATION_CAP};
pub use perm::Permutation;
pub use quotient::{quotient, Homomorphism};
pub use series::{SeriesChain, SeriesKind};
pub use subgroup::{GroupExt, Subgroup};
