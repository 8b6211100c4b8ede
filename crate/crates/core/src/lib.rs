//! Conjugate generators and almost-cyclic groups.
//!
//! * [`group`]: finite groups as validated Cayley tables, subgroups,
//!   conjugacy classes, quotients.
//! * [`almost_cyclic`]: conjugate-generator search and table-level checks of
//!   its consequences.
//! * [`words`]: free-group words in run-length form, proper powers, Nielsen
//!   rewriting.
//! * [`presentation`]: presentations, abelianization via [`snf`], and the
//!   one-relator verdict engine.
//! * [`catalog`], [`enumerate`], [`sweep`]: test universes and the batch
//!   verification harness.

pub mod almost_cyclic;
pub mod catalog;
pub mod enumerate;
pub mod error;
pub mod group;
pub mod permutation;
pub mod presentation;
pub mod snf;
pub mod sweep;
pub mod words;

pub use error::{
    AnalysisError, GroupError, HarnessError, PermutationError, PresentationError, WordError,
};
pub use group::{CosetQuotient, Element, FiniteGroup, GroupFile, Subgroup};
pub use permutation::Permutation;
