//! Schur rings over cyclic groups.
//!
//! An S-ring over `Z_n` is stored as its partition into basic sets
//! ([`SRing`]). The crate validates such partitions, builds them from
//! multiplier groups, tensor products and generalized wreath products,
//! enumerates all of them for small `n`, and decides schurity by computing
//! the automorphism group of the associated Cayley color graph.

pub mod arith;
pub mod construct;
pub mod enumerate;
pub mod error;
pub mod multiplier;
pub mod perm;
pub mod perm_wreath;
pub mod permgroup;
pub mod schurity;
pub mod sring;

pub use arith::{classify, Classification, Family};
pub use construct::{cyclotomic, gen_wreath, rank2, tensor, witness, Witness};
pub use error::{Error, Result};
pub use multiplier::MultiplierGroup;
pub use perm::Perm;
pub use permgroup::{GroupOrder, PermGroup};
pub use schurity::{is_schurian, AutSearch, SchurityVerdict};
pub use sring::{RadicalReport, SRing, Section};
