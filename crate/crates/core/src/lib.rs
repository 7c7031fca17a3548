//! Belief change over ALC-formulae driven by quasimodels.
//!
//! A knowledge base is a single ALC-formula. Models are removed from it
//! (contraction) or added to it (expansion) one literal-equivalence class at a
//! time, so that the result is again a finite formula. The machinery behind
//! this is the classic quasimodel characterisation of satisfiability: formula
//! types, concept types, type elimination and the DNF translation built from
//! the formula types that have a quasimodel.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, the command
//! line and the seeded test corpus live in the `alcbc` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
#[macro_use]
extern crate std;

pub mod change;
pub mod config;
pub mod dnf;
mod error;
pub mod propositional;
pub mod semantics;
pub mod syntax;
pub mod typesys;
pub mod verify;

pub use config::{CandidateMode, Config};
pub use error::{Error, Result};
pub use semantics::Interpretation;
pub use syntax::{Concept, Formula};
