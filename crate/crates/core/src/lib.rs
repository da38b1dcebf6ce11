//! Deciding whether small graphs have quantum symmetry.
//!
//! Graph constructions, automorphism groups, a lemma engine that proves
//! commutativity of the quantum automorphism algebra with checkable
//! certificates, and a bounded noncommutative Groebner basis engine.

pub mod aut;
pub mod catalog;
pub mod engine;
pub mod error;
pub mod graph;
pub mod groebner;
pub mod perm;

pub use error::{Error, Result};
pub use graph::Graph;
pub use perm::Permutation;
