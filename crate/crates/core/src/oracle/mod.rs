//! Finite-scale references: explicit crossed modules over S_N and
//! Dijkgraaf–Witten homomorphism counts.

pub mod artin;
pub mod crossed;

pub use artin::{artin_fix_count, regular_fix_count, DEFAULT_MAX_TUPLES};
pub use crossed::{CrossedModule, MAX_GROUP_DEGREE};

use crate::error::Result;
use crate::link::BraidWord;
use crate::ring::Cyclotomic;

/// Closure of the braid colored by a crossed module.
pub fn finite_invariant(m: &CrossedModule, word: &BraidWord, max_states: u64) -> Result<Cyclotomic> {
    m.closure(word, max_states)
}

#[cfg(test)]
mod tests;
