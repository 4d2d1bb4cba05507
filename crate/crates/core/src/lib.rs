//! Möbius function of the permutation pattern poset.
//!
//! * [`perm`]: permutations, containment, descents and adjacencies.
//! * [`poset`]: downsets, intervals and the brute-force Möbius oracle.
//! * [`formulas`]: closed forms for permutations with at most one descent.
//! * [`harness`]: campaigns checking the closed forms against the oracle.
//! * [`cli`]: the `muposet` command line.

pub mod cli;
pub mod error;
pub mod formulas;
pub mod harness;
pub mod perm;
pub mod poset;

pub use error::{Error, Result};
pub use perm::{AdjacencyInfo, Direction, Permutation};
