//! Closed-form evaluators for Möbius values on intervals of permutations
//! with at most one descent, and the containment classifier for
//! adjacency-free permutations.

mod adjacency_free;
mod m_bottom;
mod mw_top;
mod one_descent;

pub use adjacency_free::adjacency_free_contains;
pub use m_bottom::{m_bottom_mobius, m_bottom_mobius_from_stats, m_bottom_stats, split_binomial, MBottomStats};
pub use mw_top::{mw_interval_mobius, MwBranch, MwEvaluation, Shape};
pub use one_descent::{one_descent_mobius, zero_cases, OneDescentCase, OneDescentValue};

use crate::error::{Error, Result};

/// `C(x, y)`, extended by `C(x, y) = 0` whenever `x < 0`, `y < 0` or
/// `x < y`. In particular `C(x, 0) = 1` only for `x >= 0`.
pub fn binomial(x: i64, y: i64) -> Result<i64> {
    if x < 0 || y < 0 || x < y {
        return Ok(0);
    }
    let y = y.min(x - y);
    let mut acc: i128 = 1;
    for j in 0..y {
        acc = acc * (x - j) as i128 / (j + 1) as i128;
        if acc > i64::MAX as i128 {
            return Err(Error::Overflow("binomial"));
        }
    }
    Ok(acc as i64)
}
