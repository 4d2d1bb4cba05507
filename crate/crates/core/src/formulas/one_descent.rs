use std::fmt;

use super::binomial;
use crate::error::{Error, Result};
use crate::perm::{Direction, Permutation};

/// Which clause of the classification produced a value. Clauses are tried
/// in declaration order and the first match wins.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OneDescentCase {
    /// Length 1 or 2, outside the classification proper.
    ShortLength,
    /// Begins with 12 or ends with (n−1)n.
    Part1,
    /// Triple adjacency.
    Part2,
    /// More than two adjacencies.
    Part3,
    /// Two adjacencies, the first of greater value.
    Part4a,
    /// Two adjacencies, the first of lower value.
    Part4b,
    /// One adjacency before the descent, `π_1 ≠ 1`.
    Part5a,
    /// One adjacency before the descent, `π_1 = 1`.
    Part5b,
    /// One adjacency after the descent, `π_n ≠ n`.
    Part5c,
    /// One adjacency after the descent, `π_n = n`.
    Part5d,
    /// No adjacencies, `π = W_{n/2}`.
    Part6a,
    /// No adjacencies, `π = M_{n/2}`.
    Part6b,
    /// No adjacencies, odd length.
    Part6c,
}

impl OneDescentCase {
    pub fn label(self) -> &'static str {
        use OneDescentCase::*;
        match self {
            ShortLength => "short-length",
            Part1 => "part1",
            Part2 => "part2",
            Part3 => "part3",
            Part4a => "part4a",
            Part4b => "part4b",
            Part5a => "part5a",
            Part5b => "part5b",
            Part5c => "part5c",
            Part5d => "part5d",
            Part6a => "part6a",
            Part6b => "part6b",
            Part6c => "part6c",
        }
    }
}

impl fmt::Display for OneDescentCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OneDescentValue {
    pub value: i64,
    pub case: OneDescentCase,
}

fn starts_12(pi: &Permutation) -> bool {
    pi.len() >= 2 && pi.at(1) == 1 && pi.at(2) == 2
}

fn ends_top_pair(pi: &Permutation) -> bool {
    let n = pi.len() as u32;
    n >= 2 && pi.last() == n && pi.at(pi.len() - 1) == n - 1
}

/// The zero-valued clauses that apply to `pi`, among part1, part2, part3 and
/// part4b. Permutations matched by several of them are where the clauses
/// overlap.
pub fn zero_cases(pi: &Permutation) -> Vec<OneDescentCase> {
    let mut out = Vec::new();
    if starts_12(pi) || ends_top_pair(pi) {
        out.push(OneDescentCase::Part1);
    }
    if pi.has_triple_adjacency(Direction::Increasing) {
        out.push(OneDescentCase::Part2);
    }
    let adj = pi.adjacencies(Direction::Increasing);
    if adj.len() > 2 {
        out.push(OneDescentCase::Part3);
    }
    if adj.len() == 2 && adj[0].value < adj[1].value {
        out.push(OneDescentCase::Part4b);
    }
    out
}

/// `μ(1, π)` for `π` with at most one descent, from the number and
/// positions of its (increasing) adjacencies.
pub fn one_descent_mobius(pi: &Permutation) -> Result<OneDescentValue> {
    use OneDescentCase::*;

    let descents = pi.descents();
    if descents.len() > 1 {
        return Err(Error::OutOfClass {
            perm: pi.to_string(),
            descents: descents.len(),
            allowed: 1,
        });
    }
    let n = pi.len();
    let done = |value, case| Ok(OneDescentValue { value, case });
    match n {
        1 => return done(1, ShortLength),
        2 => return done(-1, ShortLength),
        _ => {}
    }

    if starts_12(pi) || ends_top_pair(pi) {
        return done(0, Part1);
    }
    if pi.has_triple_adjacency(Direction::Increasing) {
        return done(0, Part2);
    }
    let adj = pi.adjacencies(Direction::Increasing);
    // Nonzero values are positive exactly for odd n.
    let sign: i64 = if n % 2 == 1 { 1 } else { -1 };
    let n = n as i64;

    match adj.len() {
        0 => {
            if n % 2 == 1 {
                done(binomial((n + 1) / 2, 2)?, Part6c)
            } else if pi.first() == 1 {
                done(-binomial(n / 2, 2)?, Part6a)
            } else if pi.first() == 2 {
                done(-binomial(n / 2 + 1, 2)?, Part6b)
            } else {
                Err(Error::Domain(format!(
                    "{pi}: adjacency-free of even length but neither M nor W"
                )))
            }
        }
        1 => {
            let i = adj[0].position as i64;
            // With no descent there is a triple adjacency, handled above.
            let d = descents[0] as i64;
            if i < d {
                if pi.first() != 1 {
                    done(sign * i, Part5a)
                } else {
                    done(sign * (i - 1), Part5b)
                }
            } else if pi.last() as i64 != n {
                done(sign * (n - i), Part5c)
            } else {
                done(sign * (n - i - 1), Part5d)
            }
        }
        2 => {
            if adj[0].value > adj[1].value {
                done(sign, Part4a)
            } else {
                done(0, Part4b)
            }
        }
        _ => done(0, Part3),
    }
}
