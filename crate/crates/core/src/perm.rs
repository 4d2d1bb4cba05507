//! Permutations and the statistics the rest of the crate is built on.
//!
//! Positions and values are 1-based in every public signature, matching the
//! usual `π = π_1 π_2 … π_n` notation. Internally values are stored as a
//! plain `Vec<u32>`.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::error::{Error, Result};

/// A permutation of `1..=n`, `n >= 1`, stored as its one-line word.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<u32>);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Increasing,
    Decreasing,
}

/// One adjacency: two letters consecutive in position whose values differ
/// by one in the given direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AdjacencyInfo {
    /// Position of the initial letter, in `1..n`.
    pub position: usize,
    /// Value of the initial letter.
    pub value: u32,
    pub direction: Direction,
}

impl Permutation {
    /// Validates that `values` is a permutation of `1..=values.len()`.
    pub fn new(values: Vec<u32>) -> Result<Self> {
        let n = values.len();
        if n == 0 {
            return Err(Error::InvalidWord("empty word".into()));
        }
        let mut seen = vec![false; n];
        for &v in &values {
            let idx = v as usize;
            if idx == 0 || idx > n || seen[idx - 1] {
                return Err(Error::InvalidWord(format!(
                    "{} is not a permutation of 1..={n}",
                    values.iter().join(",")
                )));
            }
            seen[idx - 1] = true;
        }
        Ok(Permutation(values))
    }

    /// Flattens a word of distinct values to the permutation with the same
    /// relative order.
    pub fn standardize<T: Ord>(word: &[T]) -> Result<Self> {
        if word.is_empty() {
            return Err(Error::InvalidWord("empty word".into()));
        }
        let mut order: Vec<usize> = (0..word.len()).collect();
        order.sort_by(|&a, &b| word[a].cmp(&word[b]));
        if order.windows(2).any(|w| word[w[0]] == word[w[1]]) {
            return Err(Error::InvalidWord("word has repeated entries".into()));
        }
        let mut values = vec![0u32; word.len()];
        for (rank, &pos) in order.iter().enumerate() {
            values[pos] = rank as u32 + 1;
        }
        Ok(Permutation(values))
    }

    /// The increasing permutation `12…k`.
    pub fn increasing(k: usize) -> Self {
        assert!(k >= 1, "permutations have length at least 1");
        Permutation((1..=k as u32).collect())
    }

    /// `M_k = 246…(2k)135…(2k−1)`.
    pub fn m_form(k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidParameter(format!("M_k needs k >= 2, got {k}")));
        }
        let k = k as u32;
        let evens = (1..=k).map(|j| 2 * j);
        let odds = (1..=k).map(|j| 2 * j - 1);
        Ok(Permutation(evens.chain(odds).collect()))
    }

    /// `W_k = 135…(2k−1)246…(2k)`.
    pub fn w_form(k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidParameter(format!("W_k needs k >= 2, got {k}")));
        }
        let k = k as u32;
        let odds = (1..=k).map(|j| 2 * j - 1);
        let evens = (1..=k).map(|j| 2 * j);
        Ok(Permutation(odds.chain(evens).collect()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false; kept for the usual `len`/`is_empty` pairing.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[u32] {
        &self.0
    }

    /// Letter at 1-based position `i`.
    pub fn at(&self, i: usize) -> u32 {
        self.0[i - 1]
    }

    pub fn first(&self) -> u32 {
        self.0[0]
    }

    pub fn last(&self) -> u32 {
        self.0[self.0.len() - 1]
    }

    /// Ascending 1-based positions `i` with `π_i > π_{i+1}`.
    pub fn descents(&self) -> Vec<usize> {
        self.0
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] > w[1])
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn descent_count(&self) -> usize {
        self.0.windows(2).filter(|w| w[0] > w[1]).count()
    }

    /// Membership in `P_0 ∪ P_1`.
    pub fn has_at_most_one_descent(&self) -> bool {
        self.descent_count() <= 1
    }

    /// All adjacencies in `direction`, counted as pairs and ordered by
    /// position. A run of `k` letters yields `k − 1` entries.
    pub fn adjacencies(&self, direction: Direction) -> Vec<AdjacencyInfo> {
        self.0
            .windows(2)
            .enumerate()
            .filter(|(_, w)| is_step(w[0], w[1], direction))
            .map(|(i, w)| AdjacencyInfo {
                position: i + 1,
                value: w[0],
                direction,
            })
            .collect()
    }

    pub fn adjacency_count(&self) -> usize {
        self.0
            .windows(2)
            .filter(|w| is_step(w[0], w[1], Direction::Increasing))
            .count()
    }

    /// Length of the longest block of letters that is consecutive in both
    /// position and value in `direction`. At least 1.
    pub fn longest_run(&self, direction: Direction) -> usize {
        let mut best = 1;
        let mut current = 1;
        for w in self.0.windows(2) {
            if is_step(w[0], w[1], direction) {
                current += 1;
                best = best.max(current);
            } else {
                current = 1;
            }
        }
        best
    }

    pub fn has_triple_adjacency(&self, direction: Direction) -> bool {
        self.longest_run(direction) >= 3
    }

    /// Removes the letter with value `v` and standardizes.
    pub fn delete_value(&self, v: u32) -> Result<Self> {
        let n = self.len();
        if v == 0 || v as usize > n {
            return Err(Error::OutOfRange {
                what: "value",
                value: v as usize,
                max: n,
            });
        }
        if n == 1 {
            return Err(Error::DeleteFromSingleton);
        }
        Ok(Permutation(
            self.0
                .iter()
                .filter(|&&x| x != v)
                .map(|&x| if x > v { x - 1 } else { x })
                .collect(),
        ))
    }

    /// Removes the letter at 1-based position `i` and standardizes.
    pub fn delete_position(&self, i: usize) -> Result<Self> {
        if i == 0 || i > self.len() {
            return Err(Error::OutOfRange {
                what: "position",
                value: i,
                max: self.len(),
            });
        }
        self.delete_value(self.0[i - 1])
    }

    /// Removes several letters by value at once.
    pub fn delete_values(&self, vs: &[u32]) -> Result<Self> {
        let kept: Vec<u32> = self.0.iter().copied().filter(|x| !vs.contains(x)).collect();
        if kept.len() + vs.len() != self.len() {
            return Err(Error::InvalidParameter(format!(
                "cannot delete values {:?} from {self}",
                vs
            )));
        }
        Permutation::standardize(&kept)
    }

    /// The distinct permutations obtained by deleting one letter, sorted.
    pub fn children(&self) -> Vec<Permutation> {
        if self.len() == 1 {
            return Vec::new();
        }
        let mut out: Vec<Permutation> = (1..=self.len() as u32)
            .map(|v| self.delete_value(v).expect("value in range"))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// `self ⊕ other`: `other` shifted up by `self.len()` and appended.
    pub fn direct_sum(&self, other: &Permutation) -> Permutation {
        let shift = self.len() as u32;
        let mut values = self.0.clone();
        values.extend(other.0.iter().map(|&x| x + shift));
        Permutation(values)
    }

    /// True iff some proper prefix uses exactly the values `1..=p`.
    pub fn is_decomposable(&self) -> bool {
        let mut max = 0;
        for (p, &x) in self.0.iter().enumerate().take(self.len() - 1) {
            max = max.max(x);
            if max as usize == p + 1 {
                return true;
            }
        }
        false
    }

    /// Avoids both 2413 and 3142.
    pub fn is_separable(&self) -> bool {
        let p2413 = Permutation(vec![2, 4, 1, 3]);
        let p3142 = Permutation(vec![3, 1, 4, 2]);
        !self.contains(&p2413) && !self.contains(&p3142)
    }

    /// Both or neither permutation begins with 1.
    pub fn is_related(&self, other: &Permutation) -> bool {
        (self.first() == 1) == (other.first() == 1)
    }

    /// Whether `pattern` occurs in `self`.
    pub fn contains(&self, pattern: &Permutation) -> bool {
        if pattern.len() > self.len() {
            return false;
        }
        let mut search = Search::new(pattern, self);
        search.run(0, 0, true) > 0
    }

    /// Number of subsequences of `self` order-isomorphic to `pattern`.
    pub fn occurrence_count(&self, pattern: &Permutation) -> Result<u64> {
        if pattern.len() > self.len() {
            return Ok(0);
        }
        let mut search = Search::new(pattern, self);
        let count = search.run(0, 0, false);
        if search.overflowed {
            return Err(Error::Overflow("occurrence_count"));
        }
        Ok(count)
    }
}

fn is_step(a: u32, b: u32, direction: Direction) -> bool {
    match direction {
        Direction::Increasing => b == a + 1,
        Direction::Decreasing => a == b + 1,
    }
}

/// Backtracking matcher. For each pattern index `j` the bounds on the host
/// value come from the nearest smaller and nearest larger pattern letters
/// among indices `< j`.
struct Search<'a> {
    host: &'a [u32],
    floor: Vec<Option<usize>>,
    ceil: Vec<Option<usize>>,
    chosen: Vec<u32>,
    overflowed: bool,
}

impl<'a> Search<'a> {
    fn new(pattern: &Permutation, host: &'a Permutation) -> Self {
        let p = &pattern.0;
        let mut floor = Vec::with_capacity(p.len());
        let mut ceil = Vec::with_capacity(p.len());
        for j in 0..p.len() {
            let below = (0..j).filter(|&t| p[t] < p[j]).max_by_key(|&t| p[t]);
            let above = (0..j).filter(|&t| p[t] > p[j]).min_by_key(|&t| p[t]);
            floor.push(below);
            ceil.push(above);
        }
        Search {
            host: &host.0,
            floor,
            ceil,
            chosen: vec![0; p.len()],
            overflowed: false,
        }
    }

    fn run(&mut self, j: usize, start: usize, first_only: bool) -> u64 {
        let k = self.chosen.len();
        if j == k {
            return 1;
        }
        let lo = self.floor[j].map_or(0, |t| self.chosen[t]);
        let hi = self.ceil[j].map_or(u32::MAX, |t| self.chosen[t]);
        let mut total: u64 = 0;
        // Leave room for the remaining k - j - 1 letters.
        let end = self.host.len() + 1 + j - k;
        for pos in start..end {
            let v = self.host[pos];
            if v <= lo || v >= hi {
                continue;
            }
            self.chosen[j] = v;
            let sub = self.run(j + 1, pos + 1, first_only);
            match total.checked_add(sub) {
                Some(t) => total = t,
                None => {
                    self.overflowed = true;
                    return u64::MAX;
                }
            }
            if first_only && total > 0 {
                return total;
            }
        }
        total
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() <= 9 {
            for v in &self.0 {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            write!(f, "{}", self.0.iter().join(","))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts a digit string (`24513`) or comma/space separated integers.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::InvalidWord("empty word".into()));
        }
        let values: Vec<u32> = if s.contains(|c: char| c == ',' || c.is_whitespace()) {
            s.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<u32>()
                        .map_err(|_| Error::InvalidWord(format!("bad entry {t:?} in {s:?}")))
                })
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .ok_or_else(|| Error::InvalidWord(format!("bad character {c:?} in {s:?}")))
                })
                .collect::<Result<_>>()?
        };
        Permutation::new(values)
    }
}

/// Every permutation of length `n`, in lexicographic order.
pub fn all_of_length(n: usize) -> impl Iterator<Item = Permutation> {
    (1..=n as u32)
        .permutations(n)
        .map(Permutation)
}

/// Every permutation of length `n` with at most one descent, in
/// lexicographic order. There are `2^n − n` of them.
///
/// Such a permutation is the increasing arrangement of a subset of values
/// followed by the increasing arrangement of its complement.
pub fn at_most_one_descent(n: usize) -> Vec<Permutation> {
    assert!((1..32).contains(&n));
    let mut out = vec![Permutation::increasing(n)];
    for mask in 1u32..(1 << n) - 1 {
        let (front, back): (Vec<u32>, Vec<u32>) =
            (1..=n as u32).partition(|&v| mask & (1 << (v - 1)) != 0);
        if front.last() > back.first() {
            out.push(Permutation(front.into_iter().chain(back).collect()));
        }
    }
    out.sort();
    out
}
