//! Downsets and intervals of the pattern poset, and the recursive Möbius
//! oracle that every closed form is checked against.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Hosts longer than this are refused by the oracle. Downsets of arbitrary
/// permutations grow like `2^n`.
pub const MAX_ORACLE_LEN: usize = 14;

/// All patterns of `root`, grouped by length.
#[derive(Debug, Clone)]
pub struct Downset {
    root: Permutation,
    /// `levels[k - 1]` holds the members of length `k`, sorted.
    levels: Vec<Vec<Permutation>>,
}

impl Downset {
    /// Built by repeated single-letter deletion with deduplication, which
    /// makes the result downward closed without any containment tests.
    pub fn new(root: &Permutation) -> Self {
        Self::down_to(root, 1)
    }

    /// Same as [`Downset::new`] but stops at members of length `min_len`.
    pub fn down_to(root: &Permutation, min_len: usize) -> Self {
        let n = root.len();
        let min_len = min_len.clamp(1, n);
        let mut levels = vec![Vec::new(); n];
        levels[n - 1].push(root.clone());
        for k in (min_len..n).rev() {
            let mut next: Vec<Permutation> =
                levels[k].iter().flat_map(|z| z.children()).collect();
            next.sort();
            next.dedup();
            levels[k - 1] = next;
        }
        Downset {
            root: root.clone(),
            levels,
        }
    }

    pub fn root(&self) -> &Permutation {
        &self.root
    }

    /// Members of length `k` (empty outside `1..=n` or below the cut-off).
    pub fn level(&self, k: usize) -> &[Permutation] {
        if k == 0 || k > self.levels.len() {
            return &[];
        }
        &self.levels[k - 1]
    }

    /// Members ordered by length, then lexicographically.
    pub fn members(&self) -> impl Iterator<Item = &Permutation> {
        self.levels.iter().flatten()
    }

    pub fn len(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.level(p.len()).binary_search(p).is_ok()
    }
}

fn guard(upper: &Permutation) -> Result<()> {
    if upper.len() > MAX_ORACLE_LEN {
        return Err(Error::IntervalTooLarge {
            len: upper.len(),
            max: MAX_ORACLE_LEN,
        });
    }
    Ok(())
}

/// The interval `[lower, upper]` with its down-closure relation, indexed by
/// length so that every member comes after everything below it.
struct IntervalPoset {
    members: Vec<Permutation>,
    /// `below[i]` holds the indices of all members `≤ members[i]`.
    below: Vec<FixedBitSet>,
    lower_idx: usize,
}

impl IntervalPoset {
    /// `None` when `lower ≰ upper`.
    fn build(lower: &Permutation, upper: &Permutation) -> Option<Self> {
        if lower.len() > upper.len() {
            return None;
        }
        let down = Downset::down_to(upper, lower.len());
        if !down.contains(lower) {
            return None;
        }

        // Upward pass: a member is in the interval iff it is `lower` or one
        // of its children is.
        let mut members: Vec<Permutation> = vec![lower.clone()];
        let mut index: HashMap<Permutation, usize> = HashMap::new();
        index.insert(lower.clone(), 0);
        let mut children: Vec<Vec<usize>> = vec![Vec::new()];
        for k in lower.len() + 1..=upper.len() {
            for z in down.level(k) {
                let kids: Vec<usize> = z
                    .children()
                    .iter()
                    .filter_map(|c| index.get(c).copied())
                    .collect();
                if !kids.is_empty() {
                    index.insert(z.clone(), members.len());
                    members.push(z.clone());
                    children.push(kids);
                }
            }
        }

        let size = members.len();
        let mut below: Vec<FixedBitSet> = Vec::with_capacity(size);
        for (i, kids) in children.iter().enumerate() {
            let mut set = FixedBitSet::with_capacity(size);
            set.insert(i);
            for &c in kids {
                set.union_with(&below[c]);
            }
            below.push(set);
        }
        Some(IntervalPoset {
            members,
            below,
            lower_idx: 0,
        })
    }

    /// `μ(lower, z)` for every member `z`, in member order.
    fn mobius_values(&self) -> Vec<i64> {
        let mut mu = vec![0i64; self.members.len()];
        for i in 0..self.members.len() {
            mu[i] = if i == self.lower_idx {
                1
            } else {
                -self.below[i]
                    .ones()
                    .filter(|&j| j != i)
                    .map(|j| mu[j])
                    .sum::<i64>()
            };
        }
        mu
    }
}

/// Members of `[lower, upper]`, ordered by length then lexicographically.
/// Empty when `lower ≰ upper`.
pub fn interval(lower: &Permutation, upper: &Permutation) -> Result<Vec<Permutation>> {
    guard(upper)?;
    let mut members = IntervalPoset::build(lower, upper)
        .map(|ip| ip.members)
        .unwrap_or_default();
    members.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(members)
}

/// `μ(lower, upper)` from the defining recursion
/// `μ(σ, π) = −Σ_{σ ≤ z < π} μ(σ, z)`, with `μ(σ, σ) = 1` and
/// `μ(σ, π) = 0` when `σ ≰ π`.
pub fn mobius(lower: &Permutation, upper: &Permutation) -> Result<i64> {
    guard(upper)?;
    if lower == upper {
        return Ok(1);
    }
    Ok(match IntervalPoset::build(lower, upper) {
        None => 0,
        Some(ip) => *ip.mobius_values().last().expect("interval contains upper"),
    })
}

/// `μ(1, π)`.
pub fn mobius_top(upper: &Permutation) -> Result<i64> {
    mobius(&Permutation::increasing(1), upper)
}
