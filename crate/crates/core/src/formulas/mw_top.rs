use std::fmt;
use std::str::FromStr;

use super::binomial;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Which of the two adjacency-free even-length tops.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Shape {
    /// `M_n = 246…(2n)135…(2n−1)`
    M,
    /// `W_n = 135…(2n−1)246…(2n)`
    W,
}

impl Shape {
    pub fn build(self, n: usize) -> Result<Permutation> {
        match self {
            Shape::M => Permutation::m_form(n),
            Shape::W => Permutation::w_form(n),
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Shape::M => "M",
            Shape::W => "W",
        })
    }
}

impl FromStr for Shape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "M" | "m" => Ok(Shape::M),
            "W" | "w" => Ok(Shape::W),
            _ => Err(Error::InvalidParameter(format!("shape must be M or W, got {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MwBranch {
    Separable,
    NonSeparable,
}

impl fmt::Display for MwBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MwBranch::Separable => "separable",
            MwBranch::NonSeparable => "non-separable",
        })
    }
}

/// Value of the conjectured formula for `μ(σ, M_n)` / `μ(σ, W_n)` together
/// with the parameters it was computed from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MwEvaluation {
    pub value: i64,
    pub branch: MwBranch,
    /// `|σ|`
    pub m: usize,
    /// Increasing adjacencies of `σ`, a run of length `k` counting `k − 1`.
    pub adjacencies: usize,
    /// 0 when `σ` and the top are related, 1 otherwise.
    pub unrelated: usize,
}

/// Conjectured `μ(σ, M_n)` or `μ(σ, W_n)` for a one-descent `σ` below the
/// top.
///
/// Separable `σ` gives `C(n+1, m)` under `M_n` and `C(n+m−i−2, m)` under
/// `W_n`; otherwise `C(n + ⌊(m−i−a)/2⌋, m)`. The sign is positive iff `m` is
/// even.
pub fn mw_interval_mobius(sigma: &Permutation, shape: Shape, n: usize) -> Result<MwEvaluation> {
    let top = shape.build(n)?;
    if sigma.descent_count() != 1 {
        return Err(Error::OutOfClass {
            perm: sigma.to_string(),
            descents: sigma.descent_count(),
            allowed: 1,
        });
    }
    if !top.contains(sigma) {
        return Err(Error::NotContained {
            lower: sigma.to_string(),
            upper: top.to_string(),
        });
    }
    let m = sigma.len();
    let adjacencies = sigma.adjacency_count();
    let unrelated = usize::from(!sigma.is_related(&top));
    let (mi, ni, ii, ai) = (m as i64, n as i64, adjacencies as i64, unrelated as i64);

    let (branch, magnitude) = if sigma.is_separable() {
        let top_index = match shape {
            Shape::M => ni + 1,
            Shape::W => ni + mi - ii - 2,
        };
        (MwBranch::Separable, binomial(top_index, mi)?)
    } else {
        let half = (mi - ii - ai).div_euclid(2);
        (MwBranch::NonSeparable, binomial(ni + half, mi)?)
    };
    let value = if m.is_multiple_of(2) { magnitude } else { -magnitude };
    Ok(MwEvaluation {
        value,
        branch,
        m,
        adjacencies,
        unrelated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::mobius;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn examples_against_oracle() {
        let cases = [("132", Shape::M, 3, -4), ("132", Shape::W, 3, -4), ("2413", Shape::M, 3, 5), ("21", Shape::M, 2, 3)];
        for (sigma, shape, n, expected) in cases {
            let sigma = p(sigma);
            let oracle = mobius(&sigma, &shape.build(n).unwrap()).unwrap();
            assert_eq!(oracle, expected);
            assert_eq!(mw_interval_mobius(&sigma, shape, n).unwrap().value, expected);
        }
        let e = mw_interval_mobius(&p("2413"), Shape::M, 3).unwrap();
        assert_eq!(e.branch, MwBranch::NonSeparable);
        assert_eq!((e.m, e.adjacencies, e.unrelated), (4, 0, 0));
    }

    #[test]
    fn errors() {
        assert!(matches!(
            mw_interval_mobius(&p("321"), Shape::M, 3),
            Err(Error::OutOfClass { .. })
        ));
        assert!(matches!(
            mw_interval_mobius(&p("3412"), Shape::W, 2),
            Err(Error::NotContained { .. })
        ));
        assert!(mw_interval_mobius(&p("21"), Shape::M, 1).is_err());
        assert!("X".parse::<Shape>().is_err());
    }
}
