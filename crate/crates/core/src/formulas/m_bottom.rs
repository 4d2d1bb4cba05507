//! Conjectured `μ(M_m, π)` for `π` with at most one descent.
//!
//! The value is driven by the gaps between consecutive adjacency values of
//! `π`, split according to whether the two adjacencies bounding a gap lie on
//! the same side of the descent.

use serde::{Deserialize, Serialize};

use super::binomial;
use crate::error::{Error, Result};
use crate::perm::{Direction, Permutation};

/// Every intermediate statistic of the evaluation, in the order computed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MBottomStats {
    pub m: i64,
    pub n: i64,
    /// Number of (increasing) adjacencies.
    pub a: i64,
    /// `n − 1` if `π_n = n`, else `n`.
    pub n_hat: i64,
    /// Adjacency values in ascending order, bracketed by the two phantom
    /// values `i_0` and `i_{a+1}`.
    #[serde(rename = "A")]
    pub adjacency_values: Vec<i64>,
    /// `ĵ_k = ⌊(i_{k+1} − i_k − 2)/2⌋` for `k = 0..=a`.
    #[serde(rename = "J_hat")]
    pub j_hat: Vec<i64>,
    pub j_a_pre: Vec<i64>,
    pub j_b_pre: Vec<i64>,
    /// Same-side gaps after trimming, ascending.
    pub j_a: Vec<i64>,
    /// Cross-descent gaps after trimming, descending.
    pub j_b: Vec<i64>,
    pub epsilon: i64,
    pub alpha: i64,
    pub beta: i64,
    pub s: i64,
    pub t: i64,
    pub lambda: i64,
    pub sigma: i64,
}

impl MBottomStats {
    /// The same record with `β` taken after zero removal instead of before,
    /// or `None` when both readings agree.
    pub fn beta_after_zero_removal(&self) -> Option<MBottomStats> {
        let beta = self.j_b.len() as i64;
        if beta == self.beta {
            return None;
        }
        let mut alt = self.clone();
        alt.lambda += beta - self.beta;
        alt.sigma += beta - self.beta;
        alt.beta = beta;
        Some(alt)
    }
}

fn ceil_half(x: i64) -> i64 {
    x.div_euclid(2) + x.rem_euclid(2)
}

/// Computes the statistics record for `π` and bottom element `M_m`.
pub fn m_bottom_stats(m: usize, pi: &Permutation) -> Result<MBottomStats> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!("m must be at least 2, got {m}")));
    }
    let descents = pi.descents();
    if descents.len() > 1 {
        return Err(Error::OutOfClass {
            perm: pi.to_string(),
            descents: descents.len(),
            allowed: 1,
        });
    }
    let n = pi.len() as i64;
    // Without a descent every letter counts as before it.
    let descent = descents.first().copied().unwrap_or(pi.len());
    let ends_with_n = pi.last() as i64 == n;
    let starts_with_one = pi.first() == 1;
    let n_hat = if ends_with_n { n - 1 } else { n };

    let mut adj = pi.adjacencies(Direction::Increasing);
    adj.sort_by_key(|x| x.value);
    let a = adj.len() as i64;

    // (value, after_descent) with the phantoms at either end.
    let mut bounded: Vec<(i64, bool)> = Vec::with_capacity(adj.len() + 2);
    bounded.push((if starts_with_one { 0 } else { -1 }, false));
    bounded.extend(adj.iter().map(|x| (x.value as i64, x.position >= descent)));
    bounded.push((n_hat + 1, true));

    let mut j_hat = Vec::with_capacity(bounded.len() - 1);
    let mut j_a = Vec::new();
    let mut j_b = Vec::new();
    for w in bounded.windows(2) {
        let gap = (w[1].0 - w[0].0 - 2).div_euclid(2);
        j_hat.push(gap);
        if w[0].1 == w[1].1 {
            j_a.push(gap);
        } else {
            j_b.push(gap);
        }
    }
    let s: i64 = j_hat.iter().sum();
    let j_a_pre = j_a.clone();
    let j_b_pre = j_b.clone();

    // Trim: drop the largest same-side gap if there is one, else the
    // largest cross gap.
    let mut epsilon = 0;
    if let Some(max_idx) = argmax(&j_a) {
        let max = j_a.remove(max_idx);
        epsilon = max - j_a.iter().sum::<i64>();
    } else if let Some(max_idx) = argmax(&j_b) {
        j_b.remove(max_idx);
    }
    let alpha = j_a.len() as i64;
    let beta = j_b.len() as i64;
    j_a.retain(|&x| x != 0);
    j_b.retain(|&x| x != 0);
    if j_b.is_empty() {
        epsilon = 0;
    }
    j_a.sort_unstable();
    j_b.sort_unstable_by(|x, y| y.cmp(x));

    let even = n % 2 == 0;
    let t = i64::from(starts_with_one && ((even && ends_with_n) || (!even && !ends_with_n)));
    let m = m as i64;
    let lambda = ceil_half(n_hat) + m - ceil_half(5 * a) + beta - t;
    let sigma = 2 * m - 2 * a + beta;

    Ok(MBottomStats {
        m,
        n,
        a,
        n_hat,
        adjacency_values: bounded.iter().map(|x| x.0).collect(),
        j_hat,
        j_a_pre,
        j_b_pre,
        j_a,
        j_b,
        epsilon,
        alpha,
        beta,
        s,
        t,
        lambda,
        sigma,
    })
}

fn argmax(v: &[i64]) -> Option<usize> {
    v.iter()
        .enumerate()
        .max_by(|x, y| x.1.cmp(y.1).then(y.0.cmp(&x.0)))
        .map(|(i, _)| i)
}

/// `Ĉ^α_β(k, s)`: `C(α − 2k, β)` for `0 ≤ k < s/2` and
/// `C(α − 2(s − k) + 1, β)` for `s/2 ≤ k < s`.
pub fn split_binomial(alpha: i64, beta: i64, k: i64, s: i64) -> Result<i64> {
    if k < 0 || k >= s {
        return Err(Error::Domain(format!("split binomial needs 0 <= k < s, got k={k}, s={s}")));
    }
    if 2 * k < s {
        binomial(alpha - 2 * k, beta)
    } else {
        binomial(alpha - 2 * (s - k) + 1, beta)
    }
}

/// Sum of `v[from..=to]`, empty when `from > to`.
fn partial_sum(v: &[i64], from: i64, to: i64) -> i64 {
    if from > to {
        return 0;
    }
    v[from as usize..=to as usize].iter().sum()
}

/// Signed value from an already computed record. The zero rule is not
/// applied here.
pub fn m_bottom_mobius_from_stats(st: &MBottomStats) -> Result<i64> {
    let (lambda, sigma, s) = (st.lambda, st.sigma, st.s);
    let jb = &st.j_b;
    let ja = &st.j_a;
    let len_b = jb.len() as i64;

    let mut total = binomial(lambda, sigma)?;
    for tau in 0..len_b {
        let tail = partial_sum(jb, tau + 1, len_b - 1);
        for gamma in 0..=tau {
            let upper = jb[gamma as usize] + tail - 1;
            for omega in tau - gamma..=upper {
                total -= split_binomial(lambda - tau - 2, sigma - tau - 1, omega, s)?;
            }
        }
    }
    for tau in 0..ja.len() as i64 {
        let top = lambda - len_b - tau;
        let bottom = sigma - len_b - tau;
        let upper = ja[tau as usize] + partial_sum(ja, 0, tau - 1);
        for gamma in 1..=upper {
            total += split_binomial(top, bottom, gamma, s + 1)?;
        }
        for omega in 1..=st.epsilon {
            total += split_binomial(top, bottom, omega + 1, s + 1)?;
        }
    }
    Ok(if st.n % 2 == 0 { total } else { -total })
}

/// Conjectured `μ(M_m, π)`, returned with the statistics it came from.
///
/// Zero when `π` begins with 12, ends with `(n−1)n` or has a triple
/// adjacency; otherwise the signed triple sum, positive iff `n` is even.
/// Containment of `M_m` in `π` is a precondition and is not checked.
pub fn m_bottom_mobius(m: usize, pi: &Permutation) -> Result<(i64, MBottomStats)> {
    let stats = m_bottom_stats(m, pi)?;
    let n = pi.len();
    let v = pi.values();
    let zero = (n >= 2 && v[0] == 1 && v[1] == 2)
        || (n >= 2 && v[n - 1] as usize == n && v[n - 2] as usize == n - 1)
        || pi.has_triple_adjacency(Direction::Increasing);
    if zero {
        return Ok((0, stats));
    }
    let value = m_bottom_mobius_from_stats(&stats)?;
    Ok((value, stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::mobius;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn split_binomial_examples() {
        assert_eq!(split_binomial(9, 2, 0, 9).unwrap(), 36);
        assert_eq!(split_binomial(8, 0, 2, 10).unwrap(), 1);
        assert_eq!(split_binomial(5, 7, 0, 4).unwrap(), 0);
        // second branch: k = 3 >= 5/2, C(9 - 4 + 1, 2)
        assert_eq!(split_binomial(9, 2, 3, 5).unwrap(), 15);
        assert!(matches!(split_binomial(9, 2, 5, 5), Err(Error::Domain(_))));
        assert!(matches!(split_binomial(9, 2, -1, 5), Err(Error::Domain(_))));
    }

    #[test]
    fn m2_over_m3() {
        let st = m_bottom_stats(2, &p("246135")).unwrap();
        assert_eq!((st.a, st.n_hat), (0, 6));
        assert_eq!(st.adjacency_values, vec![-1, 7]);
        assert_eq!(st.j_hat, vec![3]);
        assert!(st.j_a_pre.is_empty());
        assert_eq!(st.j_b_pre, vec![3]);
        assert!(st.j_b.is_empty() && st.j_a.is_empty());
        assert_eq!((st.epsilon, st.beta, st.lambda, st.sigma), (0, 0, 5, 4));

        let (value, _) = m_bottom_mobius(2, &p("246135")).unwrap();
        assert_eq!(value, 5);
        assert_eq!(mobius(&p("2413"), &p("246135")).unwrap(), 5);
    }

    #[test]
    fn zero_rule() {
        assert_eq!(m_bottom_mobius(2, &p("125346")).unwrap().0, 0);
        assert_eq!(m_bottom_mobius(2, &p("246135")).unwrap().0, 5);
        assert_eq!(m_bottom_mobius(2, &p("2413567")).unwrap().0, 0);
        assert_eq!(m_bottom_mobius(2, &p("3456127")).unwrap().0, 0);
    }

    #[test]
    fn bad_input() {
        assert!(matches!(m_bottom_stats(1, &p("2413")), Err(Error::InvalidParameter(_))));
        assert!(matches!(m_bottom_mobius(2, &p("4321")), Err(Error::OutOfClass { .. })));
    }

    #[test]
    fn alternate_beta_reading() {
        let st = m_bottom_stats(2, &p("246135")).unwrap();
        assert!(st.beta_after_zero_removal().is_none());
        // 24513: the cross gap left after trimming is 0 and gets dropped.
        let st = m_bottom_stats(2, &p("24513")).unwrap();
        assert_eq!((st.j_a_pre.clone(), st.j_b_pre.clone()), (vec![1], vec![0]));
        assert_eq!((st.beta, st.lambda, st.sigma), (1, 3, 3));
        let alt = st.beta_after_zero_removal().unwrap();
        assert_eq!((alt.beta, alt.lambda, alt.sigma), (0, 2, 2));
    }
}
